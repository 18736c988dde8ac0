#pragma once

#include <string>

#include "dcsclust/types.hpp"

namespace dcsclust {

/// Jarque-Bera style normality summary of one series.
struct NormalityReport {
    std::string id;
    std::size_t n = 0;
    double skewness = 0.0;
    double kurtosis = 0.0;     // raw (normal = 3)
    double jb_stat = 0.0;      // n/6 (S^2 + (K-3)^2/4)
    double jb_pvalue = 1.0;    // chi-squared(2) tail
    double adj_stat = 0.0;     // small-sample moment-corrected variant
    double adj_pvalue = 1.0;
};

/// Computes both the classic statistic and the small-sample adjusted one
/// that standardizes skewness and kurtosis by their exact normal-sample
/// moments. Requires n >= 8 and a non-constant series.
NormalityReport jarque_bera(const ReturnSeries& series);

}  // namespace dcsclust
