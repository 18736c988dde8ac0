#pragma once

#include <span>
#include <string>
#include <vector>

#include "dcsclust/types.hpp"

namespace dcsclust {

/// Autocorrelation feature of one path: values[l-1] is the lag-l coefficient.
struct AcfFeature {
    std::string series_id;
    std::string moment_name;
    int lags = 0;
    std::vector<double> values;
};

/// Sample autocorrelations at lags 1..lags using the full-sample mean and
/// denominator. Requires lags >= 1 and path length > lags; throws
/// DegenerateSeriesError on constant paths.
AcfFeature sample_acf(std::span<const double> path, int lags, const std::string& series_id = "",
                      const std::string& moment_name = "");

/// Requested lag count clamped for short series: lags is reduced to T-2
/// whenever T <= lags + 1. Returns the lag count actually usable.
int effective_lags(std::size_t T, int requested);

/// Squared euclidean distance between two features of equal length.
double acf_distance(const AcfFeature& a, const AcfFeature& b);

/// Symmetric pairwise distance matrix over features.
struct DistanceMatrix {
    std::vector<std::string> ids;
    int k = 0;
    std::vector<double> d;  // row-major k x k

    double at(int i, int j) const { return d[static_cast<std::size_t>(i * k + j)]; }
};
DistanceMatrix distance_matrix(const std::vector<AcfFeature>& features);

}  // namespace dcsclust
