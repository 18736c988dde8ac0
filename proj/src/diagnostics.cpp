#include <cmath>

#include "dcsclust/diagnostics.hpp"
#include "dcsclust/special.hpp"

namespace dcsclust {

NormalityReport jarque_bera(const ReturnSeries& series) {
    validate_series(series);
    const std::size_t n = series.values.size();
    if (n < 8) {
        throw ArgumentError("normality test needs at least 8 observations");
    }

    const double nd = static_cast<double>(n);
    double mean = 0.0;
    for (double v : series.values) mean += v;
    mean /= nd;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : series.values) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= nd;
    m3 /= nd;
    m4 /= nd;
    if (!(m2 > 0.0)) {
        throw DegenerateSeriesError("series '" + series.id + "' is constant");
    }

    NormalityReport rep;
    rep.id = series.id;
    rep.n = n;
    rep.skewness = m3 / std::pow(m2, 1.5);
    rep.kurtosis = m4 / (m2 * m2);

    const double s = rep.skewness;
    const double k = rep.kurtosis;
    rep.jb_stat = nd / 6.0 * (s * s + 0.25 * (k - 3.0) * (k - 3.0));
    rep.jb_pvalue = special::chi2_sf_2df(rep.jb_stat);

    // exact normal-sample moments of S and K
    const double var_s = 6.0 * (nd - 2.0) / ((nd + 1.0) * (nd + 3.0));
    const double mean_k = 3.0 * (nd - 1.0) / (nd + 1.0);
    const double var_k = 24.0 * nd * (nd - 2.0) * (nd - 3.0)
        / ((nd + 1.0) * (nd + 1.0) * (nd + 3.0) * (nd + 5.0));
    rep.adj_stat = s * s / var_s + (k - mean_k) * (k - mean_k) / var_k;
    rep.adj_pvalue = special::chi2_sf_2df(rep.adj_stat);
    return rep;
}

}  // namespace dcsclust
