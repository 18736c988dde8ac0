#include <algorithm>
#include <cmath>

#include "dcsclust/acf.hpp"

namespace dcsclust {

AcfFeature sample_acf(std::span<const double> path, int lags, const std::string& series_id,
                      const std::string& moment_name) {
    const std::size_t T = path.size();
    if (lags < 1) throw ArgumentError("lag count must be at least 1");
    if (T <= static_cast<std::size_t>(lags)) {
        throw ArgumentError("lag count must be smaller than the path length");
    }

    double mean = 0.0;
    for (double v : path) mean += v;
    mean /= static_cast<double>(T);

    double denom = 0.0;
    for (double v : path) denom += (v - mean) * (v - mean);
    if (!(denom > 0.0)) {
        throw DegenerateSeriesError("constant path has no autocorrelation ('" + series_id + "')");
    }

    AcfFeature out;
    out.series_id = series_id;
    out.moment_name = moment_name;
    out.lags = lags;
    out.values.resize(static_cast<std::size_t>(lags));
    for (int l = 1; l <= lags; ++l) {
        double num = 0.0;
        for (std::size_t t = static_cast<std::size_t>(l); t < T; ++t) {
            num += (path[t] - mean) * (path[t - static_cast<std::size_t>(l)] - mean);
        }
        // rounding can push the ratio a hair outside [-1, 1]; clamp it back
        out.values[static_cast<std::size_t>(l - 1)] = std::clamp(num / denom, -1.0, 1.0);
    }
    return out;
}

int effective_lags(std::size_t T, int requested) {
    if (requested < 1) throw ArgumentError("lag count must be at least 1");
    if (T < 4) throw DegenerateSeriesError("path too short for autocorrelation features");
    if (T <= static_cast<std::size_t>(requested) + 1) {
        return static_cast<int>(T) - 2;
    }
    return requested;
}

double acf_distance(const AcfFeature& a, const AcfFeature& b) {
    if (a.values.size() != b.values.size()) {
        throw ArgumentError("autocorrelation features have different lengths");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        s += d * d;
    }
    return s;
}

DistanceMatrix distance_matrix(const std::vector<AcfFeature>& features) {
    DistanceMatrix m;
    m.k = static_cast<int>(features.size());
    m.d.assign(static_cast<std::size_t>(m.k) * static_cast<std::size_t>(m.k), 0.0);
    for (const AcfFeature& f : features) m.ids.push_back(f.series_id);
    for (int i = 0; i < m.k; ++i) {
        for (int j = i + 1; j < m.k; ++j) {
            const double d = acf_distance(features[static_cast<std::size_t>(i)],
                                          features[static_cast<std::size_t>(j)]);
            m.d[static_cast<std::size_t>(i * m.k + j)] = d;
            m.d[static_cast<std::size_t>(j * m.k + i)] = d;
        }
    }
    return m;
}

}  // namespace dcsclust
