#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "dcsclust/models.hpp"
#include "internal.hpp"

namespace dcsclust {

void validate_spec(const DcsSpec& spec) {
    if (spec.gamma != 0.0 && spec.gamma != 0.5 && spec.gamma != 1.0) {
        throw ArgumentError("spec gamma must be one of 0, 0.5, 1");
    }
    if (spec.p != 1 || spec.q != 1) {
        throw ArgumentError("only first-order score/parameter recursions are supported");
    }
}

void validate_dcs_params(const DcsSpec& spec, const DcsParams& params) {
    const std::size_t r = static_cast<std::size_t>(param_count(spec.family));
    if (params.omega.size() != r || params.a_diag.size() != r || params.b_diag.size() != r) {
        throw ArgumentError("coefficient vectors must have one entry per conditional moment");
    }
    for (std::size_t i = 0; i < r; ++i) {
        if (!std::isfinite(params.omega[i]) || !std::isfinite(params.a_diag[i])
            || !std::isfinite(params.b_diag[i])) {
            throw ArgumentError("coefficients must be finite");
        }
        if (!(std::fabs(params.b_diag[i]) < 1.0)) {
            throw ArgumentError("persistence coefficients must satisfy |b| < 1");
        }
    }
}

void validate_series(const ReturnSeries& s, std::size_t min_len) {
    if (s.values.size() < min_len) {
        throw DegenerateSeriesError("series '" + s.id + "' has " + std::to_string(s.values.size())
                                    + " observations, need at least " + std::to_string(min_len));
    }
    for (double v : s.values) {
        if (!std::isfinite(v)) {
            throw DegenerateSeriesError("series '" + s.id + "' contains non-finite values");
        }
    }
}

namespace {

// Per-invocation cache of the standardized skew-t information, keyed on the
// slant/df pair quantized at 1e-8.
class SkewtInfoCache {
  public:
    const SymMat& get(double lambda, double v) {
        const auto key = std::make_pair(static_cast<long long>(std::llround(lambda * 1e8)),
                                        static_cast<long long>(std::llround(v * 1e8)));
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            it = cache_.emplace(key, detail::skewt_information_std(lambda, v)).first;
        }
        return it->second;
    }

  private:
    std::map<std::pair<long long, long long>, SymMat> cache_;
};

// Scaled score s = I^{-gamma} * grad, with closed forms on the hot paths.
std::array<double, 4> scaled_score(const DcsSpec& spec, const ParamVector& f, double y,
                                   SkewtInfoCache& cache) {
    std::array<double, 4> s{};
    if (spec.family == Family::Gaussian) {
        const double mu = f.f[0], sigma2 = f.f[1];
        const double d = y - mu;
        if (spec.gamma == 1.0) {
            s[0] = d;                      // sigma2 * grad_mu
            s[1] = d * d - sigma2;         // 2*sigma2^2 * grad_sigma2
            return s;
        }
        if (spec.gamma == 0.5) {
            // I^{-1/2} = diag(sigma, sqrt(2)*sigma2)
            s[0] = d / std::sqrt(sigma2);
            s[1] = (d * d / sigma2 - 1.0) / std::sqrt(2.0);
            return s;
        }
        const ScoreVec g = score(f, y);
        s[0] = g[0];
        s[1] = g[1];
        return s;
    }
    if (spec.family == Family::StudentT && spec.gamma == 1.0) {
        const ScoreVec g = score(f, y);
        const double phi = f.f[1], v = f.f[2];
        const SymMat info = information(f);
        s[0] = g[0] * phi * (v + 3.0) / (v + 1.0);
        const double i11 = info.at(1, 1), i12 = info.at(1, 2), i22 = info.at(2, 2);
        const double det = i11 * i22 - i12 * i12;
        if (!(det > 0.0)) {
            throw ScalingError("scale/df information block not positive definite",
                               std::numeric_limits<double>::infinity());
        }
        s[1] = (i22 * g[1] - i12 * g[2]) / det;
        s[2] = (i11 * g[2] - i12 * g[1]) / det;
        return s;
    }

    const ScoreVec g = score(f, y);
    if (spec.gamma == 0.0) {
        for (int i = 0; i < g.n; ++i) s[static_cast<std::size_t>(i)] = g[i];
        return s;
    }
    SymMat scale;
    if (spec.family == Family::SkewT) {
        const double phi = f.f[1], lambda = f.f[2], v = f.f[3];
        const SymMat& std_info = cache.get(lambda, v);
        SymMat info = SymMat::zero(4);
        const std::array<double, 4> jac = {1.0 / phi, 1.0 / phi, 1.0, 1.0};
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                info.at(i, j) = std_info.at(i, j) * jac[static_cast<std::size_t>(i)]
                    * jac[static_cast<std::size_t>(j)];
            }
        }
        scale = linalg::sym_pow(info, -spec.gamma);
    } else {
        scale = linalg::sym_pow(information(f), -spec.gamma);
    }
    std::array<double, 4> gv{};
    for (int i = 0; i < g.n; ++i) gv[static_cast<std::size_t>(i)] = g[i];
    return linalg::mat_vec(scale, gv);
}

}  // namespace

FilterResult filter(const DcsSpec& spec, const DcsParams& params, const ReturnSeries& series) {
    validate_spec(spec);
    validate_dcs_params(spec, params);
    validate_series(series, 1);

    const int r = param_count(spec.family);
    const std::size_t T = series.values.size();

    FilterResult out;
    out.moments.series_id = series.id;
    out.moments.names = moment_names(spec.family);
    out.moments.paths.assign(static_cast<std::size_t>(r), std::vector<double>(T));

    ParamVector f;
    f.family = spec.family;
    for (int i = 0; i < r; ++i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        f[i] = params.omega[ui] / (1.0 - params.b_diag[ui]);
    }

    SkewtInfoCache cache;
    double ll = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        if (!in_domain(f)) {
            throw FilterError("recursion left the parameter domain at step "
                              + std::to_string(t + 1), t + 1);
        }
        for (int i = 0; i < r; ++i) out.moments.paths[static_cast<std::size_t>(i)][t] = f[i];

        const double lt = log_density(f, series.values[t]);
        if (!std::isfinite(lt)) {
            throw FilterError("log-density not finite at step " + std::to_string(t + 1), t + 1);
        }
        ll += lt;

        if (t + 1 < T) {
            const std::array<double, 4> s = scaled_score(spec, f, series.values[t], cache);
            for (int i = 0; i < r; ++i) {
                const std::size_t ui = static_cast<std::size_t>(i);
                f[i] = params.omega[ui] + params.a_diag[ui] * s[ui] + params.b_diag[ui] * f[i];
            }
        }
    }
    out.loglik = ll;
    return out;
}

}  // namespace dcsclust
