#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dcsclust/models.hpp"
#include "dcsclust/rng.hpp"
#include "dcsclust/special.hpp"

namespace testsup {

using namespace dcsclust;

/// Draws one observation from a family at fixed parameters.
inline double draw_obs(const ParamVector& f, Rng& rng) {
    switch (f.family) {
        case Family::Gaussian: return f.f[0] + std::sqrt(f.f[1]) * rng.normal();
        case Family::StudentT: return f.f[0] + std::sqrt(f.f[1]) * rng.student_t(f.f[2]);
        case Family::SkewT: return f.f[0] + f.f[1] * rng.skew_t(f.f[2], f.f[3]);
    }
    return 0.0;
}

/// Simulates a series from the score-driven model itself (observation drawn
/// at the current parameters, then the recursion advances on its score).
inline ReturnSeries simulate_dcs(const DcsSpec& spec, const DcsParams& p, std::size_t T,
                                 std::uint64_t seed, const std::string& id = "dcs") {
    Rng rng(seed);
    const int r = param_count(spec.family);
    ParamVector f;
    f.family = spec.family;
    for (int i = 0; i < r; ++i) {
        f[i] = p.omega[static_cast<std::size_t>(i)]
            / (1.0 - p.b_diag[static_cast<std::size_t>(i)]);
    }
    ReturnSeries out;
    out.id = id;
    out.values.resize(T);
    for (std::size_t t = 0; t < T; ++t) {
        const double y = draw_obs(f, rng);
        out.values[t] = y;
        const SymMat S = scaling_matrix(f, spec.gamma);
        const ScoreVec g = score(f, y);
        std::array<double, 4> gv{};
        for (int i = 0; i < r; ++i) gv[static_cast<std::size_t>(i)] = g[i];
        const std::array<double, 4> s = linalg::mat_vec(S, gv);
        for (int i = 0; i < r; ++i) {
            const std::size_t ui = static_cast<std::size_t>(i);
            f[i] = p.omega[ui] + p.a_diag[ui] * s[ui] + p.b_diag[ui] * f[i];
        }
    }
    return out;
}

/// Gauss-Legendre integral of the density over the real line via z = c*tan(u);
/// returns the total mass (should be 1).
inline double density_mass(const ParamVector& f, double center, double scale,
                           std::size_t nodes = 4000) {
    const auto& gl = special::gauss_legendre(nodes);
    const double half_pi = 1.5707963267948966;
    double total = 0.0;
    const double c = 3.0 * scale;
    for (std::size_t q = 0; q < nodes; ++q) {
        const double u = half_pi * gl.nodes[q];
        const double tn = std::tan(u);
        const double y = center + c * tn;
        const double jac = half_pi * c * (1.0 + tn * tn);
        total += gl.weights[q] * jac * std::exp(log_density(f, y));
    }
    return total;
}

/// Independent finite-difference score oracle with its own step size.
inline ScoreVec fd_score_oracle(const ParamVector& f, double y, double rel = 1e-5) {
    ScoreVec out;
    out.n = f.size();
    for (int i = 0; i < out.n; ++i) {
        double h = rel * std::max(1.0, std::fabs(f[i]));
        const bool positive_only =
            (f.family == Family::StudentT && i == 1) || (f.family == Family::SkewT && i == 1);
        const bool df_param = (f.family == Family::StudentT && i == 2)
            || (f.family == Family::SkewT && i == 3);
        if (positive_only) h = std::min(h, 0.4 * f[i]);
        if (df_param) h = std::min(h, 0.4 * (f[i] - 2.0));
        ParamVector fp = f, fm = f;
        fp[i] += h;
        fm[i] -= h;
        out.s[static_cast<std::size_t>(i)] = (log_density(fp, y) - log_density(fm, y)) / (2.0 * h);
    }
    return out;
}

/// Random in-domain parameter point for property tests.
inline ParamVector random_params(Family family, Rng& rng) {
    auto unif = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };
    switch (family) {
        case Family::Gaussian: return ParamVector::gaussian(unif(-3, 3), unif(0.2, 5.0));
        case Family::StudentT:
            return ParamVector::student_t(unif(-3, 3), unif(0.2, 5.0), unif(2.6, 40.0));
        case Family::SkewT:
            return ParamVector::skew_t(unif(-3, 3), unif(0.3, 3.0), unif(-3.0, 3.0),
                                       unif(2.6, 40.0));
    }
    return ParamVector::gaussian(0, 1);
}

}  // namespace testsup
