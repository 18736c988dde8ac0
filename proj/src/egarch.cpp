#include <cmath>
#include <string>

#include "dcsclust/models.hpp"
#include "dcsclust/rng.hpp"
#include "dcsclust/special.hpp"

namespace dcsclust {

void validate_egarch_params(const EgarchDgpParams& p) {
    if (!std::isfinite(p.omega) || !std::isfinite(p.phi) || !std::isfinite(p.alpha)
        || !std::isfinite(p.beta) || !std::isfinite(p.skew) || !std::isfinite(p.df)) {
        throw ArgumentError("volatility DGP parameters must be finite");
    }
    if (!(std::fabs(p.phi) < 1.0)) {
        throw ArgumentError("log-scale persistence must satisfy |phi| < 1");
    }
    if (!(p.df > 2.0)) {
        throw ArgumentError("innovation df must exceed 2");
    }
}

namespace {

// d log p_eps(z) / dz for the unit-scale skewed-t innovation.
double innovation_logpdf_grad(double z, double lambda, double v) {
    const double core = -(v + 1.0) * z / (v + z * z);
    if (lambda == 0.0) return core;
    const double w = lambda * z * std::sqrt((v + 1.0) / (v + z * z));
    const double dw_dz = lambda * std::sqrt(v + 1.0) * v * std::pow(v + z * z, -1.5);
    const double cdf = special::student_t_cdf(w, v + 1.0);
    const double dlogT_dw = std::exp(special::student_t_logpdf(w, v + 1.0) - std::log(cdf));
    return core + dlogT_dw * dw_dz;
}

}  // namespace

ReturnSeries simulate_egarch(const EgarchDgpParams& p, std::size_t T, std::uint64_t seed,
                             const std::string& id) {
    validate_egarch_params(p);
    if (T == 0) throw ArgumentError("simulation length must be positive");

    ReturnSeries out;
    out.id = id;
    out.values.resize(T);

    Rng rng(seed);
    double eta = p.omega / (1.0 - p.phi);  // start at the unconditional mean
    for (std::size_t t = 0; t < T; ++t) {
        const double eps = rng.skew_t(p.skew, p.df);
        const double y = std::exp(eta) * eps;
        out.values[t] = y;
        // u is the score of the log-scale: -eps * dlogp(eps) - 1
        const double u = -eps * innovation_logpdf_grad(eps, p.skew, p.df) - 1.0;
        const double sgn = (y < 0.0) ? 1.0 : (y > 0.0 ? -1.0 : 0.0);
        eta = p.omega + p.phi * eta + p.alpha * u + p.beta * sgn * (u + 1.0);
    }
    return out;
}

}  // namespace dcsclust
