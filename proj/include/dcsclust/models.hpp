#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcsclust/linalg.hpp"
#include "dcsclust/types.hpp"

namespace dcsclust {

/// Observation families for the score-driven models.
enum class Family { Gaussian, StudentT, SkewT };

/// Number of time-varying parameters (conditional moments) of a family.
int param_count(Family family);

/// Names of the conditional moments, in recursion order:
///   Gaussian: mu, sigma2   (mean, variance)
///   StudentT: mu, phi, v   (mean, squared scale, degrees of freedom)
///   SkewT:    mu, phi, lambda, v  (mean, scale, slant, degrees of freedom)
std::vector<std::string> moment_names(Family family);

Family family_from_string(const std::string& name);
std::string family_to_string(Family family);

/// One point in a family's parameter space.
struct ParamVector {
    Family family = Family::Gaussian;
    std::array<double, 4> f{};

    int size() const { return param_count(family); }
    double operator[](int i) const { return f[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return f[static_cast<std::size_t>(i)]; }

    static ParamVector gaussian(double mu, double sigma2);
    static ParamVector student_t(double mu, double phi, double v);
    static ParamVector skew_t(double mu, double phi, double lambda, double v);
};

/// True iff f lies strictly inside the family's domain.
bool in_domain(const ParamVector& f);

/// Throws ParamDomainError when f is outside its domain.
void validate_params(const ParamVector& f);

/// Log density log p(y | f). Throws ParamDomainError on invalid f.
double log_density(const ParamVector& f, double y);

/// Score vector d log p(y|f) / d f.
struct ScoreVec {
    int n = 0;
    std::array<double, 4> s{};
    double operator[](int i) const { return s[static_cast<std::size_t>(i)]; }
};
ScoreVec score(const ParamVector& f, double y);

/// Fisher information E[ grad grad' ] at f.
SymMat information(const ParamVector& f);

/// Scaling matrix I^{-gamma} for gamma in {0, 0.5, 1}.
SymMat scaling_matrix(const ParamVector& f, double gamma);

/// Model specification: family, score-scaling exponent, recursion orders.
struct DcsSpec {
    Family family = Family::Gaussian;
    double gamma = 1.0;
    int p = 1;  // lags of the scaled score
    int q = 1;  // lags of the parameter
};
void validate_spec(const DcsSpec& spec);

/// Recursion coefficients, one entry per conditional moment:
/// f_{t+1,i} = omega_i + a_i * s_{t,i} + b_i * f_{t,i}.
struct DcsParams {
    std::vector<double> omega;
    std::vector<double> a_diag;
    std::vector<double> b_diag;
};
void validate_dcs_params(const DcsSpec& spec, const DcsParams& params);

/// Paths of the conditional moments of one series.
struct MomentPaths {
    std::string series_id;
    std::vector<std::string> names;              // one per moment
    std::vector<std::vector<double>> paths;      // names.size() x T
};

struct FilterResult {
    MomentPaths moments;
    double loglik = 0.0;
};

/// Runs the score-driven recursion over the series, starting each moment at
/// its fixed point omega/(1-b). Throws FilterError when a step leaves the
/// family's domain.
FilterResult filter(const DcsSpec& spec, const DcsParams& params, const ReturnSeries& series);

struct FitOptions {
    int max_iter = 500;
    double grad_tol = 1e-6;
    int multistarts = 3;  // ignored when an explicit init is supplied
};

struct FittedDcs {
    DcsSpec spec;
    DcsParams params;
    double loglik = 0.0;       // at the fitted params
    double init_loglik = 0.0;  // at the starting params
    bool converged = false;
    int iterations = 0;
};

/// Maximum-likelihood fit. Optimization runs in an unconstrained working
/// space (fixed-point levels under link transforms, atanh(b)); results are
/// reported in natural parameters. Deterministic for fixed inputs.
FittedDcs fit_mle(const DcsSpec& spec, const ReturnSeries& series,
                  const std::optional<DcsParams>& init = std::nullopt,
                  const FitOptions& opt = {});

/// Conditional-moment paths implied by a fitted model on a series.
MomentPaths extract_moments(const FittedDcs& fitted, const ReturnSeries& series);

/// Exponential-volatility DGP with a skewed-t innovation and a leverage term:
///   y_t = exp(eta_t) * eps_t,  eps_t ~ skew-t(slant=skew, df), unit scale,
///   eta_{t+1} = omega + phi*eta_t + alpha*u_t + beta*sgn(-y_t)*(u_t + 1),
/// where u_t is the conditional score of the log-scale. eta_1 starts at its
/// unconditional mean omega/(1-phi).
struct EgarchDgpParams {
    double omega = 0.0;
    double phi = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double skew = 0.0;  // slant of the innovation
    double df = 5.0;
};
void validate_egarch_params(const EgarchDgpParams& p);

ReturnSeries simulate_egarch(const EgarchDgpParams& p, std::size_t T, std::uint64_t seed,
                             const std::string& id = "sim");

}  // namespace dcsclust
