#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dcsclust/models.hpp"
#include "dcsclust/optim.hpp"

namespace dcsclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Link { Identity, Log, LogShift2 };  // LogShift2: x = log(v - 2)

// Link per moment, chosen so every fixed-point level maps to the full real
// line: mean and slant are free, scales are positive, df exceeds 2.
std::vector<Link> level_links(Family family) {
    switch (family) {
        case Family::Gaussian: return {Link::Identity, Link::Log};
        case Family::StudentT: return {Link::Identity, Link::Log, Link::LogShift2};
        case Family::SkewT:
            return {Link::Identity, Link::Log, Link::Identity, Link::LogShift2};
    }
    return {};
}

double apply_link(Link link, double level) {
    switch (link) {
        case Link::Identity: return level;
        case Link::Log:
            if (!(level > 0.0)) return std::nan("");
            return std::log(level);
        case Link::LogShift2:
            if (!(level > 2.0)) return std::nan("");
            return std::log(level - 2.0);
    }
    return std::nan("");
}

double invert_link(Link link, double x) {
    switch (link) {
        case Link::Identity: return x;
        case Link::Log: return std::exp(x);
        case Link::LogShift2: return 2.0 + std::exp(x);
    }
    return std::nan("");
}

// Working vector layout: (linked level, a, atanh(b)) per moment.
std::vector<double> to_working(const DcsSpec& spec, const DcsParams& p) {
    const auto links = level_links(spec.family);
    const std::size_t r = links.size();
    std::vector<double> x(3 * r);
    for (std::size_t i = 0; i < r; ++i) {
        const double b = std::clamp(p.b_diag[i], -1.0 + 1e-12, 1.0 - 1e-12);
        const double level = p.omega[i] / (1.0 - b);
        const double linked = apply_link(links[i], level);
        if (!std::isfinite(linked)) {
            throw InitError("starting parameters imply an out-of-domain fixed point");
        }
        x[3 * i] = linked;
        x[3 * i + 1] = p.a_diag[i];
        x[3 * i + 2] = std::atanh(b);
    }
    return x;
}

DcsParams to_natural(const DcsSpec& spec, const std::vector<double>& x) {
    const auto links = level_links(spec.family);
    const std::size_t r = links.size();
    DcsParams p;
    p.omega.resize(r);
    p.a_diag.resize(r);
    p.b_diag.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
        const double level = invert_link(links[i], x[3 * i]);
        const double b = std::tanh(x[3 * i + 2]);
        p.omega[i] = level * (1.0 - b);
        p.a_diag[i] = x[3 * i + 1];
        p.b_diag[i] = b;
    }
    return p;
}

// Moment-matched default starting values plus two fixed perturbations.
std::vector<DcsParams> default_starts(const DcsSpec& spec, const ReturnSeries& series,
                                      int multistarts) {
    const std::size_t n = series.values.size();
    const double mean = std::accumulate(series.values.begin(), series.values.end(), 0.0)
        / static_cast<double>(n);
    double var = 0.0;
    for (double v : series.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    if (!(var > 0.0)) {
        throw DegenerateSeriesError("series '" + series.id + "' is constant; cannot fit");
    }

    const double v0 = 8.0;
    std::vector<double> levels;
    switch (spec.family) {
        case Family::Gaussian:
            levels = {mean, var};
            break;
        case Family::StudentT:
            levels = {mean, var * (v0 - 2.0) / v0, v0};
            break;
        case Family::SkewT:
            levels = {mean, std::sqrt(var * (v0 - 2.0) / v0), 0.0, v0};
            break;
    }

    const std::size_t r = levels.size();
    struct AB {
        double a, b;
    };
    const AB presets[3] = {{0.05, 0.9}, {0.10, 0.70}, {0.02, 0.95}};
    std::vector<DcsParams> starts;
    for (int k = 0; k < std::max(1, multistarts) && k < 3; ++k) {
        DcsParams p;
        p.omega.resize(r);
        p.a_diag.assign(r, presets[k].a);
        p.b_diag.assign(r, presets[k].b);
        // Shape components (slant, degrees of freedom) start static: their
        // scaled scores are orders of magnitude larger than the location and
        // scale ones, and a_diag > 0 there tends to leave the domain within a
        // few steps. The optimizer is free to move them off zero.
        for (std::size_t i = 2; i < r; ++i) p.a_diag[i] = 0.0;
        for (std::size_t i = 0; i < r; ++i) p.omega[i] = levels[i] * (1.0 - presets[k].b);
        starts.push_back(std::move(p));
    }
    return starts;
}

}  // namespace

FittedDcs fit_mle(const DcsSpec& spec, const ReturnSeries& series,
                  const std::optional<DcsParams>& init, const FitOptions& opt) {
    validate_spec(spec);
    validate_series(series, 30);

    const double T = static_cast<double>(series.values.size());
    // Mean negative log-likelihood keeps the gradient tolerance scale-free.
    auto objective = [&](const std::vector<double>& x) -> double {
        DcsParams p = to_natural(spec, x);
        for (double b : p.b_diag) {
            if (!(std::fabs(b) < 1.0)) return kInf;
        }
        try {
            return -filter(spec, p, series).loglik / T;
        } catch (const Error&) {
            return kInf;
        }
    };

    std::vector<std::vector<double>> starts;
    if (init.has_value()) {
        validate_dcs_params(spec, *init);
        starts.push_back(to_working(spec, *init));
    } else {
        for (const DcsParams& p : default_starts(spec, series, opt.multistarts)) {
            starts.push_back(to_working(spec, p));
        }
    }

    double init_obj = kInf;
    std::size_t init_used = starts.size();
    for (std::size_t k = 0; k < starts.size(); ++k) {
        const double fx = objective(starts[k]);
        if (std::isfinite(fx)) {
            init_obj = fx;
            init_used = k;
            break;
        }
    }
    if (init_used == starts.size()) {
        throw InitError("likelihood not finite at any starting point for series '"
                        + series.id + "'");
    }

    BfgsOptions bopt;
    bopt.max_iter = opt.max_iter;
    bopt.grad_tol = opt.grad_tol;

    BfgsResult best;
    best.fx = kInf;
    for (std::size_t k = init_used; k < starts.size(); ++k) {
        const BfgsResult r = minimize_bfgs(objective, starts[k], bopt);
        if (r.fx < best.fx) best = r;
    }
    if (!std::isfinite(best.fx)) {
        throw InitError("optimization failed to reach a finite likelihood for series '"
                        + series.id + "'");
    }

    FittedDcs fit;
    fit.spec = spec;
    fit.params = to_natural(spec, best.x);
    fit.loglik = -best.fx * T;
    fit.init_loglik = -init_obj * T;
    fit.converged = best.converged;
    fit.iterations = best.iterations;
    return fit;
}

MomentPaths extract_moments(const FittedDcs& fitted, const ReturnSeries& series) {
    const std::size_t r = static_cast<std::size_t>(param_count(fitted.spec.family));
    if (fitted.params.omega.size() != r) {
        throw UsageError("fitted parameters do not match the spec family");
    }
    return filter(fitted.spec, fitted.params, series).moments;
}

}  // namespace dcsclust
