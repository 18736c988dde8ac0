#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dcsclust/models.hpp"
#include "dcsclust/special.hpp"
#include "internal.hpp"

namespace dcsclust {

namespace {
constexpr double kLn2Pi = 1.8378770664093454836;  // ln(2*pi)
}

int param_count(Family family) {
    switch (family) {
        case Family::Gaussian: return 2;
        case Family::StudentT: return 3;
        case Family::SkewT: return 4;
    }
    return 0;
}

std::vector<std::string> moment_names(Family family) {
    switch (family) {
        case Family::Gaussian: return {"mu", "sigma2"};
        case Family::StudentT: return {"mu", "phi", "v"};
        case Family::SkewT: return {"mu", "phi", "lambda", "v"};
    }
    return {};
}

Family family_from_string(const std::string& name) {
    if (name == "gaussian") return Family::Gaussian;
    if (name == "t") return Family::StudentT;
    if (name == "skewt") return Family::SkewT;
    throw ArgumentError("unknown family '" + name + "' (expected gaussian|t|skewt)");
}

std::string family_to_string(Family family) {
    switch (family) {
        case Family::Gaussian: return "gaussian";
        case Family::StudentT: return "t";
        case Family::SkewT: return "skewt";
    }
    return "?";
}

ParamVector ParamVector::gaussian(double mu, double sigma2) {
    ParamVector p;
    p.family = Family::Gaussian;
    p.f = {mu, sigma2, 0.0, 0.0};
    return p;
}

ParamVector ParamVector::student_t(double mu, double phi, double v) {
    ParamVector p;
    p.family = Family::StudentT;
    p.f = {mu, phi, v, 0.0};
    return p;
}

ParamVector ParamVector::skew_t(double mu, double phi, double lambda, double v) {
    ParamVector p;
    p.family = Family::SkewT;
    p.f = {mu, phi, lambda, v};
    return p;
}

bool in_domain(const ParamVector& f) {
    for (int i = 0; i < f.size(); ++i) {
        if (!std::isfinite(f[i])) return false;
    }
    switch (f.family) {
        case Family::Gaussian:
            return f.f[1] > 0.0;
        case Family::StudentT:
            return f.f[1] > 0.0 && f.f[2] > 2.0;
        case Family::SkewT:
            return f.f[1] > 0.0 && f.f[3] > 2.0;
    }
    return false;
}

void validate_params(const ParamVector& f) {
    if (!in_domain(f)) {
        throw ParamDomainError("parameter vector outside the domain of family "
                               + family_to_string(f.family));
    }
}

double log_density(const ParamVector& f, double y) {
    validate_params(f);
    switch (f.family) {
        case Family::Gaussian: {
            const double mu = f.f[0], sigma2 = f.f[1];
            const double d = y - mu;
            return -0.5 * (kLn2Pi + std::log(sigma2)) - 0.5 * d * d / sigma2;
        }
        case Family::StudentT: {
            // phi is the squared scale
            const double mu = f.f[0], phi = f.f[1], v = f.f[2];
            const double d = y - mu;
            return std::lgamma(0.5 * (v + 1.0)) - std::lgamma(0.5 * v)
                - 0.5 * std::log(std::numbers::pi * v * phi)
                - 0.5 * (v + 1.0) * std::log1p(d * d / (v * phi));
        }
        case Family::SkewT: {
            // 2/phi * t(z; v) * T(lambda z sqrt((v+1)/(v+z^2)); v+1)
            const double mu = f.f[0], phi = f.f[1], lambda = f.f[2], v = f.f[3];
            const double z = (y - mu) / phi;
            const double w = lambda * z * std::sqrt((v + 1.0) / (v + z * z));
            const double cdf = special::student_t_cdf(w, v + 1.0);
            if (!(cdf > 0.0)) return -std::numeric_limits<double>::infinity();
            return std::numbers::ln2 - std::log(phi) + special::student_t_logpdf(z, v)
                + std::log(cdf);
        }
    }
    return 0.0;
}

namespace {

// Five-point central differences on log_density. The wide fourth-order
// stencil keeps the quotient insensitive to the ~1e-12 evaluation noise of
// the incomplete-beta CDF inside the skew-t density; steps are shrunk near
// the domain boundary so all four offset points stay valid.
ScoreVec fd_score(const ParamVector& f, double y) {
    ScoreVec out;
    out.n = f.size();
    for (int i = 0; i < out.n; ++i) {
        double h = 1e-3 * std::max(1.0, std::fabs(f[i]));
        const bool positive_only =
            (f.family == Family::StudentT && i == 1) || (f.family == Family::SkewT && i == 1);
        const bool df_param = (f.family == Family::StudentT && i == 2)
            || (f.family == Family::SkewT && i == 3);
        if (positive_only) h = std::min(h, 0.1 * f[i]);
        if (df_param) h = std::min(h, 0.05 * (f[i] - 2.0));
        ParamVector p2 = f, p1 = f, m1 = f, m2 = f;
        p2[i] += 2.0 * h;
        p1[i] += h;
        m1[i] -= h;
        m2[i] -= 2.0 * h;
        out.s[static_cast<std::size_t>(i)] =
            (-log_density(p2, y) + 8.0 * log_density(p1, y) - 8.0 * log_density(m1, y)
             + log_density(m2, y)) / (12.0 * h);
    }
    return out;
}

}  // namespace

ScoreVec score(const ParamVector& f, double y) {
    validate_params(f);
    ScoreVec out;
    out.n = f.size();
    switch (f.family) {
        case Family::Gaussian: {
            const double mu = f.f[0], sigma2 = f.f[1];
            const double d = y - mu;
            out.s[0] = d / sigma2;
            out.s[1] = d * d / (2.0 * sigma2 * sigma2) - 0.5 / sigma2;
            return out;
        }
        case Family::StudentT: {
            const double mu = f.f[0], phi = f.f[1], v = f.f[2];
            const double d = y - mu;
            const double denom = v * phi + d * d;
            out.s[0] = (v + 1.0) * d / denom;
            out.s[1] = 0.5 / phi * ((v + 1.0) * d * d / denom - 1.0);
            out.s[2] = 0.5 * (special::digamma(0.5 * (v + 1.0)) - special::digamma(0.5 * v)
                              - 1.0 / v - std::log1p(d * d / (v * phi))
                              + (v + 1.0) * d * d / (v * denom));
            return out;
        }
        case Family::SkewT:
            return fd_score(f, y);
    }
    return out;
}

namespace detail {

// Standardized skew-t information (location 0, scale 1) by Gauss-Legendre
// quadrature under the substitution z = c * tan(u).
SymMat skewt_information_std(double lambda, double v) {
    constexpr std::size_t kNodes = 4096;
    constexpr double kHalfPi = std::numbers::pi / 2.0;
    const double c = 2.0;
    const auto& gl = special::gauss_legendre(kNodes);

    SymMat info = SymMat::zero(4);
    const ParamVector f0 = ParamVector::skew_t(0.0, 1.0, lambda, v);
    for (std::size_t q = 0; q < kNodes; ++q) {
        const double u = kHalfPi * gl.nodes[q];
        const double tan_u = std::tan(u);
        const double z = c * tan_u;
        const double jac = kHalfPi * c * (1.0 + tan_u * tan_u);
        const double dens = std::exp(log_density(f0, z));
        if (!(dens > 0.0)) continue;
        const ScoreVec sc = score(f0, z);
        const double wq = gl.weights[q] * jac * dens;
        for (int i = 0; i < 4; ++i) {
            for (int j = i; j < 4; ++j) {
                info.at(i, j) += wq * sc[i] * sc[j];
            }
        }
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) info.at(j, i) = info.at(i, j);
    }
    return info;
}

}  // namespace detail

SymMat information(const ParamVector& f) {
    validate_params(f);
    switch (f.family) {
        case Family::Gaussian: {
            const double sigma2 = f.f[1];
            SymMat m = SymMat::zero(2);
            m.at(0, 0) = 1.0 / sigma2;
            m.at(1, 1) = 0.5 / (sigma2 * sigma2);
            return m;
        }
        case Family::StudentT: {
            const double phi = f.f[1], v = f.f[2];
            SymMat m = SymMat::zero(3);
            m.at(0, 0) = (v + 1.0) / (phi * (v + 3.0));
            m.at(1, 1) = 0.5 * v / (phi * phi * (v + 3.0));
            m.at(1, 2) = m.at(2, 1) = -1.0 / (phi * (v + 1.0) * (v + 3.0));
            m.at(2, 2) = 0.25 * (special::trigamma(0.5 * v) - special::trigamma(0.5 * (v + 1.0)))
                - (v + 5.0) / (2.0 * v * (v + 1.0) * (v + 3.0));
            return m;
        }
        case Family::SkewT: {
            const double phi = f.f[1], lambda = f.f[2], v = f.f[3];
            SymMat std_info = detail::skewt_information_std(lambda, v);
            // location-scale mapping: scores in (mu, phi) shrink by 1/phi
            SymMat m = SymMat::zero(4);
            const std::array<double, 4> scale = {1.0 / phi, 1.0 / phi, 1.0, 1.0};
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    m.at(i, j) = std_info.at(i, j) * scale[static_cast<std::size_t>(i)]
                        * scale[static_cast<std::size_t>(j)];
                }
            }
            return m;
        }
    }
    return SymMat::zero(0);
}

SymMat scaling_matrix(const ParamVector& f, double gamma) {
    validate_params(f);
    if (gamma != 0.0 && gamma != 0.5 && gamma != 1.0) {
        throw ArgumentError("gamma must be one of 0, 0.5, 1");
    }
    if (gamma == 0.0) return SymMat::identity(f.size());
    const SymMat info = information(f);
    return linalg::sym_pow(info, -gamma);
}

}  // namespace dcsclust
