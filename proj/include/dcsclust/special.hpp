#pragma once

#include <cstddef>
#include <vector>

namespace dcsclust::special {

/// Digamma psi(x) for x > 0 (recurrence into asymptotic region).
double digamma(double x);

/// Trigamma psi'(x) for x > 0.
double trigamma(double x);

/// Regularized incomplete beta I_x(a, b), x in [0, 1], a, b > 0.
double inc_beta(double a, double b, double x);

/// CDF of the standard Student-t with df degrees of freedom.
double student_t_cdf(double x, double df);

/// Log pdf of the standard Student-t with df degrees of freedom.
double student_t_logpdf(double x, double df);

/// Standard normal CDF.
double normal_cdf(double x);

/// Survival function of chi-squared with 2 degrees of freedom: exp(-x/2).
double chi2_sf_2df(double x);

/// Gauss-Legendre nodes/weights on [-1, 1]; cached per n, thread-safe.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(std::size_t n);

}  // namespace dcsclust::special
