#pragma once

#include <functional>
#include <vector>

namespace dcsclust {

struct BfgsOptions {
    int max_iter = 500;
    double grad_tol = 1e-6;   // on the euclidean norm of the numeric gradient
    double fd_step = 1e-5;    // relative central-difference step
};

struct BfgsResult {
    std::vector<double> x;
    double fx = 0.0;
    bool converged = false;   // gradient norm fell below grad_tol
    int iterations = 0;
};

/// Quasi-Newton (BFGS) minimizer with numeric central-difference gradients
/// and Armijo backtracking. The objective may return +inf to mark infeasible
/// points; such points are never accepted by the line search.
BfgsResult minimize_bfgs(const std::function<double(const std::vector<double>&)>& f,
                         std::vector<double> x0, const BfgsOptions& opt = {});

/// Central-difference gradient used by the minimizer (exposed for tests).
std::vector<double> numeric_gradient(const std::function<double(const std::vector<double>&)>& f,
                                     const std::vector<double>& x, double rel_step = 1e-5);

}  // namespace dcsclust
