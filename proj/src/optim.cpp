#include "dcsclust/optim.hpp"

#include <cmath>
#include <limits>

namespace dcsclust {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}
}  // namespace

std::vector<double> numeric_gradient(const std::function<double(const std::vector<double>&)>& f,
                                     const std::vector<double>& x, double rel_step) {
    const std::size_t n = x.size();
    std::vector<double> g(n, 0.0);
    std::vector<double> xp = x;
    for (std::size_t i = 0; i < n; ++i) {
        const double h = rel_step * std::max(1.0, std::fabs(x[i]));
        xp[i] = x[i] + h;
        const double fp = f(xp);
        xp[i] = x[i] - h;
        const double fm = f(xp);
        xp[i] = x[i];
        if (std::isfinite(fp) && std::isfinite(fm)) {
            g[i] = (fp - fm) / (2.0 * h);
        } else if (std::isfinite(fp)) {
            g[i] = (fp - f(x)) / h;  // one-sided fallback near a domain edge
        } else if (std::isfinite(fm)) {
            g[i] = (f(x) - fm) / h;
        } else {
            g[i] = 0.0;
        }
    }
    return g;
}

BfgsResult minimize_bfgs(const std::function<double(const std::vector<double>&)>& f,
                         std::vector<double> x0, const BfgsOptions& opt) {
    const std::size_t n = x0.size();
    BfgsResult res;
    res.x = std::move(x0);
    res.fx = f(res.x);
    if (!std::isfinite(res.fx)) {
        res.fx = kInf;
        return res;
    }

    std::vector<double> H(n * n, 0.0);  // inverse-Hessian approximation
    auto reset_H = [&] {
        std::fill(H.begin(), H.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) H[i * n + i] = 1.0;
    };
    reset_H();

    std::vector<double> g = numeric_gradient(f, res.x, opt.fd_step);
    std::vector<double> d(n), x_new(n), g_new(n), s(n), y(n);

    for (int iter = 0; iter < opt.max_iter; ++iter) {
        if (norm2(g) < opt.grad_tol) {
            res.converged = true;
            return res;
        }

        // d = -H g
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += H[i * n + j] * g[j];
            d[i] = -acc;
        }
        double slope = 0.0;
        for (std::size_t i = 0; i < n; ++i) slope += d[i] * g[i];
        if (!(slope < 0.0)) {  // not a descent direction: fall back to steepest descent
            reset_H();
            for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
            slope = -norm2(g) * norm2(g);
        }

        // Armijo backtracking
        constexpr double kC1 = 1e-4;
        double alpha = 1.0;
        double f_new = kInf;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            for (std::size_t i = 0; i < n; ++i) x_new[i] = res.x[i] + alpha * d[i];
            f_new = f(x_new);
            if (std::isfinite(f_new) && f_new <= res.fx + kC1 * alpha * slope) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        res.iterations = iter + 1;
        if (!accepted) {
            res.converged = norm2(g) < opt.grad_tol;
            return res;  // stalled; caller keeps the best point reached
        }

        g_new = numeric_gradient(f, x_new, opt.fd_step);
        double sy = 0.0, yy = 0.0, ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = x_new[i] - res.x[i];
            y[i] = g_new[i] - g[i];
            sy += s[i] * y[i];
            yy += y[i] * y[i];
            ss += s[i] * s[i];
        }
        res.x = x_new;
        res.fx = f_new;
        g = g_new;

        if (sy > 1e-12 * std::sqrt(ss * yy) && sy > 0.0) {
            // H <- (I - rho s y') H (I - rho y s') + rho s s'
            const double rho = 1.0 / sy;
            std::vector<double> Hy(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < n; ++j) acc += H[i * n + j] * y[j];
                Hy[i] = acc;
            }
            double yHy = 0.0;
            for (std::size_t i = 0; i < n; ++i) yHy += y[i] * Hy[i];
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    H[i * n + j] += -rho * (Hy[i] * s[j] + s[i] * Hy[j])
                        + rho * rho * yHy * s[i] * s[j] + rho * s[i] * s[j];
                }
            }
        } else {
            reset_H();  // curvature too weak to trust the update
        }
    }
    res.converged = norm2(g) < opt.grad_tol;
    return res;
}

}  // namespace dcsclust
