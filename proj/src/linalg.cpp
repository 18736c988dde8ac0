#include "dcsclust/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dcsclust/types.hpp"

namespace dcsclust {

SymMat SymMat::identity(int n) {
    SymMat m = zero(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

SymMat SymMat::zero(int n) {
    SymMat m;
    m.n = n;
    m.a.fill(0.0);
    return m;
}

namespace linalg {

void eigen_sym(const SymMat& m, std::array<double, 4>& vals, std::array<double, 16>& vecs) {
    const int n = m.n;
    std::array<double, 16> a = m.a;
    std::array<double, 16> v{};
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i * n + i)] = 1.0;

    auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i * n + j)]; };
    auto V = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i * n + j)]; };

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
        if (off < 1e-300) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0)
                    / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    // sort eigenpairs ascending
    std::array<int, 4> order{};
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.begin() + n,
              [&](int x, int y) { return A(x, x) < A(y, y); });
    vals.fill(0.0);
    vecs.fill(0.0);
    for (int j = 0; j < n; ++j) {
        const int src = order[static_cast<std::size_t>(j)];
        vals[static_cast<std::size_t>(j)] = A(src, src);
        for (int i = 0; i < n; ++i) vecs[static_cast<std::size_t>(i * n + j)] = V(i, src);
    }
}

SymMat sym_pow(const SymMat& m, double p, double cond_limit) {
    const int n = m.n;
    std::array<double, 4> vals{};
    std::array<double, 16> vecs{};
    eigen_sym(m, vals, vecs);

    const double lo = vals[0];
    const double hi = vals[static_cast<std::size_t>(n - 1)];
    double cond = std::numeric_limits<double>::infinity();
    if (lo > 0.0) cond = hi / lo;
    if (!(lo > 0.0) || !(cond < cond_limit) || !std::isfinite(hi)) {
        throw ScalingError("information matrix not safely positive definite", cond);
    }

    SymMat out = SymMat::zero(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) {
                s += vecs[static_cast<std::size_t>(i * n + k)]
                    * std::pow(vals[static_cast<std::size_t>(k)], p)
                    * vecs[static_cast<std::size_t>(j * n + k)];
            }
            out.at(i, j) = s;
            out.at(j, i) = s;
        }
    }
    return out;
}

std::array<double, 4> mat_vec(const SymMat& m, const std::array<double, 4>& x) {
    std::array<double, 4> y{};
    for (int i = 0; i < m.n; ++i) {
        double s = 0.0;
        for (int j = 0; j < m.n; ++j) s += m.at(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

}  // namespace linalg
}  // namespace dcsclust
