#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace dcsclust {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace detail

/// Derives an independent child seed from a parent seed and stream indices.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k1, std::uint64_t k2 = 0,
                                 std::uint64_t k3 = 0) {
    std::uint64_t h = detail::splitmix64(seed);
    h = detail::splitmix64(h ^ detail::splitmix64(k1 + 0x632BE59BD9B4E019ull));
    h = detail::splitmix64(h ^ detail::splitmix64(k2 + 0x9E6C63D0876A9A47ull));
    h = detail::splitmix64(h ^ detail::splitmix64(k3 + 0xC2B2AE3D27D4EB4Full));
    return h;
}

/// Deterministic random source: mt19937_64 engine with hand-rolled
/// transforms so draws are bit-identical across platforms (the std
/// distribution objects are not portable).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform on (0, 1), never returning 0 or 1.
    double uniform() {
        // 53-bit mantissa; +0.5 keeps the value strictly inside (0,1)
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (polar-free, deterministic pair cache).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Gamma(shape, 1) via Marsaglia-Tsang; shape > 0.
    double gamma(double shape) {
        if (shape < 1.0) {
            const double u = uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
        }
    }

    /// Chi-squared with df degrees of freedom.
    double chisq(double df) { return 2.0 * gamma(0.5 * df); }

    /// Student-t with df degrees of freedom (location 0, scale 1).
    double student_t(double df) { return normal() / std::sqrt(chisq(df) / df); }

    /// Skewed t with slant lambda and df degrees of freedom:
    /// Z = delta*|U0| + sqrt(1-delta^2)*U1 (skew-normal), divided by sqrt(W/df).
    double skew_t(double lambda, double df) {
        const double delta = lambda / std::sqrt(1.0 + lambda * lambda);
        const double u0 = normal();
        const double u1 = normal();
        const double z = delta * std::fabs(u0) + std::sqrt(1.0 - delta * delta) * u1;
        return z / std::sqrt(chisq(df) / df);
    }

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace dcsclust
