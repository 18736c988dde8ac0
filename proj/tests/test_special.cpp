#include <doctest.h>

#include <cmath>

#include "dcsclust/special.hpp"

using namespace dcsclust;

TEST_CASE("digamma matches reference values") {
    // Reference values computed with an independent implementation (scipy).
    CHECK(special::digamma(1.0) == doctest::Approx(-0.5772156649015329).epsilon(1e-12));
    CHECK(special::digamma(0.5) == doctest::Approx(-1.9635100260214235).epsilon(1e-12));
    CHECK(special::digamma(4.7) == doctest::Approx(1.4374238096317817).epsilon(1e-12));
    CHECK(special::digamma(0.013) == doctest::Approx(-77.47910924410468).epsilon(1e-12));
    CHECK(special::digamma(12.0) == doctest::Approx(2.4426616799758123).epsilon(1e-12));
}

TEST_CASE("digamma recurrence psi(x+1) = psi(x) + 1/x") {
    for (double x : {0.1, 0.9, 2.3, 5.5, 41.0}) {
        CHECK(special::digamma(x + 1.0)
              == doctest::Approx(special::digamma(x) + 1.0 / x).epsilon(1e-12));
    }
}

TEST_CASE("trigamma matches reference values") {
    CHECK(special::trigamma(1.0) == doctest::Approx(1.6449340668482266).epsilon(1e-12));
    CHECK(special::trigamma(2.5) == doctest::Approx(0.4903577561002349).epsilon(1e-12));
    CHECK(special::trigamma(0.2) == doctest::Approx(26.26737720542378).epsilon(1e-12));
    CHECK(special::trigamma(7.3) == doctest::Approx(0.14679576813142703).epsilon(1e-12));
}

TEST_CASE("incomplete beta matches reference values") {
    CHECK(special::inc_beta(2.0, 3.0, 0.4) == doctest::Approx(0.5248).epsilon(1e-12));
    CHECK(special::inc_beta(0.5, 0.5, 0.7)
          == doctest::Approx(0.6309898804344546).epsilon(1e-12));
    CHECK(special::inc_beta(8.0, 12.0, 0.35)
          == doctest::Approx(0.33443298016246026).epsilon(1e-12));
    CHECK(special::inc_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(special::inc_beta(2.0, 3.0, 1.0) == 1.0);
}

TEST_CASE("incomplete beta symmetry I_x(a,b) = 1 - I_{1-x}(b,a)") {
    for (double x : {0.05, 0.3, 0.62, 0.97}) {
        CHECK(special::inc_beta(1.7, 4.2, x)
              == doctest::Approx(1.0 - special::inc_beta(4.2, 1.7, 1.0 - x)).epsilon(1e-12));
    }
}

TEST_CASE("student t cdf matches reference values") {
    CHECK(special::student_t_cdf(1.0, 1.0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(special::student_t_cdf(-2.3, 7.5)
          == doctest::Approx(0.02628644805218451).epsilon(1e-12));
    CHECK(special::student_t_cdf(0.7, 4.0)
          == doctest::Approx(0.738749917203275).epsilon(1e-12));
    CHECK(special::student_t_cdf(5.0, 2.5)
          == doctest::Approx(0.9882744050145691).epsilon(1e-12));
    CHECK(special::student_t_cdf(0.0, 3.0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("student t cdf symmetry") {
    for (double x : {0.2, 1.1, 3.7}) {
        CHECK(special::student_t_cdf(x, 6.0) + special::student_t_cdf(-x, 6.0)
              == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("normal cdf matches reference values") {
    CHECK(special::normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(special::normal_cdf(1.3) == doctest::Approx(0.9031995154143897).epsilon(1e-13));
    CHECK(special::normal_cdf(-1.3)
          == doctest::Approx(1.0 - 0.9031995154143897).epsilon(1e-12));
}

TEST_CASE("chi-squared survival with 2 df") {
    CHECK(special::chi2_sf_2df(0.0) == 1.0);
    CHECK(special::chi2_sf_2df(2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(special::chi2_sf_2df(13.4) == doctest::Approx(std::exp(-6.7)).epsilon(1e-14));
}

TEST_CASE("gauss-legendre quadrature integrates polynomials exactly") {
    const auto& gl = special::gauss_legendre(16);
    REQUIRE(gl.nodes.size() == 16);
    double wsum = 0.0, x2 = 0.0, x6 = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        wsum += gl.weights[i];
        x2 += gl.weights[i] * gl.nodes[i] * gl.nodes[i];
        x6 += gl.weights[i] * std::pow(gl.nodes[i], 6);
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(x6 == doctest::Approx(2.0 / 7.0).epsilon(1e-13));
}

TEST_CASE("gauss-legendre nodes are symmetric and inside (-1,1)") {
    const auto& gl = special::gauss_legendre(33);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        CHECK(std::fabs(gl.nodes[i]) < 1.0);
        CHECK(gl.weights[i] > 0.0);
        CHECK(gl.nodes[i] == doctest::Approx(-gl.nodes[gl.nodes.size() - 1 - i]).epsilon(1e-13));
    }
}
