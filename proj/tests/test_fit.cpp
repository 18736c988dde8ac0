#include <doctest.h>

#include <cmath>

#include "dcsclust/models.hpp"
#include "dcsclust/rng.hpp"
#include "dcsclust/types.hpp"
#include "support.hpp"

using namespace dcsclust;

namespace {

ReturnSeries iid_gaussian(std::size_t T, double mu, double sigma2, std::uint64_t seed) {
    Rng rng(seed);
    ReturnSeries s;
    s.id = "iidg";
    s.values.resize(T);
    for (auto& v : s.values) v = mu + std::sqrt(sigma2) * rng.normal();
    return s;
}

double level(const FittedDcs& fit, std::size_t i) {
    return fit.params.omega[i] / (1.0 - fit.params.b_diag[i]);
}

}  // namespace

TEST_CASE("gaussian fit recovers iid moments with near-zero score loadings") {
    const ReturnSeries y = iid_gaussian(5000, 0.3, 2.0, 90210u);
    DcsSpec spec;  // gaussian, gamma 1
    const FittedDcs fit = fit_mle(spec, y);

    CHECK(fit.converged);
    CHECK(fit.loglik >= fit.init_loglik);
    CHECK(level(fit, 0) == doctest::Approx(0.3).scale(1.0).epsilon(0.05));
    CHECK(level(fit, 1) == doctest::Approx(2.0).scale(1.0).epsilon(0.1));
    CHECK(std::fabs(fit.params.a_diag[0]) < 0.05);
    CHECK(std::fabs(fit.params.a_diag[1]) < 0.05);
}

TEST_CASE("student t fit recovers iid t moments") {
    Rng rng(777u);
    ReturnSeries y;
    y.id = "iidt";
    y.values.resize(3000);
    for (auto& v : y.values) v = 0.1 + std::sqrt(1.5) * rng.student_t(6.0);

    DcsSpec spec;
    spec.family = Family::StudentT;
    spec.gamma = 1.0;
    const FittedDcs fit = fit_mle(spec, y);

    CHECK(fit.loglik >= fit.init_loglik);
    CHECK(level(fit, 0) == doctest::Approx(0.1).scale(1.0).epsilon(0.08));
    CHECK(level(fit, 1) == doctest::Approx(1.5).scale(1.0).epsilon(0.25));
    CHECK(level(fit, 2) > 4.0);
    CHECK(level(fit, 2) < 9.0);
}

TEST_CASE("refitting from the optimum stops almost immediately") {
    const ReturnSeries y = iid_gaussian(1500, 0.0, 1.0, 5150u);
    DcsSpec spec;
    const FittedDcs first = fit_mle(spec, y);
    const FittedDcs again = fit_mle(spec, y, first.params);

    CHECK(again.iterations <= 3);
    CHECK(again.loglik == doctest::Approx(first.loglik).epsilon(1e-8));
    CHECK(again.init_loglik == doctest::Approx(first.loglik).epsilon(1e-8));
}

TEST_CASE("fit recovers time variation simulated from the model itself") {
    DcsSpec spec;  // gaussian, gamma 1
    DcsParams truth;
    truth.omega = {0.0, 0.05};
    truth.a_diag = {0.0, 0.10};
    truth.b_diag = {0.0, 0.95};
    const ReturnSeries y = testsup::simulate_dcs(spec, truth, 4000, 160401u);

    const FittedDcs fit = fit_mle(spec, y);
    // variance dynamics: loading and persistence near the truth
    CHECK(fit.params.a_diag[1] == doctest::Approx(0.10).scale(1.0).epsilon(0.05));
    CHECK(fit.params.b_diag[1] == doctest::Approx(0.95).scale(1.0).epsilon(0.05));
    // and the fitted likelihood is no worse than the truth's
    CHECK(fit.loglik >= filter(spec, truth, y).loglik - 1e-6);
}

TEST_CASE("fit rejects unusable inputs") {
    DcsSpec spec;
    ReturnSeries tiny;
    tiny.id = "tiny";
    tiny.values.assign(29, 0.5);
    CHECK_THROWS_AS(fit_mle(spec, tiny), DegenerateSeriesError);

    ReturnSeries flat;
    flat.id = "flat";
    flat.values.assign(100, 1.25);
    CHECK_THROWS_AS(fit_mle(spec, flat), DegenerateSeriesError);

    const ReturnSeries y = iid_gaussian(100, 0.0, 1.0, 9u);
    DcsParams bad;
    bad.omega = {0.0, 0.1};
    bad.a_diag = {0.0, 0.0};
    bad.b_diag = {0.0, 1.5};
    CHECK_THROWS_AS(fit_mle(spec, y, bad), ArgumentError);
}

TEST_CASE("extracted moment paths match a direct filter run") {
    const ReturnSeries y = iid_gaussian(400, 0.0, 1.0, 31u);
    DcsSpec spec;
    const FittedDcs fit = fit_mle(spec, y);
    const MomentPaths paths = extract_moments(fit, y);
    REQUIRE(paths.paths.size() == 2);
    CHECK(paths.names == std::vector<std::string>{"mu", "sigma2"});
    CHECK(paths.paths[0].size() == y.size());
    const FilterResult direct = filter(spec, fit.params, y);
    for (std::size_t t = 0; t < y.size(); t += 37) {
        CHECK(paths.paths[1][t] == direct.moments.paths[1][t]);
    }
}
