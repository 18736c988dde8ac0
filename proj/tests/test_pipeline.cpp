#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcsclust/csv.hpp"
#include "dcsclust/pipeline.hpp"
#include "dcsclust/rng.hpp"
#include "support.hpp"

using namespace dcsclust;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Panel of two dynamics groups: slow vs fast mean reversion of the variance.
fs::path write_panel(const std::string& name, std::size_t T) {
    DcsSpec spec;  // gaussian, gamma 1
    DcsParams slow;
    slow.omega = {0.0, 0.05};
    slow.a_diag = {0.0, 0.10};
    slow.b_diag = {0.0, 0.95};
    DcsParams fast = slow;
    fast.a_diag[1] = 0.25;
    fast.b_diag[1] = 0.30;
    fast.omega[1] = 1.0 * (1.0 - 0.30);

    std::vector<ReturnSeries> panel;
    for (int k = 0; k < 3; ++k) {
        panel.push_back(testsup::simulate_dcs(spec, slow, T, derive_seed(500u, static_cast<unsigned>(k)),
                                              "slow" + std::to_string(k + 1)));
    }
    for (int k = 0; k < 3; ++k) {
        panel.push_back(testsup::simulate_dcs(spec, fast, T, derive_seed(900u, static_cast<unsigned>(k)),
                                              "fast" + std::to_string(k + 1)));
    }

    const fs::path dir = fs::path("pipe_cases");
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    out << "date";
    for (const auto& s : panel) out << ',' << s.id;
    out << '\n';
    for (std::size_t t = 0; t < T; ++t) {
        out << "d" << (t + 1);
        for (const auto& s : panel) out << ',' << format_full(s.values[t]);
        out << '\n';
    }
    return p;
}

}  // namespace

TEST_CASE("default scaling exponent per family") {
    CHECK(default_gamma(Family::Gaussian) == 1.0);
    CHECK(default_gamma(Family::StudentT) == 1.0);
    CHECK(default_gamma(Family::SkewT) == 0.0);
}

TEST_CASE("end to end clustering pipeline") {
    const fs::path input = write_panel("panel.csv", 1000);

    PipelineConfig cfg;
    cfg.input = input;
    cfg.out_dir = fs::path("pipe_cases") / "out1";
    cfg.lags = 20;
    cfg.fixed_c = 2;
    cfg.seed = 42;
    cfg.jobs = 1;
    const PipelineResult res = run_pipeline(cfg);

    // sorted ids, every stage populated
    const std::vector<std::string> want_ids = {"fast1", "fast2", "fast3",
                                               "slow1", "slow2", "slow3"};
    CHECK(res.ids == want_ids);
    CHECK(res.lags_effective == 20);
    REQUIRE(res.diagnostics.size() == 6);
    REQUIRE(res.fits.size() == 6);
    for (const auto& f : res.fits) CHECK(f.loglik >= f.init_loglik - 1e-9);

    REQUIRE(res.levels.size() == 2);
    CHECK(res.levels[0].moment == "mu");
    CHECK(res.levels[1].moment == "sigma2");
    for (const auto& level : res.levels) {
        CHECK(level.selected_c == 2);
        REQUIRE(level.clustering.membership.u.size() == 6);
        for (const auto& row : level.clustering.membership.u) {
            double sum = 0.0;
            for (double v : row) sum += v;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        }
    }

    // variance dynamics separate the two construction groups
    const std::vector<int>& lab = res.levels[1].clustering.labels;
    CHECK(lab[0] == lab[1]);
    CHECK(lab[1] == lab[2]);
    CHECK(lab[3] == lab[4]);
    CHECK(lab[4] == lab[5]);
    CHECK(lab[0] != lab[3]);

    // consensus is a partition of the ids
    std::set<std::string> seen;
    for (const auto& group : res.consensus) {
        for (const auto& id : group) CHECK(seen.insert(id).second);
    }
    CHECK(seen.size() == 6);

    // artifacts on disk
    for (const char* name : {"diagnostics.csv", "silhouette.csv", "membership_mu.csv",
                             "membership_mu_raw.csv", "membership_sigma2.csv",
                             "membership_sigma2_raw.csv", "consensus.csv", "manifest.json"}) {
        CHECK(fs::exists(cfg.out_dir / name));
    }
    for (const auto& id : want_ids) {
        CHECK(fs::exists(cfg.out_dir / "moments" / (id + ".csv")));
    }

    // manifest carries the run description
    const auto manifest = nlohmann::json::parse(slurp(cfg.out_dir / "manifest.json"));
    CHECK(manifest["tool"] == "dcsclust");
    CHECK(manifest["version"] == "0.1.0");
    CHECK(manifest["config"]["family"] == "gaussian");
    CHECK(manifest["config"]["gamma"] == 1.0);
    CHECK(manifest["config"]["lags"] == 20);
    CHECK(manifest["config"]["lags_effective"] == 20);
    CHECK(manifest["config"]["c"] == 2);
    CHECK(manifest["config"]["seed"] == 42);
    CHECK(manifest["series"].size() == 6);
    CHECK(manifest["levels"].size() == 2);
    CHECK(manifest["consensus_groups"].size() == res.consensus.size());

    const std::string content = slurp(input);
    CHECK(manifest["input"]["bytes"] == content.size());
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(detail::fnv1a64(content)));
    CHECK(manifest["input"]["fingerprint_fnv1a64"] == std::string(hex));
    const std::string ts = manifest["timestamp"];
    CHECK(ts.size() == 20);
    CHECK(ts[4] == '-');
    CHECK(ts[10] == 'T');
    CHECK(ts.back() == 'Z');

    // membership tables list every id with row sums near one
    const std::string memb = slurp(cfg.out_dir / "membership_sigma2.csv");
    CHECK(memb.rfind("id,cluster_1,cluster_2,assigned\n", 0) == 0);
    for (const auto& id : want_ids) CHECK(memb.find(id + ",") != std::string::npos);
}

TEST_CASE("pipeline reruns are byte identical, independent of thread count") {
    const fs::path input = write_panel("panel_det.csv", 320);

    PipelineConfig cfg;
    cfg.input = input;
    cfg.lags = 15;
    cfg.fixed_c = 2;
    cfg.seed = 7;
    cfg.out_dir = fs::path("pipe_cases") / "det1";
    cfg.jobs = 1;
    run_pipeline(cfg);

    PipelineConfig cfg2 = cfg;
    cfg2.out_dir = fs::path("pipe_cases") / "det2";
    cfg2.jobs = 4;
    run_pipeline(cfg2);

    int compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(cfg.out_dir)) {
        if (!entry.is_regular_file()) continue;
        const fs::path rel = fs::relative(entry.path(), cfg.out_dir);
        const fs::path other = cfg2.out_dir / rel;
        REQUIRE(fs::exists(other));
        // manifest echoes the jobs setting; everything else must match exactly
        if (rel.filename() == "manifest.json") continue;
        CHECK(slurp(entry.path()) == slurp(other));
        ++compared;
    }
    CHECK(compared >= 13);  // 7 tables + 6 moment paths
}

TEST_CASE("cluster count sweep records one silhouette row per count") {
    const fs::path input = write_panel("panel_sweep.csv", 320);
    PipelineConfig cfg;
    cfg.input = input;
    cfg.out_dir = fs::path("pipe_cases") / "sweep";
    cfg.lags = 15;
    cfg.c_min = 2;
    cfg.c_max = 4;
    cfg.seed = 3;
    cfg.jobs = 1;
    const PipelineResult res = run_pipeline(cfg);
    for (const auto& level : res.levels) {
        CHECK(level.silhouettes.size() == 3);
        CHECK(level.selected_c >= 2);
        CHECK(level.selected_c <= 4);
    }
    const auto manifest = nlohmann::json::parse(slurp(cfg.out_dir / "manifest.json"));
    CHECK(manifest["config"]["c_min"] == 2);
    CHECK(manifest["config"]["c_max"] == 4);
}

TEST_CASE("pipeline validation and staged artifacts") {
    const fs::path dir = fs::path("pipe_cases");
    fs::create_directories(dir);

    // a panel whose series are too short to fit: no artifacts may appear
    const fs::path shorty = dir / "short.csv";
    {
        std::ofstream out(shorty, std::ios::binary);
        out << "a,b\n";
        for (int t = 0; t < 10; ++t) out << t * 0.5 << ',' << (1.0 - t) << '\n';
    }
    PipelineConfig cfg;
    cfg.input = shorty;
    cfg.out_dir = dir / "never";
    CHECK_THROWS_AS(run_pipeline(cfg), DegenerateSeriesError);
    CHECK(!fs::exists(cfg.out_dir / "manifest.json"));
    CHECK(!fs::exists(cfg.out_dir / "diagnostics.csv"));

    const fs::path input = write_panel("panel_val.csv", 120);
    cfg.input = input;
    cfg.fixed_c = 6;  // must stay below the number of series
    CHECK_THROWS_AS(run_pipeline(cfg), ArgumentError);
    cfg.fixed_c.reset();
    cfg.fuzzifier = 1.0;
    CHECK_THROWS_AS(run_pipeline(cfg), ArgumentError);
    cfg.fuzzifier = 2.0;
    cfg.gamma = 0.3;
    CHECK_THROWS_AS(run_pipeline(cfg), ArgumentError);
}

TEST_CASE("diagnose writes the same table the pipeline embeds") {
    const fs::path input = write_panel("panel_diag.csv", 120);
    DiagnoseConfig cfg;
    cfg.input = input;
    cfg.out_dir = fs::path("pipe_cases") / "diag";
    const auto reports = run_diagnose(cfg);
    REQUIRE(reports.size() == 6);
    CHECK(reports.front().id == "fast1");  // sorted order
    const std::string table = slurp(*cfg.out_dir / "diagnostics.csv");
    CHECK(table.rfind("id,n,skewness,kurtosis,jb_stat,jb_pvalue,adj_stat,adj_pvalue\n", 0) == 0);
    for (const auto& r : reports) CHECK(table.find(r.id + ",120,") != std::string::npos);
}

TEST_CASE("simulation study writes fixed and raw tables over the grid") {
    SimulateConfig cfg;
    cfg.scenario = 2;
    cfg.t_grid = {120};
    cfg.l_grid = {8};
    cfg.replications = 2;
    cfg.seed = 99;
    cfg.out_dir = fs::path("pipe_cases") / "sim";
    cfg.jobs = 1;
    const auto reports = run_simulation_study(cfg);
    REQUIRE(reports.size() == 3);

    const std::string fixed = slurp(cfg.out_dir / "results.csv");
    const std::string raw = slurp(cfg.out_dir / "results_raw.csv");
    CHECK(fixed.rfind("scenario,method,T,L,M,rate,stderr,redraws\n", 0) == 0);
    CHECK(raw.rfind("scenario,method,T,L,M,rate,stderr,redraws\n", 0) == 0);
    CHECK(fixed.find("2,AFCM_raw,120,8,2,") != std::string::npos);
    CHECK(fixed.find("2,DCS_AFCM_r1,120,8,2,") != std::string::npos);
    CHECK(fixed.find("2,DCS_AFCM_r2,120,8,2,") != std::string::npos);
    CHECK(raw.find(format_full(reports[0].rate)) != std::string::npos);

    // the same cell run directly reproduces the reported rates
    ScenarioSpec spec = make_scenario(2, 120, 8, 2, derive_seed(99, 120, 8));
    const auto direct = run_scenario(spec, 1);
    for (std::size_t m = 0; m < 3; ++m) {
        CHECK(direct[m].rate == reports[m].rate);
        CHECK(direct[m].per_replication == reports[m].per_replication);
    }

    SimulateConfig bad;
    bad.scenario = 0;
    CHECK_THROWS_AS(run_simulation_study(bad), ArgumentError);
    bad.scenario = 2;
    bad.t_grid.clear();
    CHECK_THROWS_AS(run_simulation_study(bad), ArgumentError);
}
