#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dcsclust/diagnostics.hpp"
#include "dcsclust/fcm.hpp"
#include "dcsclust/models.hpp"
#include "dcsclust/simulation.hpp"

namespace dcsclust {

/// Score-scaling exponent used when the caller does not pick one: full
/// inverse-information scaling where it is cheap, identity for the family
/// whose information needs per-step quadrature.
double default_gamma(Family family);

struct PipelineConfig {
    std::filesystem::path input;
    std::filesystem::path out_dir = "out";
    Family family = Family::Gaussian;
    std::optional<double> gamma;    // absent: default_gamma(family)
    int lags = 50;
    double fuzzifier = 2.0;
    int c_min = 2;
    int c_max = 5;
    std::optional<int> fixed_c;     // set: skip the cluster-count sweep
    double tol = 1e-6;
    int max_iter = 100;             // clustering iterations
    int restarts = 10;
    std::uint64_t seed = 42;
    int jobs = 0;                   // 0: hardware concurrency
};

struct SeriesFitSummary {
    std::string id;
    std::size_t n = 0;
    double loglik = 0.0;
    double init_loglik = 0.0;
    bool converged = false;
    int iterations = 0;
};

struct LevelSummary {
    std::string moment;
    int selected_c = 0;
    std::vector<SilhouetteRow> silhouettes;
    ClusterResult clustering;
};

struct PipelineResult {
    std::filesystem::path out_dir;
    std::vector<std::string> ids;   // sorted order used everywhere
    std::vector<NormalityReport> diagnostics;
    std::vector<SeriesFitSummary> fits;
    std::vector<LevelSummary> levels;
    std::vector<std::vector<std::string>> consensus;
    int lags_effective = 0;
};

/// Full clustering pipeline: ingest, normality diagnostics, per-series
/// fits, per-moment autocorrelation features, clustering per moment,
/// consensus across moments, artifacts under out_dir. Artifacts appear
/// only after every stage succeeded; reruns with identical inputs yield
/// byte-identical files.
PipelineResult run_pipeline(const PipelineConfig& config);

struct SimulateConfig {
    int scenario = 0;               // 1 or 2; 0 means custom DGP params
    std::optional<EgarchDgpParams> dgp1;
    std::optional<EgarchDgpParams> dgp2;
    std::vector<std::size_t> t_grid = {50, 200, 500};
    std::vector<int> l_grid = {10, 25, 50};
    int replications = 100;
    std::uint64_t seed = 42;
    std::filesystem::path out_dir = "out";
    int jobs = 0;
};

/// Monte-Carlo study over the (T, lags) grid; writes results.csv (4-decimal
/// table) and results_raw.csv (full precision) under out_dir.
std::vector<ClassificationReport> run_simulation_study(const SimulateConfig& config);

struct DiagnoseConfig {
    std::filesystem::path input;
    std::optional<std::filesystem::path> out_dir;  // absent: print to stdout
};

/// Normality diagnostics over a panel; writes diagnostics.csv when an
/// output directory is given, otherwise prints the table.
std::vector<NormalityReport> run_diagnose(const DiagnoseConfig& config);

}  // namespace dcsclust
