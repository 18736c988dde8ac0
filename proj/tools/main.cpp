#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dcsclust/pipeline.hpp"

namespace {

dcsclust::EgarchDgpParams parse_dgp(const std::vector<double>& v, const std::string& flag) {
    if (v.size() != 6) {
        throw dcsclust::ArgumentError(flag + " needs six values: omega,phi,alpha,beta,skew,df");
    }
    dcsclust::EgarchDgpParams p;
    p.omega = v[0];
    p.phi = v[1];
    p.alpha = v[2];
    p.beta = v[3];
    p.skew = v[4];
    p.df = v[5];
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clusters panels of series by the dynamics of their conditional moments"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI-style file");

    // ------------------------------------------------------------------ cluster
    auto* cluster = app.add_subcommand("cluster", "Fit, extract moments, cluster a panel");
    dcsclust::PipelineConfig pc;
    std::string family_name = "gaussian";
    std::optional<double> gamma_opt;
    std::optional<int> fixed_c;
    cluster->add_option("--input", pc.input, "Panel CSV (columns are series)")
        ->required()
        ->envname("DCSCLUST_INPUT");
    cluster->add_option("--out", pc.out_dir, "Output directory")
        ->envname("DCSCLUST_OUT");
    cluster->add_option("--family", family_name, "Observation family: gaussian|t|skewt")
        ->envname("DCSCLUST_FAMILY");
    cluster->add_option("--gamma", gamma_opt, "Score scaling exponent: 0, 0.5 or 1")
        ->envname("DCSCLUST_GAMMA");
    cluster->add_option("--lags", pc.lags, "Autocorrelation lags")
        ->envname("DCSCLUST_LAGS");
    cluster->add_option("--m", pc.fuzzifier, "Fuzzifier (> 1)")
        ->envname("DCSCLUST_M");
    auto* cmin = cluster->add_option("--c-min", pc.c_min, "Smallest cluster count")
        ->envname("DCSCLUST_C_MIN");
    auto* cmax = cluster->add_option("--c-max", pc.c_max, "Largest cluster count")
        ->envname("DCSCLUST_C_MAX");
    cluster->add_option("--c", fixed_c, "Fixed cluster count (skips the sweep)")
        ->envname("DCSCLUST_C")
        ->excludes(cmin)
        ->excludes(cmax);
    cluster->add_option("--tol", pc.tol, "Clustering convergence tolerance")
        ->envname("DCSCLUST_TOL");
    cluster->add_option("--max-iter", pc.max_iter, "Clustering iteration cap")
        ->envname("DCSCLUST_MAX_ITER");
    cluster->add_option("--restarts", pc.restarts, "Clustering restarts")
        ->envname("DCSCLUST_RESTARTS");
    cluster->add_option("--seed", pc.seed, "Random seed")
        ->envname("DCSCLUST_SEED");
    cluster->add_option("--jobs", pc.jobs, "Worker threads (0 = hardware)")
        ->envname("DCSCLUST_JOBS");

    // ------------------------------------------------------------------ simulate
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo classification study");
    dcsclust::SimulateConfig sc;
    int scenario = 0;
    std::vector<double> dgp1_values, dgp2_values;
    std::optional<std::size_t> t_single;
    std::optional<int> l_single;
    auto* scen = simulate->add_option("--scenario", scenario, "Scenario preset: 1 or 2")
        ->envname("DCSCLUST_SCENARIO");
    simulate->add_option("--dgp1", dgp1_values,
                         "Custom group-1 DGP: omega,phi,alpha,beta,skew,df")
        ->delimiter(',')
        ->excludes(scen);
    simulate->add_option("--dgp2", dgp2_values,
                         "Custom group-2 DGP: omega,phi,alpha,beta,skew,df")
        ->delimiter(',')
        ->excludes(scen);
    simulate->add_option("--T", t_single, "Series length (default: grid 50,200,500)")
        ->envname("DCSCLUST_T");
    simulate->add_option("--lags", l_single, "Lag count (default: grid 10,25,50)")
        ->envname("DCSCLUST_LAGS");
    simulate->add_option("--M", sc.replications, "Replications per cell")
        ->envname("DCSCLUST_M_REPS");
    simulate->add_option("--seed", sc.seed, "Random seed")
        ->envname("DCSCLUST_SEED");
    simulate->add_option("--out", sc.out_dir, "Output directory")
        ->envname("DCSCLUST_OUT");
    simulate->add_option("--jobs", sc.jobs, "Worker threads (0 = hardware)")
        ->envname("DCSCLUST_JOBS");

    // ------------------------------------------------------------------ diagnose
    auto* diagnose = app.add_subcommand("diagnose", "Normality diagnostics of a panel");
    dcsclust::DiagnoseConfig dc;
    std::optional<std::filesystem::path> diag_out;
    diagnose->add_option("--input", dc.input, "Panel CSV (columns are series)")
        ->required()
        ->envname("DCSCLUST_INPUT");
    diagnose->add_option("--out", diag_out, "Output directory (default: print)")
        ->envname("DCSCLUST_OUT");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cluster->parsed()) {
            pc.family = dcsclust::family_from_string(family_name);
            pc.gamma = gamma_opt;
            pc.fixed_c = fixed_c;
            dcsclust::run_pipeline(pc);
        } else if (simulate->parsed()) {
            sc.scenario = scenario;
            if (!dgp1_values.empty()) sc.dgp1 = parse_dgp(dgp1_values, "--dgp1");
            if (!dgp2_values.empty()) sc.dgp2 = parse_dgp(dgp2_values, "--dgp2");
            if (t_single.has_value()) sc.t_grid = {*t_single};
            if (l_single.has_value()) sc.l_grid = {*l_single};
            dcsclust::run_simulation_study(sc);
        } else if (diagnose->parsed()) {
            dc.out_dir = diag_out;
            dcsclust::run_diagnose(dc);
        }
    } catch (const dcsclust::Error& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
