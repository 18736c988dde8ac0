#include <algorithm>
#include <atomic>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <sys/stat.h>
#include <thread>

#include <json.hpp>

#include "dcsclust/acf.hpp"
#include "dcsclust/csv.hpp"
#include "dcsclust/pipeline.hpp"
#include "dcsclust/rng.hpp"

namespace dcsclust {

namespace {

constexpr const char* kToolName = "dcsclust";
constexpr const char* kToolVersion = "0.1.0";

int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Input fingerprint and modification time; the manifest timestamp is tied
// to the input so identical runs produce identical bytes.
struct InputStamp {
    std::uint64_t fingerprint = 0;
    std::uintmax_t bytes = 0;
    std::string mtime_utc;
};

InputStamp stamp_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("cannot open input file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string data = ss.str();

    InputStamp st;
    st.bytes = data.size();
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    st.fingerprint = h;

    struct stat sb {};
    if (::stat(path.c_str(), &sb) == 0) {
        std::tm tm{};
        gmtime_r(&sb.st_mtime, &tm);
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                      tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
        st.mtime_utc = buf;
    }
    return st;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Staged artifact set: nothing touches the disk until every stage of the
// run has succeeded; a failed write cleans up what was already written.
class ArtifactSet {
  public:
    void add(const std::filesystem::path& rel, std::string content) {
        files_.emplace_back(rel, std::move(content));
    }

    void write_all(const std::filesystem::path& out_dir) {
        std::vector<std::filesystem::path> written;
        try {
            for (const auto& [rel, content] : files_) {
                const std::filesystem::path full = out_dir / rel;
                std::filesystem::create_directories(full.parent_path());
                std::ofstream out(full, std::ios::binary | std::ios::trunc);
                if (!out) throw Error("io", "cannot write '" + full.string() + "'");
                out << content;
                out.close();
                if (!out) throw Error("io", "failed writing '" + full.string() + "'");
                written.push_back(full);
            }
        } catch (...) {
            for (const auto& p : written) {
                std::error_code ec;
                std::filesystem::remove(p, ec);
            }
            throw;
        }
    }

  private:
    std::vector<std::pair<std::filesystem::path, std::string>> files_;
};

template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::string diagnostics_csv(const std::vector<NormalityReport>& reports) {
    std::string out = "id,n,skewness,kurtosis,jb_stat,jb_pvalue,adj_stat,adj_pvalue\n";
    for (const NormalityReport& r : reports) {
        out += r.id + ',' + std::to_string(r.n) + ',' + format_fixed(r.skewness) + ','
            + format_fixed(r.kurtosis) + ',' + format_fixed(r.jb_stat) + ','
            + format_fixed(r.jb_pvalue) + ',' + format_fixed(r.adj_stat) + ','
            + format_fixed(r.adj_pvalue) + '\n';
    }
    return out;
}

}  // namespace

double default_gamma(Family family) {
    return family == Family::SkewT ? 0.0 : 1.0;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
    // ---- ingest and validate ------------------------------------------
    std::vector<ReturnSeries> panel = ingest_csv(config.input);
    std::sort(panel.begin(), panel.end(),
              [](const ReturnSeries& a, const ReturnSeries& b) { return a.id < b.id; });
    const std::size_t K = panel.size();
    if (K < 2) throw ArgumentError("need at least two series to cluster");
    for (const ReturnSeries& s : panel) validate_series(s, 30);

    DcsSpec spec;
    spec.family = config.family;
    spec.gamma = config.gamma.value_or(default_gamma(config.family));
    validate_spec(spec);

    const int max_c_allowed = static_cast<int>(K) - 1;
    int c_lo = config.c_min, c_hi = config.c_max;
    if (config.fixed_c.has_value()) {
        c_lo = c_hi = *config.fixed_c;
    }
    if (c_lo < 2) throw ArgumentError("cluster count must be at least 2");
    if (c_hi < c_lo) throw ArgumentError("cluster-count range is empty");
    if (c_hi > max_c_allowed) {
        throw ArgumentError("cluster count " + std::to_string(c_hi)
                            + " too large for " + std::to_string(K) + " series");
    }
    if (!(config.fuzzifier > 1.0)) throw ArgumentError("fuzzifier must exceed 1");

    const int jobs = resolve_jobs(config.jobs);
    const InputStamp stamp = stamp_input(config.input);

    PipelineResult result;
    result.out_dir = config.out_dir;
    for (const ReturnSeries& s : panel) result.ids.push_back(s.id);

    // ---- diagnostics ---------------------------------------------------
    for (const ReturnSeries& s : panel) result.diagnostics.push_back(jarque_bera(s));

    // ---- per-series fits (parallel, deterministic order) ---------------
    std::vector<FittedDcs> fits(K);
    std::vector<MomentPaths> moments(K);
    parallel_for(K, jobs, [&](std::size_t k) {
        fits[k] = fit_mle(spec, panel[k]);
        moments[k] = extract_moments(fits[k], panel[k]);
    });
    for (std::size_t k = 0; k < K; ++k) {
        result.fits.push_back(SeriesFitSummary{panel[k].id, panel[k].size(), fits[k].loglik,
                                               fits[k].init_loglik, fits[k].converged,
                                               fits[k].iterations});
    }

    // ---- autocorrelation features --------------------------------------
    int lags_eff = config.lags;
    for (const ReturnSeries& s : panel) {
        lags_eff = std::min(lags_eff, effective_lags(s.size(), config.lags));
    }
    if (lags_eff != config.lags) {
        std::cerr << "warning: lag count clamped to " << lags_eff
                  << " to fit the shortest series\n";
    }
    result.lags_effective = lags_eff;

    const std::vector<std::string> names = moment_names(spec.family);
    const std::size_t R = names.size();

    AfcmOptions fcm_opt;
    fcm_opt.m = config.fuzzifier;
    fcm_opt.tol = config.tol;
    fcm_opt.max_iter = config.max_iter;
    fcm_opt.restarts = config.restarts;

    std::vector<std::vector<int>> labels_per_level;
    for (std::size_t r = 0; r < R; ++r) {
        std::vector<AcfFeature> features;
        for (std::size_t k = 0; k < K; ++k) {
            features.push_back(sample_acf(moments[k].paths[r], lags_eff, panel[k].id, names[r]));
        }

        LevelSummary level;
        level.moment = names[r];
        AfcmOptions opt = fcm_opt;
        opt.seed = derive_seed(config.seed, r);
        if (config.fixed_c.has_value()) {
            level.selected_c = *config.fixed_c;
            level.clustering = afcm_fit(features, *config.fixed_c, opt);
            SilhouetteRow row;
            row.c = *config.fixed_c;
            row.silhouette = level.clustering.silhouette;
            row.ok = true;
            level.silhouettes.push_back(row);
        } else {
            SelectCResult sel = select_c(features, c_lo, c_hi, opt);
            level.selected_c = sel.best_c;
            level.silhouettes = sel.table;
            level.clustering = std::move(sel.best);
        }
        labels_per_level.push_back(level.clustering.labels);
        result.levels.push_back(std::move(level));
    }

    result.consensus = consensus_groups(labels_per_level, result.ids);

    // ---- artifacts ------------------------------------------------------
    ArtifactSet artifacts;
    artifacts.add("diagnostics.csv", diagnostics_csv(result.diagnostics));

    {
        std::string table = "c";
        for (const std::string& n : names) table += ',' + n;
        table += '\n';
        for (int c = c_lo; c <= c_hi; ++c) {
            table += std::to_string(c);
            for (const LevelSummary& level : result.levels) {
                table += ',';
                for (const SilhouetteRow& row : level.silhouettes) {
                    if (row.c == c && row.ok) {
                        table += format_fixed(row.silhouette);
                        break;
                    }
                }
            }
            table += '\n';
        }
        artifacts.add("silhouette.csv", table);
    }

    for (const LevelSummary& level : result.levels) {
        const MembershipMatrix& u = level.clustering.membership;
        std::string header = "id";
        for (int c = 1; c <= u.c; ++c) header += ",cluster_" + std::to_string(c);
        header += ",assigned\n";
        std::string fixed = header, raw = header;
        for (std::size_t k = 0; k < u.u.size(); ++k) {
            fixed += u.ids[k];
            raw += u.ids[k];
            for (double v : u.u[k]) {
                fixed += ',' + format_fixed(v);
                raw += ',' + format_full(v);
            }
            const std::string lab = std::to_string(level.clustering.labels[k] + 1);
            fixed += ',' + lab + '\n';
            raw += ',' + lab + '\n';
        }
        artifacts.add("membership_" + level.moment + ".csv", fixed);
        artifacts.add("membership_" + level.moment + "_raw.csv", raw);
    }

    {
        std::string consensus = "group,id\n";
        for (std::size_t g = 0; g < result.consensus.size(); ++g) {
            for (const std::string& id : result.consensus[g]) {
                consensus += std::to_string(g + 1) + ',' + id + '\n';
            }
        }
        artifacts.add("consensus.csv", consensus);
    }

    for (std::size_t k = 0; k < K; ++k) {
        std::string table = "t";
        for (const std::string& n : names) table += ',' + n;
        table += '\n';
        const std::size_t T = panel[k].size();
        for (std::size_t t = 0; t < T; ++t) {
            table += std::to_string(t + 1);
            for (std::size_t r = 0; r < R; ++r) table += ',' + format_full(moments[k].paths[r][t]);
            table += '\n';
        }
        artifacts.add(std::filesystem::path("moments") / (panel[k].id + ".csv"), table);
    }

    {
        nlohmann::ordered_json manifest;
        manifest["tool"] = kToolName;
        manifest["version"] = kToolVersion;
        manifest["timestamp"] = stamp.mtime_utc;
        manifest["input"] = {{"path", config.input.string()},
                             {"bytes", stamp.bytes},
                             {"fingerprint_fnv1a64", hex64(stamp.fingerprint)}};
        nlohmann::ordered_json cfg;
        cfg["family"] = family_to_string(spec.family);
        cfg["gamma"] = spec.gamma;
        cfg["lags"] = config.lags;
        cfg["lags_effective"] = lags_eff;
        cfg["fuzzifier"] = config.fuzzifier;
        if (config.fixed_c.has_value()) {
            cfg["c"] = *config.fixed_c;
        } else {
            cfg["c_min"] = c_lo;
            cfg["c_max"] = c_hi;
        }
        cfg["tol"] = config.tol;
        cfg["max_iter"] = config.max_iter;
        cfg["restarts"] = config.restarts;
        cfg["seed"] = config.seed;
        cfg["jobs"] = config.jobs;
        manifest["config"] = cfg;

        manifest["series"] = nlohmann::ordered_json::array();
        for (const SeriesFitSummary& f : result.fits) {
            manifest["series"].push_back({{"id", f.id},
                                          {"n", f.n},
                                          {"loglik", f.loglik},
                                          {"init_loglik", f.init_loglik},
                                          {"converged", f.converged},
                                          {"iterations", f.iterations}});
        }
        manifest["levels"] = nlohmann::ordered_json::array();
        for (const LevelSummary& level : result.levels) {
            nlohmann::ordered_json lj;
            lj["moment"] = level.moment;
            lj["selected_c"] = level.selected_c;
            lj["silhouettes"] = nlohmann::ordered_json::array();
            for (const SilhouetteRow& row : level.silhouettes) {
                nlohmann::ordered_json rj;
                rj["c"] = row.c;
                if (row.ok) {
                    rj["silhouette"] = row.silhouette;
                } else {
                    rj["error"] = row.error;
                }
                lj["silhouettes"].push_back(rj);
            }
            manifest["levels"].push_back(lj);
        }
        manifest["consensus_groups"] = result.consensus;
        artifacts.add("manifest.json", manifest.dump(2) + "\n");
    }

    artifacts.write_all(config.out_dir);
    return result;
}

std::vector<ClassificationReport> run_simulation_study(const SimulateConfig& config) {
    if (config.scenario == 0 && (!config.dgp1.has_value() || !config.dgp2.has_value())) {
        throw ArgumentError("simulate needs a scenario number or both custom DGPs");
    }
    if (config.t_grid.empty() || config.l_grid.empty()) {
        throw ArgumentError("simulation grid is empty");
    }
    const int jobs = resolve_jobs(config.jobs);

    std::string fixed = "scenario,method,T,L,M,rate,stderr,redraws\n";
    std::string raw = fixed;
    const std::string scen_name =
        config.scenario == 0 ? "custom" : std::to_string(config.scenario);

    std::vector<ClassificationReport> all;
    for (std::size_t T : config.t_grid) {
        for (int L : config.l_grid) {
            ScenarioSpec spec = make_scenario(config.scenario == 0 ? 2 : config.scenario, T, L,
                                              config.replications,
                                              derive_seed(config.seed, T,
                                                          static_cast<std::uint64_t>(L)));
            if (config.scenario == 0) {
                spec.group1 = *config.dgp1;
                spec.group2 = *config.dgp2;
            }
            std::cerr << "info: running cell T=" << T << " L=" << L << "\n";
            std::vector<ClassificationReport> reports = run_scenario(spec, jobs);
            for (const ClassificationReport& r : reports) {
                const std::string prefix = scen_name + ',' + sim_method_name(r.method) + ','
                    + std::to_string(r.T) + ',' + std::to_string(r.lags) + ','
                    + std::to_string(r.replications) + ',';
                fixed += prefix + format_fixed(r.rate) + ',' + format_fixed(r.stderr_rate) + ','
                    + std::to_string(r.redraws) + '\n';
                raw += prefix + format_full(r.rate) + ',' + format_full(r.stderr_rate) + ','
                    + std::to_string(r.redraws) + '\n';
                all.push_back(r);
            }
        }
    }

    ArtifactSet artifacts;
    artifacts.add("results.csv", fixed);
    artifacts.add("results_raw.csv", raw);
    artifacts.write_all(config.out_dir);
    return all;
}

std::vector<NormalityReport> run_diagnose(const DiagnoseConfig& config) {
    std::vector<ReturnSeries> panel = ingest_csv(config.input);
    std::sort(panel.begin(), panel.end(),
              [](const ReturnSeries& a, const ReturnSeries& b) { return a.id < b.id; });
    std::vector<NormalityReport> reports;
    for (const ReturnSeries& s : panel) reports.push_back(jarque_bera(s));

    const std::string table = diagnostics_csv(reports);
    if (config.out_dir.has_value()) {
        ArtifactSet artifacts;
        artifacts.add("diagnostics.csv", table);
        artifacts.write_all(*config.out_dir);
    } else {
        std::cout << table;
    }
    return reports;
}

}  // namespace dcsclust
