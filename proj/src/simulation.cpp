#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "dcsclust/acf.hpp"
#include "dcsclust/rng.hpp"
#include "dcsclust/simulation.hpp"

namespace dcsclust {

std::string sim_method_name(SimMethod m) {
    switch (m) {
        case SimMethod::AfcmRaw: return "AFCM_raw";
        case SimMethod::DcsAfcmR1: return "DCS_AFCM_r1";
        case SimMethod::DcsAfcmR2: return "DCS_AFCM_r2";
    }
    return "?";
}

ScenarioSpec make_scenario(int number, std::size_t T, int lags, int replications,
                           std::uint64_t seed) {
    ScenarioSpec spec;
    spec.T = T;
    spec.lags = lags;
    spec.replications = replications;
    spec.seed = seed;
    spec.model = DcsSpec{Family::Gaussian, 1.0, 1, 1};
    spec.group1.skew = spec.group2.skew = -0.3;
    spec.group1.df = spec.group2.df = 5.0;
    if (number == 1) {
        // groups differ in the leverage response only
        spec.group1 = {1e-6, 0.6, 0.1, 0.0, -0.3, 5.0};
        spec.group2 = {1e-6, 0.6, 0.1, 1.0, -0.3, 5.0};
    } else if (number == 2) {
        // groups differ in level/persistence of the log-scale
        spec.group1 = {2e-6, 0.4, 0.2, 0.0, -0.3, 5.0};
        spec.group2 = {1e-6, 0.8, 0.05, 0.0, -0.3, 5.0};
    } else {
        throw ArgumentError("scenario number must be 1 or 2");
    }
    return spec;
}

double classification_rate(std::span<const int> predicted, std::span<const int> truth) {
    if (predicted.size() != truth.size()) {
        throw ArgumentError("prediction and truth must have equal length");
    }
    if (predicted.empty()) throw ArgumentError("cannot score an empty labeling");

    int max_label = 0;
    for (int v : predicted) max_label = std::max(max_label, v);
    for (int v : truth) max_label = std::max(max_label, v);
    if (max_label > 7) throw ArgumentError("too many labels for exhaustive relabeling");
    for (int v : predicted) {
        if (v < 0) throw ArgumentError("labels must be non-negative");
    }
    for (int v : truth) {
        if (v < 0) throw ArgumentError("labels must be non-negative");
    }

    std::vector<int> relabel(static_cast<std::size_t>(max_label) + 1);
    std::iota(relabel.begin(), relabel.end(), 0);
    std::size_t best = 0;
    do {
        std::size_t hits = 0;
        for (std::size_t i = 0; i < predicted.size(); ++i) {
            if (relabel[static_cast<std::size_t>(predicted[i])] == truth[i]) ++hits;
        }
        best = std::max(best, hits);
    } while (std::next_permutation(relabel.begin(), relabel.end()));
    return static_cast<double>(best) / static_cast<double>(predicted.size());
}

namespace {

struct RepOutcome {
    std::array<double, 3> rate{};
    int redraws = 0;
};

RepOutcome run_replication(const ScenarioSpec& spec, int rep, int lags_eff) {
    const int K = 2 * spec.per_group;
    std::vector<int> truth(static_cast<std::size_t>(K), 0);
    for (int k = spec.per_group; k < K; ++k) truth[static_cast<std::size_t>(k)] = 1;

    RepOutcome out;
    constexpr int kMaxAttempts = 10;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const std::uint64_t rep_seed = (attempt == 0)
            ? spec.seed ^ static_cast<std::uint64_t>(rep)
            : derive_seed(spec.seed, static_cast<std::uint64_t>(rep), 0xFEEDull,
                          static_cast<std::uint64_t>(attempt));
        try {
            std::vector<std::vector<AcfFeature>> feats(3);
            for (int k = 0; k < K; ++k) {
                const EgarchDgpParams& dgp = (k < spec.per_group) ? spec.group1 : spec.group2;
                const std::uint64_t sk = spec.mirror_group_seeds
                    ? derive_seed(rep_seed, static_cast<std::uint64_t>(k % spec.per_group))
                    : derive_seed(rep_seed, static_cast<std::uint64_t>(k));
                const std::string id = "s" + std::to_string(k);
                const ReturnSeries series = simulate_egarch(dgp, spec.T, sk, id);

                feats[0].push_back(sample_acf(series.values, lags_eff, id, "raw"));
                const FittedDcs fit = fit_mle(spec.model, series);
                const MomentPaths paths = extract_moments(fit, series);
                feats[1].push_back(sample_acf(paths.paths[0], lags_eff, id, paths.names[0]));
                feats[2].push_back(sample_acf(paths.paths[1], lags_eff, id, paths.names[1]));
            }
            for (int m = 0; m < 3; ++m) {
                AfcmOptions fcm = spec.fcm;
                fcm.seed = derive_seed(rep_seed, 100 + static_cast<std::uint64_t>(m));
                const ClusterResult res = afcm_fit(feats[static_cast<std::size_t>(m)], 2, fcm);
                out.rate[static_cast<std::size_t>(m)] = classification_rate(res.labels, truth);
            }
            return out;
        } catch (const Error&) {
            ++out.redraws;  // redraw the whole replication with a fresh seed
        }
    }
    throw HarnessError("replication " + std::to_string(rep)
                       + " kept failing after repeated redraws");
}

}  // namespace

std::vector<ClassificationReport> run_scenario(const ScenarioSpec& spec, int jobs) {
    validate_egarch_params(spec.group1);
    validate_egarch_params(spec.group2);
    validate_spec(spec.model);
    if (spec.per_group < 1) throw ArgumentError("need at least one series per group");
    if (spec.replications < 1) throw ArgumentError("need at least one replication");
    if (spec.T < 30) throw ArgumentError("series length too short for fitting");

    const int lags_eff = effective_lags(spec.T, spec.lags);
    const int M = spec.replications;

    std::vector<RepOutcome> outcomes(static_cast<std::size_t>(M));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(M));
    std::atomic<int> next{0};
    const int workers = std::max(1, std::min(jobs, M));
    auto worker = [&] {
        for (;;) {
            const int rep = next.fetch_add(1);
            if (rep >= M) return;
            try {
                outcomes[static_cast<std::size_t>(rep)] = run_replication(spec, rep, lags_eff);
            } catch (...) {
                errors[static_cast<std::size_t>(rep)] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    int total_redraws = 0;
    for (const RepOutcome& o : outcomes) total_redraws += o.redraws;
    if (total_redraws > M / 10) {
        throw HarnessError("redraw budget exceeded: " + std::to_string(total_redraws)
                           + " redraws over " + std::to_string(M) + " replications");
    }

    std::vector<ClassificationReport> reports;
    const SimMethod methods[3] = {SimMethod::AfcmRaw, SimMethod::DcsAfcmR1,
                                  SimMethod::DcsAfcmR2};
    for (int m = 0; m < 3; ++m) {
        ClassificationReport rep;
        rep.method = methods[m];
        rep.T = spec.T;
        rep.lags = lags_eff;
        rep.replications = M;
        rep.redraws = total_redraws;
        rep.per_replication.reserve(static_cast<std::size_t>(M));
        for (const RepOutcome& o : outcomes) {
            rep.per_replication.push_back(o.rate[static_cast<std::size_t>(m)]);
        }
        const double mean = std::accumulate(rep.per_replication.begin(),
                                            rep.per_replication.end(), 0.0)
            / static_cast<double>(M);
        double var = 0.0;
        for (double r : rep.per_replication) var += (r - mean) * (r - mean);
        var = (M > 1) ? var / static_cast<double>(M - 1) : 0.0;
        rep.rate = mean;
        rep.stderr_rate = std::sqrt(var / static_cast<double>(M));
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace dcsclust
