#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "dcsclust/fcm.hpp"
#include "dcsclust/rng.hpp"

namespace dcsclust {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void validate_features(const std::vector<AcfFeature>& features) {
    if (features.empty()) throw ArgumentError("no features to cluster");
    const std::size_t len = features.front().values.size();
    if (len == 0) throw ArgumentError("features must be non-empty vectors");
    for (const AcfFeature& f : features) {
        if (f.values.size() != len) {
            throw ArgumentError("features must all have the same length");
        }
        for (double v : f.values) {
            if (!std::isfinite(v)) throw ArgumentError("features must be finite");
        }
    }
}

}  // namespace

double afcm_objective(const std::vector<AcfFeature>& features, const MembershipMatrix& u,
                      const CentroidSet& centroids) {
    double obj = 0.0;
    for (std::size_t k = 0; k < features.size(); ++k) {
        for (std::size_t c = 0; c < centroids.centers.size(); ++c) {
            obj += std::pow(u.u[k][c], u.m) * sq_dist(features[k].values, centroids.centers[c]);
        }
    }
    return obj;
}

MembershipMatrix update_membership(const std::vector<AcfFeature>& features,
                                   const CentroidSet& centroids, double m) {
    if (!(m > 1.0)) throw ArgumentError("fuzzifier must exceed 1");
    const std::size_t K = features.size();
    const std::size_t C = centroids.centers.size();

    MembershipMatrix out;
    out.c = static_cast<int>(C);
    out.m = m;
    out.u.assign(K, std::vector<double>(C, 0.0));
    const double e = 1.0 / (m - 1.0);

    std::vector<double> d(C);
    for (std::size_t k = 0; k < K; ++k) {
        out.ids.push_back(features[k].series_id);
        std::size_t zeros = 0;
        for (std::size_t c = 0; c < C; ++c) {
            d[c] = sq_dist(features[k].values, centroids.centers[c]);
            if (d[c] == 0.0) ++zeros;
        }
        if (zeros > 0) {
            // the point coincides with one or more centroids: crisp split
            for (std::size_t c = 0; c < C; ++c) {
                out.u[k][c] = (d[c] == 0.0) ? 1.0 / static_cast<double>(zeros) : 0.0;
            }
            continue;
        }
        for (std::size_t c = 0; c < C; ++c) {
            double s = 0.0;
            for (std::size_t c2 = 0; c2 < C; ++c2) s += std::pow(d[c] / d[c2], e);
            out.u[k][c] = 1.0 / s;
        }
    }
    return out;
}

CentroidSet update_centroids(const std::vector<AcfFeature>& features,
                             const MembershipMatrix& u) {
    const std::size_t K = features.size();
    const std::size_t C = static_cast<std::size_t>(u.c);
    const std::size_t L = features.front().values.size();

    CentroidSet out;
    out.centers.assign(C, std::vector<double>(L, 0.0));
    for (std::size_t c = 0; c < C; ++c) {
        double mass = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            const double w = std::pow(u.u[k][c], u.m);
            mass += w;
            for (std::size_t l = 0; l < L; ++l) out.centers[c][l] += w * features[k].values[l];
        }
        if (!(mass > 0.0)) {
            throw EmptyClusterError("cluster " + std::to_string(c + 1) + " lost all mass");
        }
        for (std::size_t l = 0; l < L; ++l) out.centers[c][l] /= mass;
    }
    return out;
}

namespace {

MembershipMatrix random_membership(const std::vector<AcfFeature>& features, int c,
                                   double m, std::uint64_t seed, int restart) {
    MembershipMatrix u;
    u.c = c;
    u.m = m;
    for (const AcfFeature& f : features) {
        u.ids.push_back(f.series_id);
        // per-point stream: a permutation of the points permutes the init rows
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(restart),
                            detail::fnv1a64(f.series_id)));
        std::vector<double> row(static_cast<std::size_t>(c));
        double total = 0.0;
        for (double& x : row) {
            x = -std::log(rng.uniform());  // exponential => uniform on the simplex
            total += x;
        }
        for (double& x : row) x /= total;
        u.u.push_back(std::move(row));
    }
    return u;
}

std::vector<int> crisp_labels(const MembershipMatrix& u) {
    std::vector<int> labels(u.u.size(), 0);
    for (std::size_t k = 0; k < u.u.size(); ++k) {
        int best = 0;
        for (int c = 1; c < u.c; ++c) {
            if (u.u[k][static_cast<std::size_t>(c)]
                > u.u[k][static_cast<std::size_t>(best)]) {
                best = c;
            }
        }
        labels[k] = best;
    }
    return labels;
}

}  // namespace

ClusterResult afcm_fit(const std::vector<AcfFeature>& features, int c, const AfcmOptions& opt) {
    validate_features(features);
    const int K = static_cast<int>(features.size());
    if (c < 2 || c > K) throw ArgumentError("cluster count must lie in [2, K]");
    if (!(opt.m > 1.0)) throw ArgumentError("fuzzifier must exceed 1");
    if (!(opt.tol > 0.0)) throw ArgumentError("tolerance must be positive");
    if (opt.max_iter < 1 || opt.restarts < 1) {
        throw ArgumentError("iteration and restart counts must be positive");
    }

    ClusterResult best;
    best.objective = std::numeric_limits<double>::infinity();
    bool have_best = false;
    int failed = 0;

    for (int r = 0; r < opt.restarts; ++r) {
        try {
            MembershipMatrix u = random_membership(features, c, opt.m, opt.seed, r);
            CentroidSet centroids;
            std::vector<double> trace;
            int iters = 0;
            for (int it = 0; it < opt.max_iter; ++it) {
                centroids = update_centroids(features, u);
                MembershipMatrix u_new = update_membership(features, centroids, opt.m);
                trace.push_back(afcm_objective(features, u_new, centroids));
                double delta = 0.0;
                for (std::size_t k = 0; k < u.u.size(); ++k) {
                    for (std::size_t cc = 0; cc < u.u[k].size(); ++cc) {
                        delta = std::max(delta, std::fabs(u_new.u[k][cc] - u.u[k][cc]));
                    }
                }
                u = std::move(u_new);
                iters = it + 1;
                if (delta < opt.tol) break;
            }
            const double obj = trace.back();
            if (!have_best || obj < best.objective) {
                best.membership = u;
                best.centroids = centroids;
                best.objective_trace = trace;
                best.objective = obj;
                best.iterations = iters;
                have_best = true;
            }
        } catch (const EmptyClusterError&) {
            ++failed;  // abandon this restart, try the next one
        }
    }
    if (!have_best) {
        throw ClusteringError("all restarts ended with an empty cluster");
    }
    best.restarts_failed = failed;
    best.labels = crisp_labels(best.membership);
    best.silhouette = fuzzy_silhouette(features, best, 1.0);
    return best;
}

double fuzzy_silhouette(const std::vector<AcfFeature>& features, const ClusterResult& result,
                        double alpha) {
    const std::size_t K = features.size();
    const int C = result.membership.c;
    if (C < 2) throw ArgumentError("silhouette needs at least two clusters");
    if (result.labels.size() != K || result.membership.u.size() != K) {
        throw ArgumentError("clustering result does not match the feature set");
    }

    const DistanceMatrix dm = distance_matrix(features);
    std::vector<int> count(static_cast<std::size_t>(C), 0);
    for (int lab : result.labels) ++count[static_cast<std::size_t>(lab)];

    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        const int own = result.labels[k];

        // silhouette of the point under its crisp assignment
        double s = 0.0;
        if (count[static_cast<std::size_t>(own)] > 1) {
            double a = 0.0;
            for (std::size_t j = 0; j < K; ++j) {
                if (j != k && result.labels[j] == own) {
                    a += dm.at(static_cast<int>(k), static_cast<int>(j));
                }
            }
            a /= static_cast<double>(count[static_cast<std::size_t>(own)] - 1);

            double b = std::numeric_limits<double>::infinity();
            for (int c = 0; c < C; ++c) {
                if (c == own || count[static_cast<std::size_t>(c)] == 0) continue;
                double avg = 0.0;
                for (std::size_t j = 0; j < K; ++j) {
                    if (result.labels[j] == c) {
                        avg += dm.at(static_cast<int>(k), static_cast<int>(j));
                    }
                }
                avg /= static_cast<double>(count[static_cast<std::size_t>(c)]);
                b = std::min(b, avg);
            }
            if (std::isfinite(b) && std::max(a, b) > 0.0) {
                s = (b - a) / std::max(a, b);
            }
        }

        // weight: separation between the two largest membership degrees
        double u1 = -1.0, u2 = -1.0;
        for (double uv : result.membership.u[k]) {
            if (uv > u1) {
                u2 = u1;
                u1 = uv;
            } else if (uv > u2) {
                u2 = uv;
            }
        }
        const double w = std::pow(std::max(0.0, u1 - u2), alpha);
        num += w * s;
        den += w;
    }
    if (!(den > 0.0)) return 0.0;
    return num / den;
}

SelectCResult select_c(const std::vector<AcfFeature>& features, int c_min, int c_max,
                       const AfcmOptions& opt) {
    validate_features(features);
    const int K = static_cast<int>(features.size());
    if (c_min < 2) throw ArgumentError("smallest cluster count must be at least 2");
    if (c_max < c_min) throw ArgumentError("cluster-count range is empty");
    if (c_max > K - 1) throw ArgumentError("largest cluster count must not exceed K-1");

    SelectCResult out;
    bool have = false;
    for (int c = c_min; c <= c_max; ++c) {
        SilhouetteRow row;
        row.c = c;
        AfcmOptions copt = opt;
        copt.seed = derive_seed(opt.seed, 1000 + static_cast<std::uint64_t>(c));
        try {
            ClusterResult res = afcm_fit(features, c, copt);
            row.silhouette = res.silhouette;
            row.ok = true;
            if (!have || res.silhouette > out.best.silhouette) {
                out.best = std::move(res);
                out.best_c = c;
                have = true;
            }
        } catch (const Error& err) {
            row.error = err.what();  // skip this count, keep the sweep going
        }
        out.table.push_back(row);
    }
    if (!have) {
        throw ClusteringError("no cluster count in the range produced a valid solution");
    }
    return out;
}

std::vector<std::vector<std::string>> consensus_groups(
    const std::vector<std::vector<int>>& labels_per_level, const std::vector<std::string>& ids) {
    if (labels_per_level.empty()) throw ArgumentError("need at least one level of labels");
    for (const auto& level : labels_per_level) {
        if (level.size() != ids.size()) {
            throw ArgumentError("every level must label every id exactly once");
        }
    }

    std::map<std::vector<int>, std::size_t> group_of;
    std::vector<std::vector<std::string>> groups;
    for (std::size_t k = 0; k < ids.size(); ++k) {
        std::vector<int> key;
        key.reserve(labels_per_level.size());
        for (const auto& level : labels_per_level) key.push_back(level[k]);
        auto it = group_of.find(key);
        if (it == group_of.end()) {
            group_of.emplace(std::move(key), groups.size());
            groups.push_back({ids[k]});
        } else {
            groups[it->second].push_back(ids[k]);
        }
    }
    return groups;
}

}  // namespace dcsclust
