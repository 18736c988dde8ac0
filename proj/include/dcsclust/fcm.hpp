#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcsclust/acf.hpp"

namespace dcsclust {

/// Row-stochastic membership degrees of K points over C clusters.
struct MembershipMatrix {
    std::vector<std::string> ids;         // K point identifiers
    int c = 0;                            // number of clusters
    double m = 2.0;                       // fuzzifier the matrix was built with
    std::vector<std::vector<double>> u;   // K rows, each summing to 1
};

/// Cluster centers in feature space (C rows of the feature length).
struct CentroidSet {
    std::vector<std::vector<double>> centers;
};

struct ClusterResult {
    MembershipMatrix membership;
    CentroidSet centroids;
    std::vector<int> labels;              // argmax membership per point
    std::vector<double> objective_trace;  // objective after each iteration
    double objective = 0.0;
    double silhouette = 0.0;              // weighted fuzzy silhouette
    int iterations = 0;
    int restarts_failed = 0;
};

/// Sum over points and clusters of u^m times the squared feature distance.
double afcm_objective(const std::vector<AcfFeature>& features, const MembershipMatrix& u,
                      const CentroidSet& centroids);

/// Optimal memberships for fixed centroids. Points coinciding with one or
/// more centroids get their mass split equally over those centroids.
MembershipMatrix update_membership(const std::vector<AcfFeature>& features,
                                   const CentroidSet& centroids, double m);

/// Optimal centroids for fixed memberships: u^m-weighted feature means.
/// Throws EmptyClusterError when a cluster carries no mass.
CentroidSet update_centroids(const std::vector<AcfFeature>& features,
                             const MembershipMatrix& u);

struct AfcmOptions {
    double m = 2.0;
    double tol = 1e-6;     // max absolute membership change
    int max_iter = 100;
    int restarts = 10;
    std::uint64_t seed = 0;
};

/// Alternating optimization from several random initial memberships; the
/// best completed restart wins. Initial rows are seeded per point id so a
/// permutation of the input permutes the result identically.
ClusterResult afcm_fit(const std::vector<AcfFeature>& features, int c,
                       const AfcmOptions& opt = {});

/// Membership-weighted silhouette: weights are (u_(1) - u_(2))^alpha, point
/// scores use crisp labels and squared feature distances. Points in
/// singleton clusters score 0; returns 0 when all weights vanish.
double fuzzy_silhouette(const std::vector<AcfFeature>& features, const ClusterResult& result,
                        double alpha = 1.0);

struct SilhouetteRow {
    int c = 0;
    double silhouette = 0.0;
    bool ok = false;
    std::string error;
};

struct SelectCResult {
    int best_c = 0;
    std::vector<SilhouetteRow> table;
    ClusterResult best;
};

/// Fits every cluster count in [c_min, c_max], recording the silhouette of
/// each; failing counts are skipped. The best count maximizes the
/// silhouette, ties resolved toward fewer clusters.
SelectCResult select_c(const std::vector<AcfFeature>& features, int c_min, int c_max,
                       const AfcmOptions& opt = {});

/// Groups of ids whose labels agree at every level. labels_per_level holds
/// one label vector per level, all over the same ids in the same order.
std::vector<std::vector<std::string>> consensus_groups(
    const std::vector<std::vector<int>>& labels_per_level, const std::vector<std::string>& ids);

}  // namespace dcsclust
