#pragma once

#include <Eigen/SparseCore>

#include <optional>
#include <unordered_set>
#include <vector>

#include "graphrec/enrich.hpp"
#include "graphrec/graph.hpp"
#include "graphrec/trust.hpp"

namespace graphrec {

/// Every knob of one ranking configuration. Durations are in timestamp units.
struct PPRSettings {
    GraphKind graph = GraphKind::BIP;
    ContentMode content = ContentMode::None;
    DecaySpec decay = DecaySpec::none();
    TrustKind trust = TrustKind::None;

    Timestamp session_duration = 0;  // STG slice length
    double long_term_weight = 0.5;   // STG restart share on the user node
    double trust_weight = 0.0;       // share of restart mass granted to trusted users
    double damping = 0.85;           // probability of following an edge
    double tol = 1e-10;
    int max_iter = 100;
    int list_len = 10;               // recommendations per user
    int min_overlap = 1;             // implicit-trust pruning

    /// Throws ValidationError naming the offending field.
    void validate() const;
};

/// Column-stochastic transition matrix; matrix(dst, src) is the probability of
/// stepping src -> dst. Columns of isolated nodes are zero and listed in
/// `dangling`.
struct Transition {
    Eigen::SparseMatrix<double> matrix;
    std::vector<std::int32_t> dangling;
};

Transition transition_matrix(const RecGraph& graph, const std::vector<double>& weights);

/// Restart distribution for `user` on `graph`. Mixes the user's restart nodes
/// with trusted users' per the trust model, skips nodes absent from the graph,
/// and renormalizes to sum 1. Returns nullopt for cold users (no node and no
/// trusted node present), in which case callers fall back to popularity_rank.
std::optional<Eigen::VectorXd> personalization_vector(const RecGraph& graph,
                                                      const PPRSettings& settings, int user,
                                                      const TrustModel& trust);

struct PowerIterationResult {
    Eigen::VectorXd scores; // sums to 1
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Fixed point of scores = damping * M * scores + (damping * dangling_mass +
/// 1 - damping) * restart, iterated until the L1 step is <= tol. Mass sitting
/// on dangling nodes is redirected to the restart distribution each step.
PowerIterationResult power_iteration(const Transition& transition, const Eigen::VectorXd& restart,
                                     double damping, double tol, int max_iter);

struct ScoredItem {
    int item = 0;
    double score = 0.0;

    bool operator==(const ScoredItem&) const = default;
};

/// Top-n unseen items by node score (summed over temporal copies for LSG),
/// ties broken by ascending item id string.
std::vector<ScoredItem> top_items(const Eigen::VectorXd& scores, const RecGraph& graph,
                                  const std::unordered_set<int>& seen, int n,
                                  const Interner& items);

/// Most-popular-item baseline: items ranked by how many distinct users picked
/// them in `train`, same exclusion and tie rules as top_items.
std::vector<ScoredItem> popularity_rank(const LinkStream& train,
                                        const std::unordered_set<int>& seen, int n);

} // namespace graphrec
