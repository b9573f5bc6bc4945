#include "graphrec/ppr.hpp"

#include <algorithm>
#include <utility>

#include "graphrec/errors.hpp"

namespace graphrec {

void PPRSettings::validate() const {
    if (!(damping > 0.0 && damping < 1.0))
        throw ValidationError("damping", "must lie strictly between 0 and 1");
    if (!(long_term_weight >= 0.0 && long_term_weight <= 1.0))
        throw ValidationError("long_term_weight", "must lie in [0, 1]");
    if (!(trust_weight >= 0.0 && trust_weight <= 1.0))
        throw ValidationError("trust_weight", "must lie in [0, 1]");
    if (graph == GraphKind::STG && session_duration <= 0)
        throw ValidationError("session_duration", "must be positive for session graphs");
    if (decay.kind == DecayKind::EDF && !(decay.half_life > 0.0))
        throw ValidationError("half_life", "must be positive");
    if (decay.kind == DecayKind::LDF) {
        if (!(decay.steepness > 0.0))
            throw ValidationError("steepness", "must be positive");
        if (!(decay.half_life > 0.0))
            throw ValidationError("half_life", "must be positive");
    }
    if (!(tol > 0.0))
        throw ValidationError("tol", "must be positive");
    if (max_iter < 1)
        throw ValidationError("max_iter", "must be at least 1");
    if (list_len < 1)
        throw ValidationError("list_len", "must be at least 1");
    if (min_overlap < 1)
        throw ValidationError("min_overlap", "must be at least 1");
}

Transition transition_matrix(const RecGraph& graph, const std::vector<double>& weights) {
    auto n = static_cast<Eigen::Index>(graph.nodes.size());
    std::vector<double> out_sum(graph.nodes.size(), 0.0);
    for (std::size_t idx = 0; idx < graph.arcs.size(); ++idx)
        out_sum[static_cast<std::size_t>(graph.arcs[idx].src)] += weights[idx];

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(graph.arcs.size());
    for (std::size_t idx = 0; idx < graph.arcs.size(); ++idx) {
        const Arc& a = graph.arcs[idx];
        double w = weights[idx];
        if (w > 0.0)
            triplets.emplace_back(a.dst, a.src, w / out_sum[static_cast<std::size_t>(a.src)]);
    }

    Transition t;
    t.matrix.resize(n, n);
    t.matrix.setFromTriplets(triplets.begin(), triplets.end());
    for (std::size_t v = 0; v < out_sum.size(); ++v)
        if (out_sum[v] <= 0.0)
            t.dangling.push_back(static_cast<std::int32_t>(v));
    return t;
}

namespace {

/// Where restart mass lands for one user, before trust mixing: (node, share)
/// pairs with shares summing to 1 when every node exists.
void own_restart(const RecGraph& graph, const PPRSettings& settings, int user, double scale,
                 std::vector<std::pair<int, double>>& out) {
    if (scale <= 0.0)
        return;
    switch (graph.kind) {
    case GraphKind::BIP: {
        auto it = graph.user_node.find(user);
        if (it != graph.user_node.end())
            out.emplace_back(it->second, scale);
        break;
    }
    case GraphKind::STG: {
        double beta = settings.long_term_weight;
        if (beta > 0.0) {
            auto it = graph.user_node.find(user);
            if (it != graph.user_node.end())
                out.emplace_back(it->second, scale * beta);
        }
        if (beta < 1.0) {
            auto it = graph.latest_user_node.find(user);
            if (it != graph.latest_user_node.end())
                out.emplace_back(it->second, scale * (1.0 - beta));
        }
        break;
    }
    case GraphKind::LSG: {
        auto it = graph.latest_user_node.find(user);
        if (it != graph.latest_user_node.end())
            out.emplace_back(it->second, scale);
        break;
    }
    }
}

/// The node representing user v as a trust target: the plain user node where
/// one exists, otherwise v's latest temporal node.
int trust_target(const RecGraph& graph, int v) {
    if (graph.kind == GraphKind::LSG) {
        auto it = graph.latest_user_node.find(v);
        return it == graph.latest_user_node.end() ? -1 : it->second;
    }
    auto it = graph.user_node.find(v);
    return it == graph.user_node.end() ? -1 : it->second;
}

} // namespace

std::optional<Eigen::VectorXd> personalization_vector(const RecGraph& graph,
                                                      const PPRSettings& settings, int user,
                                                      const TrustModel& trust) {
    double gamma = 0.0;
    if (settings.trust != TrustKind::None && settings.trust_weight > 0.0 && trust.has(user))
        gamma = settings.trust_weight;

    std::vector<std::pair<int, double>> entries;
    own_restart(graph, settings, user, 1.0 - gamma, entries);
    if (gamma > 0.0)
        for (const auto& [v, w] : trust.trusted(user)) {
            int node = trust_target(graph, v);
            if (node >= 0 && w > 0.0)
                entries.emplace_back(node, gamma * w);
        }

    double total = 0.0;
    for (const auto& [node, w] : entries)
        total += w;
    if (total <= 0.0 && gamma > 0.0) {
        // All trusted users fell outside the graph (or gamma == 1 ate the own
        // share): restart from the user alone.
        entries.clear();
        own_restart(graph, settings, user, 1.0, entries);
        for (const auto& [node, w] : entries)
            total += w;
    }
    if (total <= 0.0)
        return std::nullopt;

    Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graph.nodes.size()));
    for (const auto& [node, w] : entries)
        d[node] += w / total;
    return d;
}

PowerIterationResult power_iteration(const Transition& transition, const Eigen::VectorXd& restart,
                                     double damping, double tol, int max_iter) {
    PowerIterationResult r;
    Eigen::VectorXd pr = restart;
    Eigen::VectorXd next(pr.size());
    for (int iter = 1; iter <= max_iter; ++iter) {
        double dangling_mass = 0.0;
        for (std::int32_t v : transition.dangling)
            dangling_mass += pr[v];
        next.noalias() = damping * (transition.matrix * pr);
        next += (damping * dangling_mass + 1.0 - damping) * restart;
        r.residual = (next - pr).lpNorm<1>();
        pr.swap(next);
        r.iterations = iter;
        if (r.residual <= tol) {
            r.converged = true;
            break;
        }
    }
    pr /= pr.sum();
    r.scores = std::move(pr);
    return r;
}

std::vector<ScoredItem> top_items(const Eigen::VectorXd& scores, const RecGraph& graph,
                                  const std::unordered_set<int>& seen, int n,
                                  const Interner& items) {
    std::vector<ScoredItem> ranked;
    ranked.reserve(graph.item_nodes.size());
    for (const auto& [item, nodes] : graph.item_nodes) {
        if (seen.contains(item))
            continue;
        double s = 0.0;
        for (int node : nodes)
            s += scores[node];
        ranked.push_back({item, s});
    }
    std::sort(ranked.begin(), ranked.end(), [&](const ScoredItem& a, const ScoredItem& b) {
        if (a.score != b.score)
            return a.score > b.score;
        return items.name(a.item) < items.name(b.item);
    });
    if (static_cast<int>(ranked.size()) > n)
        ranked.resize(static_cast<std::size_t>(n));
    return ranked;
}

std::vector<ScoredItem> popularity_rank(const LinkStream& train,
                                        const std::unordered_set<int>& seen, int n) {
    std::vector<std::pair<int, int>> pairs; // (item, user), deduplicated
    pairs.reserve(train.links.size());
    for (const Link& l : train.links)
        pairs.emplace_back(l.item, l.user);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    std::vector<ScoredItem> ranked;
    for (std::size_t i = 0; i < pairs.size();) {
        int item = pairs[i].first;
        std::size_t j = i;
        while (j < pairs.size() && pairs[j].first == item)
            ++j;
        if (!seen.contains(item))
            ranked.push_back({item, static_cast<double>(j - i)});
        i = j;
    }
    std::sort(ranked.begin(), ranked.end(), [&](const ScoredItem& a, const ScoredItem& b) {
        if (a.score != b.score)
            return a.score > b.score;
        return train.items.name(a.item) < train.items.name(b.item);
    });
    if (static_cast<int>(ranked.size()) > n)
        ranked.resize(static_cast<std::size_t>(n));
    return ranked;
}

} // namespace graphrec
