#include "graphrec/enrich.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "graphrec/errors.hpp"

namespace graphrec {

double edf(double age, double half_life) {
    return std::exp(-age * std::numbers::ln2 / half_life);
}

double ldf(double age, double steepness, double midpoint) {
    // 1 - 1/(q+1) == q/(q+1) with q = exp(-steepness*(age-midpoint)); the
    // rewritten form survives q underflowing to 0 for very old edges. For
    // young edges q can overflow, where the sigmoid is 1 to double precision.
    double z = -steepness * (age - midpoint);
    if (z > 700.0)
        return 1.0;
    double q = std::exp(z);
    double f = q / (q + 1.0);
    return f > 0.0 ? f : std::numeric_limits<double>::min();
}

double decay_factor(double age, const DecaySpec& spec) {
    switch (spec.kind) {
    case DecayKind::None:
        return 1.0;
    case DecayKind::EDF:
        return edf(age, spec.half_life);
    case DecayKind::LDF:
        return ldf(age, spec.steepness, spec.half_life);
    }
    return 1.0;
}

namespace {

void require_features(const RecGraph& g, const ContentCatalog& catalog) {
    for (const NodeRef& n : g.nodes) {
        if (n.kind != NodeKind::Item && n.kind != NodeKind::TemporalItem)
            continue;
        if (n.entity >= static_cast<int>(catalog.item_features.size()) ||
            catalog.features_of(n.entity).empty())
            throw ConsistencyError("item #" + std::to_string(n.entity) +
                                   " appears in the stream but has no content features");
    }
}

bool is_item_kind(NodeKind k) {
    return k == NodeKind::Item || k == NodeKind::TemporalItem;
}

} // namespace

RecGraph attach_content(const RecGraph& graph, const ContentCatalog& catalog, ContentMode mode) {
    if (mode == ContentMode::None)
        return graph;
    require_features(graph, catalog);

    GraphBuilder b(graph);
    const bool temporal = graph.kind == GraphKind::LSG;
    const NodeKind content_kind = temporal ? NodeKind::TemporalContent : NodeKind::Content;

    // Item-to-content arcs carry the latest event seen on any arc of the item
    // node they hang off.
    std::vector<Timestamp> item_last(graph.nodes.size(), std::numeric_limits<Timestamp>::min());
    for (std::size_t m = 0; m < graph.edge_count(); ++m) {
        const Arc& a = graph.arcs[2 * m];
        for (int end : {a.src, a.dst})
            if (is_item_kind(graph.nodes[static_cast<std::size_t>(end)].kind))
                item_last[static_cast<std::size_t>(end)] =
                    std::max(item_last[static_cast<std::size_t>(end)], a.event_time);
    }
    for (int idx = 0; idx < static_cast<int>(graph.nodes.size()); ++idx) {
        const NodeRef& n = graph.nodes[static_cast<std::size_t>(idx)];
        if (!is_item_kind(n.kind))
            continue;
        Timestamp when = temporal ? n.time : item_last[static_cast<std::size_t>(idx)];
        for (int c : catalog.features_of(n.entity))
            b.edge(idx, b.node(content_kind, c, temporal ? n.time : 0), when);
    }

    if (mode == ContentMode::CIU) {
        // Mirror each interaction arc on the user side: user-content for BIP,
        // session-content for STG, (t,u)-(t,c) for LSG.
        const NodeKind user_side = graph.kind == GraphKind::BIP  ? NodeKind::User
                                   : graph.kind == GraphKind::STG ? NodeKind::Session
                                                                  : NodeKind::TemporalUser;
        for (std::size_t m = 0; m < graph.edge_count(); ++m) {
            const Arc& a = graph.arcs[2 * m];
            const NodeRef& src = graph.nodes[static_cast<std::size_t>(a.src)];
            const NodeRef& dst = graph.nodes[static_cast<std::size_t>(a.dst)];
            int carrier, item;
            if (src.kind == user_side && is_item_kind(dst.kind)) {
                carrier = a.src;
                item = a.dst;
            } else if (dst.kind == user_side && is_item_kind(src.kind)) {
                carrier = a.dst;
                item = a.src;
            } else {
                continue;
            }
            const NodeRef& it = graph.nodes[static_cast<std::size_t>(item)];
            for (int c : catalog.features_of(it.entity))
                b.edge(carrier, b.node(content_kind, c, temporal ? it.time : 0), a.event_time);
        }
    }
    return b.finish();
}

std::vector<double> effective_weights(const RecGraph& graph, Timestamp now, const DecaySpec& decay) {
    std::vector<double> w(graph.arcs.size());
    for (std::size_t idx = 0; idx < graph.arcs.size(); ++idx) {
        const Arc& a = graph.arcs[idx];
        if (a.event_time > now)
            throw TemporalCausalityError("arc event at t=" + std::to_string(a.event_time) +
                                         " lies after the evaluation time t=" + std::to_string(now));
        w[idx] = a.base_weight * decay_factor(static_cast<double>(now - a.event_time), decay);
    }
    return w;
}

} // namespace graphrec
