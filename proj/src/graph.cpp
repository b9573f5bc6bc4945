#include "graphrec/graph.hpp"

#include <algorithm>
#include <ostream>

#include "graphrec/errors.hpp"

namespace graphrec {

namespace {

std::uint64_t edge_key(int a, int b) {
    auto lo = static_cast<std::uint32_t>(std::min(a, b));
    auto hi = static_cast<std::uint32_t>(std::max(a, b));
    return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

} // namespace

int RecGraph::find_node(NodeKind kind, int entity, Timestamp time) const {
    auto it = node_index.find(NodeRef{kind, entity, time});
    return it == node_index.end() ? -1 : it->second;
}

bool RecGraph::has_node(NodeKind kind, int entity, Timestamp time) const {
    return find_node(kind, entity, time) >= 0;
}

GraphBuilder::GraphBuilder(GraphKind kind) : kind_(kind) {}

GraphBuilder::GraphBuilder(const RecGraph& base) : kind_(base.kind) {
    nodes_ = base.nodes;
    node_index_ = base.node_index;
    edges_.reserve(base.edge_count());
    for (std::size_t m = 0; m < base.edge_count(); ++m) {
        const Arc& fwd = base.arcs[2 * m];
        edges_.push_back({fwd.src, fwd.dst, fwd.base_weight, fwd.event_time});
        edge_index_.emplace(edge_key(fwd.src, fwd.dst), static_cast<int>(m));
    }
}

int GraphBuilder::node(NodeKind kind, int entity, Timestamp time) {
    NodeRef ref{kind, entity, time};
    auto it = node_index_.find(ref);
    if (it != node_index_.end())
        return it->second;
    int idx = static_cast<int>(nodes_.size());
    nodes_.push_back(ref);
    node_index_.emplace(ref, idx);
    return idx;
}

void GraphBuilder::edge(int a, int b, Timestamp event_time, double weight) {
    auto [it, inserted] = edge_index_.emplace(edge_key(a, b), static_cast<int>(edges_.size()));
    if (inserted) {
        edges_.push_back({a, b, weight, event_time});
    } else {
        Edge& e = edges_[static_cast<std::size_t>(it->second)];
        e.event_time = std::max(e.event_time, event_time);
    }
}

RecGraph GraphBuilder::finish() {
    RecGraph g;
    g.kind = kind_;
    g.nodes = std::move(nodes_);
    g.node_index = std::move(node_index_);
    g.arcs.reserve(edges_.size() * 2);
    for (const Edge& e : edges_) {
        g.arcs.push_back({e.a, e.b, e.weight, e.event_time});
        g.arcs.push_back({e.b, e.a, e.weight, e.event_time});
    }

    for (int idx = 0; idx < static_cast<int>(g.nodes.size()); ++idx) {
        const NodeRef& n = g.nodes[static_cast<std::size_t>(idx)];
        switch (n.kind) {
        case NodeKind::User:
            g.user_node.emplace(n.entity, idx);
            break;
        case NodeKind::Session:
        case NodeKind::TemporalUser: {
            auto [it, inserted] = g.latest_user_node.emplace(n.entity, idx);
            if (!inserted && g.nodes[static_cast<std::size_t>(it->second)].time < n.time)
                it->second = idx;
            break;
        }
        case NodeKind::Item:
        case NodeKind::TemporalItem:
            g.item_nodes[n.entity].push_back(idx);
            break;
        default:
            break;
        }
    }
    return g;
}

RecGraph build_bip(const LinkStream& stream) {
    if (stream.empty())
        throw EmptyStreamError("cannot build a graph from an empty stream");
    GraphBuilder b(GraphKind::BIP);
    for (const Link& l : stream.links) {
        int u = b.node(NodeKind::User, l.user);
        int i = b.node(NodeKind::Item, l.item);
        b.edge(u, i, l.t);
    }
    return b.finish();
}

RecGraph build_stg(const LinkStream& stream, Timestamp session_duration) {
    if (stream.empty())
        throw EmptyStreamError("cannot build a graph from an empty stream");
    if (session_duration <= 0)
        throw ValidationError("session_duration", "must be positive");
    GraphBuilder b(GraphKind::STG);
    for (const Link& l : stream.links) {
        int u = b.node(NodeKind::User, l.user);
        int i = b.node(NodeKind::Item, l.item);
        b.edge(u, i, l.t);
        Timestamp slice = (l.t - stream.t_min) / session_duration;
        int s = b.node(NodeKind::Session, l.user, slice);
        b.edge(s, i, l.t);
    }
    return b.finish();
}

RecGraph build_lsg(const LinkStream& stream) {
    if (stream.empty())
        throw EmptyStreamError("cannot build a graph from an empty stream");
    GraphBuilder b(GraphKind::LSG);

    std::vector<std::vector<Timestamp>> user_times(static_cast<std::size_t>(stream.users.size()));
    std::vector<std::vector<Timestamp>> item_times(static_cast<std::size_t>(stream.items.size()));
    for (const Link& l : stream.links) {
        int tu = b.node(NodeKind::TemporalUser, l.user, l.t);
        int ti = b.node(NodeKind::TemporalItem, l.item, l.t);
        b.edge(tu, ti, l.t);
        auto& ut = user_times[static_cast<std::size_t>(l.user)];
        if (ut.empty() || ut.back() != l.t)
            ut.push_back(l.t);
        auto& it = item_times[static_cast<std::size_t>(l.item)];
        if (it.empty() || it.back() != l.t)
            it.push_back(l.t);
    }

    // Chain edges between consecutive appearances; the edge exists once the
    // later event has happened.
    for (int u = 0; u < static_cast<int>(user_times.size()); ++u) {
        const auto& ts = user_times[static_cast<std::size_t>(u)];
        for (std::size_t j = 1; j < ts.size(); ++j)
            b.edge(b.node(NodeKind::TemporalUser, u, ts[j - 1]),
                   b.node(NodeKind::TemporalUser, u, ts[j]), ts[j]);
    }
    for (int i = 0; i < static_cast<int>(item_times.size()); ++i) {
        const auto& ts = item_times[static_cast<std::size_t>(i)];
        for (std::size_t j = 1; j < ts.size(); ++j)
            b.edge(b.node(NodeKind::TemporalItem, i, ts[j - 1]),
                   b.node(NodeKind::TemporalItem, i, ts[j]), ts[j]);
    }
    return b.finish();
}

RecGraph build_graph(const LinkStream& stream, GraphKind kind, Timestamp session_duration) {
    switch (kind) {
    case GraphKind::BIP:
        return build_bip(stream);
    case GraphKind::STG:
        return build_stg(stream, session_duration);
    case GraphKind::LSG:
        return build_lsg(stream);
    }
    throw ValidationError("graph", "unknown graph kind");
}

std::string node_label(const RecGraph& g, int node, const LinkStream& stream,
                       const ContentCatalog* catalog) {
    const NodeRef& n = g.nodes.at(static_cast<std::size_t>(node));
    auto feature_name = [&](int c) -> std::string {
        if (catalog)
            return catalog->features.name(c);
        return "#" + std::to_string(c);
    };
    switch (n.kind) {
    case NodeKind::User:
        return "user:" + stream.users.name(n.entity);
    case NodeKind::Item:
        return "item:" + stream.items.name(n.entity);
    case NodeKind::Session:
        return "session:" + stream.users.name(n.entity) + "#" + std::to_string(n.time);
    case NodeKind::TemporalUser:
        return "tuser:" + stream.users.name(n.entity) + "@" + std::to_string(n.time);
    case NodeKind::TemporalItem:
        return "titem:" + stream.items.name(n.entity) + "@" + std::to_string(n.time);
    case NodeKind::Content:
        return "content:" + feature_name(n.entity);
    case NodeKind::TemporalContent:
        return "tcontent:" + feature_name(n.entity) + "@" + std::to_string(n.time);
    }
    return "?";
}

void dump_edges(const RecGraph& g, const LinkStream& stream, const ContentCatalog* catalog,
                std::ostream& out) {
    for (const Arc& a : g.arcs)
        out << node_label(g, a.src, stream, catalog) << ' ' << node_label(g, a.dst, stream, catalog)
            << ' ' << a.base_weight << ' ' << a.event_time << '\n';
}

} // namespace graphrec
