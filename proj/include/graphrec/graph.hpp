#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphrec/stream.hpp"

namespace graphrec {

enum class GraphKind { BIP, STG, LSG };

enum class NodeKind : std::uint8_t {
    User,
    Item,
    Session,         // (user, time-slice index)
    TemporalUser,    // (t, user)
    TemporalItem,    // (t, item)
    Content,         // feature
    TemporalContent, // (t, feature)
};

/// Node identity. `entity` is the interned user/item/feature index; `time`
/// holds the timestamp for temporal kinds and the slice index for sessions.
struct NodeRef {
    NodeKind kind = NodeKind::User;
    std::int32_t entity = 0;
    Timestamp time = 0;

    bool operator==(const NodeRef&) const = default;
};

struct NodeRefHash {
    std::size_t operator()(const NodeRef& n) const noexcept {
        std::size_t h = static_cast<std::size_t>(n.kind);
        h = h * 0x9e3779b97f4a7c15ULL + static_cast<std::size_t>(static_cast<std::uint32_t>(n.entity));
        h = h * 0x9e3779b97f4a7c15ULL + static_cast<std::size_t>(static_cast<std::uint64_t>(n.time));
        return h;
    }
};

/// Directed arc; every edge is materialized as two arcs with equal weight.
/// `event_time` is the most recent stream occurrence that justified the edge.
struct Arc {
    std::int32_t src = 0;
    std::int32_t dst = 0;
    double base_weight = 1.0;
    Timestamp event_time = 0;
};

/// Immutable typed-node weighted graph shared by the whole ranking pipeline.
struct RecGraph {
    GraphKind kind = GraphKind::BIP;
    std::vector<NodeRef> nodes;
    std::vector<Arc> arcs; // arcs 2m and 2m+1 are the two directions of edge m

    std::unordered_map<NodeRef, int, NodeRefHash> node_index;
    std::unordered_map<int, int> user_node;              // user -> User node (BIP/STG)
    std::unordered_map<int, int> latest_user_node;       // user -> latest Session (STG) or TemporalUser (LSG)
    std::unordered_map<int, std::vector<int>> item_nodes; // item -> Item / TemporalItem nodes

    std::size_t edge_count() const { return arcs.size() / 2; }
    int find_node(NodeKind kind, int entity, Timestamp time = 0) const;
    bool has_node(NodeKind kind, int entity, Timestamp time = 0) const;
};

/// Incremental construction helper keeping node indexing and edge pairing
/// deterministic. Adding an existing edge again only raises its event time.
class GraphBuilder {
public:
    explicit GraphBuilder(GraphKind kind);
    explicit GraphBuilder(const RecGraph& base); // seed with an existing graph

    int node(NodeKind kind, int entity, Timestamp time = 0);
    void edge(int a, int b, Timestamp event_time, double weight = 1.0);
    RecGraph finish();

private:
    struct Edge {
        int a, b;
        double weight;
        Timestamp event_time;
    };

    GraphKind kind_;
    std::vector<NodeRef> nodes_;
    std::vector<Edge> edges_;
    std::unordered_map<NodeRef, int, NodeRefHash> node_index_;
    std::unordered_map<std::uint64_t, int> edge_index_;
};

/// User and item nodes, one edge per distinct (user, item) pair ever linked.
RecGraph build_bip(const LinkStream& stream);

/// BIP plus session nodes: one per (user, slice) with activity, slices of
/// duration `session_duration` anchored at the stream's t_min.
RecGraph build_stg(const LinkStream& stream, Timestamp session_duration);

/// One node per (t, user) and (t, item); cross edges for interactions and
/// chain edges between consecutive temporal nodes of the same entity.
RecGraph build_lsg(const LinkStream& stream);

RecGraph build_graph(const LinkStream& stream, GraphKind kind, Timestamp session_duration = 0);

/// Human-readable node label, e.g. `user:u1`, `session:u1#0`, `titem:i2@5`.
std::string node_label(const RecGraph& g, int node, const LinkStream& stream,
                       const ContentCatalog* catalog = nullptr);

/// Writes `src dst weight event_time` per arc, labels as in node_label.
void dump_edges(const RecGraph& g, const LinkStream& stream, const ContentCatalog* catalog,
                std::ostream& out);

} // namespace graphrec
