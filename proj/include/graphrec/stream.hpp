#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "graphrec/ids.hpp"

namespace graphrec {

/// Seconds since epoch. All durations below share this unit.
using Timestamp = std::int64_t;

/// One input record: user u rated item i (carrying content feature c) at time t.
struct ReviewTuple {
    std::string user;
    std::string item;
    std::string feature;
    double rating = 0.0; // in [0, 5]
    Timestamp time = 0;
};

struct Link {
    Timestamp t = 0;
    int user = 0;
    int item = 0;

    bool operator==(const Link&) const = default;
};

/// Timestamped positive user-item interactions over an observation interval.
///
/// Links are sorted ascending by (time, user id, item id) where ids compare as
/// strings; the order is total and duplicate (t, user, item) triples are removed.
/// The interners may cover a superset of the active users/items (sub-streams
/// share the vocabulary of the stream they were cut from).
struct LinkStream {
    Timestamp t_min = 0;
    Timestamp t_max = 0;
    Interner users;
    Interner items;
    std::vector<Link> links;

    bool empty() const { return links.empty(); }
};

/// Which content features each item carries: g(i) as sorted feature indices.
struct ContentCatalog {
    Interner features;
    std::vector<std::vector<int>> item_features; // indexed like LinkStream::items

    const std::vector<int>& features_of(int item) const;
};

/// Raw directed trust edges keyed by string ids (self-loops already removed).
struct ExplicitTrustNetwork {
    std::vector<std::pair<std::string, std::string>> edges; // (truster, trustee), deduplicated
    std::size_t edge_count() const { return edges.size(); }
};

/// Half-open interval [begin, end) of integer timestamps.
struct TimeWindow {
    Timestamp begin = 0;
    Timestamp end = 0;

    bool contains(Timestamp t) const { return begin <= t && t < end; }
    bool operator==(const TimeWindow&) const = default;
};

/// Distinct-count summary of a raw tuple file, before any filtering.
struct IngestStats {
    std::size_t tuples = 0;
    std::size_t users = 0;
    std::size_t items = 0;
    std::size_t features = 0;
};

struct FilterOutput {
    LinkStream stream;
    ContentCatalog catalog;
};

/// Parses `user item feature rating timestamp` records, one per line.
/// `delimiter` of '\0' splits on runs of whitespace; otherwise on that single
/// character. Throws ParseError / ValidationError with the offending line.
std::vector<ReviewTuple> parse_reviews(std::istream& in, char delimiter = '\0');

/// Reads a review file from disk; `.gz` paths are inflated transparently.
std::vector<ReviewTuple> load_reviews(const std::string& path, char delimiter = '\0');

/// Parses `truster trustee` pairs. Self-loops are dropped, duplicates merged.
ExplicitTrustNetwork parse_trust(std::istream& in, char delimiter = '\0');
ExplicitTrustNetwork load_trust(const std::string& path, char delimiter = '\0');

IngestStats ingest_stats(const std::vector<ReviewTuple>& tuples);

/// Keeps tuples with rating >= 2.5 and >= the author's mean rating, where the
/// mean is taken over all of that user's tuples before any removal. Survivors
/// become the link stream (duplicate triples collapsed) and the content
/// catalog. Throws EmptyStreamError when nothing survives.
FilterOutput filter_positive(const std::vector<ReviewTuple>& tuples);

/// Splits [t_min, t_max] into k+1 windows of equal real duration
/// (t_max - t_min + 1)/(k+1). Integer boundaries are snapped upward so that
/// each integer timestamp lands in the real window containing it; the union
/// covers every link and windows are pairwise disjoint.
std::vector<TimeWindow> slice_time(const LinkStream& stream, int k);

/// True when the stream has fewer distinct timestamps than k+1 windows.
bool degenerate_slicing(const LinkStream& stream, int k);

/// Sub-stream of links with t < end_exclusive, sharing the parent vocabulary.
/// t_min/t_max are tightened to the surviving links.
LinkStream prefix_until(const LinkStream& stream, Timestamp end_exclusive);

/// Sub-stream of links falling inside `window` (same vocabulary sharing).
LinkStream slice_of(const LinkStream& stream, const TimeWindow& window);

} // namespace graphrec
