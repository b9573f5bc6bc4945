#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "graphrec/ppr.hpp"
#include "graphrec/stream.hpp"

namespace fixtures {

using graphrec::ContentCatalog;
using graphrec::ExplicitTrustNetwork;
using graphrec::Link;
using graphrec::LinkStream;
using graphrec::Timestamp;

/// Stream from raw (t, user, item) triples: sorted, deduplicated, interned in
/// sorted order, exactly like the output of the positive filter.
inline LinkStream make_stream(std::vector<std::tuple<Timestamp, std::string, std::string>> raw) {
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    LinkStream s;
    for (const auto& [t, user, item] : raw)
        s.links.push_back({t, s.users.intern(user), s.items.intern(item)});
    s.t_min = s.links.front().t;
    s.t_max = s.links.back().t;
    return s;
}

inline ContentCatalog make_catalog(const LinkStream& stream,
                                   const std::vector<std::pair<std::string, std::vector<std::string>>>& map) {
    ContentCatalog c;
    c.item_features.resize(static_cast<std::size_t>(stream.items.size()));
    for (const auto& [item, features] : map) {
        auto idx = stream.items.find(item);
        if (!idx)
            continue;
        for (const std::string& f : features)
            c.item_features[static_cast<std::size_t>(*idx)].push_back(c.features.intern(f));
        auto& fs = c.item_features[static_cast<std::size_t>(*idx)];
        std::sort(fs.begin(), fs.end());
    }
    return c;
}

/// The worked example used throughout: two users, four items, six instants.
inline LinkStream guiding_stream() {
    return make_stream({
        {1, "u1", "i1"},
        {1, "u2", "i3"},
        {2, "u1", "i2"},
        {2, "u2", "i3"},
        {3, "u2", "i4"},
        {4, "u1", "i3"},
        {5, "u2", "i4"},
        {6, "u1", "i2"},
    });
}

inline ContentCatalog guiding_catalog(const LinkStream& stream) {
    return make_catalog(stream, {{"i1", {"c1"}}, {"i2", {"c1"}}, {"i3", {"c2"}}, {"i4", {"c2"}}});
}

inline ExplicitTrustNetwork guiding_trust() {
    ExplicitTrustNetwork net;
    net.edges = {{"u1", "u2"}, {"u2", "u1"}};
    return net;
}

struct Corpus {
    LinkStream stream;
    ContentCatalog catalog;
    ExplicitTrustNetwork trust;
};

/// Random but reproducible corpus where every item gets 1-2 features and most
/// users trust somebody.
inline Corpus synthetic_corpus(std::uint64_t seed, int n_users, int n_items, int n_features,
                               int n_links, Timestamp t_span) {
    std::mt19937_64 rng(seed);
    std::vector<std::tuple<Timestamp, std::string, std::string>> raw;
    raw.reserve(static_cast<std::size_t>(n_links));
    for (int l = 0; l < n_links; ++l) {
        auto t = static_cast<Timestamp>(rng() % static_cast<std::uint64_t>(t_span));
        auto u = static_cast<int>(rng() % static_cast<std::uint64_t>(n_users));
        auto i = static_cast<int>(rng() % static_cast<std::uint64_t>(n_items));
        raw.emplace_back(t, "u" + std::to_string(u), "i" + std::to_string(i));
    }
    Corpus c;
    c.stream = make_stream(std::move(raw));

    c.catalog.item_features.resize(static_cast<std::size_t>(c.stream.items.size()));
    for (int f = 0; f < n_features; ++f)
        c.catalog.features.intern("c" + std::to_string(f));
    for (int i = 0; i < c.stream.items.size(); ++i) {
        auto& fs = c.catalog.item_features[static_cast<std::size_t>(i)];
        fs.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(n_features)));
        if (rng() % 2 == 0) {
            int extra = static_cast<int>(rng() % static_cast<std::uint64_t>(n_features));
            if (extra != fs.front())
                fs.push_back(extra);
        }
        std::sort(fs.begin(), fs.end());
    }

    std::vector<std::pair<std::string, std::string>> edges;
    for (int e = 0; e < 2 * n_users; ++e) {
        auto a = static_cast<int>(rng() % static_cast<std::uint64_t>(n_users));
        auto b = static_cast<int>(rng() % static_cast<std::uint64_t>(n_users));
        if (a != b)
            edges.emplace_back("u" + std::to_string(a), "u" + std::to_string(b));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    c.trust.edges = std::move(edges);
    return c;
}

/// Direct linear solve of the stationary equation, with dangling columns
/// completed by the restart distribution. Independent of power_iteration.
inline Eigen::VectorXd dense_pagerank(const graphrec::Transition& t, const Eigen::VectorXd& d,
                                      double alpha) {
    Eigen::MatrixXd M(t.matrix);
    for (std::int32_t col : t.dangling)
        M.col(col) = d;
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(M.rows(), M.cols()) - alpha * M;
    return A.partialPivLu().solve((1.0 - alpha) * d);
}

} // namespace fixtures
