#include "graphrec/trust.hpp"

#include <algorithm>
#include <unordered_map>

namespace graphrec {

TrustModel explicit_trust(const ExplicitTrustNetwork& network, const Interner& users) {
    TrustModel model;
    model.kind = TrustKind::ET;
    model.dist.resize(static_cast<std::size_t>(users.size()));
    model.set_size.resize(static_cast<std::size_t>(users.size()), 0);

    for (const auto& [truster, trustee] : network.edges) {
        auto u = users.find(truster);
        if (!u)
            continue; // no restart node to spread trust from
        // Trustees outside the vocabulary still enlarge the trusted set; their
        // share of the mass is unreachable and rebalanced at restart time.
        model.set_size[static_cast<std::size_t>(*u)]++;
        if (auto v = users.find(trustee))
            model.dist[static_cast<std::size_t>(*u)].emplace_back(*v, 0.0);
    }
    for (std::size_t u = 0; u < model.dist.size(); ++u) {
        auto& d = model.dist[u];
        if (d.empty())
            continue;
        std::sort(d.begin(), d.end());
        double w = 1.0 / static_cast<double>(model.set_size[u]);
        for (auto& [v, weight] : d)
            weight = w;
    }
    return model;
}

TrustModel implicit_trust(const LinkStream& stream, int min_overlap) {
    TrustModel model;
    model.kind = TrustKind::IT;
    auto n = static_cast<std::size_t>(stream.users.size());
    model.dist.resize(n);
    model.set_size.resize(n, 0);

    std::vector<std::vector<int>> user_items(n);
    std::vector<std::vector<int>> item_users(static_cast<std::size_t>(stream.items.size()));
    for (const Link& l : stream.links)
        user_items[static_cast<std::size_t>(l.user)].push_back(l.item);
    for (auto& items : user_items) {
        std::sort(items.begin(), items.end());
        items.erase(std::unique(items.begin(), items.end()), items.end());
    }
    for (std::size_t u = 0; u < n; ++u)
        for (int i : user_items[u])
            item_users[static_cast<std::size_t>(i)].push_back(static_cast<int>(u));

    std::unordered_map<int, int> common;
    for (std::size_t u = 0; u < n; ++u) {
        if (user_items[u].empty())
            continue;
        common.clear();
        for (int i : user_items[u])
            for (int v : item_users[static_cast<std::size_t>(i)])
                if (v != static_cast<int>(u))
                    common[v]++;

        auto& d = model.dist[u];
        double total = 0.0;
        for (const auto& [v, co] : common) {
            if (co < min_overlap)
                continue;
            auto unions = user_items[u].size() + user_items[static_cast<std::size_t>(v)].size() -
                          static_cast<std::size_t>(co);
            double jaccard = static_cast<double>(co) / static_cast<double>(unions);
            d.emplace_back(v, jaccard);
            total += jaccard;
        }
        std::sort(d.begin(), d.end());
        for (auto& [v, w] : d)
            w /= total;
        model.set_size[u] = static_cast<int>(d.size());
    }
    return model;
}

} // namespace graphrec
