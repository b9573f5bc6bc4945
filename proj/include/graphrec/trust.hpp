#pragma once

#include <utility>
#include <vector>

#include "graphrec/stream.hpp"

namespace graphrec {

enum class TrustKind { None, ET, IT };

/// Normalized per-user trust distribution. `dist[u]` lists (trustee, weight)
/// sorted by trustee index; weights are normalized over the full trusted set,
/// whose size (including users outside the stream vocabulary) is `set_size[u]`.
struct TrustModel {
    TrustKind kind = TrustKind::None;
    std::vector<std::vector<std::pair<int, double>>> dist;
    std::vector<int> set_size;

    bool has(int user) const {
        return user >= 0 && user < static_cast<int>(dist.size()) && !dist[user].empty();
    }
    const std::vector<std::pair<int, double>>& trusted(int user) const { return dist[user]; }
    int trusted_count(int user) const { return set_size[user]; }

    static TrustModel disabled() { return {}; }
};

/// Uniform weights 1/|TR_u| over each user's explicit trustee set. Trustees
/// missing from the vocabulary still count toward |TR_u| but cannot be listed.
TrustModel explicit_trust(const ExplicitTrustNetwork& network, const Interner& users);

/// Jaccard similarity of item histories within `stream`, normalized per user.
/// Only pairs with at least `min_overlap` common items enter the trusted set.
TrustModel implicit_trust(const LinkStream& stream, int min_overlap = 1);

} // namespace graphrec
