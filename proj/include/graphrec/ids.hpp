#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace graphrec {

/// Maps opaque string identifiers to dense indices in first-seen order.
class Interner {
public:
    /// Returns the index of `id`, inserting it if unseen.
    int intern(std::string_view id) {
        auto it = index_.find(id);
        if (it != index_.end())
            return it->second;
        int idx = static_cast<int>(names_.size());
        names_.emplace_back(id);
        index_.emplace(names_.back(), idx);
        return idx;
    }

    std::optional<int> find(std::string_view id) const {
        auto it = index_.find(id);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    const std::string& name(int idx) const { return names_.at(static_cast<std::size_t>(idx)); }

    int size() const { return static_cast<int>(names_.size()); }

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
    };
    struct Eq {
        using is_transparent = void;
        bool operator()(std::string_view a, std::string_view b) const noexcept { return a == b; }
    };

    std::vector<std::string> names_;
    std::unordered_map<std::string, int, Hash, Eq> index_;
};

} // namespace graphrec
