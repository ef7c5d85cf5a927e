#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "synsets/graph.hpp"

namespace synsets {

/// Word <-> dense id mapping. Ids are assigned in first-appearance order and
/// surfaces are preserved exactly as interned (no normalization).
class Vocabulary {
public:
    Vertex intern(std::string_view word) {
        auto it = index_.find(word);
        if (it != index_.end()) return it->second;
        Vertex id = static_cast<Vertex>(words_.size());
        words_.emplace_back(word);
        index_.emplace(words_.back(), id);
        return id;
    }

    std::optional<Vertex> find(std::string_view word) const {
        auto it = index_.find(word);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& word(Vertex id) const { return words_[id]; }
    std::size_t size() const { return words_.size(); }

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
    };
    struct Eq {
        using is_transparent = void;
        bool operator()(std::string_view a, std::string_view b) const { return a == b; }
    };

    std::vector<std::string> words_;
    std::unordered_map<std::string, Vertex, Hash, Eq> index_;
};

}  // namespace synsets
