#pragma once

#include <string>
#include <string_view>

#include "synsets/chinese_whispers.hpp"
#include "synsets/error.hpp"
#include "synsets/markov_clustering.hpp"
#include "synsets/maxmax.hpp"

namespace synsets {

enum class Algorithm { cw, mcl, maxmax };

inline Algorithm parse_algorithm(std::string_view name) {
    if (name == "cw") return Algorithm::cw;
    if (name == "mcl") return Algorithm::mcl;
    if (name == "maxmax") return Algorithm::maxmax;
    throw usage_error("unknown clustering algorithm: " + std::string(name));
}

inline const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::cw: return "cw";
        case Algorithm::mcl: return "mcl";
        case Algorithm::maxmax: return "maxmax";
    }
    return "?";
}

struct ClusterOptions {
    std::uint64_t seed = 0;
    int cw_max_iterations = 20;
    MclOptions mcl;
};

/// Uniform selector used by the Watset stages. MaxMax output is hardened to a
/// partition (first containing cluster wins) so every selector yields a total
/// assignment.
inline Partition cluster(const Graph& g, Algorithm algorithm, const ClusterOptions& opts = {}) {
    switch (algorithm) {
        case Algorithm::cw:
            return chinese_whispers(g, {opts.seed, opts.cw_max_iterations}).partition;
        case Algorithm::mcl:
            return markov_clustering(g, opts.mcl).partition;
        case Algorithm::maxmax:
            return to_partition(maxmax(g), g.vertex_count());
    }
    throw usage_error("unreachable algorithm selector");
}

}  // namespace synsets
