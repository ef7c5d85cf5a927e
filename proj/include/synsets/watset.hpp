#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "synsets/clustering.hpp"
#include "synsets/parallel.hpp"
#include "synsets/prng.hpp"
#include "synsets/synonymy.hpp"

namespace synsets {

/// One induced sense of a word.
struct Sense {
    Vertex word = 0;
    std::uint32_t index = 0;

    bool operator==(const Sense&) const = default;
};

using ContextItem = std::pair<Vertex, double>;  // (word id, weight), sorted by word id

/// All senses of all words, with their context bags. Global sense ids are
/// contiguous and grouped by word in word-id order, so a graph whose words are
/// all unambiguous yields sense ids identical to word ids.
class SenseInventory {
public:
    SenseInventory() = default;

    explicit SenseInventory(std::vector<std::vector<std::vector<ContextItem>>> per_word) {
        offsets_.assign(per_word.size() + 1, 0);
        for (std::size_t w = 0; w < per_word.size(); ++w)
            offsets_[w + 1] = offsets_[w] + static_cast<std::uint32_t>(per_word[w].size());
        contexts_.reserve(offsets_.back());
        sense_word_.reserve(offsets_.back());
        for (std::size_t w = 0; w < per_word.size(); ++w) {
            for (auto& ctx : per_word[w]) {
                contexts_.push_back(std::move(ctx));
                sense_word_.push_back(static_cast<Vertex>(w));
            }
        }
    }

    std::size_t word_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::uint32_t sense_count() const { return offsets_.empty() ? 0 : offsets_.back(); }
    std::uint32_t senses_of(Vertex word) const { return offsets_[word + 1] - offsets_[word]; }
    std::uint32_t global_id(Vertex word, std::uint32_t index) const { return offsets_[word] + index; }
    Sense sense(std::uint32_t global) const {
        return Sense{sense_word_[global], global - offsets_[sense_word_[global]]};
    }
    const std::vector<ContextItem>& context(std::uint32_t global) const { return contexts_[global]; }

private:
    std::vector<std::uint32_t> offsets_;
    std::vector<Vertex> sense_word_;
    std::vector<std::vector<ContextItem>> contexts_;
};

struct WatsetOptions {
    Algorithm local = Algorithm::cw;
    Algorithm global = Algorithm::cw;
    std::uint64_t seed = 0;
    int jobs = 1;
    int cw_max_iterations = 20;
    MclOptions mcl;
};

inline std::uint64_t watset_local_seed(std::uint64_t seed, Vertex word) {
    return derive_seed(derive_seed(seed, "watset.local"), static_cast<std::uint64_t>(word));
}

inline std::uint64_t watset_global_seed(std::uint64_t seed) {
    return derive_seed(seed, "watset.global");
}

/// Splits one word into senses: the order-1 ego network of the word with the
/// ego removed is clustered, and each cluster becomes a sense whose context
/// maps member -> weight of its edge to the word. A word with no neighbors
/// yields exactly one sense with an empty context.
inline std::vector<std::vector<ContextItem>> induce_senses(const Graph& g, Vertex word,
                                                           Algorithm local,
                                                           const ClusterOptions& opts) {
    if (word >= g.vertex_count()) throw data_error("unknown vertex id " + std::to_string(word));
    auto nbrs = g.neighbors(word);
    auto ws = g.weights(word);
    if (nbrs.empty()) return {{}};

    Graph ego = induced_subgraph(g, nbrs);
    Partition parts = cluster(ego, local, opts);
    std::vector<std::vector<ContextItem>> senses(parts.cluster_count);
    for (std::size_t local_id = 0; local_id < nbrs.size(); ++local_id) {
        senses[parts.assignment[local_id]].emplace_back(nbrs[local_id], ws[local_id]);
    }
    return senses;  // members ascend within each sense because local ids do
}

inline std::vector<std::vector<ContextItem>> induce_senses(const SynonymyGraph& g,
                                                           std::string_view word, Algorithm local,
                                                           const ClusterOptions& opts) {
    return induce_senses(g.graph, g.require(word), local, opts);
}

inline SenseInventory induce_all_senses(const Graph& g, const WatsetOptions& opts) {
    std::vector<std::vector<std::vector<ContextItem>>> per_word(g.vertex_count());
    parallel_for(g.vertex_count(), opts.jobs, [&](std::size_t w) {
        ClusterOptions copts;
        copts.seed = watset_local_seed(opts.seed, static_cast<Vertex>(w));
        copts.cw_max_iterations = opts.cw_max_iterations;
        copts.mcl = opts.mcl;
        copts.mcl.jobs = 1;  // parallelism lives at the per-word level here
        per_word[w] = induce_senses(g, static_cast<Vertex>(w), opts.local, copts);
    });
    return SenseInventory(std::move(per_word));
}

/// Sense graph: vertices are global sense ids, edges connect senses of
/// different words, weights are the original synonymy weights.
struct SenseGraph {
    SenseInventory inventory;
    Graph graph;
};

namespace detail {

struct SenseBags {
    // context plus the headword itself (weight 1), sorted by word id
    std::vector<std::vector<ContextItem>> bags;
    std::vector<double> norms;
};

inline SenseBags make_bags(const SenseInventory& inv) {
    SenseBags out;
    out.bags.resize(inv.sense_count());
    out.norms.resize(inv.sense_count());
    for (std::uint32_t s = 0; s < inv.sense_count(); ++s) {
        const auto& ctx = inv.context(s);
        Vertex head = inv.sense(s).word;
        auto& bag = out.bags[s];
        bag.reserve(ctx.size() + 1);
        bool placed = false;
        for (const auto& item : ctx) {
            if (!placed && head < item.first) {
                bag.emplace_back(head, 1.0);
                placed = true;
            }
            bag.push_back(item);
        }
        if (!placed) bag.emplace_back(head, 1.0);
        double sq = 0.0;
        for (const auto& item : bag) sq += item.second * item.second;
        out.norms[s] = std::sqrt(sq);
    }
    return out;
}

inline double bag_dot(const std::vector<ContextItem>& a, const std::vector<ContextItem>& b) {
    double dot = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) ++i;
        else if (a[i].first > b[j].first) ++j;
        else {
            dot += a[i].second * b[j].second;
            ++i;
            ++j;
        }
    }
    return dot;
}

}  // namespace detail

/// Disambiguates the graph: every (sense, context word) pair contributes one
/// edge to the candidate sense of the context word whose extended context is
/// most similar (cosine over the weighted bags, headword included). Ties go to
/// the smallest sense index; zero-overlap ties to the candidate with the
/// largest context, then smallest index.
inline SenseGraph build_sense_graph(const Graph& g, SenseInventory inventory, int jobs = 1) {
    if (inventory.word_count() != g.vertex_count())
        throw data_error("inconsistent inventory: covers " + std::to_string(inventory.word_count()) +
                         " words, graph has " + std::to_string(g.vertex_count()));
    detail::SenseBags bags = detail::make_bags(inventory);

    struct ProposedEdge {
        std::uint32_t a, b;
        double weight;
    };
    std::vector<std::vector<ProposedEdge>> proposals(inventory.sense_count());
    parallel_for(inventory.sense_count(), jobs, [&](std::size_t s) {
        const auto& ctx = inventory.context(static_cast<std::uint32_t>(s));
        auto& mine = proposals[s];
        mine.reserve(ctx.size());
        for (const auto& [u, weight] : ctx) {
            std::uint32_t n_senses = inventory.senses_of(u);
            if (n_senses == 0)
                throw data_error("inconsistent inventory: no senses for context word id " +
                                 std::to_string(u));
            std::uint32_t first = inventory.global_id(u, 0);
            std::uint32_t best_sense = first;
            double best_score = -1.0;
            std::size_t best_ctx_size = 0;
            for (std::uint32_t j = 0; j < n_senses; ++j) {
                std::uint32_t cand = first + j;
                double score = detail::bag_dot(bags.bags[s], bags.bags[cand]) /
                               (bags.norms[s] * bags.norms[cand]);
                std::size_t cand_ctx = inventory.context(cand).size();
                bool better;
                if (score > best_score) {
                    better = true;
                } else if (score == best_score && score == 0.0) {
                    better = cand_ctx > best_ctx_size;  // zero overlap: largest context first
                } else {
                    better = false;  // equal nonzero scores: keep smallest index
                }
                if (better) {
                    best_score = score;
                    best_sense = cand;
                    best_ctx_size = cand_ctx;
                }
            }
            mine.push_back({static_cast<std::uint32_t>(s), best_sense, weight});
        }
    });

    GraphBuilder builder(inventory.sense_count());
    for (const auto& list : proposals) {
        for (const auto& e : list) builder.add_edge(e.a, e.b, e.weight);
    }
    SenseGraph out;
    out.inventory = std::move(inventory);
    out.graph = std::move(builder).build();
    return out;
}

/// A synset: a set of senses under one id, projectable to words.
struct Synset {
    std::uint32_t id = 0;
    std::vector<Sense> senses;  // sorted by (word surface, index)
};

namespace detail {

inline void sort_senses(std::vector<Sense>& senses, const Vocabulary& vocab) {
    std::sort(senses.begin(), senses.end(), [&](const Sense& a, const Sense& b) {
        const std::string& wa = vocab.word(a.word);
        const std::string& wb = vocab.word(b.word);
        if (wa != wb) return wa < wb;
        return a.index < b.index;
    });
}

inline void sort_and_number_synsets(std::vector<Synset>& synsets, const Vocabulary& vocab) {
    for (auto& s : synsets) sort_senses(s.senses, vocab);
    std::sort(synsets.begin(), synsets.end(), [&](const Synset& a, const Synset& b) {
        if (a.senses.size() != b.senses.size()) return a.senses.size() > b.senses.size();
        const std::string& wa = vocab.word(a.senses.front().word);
        const std::string& wb = vocab.word(b.senses.front().word);
        if (wa != wb) return wa < wb;
        // full member sequence as the final tiebreak
        for (std::size_t i = 0; i < a.senses.size(); ++i) {
            const std::string& ma = vocab.word(a.senses[i].word);
            const std::string& mb = vocab.word(b.senses[i].word);
            if (ma != mb) return ma < mb;
            if (a.senses[i].index != b.senses[i].index) return a.senses[i].index < b.senses[i].index;
        }
        return false;
    });
    for (std::uint32_t i = 0; i < synsets.size(); ++i) synsets[i].id = i;
}

}  // namespace detail

/// The full Watset pipeline: local clustering of ego networks induces senses,
/// the sense graph is assembled, and the global clustering of senses yields
/// synsets. Ids are assigned in descending size order, ties by smallest
/// member word.
inline std::vector<Synset> induce_synsets(const SynonymyGraph& g, const WatsetOptions& opts) {
    SenseInventory inventory = induce_all_senses(g.graph, opts);
    SenseGraph sg = build_sense_graph(g.graph, std::move(inventory), opts.jobs);

    ClusterOptions copts;
    copts.seed = watset_global_seed(opts.seed);
    copts.cw_max_iterations = opts.cw_max_iterations;
    copts.mcl = opts.mcl;
    copts.mcl.jobs = opts.jobs;
    Partition parts = cluster(sg.graph, opts.global, copts);

    std::vector<Synset> synsets(parts.cluster_count);
    for (std::uint32_t s = 0; s < sg.inventory.sense_count(); ++s) {
        synsets[parts.assignment[s]].senses.push_back(sg.inventory.sense(s));
    }
    detail::sort_and_number_synsets(synsets, g.vocab);
    return synsets;
}

// ---------------------------------------------------------------------------
// Synset file format: `id<TAB>size<TAB>word#senseindex, ...`; plain mode drops
// the #senseindex suffixes and deduplicates words.

inline std::string serialize_synsets(const std::vector<Synset>& synsets, const Vocabulary& vocab,
                                     bool plain = false) {
    std::string out;
    for (const Synset& s : synsets) {
        std::vector<std::string> members;
        members.reserve(s.senses.size());
        if (plain) {
            for (const Sense& sense : s.senses) {
                if (members.empty() || members.back() != vocab.word(sense.word))
                    members.push_back(vocab.word(sense.word));
            }
        } else {
            for (const Sense& sense : s.senses)
                members.push_back(vocab.word(sense.word) + "#" + std::to_string(sense.index));
        }
        out += std::to_string(s.id);
        out += '\t';
        out += std::to_string(members.size());
        out += '\t';
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (i) out += ", ";
            out += members[i];
        }
        out += '\n';
    }
    return out;
}

struct SynsetFile {
    std::vector<Synset> synsets;
    Vocabulary vocab;
};

// Splits a `word#index` member token; a token without a trailing #<digits>
// suffix is a plain word with sense index 0.
inline Sense parse_member_token(std::string_view token, Vocabulary& vocab) {
    std::size_t hash = token.rfind('#');
    if (hash != std::string_view::npos && hash + 1 < token.size()) {
        std::string_view suffix = token.substr(hash + 1);
        std::uint64_t index;
        if (parse_uint(suffix, index)) {
            return Sense{vocab.intern(token.substr(0, hash)), static_cast<std::uint32_t>(index)};
        }
    }
    return Sense{vocab.intern(token), 0};
}

inline SynsetFile read_synsets_text(std::string_view content, const std::string& origin) {
    SynsetFile out;
    std::vector<std::string_view> lines = split_lines(content);
    for (std::size_t idx = 0; idx < lines.size(); ++idx) {
        std::string_view line = trim(lines[idx]);
        if (line.empty() || line.front() == '#') continue;
        std::size_t line_no = idx + 1;
        auto fields = split(line, '\t');
        if (fields.size() != 3) {
            throw data_error(origin + ":" + std::to_string(line_no) +
                             ": expected `id<TAB>size<TAB>members`");
        }
        std::uint64_t id, size;
        if (!parse_uint(trim(fields[0]), id) || !parse_uint(trim(fields[1]), size)) {
            throw data_error(origin + ":" + std::to_string(line_no) + ": bad id or size field");
        }
        Synset synset;
        synset.id = static_cast<std::uint32_t>(id);
        std::string_view members = fields[2];
        std::size_t start = 0;
        while (start <= members.size()) {
            std::size_t comma = members.find(", ", start);
            std::string_view token = comma == std::string_view::npos
                                         ? members.substr(start)
                                         : members.substr(start, comma - start);
            token = trim_spaces(token);
            if (!token.empty()) synset.senses.push_back(parse_member_token(token, out.vocab));
            if (comma == std::string_view::npos) break;
            start = comma + 2;
        }
        if (synset.senses.empty()) {
            throw data_error(origin + ":" + std::to_string(line_no) + ": empty synset");
        }
        if (synset.senses.size() != size) {
            throw data_error(origin + ":" + std::to_string(line_no) + ": size field says " +
                             std::to_string(size) + " but " + std::to_string(synset.senses.size()) +
                             " members listed");
        }
        out.synsets.push_back(std::move(synset));
    }
    return out;
}

inline SynsetFile read_synsets(const std::filesystem::path& path) {
    return read_synsets_text(read_file(path), path.string());
}

/// Word-level projection (for evaluation): sense indices stripped, words
/// deduplicated within each synset.
inline std::vector<std::vector<std::string>> project_words(const std::vector<Synset>& synsets,
                                                           const Vocabulary& vocab) {
    std::vector<std::vector<std::string>> out;
    out.reserve(synsets.size());
    for (const Synset& s : synsets) {
        std::vector<std::string> words;
        words.reserve(s.senses.size());
        for (const Sense& sense : s.senses) words.push_back(vocab.word(sense.word));
        std::sort(words.begin(), words.end());
        words.erase(std::unique(words.begin(), words.end()), words.end());
        out.push_back(std::move(words));
    }
    return out;
}

}  // namespace synsets
