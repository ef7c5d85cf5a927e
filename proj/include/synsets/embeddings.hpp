#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "synsets/parallel.hpp"
#include "synsets/text.hpp"
#include "synsets/vocab.hpp"
#include "synsets/watset.hpp"

namespace synsets {

/// Dense word vectors in the textual format `N D` header + `word v1 ... vD` rows.
class EmbeddingTable {
public:
    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return vocab_.size(); }

    std::optional<std::span<const double>> vector_of(std::string_view word) const {
        auto id = vocab_.find(word);
        if (!id) return std::nullopt;
        return std::span<const double>(data_.data() + static_cast<std::size_t>(*id) * dimension_,
                                       dimension_);
    }

    const Vocabulary& vocab() const { return vocab_; }

    void add(std::string_view word, std::span<const double> vector) {
        if (dimension_ == 0) dimension_ = vector.size();
        if (vector.size() != dimension_) throw data_error("embedding dimension mismatch");
        if (vocab_.find(word)) throw data_error("duplicate embedding word: " + std::string(word));
        vocab_.intern(word);
        data_.insert(data_.end(), vector.begin(), vector.end());
    }

    void set_dimension(std::size_t d) { dimension_ = d; }

private:
    std::size_t dimension_ = 0;
    Vocabulary vocab_;
    std::vector<double> data_;
};

struct EmbeddingLoadStats {
    std::size_t duplicates_skipped = 0;
    std::size_t vectors_loaded = 0;
};

inline EmbeddingTable load_embeddings_text(std::string_view content, const std::string& origin,
                                           EmbeddingLoadStats* stats = nullptr) {
    EmbeddingTable table;
    EmbeddingLoadStats local;
    std::vector<std::string_view> lines = split_lines(content);
    if (lines.empty()) throw data_error(origin + ": missing `N D` header");

    auto header = split(trim(lines[0]), ' ');
    std::uint64_t declared_count = 0, dim = 0;
    if (header.size() != 2 || !parse_uint(header[0], declared_count) || !parse_uint(header[1], dim) ||
        dim == 0) {
        throw data_error(origin + ":1: malformed header, expected `N D`");
    }
    table.set_dimension(dim);

    std::vector<double> row(dim);
    for (std::size_t idx = 1; idx < lines.size(); ++idx) {
        std::string_view line = trim(lines[idx]);
        if (line.empty()) continue;
        std::size_t line_no = idx + 1;
        auto fields = split(line, ' ');
        // tolerate runs of spaces
        std::vector<std::string_view> tokens;
        tokens.reserve(fields.size());
        for (auto f : fields) {
            if (!f.empty()) tokens.push_back(f);
        }
        if (tokens.size() != dim + 1) {
            throw data_error(origin + ":" + std::to_string(line_no) + ": expected 1 word + " +
                             std::to_string(dim) + " components, got " +
                             std::to_string(tokens.size()));
        }
        for (std::size_t d = 0; d < dim; ++d) {
            if (!parse_double(tokens[d + 1], row[d])) {
                throw data_error(origin + ":" + std::to_string(line_no) +
                                 ": non-numeric vector component '" + std::string(tokens[d + 1]) + "'");
            }
            if (!std::isfinite(row[d])) {
                throw data_error(origin + ":" + std::to_string(line_no) +
                                 ": non-finite vector component");
            }
        }
        if (table.vocab().find(tokens[0])) {
            ++local.duplicates_skipped;  // first occurrence wins
            continue;
        }
        table.add(tokens[0], row);
        ++local.vectors_loaded;
    }
    if (stats) *stats = local;
    return table;
}

inline EmbeddingTable load_embeddings(const std::filesystem::path& path,
                                      EmbeddingLoadStats* stats = nullptr) {
    return load_embeddings_text(read_file(path), path.string(), stats);
}

/// Mean of the vectors of the synset's in-vocabulary words, unit-normalized.
/// nullopt when no word is in vocabulary or the mean is the zero vector.
inline std::optional<std::vector<double>> synset_vector(const Synset& synset,
                                                        const Vocabulary& synset_vocab,
                                                        const EmbeddingTable& table) {
    std::vector<std::string_view> words;
    words.reserve(synset.senses.size());
    for (const Sense& s : synset.senses) words.push_back(synset_vocab.word(s.word));
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());

    std::vector<double> mean(table.dimension(), 0.0);
    std::size_t found = 0;
    for (std::string_view w : words) {
        auto vec = table.vector_of(w);
        if (!vec) continue;
        ++found;
        for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += (*vec)[d];
    }
    if (found == 0) return std::nullopt;
    double norm_sq = 0.0;
    for (std::size_t d = 0; d < mean.size(); ++d) {
        mean[d] /= static_cast<double>(found);
        norm_sq += mean[d] * mean[d];
    }
    double norm = std::sqrt(norm_sq);
    if (norm == 0.0) return std::nullopt;
    for (double& x : mean) x /= norm;
    return mean;
}

/// Unit vectors for synsets that have at least one in-vocabulary word; the
/// rest are recorded as skipped.
class SynsetVectorIndex {
public:
    SynsetVectorIndex() = default;

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return ids_.size(); }
    std::span<const std::uint32_t> ids() const { return ids_; }
    std::span<const std::uint32_t> skipped() const { return skipped_; }

    bool contains(std::uint32_t id) const { return row_of(id).has_value(); }

    std::optional<std::size_t> row_of(std::uint32_t id) const {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
        if (it == ids_.end() || *it != id) return std::nullopt;
        return static_cast<std::size_t>(it - ids_.begin());
    }

    std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * dimension_, dimension_};
    }

    static SynsetVectorIndex build(const std::vector<Synset>& synsets, const Vocabulary& vocab,
                                   const EmbeddingTable& table) {
        SynsetVectorIndex index;
        index.dimension_ = table.dimension();
        for (const Synset& s : synsets) {
            auto vec = synset_vector(s, vocab, table);
            if (vec) {
                index.ids_.push_back(s.id);
                index.data_.insert(index.data_.end(), vec->begin(), vec->end());
            } else {
                index.skipped_.push_back(s.id);
            }
        }
        if (!std::is_sorted(index.ids_.begin(), index.ids_.end()))
            throw data_error("synset ids must be unique and ascending for the vector index");
        std::sort(index.skipped_.begin(), index.skipped_.end());
        return index;
    }

private:
    std::size_t dimension_ = 0;
    std::vector<std::uint32_t> ids_;      // ascending synset ids
    std::vector<double> data_;            // row r = vector of ids_[r]
    std::vector<std::uint32_t> skipped_;  // ascending
};

/// The k most cosine-similar entries to the query, excluding the query itself,
/// descending by similarity with ties by ascending synset id. Unit norms make
/// cosine a plain dot product.
inline std::vector<std::pair<std::uint32_t, double>> knn(const SynsetVectorIndex& index,
                                                         std::uint32_t query_id, int k) {
    if (k < 1) throw usage_error("knn: k must be >= 1");
    auto row = index.row_of(query_id);
    if (!row) throw data_error("knn: synset " + std::to_string(query_id) + " has no vector");
    const std::size_t n = index.size();
    const std::size_t d = index.dimension();
    std::span<const double> q = index.row(*row);

    std::vector<std::pair<std::uint32_t, double>> scored;
    scored.reserve(n > 0 ? n - 1 : 0);
    for (std::size_t r = 0; r < n; ++r) {
        if (r == *row) continue;
        std::span<const double> x = index.row(r);
        double dot = 0.0;
        for (std::size_t i = 0; i < d; ++i) dot += q[i] * x[i];
        scored.emplace_back(index.ids()[r], dot);
    }
    auto better = [](const std::pair<std::uint32_t, double>& a,
                     const std::pair<std::uint32_t, double>& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    };
    std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(k), scored.size());
    std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(), better);
    scored.resize(keep);
    return scored;
}

struct MutualPair {
    std::uint32_t a, b;  // a < b
    double similarity;
};

/// All pairs (A, B) such that B is in A's k nearest neighbors and A is in B's.
inline std::vector<MutualPair> mutual_pairs(const SynsetVectorIndex& index, int k, int jobs = 1) {
    if (k < 1) throw usage_error("mutual_pairs: k must be >= 1");
    const std::size_t n = index.size();
    std::vector<std::vector<std::pair<std::uint32_t, double>>> lists(n);
    parallel_for(n, jobs, [&](std::size_t r) { lists[r] = knn(index, index.ids()[r], k); });

    // membership sets, sorted by neighbor id
    std::vector<std::vector<std::uint32_t>> members(n);
    for (std::size_t r = 0; r < n; ++r) {
        members[r].reserve(lists[r].size());
        for (const auto& [id, sim] : lists[r]) members[r].push_back(id);
        std::sort(members[r].begin(), members[r].end());
    }

    std::vector<MutualPair> out;
    for (std::size_t r = 0; r < n; ++r) {
        std::uint32_t a = index.ids()[r];
        for (const auto& [b, sim] : lists[r]) {
            if (b <= a) continue;  // each unordered pair once
            std::size_t rb = *index.row_of(b);
            if (std::binary_search(members[rb].begin(), members[rb].end(), a)) {
                out.push_back({a, b, sim});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const MutualPair& x, const MutualPair& y) {
        if (x.similarity != y.similarity) return x.similarity > y.similarity;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return out;
}

/// `idA<TAB>idB<TAB>similarity`, idA < idB, sorted by descending similarity.
inline std::string serialize_mutual_pairs(const std::vector<MutualPair>& pairs) {
    std::string out;
    for (const MutualPair& p : pairs) {
        out += std::to_string(p.a);
        out += '\t';
        out += std::to_string(p.b);
        out += '\t';
        out += format_fixed6(p.similarity);
        out += '\n';
    }
    return out;
}

/// Synset vectors in the same textual format as the input embeddings, one row
/// per synset id.
inline std::string serialize_synset_vectors(const SynsetVectorIndex& index) {
    std::string out = std::to_string(index.size()) + " " + std::to_string(index.dimension()) + "\n";
    for (std::size_t r = 0; r < index.size(); ++r) {
        out += std::to_string(index.ids()[r]);
        for (double v : index.row(r)) {
            out += ' ';
            out += format_component(v);
        }
        out += '\n';
    }
    return out;
}

}  // namespace synsets
