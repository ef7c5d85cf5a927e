#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "synsets/graph.hpp"
#include "synsets/parallel.hpp"
#include "synsets/partition.hpp"

namespace synsets {

struct MclOptions {
    int expansion = 2;
    double inflation = 2.0;
    double epsilon = 1e-5;        // max absolute entry change for convergence
    int max_iterations = 100;
    double prune_threshold = 1e-5;
    int jobs = 1;
};

struct MclResult {
    Partition partition;
    bool converged = false;
    int iterations = 0;
    double max_column_sum_error = 0.0;  // worst |column sum - 1| seen right after any normalization
};

namespace detail {

// Column-major sparse matrix; rows sorted within each column.
struct CscMatrix {
    std::size_t n = 0;
    std::vector<std::size_t> col_offsets;  // n + 1
    std::vector<std::uint32_t> rows;
    std::vector<double> values;

    std::size_t col_begin(std::size_t j) const { return col_offsets[j]; }
    std::size_t col_end(std::size_t j) const { return col_offsets[j + 1]; }
};

inline CscMatrix from_columns(std::size_t n, std::vector<std::vector<std::pair<std::uint32_t, double>>>&& cols) {
    CscMatrix m;
    m.n = n;
    m.col_offsets.assign(n + 1, 0);
    for (std::size_t j = 0; j < n; ++j) m.col_offsets[j + 1] = m.col_offsets[j] + cols[j].size();
    m.rows.resize(m.col_offsets[n]);
    m.values.resize(m.col_offsets[n]);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t base = m.col_offsets[j];
        for (std::size_t i = 0; i < cols[j].size(); ++i) {
            m.rows[base + i] = cols[j][i].first;
            m.values[base + i] = cols[j][i].second;
        }
    }
    return m;
}

// Normalizes every column to sum 1 and reports the worst deviation from 1
// re-measured after the division.
inline double normalize_columns(CscMatrix& m) {
    double worst = 0.0;
    for (std::size_t j = 0; j < m.n; ++j) {
        double sum = 0.0;
        for (std::size_t i = m.col_begin(j); i < m.col_end(j); ++i) sum += m.values[i];
        if (sum <= 0.0) continue;  // empty column: nothing to normalize
        for (std::size_t i = m.col_begin(j); i < m.col_end(j); ++i) m.values[i] /= sum;
        double check = 0.0;
        for (std::size_t i = m.col_begin(j); i < m.col_end(j); ++i) check += m.values[i];
        worst = std::max(worst, std::abs(check - 1.0));
    }
    return worst;
}

// C = A * B, both column-stochastic CSC. Computed column by column with a
// dense accumulator; each output column is a pure function of its inputs, so
// the result is identical for any thread count.
inline CscMatrix multiply(const CscMatrix& a, const CscMatrix& b, int jobs) {
    std::size_t n = a.n;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> cols(n);
    struct Scratch {
        std::vector<double> acc;
        std::vector<std::uint32_t> touched;
        std::vector<char> seen;
    };
    std::vector<Scratch> scratch(std::max(1, jobs));
    std::vector<std::size_t> owner(n);
    // static block assignment keeps scratch reuse simple
    std::size_t workers = static_cast<std::size_t>(std::max(1, jobs));
    for (std::size_t j = 0; j < n; ++j) owner[j] = j % workers;

    auto run_worker = [&](std::size_t w) {
        Scratch& s = scratch[w];
        s.acc.assign(n, 0.0);
        s.seen.assign(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            if (owner[j] != w) continue;
            s.touched.clear();
            for (std::size_t t = b.col_begin(j); t < b.col_end(j); ++t) {
                std::uint32_t k = b.rows[t];
                double scale = b.values[t];
                for (std::size_t u = a.col_begin(k); u < a.col_end(k); ++u) {
                    std::uint32_t r = a.rows[u];
                    if (!s.seen[r]) {
                        s.seen[r] = 1;
                        s.touched.push_back(r);
                        s.acc[r] = 0.0;
                    }
                    s.acc[r] += scale * a.values[u];
                }
            }
            std::sort(s.touched.begin(), s.touched.end());
            auto& out = cols[j];
            out.reserve(s.touched.size());
            for (std::uint32_t r : s.touched) {
                out.emplace_back(r, s.acc[r]);
                s.seen[r] = 0;
            }
        }
    };
    if (workers <= 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run_worker, w);
        for (auto& t : threads) t.join();
    }
    return from_columns(n, std::move(cols));
}

inline void inflate(CscMatrix& m, double power) {
    for (double& v : m.values) v = std::pow(v, power);
}

// Drops entries below the threshold; a column that would become empty keeps
// its single largest entry (ties: smallest row).
inline void prune(CscMatrix& m, double threshold) {
    std::vector<std::size_t> new_offsets(m.n + 1, 0);
    std::size_t write = 0;
    for (std::size_t j = 0; j < m.n; ++j) {
        std::size_t begin = m.col_begin(j), end = m.col_end(j);
        std::size_t kept = 0;
        for (std::size_t i = begin; i < end; ++i) {
            if (m.values[i] >= threshold) ++kept;
        }
        new_offsets[j] = write;
        if (kept == 0 && end > begin) {
            std::size_t best = begin;
            for (std::size_t i = begin + 1; i < end; ++i) {
                if (m.values[i] > m.values[best]) best = i;
            }
            m.rows[write] = m.rows[best];
            m.values[write] = m.values[best];
            ++write;
        } else {
            for (std::size_t i = begin; i < end; ++i) {
                if (m.values[i] >= threshold) {
                    m.rows[write] = m.rows[i];
                    m.values[write] = m.values[i];
                    ++write;
                }
            }
        }
    }
    new_offsets[m.n] = write;
    m.col_offsets = std::move(new_offsets);
    m.rows.resize(write);
    m.values.resize(write);
}

// max |A - B| over the union of sparsity patterns
inline double max_abs_difference(const CscMatrix& a, const CscMatrix& b) {
    double worst = 0.0;
    for (std::size_t j = 0; j < a.n; ++j) {
        std::size_t i = a.col_begin(j), ie = a.col_end(j);
        std::size_t k = b.col_begin(j), ke = b.col_end(j);
        while (i < ie || k < ke) {
            if (k >= ke || (i < ie && a.rows[i] < b.rows[k])) {
                worst = std::max(worst, std::abs(a.values[i]));
                ++i;
            } else if (i >= ie || b.rows[k] < a.rows[i]) {
                worst = std::max(worst, std::abs(b.values[k]));
                ++k;
            } else {
                worst = std::max(worst, std::abs(a.values[i] - b.values[k]));
                ++i;
                ++k;
            }
        }
    }
    return worst;
}

}  // namespace detail

/// Markov Clustering: simulate flow by alternating expansion (matrix power)
/// and inflation (entrywise power + renormalization) until the flow matrix
/// stops changing, then read clusters off the attractors.
inline MclResult markov_clustering(const Graph& g, const MclOptions& opts = {}) {
    if (opts.expansion < 2) throw usage_error("mcl: expansion must be >= 2");
    if (!(opts.inflation > 1.0)) throw usage_error("mcl: inflation must be > 1");
    if (!(opts.epsilon > 0.0)) throw usage_error("mcl: epsilon must be > 0");

    const std::size_t n = g.vertex_count();
    MclResult result;
    if (n == 0) {
        result.converged = true;
        return result;
    }

    // initial matrix: adjacency + self-loops of weight 1, column-normalized
    std::vector<std::vector<std::pair<std::uint32_t, double>>> cols(n);
    for (std::size_t j = 0; j < n; ++j) {
        auto nbrs = g.neighbors(static_cast<Vertex>(j));
        auto ws = g.weights(static_cast<Vertex>(j));
        auto& col = cols[j];
        col.reserve(nbrs.size() + 1);
        std::size_t i = 0;
        for (; i < nbrs.size() && nbrs[i] < j; ++i) col.emplace_back(nbrs[i], ws[i]);
        col.emplace_back(static_cast<std::uint32_t>(j), 1.0);
        for (; i < nbrs.size(); ++i) col.emplace_back(nbrs[i], ws[i]);
    }
    detail::CscMatrix m = detail::from_columns(n, std::move(cols));
    result.max_column_sum_error = std::max(result.max_column_sum_error, detail::normalize_columns(m));

    int iteration = 0;
    for (; iteration < opts.max_iterations; ++iteration) {
        detail::CscMatrix expanded = detail::multiply(m, m, opts.jobs);
        for (int e = 2; e < opts.expansion; ++e) expanded = detail::multiply(expanded, m, opts.jobs);
        detail::inflate(expanded, opts.inflation);
        result.max_column_sum_error =
            std::max(result.max_column_sum_error, detail::normalize_columns(expanded));
        detail::prune(expanded, opts.prune_threshold);
        result.max_column_sum_error =
            std::max(result.max_column_sum_error, detail::normalize_columns(expanded));
        double diff = detail::max_abs_difference(expanded, m);
        m = std::move(expanded);
        if (diff < opts.epsilon) {
            result.converged = true;
            ++iteration;
            break;
        }
    }
    result.iterations = iteration;

    // Attractors are vertices with flow on their own diagonal. Each vertex is
    // assigned to the attractor with the largest flow in its column (ties to
    // the smallest attractor id); vertices sharing an attractor share a cluster.
    std::vector<char> is_attractor(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = m.col_begin(j); i < m.col_end(j); ++i) {
            if (m.rows[i] == j && m.values[i] > 0.0) {
                is_attractor[j] = 1;
                break;
            }
        }
    }
    std::vector<std::uint32_t> raw(n);
    for (std::size_t j = 0; j < n; ++j) {
        double best = 0.0;
        std::uint32_t chosen = 0xffffffffu;
        for (std::size_t i = m.col_begin(j); i < m.col_end(j); ++i) {
            std::uint32_t r = m.rows[i];
            if (!is_attractor[r] || m.values[i] <= 0.0) continue;
            if (m.values[i] > best || (m.values[i] == best && r < chosen)) {
                best = m.values[i];
                chosen = r;
            }
        }
        raw[j] = chosen == 0xffffffffu ? static_cast<std::uint32_t>(j) : chosen;
    }
    result.partition = canonicalize(std::move(raw));
    return result;
}

}  // namespace synsets
