#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "synsets/embeddings.hpp"
#include "synsets/eval.hpp"
#include "synsets/expand.hpp"
#include "synsets/merge.hpp"
#include "synsets/synonymy.hpp"
#include "synsets/watset.hpp"

namespace synsets {

// ---------------------------------------------------------------------------
// Stage runners. The CLI subcommands and the pipeline grid runner both call
// these, so a pipeline run is byte-identical to invoking the subcommands
// manually in sequence.

inline ExpansionReport run_expand_stage(const std::filesystem::path& graph_in,
                                        const ExpansionParams& params, int jobs,
                                        const std::filesystem::path& graph_out,
                                        const std::optional<std::filesystem::path>& report_out) {
    SynonymyGraph g = load_edge_list(graph_in);
    auto [expanded, report] = expand_graph(g, params, jobs);
    save_edge_list(expanded, graph_out);
    if (report_out) atomic_write(*report_out, serialize_expansion_report(report));
    return report;
}

inline std::size_t run_induce_stage(const std::filesystem::path& graph_in, const WatsetOptions& opts,
                                    const std::filesystem::path& synsets_out, bool plain) {
    SynonymyGraph g = load_edge_list(graph_in);
    std::vector<Synset> synsets = induce_synsets(g, opts);
    atomic_write(synsets_out, serialize_synsets(synsets, g.vocab, plain));
    return synsets.size();
}

struct MergeStageResult {
    std::size_t synsets_in = 0;
    std::size_t synsets_out = 0;
    std::size_t groups = 0;
    std::size_t skipped_vectors = 0;
};

inline MergeStageResult run_merge_stage(const std::filesystem::path& synsets_in,
                                        const std::filesystem::path& vectors_in,
                                        const MergeParams& params,
                                        const std::filesystem::path& synsets_out,
                                        const std::optional<std::filesystem::path>& audit_out,
                                        bool plain) {
    SynsetFile file = read_synsets(synsets_in);
    EmbeddingTable table = load_embeddings(vectors_in);
    SynsetVectorIndex index = SynsetVectorIndex::build(file.synsets, file.vocab, table);
    MergePlan plan = plan_merges(file.synsets, index, params);
    std::vector<Synset> merged = apply_merges(file.synsets, plan, file.vocab);
    atomic_write(synsets_out, serialize_synsets(merged, file.vocab, plain));
    if (audit_out) atomic_write(*audit_out, serialize_merge_audit(plan));
    return {file.synsets.size(), merged.size(), plan.groups.size(), index.skipped().size()};
}

inline EvalReport run_eval_stage(const std::filesystem::path& predicted_in,
                                 const std::filesystem::path& gold_in) {
    SynsetFile predicted = read_synsets(predicted_in);
    SynsetFile gold = read_synsets(gold_in);
    return paired_prf(project_words(predicted.synsets, predicted.vocab),
                      project_words(gold.synsets, gold.vocab));
}

// ---------------------------------------------------------------------------
// Pipeline configuration: a flat key-value file, every key overridable by a
// CLI flag.

struct PipelineConfig {
    std::string graph_path;
    std::string vectors_path;  // empty = none
    std::string gold_path;     // empty = none
    std::string outdir = "out";
    bool expand_enabled = false;
    bool merge_enabled = false;
    std::vector<int> expand_min_len = {2, 3};
    std::vector<int> expand_max_len = {2, 3};
    std::vector<int> expand_min_paths = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    double expand_inserted_weight = 1.0;
    std::vector<int> merge_max_merges = {1, 2, 3, 5, 10};
    std::vector<int> merge_knn = {10};
    Algorithm local = Algorithm::cw;
    Algorithm global = Algorithm::cw;
    std::uint64_t seed = 0;
    int jobs = 1;

    void validate() const {
        if (graph_path.empty()) throw usage_error("pipeline: input graph path is required");
        if (merge_enabled && vectors_path.empty())
            throw usage_error("pipeline: merge stage requires an embedding path");
        if (expand_enabled) {
            bool any = false;
            for (int i : expand_min_len)
                for (int j : expand_max_len)
                    if (i <= j) any = true;
            if (!any || expand_min_paths.empty())
                throw usage_error("pipeline: expansion grid is empty");
        }
        if (merge_enabled && (merge_max_merges.empty() || merge_knn.empty()))
            throw usage_error("pipeline: merge grid is empty");
        if (jobs < 1) throw usage_error("pipeline: jobs must be >= 1");
    }
};

namespace detail {

inline bool parse_bool(std::string_view v, const std::string& key) {
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    throw data_error("config: bad boolean for " + key + ": '" + std::string(v) + "'");
}

inline std::vector<int> parse_int_list(std::string_view v, const std::string& key) {
    std::vector<int> out;
    for (std::string_view part : split(v, ',')) {
        part = trim(part);
        if (part.empty()) continue;
        std::uint64_t value;
        if (!parse_uint(part, value))
            throw data_error("config: bad integer in " + key + ": '" + std::string(part) + "'");
        out.push_back(static_cast<int>(value));
    }
    if (out.empty()) throw data_error("config: empty list for " + key);
    return out;
}

}  // namespace detail

inline PipelineConfig parse_pipeline_config(std::string_view content, const std::string& origin) {
    PipelineConfig cfg;
    std::vector<std::string_view> lines = split_lines(content);
    for (std::size_t idx = 0; idx < lines.size(); ++idx) {
        std::string_view line = trim(lines[idx]);
        if (line.empty() || line.front() == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw data_error(origin + ":" + std::to_string(idx + 1) + ": expected `key = value`");
        std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));

        if (key == "graph") cfg.graph_path = value;
        else if (key == "vectors") cfg.vectors_path = value;
        else if (key == "gold") cfg.gold_path = value;
        else if (key == "outdir") cfg.outdir = value;
        else if (key == "seed") {
            std::uint64_t s;
            if (!parse_uint(value, s))
                throw data_error(origin + ": bad seed '" + std::string(value) + "'");
            cfg.seed = s;
        } else if (key == "jobs") {
            std::uint64_t j;
            if (!parse_uint(value, j) || j == 0)
                throw data_error(origin + ": bad jobs '" + std::string(value) + "'");
            cfg.jobs = static_cast<int>(j);
        } else if (key == "local") cfg.local = parse_algorithm(value);
        else if (key == "global") cfg.global = parse_algorithm(value);
        else if (key == "expand") cfg.expand_enabled = detail::parse_bool(value, key);
        else if (key == "expand.min-len") cfg.expand_min_len = detail::parse_int_list(value, key);
        else if (key == "expand.max-len") cfg.expand_max_len = detail::parse_int_list(value, key);
        else if (key == "expand.min-paths") cfg.expand_min_paths = detail::parse_int_list(value, key);
        else if (key == "merge") cfg.merge_enabled = detail::parse_bool(value, key);
        else if (key == "merge.max-merges") cfg.merge_max_merges = detail::parse_int_list(value, key);
        else if (key == "merge.knn") cfg.merge_knn = detail::parse_int_list(value, key);
        else throw data_error(origin + ": unknown config key '" + key + "'");
    }
    return cfg;
}

inline PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
    return parse_pipeline_config(read_file(path), path.string());
}

// ---------------------------------------------------------------------------
// Grid runner.

struct GridPoint {
    std::optional<ExpansionParams> expansion;
    std::optional<MergeParams> merge;

    std::string expansion_label() const {
        if (!expansion) return "original";
        return "expand-i" + std::to_string(expansion->min_len) + "-j" +
               std::to_string(expansion->max_len) + "-k" + std::to_string(expansion->min_paths);
    }
    std::string merge_label() const {
        if (!merge) return "-";
        return "merge-t" + std::to_string(merge->max_merges) + "-k" + std::to_string(merge->knn);
    }
};

inline std::vector<GridPoint> enumerate_grid(const PipelineConfig& cfg) {
    std::vector<std::optional<ExpansionParams>> expansions;
    if (cfg.expand_enabled) {
        for (int i : cfg.expand_min_len)
            for (int j : cfg.expand_max_len)
                for (int k : cfg.expand_min_paths)
                    if (i <= j) expansions.push_back(
                            ExpansionParams{k, i, j, cfg.expand_inserted_weight});
    } else {
        expansions.push_back(std::nullopt);
    }
    std::vector<std::optional<MergeParams>> merges;
    if (cfg.merge_enabled) {
        for (int t : cfg.merge_max_merges)
            for (int k : cfg.merge_knn) merges.push_back(MergeParams{t, k});
    } else {
        merges.push_back(std::nullopt);
    }
    std::vector<GridPoint> grid;
    for (const auto& e : expansions)
        for (const auto& m : merges) grid.push_back({e, m});
    return grid;
}

struct PipelineResult {
    std::size_t grid_points = 0;
    std::size_t failures = 0;
    std::filesystem::path summary_path;
};

/// Runs every grid point: (optional expand) -> Watset -> (optional merge) ->
/// (optional eval). Each stage goes through the same files the subcommands
/// use; one synset file per grid point plus a sweep summary table.
inline PipelineResult run_pipeline(const PipelineConfig& cfg, std::ostream& diag) {
    cfg.validate();
    namespace fs = std::filesystem;
    fs::create_directories(cfg.outdir);
    const fs::path outdir(cfg.outdir);

    std::vector<GridPoint> grid = enumerate_grid(cfg);
    PipelineResult result;
    result.grid_points = grid.size();

    WatsetOptions wopts;
    wopts.local = cfg.local;
    wopts.global = cfg.global;
    wopts.seed = cfg.seed;
    wopts.jobs = cfg.jobs;

    std::string summary =
        "# expansion\tmerge\tsynsets_file\tstatus\tprecision\trecall\tf1\ttp\tpp\tpg\tlexicon\n";

    // grid points grouped by expansion setting so Watset runs once per setting
    std::size_t gi = 0;
    while (gi < grid.size()) {
        std::size_t ge = gi;
        while (ge < grid.size() &&
               grid[ge].expansion_label() == grid[gi].expansion_label()) ++ge;
        const GridPoint& head = grid[gi];
        const std::string elabel = head.expansion_label();

        fs::path base_synsets = outdir / ("synsets." + elabel + ".tsv");
        std::string stage_error;
        try {
            fs::path graph_for_watset;
            if (head.expansion) {
                fs::path expanded = outdir / ("graph." + elabel + ".tsv");
                fs::path report = outdir / ("report." + elabel + ".tsv");
                diag << "[expand] " << elabel << "\n";
                run_expand_stage(cfg.graph_path, *head.expansion, cfg.jobs, expanded, report);
                graph_for_watset = expanded;
            } else {
                graph_for_watset = cfg.graph_path;
            }
            diag << "[induce] " << elabel << " (local=" << algorithm_name(cfg.local)
                 << ", global=" << algorithm_name(cfg.global) << ")\n";
            run_induce_stage(graph_for_watset, wopts, base_synsets, /*plain=*/false);
        } catch (const Error& e) {
            stage_error = e.what();
        }

        for (; gi < ge; ++gi) {
            const GridPoint& point = grid[gi];
            const std::string mlabel = point.merge_label();
            auto emit_row = [&](const std::string& file, const std::string& status,
                                const EvalReport* report) {
                summary += elabel + "\t" + mlabel + "\t" + file + "\t" + status;
                if (report) {
                    summary += "\t" + format_fixed6(report->precision) + "\t" +
                               format_fixed6(report->recall) + "\t" + format_fixed6(report->f1) +
                               "\t" + std::to_string(report->tp) + "\t" +
                               std::to_string(report->predicted_pairs) + "\t" +
                               std::to_string(report->gold_pairs) + "\t" +
                               std::to_string(report->lexicon_size);
                } else {
                    summary += "\t-\t-\t-\t-\t-\t-\t-";
                }
                summary += '\n';
            };
            if (!stage_error.empty()) {
                emit_row("-", "error: " + stage_error, nullptr);
                ++result.failures;
                continue;
            }
            try {
                fs::path point_synsets = base_synsets;
                if (point.merge) {
                    point_synsets = outdir / ("synsets." + elabel + "." + mlabel + ".tsv");
                    fs::path audit = outdir / ("audit." + elabel + "." + mlabel + ".tsv");
                    diag << "[merge] " << elabel << " " << mlabel << "\n";
                    run_merge_stage(base_synsets, cfg.vectors_path, *point.merge, point_synsets,
                                    audit, /*plain=*/false);
                }
                if (!cfg.gold_path.empty()) {
                    EvalReport report = run_eval_stage(point_synsets, cfg.gold_path);
                    emit_row(point_synsets.filename().string(), "ok", &report);
                } else {
                    emit_row(point_synsets.filename().string(), "ok", nullptr);
                }
            } catch (const Error& e) {
                emit_row("-", "error: " + std::string(e.what()), nullptr);
                ++result.failures;
            }
        }
    }

    result.summary_path = outdir / "summary.tsv";
    atomic_write(result.summary_path, summary);
    return result;
}

}  // namespace synsets
