// synsets: induce, expand, merge and evaluate synsets over a synonymy graph.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "synsets/synsets.hpp"

namespace {

using namespace synsets;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitPartial = 3;

struct CommonFlags {
    std::uint64_t seed = 0;
    int jobs = 0;  // 0 = hardware default
    std::string local = "cw";
    std::string global = "cw";

    int effective_jobs() const { return jobs > 0 ? jobs : default_jobs(); }
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--seed", flags.seed, "random seed (default 0)");
    cmd->add_option("--jobs", flags.jobs, "worker threads (default: hardware)");
    cmd->add_option("--local", flags.local, "local clustering {cw|mcl|maxmax}")
        ->check(CLI::IsMember({"cw", "mcl", "maxmax"}));
    cmd->add_option("--global", flags.global, "global clustering {cw|mcl|maxmax}")
        ->check(CLI::IsMember({"cw", "mcl", "maxmax"}));
}

int run_stats(const std::string& in) {
    LoadStats load;
    SynonymyGraph g = load_edge_list(in, &load);
    GraphStats stats = graph_stats(g.graph);
    std::cout << "vertices\t" << stats.vertices << "\n";
    std::cout << "edges\t" << stats.edges << "\n";
    std::cout << "weight_sum\t" << format_weight(stats.weight_sum) << "\n";
    for (const auto& [degree, count] : stats.degree_histogram)
        std::cout << "degree\t" << degree << "\t" << count << "\n";
    if (load.self_loops_dropped)
        std::cerr << "warning: dropped " << load.self_loops_dropped << " self-loop line(s)\n";
    if (load.duplicate_pairs)
        std::cerr << "note: " << load.duplicate_pairs << " duplicate pair(s) resolved to max weight\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"synset induction toolkit"};
    app.require_subcommand(1);

    // --- stats ---
    std::string stats_in;
    CLI::App* stats_cmd = app.add_subcommand("stats", "vertex/edge counts and degree histogram");
    stats_cmd->add_option("--in", stats_in, "edge-list file")->required();

    // --- expand ---
    std::string expand_in, expand_out, expand_report;
    ExpansionParams expand_params{5, 2, 3, 1.0};
    CommonFlags expand_flags;
    CLI::App* expand_cmd =
        app.add_subcommand("expand", "insert edges between transitively synonymous words");
    expand_cmd->add_option("--in", expand_in, "input edge-list file")->required();
    expand_cmd->add_option("--out", expand_out, "output edge-list file")->required();
    expand_cmd->add_option("--report", expand_report, "per-ego insertion report file");
    expand_cmd->add_option("--min-paths", expand_params.min_paths, "minimum supporting paths k (default 5)");
    expand_cmd->add_option("--min-len", expand_params.min_len, "minimum path length i (default 2)");
    expand_cmd->add_option("--max-len", expand_params.max_len, "maximum path length j (default 3)");
    expand_cmd->add_option("--inserted-weight", expand_params.inserted_weight,
                           "weight of inserted edges (default 1.0)");
    expand_cmd->add_option("--jobs", expand_flags.jobs, "worker threads (default: hardware)");

    // --- induce ---
    std::string induce_in, induce_out;
    bool induce_plain = false;
    CommonFlags induce_flags;
    CLI::App* induce_cmd = app.add_subcommand("induce", "induce synsets (Watset meta-clustering)");
    induce_cmd->add_option("--in", induce_in, "input edge-list file")->required();
    induce_cmd->add_option("--out", induce_out, "output synsets file")->required();
    induce_cmd->add_flag("--plain", induce_plain, "drop #senseindex suffixes in the output");
    add_common(induce_cmd, induce_flags);

    // --- embed-synsets ---
    std::string embed_synsets_in, embed_vectors_in, embed_out, embed_pairs;
    int embed_knn = 10;
    CLI::App* embed_cmd =
        app.add_subcommand("embed-synsets", "average word vectors into unit synset vectors");
    embed_cmd->add_option("--synsets", embed_synsets_in, "synsets file")->required();
    embed_cmd->add_option("--vectors", embed_vectors_in, "word vectors file (`N D` header)")->required();
    embed_cmd->add_option("--out", embed_out, "output synset vectors file")->required();
    embed_cmd->add_option("--knn", embed_knn, "neighbor list width for --pairs (default 10)");
    embed_cmd->add_option("--pairs", embed_pairs, "write mutual nearest-neighbor pairs here");

    // --- merge ---
    std::string merge_synsets_in, merge_vectors_in, merge_out, merge_audit;
    bool merge_plain = false;
    MergeParams merge_params;
    CommonFlags merge_flags;
    CLI::App* merge_cmd = app.add_subcommand("merge", "merge mutual nearest-neighbor synsets");
    merge_cmd->add_option("--synsets", merge_synsets_in, "synsets file")->required();
    merge_cmd->add_option("--vectors", merge_vectors_in, "word vectors file")->required();
    merge_cmd->add_option("--out", merge_out, "output synsets file")->required();
    merge_cmd->add_option("--audit", merge_audit, "merge-group audit file");
    merge_cmd->add_option("--max-merges", merge_params.max_merges,
                          "max merged mutual neighbors per synset t (default 1)");
    merge_cmd->add_option("--knn", merge_params.knn, "nearest-neighbor width k (default 10)");
    merge_cmd->add_flag("--plain", merge_plain, "drop #senseindex suffixes in the output");
    merge_cmd->add_option("--jobs", merge_flags.jobs, "worker threads");

    // --- eval ---
    std::string eval_pred, eval_gold, eval_out;
    CLI::App* eval_cmd =
        app.add_subcommand("eval", "paired precision/recall/F-score against a gold standard");
    eval_cmd->add_option("--pred", eval_pred, "predicted synsets file")->required();
    eval_cmd->add_option("--gold", eval_gold, "gold synsets file")->required();
    eval_cmd->add_option("--out", eval_out, "also write the machine-readable line here");

    // --- pipeline ---
    std::string pipe_config, pipe_graph, pipe_vectors, pipe_gold, pipe_outdir;
    std::string pipe_local, pipe_global;
    std::string pipe_exp_min_len, pipe_exp_max_len, pipe_exp_min_paths, pipe_merge_t, pipe_merge_knn;
    std::optional<std::uint64_t> pipe_seed;
    std::optional<int> pipe_jobs;
    int pipe_expand_toggle = -1, pipe_merge_toggle = -1;
    CLI::App* pipe_cmd = app.add_subcommand("pipeline", "run the full parameter grid");
    pipe_cmd->add_option("--config", pipe_config, "key-value config file");
    pipe_cmd->add_option("--graph", pipe_graph, "input edge-list file (overrides config)");
    pipe_cmd->add_option("--vectors", pipe_vectors, "word vectors file");
    pipe_cmd->add_option("--gold", pipe_gold, "gold synsets file");
    pipe_cmd->add_option("--outdir", pipe_outdir, "output directory");
    pipe_cmd->add_option("--seed", pipe_seed, "random seed");
    pipe_cmd->add_option("--jobs", pipe_jobs, "worker threads");
    pipe_cmd->add_option("--local", pipe_local, "local clustering")->check(CLI::IsMember({"cw", "mcl", "maxmax"}));
    pipe_cmd->add_option("--global", pipe_global, "global clustering")->check(CLI::IsMember({"cw", "mcl", "maxmax"}));
    pipe_cmd->add_flag("--expand{1},--no-expand{0}", pipe_expand_toggle, "toggle the expansion stage");
    pipe_cmd->add_flag("--merge{1},--no-merge{0}", pipe_merge_toggle, "toggle the merge stage");
    pipe_cmd->add_option("--expand-min-len", pipe_exp_min_len, "comma list of i values");
    pipe_cmd->add_option("--expand-max-len", pipe_exp_max_len, "comma list of j values");
    pipe_cmd->add_option("--expand-min-paths", pipe_exp_min_paths, "comma list of k values");
    pipe_cmd->add_option("--merge-max-merges", pipe_merge_t, "comma list of t values");
    pipe_cmd->add_option("--merge-knn", pipe_merge_knn, "comma list of knn widths");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*stats_cmd) return run_stats(stats_in);

        if (*expand_cmd) {
            ExpansionReport report = run_expand_stage(
                expand_in, expand_params, expand_flags.effective_jobs(), expand_out,
                expand_report.empty() ? std::nullopt
                                      : std::optional<std::filesystem::path>(expand_report));
            std::cerr << "added " << report.edges_added << " of " << report.candidates_considered
                      << " candidate edges\n";
            return kExitOk;
        }

        if (*induce_cmd) {
            WatsetOptions opts;
            opts.local = parse_algorithm(induce_flags.local);
            opts.global = parse_algorithm(induce_flags.global);
            opts.seed = induce_flags.seed;
            opts.jobs = induce_flags.effective_jobs();
            std::size_t count = run_induce_stage(induce_in, opts, induce_out, induce_plain);
            std::cerr << "induced " << count << " synsets\n";
            return kExitOk;
        }

        if (*embed_cmd) {
            SynsetFile file = read_synsets(embed_synsets_in);
            EmbeddingLoadStats estats;
            EmbeddingTable table = load_embeddings(embed_vectors_in, &estats);
            if (estats.duplicates_skipped)
                std::cerr << "warning: " << estats.duplicates_skipped
                          << " duplicate vector word(s) skipped\n";
            SynsetVectorIndex index = SynsetVectorIndex::build(file.synsets, file.vocab, table);
            atomic_write(embed_out, serialize_synset_vectors(index));
            if (!index.skipped().empty())
                std::cerr << "note: " << index.skipped().size()
                          << " synset(s) skipped (no in-vocabulary words)\n";
            if (!embed_pairs.empty()) {
                auto pairs = mutual_pairs(index, embed_knn, default_jobs());
                atomic_write(embed_pairs, serialize_mutual_pairs(pairs));
                std::cerr << "wrote " << pairs.size() << " mutual pairs\n";
            }
            return kExitOk;
        }

        if (*merge_cmd) {
            MergeStageResult r = run_merge_stage(
                merge_synsets_in, merge_vectors_in, merge_params, merge_out,
                merge_audit.empty() ? std::nullopt
                                    : std::optional<std::filesystem::path>(merge_audit),
                merge_plain);
            std::cerr << "merged " << r.synsets_in << " -> " << r.synsets_out << " synsets ("
                      << r.groups << " groups, " << r.skipped_vectors << " without vectors)\n";
            return kExitOk;
        }

        if (*eval_cmd) {
            EvalReport report = run_eval_stage(eval_pred, eval_gold);
            std::cerr << describe_eval(report);
            std::cout << serialize_eval_line(report);
            if (!eval_out.empty()) atomic_write(eval_out, serialize_eval_line(report));
            return kExitOk;
        }

        if (*pipe_cmd) {
            PipelineConfig cfg;
            if (!pipe_config.empty()) cfg = load_pipeline_config(pipe_config);
            if (!pipe_graph.empty()) cfg.graph_path = pipe_graph;
            if (!pipe_vectors.empty()) cfg.vectors_path = pipe_vectors;
            if (!pipe_gold.empty()) cfg.gold_path = pipe_gold;
            if (!pipe_outdir.empty()) cfg.outdir = pipe_outdir;
            if (pipe_seed) cfg.seed = *pipe_seed;
            if (pipe_jobs) cfg.jobs = *pipe_jobs;
            if (!pipe_local.empty()) cfg.local = parse_algorithm(pipe_local);
            if (!pipe_global.empty()) cfg.global = parse_algorithm(pipe_global);
            if (pipe_expand_toggle != -1) cfg.expand_enabled = pipe_expand_toggle == 1;
            if (pipe_merge_toggle != -1) cfg.merge_enabled = pipe_merge_toggle == 1;
            if (!pipe_exp_min_len.empty())
                cfg.expand_min_len = detail::parse_int_list(pipe_exp_min_len, "--expand-min-len");
            if (!pipe_exp_max_len.empty())
                cfg.expand_max_len = detail::parse_int_list(pipe_exp_max_len, "--expand-max-len");
            if (!pipe_exp_min_paths.empty())
                cfg.expand_min_paths =
                    detail::parse_int_list(pipe_exp_min_paths, "--expand-min-paths");
            if (!pipe_merge_t.empty())
                cfg.merge_max_merges = detail::parse_int_list(pipe_merge_t, "--merge-max-merges");
            if (!pipe_merge_knn.empty())
                cfg.merge_knn = detail::parse_int_list(pipe_merge_knn, "--merge-knn");
            if (cfg.jobs == 0) cfg.jobs = default_jobs();

            PipelineResult result = run_pipeline(cfg, std::cerr);
            std::cerr << result.grid_points << " grid point(s), " << result.failures
                      << " failure(s); summary at " << result.summary_path.string() << "\n";
            return result.failures == 0 ? kExitOk : kExitPartial;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::usage ? kExitUsage : kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
