// lakm: run the learning-augmented clustering experiment on a numeric dataset
// and write one result row per (seed, method) plus mean/std rows.

#include <exception>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "lakm/harness.hpp"

int main(int argc, char** argv) {
    using namespace lakm;
    harness::ExperimentConfig cfg;
    CLI::App app{"Learning-augmented k-median / k-means experiment runner"};

    std::string labels;
    double solver_alpha = -1.0;
    std::string seeds_arg;
    bool no_timing = false;

    const std::map<std::string, harness::Mode> modes{{"kmedian", harness::Mode::kmedian},
                                                     {"kmeans", harness::Mode::kmeans}};
    const std::map<std::string, harness::OutputFormat> formats{{"csv", harness::OutputFormat::csv},
                                                               {"json", harness::OutputFormat::json}};

    app.add_option("--dataset", cfg.dataset_path, "numeric text file, one point per row")
        ->required()
        ->envname("LAKM_DATASET");
    app.add_option("--labels", labels, "ground-truth labels, one integer per line")->envname("LAKM_LABELS");
    app.add_flag("--header", cfg.header, "skip the first non-blank line of the dataset")->envname("LAKM_HEADER");
    app.add_option("--k", cfg.k, "number of clusters")->envname("LAKM_K");
    app.add_option("--mode", cfg.mode, "kmedian or kmeans")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
        ->envname("LAKM_MODE");
    app.add_option("--alpha", cfg.alpha_true, "label corruption rate of the simulated predictor")
        ->envname("LAKM_ALPHA");
    app.add_option("--solver-alpha", solver_alpha, "alpha passed to the solver (default: --alpha)")
        ->envname("LAKM_SOLVER_ALPHA");
    app.add_option("--epsilon", cfg.epsilon, "accuracy parameter")->envname("LAKM_EPSILON");
    app.add_option("--delta", cfg.delta, "failure probability")->envname("LAKM_DELTA");
    app.add_option("--seeds", seeds_arg, "comma-separated seeds (default 0..9)")->envname("LAKM_SEEDS");
    app.add_flag("--sweep", cfg.sweep, "tune the solver alpha over 10 values in [0.01, 0.5]")
        ->envname("LAKM_SWEEP");

    auto& mc = cfg.kmedian_caps;
    app.add_option("--cap-trials", mc.max_trials, "k-median: max sampling trials")->envname("LAKM_CAP_TRIALS");
    app.add_option("--cap-q", mc.max_q_size, "k-median: max |Q|")->envname("LAKM_CAP_Q");
    app.add_option("--cap-r", mc.max_r_size, "k-median: max |R|")->envname("LAKM_CAP_R");
    app.add_option("--cap-subsets", mc.max_subsets_per_trial, "k-median: max subsets of Q per trial")
        ->envname("LAKM_CAP_SUBSETS");
    app.add_option("--cap-grid", mc.max_grid_points, "k-median: max lattice points per anchor")
        ->envname("LAKM_CAP_GRID");
    app.add_option("--cap-candidates", mc.max_candidates_per_cluster, "k-median: max candidates per cluster")
        ->envname("LAKM_CAP_CANDIDATES");
    auto& kc = cfg.kmeans_caps;
    app.add_option("--cap-kmeans-trials", kc.max_trials, "k-means: max sampling trials")
        ->envname("LAKM_CAP_KMEANS_TRIALS");
    app.add_option("--cap-kmeans-r", kc.max_r_size, "k-means: max |R|")->envname("LAKM_CAP_KMEANS_R");
    app.add_option("--cap-kmeans-subsets", kc.max_subsets_per_trial, "k-means: max subsets of R per trial")
        ->envname("LAKM_CAP_KMEANS_SUBSETS");

    app.add_option("--recenter", cfg.recenter_iterations,
                   "k-median: re-solve the median of the chosen center's neighborhood this many times")
        ->envname("LAKM_RECENTER");
    app.add_flag("--allow-self", cfg.allow_self_reassign, "corrupted labels may land in their own cluster")
        ->envname("LAKM_ALLOW_SELF");
    app.add_flag("--no-timing", no_timing, "write time_ms = 0 so repeated runs are byte-identical")
        ->envname("LAKM_NO_TIMING");
    app.add_option("--out", cfg.output_path, "output file, - for stdout")->envname("LAKM_OUT");
    app.add_option("--format", cfg.format, "csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->envname("LAKM_FORMAT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (!labels.empty()) cfg.labels_path = labels;
        if (solver_alpha >= 0.0) cfg.solver_alpha = solver_alpha;
        cfg.record_timing = !no_timing;
        if (!seeds_arg.empty()) {
            cfg.seeds.clear();
            for (const auto& tok : CLI::detail::split(seeds_arg, ',')) {
                const std::string t = CLI::detail::trim_copy(tok);
                std::size_t used = 0;
                const unsigned long long v = std::stoull(t, &used);
                if (used != t.size()) throw lakm::Error("--seeds: cannot parse '" + t + "'");
                cfg.seeds.push_back(v);
            }
        }
        const auto records = harness::run_experiment(cfg);
        harness::write_results(records, cfg.output_path, cfg.format);
    } catch (const std::exception& e) {
        std::cerr << "lakm: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
