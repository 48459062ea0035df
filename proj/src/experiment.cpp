#include <chrono>
#include <cmath>
#include <limits>
#include <map>

#include "lakm/geom.hpp"
#include "lakm/harness.hpp"
#include "lakm/metrics.hpp"
#include "lakm/predictor.hpp"

namespace lakm::harness {

namespace {

// Stream tags for derive_seed.
constexpr std::uint64_t kTruthStream = 0x7472757468ULL;
constexpr std::uint64_t kCorruptStream = 0x636f7272ULL;
constexpr std::uint64_t kSolverStream = 0x736f6c76ULL;

double mode_cost(Mode mode, const PointSet& points, const CenterSet& centers) {
    return mode == Mode::kmedian ? geom::cost_kmedian(points, centers) : geom::cost_kmeans(points, centers);
}

// Per-cluster median (k-median) or centroid (k-means) of a labeling.
CenterSet label_centers(Mode mode, const PointSet& points, const Partition& labels,
                        std::vector<std::string>& warnings) {
    std::vector<Point> centers;
    for (int c = 0; c < labels.k; ++c) {
        const auto members = labels.members(c);
        if (members.empty()) {
            centers.push_back(geom::centroid(points));
            warnings.push_back("cluster " + std::to_string(c) + " is empty; using the dataset centroid");
            continue;
        }
        const PointSet cluster = points.select(members);
        centers.push_back(mode == Mode::kmedian ? geom::weiszfeld_median(cluster).point : geom::centroid(cluster));
    }
    return CenterSet(std::move(centers));
}

ResultRecord score(const char* method, const ExperimentConfig& cfg, Mode mode, const PointSet& points,
                   const CenterSet& centers, const Partition& truth) {
    ResultRecord r;
    r.method = method;
    r.k = cfg.k;
    r.alpha_true = cfg.alpha_true;
    r.cost = mode_cost(mode, points, centers);
    const Partition assigned = geom::nearest_assign(points, centers);
    r.ari = metrics::ari(truth, assigned);
    r.nmi = metrics::nmi(truth, assigned);
    return r;
}

ResultRecord failed(const char* method, const ExperimentConfig& cfg, const std::string& why) {
    ResultRecord r;
    r.method = method;
    r.k = cfg.k;
    r.alpha_true = cfg.alpha_true;
    r.cost = std::numeric_limits<double>::quiet_NaN();
    r.ari = std::numeric_limits<double>::quiet_NaN();
    r.nmi = std::numeric_limits<double>::quiet_NaN();
    r.warnings.push_back("failed: " + why);
    return r;
}

struct Truth {
    Partition labels;
    CenterSet centers;
    std::vector<std::string> warnings;
};

Truth ground_truth(const ExperimentConfig& cfg, const PointSet& points, const std::optional<Partition>& given,
                   std::uint64_t seed) {
    Truth t;
    if (given) {
        t.labels = *given;
        t.centers = label_centers(cfg.mode, points, t.labels, t.warnings);
        return t;
    }
    Rng rng(derive_seed(seed, kTruthStream));
    const int power = cfg.mode == Mode::kmedian ? 1 : 2;
    const CenterSet init = predictor::seed_dsampling(points, cfg.k, power, rng);
    const auto mode = cfg.mode == Mode::kmedian ? predictor::CenterMode::median : predictor::CenterMode::mean;
    auto lloyd = predictor::refine_lloyd(points, init, mode);
    t.labels = std::move(lloyd.labels);
    t.centers = std::move(lloyd.centers);
    return t;
}

void append_aggregates(std::vector<ResultRecord>& records, const ExperimentConfig& cfg) {
    const std::vector<std::string> methods = {kGroundTruthRef, kPredictor, kOurs};
    for (const auto& method : methods) {
        std::vector<double> cost, time, ari, nmi, alpha, achieved;
        for (const auto& r : records) {
            if (r.kind != RowKind::run || r.method != method || std::isnan(r.cost)) continue;
            cost.push_back(r.cost);
            time.push_back(r.time_ms);
            ari.push_back(r.ari);
            nmi.push_back(r.nmi);
            alpha.push_back(r.alpha_used);
            achieved.push_back(r.achieved_alpha);
        }
        const auto c = metrics::summarize(cost);
        const auto t = metrics::summarize(time);
        const auto a = metrics::summarize(ari);
        const auto n = metrics::summarize(nmi);
        const auto al = metrics::summarize(alpha);
        const auto ac = metrics::summarize(achieved);
        for (RowKind kind : {RowKind::mean, RowKind::stddev}) {
            const bool m = kind == RowKind::mean;
            ResultRecord r;
            r.method = method;
            r.k = cfg.k;
            r.alpha_true = cfg.alpha_true;
            r.kind = kind;
            r.alpha_used = m ? al.mean : al.stddev;
            r.cost = m ? c.mean : c.stddev;
            r.time_ms = m ? t.mean : t.stddev;
            r.ari = m ? a.mean : a.stddev;
            r.nmi = m ? n.mean : n.stddev;
            r.achieved_alpha = m ? ac.mean : ac.stddev;
            if (cost.empty()) r.warnings.push_back("no successful runs");
            records.push_back(std::move(r));
        }
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    if (k < 1) throw Error("experiment: k must be >= 1");
    if (!(alpha_true >= 0.0 && alpha_true < 1.0)) throw Error("experiment: alpha_true must lie in [0, 1)");
    if (seeds.empty()) throw Error("experiment: at least one seed is required");
    if (solver_alpha && !(*solver_alpha >= 0.0 && *solver_alpha < 0.5)) {
        throw Error("experiment: solver alpha must lie in [0, 0.5)");
    }
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw Error("experiment: epsilon must lie in (0, 1]");
    if (!(delta > 0.0 && delta < 1.0)) throw Error("experiment: delta must lie in (0, 1)");
}

std::uint64_t hash_labels(const Partition& p) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint32_t v) {
        for (int b = 0; b < 4; ++b) {
            h ^= (v >> (8 * b)) & 0xffu;
            h *= 0x100000001b3ULL;
        }
    };
    feed(static_cast<std::uint32_t>(p.k));
    for (int v : p.labels) feed(static_cast<std::uint32_t>(v));
    return h;
}

std::vector<double> sweep_candidates() {
    std::vector<double> out;
    constexpr int kCount = 10;
    for (int i = 0; i < kCount; ++i) out.push_back(0.01 + (0.5 - 0.01) * i / (kCount - 1));
    return out;
}

SolverOutcome run_solver(const ExperimentConfig& cfg, const PointSet& points, const Partition& predicted,
                         double alpha, std::uint64_t seed) {
    // The solver needs alpha < 1/2; the sweep's upper end is pulled just inside.
    const double a = std::min(alpha, std::nextafter(0.5, 0.0));
    const std::uint64_t solver_seed = derive_seed(seed, kSolverStream);
    SolverOutcome out;
    const auto start = std::chrono::steady_clock::now();
    SolveResult res;
    if (cfg.mode == Mode::kmedian) {
        kmedian::Config sc;
        sc.alpha = a;
        sc.epsilon = cfg.epsilon;
        sc.delta = cfg.delta;
        sc.seed = solver_seed;
        sc.caps = cfg.kmedian_caps;
        sc.recenter_iterations = cfg.recenter_iterations;
        res = kmedian::run(points, predicted, sc);
    } else {
        kmeans::Config sc;
        sc.alpha = a;
        sc.epsilon = cfg.epsilon;
        sc.delta = cfg.delta;
        sc.seed = solver_seed;
        sc.caps = cfg.kmeans_caps;
        res = kmeans::run(points, predicted, sc);
    }
    const auto stop = std::chrono::steady_clock::now();
    out.time_ms = cfg.record_timing ? std::chrono::duration<double, std::milli>(stop - start).count() : 0.0;
    out.centers = std::move(res.centers);
    out.warnings = std::move(res.warnings);
    out.cost = mode_cost(cfg.mode, points, out.centers);
    return out;
}

SweepResult sweep_alpha(const ExperimentConfig& cfg, const PointSet& points, const Partition& corrupted,
                        const Partition& truth, std::uint64_t seed) {
    SweepResult sweep;
    bool have_best = false;
    for (double alpha : sweep_candidates()) {
        SolverOutcome o = run_solver(cfg, points, corrupted, alpha, seed);
        ResultRecord r = score(kOurs, cfg, cfg.mode, points, o.centers, truth);
        r.alpha_used = alpha;
        r.seed = seed;
        r.time_ms = o.time_ms;
        r.warnings = o.warnings;
        r.labels_hash = hash_labels(corrupted);
        sweep.records.push_back(r);
        if (!have_best || o.cost < sweep.best.cost) {
            have_best = true;
            sweep.best_alpha = alpha;
            sweep.best = std::move(o);
        }
    }
    return sweep;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg, const PointSet& points,
                                         const std::optional<Partition>& labels) {
    cfg.validate();
    if (labels && static_cast<std::size_t>(labels->k) != cfg.k) {
        throw Error("experiment: labels file has " + std::to_string(labels->k) + " clusters but k = " +
                    std::to_string(cfg.k));
    }
    if (labels && labels->size() != points.size()) throw Error("experiment: labels do not match the dataset size");

    std::vector<ResultRecord> records;
    for (std::uint64_t seed : cfg.seeds) {
        Truth truth;
        try {
            truth = ground_truth(cfg, points, labels, seed);
        } catch (const Error& e) {
            for (const char* m : {kGroundTruthRef, kPredictor, kOurs}) {
                auto r = failed(m, cfg, e.what());
                r.seed = seed;
                records.push_back(std::move(r));
            }
            continue;
        }

        Partition corrupted;
        predictor::CorruptionReport report;
        try {
            Rng rng(derive_seed(seed, kCorruptStream));
            std::tie(corrupted, report) = predictor::corrupt_labels(truth.labels, cfg.alpha_true, rng,
                                                                    cfg.allow_self_reassign);
        } catch (const Error& e) {
            for (const char* m : {kGroundTruthRef, kPredictor, kOurs}) {
                auto r = failed(m, cfg, e.what());
                r.seed = seed;
                records.push_back(std::move(r));
            }
            continue;
        }
        const std::uint64_t lh = hash_labels(corrupted);
        const double solver_alpha = cfg.solver_alpha.value_or(std::min(cfg.alpha_true, 0.49));

        auto finish = [&](ResultRecord r, double alpha_used) {
            r.seed = seed;
            r.alpha_used = alpha_used;
            r.achieved_alpha = report.achieved_alpha;
            r.labels_hash = lh;
            records.push_back(std::move(r));
        };

        {
            ResultRecord r = score(kGroundTruthRef, cfg, cfg.mode, points, truth.centers, truth.labels);
            r.warnings = truth.warnings;
            finish(std::move(r), 0.0);
        }
        try {
            std::vector<std::string> warnings;
            const CenterSet predicted = label_centers(cfg.mode, points, corrupted, warnings);
            ResultRecord r = score(kPredictor, cfg, cfg.mode, points, predicted, truth.labels);
            r.warnings = std::move(warnings);
            finish(std::move(r), cfg.alpha_true);
        } catch (const Error& e) {
            finish(failed(kPredictor, cfg, e.what()), cfg.alpha_true);
        }
        try {
            if (cfg.sweep) {
                SweepResult sweep = sweep_alpha(cfg, points, corrupted, truth.labels, seed);
                ResultRecord r = score(kOurs, cfg, cfg.mode, points, sweep.best.centers, truth.labels);
                r.time_ms = sweep.best.time_ms;
                r.warnings = sweep.best.warnings;
                finish(std::move(r), sweep.best_alpha);
            } else {
                SolverOutcome o = run_solver(cfg, points, corrupted, solver_alpha, seed);
                ResultRecord r = score(kOurs, cfg, cfg.mode, points, o.centers, truth.labels);
                r.time_ms = o.time_ms;
                r.warnings = std::move(o.warnings);
                finish(std::move(r), solver_alpha);
            }
        } catch (const Error& e) {
            finish(failed(kOurs, cfg, e.what()), solver_alpha);
        }
    }
    append_aggregates(records, cfg);
    return records;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg) {
    const PointSet points = load_dataset(cfg.dataset_path, cfg.header);
    std::optional<Partition> labels;
    if (cfg.labels_path) labels = load_labels(*cfg.labels_path, points.size());
    return run_experiment(cfg, points, labels);
}

}  // namespace lakm::harness
