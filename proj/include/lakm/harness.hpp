#ifndef LAKM_HARNESS_HPP
#define LAKM_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lakm/la_kmeans.hpp"
#include "lakm/la_kmedian.hpp"
#include "lakm/types.hpp"

namespace lakm::harness {

// ---------------------------------------------------------------------------
// Input files

/// Delimited numeric text, one point per row. Commas and whitespace both
/// separate fields; blank lines are skipped. Errors name the offending line.
PointSet load_dataset(const std::string& path, bool skip_header = false);
PointSet parse_dataset(std::istream& in, const std::string& source_name, bool skip_header = false);

/// One integer per line, remapped to dense ids 0..k-1 in ascending order of
/// the original values.
Partition load_labels(const std::string& path, std::size_t n);
Partition parse_labels(std::istream& in, const std::string& source_name, std::size_t n);

// ---------------------------------------------------------------------------
// Experiment protocol

enum class Mode { kmedian, kmeans };
enum class OutputFormat { csv, json };

struct ExperimentConfig {
    std::string dataset_path;
    std::optional<std::string> labels_path;
    bool header = false;

    std::size_t k = 10;
    Mode mode = Mode::kmedian;
    double alpha_true = 0.2;                ///< corruption rate fed to the predictor simulation
    std::optional<double> solver_alpha;     ///< alpha given to the solver; defaults to alpha_true
    bool sweep = false;                     ///< tune the solver alpha over sweep_candidates()
    double epsilon = 0.5;
    double delta = 0.1;
    std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};

    kmedian::Caps kmedian_caps;
    kmeans::Caps kmeans_caps;
    std::size_t recenter_iterations = 0;
    bool allow_self_reassign = false;
    bool record_timing = true;              ///< false writes time_ms = 0 for byte-stable output

    std::string output_path = "-";
    OutputFormat format = OutputFormat::csv;

    void validate() const;
};

enum class RowKind { run, mean, stddev };

struct ResultRecord {
    std::string method;
    std::size_t k = 0;
    double alpha_true = 0.0;
    double alpha_used = 0.0;
    RowKind kind = RowKind::run;
    std::uint64_t seed = 0;
    double cost = 0.0;  ///< NaN marks a failed run
    double time_ms = 0.0;
    double ari = 0.0;
    double nmi = 0.0;
    std::vector<std::string> warnings;
    double achieved_alpha = 0.0;
    std::uint64_t labels_hash = 0;  ///< hash of the corrupted labels this row was scored on
};

inline constexpr const char* kGroundTruthRef = "GroundTruthRef";
inline constexpr const char* kPredictor = "Predictor";
inline constexpr const char* kOurs = "Ours";

/// FNV-1a over the label sequence.
std::uint64_t hash_labels(const Partition& p);

/// The ten solver alphas tried by the sweep: evenly spaced over [0.01, 0.5],
/// both ends included.
std::vector<double> sweep_candidates();

struct SolverOutcome {
    CenterSet centers;
    double cost = 0.0;
    double time_ms = 0.0;
    std::vector<std::string> warnings;
};

/// Runs the configured solver (k-median or k-means) at one alpha and scores it
/// with the matching objective.
SolverOutcome run_solver(const ExperimentConfig& cfg, const PointSet& points, const Partition& predicted,
                         double alpha, std::uint64_t seed);

struct SweepResult {
    double best_alpha = 0.0;
    SolverOutcome best;
    std::vector<ResultRecord> records;  ///< one per candidate, candidate order
};

/// Solver over every sweep candidate on the same corrupted labels; the
/// cheapest wins and ties go to the smaller alpha.
SweepResult sweep_alpha(const ExperimentConfig& cfg, const PointSet& points, const Partition& corrupted,
                        const Partition& truth, std::uint64_t seed);

/// Full protocol per seed: ground truth (given labels, or D-sampling seeding
/// plus Lloyd), corruption, then GroundTruthRef / Predictor / Ours rows all
/// scored on the same corrupted labels. Mean and std rows per method follow
/// the per-seed rows.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg, const PointSet& points,
                                         const std::optional<Partition>& labels = std::nullopt);
/// Loads the dataset (and labels) named in cfg first.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Output

/// Column order of the CSV output.
const std::vector<std::string>& csv_columns();

void write_results(const std::vector<ResultRecord>& records, std::ostream& out, OutputFormat format);
/// "-" writes to stdout.
void write_results(const std::vector<ResultRecord>& records, const std::string& path, OutputFormat format);

}  // namespace lakm::harness

#endif  // LAKM_HARNESS_HPP
