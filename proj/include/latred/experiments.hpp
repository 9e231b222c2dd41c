#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "latred/gso.hpp"
#include "latred/limitproc.hpp"
#include "latred/models.hpp"

namespace latred {

inline constexpr const char* kVersion = "0.1.0";

// Codimension rule: a fixed value, half the dimension, or c*n - 1.
struct GSpec {
    enum class Kind { Fixed, HalfN, CnMinus1 };
    Kind kind = Kind::Fixed;
    int fixed_value = 0;
    double c = 0.0;

    static GSpec fixed(int g);
    static GSpec half_n();
    static GSpec cn_minus_1(double c);

    // "12", "half", or "c:0.25"
    static GSpec parse(const std::string& text);
    std::string describe() const;

    // the codimension for dimension n; throws unless 0 <= g <= n-2
    int resolve(int n) const;
};

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    std::string name;
    SphericalModel model = SphericalModel::ball();
    std::vector<int> n_list;
    GSpec g_spec;
    double s = 0.5;
    double delta = 0.0;
    int k = 1;                     // block size / chain index where applicable
    long long trials = 10000;
    long long limit_trials = 0;    // 0 means: same as trials
    std::uint64_t master_seed = 1;
    int threads = 1;
    std::string out_path;
    OutputFormat format = OutputFormat::Csv;
    bool exact_gso = false;
    bool timing = false;           // include wall time in JSON meta
    double epsilon = 1e-6;
};

struct ReducedProbRow {
    int n = 0;
    int g = 0;
    long long trials = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    std::string method;  // "direct" or "exact"
};

struct KsRow {
    int n = 0;
    long long trials = 0;
    double ks = 0.0;
};

struct IndexHistogram {
    int first_index = 0;  // the index value counts[0] refers to
    std::vector<long long> counts;
};

// Histograms of the argmin ratio index (the index j attaining the minimum,
// the convention the limit chain reports) for the finite-n and limit sides,
// on a common support, with their total-variation distance.
struct WorstIndexComparison {
    int finite_n = 0;
    IndexHistogram finite;
    IndexHistogram limit;
    double total_variation = 0.0;
};

struct NormCheckRow {
    std::string check;
    int n = 0;
    double value = 0.0;
    double reference = 0.0;  // the limit the statistic approaches
    double std_error = 0.0;  // 0 where not meaningful (KS rows)
};

// Fraction of trials whose reduction level exceeds s^2, for each configured
// dimension, via the direct norm sampler by default. A cross-validation run
// through the full orthogonalization pipeline is appended for the smallest
// dimension (capped at 10^4 trials) unless exact_gso already forces the full
// pipeline everywhere.
std::vector<ReducedProbRow> estimate_reduced_probability(const ExperimentConfig& config);

// (1/2) (1-c)^{(1-c)/c} (1+c)^{1/c} for c in (0,1).
double akhavi_threshold(double c);

// Two-sample Kolmogorov-Smirnov sup distance; both inputs must be sorted and
// non-empty.
double ks_distance(const std::vector<double>& a, const std::vector<double>& b);

// Per-dimension KS distance between min(finite level, 1) and the limit-chain
// level, config.trials samples on each side.
std::vector<KsRow> finite_vs_limit_level(const ExperimentConfig& config, int g);

// Compare argmin-index histograms: finite side at the largest configured n
// with config.trials samples, limit side with config.limit_trials samples.
WorstIndexComparison worst_index_histogram(const ExperimentConfig& config, int g);

// Convergence checks for the orthogonalized-norm laws: scaled tail norms
// against their gamma limits (KS), fixed-index norms concentrating at 1, and
// windowed indices (sqrt(n) into the tail; half the dimension) approaching
// their limit constants. Uses codimension 0 regardless of config.g_spec.
std::vector<NormCheckRow> asymptotic_norm_checks(const ExperimentConfig& config);

// Entry point behind the command-line tool. Returns the process exit code:
// 0 success, 2 parameter/usage error, 1 runtime failure.
int run_cli(int argc, char** argv);

// ---- Monte Carlo plumbing shared by drivers and test suites ----

// Calls fn(trial) for every trial in [0, trials), distributing over the given
// number of threads. fn must write only to its own trial's slot; results are
// then independent of the thread count. The first exception thrown by fn is
// rethrown after all workers finish.
void parallel_trials(long long trials, int threads, const std::function<void(long long)>& fn);

// Reduction levels of freshly sampled bases, one stream per trial
// (stream_index = stream_base + trial). worst_index_out, if given, receives
// the argmin ratio index per trial (report worst_index + 1, matching the
// limit-chain convention).
std::vector<double> sample_finite_levels(const SphericalModel& model, int n, int g,
                                         long long trials, std::uint64_t master_seed,
                                         std::uint64_t stream_base, int threads, bool exact_gso,
                                         std::vector<int>* worst_index_out = nullptr);

// Limit-chain levels, one stream per trial, same stream convention.
std::vector<double> sample_limit_levels(int g, long long trials, std::uint64_t master_seed,
                                        std::uint64_t stream_base, int threads, double epsilon,
                                        std::vector<int>* worst_index_out = nullptr);

// ---- serialization ----

struct Cell {
    enum class Kind { Number, Integer, Text };
    Kind kind = Kind::Number;
    double number = 0.0;
    long long integer = 0;
    std::string text;

    static Cell num(double v) { return {Kind::Number, v, 0, {}}; }
    static Cell intval(long long v) { return {Kind::Integer, 0.0, v, {}}; }
    static Cell textval(std::string v) { return {Kind::Text, 0.0, 0, std::move(v)}; }
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// floats with 17 significant digits, the round-trip-exact form
std::string format_double(double v);

// the CSV text of a table (header line plus one line per row)
std::string render_csv(const Table& table);

// Atomic writes (temp file + rename). The JSON document is one object with
// "config", "results" (one array of row objects per table) and "meta"
// (version and seed; wall time only when timing was requested, so that
// default outputs are byte-identical across reruns and thread counts).
void write_csv_file(const std::string& path, const Table& table);
void write_json_file(const std::string& path, const ExperimentConfig& config,
                     const std::vector<std::pair<std::string, Table>>& tables,
                     double wall_seconds);

// Basis file: first line "n p", then p lines of n space-separated reals.
Basis read_basis_file(const std::string& path);
void write_basis_file(const std::string& path, const Basis& basis);
Basis parse_basis_text(std::istream& in);
void print_basis_text(std::ostream& out, const Basis& basis);

}  // namespace latred
