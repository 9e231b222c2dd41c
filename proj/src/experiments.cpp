#include "latred/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "latred/randstat.hpp"

namespace latred {

namespace {

// Disjoint stream-index blocks keep the per-trial streams of separate runs
// inside one operation from colliding: run r uses indices
// [r * kStreamBlock, r * kStreamBlock + trials).
constexpr std::uint64_t kStreamBlock = 1ull << 40;
constexpr std::uint64_t kLimitBlock = 100;  // block reserved for limit-chain runs
constexpr std::uint64_t kCrossBlock = 101;  // block reserved for cross-validation runs

}  // namespace

// ---- GSpec ----

GSpec GSpec::fixed(int g) {
    if (g < 0) {
        throw std::invalid_argument("codimension must be nonnegative");
    }
    GSpec spec;
    spec.kind = Kind::Fixed;
    spec.fixed_value = g;
    return spec;
}

GSpec GSpec::half_n() {
    GSpec spec;
    spec.kind = Kind::HalfN;
    return spec;
}

GSpec GSpec::cn_minus_1(double c) {
    if (!(c > 0.0) || !(c < 1.0)) {
        throw std::invalid_argument("codimension fraction must lie in (0,1)");
    }
    GSpec spec;
    spec.kind = Kind::CnMinus1;
    spec.c = c;
    return spec;
}

GSpec GSpec::parse(const std::string& text) {
    if (text == "half") {
        return half_n();
    }
    try {
        if (text.rfind("c:", 0) == 0) {
            size_t pos = 0;
            const std::string body = text.substr(2);
            const double c = std::stod(body, &pos);
            if (pos != body.size()) {
                throw std::invalid_argument("trailing characters");
            }
            return cn_minus_1(c);
        }
        size_t pos = 0;
        const int g = std::stoi(text, &pos);
        if (pos != text.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return fixed(g);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("cannot parse codimension rule '" + text +
                                    "' (expected an integer, 'half', or 'c:<fraction>')");
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("codimension rule '" + text + "' is out of range");
    }
}

std::string GSpec::describe() const {
    switch (kind) {
        case Kind::Fixed: return std::to_string(fixed_value);
        case Kind::HalfN: return "half";
        case Kind::CnMinus1: return "c:" + format_double(c);
    }
    return "?";
}

int GSpec::resolve(int n) const {
    int g = 0;
    switch (kind) {
        case Kind::Fixed: g = fixed_value; break;
        case Kind::HalfN: g = n / 2; break;
        case Kind::CnMinus1: g = static_cast<int>(std::lround(c * n)) - 1; break;
    }
    if (g < 0 || g > n - 2) {
        throw std::invalid_argument("codimension " + std::to_string(g) +
                                    " out of range for dimension " + std::to_string(n));
    }
    return g;
}

// ---- Monte Carlo plumbing ----

void parallel_trials(long long trials, int threads, const std::function<void(long long)>& fn) {
    if (trials < 0) {
        throw std::invalid_argument("trial count must be nonnegative");
    }
    if (threads < 1) {
        throw std::invalid_argument("thread count must be positive");
    }
    if (trials == 0) {
        return;
    }
    const int workers = static_cast<int>(std::min<long long>(threads, trials));
    if (workers == 1) {
        for (long long t = 0; t < trials; ++t) {
            fn(t);
        }
        return;
    }
    const long long chunk =
        std::max<long long>(1, std::min<long long>(1024, trials / (8 * workers)));
    std::atomic<long long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const long long begin = next.fetch_add(chunk);
            if (begin >= trials) {
                return;
            }
            const long long end = std::min(trials, begin + chunk);
            try {
                for (long long t = begin; t < end; ++t) {
                    fn(t);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back(work);
    }
    for (auto& worker : pool) {
        worker.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

std::vector<double> sample_finite_levels(const SphericalModel& model, int n, int g,
                                         long long trials, std::uint64_t master_seed,
                                         std::uint64_t stream_base, int threads, bool exact_gso,
                                         std::vector<int>* worst_index_out) {
    if (trials < 1) {
        throw std::invalid_argument("trial count must be positive");
    }
    std::vector<double> levels(static_cast<size_t>(trials));
    if (worst_index_out) {
        worst_index_out->assign(static_cast<size_t>(trials), 0);
    }
    parallel_trials(trials, threads, [&](long long t) {
        RngStream stream(master_seed, stream_base + static_cast<std::uint64_t>(t));
        ReductionReport report;
        if (exact_gso) {
            const Basis basis = sample_basis(stream, model, n, g);
            report = ratios(gram_schmidt(basis), g);
        } else {
            const GsoNormProfile profile = sample_gso_norms_direct(stream, model, n, g);
            report = ratios_from_norms(profile.hat_norms_sq, n, g);
        }
        levels[static_cast<size_t>(t)] = report.level;
        if (worst_index_out) {
            (*worst_index_out)[static_cast<size_t>(t)] = report.worst_index + 1;
        }
    });
    return levels;
}

std::vector<double> sample_limit_levels(int g, long long trials, std::uint64_t master_seed,
                                        std::uint64_t stream_base, int threads, double epsilon,
                                        std::vector<int>* worst_index_out) {
    if (trials < 1) {
        throw std::invalid_argument("trial count must be positive");
    }
    std::vector<double> levels(static_cast<size_t>(trials));
    if (worst_index_out) {
        worst_index_out->assign(static_cast<size_t>(trials), 0);
    }
    parallel_trials(trials, threads, [&](long long t) {
        RngStream stream(master_seed, stream_base + static_cast<std::uint64_t>(t));
        const LimitLevelResult result = limit_level(stream, g, epsilon);
        levels[static_cast<size_t>(t)] = result.level;
        if (worst_index_out) {
            (*worst_index_out)[static_cast<size_t>(t)] = result.worst_index;
        }
    });
    return levels;
}

// ---- operations ----

std::vector<ReducedProbRow> estimate_reduced_probability(const ExperimentConfig& config) {
    if (config.n_list.empty()) {
        throw std::invalid_argument("need at least one dimension");
    }
    if (!(config.s > 0.0) || !(config.s < 1.0)) {
        throw std::invalid_argument("reduction parameter s must lie in (0,1)");
    }
    const double threshold = config.s * config.s;
    std::vector<ReducedProbRow> rows;
    auto run_one = [&](int n, long long trials, std::uint64_t block, bool exact) {
        const int g = config.g_spec.resolve(n);
        const std::vector<double> levels =
            sample_finite_levels(config.model, n, g, trials, config.master_seed,
                                 block * kStreamBlock, config.threads, exact);
        long long hits = 0;
        for (double level : levels) {
            hits += level > threshold ? 1 : 0;
        }
        ReducedProbRow row;
        row.n = n;
        row.g = g;
        row.trials = trials;
        row.estimate = static_cast<double>(hits) / static_cast<double>(trials);
        row.std_error = std::sqrt(row.estimate * (1.0 - row.estimate) / static_cast<double>(trials));
        row.method = exact ? "exact" : "direct";
        rows.push_back(std::move(row));
    };
    for (size_t i = 0; i < config.n_list.size(); ++i) {
        run_one(config.n_list[i], config.trials, i + 1, config.exact_gso);
    }
    if (!config.exact_gso) {
        const int n_min = *std::min_element(config.n_list.begin(), config.n_list.end());
        run_one(n_min, std::min<long long>(config.trials, 10000), kCrossBlock, true);
    }
    return rows;
}

double akhavi_threshold(double c) {
    if (!(c > 0.0) || !(c < 1.0)) {
        throw std::invalid_argument("threshold parameter c must lie in (0,1)");
    }
    return 0.5 * std::pow(1.0 - c, (1.0 - c) / c) * std::pow(1.0 + c, 1.0 / c);
}

double ks_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("ks_distance: both samples must be non-empty");
    }
    if (!std::is_sorted(a.begin(), a.end()) || !std::is_sorted(b.begin(), b.end())) {
        throw std::invalid_argument("ks_distance: inputs must be sorted");
    }
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    size_t i = 0;
    size_t j = 0;
    double sup = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) {
            ++i;
        }
        while (j < b.size() && b[j] <= x) {
            ++j;
        }
        sup = std::max(sup, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return sup;
}

std::vector<KsRow> finite_vs_limit_level(const ExperimentConfig& config, int g) {
    if (config.n_list.empty()) {
        throw std::invalid_argument("need at least one dimension");
    }
    const long long limit_trials = config.limit_trials > 0 ? config.limit_trials : config.trials;
    std::vector<double> limit =
        sample_limit_levels(g, limit_trials, config.master_seed, kLimitBlock * kStreamBlock,
                            config.threads, config.epsilon);
    std::sort(limit.begin(), limit.end());
    std::vector<KsRow> rows;
    for (size_t i = 0; i < config.n_list.size(); ++i) {
        const int n = config.n_list[i];
        std::vector<double> finite =
            sample_finite_levels(config.model, n, g, config.trials, config.master_seed,
                                 (i + 1) * kStreamBlock, config.threads, config.exact_gso);
        for (double& level : finite) {
            level = std::min(level, 1.0);  // the limit level never exceeds 1
        }
        std::sort(finite.begin(), finite.end());
        rows.push_back({n, config.trials, ks_distance(finite, limit)});
    }
    return rows;
}

WorstIndexComparison worst_index_histogram(const ExperimentConfig& config, int g) {
    if (config.n_list.empty()) {
        throw std::invalid_argument("need at least one dimension");
    }
    const int n = *std::max_element(config.n_list.begin(), config.n_list.end());
    const long long limit_trials = config.limit_trials > 0 ? config.limit_trials : config.trials;
    std::vector<int> finite_idx;
    std::vector<int> limit_idx;
    sample_finite_levels(config.model, n, g, config.trials, config.master_seed, kStreamBlock,
                         config.threads, config.exact_gso, &finite_idx);
    sample_limit_levels(g, limit_trials, config.master_seed, kLimitBlock * kStreamBlock,
                        config.threads, config.epsilon, &limit_idx);

    int max_index = g + 1;
    for (int v : finite_idx) max_index = std::max(max_index, v);
    for (int v : limit_idx) max_index = std::max(max_index, v);

    WorstIndexComparison cmp;
    cmp.finite_n = n;
    cmp.finite.first_index = g + 1;
    cmp.limit.first_index = g + 1;
    cmp.finite.counts.assign(static_cast<size_t>(max_index - g), 0);
    cmp.limit.counts.assign(static_cast<size_t>(max_index - g), 0);
    for (int v : finite_idx) {
        ++cmp.finite.counts[static_cast<size_t>(v - g - 1)];
    }
    for (int v : limit_idx) {
        ++cmp.limit.counts[static_cast<size_t>(v - g - 1)];
    }
    double tv = 0.0;
    for (size_t i = 0; i < cmp.finite.counts.size(); ++i) {
        tv += std::abs(static_cast<double>(cmp.finite.counts[i]) / static_cast<double>(config.trials) -
                       static_cast<double>(cmp.limit.counts[i]) / static_cast<double>(limit_trials));
    }
    cmp.total_variation = 0.5 * tv;
    return cmp;
}

std::vector<NormCheckRow> asymptotic_norm_checks(const ExperimentConfig& config) {
    if (config.n_list.empty()) {
        throw std::invalid_argument("need at least one dimension");
    }
    if (config.trials < 2) {
        throw std::invalid_argument("need at least two trials");
    }
    const long long trials = config.trials;
    std::vector<NormCheckRow> rows;

    auto binom_se = [&](double p) {
        return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    };
    auto mean_and_se = [&](const std::vector<double>& values) {
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(values.size());
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        var /= static_cast<double>(values.size() - 1);
        return std::pair<double, double>(mean, std::sqrt(var / static_cast<double>(values.size())));
    };
    auto sorted_copy = [](std::vector<double> values) {
        std::sort(values.begin(), values.end());
        return values;
    };

    for (size_t idx = 0; idx < config.n_list.size(); ++idx) {
        const int n = config.n_list[idx];
        if (n < 16) {
            throw std::invalid_argument("norm checks need n >= 16");
        }
        const double a_n = config.model.radial_scale(n);
        const int h = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
        const int m = n / 2 + h;

        std::vector<double> y_tail(trials), norm_tail(trials), gamma_ref(trials);
        std::vector<double> y_fixed(trials), norm_fixed(trials);
        std::vector<double> window_slow(trials), window_half(trials);

        parallel_trials(trials, config.threads, [&](long long t) {
            RngStream stream(config.master_seed,
                             (idx + 1) * kStreamBlock + static_cast<std::uint64_t>(t));
            // index-1-from-the-tail ratio Y_{n-1}, fixed-index Y_2, the two
            // windowed indices, one shared radial draw, and an independent
            // gamma(1) reference for the scaled-tail KS comparisons
            const double yt = sample_beta(stream, {1.0, 0.5 * (n - 2)});
            const double yf = sample_beta(stream, {0.5 * (n - 1), 0.5});
            const double yh = sample_beta(stream, {0.5 * (h + 1), 0.5 * (n - h - 1)});
            const double ym = sample_beta(stream, {0.5 * (n - m + 1), 0.5 * (m - 1)});
            const double r2 = sample_squared_radius(stream, config.model, n);
            const double ref = sample_gamma(stream, {1.0});
            const size_t slot = static_cast<size_t>(t);
            y_tail[slot] = 0.5 * n * yt;
            norm_tail[slot] = 0.5 * n / a_n * yt * r2;
            gamma_ref[slot] = ref;
            y_fixed[slot] = yf;
            norm_fixed[slot] = yf * r2 / a_n;
            window_slow[slot] = static_cast<double>(n) / (h * a_n) * yh * r2;
            window_half[slot] = ym * r2 / a_n;
        });

        const std::vector<double> ref_sorted = sorted_copy(gamma_ref);
        rows.push_back({"scaled_y_tail_ks", n,
                        ks_distance(sorted_copy(y_tail), ref_sorted), 0.0, 0.0});
        const double y_far = static_cast<double>(std::count_if(
                                 y_fixed.begin(), y_fixed.end(),
                                 [](double v) { return std::abs(v - 1.0) > 0.1; })) /
                             static_cast<double>(trials);
        rows.push_back({"fixed_y_near_one", n, y_far, 0.0, binom_se(y_far)});
        rows.push_back({"scaled_norm_tail_ks", n,
                        ks_distance(sorted_copy(norm_tail), ref_sorted), 0.0, 0.0});
        const double norm_far = static_cast<double>(std::count_if(
                                    norm_fixed.begin(), norm_fixed.end(),
                                    [](double v) { return std::abs(v - 1.0) > 0.1; })) /
                                static_cast<double>(trials);
        rows.push_back({"fixed_norm_near_one", n, norm_far, 0.0, binom_se(norm_far)});
        const auto [slow_mean, slow_se] = mean_and_se(window_slow);
        rows.push_back({"window_slow_mean", n, slow_mean, 1.0, slow_se});
        const auto [half_mean, half_se] = mean_and_se(window_half);
        rows.push_back({"window_half_mean", n, half_mean, 0.5, half_se});
    }
    return rows;
}

// ---- serialization ----

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        }
        out << content;
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed: '" + tmp.string() + "'");
        }
    }
    fs::rename(tmp, target);
}

std::string cell_to_string(const Cell& cell) {
    switch (cell.kind) {
        case Cell::Kind::Number: return format_double(cell.number);
        case Cell::Kind::Integer: return std::to_string(cell.integer);
        case Cell::Kind::Text: return cell.text;
    }
    return {};
}

nlohmann::json cell_to_json(const Cell& cell) {
    switch (cell.kind) {
        case Cell::Kind::Number: return cell.number;
        case Cell::Kind::Integer: return cell.integer;
        case Cell::Kind::Text: return cell.text;
    }
    return nullptr;
}

// Execution details (thread count, output path, timing switch) are left out
// on purpose: the same experiment must produce byte-identical files however
// it was scheduled.
nlohmann::json config_to_json(const ExperimentConfig& config) {
    nlohmann::json j;
    j["name"] = config.name;
    j["model"] = config.model.name();
    j["n"] = config.n_list;
    j["g"] = config.g_spec.describe();
    j["s"] = config.s;
    j["delta"] = config.delta;
    j["k"] = config.k;
    j["trials"] = config.trials;
    if (config.limit_trials > 0) {
        j["limit_trials"] = config.limit_trials;
    }
    j["seed"] = config.master_seed;
    j["format"] = config.format == OutputFormat::Csv ? "csv" : "json";
    j["exact_gso"] = config.exact_gso;
    j["epsilon"] = config.epsilon;
    return j;
}

}  // namespace

std::string render_csv(const Table& table) {
    std::ostringstream out;
    for (size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::invalid_argument("table row width does not match the header");
        }
        for (size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << cell_to_string(row[i]);
        }
        out << "\n";
    }
    return out.str();
}

void write_csv_file(const std::string& path, const Table& table) {
    atomic_write(path, render_csv(table));
}

void write_json_file(const std::string& path, const ExperimentConfig& config,
                     const std::vector<std::pair<std::string, Table>>& tables,
                     double wall_seconds) {
    nlohmann::json doc;
    doc["config"] = config_to_json(config);
    nlohmann::json results = nlohmann::json::object();
    for (const auto& [name, table] : tables) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : table.rows) {
            if (row.size() != table.columns.size()) {
                throw std::invalid_argument("table row width does not match the header");
            }
            nlohmann::json obj = nlohmann::json::object();
            for (size_t i = 0; i < row.size(); ++i) {
                obj[table.columns[i]] = cell_to_json(row[i]);
            }
            rows.push_back(std::move(obj));
        }
        results[name] = std::move(rows);
    }
    doc["results"] = std::move(results);
    nlohmann::json meta;
    meta["version"] = kVersion;
    meta["seed"] = config.master_seed;
    if (config.timing) {
        meta["wall_time_seconds"] = wall_seconds;
    }
    doc["meta"] = std::move(meta);
    atomic_write(path, doc.dump(2) + "\n");
}

Basis parse_basis_text(std::istream& in) {
    int n = 0;
    int p = 0;
    if (!(in >> n >> p)) {
        throw std::runtime_error("basis input: cannot read the dimension header");
    }
    if (n < 1 || p < 1 || p > n) {
        throw std::runtime_error("basis input: invalid dimensions (need 1 <= p <= n)");
    }
    Basis basis(n, p);
    for (int j = 0; j < p; ++j) {
        double* v = basis.col(j);
        for (int i = 0; i < n; ++i) {
            if (!(in >> v[i])) {
                throw std::runtime_error("basis input: truncated vector data");
            }
        }
    }
    return basis;
}

Basis read_basis_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open basis file '" + path + "'");
    }
    return parse_basis_text(in);
}

void print_basis_text(std::ostream& out, const Basis& basis) {
    out << basis.n << " " << basis.p << "\n";
    for (int j = 0; j < basis.p; ++j) {
        const double* v = basis.col(j);
        for (int i = 0; i < basis.n; ++i) {
            out << (i ? " " : "") << format_double(v[i]);
        }
        out << "\n";
    }
}

void write_basis_file(const std::string& path, const Basis& basis) {
    std::ostringstream out;
    print_basis_text(out, basis);
    atomic_write(path, out.str());
}

}  // namespace latred
