#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "latred/experiments.hpp"
#include "latred/lll.hpp"
#include "latred/randstat.hpp"

namespace latred {
namespace {

constexpr std::uint64_t kBlock = 1ull << 40;

using Clock = std::chrono::steady_clock;

struct CliOptions {
    std::string model = "ball";
    std::vector<int> n_list;
    std::string g_text = "0";
    double s = 0.5;
    double delta = 0.75;
    int k = 1;
    long long trials = 10000;
    long long limit_trials = 0;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string in;
    std::string out;
    std::string format = "csv";
    bool exact_gso = false;
    bool timing = false;
    double epsilon = 1e-6;
    long long max_iterations = 0;
    std::string experiment_name;
};

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw std::invalid_argument("unknown output format '" + text + "' (expected csv or json)");
}

ExperimentConfig make_config(const CliOptions& o, const std::string& name) {
    ExperimentConfig config;
    config.name = name;
    config.model = SphericalModel::parse(o.model);
    config.n_list = o.n_list;
    config.g_spec = GSpec::parse(o.g_text);
    config.s = o.s;
    config.delta = o.delta;
    config.k = o.k;
    config.trials = o.trials;
    config.limit_trials = o.limit_trials;
    config.master_seed = o.seed;
    config.threads = o.threads;
    config.out_path = o.out;
    config.format = parse_format(o.format);
    config.exact_gso = o.exact_gso;
    config.timing = o.timing;
    config.epsilon = o.epsilon;
    return config;
}

std::string default_out(const CliOptions& o, const std::string& name) {
    if (!o.out.empty()) return o.out;
    return name + (o.format == "json" ? ".json" : ".csv");
}

int single_n(const CliOptions& o) {
    if (o.n_list.size() != 1) {
        throw std::invalid_argument("exactly one --n value is required here");
    }
    return o.n_list.front();
}

int fixed_g(const GSpec& spec) {
    if (spec.kind != GSpec::Kind::Fixed) {
        throw std::invalid_argument("this operation needs an explicit integer codimension");
    }
    return spec.fixed_value;
}

void check_s(double s) {
    if (!(s > 0.0) || !(s < 1.0)) {
        throw std::invalid_argument("reduction parameter s must lie in (0,1)");
    }
}

std::string strip_extension(const std::string& path) {
    const std::filesystem::path p(path);
    return (p.parent_path() / p.stem()).string();
}

// Single table to one file; several tables to <stem>_<name>.csv each, or to
// one JSON document holding all of them. An empty or '-' path prints CSV to
// stdout instead.
void emit_tables(const ExperimentConfig& config,
                 const std::vector<std::pair<std::string, Table>>& tables, double wall_seconds) {
    if (config.out_path.empty() || config.out_path == "-") {
        if (config.format == OutputFormat::Json) {
            throw std::invalid_argument("json output needs --out <file>");
        }
        for (const auto& [name, table] : tables) {
            if (tables.size() > 1) {
                std::cout << "# " << name << "\n";
            }
            std::cout << render_csv(table);
        }
        return;
    }
    if (config.format == OutputFormat::Json) {
        write_json_file(config.out_path, config, tables, wall_seconds);
        std::cout << "wrote " << config.out_path << "\n";
        return;
    }
    if (tables.size() == 1) {
        write_csv_file(config.out_path, tables.front().second);
        std::cout << "wrote " << config.out_path << "\n";
        return;
    }
    const std::string stem = strip_extension(config.out_path);
    for (const auto& [name, table] : tables) {
        const std::string path = stem + "_" + name + ".csv";
        write_csv_file(path, table);
        std::cout << "wrote " << path << "\n";
    }
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::pair<double, double> mean_and_se(const std::vector<double>& values) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(values.size()))};
}

// ---- plain commands ----

void cmd_gen(const CliOptions& o) {
    const int n = single_n(o);
    const int g = GSpec::parse(o.g_text).resolve(n);
    RngStream stream(o.seed, 0);
    const Basis basis = sample_basis(stream, SphericalModel::parse(o.model), n, g);
    if (o.out.empty() || o.out == "-") {
        print_basis_text(std::cout, basis);
    } else {
        write_basis_file(o.out, basis);
        std::cout << "wrote " << o.out << "\n";
    }
}

void cmd_gso(const CliOptions& o) {
    const auto start = Clock::now();
    const Basis basis = (o.in == "-") ? parse_basis_text(std::cin) : read_basis_file(o.in);
    const GsoData gso = gram_schmidt(basis);
    Table table;
    table.columns = {"item", "i", "j", "value"};
    for (int j = 0; j < gso.p; ++j) {
        table.rows.push_back({Cell::textval("hat_norm_sq"), Cell::intval(j + 1),
                              Cell::intval(j + 1), Cell::num(gso.hat_norms_sq[j])});
    }
    for (int j = 0; j < gso.p; ++j) {
        for (int k = 0; k < j; ++k) {
            table.rows.push_back({Cell::textval("r_coeff"), Cell::intval(k + 1),
                                  Cell::intval(j + 1), Cell::num(gso.r(k, j))});
        }
    }
    ExperimentConfig config = make_config(o, "gso");
    config.n_list = {basis.n};
    emit_tables(config, {{"gso", table}}, seconds_since(start));
}

void cmd_lll(const CliOptions& o, bool use_delta) {
    const Basis basis = (o.in == "-") ? parse_basis_text(std::cin) : read_basis_file(o.in);
    LllConfig config;
    if (use_delta) {
        config.mode = LllConfig::Mode::TrulyLll;
        config.param = o.delta;
    } else {
        config.mode = LllConfig::Mode::Siegel;
        config.param = o.s;
    }
    config.max_iterations = o.max_iterations;
    const LllResult result = lll_reduce(basis, config);
    std::cerr << "iterations=" << result.iterations << " swaps=" << result.swaps << "\n";
    if (o.out.empty() || o.out == "-") {
        print_basis_text(std::cout, result.basis);
    } else {
        write_basis_file(o.out, result.basis);
        std::cout << "wrote " << o.out << "\n";
    }
}

void cmd_reduce(const CliOptions& o) {
    const auto start = Clock::now();
    const int n = single_n(o);
    check_s(o.s);
    ExperimentConfig config = make_config(o, "reduce");
    config.out_path = default_out(o, "reduce");
    const int g = config.g_spec.resolve(n);
    std::vector<int> worst;
    const std::vector<double> levels =
        sample_finite_levels(config.model, n, g, config.trials, config.master_seed, kBlock,
                             config.threads, config.exact_gso, &worst);
    const double threshold = config.s * config.s;

    Table trials_table;
    trials_table.columns = {"trial", "level", "worst_index", "reduced"};
    long long hits = 0;
    for (long long t = 0; t < config.trials; ++t) {
        const double level = levels[static_cast<size_t>(t)];
        const bool reduced = level > threshold;
        hits += reduced ? 1 : 0;
        trials_table.rows.push_back({Cell::intval(t), Cell::num(level),
                                     Cell::intval(worst[static_cast<size_t>(t)] - 1),
                                     Cell::intval(reduced ? 1 : 0)});
    }
    const double fraction = static_cast<double>(hits) / static_cast<double>(config.trials);
    const auto [mean_level, level_se] = mean_and_se(levels);
    (void)level_se;
    Table summary;
    summary.columns = {"n", "g", "trials", "reduced_fraction", "std_error", "mean_level"};
    summary.rows.push_back(
        {Cell::intval(n), Cell::intval(g), Cell::intval(config.trials), Cell::num(fraction),
         Cell::num(std::sqrt(fraction * (1.0 - fraction) / static_cast<double>(config.trials))),
         Cell::num(mean_level)});
    emit_tables(config, {{"trials", trials_table}, {"summary", summary}}, seconds_since(start));
}

void cmd_limit(const CliOptions& o) {
    const auto start = Clock::now();
    ExperimentConfig config = make_config(o, "limit");
    config.out_path = default_out(o, "limit");
    const int g = fixed_g(config.g_spec);
    std::vector<int> worst;
    const std::vector<double> levels =
        sample_limit_levels(g, config.trials, config.master_seed, kBlock, config.threads,
                            config.epsilon, &worst);
    Table trials_table;
    trials_table.columns = {"trial", "level", "worst_index"};
    for (long long t = 0; t < config.trials; ++t) {
        trials_table.rows.push_back({Cell::intval(t), Cell::num(levels[static_cast<size_t>(t)]),
                                     Cell::intval(worst[static_cast<size_t>(t)])});
    }
    const auto [mean_level, se] = mean_and_se(levels);
    Table summary;
    summary.columns = {"g", "trials", "mean_level", "std_error"};
    summary.rows.push_back(
        {Cell::intval(g), Cell::intval(config.trials), Cell::num(mean_level), Cell::num(se)});
    emit_tables(config, {{"trials", trials_table}, {"summary", summary}}, seconds_since(start));
}

// ---- named experiments ----

void run_reduced_prob(const CliOptions& o) {
    const auto start = Clock::now();
    check_s(o.s);
    ExperimentConfig config = make_config(o, "reduced-prob");
    if (config.n_list.empty()) {
        config.n_list = {32, 64, 128, 256};
    }
    config.out_path = default_out(o, "reduced-prob");
    const std::vector<ReducedProbRow> rows = estimate_reduced_probability(config);
    Table table;
    table.columns = {"n", "g", "trials", "method", "estimate", "std_error"};
    for (const auto& row : rows) {
        table.rows.push_back({Cell::intval(row.n), Cell::intval(row.g), Cell::intval(row.trials),
                              Cell::textval(row.method), Cell::num(row.estimate),
                              Cell::num(row.std_error)});
    }
    emit_tables(config, {{"reduced_prob", table}}, seconds_since(start));
}

void run_finite_vs_limit(const CliOptions& o) {
    const auto start = Clock::now();
    ExperimentConfig config = make_config(o, "finite-vs-limit");
    if (config.n_list.empty()) {
        config.n_list = {16, 64, 256};
    }
    config.out_path = default_out(o, "finite-vs-limit");
    const int g = fixed_g(config.g_spec);
    const std::vector<KsRow> rows = finite_vs_limit_level(config, g);
    Table table;
    table.columns = {"n", "trials", "ks"};
    for (const auto& row : rows) {
        table.rows.push_back({Cell::intval(row.n), Cell::intval(row.trials), Cell::num(row.ks)});
    }
    emit_tables(config, {{"finite_vs_limit", table}}, seconds_since(start));
}

void run_figure_sim2(const CliOptions& o) {
    const auto start = Clock::now();
    ExperimentConfig config = make_config(o, "figure-sim2");
    config.out_path = default_out(o, "figure-sim2");
    const int g = fixed_g(config.g_spec);
    std::vector<int> worst;
    const std::vector<double> levels =
        sample_limit_levels(g, config.trials, config.master_seed, 100 * kBlock, config.threads,
                            config.epsilon, &worst);

    constexpr int kBins = 200;
    std::vector<long long> bins(kBins, 0);
    for (double level : levels) {
        const int b = std::clamp(static_cast<int>(level * kBins), 0, kBins - 1);
        ++bins[static_cast<size_t>(b)];
    }
    Table level_table;
    level_table.columns = {"bin_low", "bin_high", "count"};
    for (int b = 0; b < kBins; ++b) {
        level_table.rows.push_back({Cell::num(static_cast<double>(b) / kBins),
                                    Cell::num(static_cast<double>(b + 1) / kBins),
                                    Cell::intval(bins[static_cast<size_t>(b)])});
    }

    int max_index = g + 1;
    for (int v : worst) max_index = std::max(max_index, v);
    std::vector<long long> idx_counts(static_cast<size_t>(max_index - g), 0);
    for (int v : worst) ++idx_counts[static_cast<size_t>(v - g - 1)];
    Table index_table;
    index_table.columns = {"index", "count"};
    for (size_t i = 0; i < idx_counts.size(); ++i) {
        index_table.rows.push_back(
            {Cell::intval(g + 1 + static_cast<long long>(i)), Cell::intval(idx_counts[i])});
    }

    emit_tables(config, {{"level", level_table}, {"index", index_table}}, seconds_since(start));
}

void run_clt(const CliOptions& o, int k) {
    const auto start = Clock::now();
    ExperimentConfig config = make_config(o, "clt");
    config.k = k;
    config.out_path = default_out(o, "clt");
    RngStream stream(config.master_seed, 0);
    const auto [mean, variance] = clt_statistic(stream, k, config.trials);
    Table table;
    table.columns = {"k", "trials", "mean", "variance"};
    table.rows.push_back(
        {Cell::intval(k), Cell::intval(config.trials), Cell::num(mean), Cell::num(variance)});
    emit_tables(config, {{"clt", table}}, seconds_since(start));
}

void run_tail_bounds(const CliOptions& o) {
    const auto start = Clock::now();
    ExperimentConfig config = make_config(o, "tail-bounds");
    config.out_path = default_out(o, "tail-bounds");
    const std::vector<int> ks = {2, 5, 20, 100};
    const std::vector<double> rhos = {0.25, 0.5, 1.0};
    Table table;
    table.columns = {"k", "rho", "side", "bound", "empirical", "std_error"};
    std::vector<double> sample(static_cast<size_t>(config.trials));
    std::uint64_t cell = 0;
    for (int k : ks) {
        for (double rho : rhos) {
            ++cell;
            parallel_trials(config.trials, config.threads, [&](long long t) {
                RngStream stream(config.master_seed, cell * kBlock + static_cast<std::uint64_t>(t));
                const double numerator = sample_gamma(stream, {0.5 * k});
                const double denominator = sample_gamma(stream, {0.5 * (k + 1)});
                sample[static_cast<size_t>(t)] = numerator / denominator;
            });
            for (TailSide side : {TailSide::Above, TailSide::Below}) {
                const double bound = tail_bound_upper(k, rho, side);
                long long count = 0;
                for (double r : sample) {
                    count += (side == TailSide::Above ? r >= 1.0 + rho : r <= 1.0 - rho) ? 1 : 0;
                }
                const double empirical =
                    static_cast<double>(count) / static_cast<double>(config.trials);
                const double se = std::sqrt(empirical * (1.0 - empirical) /
                                            static_cast<double>(config.trials));
                table.rows.push_back({Cell::intval(k), Cell::num(rho),
                                      Cell::textval(side == TailSide::Above ? "above" : "below"),
                                      Cell::num(bound), Cell::num(empirical), Cell::num(se)});
            }
        }
    }
    emit_tables(config, {{"tail_bounds", table}}, seconds_since(start));
}

void run_norm_asymptotics(const CliOptions& o) {
    const auto start = Clock::now();
    ExperimentConfig config = make_config(o, "norm-asymptotics");
    if (config.n_list.empty()) {
        config.n_list = {128, 256, 512, 1024};
    }
    config.out_path = default_out(o, "norm-asymptotics");
    const std::vector<NormCheckRow> rows = asymptotic_norm_checks(config);
    Table table;
    table.columns = {"check", "n", "value", "reference", "std_error"};
    for (const auto& row : rows) {
        table.rows.push_back({Cell::textval(row.check), Cell::intval(row.n), Cell::num(row.value),
                              Cell::num(row.reference), Cell::num(row.std_error)});
    }
    emit_tables(config, {{"norm_asymptotics", table}}, seconds_since(start));
}

void run_schnorr(const CliOptions& o, int k) {
    const auto start = Clock::now();
    ExperimentConfig config = make_config(o, "schnorr");
    if (config.n_list.empty()) {
        config.n_list = {64};
    }
    config.k = k;
    config.out_path = default_out(o, "schnorr");
    if (config.n_list.size() != 1) {
        throw std::invalid_argument("exactly one --n value is required here");
    }
    const int n = config.n_list.front();
    const int g = fixed_g(config.g_spec);
    if (k < 1) {
        throw std::invalid_argument("block size k must be positive");
    }
    const int p = n - g;
    if (p / k < 2) {
        throw std::invalid_argument("need at least two full blocks: p/k >= 2");
    }

    std::vector<double> finite(static_cast<size_t>(config.trials));
    parallel_trials(config.trials, config.threads, [&](long long t) {
        RngStream stream(config.master_seed, kBlock + static_cast<std::uint64_t>(t));
        std::vector<double> hat;
        if (config.exact_gso) {
            const Basis basis = sample_basis(stream, config.model, n, g);
            hat = gram_schmidt(basis).hat_norms_sq;
        } else {
            hat = sample_gso_norms_direct(stream, config.model, n, g).hat_norms_sq;
        }
        finite[static_cast<size_t>(t)] = schnorr_level_from_norms(hat, n, k, g);
    });

    const int r_min = (g + k) / k;  // smallest block index with k*r >= g+1
    const int r_max = r_min + 63;
    std::vector<double> limit(static_cast<size_t>(config.trials));
    parallel_trials(config.trials, config.threads, [&](long long t) {
        RngStream stream(config.master_seed, 100 * kBlock + static_cast<std::uint64_t>(t));
        const std::vector<double> ratios = limit_schnorr_process(stream, k, r_max);
        double level = ratios[static_cast<size_t>(r_min - 1)];
        for (int r = r_min + 1; r <= r_max; ++r) {
            level = std::min(level, ratios[static_cast<size_t>(r - 1)]);
        }
        limit[static_cast<size_t>(t)] = level;
    });

    const auto [finite_mean, finite_se] = mean_and_se(finite);
    const auto [limit_mean, limit_se] = mean_and_se(limit);
    Table table;
    table.columns = {"side", "k", "n", "trials", "mean_level", "std_error"};
    table.rows.push_back({Cell::textval("finite"), Cell::intval(k), Cell::intval(n),
                          Cell::intval(config.trials), Cell::num(finite_mean),
                          Cell::num(finite_se)});
    table.rows.push_back({Cell::textval("limit"), Cell::intval(k), Cell::intval(0),
                          Cell::intval(config.trials), Cell::num(limit_mean),
                          Cell::num(limit_se)});
    emit_tables(config, {{"schnorr", table}}, seconds_since(start));
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Monte Carlo statistics of random lattice bases and their reduction levels"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));
    CliOptions o;

    auto* gen = app.add_subcommand("gen", "sample a random basis and write it as text");
    gen->add_option("--model", o.model, "sphere, ball or gauss")->capture_default_str();
    gen->add_option("--n", o.n_list, "ambient dimension")->required();
    gen->add_option("--g", o.g_text, "codimension: integer, 'half' or 'c:<fraction>'")
        ->capture_default_str();
    gen->add_option("--seed", o.seed, "master seed")->capture_default_str();
    gen->add_option("--out", o.out, "output file ('-' or empty: stdout)");

    auto* gso = app.add_subcommand("gso", "orthogonalize a basis and report norms and coefficients");
    gso->add_option("--in", o.in, "basis file ('-' = stdin)")->required();
    gso->add_option("--out", o.out, "output file ('-' or empty: stdout)");
    gso->add_option("--format", o.format, "csv or json")->capture_default_str();

    auto* lll = app.add_subcommand("lll", "reduce a basis");
    lll->add_option("--in", o.in, "basis file ('-' = stdin)")->required();
    auto* s_opt = lll->add_option("--s", o.s, "reduce until consecutive ratios exceed s^2");
    auto* d_opt =
        lll->add_option("--delta", o.delta, "reduce under the strong condition with this delta");
    s_opt->excludes(d_opt);
    lll->add_option("--max-iter", o.max_iterations, "iteration cap (0 = automatic)");
    lll->add_option("--out", o.out, "reduced basis file ('-' or empty: stdout)");

    auto* reduce = app.add_subcommand("reduce", "sample bases and record their reduction levels");
    reduce->add_option("--model", o.model, "sphere, ball or gauss")->capture_default_str();
    reduce->add_option("--n", o.n_list, "ambient dimension")->required();
    reduce->add_option("--g", o.g_text, "codimension: integer, 'half' or 'c:<fraction>'")
        ->capture_default_str();
    reduce->add_option("--s", o.s, "reduction threshold parameter")->capture_default_str();
    reduce->add_option("--trials", o.trials, "number of sampled bases")->capture_default_str();
    reduce->add_option("--seed", o.seed, "master seed")->capture_default_str();
    reduce->add_option("--threads", o.threads, "worker threads")->capture_default_str();
    reduce->add_option("--out", o.out, "output file (default reduce.<format>)");
    reduce->add_option("--format", o.format, "csv or json")->capture_default_str();
    reduce->add_flag("--exact-gso", o.exact_gso,
                     "orthogonalize full bases instead of drawing norms directly");
    reduce->add_flag("--timing", o.timing, "include wall time in JSON meta");

    auto* limit = app.add_subcommand("limit", "sample the limit ratio chain and its minimum");
    limit->add_option("--g", o.g_text, "codimension (integer)")->capture_default_str();
    limit->add_option("--trials", o.trials, "number of sampled chains")->capture_default_str();
    limit->add_option("--seed", o.seed, "master seed")->capture_default_str();
    limit->add_option("--threads", o.threads, "worker threads")->capture_default_str();
    limit->add_option("--eps", o.epsilon, "truncation tail bound")->capture_default_str();
    limit->add_option("--out", o.out, "output file (default limit.<format>)");
    limit->add_option("--format", o.format, "csv or json")->capture_default_str();
    limit->add_flag("--timing", o.timing, "include wall time in JSON meta");

    auto* exp = app.add_subcommand("experiment", "run a named study");
    exp->add_option("name", o.experiment_name,
                    "one of: reduced-prob, finite-vs-limit, figure-sim2, clt, tail-bounds, "
                    "norm-asymptotics, schnorr")
        ->required();
    exp->add_option("--model", o.model, "sphere, ball or gauss")->capture_default_str();
    exp->add_option("--n", o.n_list, "dimension(s)");
    exp->add_option("--g", o.g_text, "codimension: integer, 'half' or 'c:<fraction>'")
        ->capture_default_str();
    exp->add_option("--s", o.s, "reduction threshold parameter")->capture_default_str();
    auto* k_opt = exp->add_option("--k", o.k, "block size / chain index where applicable");
    exp->add_option("--trials", o.trials, "Monte Carlo trials")->capture_default_str();
    exp->add_option("--limit-trials", o.limit_trials,
                    "trials for the limit side (0 = same as --trials)");
    exp->add_option("--seed", o.seed, "master seed")->capture_default_str();
    exp->add_option("--threads", o.threads, "worker threads")->capture_default_str();
    exp->add_option("--eps", o.epsilon, "limit-chain truncation tail bound")
        ->capture_default_str();
    exp->add_option("--out", o.out, "output file (default <name>.<format>)");
    exp->add_option("--format", o.format, "csv or json")->capture_default_str();
    exp->add_flag("--exact-gso", o.exact_gso,
                  "orthogonalize full bases instead of drawing norms directly");
    exp->add_flag("--timing", o.timing, "include wall time in JSON meta");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) {
            cmd_gen(o);
        } else if (*gso) {
            cmd_gso(o);
        } else if (*lll) {
            cmd_lll(o, d_opt->count() > 0);
        } else if (*reduce) {
            cmd_reduce(o);
        } else if (*limit) {
            cmd_limit(o);
        } else if (*exp) {
            const bool k_given = k_opt->count() > 0;
            if (o.experiment_name == "reduced-prob") {
                run_reduced_prob(o);
            } else if (o.experiment_name == "finite-vs-limit") {
                run_finite_vs_limit(o);
            } else if (o.experiment_name == "figure-sim2") {
                run_figure_sim2(o);
            } else if (o.experiment_name == "clt") {
                run_clt(o, k_given ? o.k : 10000);
            } else if (o.experiment_name == "tail-bounds") {
                run_tail_bounds(o);
            } else if (o.experiment_name == "norm-asymptotics") {
                run_norm_asymptotics(o);
            } else if (o.experiment_name == "schnorr") {
                run_schnorr(o, k_given ? o.k : 2);
            } else {
                throw std::invalid_argument("unknown experiment '" + o.experiment_name + "'");
            }
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace latred
