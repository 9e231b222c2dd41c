#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "latred/experiments.hpp"
#include "test_util.hpp"

using latred::ExperimentConfig;
using latred::GSpec;
using latred::SphericalModel;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli_args(std::vector<std::string> args) {
    args.insert(args.begin(), "latred");
    std::vector<char*> argv;
    argv.reserve(args.size());
    for (auto& s : args) argv.push_back(s.data());
    return latred::run_cli(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "latred_test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("codimension rules parse, describe and resolve") {
    CHECK(GSpec::parse("12").resolve(20) == 12);
    CHECK(GSpec::parse("0").resolve(2) == 0);
    CHECK(GSpec::parse("half").resolve(64) == 32);
    CHECK(GSpec::parse("half").resolve(7) == 3);
    CHECK(GSpec::parse("c:0.25").resolve(64) == 15);  // 0.25*64 - 1
    CHECK(GSpec::fixed(3).describe() == GSpec::parse("3").describe());
    CHECK_THROWS_AS(GSpec::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(GSpec::parse("c:1.5"), std::invalid_argument);
    CHECK_THROWS_AS(GSpec::parse("c:0"), std::invalid_argument);
    CHECK_THROWS_AS(GSpec::parse("banana"), std::invalid_argument);
    CHECK_THROWS_AS(GSpec::parse("-1"), std::invalid_argument);
    CHECK_THROWS_AS(GSpec::fixed(12).resolve(13), std::invalid_argument);  // g > n-2
    CHECK_THROWS_AS(GSpec::fixed(0).resolve(1), std::invalid_argument);
}

TEST_CASE("reduction probability threshold in the proportional regime") {
    // closed form at c = 1/2: (1/2) * (1/2)^1 * (3/2)^2 = 9/16
    CHECK(latred::akhavi_threshold(0.5) == doctest::Approx(0.5625).epsilon(1e-12));
    // approaches 1/2 as c -> 0
    CHECK(latred::akhavi_threshold(1e-6) == doctest::Approx(0.5).epsilon(1e-4));
    // increasing in c
    double prev = 0.0;
    for (double c : {0.05, 0.2, 0.4, 0.6, 0.8, 0.95}) {
        const double v = latred::akhavi_threshold(c);
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS_AS(latred::akhavi_threshold(0.0), std::invalid_argument);
    CHECK_THROWS_AS(latred::akhavi_threshold(1.0), std::invalid_argument);
}

TEST_CASE("two-sample Kolmogorov-Smirnov distance") {
    CHECK(latred::ks_distance({1.0, 2.0, 3.0}, {1.5}) == doctest::Approx(2.0 / 3.0));
    CHECK(latred::ks_distance({1.0, 2.0}, {1.0, 2.0}) == doctest::Approx(0.0));
    CHECK(latred::ks_distance({1.0}, {5.0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(latred::ks_distance({}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(latred::ks_distance({2.0, 1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("trial scheduler covers every slot on any thread count") {
    for (int threads : {1, 3, 8}) {
        std::vector<long long> slots(1000, -1);
        latred::parallel_trials(1000, threads, [&](long long t) {
            slots[static_cast<size_t>(t)] = 2 * t + 1;
        });
        for (long long t = 0; t < 1000; ++t) {
            CHECK(slots[static_cast<size_t>(t)] == 2 * t + 1);
        }
    }
    // zero trials is a no-op
    latred::parallel_trials(0, 4, [](long long) { throw std::runtime_error("unreachable"); });
    // a worker exception is rethrown to the caller
    CHECK_THROWS_AS(latred::parallel_trials(500, 4,
                                            [](long long t) {
                                                if (t == 137) {
                                                    throw std::runtime_error("boom");
                                                }
                                            }),
                    std::runtime_error);
}

TEST_CASE("sampled levels are bitwise identical across thread counts") {
    const auto one = latred::sample_finite_levels(SphericalModel::ball(), 14, 2, 400, 99, 7, 1,
                                                  false);
    const auto four = latred::sample_finite_levels(SphericalModel::ball(), 14, 2, 400, 99, 7, 4,
                                                   false);
    REQUIRE(one.size() == 400);
    CHECK(one == four);

    std::vector<int> wi_one;
    std::vector<int> wi_four;
    const auto la = latred::sample_limit_levels(1, 300, 99, 7, 1, 1e-6, &wi_one);
    const auto lb = latred::sample_limit_levels(1, 300, 99, 7, 4, 1e-6, &wi_four);
    CHECK(la == lb);
    CHECK(wi_one == wi_four);
    for (int w : wi_one) CHECK(w >= 2);
}

TEST_CASE("direct sampler and full pipeline estimate the same probability") {
    ExperimentConfig config;
    config.model = SphericalModel::ball();
    config.n_list = {12};
    config.g_spec = GSpec::fixed(0);
    config.s = 0.5;
    config.trials = 4000;
    config.master_seed = 5;
    config.threads = 2;
    const auto rows = latred::estimate_reduced_probability(config);
    REQUIRE(rows.size() == 2);  // one direct row plus the cross-validation row
    CHECK(rows[0].method == "direct");
    CHECK(rows[1].method == "exact");
    CHECK(rows[0].n == 12);
    CHECK(rows[1].n == 12);
    CHECK(rows[0].g == 0);
    const double spread =
        std::sqrt(rows[0].std_error * rows[0].std_error + rows[1].std_error * rows[1].std_error);
    CHECK(std::fabs(rows[0].estimate - rows[1].estimate) < 5.0 * spread + 1e-9);

    config.exact_gso = true;
    const auto exact_rows = latred::estimate_reduced_probability(config);
    REQUIRE(exact_rows.size() == 1);
    CHECK(exact_rows[0].method == "exact");
}

TEST_CASE("finite levels approach the limit chain as n grows") {
    ExperimentConfig config;
    config.model = SphericalModel::ball();
    config.n_list = {12, 48};
    config.trials = 4000;
    config.master_seed = 3;
    config.threads = 2;
    const auto rows = latred::finite_vs_limit_level(config, 0);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 12);
    CHECK(rows[1].n == 48);
    CHECK(rows[0].ks > 0.0);
    CHECK(rows[0].ks <= 1.0);
    CHECK(rows[1].ks < rows[0].ks);
}

TEST_CASE("argmin index histograms share a support and a small gap") {
    ExperimentConfig config;
    config.model = SphericalModel::ball();
    config.n_list = {16, 48};
    config.trials = 3000;
    config.limit_trials = 3000;
    config.master_seed = 4;
    config.threads = 2;
    const auto cmp = latred::worst_index_histogram(config, 1);
    CHECK(cmp.finite_n == 48);
    CHECK(cmp.finite.first_index == 2);
    CHECK(cmp.limit.first_index == 2);
    REQUIRE(!cmp.finite.counts.empty());
    REQUIRE(cmp.finite.counts.size() == cmp.limit.counts.size());
    long long finite_total = 0;
    for (long long c : cmp.finite.counts) finite_total += c;
    CHECK(finite_total == 3000);
    CHECK(cmp.total_variation >= 0.0);
    CHECK(cmp.total_variation < 0.25);
}

TEST_CASE("orthogonalized-norm convergence checks report all statistics") {
    ExperimentConfig config;
    config.model = SphericalModel::ball();
    config.n_list = {64, 256};
    config.trials = 2000;
    config.master_seed = 6;
    config.threads = 2;
    const auto rows = latred::asymptotic_norm_checks(config);
    const std::vector<std::string> names = {"scaled_y_tail_ks",   "fixed_y_near_one",
                                            "scaled_norm_tail_ks", "fixed_norm_near_one",
                                            "window_slow_mean",    "window_half_mean"};
    REQUIRE(rows.size() == names.size() * 2);
    for (int block = 0; block < 2; ++block) {
        const int n = block == 0 ? 64 : 256;
        for (size_t i = 0; i < names.size(); ++i) {
            const auto& row = rows[static_cast<size_t>(block) * names.size() + i];
            CHECK(row.check == names[i]);
            CHECK(row.n == n);
        }
    }
    // the windowed means sit near their limit constants at the larger n
    for (const auto& row : rows) {
        if (row.n != 256) continue;
        if (row.check == "window_slow_mean") {
            CHECK(row.value == doctest::Approx(1.0).epsilon(0.1));
            CHECK(row.reference == 1.0);
        }
        if (row.check == "window_half_mean") {
            CHECK(row.value == doctest::Approx(0.5).epsilon(0.1));
            CHECK(row.reference == 0.5);
        }
        if (row.check == "fixed_norm_near_one") {
            CHECK(row.value < 0.2);
        }
    }
    config.n_list = {8};
    CHECK_THROWS_AS(latred::asymptotic_norm_checks(config), std::invalid_argument);
}

TEST_CASE("doubles survive a text round trip") {
    for (double v : {0.1, 1.0 / 3.0, -2.5, 1e-300, 12345.678901234567, 0.0}) {
        const std::string text = latred::format_double(v);
        CHECK(std::stod(text) == v);
    }
    CHECK(latred::format_double(1.5) == "1.5");
}

TEST_CASE("table rendering") {
    latred::Table table;
    table.columns = {"a", "b", "c"};
    table.rows.push_back({latred::Cell::num(1.5), latred::Cell::intval(7),
                          latred::Cell::textval("x")});
    CHECK(latred::render_csv(table) == "a,b,c\n1.5,7,x\n");
    table.rows.push_back({latred::Cell::num(0.0)});
    CHECK_THROWS_AS(latred::render_csv(table), std::invalid_argument);
}

TEST_CASE("csv and basis files are written atomically and round trip") {
    const auto dir = temp_dir();
    const auto csv_path = dir / "table.csv";
    latred::Table table;
    table.columns = {"n", "value"};
    table.rows.push_back({latred::Cell::intval(4), latred::Cell::num(0.25)});
    latred::write_csv_file(csv_path.string(), table);
    CHECK(slurp(csv_path) == "n,value\n4,0.25\n");

    latred::Basis basis(3, 2);
    basis.col(0)[0] = 1.0;
    basis.col(0)[1] = 2.0;
    basis.col(0)[2] = 3.0;
    basis.col(1)[0] = 0.125;
    basis.col(1)[1] = -4.0;
    basis.col(1)[2] = 1.0 / 3.0;
    const auto basis_path = dir / "basis.txt";
    latred::write_basis_file(basis_path.string(), basis);
    const latred::Basis back = latred::read_basis_file(basis_path.string());
    CHECK(back.n == 3);
    CHECK(back.p == 2);
    CHECK(back.data == basis.data);

    // no temporary droppings left behind
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        CHECK(entry.path().extension() != ".tmp");
    }

    CHECK_THROWS_AS(latred::read_basis_file((dir / "missing.txt").string()),
                    std::runtime_error);
    std::ofstream bad(dir / "bad.txt");
    bad << "2 2\n1 2\n";  // one row short
    bad.close();
    CHECK_THROWS_AS(latred::read_basis_file((dir / "bad.txt").string()), std::runtime_error);
}

TEST_CASE("json output carries config, results and meta") {
    const auto dir = temp_dir();
    const auto path = dir / "out.json";
    ExperimentConfig config;
    config.name = "demo";
    config.model = SphericalModel::gaussian();
    config.n_list = {8, 16};
    config.g_spec = GSpec::parse("half");
    config.trials = 10;
    config.master_seed = 42;
    latred::Table table;
    table.columns = {"n", "value", "tag"};
    table.rows.push_back(
        {latred::Cell::intval(8), latred::Cell::num(0.5), latred::Cell::textval("ok")});
    latred::write_json_file(path.string(), config, {{"rows", table}}, 1.25);
    const auto doc = nlohmann::json::parse(slurp(path));
    CHECK(doc.at("config").at("name") == "demo");
    CHECK(doc.at("config").at("model") == "gauss");
    CHECK(doc.at("config").at("n") == nlohmann::json::array({8, 16}));
    CHECK(doc.at("config").at("seed") == 42);
    // thread count and output path must not leak into the document
    CHECK(!doc.at("config").contains("threads"));
    CHECK(!doc.at("config").contains("out_path"));
    CHECK(doc.at("results").at("rows").size() == 1);
    CHECK(doc.at("results").at("rows")[0].at("n") == 8);
    CHECK(doc.at("results").at("rows")[0].at("value") == 0.5);
    CHECK(doc.at("results").at("rows")[0].at("tag") == "ok");
    CHECK(doc.at("meta").at("version") == latred::kVersion);
    CHECK(!doc.at("meta").contains("wall_time_seconds"));

    config.timing = true;
    latred::write_json_file(path.string(), config, {{"rows", table}}, 1.25);
    const auto timed = nlohmann::json::parse(slurp(path));
    CHECK(timed.at("meta").at("wall_time_seconds") == 1.25);
}

TEST_CASE("command line exit codes") {
    const auto dir = temp_dir();
    CHECK(run_cli_args({"--version"}) == 0);
    CHECK(run_cli_args({"--help"}) == 0);
    CHECK(run_cli_args({"definitely-not-a-command"}) == 2);
    CHECK(run_cli_args({"reduce", "--no-such-flag"}) == 2);
    // g = n - 1 violates g <= n - 2
    CHECK(run_cli_args({"gen", "--n", "4", "--g", "3",
                        "--out", (dir / "gen.txt").string()}) == 2);
    CHECK(run_cli_args({"reduce", "--n", "10", "--trials", "50", "--seed", "2",
                        "--out", (dir / "reduce.json").string(), "--format", "json"}) == 0);
    const auto doc = nlohmann::json::parse(slurp(dir / "reduce.json"));
    CHECK(doc.at("results").at("summary").size() == 1);
    CHECK(doc.at("results").at("trials").size() == 50);
}

TEST_CASE("repeat runs are byte identical across thread counts") {
    const auto dir = temp_dir();
    const auto a = dir / "rep_a.json";
    const auto b = dir / "rep_b.json";
    const auto c = dir / "rep_c.json";
    CHECK(run_cli_args({"reduce", "--n", "12", "--trials", "200", "--seed", "11",
                        "--threads", "1", "--format", "json", "--out", a.string()}) == 0);
    CHECK(run_cli_args({"reduce", "--n", "12", "--trials", "200", "--seed", "11",
                        "--threads", "3", "--format", "json", "--out", b.string()}) == 0);
    CHECK(run_cli_args({"reduce", "--n", "12", "--trials", "200", "--seed", "12",
                        "--threads", "1", "--format", "json", "--out", c.string()}) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) != slurp(c));
}

}  // TEST_SUITE
