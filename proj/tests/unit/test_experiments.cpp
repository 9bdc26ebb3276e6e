#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "latnet/experiments.hpp"

using namespace latnet;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::map<std::string, std::string> dir_contents(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::directory_iterator(dir))
        out[entry.path().filename().string()] = slurp(entry.path());
    return out;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("quantile bands use the ceil(qR) order statistic") {
    std::vector<double> samples;
    for (int i = 1; i <= 1000; ++i) samples.push_back(i);
    const auto [lo, hi] = quantile_bands(samples);
    CHECK(lo == doctest::Approx(25.0));
    CHECK(hi == doctest::Approx(975.0));

    const auto [slo, shi] = quantile_bands({7.0});
    CHECK(slo == doctest::Approx(7.0));
    CHECK(shi == doctest::Approx(7.0));

    CHECK_THROWS_AS(quantile_bands({}), std::invalid_argument);
}

TEST_CASE("config parsing") {
    const std::string text = R"({
        "kind": "misclustering",
        "model": {"type": "csbm", "preset": "two_group"},
        "n": [40, 60],
        "orderings": ["omega1", "omega2"],
        "replications": 4,
        "seed": 99,
        "threads": 1
    })";
    const auto config = parse_experiment_config(text);
    CHECK(config.kind == ExperimentKind::Misclustering);
    CHECK(config.n_list == std::vector<int>{40, 60});
    CHECK(config.orderings.size() == 2);
    CHECK(config.replications == 4);
    CHECK(config.seed == 99);

    CHECK_THROWS(parse_experiment_config(R"({"kind": "nope", "model": {}, "n": 4})"));
    CHECK_THROWS(parse_experiment_config(R"({"kind": "degree", "model": {}})"));
}

TEST_CASE("model instantiation from json") {
    CHECK_NOTHROW(model_from_json(R"({"type":"mecltg","p0":0.2,"p1":0.6})", 10));
    CHECK_NOTHROW(model_from_json(R"({"type":"mecltg","lambda0":1,"lambda1":1,"c":0.3})", 100));
    CHECK_NOTHROW(model_from_json(R"({"type":"erdos_renyi","p":0.25})", 10));
    CHECK_NOTHROW(model_from_json(R"({"type":"csbm","preset":"two_group"})", 10));
    CHECK_NOTHROW(model_from_json(R"({"type":"csbm","preset":"three_group"})", 12));
    CHECK_NOTHROW(model_from_json(
        R"({"type":"csbm","k":2,"rho0_diag":[0.1,0.01,0.2],
            "rho1":[[0.4,0.05,0.3],[0.3,0.1,0.1],[0.2,0.03,0.6]]})",
        10));
    CHECK_NOTHROW(model_from_json(
        R"({"type":"graphon","f":{"name":"mean"},"persistence":0.2,"alpha":1.0})", 10));
    CHECK_NOTHROW(model_from_json(
        R"({"type":"graphon","f":{"name":"blocks","thresholds":[0.5],
            "table":[[0.7,0.2],[0.2,0.5]]}})",
        10));
    CHECK_NOTHROW(model_from_json(R"({"type":"inhom","target":0.3,"q1":0.5})", 10));
    CHECK_NOTHROW(model_from_json(R"({"type":"inhom","target":0.3,"q1":[0.5,0.1]})", 10));
    CHECK_NOTHROW(model_from_json(R"({"type":"mecltg","p0":0.5,"p1":0.5,"sparse_rho":0.5})", 10));
    CHECK_THROWS(model_from_json(R"({"type":"unknown"})", 10));
    CHECK_THROWS(model_from_json(R"({"type":"csbm","preset":"nope"})", 10));
}

TEST_CASE("degree experiment with one replication reports the complete-graph histogram") {
    const fs::path dir = fresh_dir("latnet_test_degree_k4");
    ExperimentConfig config;
    config.kind = ExperimentKind::Degree;
    config.model_json = R"({"type":"erdos_renyi","p":1.0})";
    config.n_list = {4};
    config.orderings = {OrderingKind::Omega1};
    config.replications = 1;
    config.seed = 5;
    config.threads = 1;
    config.output_dir = dir.string();

    const auto report = run_experiment(config);
    CHECK(report.all_ok);
    const std::string csv = slurp(dir / "degree_n4_omega1.csv");
    CHECK(csv == "k,count,freq\n3,4,1\n");
    CHECK(fs::exists(dir / "report.json"));
    fs::remove_all(dir);
}

TEST_CASE("experiments are byte-deterministic and thread-count independent") {
    ExperimentConfig config;
    config.kind = ExperimentKind::Misclustering;
    config.model_json = R"({"type":"csbm","preset":"two_group"})";
    config.n_list = {24, 32};
    config.orderings = {OrderingKind::Omega1, OrderingKind::Omega2};
    config.replications = 6;
    config.seed = 1234;

    const fs::path dir_a = fresh_dir("latnet_test_det_a");
    const fs::path dir_b = fresh_dir("latnet_test_det_b");
    const fs::path dir_c = fresh_dir("latnet_test_det_c");

    config.threads = 1;
    config.output_dir = dir_a.string();
    run_experiment(config);
    config.output_dir = dir_b.string();
    run_experiment(config);
    config.threads = 4;
    config.output_dir = dir_c.string();
    run_experiment(config);

    const auto a = dir_contents(dir_a), b = dir_contents(dir_b), c = dir_contents(dir_c);
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a.count("report.json") == 1);
    CHECK(a.count("misclustering_n24_omega1.csv") == 1);
    CHECK(a.count("misclustering_omega1.svg") == 1);

    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    fs::remove_all(dir_c);
}

TEST_CASE("cell failures are recorded and fail the report") {
    ExperimentConfig config;
    config.kind = ExperimentKind::Mse;
    config.model_json = R"({"type":"mecltg","p0":0.2,"p1":0.6})"; // no theta, no k
    config.n_list = {10};
    config.orderings = {OrderingKind::Omega1};
    config.replications = 2;
    config.threads = 1;
    config.k = 0;

    const auto report = run_experiment(config);
    CHECK_FALSE(report.all_ok);
    REQUIRE(report.cells.size() == 1);
    CHECK_FALSE(report.cells[0].ok);
    CHECK_FALSE(report.cells[0].error.empty());
}

TEST_CASE("phase experiment records domination and connectivity") {
    ExperimentConfig config;
    config.kind = ExperimentKind::Phase;
    config.model_json = R"({"type":"mecltg","log_rates":true,"lambda0":1,"lambda1":1})";
    config.n_list = {60};
    config.orderings = {OrderingKind::Omega1};
    config.lambdas = {0.3, 3.0};
    config.replications = 10;
    config.threads = 2;
    config.seed = 77;

    const auto report = run_experiment(config);
    CHECK(report.all_ok);
    const auto* sparse = report.cell("n60_omega1_lambda0.3");
    const auto* dense = report.cell("n60_omega1_lambda3");
    REQUIRE(sparse != nullptr);
    REQUIRE(dense != nullptr);
    CHECK(sparse->summary.at("domination_fraction") == doctest::Approx(1.0));
    CHECK(dense->summary.at("domination_fraction") == doctest::Approx(1.0));
    CHECK(dense->summary.at("connected_fraction") >=
          sparse->summary.at("connected_fraction"));
}

TEST_CASE("dependence experiment reports empirical and closed-form decay") {
    ExperimentConfig config;
    config.kind = ExperimentKind::Dependence;
    config.model_json = R"({"type":"mecltg","p0":0.2,"p1":0.6})";
    config.n_list = {30};
    config.orderings = {OrderingKind::Omega1};
    config.k_steps = {1, 2};
    config.replications = 400;
    config.threads = 2;
    config.seed = 11;

    const auto report = run_experiment(config);
    CHECK(report.all_ok);
    const auto* cell = report.cell("n30_omega1");
    REQUIRE(cell != nullptr);
    CHECK(cell->summary.count("delta_1") == 1);
    CHECK(cell->summary.count("closed_1") == 1);
    CHECK(cell->summary.at("delta_1") > cell->summary.at("delta_2") - 0.1);
}
