#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "latnet/generators.hpp"
#include "latnet/ordering.hpp"

namespace latnet {

enum class ExperimentKind { Misclustering, Degree, Mse, Dependence, Phase };

const char* experiment_kind_name(ExperimentKind kind);
ExperimentKind experiment_kind_from_name(const std::string& name);

/// Configuration of one Monte Carlo study. The model is kept as the JSON
/// object text from the config file ("model" key) and instantiated per cell;
/// see README for the schema. Cell seeds derive from the master seed by cell
/// index, replication seeds from the cell seed by replication index, so
/// reports are independent of thread count.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Degree;
    std::string model_json;
    std::vector<int> n_list;
    std::vector<OrderingKind> orderings;
    int replications = 1;
    std::uint64_t seed = 0;
    int k = 2;                       // group count for clustering / estimation
    std::string output_dir;          // empty: no files written
    int threads = 0;                 // 0 = hardware concurrency
    std::vector<int> k_steps = {1, 2, 3, 4, 5, 6};  // dependence lags
    std::vector<double> lambdas;     // phase transition rates
    int restarts = 10;
    int max_iters = 100;
};

ExperimentConfig load_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config(const std::string& json_text);

struct CellResult {
    std::string name;
    bool ok = false;
    std::string error;
    std::vector<double> samples;            // primary metric, ordered by replication
    std::map<std::string, double> summary;  // mean/median/q025/q975 plus kind-specific keys
};

struct ExperimentReport {
    std::vector<CellResult> cells;
    bool all_ok = false;

    const CellResult* cell(const std::string& name) const;
};

/// Runs every cell of the study; failures are recorded per cell and leave
/// all_ok false. With a nonempty output_dir, writes per-cell CSVs, SVG charts
/// and report.json (byte-stable across runs and thread counts).
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Type-1 empirical quantiles: order statistic at rank ceil(q * R).
std::pair<double, double> quantile_bands(std::vector<double> samples, double q_lo = 0.025,
                                         double q_hi = 0.975);

/// Instantiates a config-file model object (JSON text, same schema as the
/// "model" key; see README) at a given node count.
GeneratorSpec model_from_json(const std::string& model_json, int n);

} // namespace latnet
