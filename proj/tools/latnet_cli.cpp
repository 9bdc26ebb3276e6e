// Command-line front end: generate graphs, estimate block structure, run
// spectral clustering, summarize degrees, and drive config-based experiments.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "latnet/degrees.hpp"
#include "latnet/estimation.hpp"
#include "latnet/experiments.hpp"
#include "latnet/generators.hpp"
#include "latnet/graph.hpp"
#include "latnet/spectral.hpp"

using namespace latnet;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void dump_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

struct GenerateArgs {
    std::string model_text;
    std::string model_file;
    int n = 0;
    std::string ordering = "omega1";
    std::uint64_t ordering_seed = 0;
    bool has_ordering_seed = false;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string meta_path;
};

int run_generate(const GenerateArgs& args) {
    const std::string model_text = args.model_file.empty() ? args.model_text : slurp(args.model_file);
    if (model_text.empty()) throw std::runtime_error("generate needs --model or --model-file");

    const OrderingKind kind = ordering_kind_from_name(args.ordering);
    std::optional<std::uint64_t> oseed;
    if (args.has_ordering_seed) oseed = args.ordering_seed;
    const Ordering ordering = make_ordering(kind, args.n, oseed);
    const GeneratorSpec spec = model_from_json(model_text, args.n);
    const Graph g = generate(spec, ordering, args.seed);

    if (args.out_path.empty() || args.out_path == "-")
        write_edge_list(std::cout, g);
    else
        write_edge_list_file(args.out_path, g);

    if (!args.meta_path.empty()) {
        json meta;
        meta["model"] = json::parse(model_text);
        meta["n"] = args.n;
        meta["seed"] = args.seed;
        meta["ordering"] = ordering_kind_name(kind);
        if (oseed) meta["ordering_seed"] = *oseed;
        if (g.truth) meta["truth"] = g.truth->labels;
        if (const auto* csbm = std::get_if<CsbmParams>(&spec.model)) {
            json blocks = json::array();
            for (int a = 1; a <= csbm->k; ++a) {
                json row = json::array();
                for (int b = 1; b <= csbm->k; ++b)
                    row.push_back(csbm->rho[CsbmParams::block_pair_index(csbm->k, a, b)]);
                blocks.push_back(std::move(row));
            }
            meta["theta_blocks"] = std::move(blocks);
        }
        dump_json(args.meta_path, meta);
    }
    return 0;
}

struct EstimateArgs {
    std::string in_path;
    int k = 2;
    int restarts = 10;
    int max_iters = 100;
    std::uint64_t seed = 0;
    bool exact = false;
    std::string out_path;
    std::string theta_path;
};

int run_estimate(const EstimateArgs& args) {
    const Graph g = read_edge_list_file(args.in_path);
    const BlockEstimate est = args.exact
                                  ? cls_exact(g, args.k)
                                  : cls_heuristic(g, args.k, args.restarts, args.max_iters, args.seed);
    json out;
    out["k"] = args.k;
    out["labels"] = est.z.labels;
    json Q = json::array();
    for (int a = 0; a < args.k; ++a) {
        json row = json::array();
        for (int b = 0; b < args.k; ++b) row.push_back(est.Q(a, b));
        Q.push_back(std::move(row));
    }
    out["Q"] = std::move(Q);
    out["loss"] = est.loss;
    if (args.out_path.empty() || args.out_path == "-")
        std::cout << out.dump(2) << std::endl;
    else
        dump_json(args.out_path, out);

    if (!args.theta_path.empty()) {
        std::ofstream theta(args.theta_path);
        if (!theta) throw std::runtime_error("cannot open " + args.theta_path + " for writing");
        const Eigen::MatrixXd th = est.theta_hat();
        for (int i = 0; i < th.rows(); ++i) {
            for (int j = 0; j < th.cols(); ++j) theta << (j ? "," : "") << th(i, j);
            theta << '\n';
        }
    }
    return 0;
}

struct ClusterArgs {
    std::string in_path;
    std::string truth_path;
    int k = 2;
    std::uint64_t seed = 0;
    std::string out_path;
};

int run_cluster(const ClusterArgs& args) {
    Graph g = read_edge_list_file(args.in_path);
    if (!args.truth_path.empty()) {
        std::ifstream truth(args.truth_path);
        if (!truth) throw std::runtime_error("cannot open " + args.truth_path);
        g.truth = read_labels(truth);
        if (g.truth->n != g.n()) throw std::runtime_error("truth labels do not match graph size");
    }
    const ClusterResult res = spectral_cluster(g, args.k, args.seed);
    json out;
    out["labels"] = res.assignment.labels;
    if (res.misclustered) out["misclustered"] = *res.misclustered;
    json evs = json::array();
    for (int i = 0; i < res.eigenvalues.size(); ++i) evs.push_back(res.eigenvalues(i));
    out["eigenvalues"] = std::move(evs);
    out["tau"] = res.tau;
    out["isolated"] = res.isolated;
    if (args.out_path.empty() || args.out_path == "-")
        std::cout << out.dump(2) << std::endl;
    else
        dump_json(args.out_path, out);
    return 0;
}

struct DegreeArgs {
    std::vector<std::string> in_paths;
    std::string csv_path;
    std::string fit_path;
};

int run_degree(const DegreeArgs& args) {
    DegreeHistogram pooled;
    for (const auto& path : args.in_paths) pooled.absorb(degree_histogram(read_edge_list_file(path)));

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!args.csv_path.empty() && args.csv_path != "-") {
        file.open(args.csv_path);
        if (!file) throw std::runtime_error("cannot open " + args.csv_path + " for writing");
        out = &file;
    }
    *out << "k,count,freq\n";
    for (const auto& [k, c] : pooled.counts)
        *out << k << ',' << c << ',' << (static_cast<double>(c) / pooled.total()) << '\n';

    if (!args.fit_path.empty()) {
        const PowerLawFit fit = powerlaw_fit(pooled);
        json j;
        j["gamma0"] = fit.gamma0;
        j["gamma1"] = fit.gamma1;
        j["k_lo"] = fit.k_lo;
        j["k_hi"] = fit.k_hi;
        j["points_used"] = fit.points_used;
        dump_json(args.fit_path, j);
    }
    return 0;
}

int run_experiment_cmd(const std::string& config_path, const std::string& outdir_override) {
    ExperimentConfig config = load_experiment_config(config_path);
    if (!outdir_override.empty()) config.output_dir = outdir_override;
    const ExperimentReport report = run_experiment(config);
    for (const auto& cell : report.cells) {
        std::cout << (cell.ok ? "ok   " : "fail ") << cell.name;
        if (cell.ok && cell.summary.count("mean"))
            std::cout << "  mean=" << cell.summary.at("mean");
        if (!cell.error.empty()) std::cout << "  (" << cell.error << ")";
        std::cout << '\n';
    }
    return report.all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"latent-order random graph toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate_cmd = app.add_subcommand("generate", "sample a graph and write an edge list");
    generate_cmd->add_option("--model", gen.model_text, "model JSON (see README for the schema)");
    generate_cmd->add_option("--model-file", gen.model_file, "file containing the model JSON");
    generate_cmd->add_option("--n", gen.n, "node count")->required();
    generate_cmd->add_option("--ordering", gen.ordering, "omega1|omega2|pa|random");
    auto* os = generate_cmd->add_option("--ordering-seed", gen.ordering_seed,
                                        "seed for the random ordering");
    generate_cmd->add_option("--seed", gen.seed, "generation seed");
    generate_cmd->add_option("--out", gen.out_path, "edge-list path ('-' for stdout)");
    generate_cmd->add_option("--meta", gen.meta_path, "sidecar metadata JSON path");

    EstimateArgs est;
    auto* estimate_cmd = app.add_subcommand("estimate", "combinatorial least-squares block fit");
    estimate_cmd->add_option("--in", est.in_path, "edge-list path")->required();
    estimate_cmd->add_option("--k", est.k, "group count")->required();
    estimate_cmd->add_option("--restarts", est.restarts, "heuristic restarts");
    estimate_cmd->add_option("--max-iters", est.max_iters, "iteration cap");
    estimate_cmd->add_option("--seed", est.seed, "solver seed");
    estimate_cmd->add_flag("--exact", est.exact, "exhaustive solver (small instances only)");
    estimate_cmd->add_option("--out", est.out_path, "result JSON path ('-' for stdout)");
    estimate_cmd->add_option("--theta-out", est.theta_path, "write theta_hat as CSV");

    ClusterArgs clu;
    auto* cluster_cmd = app.add_subcommand("cluster", "spectral clustering");
    cluster_cmd->add_option("--in", clu.in_path, "edge-list path")->required();
    cluster_cmd->add_option("--truth", clu.truth_path, "label file for mis-clustering counts");
    cluster_cmd->add_option("--k", clu.k, "cluster count")->required();
    cluster_cmd->add_option("--seed", clu.seed, "k-means seed");
    cluster_cmd->add_option("--out", clu.out_path, "result JSON path ('-' for stdout)");

    DegreeArgs deg;
    auto* degree_cmd = app.add_subcommand("degree", "degree histogram and power-law fit");
    degree_cmd->add_option("--in", deg.in_paths, "edge-list path(s), pooled")->required();
    degree_cmd->add_option("--csv", deg.csv_path, "histogram CSV path ('-' for stdout)");
    degree_cmd->add_option("--fit", deg.fit_path, "fit JSON path");

    std::string config_path, outdir_override;
    auto* experiment_cmd = app.add_subcommand("experiment", "run a configured Monte Carlo study");
    experiment_cmd->add_option("--config", config_path, "experiment config JSON")->required();
    experiment_cmd->add_option("--outdir", outdir_override, "override the config output_dir");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*generate_cmd) {
            gen.has_ordering_seed = os->count() > 0;
            return run_generate(gen);
        }
        if (*estimate_cmd) return run_estimate(est);
        if (*cluster_cmd) return run_cluster(clu);
        if (*degree_cmd) return run_degree(deg);
        if (*experiment_cmd) return run_experiment_cmd(config_path, outdir_override);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 1;
}
