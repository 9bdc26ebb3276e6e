#include "latnet/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "latnet/degrees.hpp"
#include "latnet/dependence.hpp"
#include "latnet/estimation.hpp"
#include "latnet/spectral.hpp"
#include "svg.hpp"

namespace latnet {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Deterministic parallel map: slot r of the output is always produced by
// fn(r), so results do not depend on scheduling.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 4;
    threads = static_cast<int>(std::min<std::int64_t>(threads, count));
    if (threads <= 1) {
        for (std::int64_t r = 0; r < count; ++r) fn(r);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            while (true) {
                const std::int64_t r = next.fetch_add(1);
                if (r >= count) return;
                try {
                    fn(r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<int> degrees_from_chain(const std::vector<std::uint8_t>& bits,
                                    const Ordering& ordering) {
    std::vector<int> deg(static_cast<std::size_t>(ordering.n()), 0);
    for (std::int64_t s = 1; s <= ordering.num_pairs(); ++s) {
        if (bits[static_cast<std::size_t>(s - 1)]) {
            const auto [i, j] = ordering.pair_at(s);
            ++deg[static_cast<std::size_t>(i - 1)];
            ++deg[static_cast<std::size_t>(j - 1)];
        }
    }
    return deg;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

void summarize(CellResult& cell) {
    if (cell.samples.empty()) return;
    cell.summary["mean"] = mean_of(cell.samples);
    auto sorted = cell.samples;
    std::sort(sorted.begin(), sorted.end());
    const auto rank = [&sorted](double q) {
        const auto r = static_cast<std::size_t>(
            std::ceil(q * static_cast<double>(sorted.size())));
        return sorted[std::max<std::size_t>(r, 1) - 1];
    };
    cell.summary["median"] = rank(0.5);
    const auto [lo, hi] = quantile_bands(cell.samples);
    cell.summary["q025"] = lo;
    cell.summary["q975"] = hi;
}

GeneratorSpec model_from(const json& m, int n) {
    const std::string type = m.at("type").get<std::string>();
    GeneratorSpec spec;
    if (m.contains("sparse_rho")) spec.sparse_rho = m.at("sparse_rho").get<double>();

    if (type == "mecltg") {
        MecltgParams params;
        if (m.contains("p0") || m.contains("p1")) {
            params.p0 = m.at("p0").get<double>();
            params.p1 = m.at("p1").get<double>();
        } else if (m.value("log_rates", false)) {
            params = MecltgParams::from_log_rates(n, m.at("lambda0").get<double>(),
                                                  m.at("lambda1").get<double>());
        } else {
            params = MecltgParams::from_rates(n, m.at("lambda0").get<double>(),
                                              m.at("lambda1").get<double>(),
                                              m.at("c").get<double>());
        }
        params.validate();
        spec.model = params;
    } else if (type == "erdos_renyi") {
        const double p = m.at("p").get<double>();
        spec.model = MecltgParams{p, p};
    } else if (type == "csbm") {
        std::vector<double> proportions;
        if (m.contains("groups")) proportions = m.at("groups").get<std::vector<double>>();
        const std::string preset = m.value("preset", "");
        if (preset == "two_group") {
            if (proportions.empty()) proportions = {0.5, 0.5};
            spec.model = csbm_preset_two_group(CommunityAssignment::from_proportions(n, proportions));
        } else if (preset == "three_group") {
            if (proportions.empty()) proportions = {1.0 / 3, 1.0 / 3, 1.0 / 3};
            spec.model =
                csbm_preset_three_group(CommunityAssignment::from_proportions(n, proportions));
        } else if (preset.empty()) {
            const int k = m.at("k").get<int>();
            if (proportions.empty()) proportions.assign(k, 1.0 / k);
            auto z = CommunityAssignment::from_proportions(n, proportions);
            spec.model = solve_csbm(std::move(z), m.at("rho0_diag").get<std::vector<double>>(),
                                    m.at("rho1").get<std::vector<std::vector<double>>>());
        } else {
            throw std::invalid_argument("unknown csbm preset: " + preset);
        }
    } else if (type == "graphon") {
        GraphonSpec g;
        const json& f = m.at("f");
        const std::string name = f.at("name").get<std::string>();
        if (name == "constant") {
            g.f = GraphonFn::constant(f.at("c").get<double>());
        } else if (name == "product") {
            g.f = GraphonFn::product();
        } else if (name == "mean") {
            g.f = GraphonFn::mean();
        } else if (name == "blocks") {
            const auto rows = f.at("table").get<std::vector<std::vector<double>>>();
            Eigen::MatrixXd table(rows.size(), rows.size());
            for (std::size_t a = 0; a < rows.size(); ++a) {
                if (rows[a].size() != rows.size())
                    throw std::invalid_argument("block table must be square");
                for (std::size_t b = 0; b < rows.size(); ++b) table(a, b) = rows[a][b];
            }
            g.f = GraphonFn::blocks(f.at("thresholds").get<std::vector<double>>(), table);
        } else {
            throw std::invalid_argument("unknown graphon function: " + name);
        }
        g.persistence = m.value("persistence", 0.0);
        g.alpha = m.value("alpha", 1.0);
        spec.model = g;
    } else if (type == "inhom") {
        const double target = m.at("target").get<double>();
        const std::int64_t N = static_cast<std::int64_t>(n) * (n - 1) / 2;
        std::vector<double> q1;
        const json& q = m.at("q1");
        if (q.is_number()) {
            q1.assign(static_cast<std::size_t>(N), q.get<double>());
        } else {
            const auto cycle = q.get<std::vector<double>>();
            if (cycle.empty()) throw std::invalid_argument("q1 cycle is empty");
            q1.resize(static_cast<std::size_t>(N));
            for (std::int64_t s = 0; s < N; ++s) q1[static_cast<std::size_t>(s)] = cycle[s % cycle.size()];
        }
        spec.model = make_inhom_schedule(target, std::move(q1));
    } else {
        throw std::invalid_argument("unknown model type: " + type);
    }
    return spec;
}

struct OutputFiles {
    std::string dir;

    bool active() const { return !dir.empty(); }

    void csv(const std::string& name, const std::string& header,
             const std::vector<std::string>& rows) const {
        if (!active()) return;
        std::ofstream out(std::filesystem::path(dir) / name);
        if (!out) throw std::runtime_error("cannot write " + name);
        out << header << '\n';
        for (const auto& row : rows) out << row << '\n';
    }
};

std::string ordering_cell(int n, OrderingKind kind) {
    return "n" + std::to_string(n) + "_" + ordering_kind_name(kind);
}

// Per-ordering chart of mean/median/band against n, mirroring the structure
// of the simulation figures.
void write_trend_svg(const OutputFiles& files, const std::string& kind_name,
                     OrderingKind ordering, const std::vector<int>& n_list,
                     const std::vector<const CellResult*>& cells, const std::string& y_label) {
    if (!files.active()) return;
    svg::Chart chart;
    chart.title = kind_name + " under " + ordering_kind_name(ordering);
    chart.x_label = "n";
    chart.y_label = y_label;
    svg::Series mean{"mean", {}, "#1f6fb2", false, true};
    svg::Series median{"median", {}, "#333333", true, false};
    svg::Series lo{"2.5% band", {}, "#b04030", true, false};
    svg::Series hi{"97.5% band", {}, "#b04030", true, false};
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (!cells[i] || !cells[i]->ok) continue;
        const double x = n_list[i];
        mean.points.emplace_back(x, cells[i]->summary.at("mean"));
        median.points.emplace_back(x, cells[i]->summary.at("median"));
        lo.points.emplace_back(x, cells[i]->summary.at("q025"));
        hi.points.emplace_back(x, cells[i]->summary.at("q975"));
    }
    chart.series = {mean, median, lo, hi};
    svg::write((std::filesystem::path(files.dir) /
                (kind_name + "_" + ordering_kind_name(ordering) + ".svg"))
                   .string(),
               chart);
}

} // namespace

const char* experiment_kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Misclustering: return "misclustering";
        case ExperimentKind::Degree: return "degree";
        case ExperimentKind::Mse: return "mse";
        case ExperimentKind::Dependence: return "dependence";
        case ExperimentKind::Phase: return "phase";
    }
    return "?";
}

ExperimentKind experiment_kind_from_name(const std::string& name) {
    if (name == "misclustering") return ExperimentKind::Misclustering;
    if (name == "degree") return ExperimentKind::Degree;
    if (name == "mse") return ExperimentKind::Mse;
    if (name == "dependence") return ExperimentKind::Dependence;
    if (name == "phase") return ExperimentKind::Phase;
    throw std::invalid_argument("unknown experiment kind: " + name);
}

GeneratorSpec model_from_json(const std::string& model_json, int n) {
    return model_from(json::parse(model_json), n);
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    const json j = json::parse(json_text);
    ExperimentConfig config;
    config.kind = experiment_kind_from_name(j.at("kind").get<std::string>());
    config.model_json = j.at("model").dump();
    if (j.contains("n")) {
        if (j.at("n").is_number())
            config.n_list = {j.at("n").get<int>()};
        else
            config.n_list = j.at("n").get<std::vector<int>>();
    }
    for (const auto& name : j.value("orderings", std::vector<std::string>{"omega1"}))
        config.orderings.push_back(ordering_kind_from_name(name));
    config.replications = j.value("replications", 1);
    config.seed = j.value("seed", std::uint64_t{0});
    config.k = j.value("k", 0);
    config.output_dir = j.value("output_dir", "");
    config.threads = j.value("threads", 0);
    if (j.contains("k_steps")) config.k_steps = j.at("k_steps").get<std::vector<int>>();
    if (j.contains("lambdas")) config.lambdas = j.at("lambdas").get<std::vector<double>>();
    config.restarts = j.value("restarts", 10);
    config.max_iters = j.value("max_iters", 100);

    if (config.n_list.empty()) throw std::invalid_argument("config needs at least one n");
    if (config.replications < 1) throw std::invalid_argument("config needs replications >= 1");
    if (config.orderings.empty()) throw std::invalid_argument("config needs at least one ordering");
    return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config(buffer.str());
}

std::pair<double, double> quantile_bands(std::vector<double> samples, double q_lo, double q_hi) {
    if (samples.empty()) throw std::invalid_argument("quantile bands need at least one sample");
    if (!(q_lo > 0.0 && q_lo <= 1.0 && q_hi > 0.0 && q_hi <= 1.0))
        throw std::invalid_argument("quantile levels must lie in (0,1]");
    std::sort(samples.begin(), samples.end());
    const auto rank = [&samples](double q) {
        const auto r =
            static_cast<std::size_t>(std::ceil(q * static_cast<double>(samples.size())));
        return samples[std::max<std::size_t>(r, 1) - 1];
    };
    return {rank(q_lo), rank(q_hi)};
}

const CellResult* ExperimentReport::cell(const std::string& name) const {
    for (const auto& c : cells)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

struct CellContext {
    const ExperimentConfig& config;
    const OutputFiles& files;
    std::uint64_t cell_seed;
};

CellResult run_misclustering_cell(const CellContext& ctx, int n, OrderingKind okind) {
    const auto& config = ctx.config;
    CellResult cell;
    cell.name = ordering_cell(n, okind);
    const GeneratorSpec spec = model_from_json(config.model_json, n);
    const auto* csbm = std::get_if<CsbmParams>(&spec.model);
    if (!csbm) throw std::invalid_argument("misclustering experiment needs a csbm model");
    const int k = csbm->z.k;
    const Ordering ordering = make_ordering(okind, n, ctx.cell_seed);

    cell.samples.assign(config.replications, 0.0);
    parallel_for(config.replications, config.threads, [&](std::int64_t rep) {
        const std::uint64_t rep_seed = derive_seed(ctx.cell_seed, rep);
        const Graph g = generate(spec, ordering, rep_seed);
        const ClusterResult res = spectral_cluster(g, k, derive_seed(rep_seed, 1));
        cell.samples[static_cast<std::size_t>(rep)] = static_cast<double>(*res.misclustered);
    });
    summarize(cell);

    std::vector<std::string> rows;
    for (int rep = 0; rep < config.replications; ++rep)
        rows.push_back(std::to_string(rep) + "," + fmt(cell.samples[rep]));
    ctx.files.csv("misclustering_" + cell.name + ".csv", "rep,misclustered", rows);
    cell.ok = true;
    return cell;
}

CellResult run_degree_cell(const CellContext& ctx, int n, OrderingKind okind) {
    const auto& config = ctx.config;
    CellResult cell;
    cell.name = ordering_cell(n, okind);
    const GeneratorSpec spec = model_from_json(config.model_json, n);
    const Ordering ordering = make_ordering(okind, n, ctx.cell_seed);

    std::vector<DegreeHistogram> hists(config.replications);
    std::vector<double> gammas(config.replications,
                               std::numeric_limits<double>::quiet_NaN());
    parallel_for(config.replications, config.threads, [&](std::int64_t rep) {
        const std::uint64_t rep_seed = derive_seed(ctx.cell_seed, rep);
        const auto bits = generate_chain(spec, ordering, rep_seed);
        const auto deg = degrees_from_chain(bits, ordering);
        hists[static_cast<std::size_t>(rep)] =
            degree_histogram(std::span<const int>(deg.data(), deg.size()), n);
        try {
            gammas[static_cast<std::size_t>(rep)] =
                powerlaw_fit(hists[static_cast<std::size_t>(rep)]).gamma1;
        } catch (const std::invalid_argument&) {
            // fewer than 3 usable bins in this replication; excluded below
        }
    });

    DegreeHistogram pooled;
    for (const auto& h : hists) pooled.absorb(h);

    int usable = 0;
    for (double g : gammas)
        if (!std::isnan(g)) {
            cell.samples.push_back(g);
            ++usable;
        }
    summarize(cell);
    cell.summary["gamma1_mean"] = mean_of(cell.samples);
    cell.summary["fitted_replications"] = usable;

    std::optional<PowerLawFit> pooled_fit;
    try {
        pooled_fit = powerlaw_fit(pooled);
    } catch (const std::invalid_argument&) {
        // degenerate degree distribution (e.g. complete graph); histogram still reported
    }
    if (pooled_fit) {
        cell.summary["gamma1_pooled"] = pooled_fit->gamma1;
        cell.summary["gamma0_pooled"] = pooled_fit->gamma0;
        cell.summary["k_lo"] = pooled_fit->k_lo;
        cell.summary["k_hi"] = pooled_fit->k_hi;
    }
    double degree_sum = 0.0;
    for (const auto& [deg, cnt] : pooled.counts) degree_sum += static_cast<double>(deg) * cnt;
    const double mean_degree = degree_sum / static_cast<double>(pooled.total());
    cell.summary["mean_degree"] = mean_degree;
    cell.summary["poisson_tv"] = poisson_tv(pooled, mean_degree);

    std::vector<std::string> rows;
    for (const auto& [k, c] : pooled.counts)
        rows.push_back(std::to_string(k) + "," + std::to_string(c) + "," +
                       fmt(static_cast<double>(c) / static_cast<double>(pooled.total())));
    ctx.files.csv("degree_" + cell.name + ".csv", "k,count,freq", rows);

    if (ctx.files.active()) {
        svg::Chart chart;
        chart.title = "degree distribution " + cell.name;
        chart.x_label = "degree k";
        chart.y_label = "frequency";
        chart.log_x = true;
        chart.log_y = true;
        svg::Series data{"pooled frequency", {}, "#1f6fb2", false, true};
        for (const auto& [k, c] : pooled.counts)
            if (k >= 1 && c > 0)
                data.points.emplace_back(k, static_cast<double>(c) /
                                                static_cast<double>(pooled.total()));
        chart.series = {data};
        if (pooled_fit) {
            svg::Series fitline{"log-log fit", {}, "#b04030", true, false};
            for (int k = std::max(pooled_fit->k_lo, 1); k <= pooled_fit->k_hi; ++k)
                fitline.points.emplace_back(
                    k, std::exp(pooled_fit->gamma0 + pooled_fit->gamma1 * std::log(double(k))) /
                           static_cast<double>(pooled.total()));
            chart.series.push_back(fitline);
        }
        svg::write((std::filesystem::path(ctx.files.dir) / ("degree_" + cell.name + ".svg"))
                       .string(),
                   chart);
    }
    cell.ok = true;
    return cell;
}

CellResult run_mse_cell(const CellContext& ctx, int n, OrderingKind okind) {
    const auto& config = ctx.config;
    CellResult cell;
    cell.name = ordering_cell(n, okind);
    const GeneratorSpec spec = model_from_json(config.model_json, n);
    const Ordering ordering = make_ordering(okind, n, ctx.cell_seed);

    int k = config.k;
    if (k <= 0) {
        if (const auto* csbm = std::get_if<CsbmParams>(&spec.model)) k = csbm->z.k;
        else if (const auto* graphon = std::get_if<GraphonSpec>(&spec.model))
            k = graphon_k_select(n, graphon->alpha);
        else
            throw std::invalid_argument("mse experiment needs k for this model");
    }

    cell.samples.assign(config.replications, 0.0);
    parallel_for(config.replications, config.threads, [&](std::int64_t rep) {
        const std::uint64_t rep_seed = derive_seed(ctx.cell_seed, rep);
        const Graph g = generate(spec, ordering, rep_seed);
        if (!g.theta) throw std::invalid_argument("mse experiment needs a model with theta");
        const BlockEstimate est = cls_heuristic(g, k, config.restarts, config.max_iters,
                                                derive_seed(rep_seed, 1));
        cell.samples[static_cast<std::size_t>(rep)] = mse(est.theta_hat(), *g.theta);
    });
    summarize(cell);

    std::vector<std::string> rows;
    for (int rep = 0; rep < config.replications; ++rep)
        rows.push_back(std::to_string(rep) + "," + fmt(cell.samples[rep]));
    ctx.files.csv("mse_" + cell.name + ".csv", "rep,mse", rows);
    cell.ok = true;
    return cell;
}

CellResult run_dependence_cell(const CellContext& ctx, int n, OrderingKind okind) {
    const auto& config = ctx.config;
    CellResult cell;
    cell.name = ordering_cell(n, okind);
    const GeneratorSpec spec = model_from_json(config.model_json, n);
    const Ordering ordering = make_ordering(okind, n, ctx.cell_seed);
    const std::int64_t N = ordering.num_pairs();

    std::vector<std::string> rows;
    for (std::size_t idx = 0; idx < config.k_steps.size(); ++idx) {
        const int k = config.k_steps[idx];
        std::vector<std::int64_t> positions = {k + 1, (N + 1) / 2, N};
        std::sort(positions.begin(), positions.end());
        positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
        std::erase_if(positions, [&](std::int64_t p) { return p < k + 1 || p > N; });

        const DeltaEstimate est = delta_empirical(spec, ordering, k, positions,
                                                  config.replications,
                                                  derive_seed(ctx.cell_seed, idx));
        cell.samples.push_back(est.value);
        cell.summary["delta_" + std::to_string(k)] = est.value;
        cell.summary["se_" + std::to_string(k)] = est.std_error;
        std::string closed;
        if (const auto* m = std::get_if<MecltgParams>(&spec.model)) {
            const double d = delta_closed_form(spec.sparse_rho * m->p0, spec.sparse_rho * m->p1, k);
            cell.summary["closed_" + std::to_string(k)] = d;
            closed = fmt(d);
        }
        rows.push_back(std::to_string(k) + "," + fmt(est.value) + "," + fmt(est.std_error) + "," +
                       closed);
    }
    ctx.files.csv("dependence_" + cell.name + ".csv", "k,delta_hat,std_error,delta_closed", rows);

    if (ctx.files.active()) {
        svg::Chart chart;
        chart.title = "dependence decay " + cell.name;
        chart.x_label = "lag k";
        chart.y_label = "delta(k)";
        chart.log_y = true;
        svg::Series emp{"empirical", {}, "#1f6fb2", false, true};
        svg::Series closed{"closed form", {}, "#b04030", true, false};
        for (std::size_t idx = 0; idx < config.k_steps.size(); ++idx) {
            const int k = config.k_steps[idx];
            emp.points.emplace_back(k, cell.summary.at("delta_" + std::to_string(k)));
            if (cell.summary.count("closed_" + std::to_string(k)))
                closed.points.emplace_back(k, cell.summary.at("closed_" + std::to_string(k)));
        }
        chart.series = {emp, closed};
        svg::write((std::filesystem::path(ctx.files.dir) / ("dependence_" + cell.name + ".svg"))
                       .string(),
                   chart);
    }
    cell.ok = true;
    return cell;
}

CellResult run_phase_cell(const CellContext& ctx, int n, OrderingKind okind, double lambda) {
    const auto& config = ctx.config;
    CellResult cell;
    cell.name = ordering_cell(n, okind) + "_lambda" + fmt(lambda);
    const Ordering ordering = make_ordering(okind, n, ctx.cell_seed);
    const MecltgParams params = MecltgParams::from_log_rates(n, lambda, lambda);
    const double p_a = std::max(params.p0, params.p1);

    cell.samples.assign(config.replications, 0.0);
    std::vector<std::uint8_t> domination_ok(config.replications, 0);
    std::vector<std::int64_t> component_count(config.replications, 0);
    std::vector<std::int64_t> largest(config.replications, 0);
    parallel_for(config.replications, config.threads, [&](std::int64_t rep) {
        const std::uint64_t rep_seed = derive_seed(ctx.cell_seed, rep);
        const auto [srg, chain_graph] = gen_coupled(n, ordering, params.p0, params.p1, p_a, rep_seed);
        bool dominated = true;
        for (std::int64_t t = 0; t < chain_graph.num_pairs(); ++t)
            if (chain_graph.pair_bits()[static_cast<std::size_t>(t)] &&
                !srg.pair_bits()[static_cast<std::size_t>(t)]) {
                dominated = false;
                break;
            }
        domination_ok[static_cast<std::size_t>(rep)] = dominated ? 1 : 0;
        const ComponentSummary comps = components(chain_graph);
        cell.samples[static_cast<std::size_t>(rep)] = comps.connected ? 1.0 : 0.0;
        component_count[static_cast<std::size_t>(rep)] = static_cast<std::int64_t>(comps.sizes.size());
        largest[static_cast<std::size_t>(rep)] = comps.sizes.front();
    });
    summarize(cell);
    cell.summary["connected_fraction"] = mean_of(cell.samples);
    double dom = 0.0;
    for (auto d : domination_ok) dom += d;
    cell.summary["domination_fraction"] = dom / config.replications;

    std::vector<std::string> rows;
    for (int rep = 0; rep < config.replications; ++rep)
        rows.push_back(std::to_string(rep) + "," + fmt(cell.samples[rep]) + "," +
                       std::to_string(component_count[rep]) + "," + std::to_string(largest[rep]) +
                       "," + std::to_string(int(domination_ok[rep])));
    ctx.files.csv("phase_" + cell.name + ".csv",
                  "rep,connected,num_components,largest_component,domination_ok", rows);
    cell.ok = true;
    return cell;
}

} // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
    OutputFiles files{config.output_dir};
    if (files.active()) std::filesystem::create_directories(files.dir);

    ExperimentReport report;
    report.all_ok = true;
    std::size_t cell_index = 0;

    const auto run_cell = [&](const std::string& fallback_name, auto&& fn) {
        const std::uint64_t cell_seed = derive_seed(config.seed, cell_index++);
        CellResult cell;
        try {
            cell = fn(cell_seed);
        } catch (const std::exception& e) {
            cell.name = fallback_name;
            cell.ok = false;
            cell.error = e.what();
        }
        if (!cell.ok) report.all_ok = false;
        report.cells.push_back(std::move(cell));
    };

    if (config.kind == ExperimentKind::Phase) {
        if (config.lambdas.empty())
            throw std::invalid_argument("phase experiment needs a lambdas list");
        for (int n : config.n_list)
            for (OrderingKind okind : config.orderings)
                for (double lambda : config.lambdas)
                    run_cell(ordering_cell(n, okind) + "_lambda" + fmt(lambda),
                             [&](std::uint64_t seed) {
                                 return run_phase_cell({config, files, seed}, n, okind, lambda);
                             });
    } else {
        for (int n : config.n_list) {
            for (OrderingKind okind : config.orderings) {
                run_cell(ordering_cell(n, okind), [&](std::uint64_t seed) {
                    const CellContext ctx{config, files, seed};
                    switch (config.kind) {
                        case ExperimentKind::Misclustering:
                            return run_misclustering_cell(ctx, n, okind);
                        case ExperimentKind::Degree: return run_degree_cell(ctx, n, okind);
                        case ExperimentKind::Mse: return run_mse_cell(ctx, n, okind);
                        case ExperimentKind::Dependence:
                            return run_dependence_cell(ctx, n, okind);
                        default: throw std::logic_error("unreachable");
                    }
                });
            }
        }
    }

    if (files.active() &&
        (config.kind == ExperimentKind::Misclustering || config.kind == ExperimentKind::Mse)) {
        for (OrderingKind okind : config.orderings) {
            std::vector<const CellResult*> cells;
            for (int n : config.n_list) cells.push_back(report.cell(ordering_cell(n, okind)));
            write_trend_svg(files, experiment_kind_name(config.kind), okind, config.n_list, cells,
                            config.kind == ExperimentKind::Misclustering ? "misclustered nodes"
                                                                         : "mse");
        }
    }
    if (files.active() && config.kind == ExperimentKind::Phase) {
        for (int n : config.n_list) {
            for (OrderingKind okind : config.orderings) {
                svg::Chart chart;
                chart.title = "connectivity phase transition n=" + std::to_string(n);
                chart.x_label = "lambda";
                chart.y_label = "connected fraction";
                svg::Series frac{"connected fraction", {}, "#1f6fb2", false, true};
                for (double lambda : config.lambdas) {
                    const auto* cell =
                        report.cell(ordering_cell(n, okind) + "_lambda" + fmt(lambda));
                    if (cell && cell->ok)
                        frac.points.emplace_back(lambda, cell->summary.at("connected_fraction"));
                }
                chart.series = {frac};
                svg::write((std::filesystem::path(files.dir) /
                            ("phase_" + ordering_cell(n, okind) + ".svg"))
                               .string(),
                           chart);
            }
        }
    }

    if (files.active()) {
        json j;
        j["kind"] = experiment_kind_name(config.kind);
        j["seed"] = config.seed;
        j["replications"] = config.replications;
        j["model"] = json::parse(config.model_json);
        j["all_ok"] = report.all_ok;
        json cells = json::array();
        for (const auto& cell : report.cells) {
            json c;
            c["name"] = cell.name;
            c["ok"] = cell.ok;
            if (!cell.error.empty()) c["error"] = cell.error;
            c["summary"] = cell.summary;
            c["samples"] = cell.samples;
            cells.push_back(std::move(c));
        }
        j["cells"] = std::move(cells);
        std::ofstream out(std::filesystem::path(files.dir) / "report.json");
        if (!out) throw std::runtime_error("cannot write report.json");
        out << j.dump(2) << '\n';
    }
    return report;
}

} // namespace latnet
