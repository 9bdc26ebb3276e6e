#include "latnet/generators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "latnet/errors.hpp"

namespace latnet {

namespace {

void check_prob(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

void check_ordering(const Ordering& ordering, int n) {
    if (ordering.n() != n)
        throw std::invalid_argument("ordering is for n=" + std::to_string(ordering.n()) +
                                    ", generator asked for n=" + std::to_string(n));
}

void check_sparse(double rho_n) {
    if (!(rho_n > 0.0 && rho_n <= 1.0))
        throw std::invalid_argument("sparse scale rho_n must lie in (0,1]");
}

double scaled_two_state_stationary(double p0, double p1, double scale) {
    const double q0 = scale * p0, q1 = scale * p1;
    const double denom = 1.0 + q0 - q1;
    if (denom <= 0.0 || (q0 == 0.0 && q1 == 1.0))
        throw DegenerateError("stationary probability undefined for p0=" + std::to_string(q0) +
                              ", p1=" + std::to_string(q1));
    return q0 / denom;
}

std::string block_pair_name(int k, int bp) {
    const auto [a, b] = CsbmParams::block_pair_from_index(k, bp);
    return "{" + std::to_string(a) + "," + std::to_string(b) + "}";
}

std::vector<std::uint8_t> mecltg_chain(std::int64_t N, const MecltgParams& params, double scale,
                                       Rng& rng) {
    const double p = scaled_two_state_stationary(params.p0, params.p1, scale);
    const double p0 = scale * params.p0, p1 = scale * params.p1;
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(N));
    std::uint8_t prev = rng.bernoulli(p) ? 1 : 0;
    bits[0] = prev;
    for (std::int64_t s = 1; s < N; ++s) {
        prev = rng.bernoulli(prev ? p1 : p0) ? 1 : 0;
        bits[static_cast<std::size_t>(s)] = prev;
    }
    return bits;
}

std::vector<std::uint8_t> csbm_chain(const CsbmParams& params, const Ordering& ordering,
                                     double scale, Rng& rng) {
    const std::int64_t N = ordering.num_pairs();
    std::vector<int> bp(static_cast<std::size_t>(N));
    for (std::int64_t s = 1; s <= N; ++s) {
        const auto [i, j] = ordering.pair_at(s);
        bp[static_cast<std::size_t>(s - 1)] = params.pair_block(i, j);
    }
    std::vector<double> start(params.num_block_pairs());
    for (int b = 0; b < params.num_block_pairs(); ++b)
        start[b] = scaled_two_state_stationary(params.rho0[b][b], params.rho1[b][b], scale);

    std::vector<std::uint8_t> bits(static_cast<std::size_t>(N));
    std::uint8_t prev = rng.bernoulli(start[bp[0]]) ? 1 : 0;
    bits[0] = prev;
    for (std::int64_t s = 1; s < N; ++s) {
        const auto& table = prev ? params.rho1 : params.rho0;
        const double thr = scale * table[bp[static_cast<std::size_t>(s - 1)]]
                                        [bp[static_cast<std::size_t>(s)]];
        prev = rng.bernoulli(thr) ? 1 : 0;
        bits[static_cast<std::size_t>(s)] = prev;
    }
    return bits;
}

// Shared by generate_chain and gen_composite_graphon so both consume the rng
// identically (latent values first, then one uniform per chain step).
std::vector<std::uint8_t> graphon_chain(const GraphonSpec& spec, const Ordering& ordering,
                                        double scale, Rng& rng, std::vector<double>* xi_out) {
    const int n = ordering.n();
    std::vector<double> xi;
    if (spec.latent) {
        if (static_cast<int>(spec.latent->size()) != n)
            throw std::invalid_argument("injected latent values must have length n");
        for (double x : *spec.latent)
            if (!(x >= 0.0 && x <= 1.0))
                throw std::invalid_argument("latent values must lie in [0,1]");
        xi = *spec.latent;
    } else {
        xi.resize(static_cast<std::size_t>(n));
        for (double& x : xi) x = rng.uniform();
    }
    const double d = spec.persistence;
    if (!(d >= 0.0 && d < 1.0)) throw std::invalid_argument("persistence must lie in [0,1)");

    const std::int64_t N = ordering.num_pairs();
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(N));
    double m_prev = 0.0;
    std::uint8_t prev = 0;
    for (std::int64_t s = 1; s <= N; ++s) {
        const auto [i, j] = ordering.pair_at(s);
        const double m = spec.f(xi[static_cast<std::size_t>(i - 1)],
                                xi[static_cast<std::size_t>(j - 1)]);
        if (!(m >= 0.0 && m <= 1.0))
            throw std::invalid_argument("graphon value outside [0,1] at chain position " +
                                        std::to_string(s));
        double thr;
        if (s == 1) {
            thr = scale * m;
        } else {
            const double q1 = m + d * (1.0 - m);
            if (m_prev >= 1.0)
                throw DegenerateError("marginal 1 at chain position " + std::to_string(s - 1) +
                                      " makes the next kernel undefined");
            double q0 = (m - q1 * m_prev) / (1.0 - m_prev);
            if (q0 < -1e-12 || q0 > 1.0 + 1e-12) {
                const double d_max =
                    (m_prev > 0.0 && m < 1.0)
                        ? std::min(1.0, m * (1.0 - m_prev) / (m_prev * (1.0 - m)))
                        : 1.0;
                std::ostringstream msg;
                msg << "infeasible persistence d=" << d << " at chain position " << s
                    << " (marginals " << m_prev << " -> " << m << "); maximal feasible d there is "
                    << d_max;
                throw InfeasibleError(msg.str());
            }
            q0 = std::clamp(q0, 0.0, 1.0); // round-off only; real violations throw above
            thr = scale * (prev ? q1 : q0);
        }
        prev = rng.bernoulli(thr) ? 1 : 0;
        bits[static_cast<std::size_t>(s - 1)] = prev;
        m_prev = m;
    }
    if (xi_out) *xi_out = std::move(xi);
    return bits;
}

std::vector<std::uint8_t> inhom_chain(const InhomSchedule& schedule, std::int64_t N, double scale,
                                      Rng& rng) {
    if (static_cast<std::int64_t>(schedule.q1.size()) != N ||
        static_cast<std::int64_t>(schedule.q0.size()) != N)
        throw std::invalid_argument("schedule length " + std::to_string(schedule.q1.size()) +
                                    " does not match chain length " + std::to_string(N));
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(N));
    std::uint8_t prev = rng.bernoulli(scale * schedule.target) ? 1 : 0;
    bits[0] = prev;
    for (std::int64_t s = 1; s < N; ++s) {
        const double thr = scale * (prev ? schedule.q1[static_cast<std::size_t>(s)]
                                         : schedule.q0[static_cast<std::size_t>(s)]);
        prev = rng.bernoulli(thr) ? 1 : 0;
        bits[static_cast<std::size_t>(s)] = prev;
    }
    return bits;
}

} // namespace

MecltgParams MecltgParams::from_rates(int n, double lambda0, double lambda1, double c) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    MecltgParams params;
    params.p0 = lambda0 / n;
    params.p1 = 1.0 - lambda1 * std::pow(n, -c);
    params.validate();
    return params;
}

MecltgParams MecltgParams::from_log_rates(int n, double lambda0, double lambda1) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    MecltgParams params;
    params.p0 = lambda0 * std::log(n) / n;
    params.p1 = lambda1 * std::log(n) / n;
    params.validate();
    return params;
}

double MecltgParams::stationary() const {
    return scaled_two_state_stationary(p0, p1, 1.0);
}

void MecltgParams::validate() const {
    check_prob(p0, "p0");
    check_prob(p1, "p1");
}

int CsbmParams::block_pair_index(int k, int a, int b) {
    if (a < 1 || b < 1 || a > k || b > k) throw std::invalid_argument("block label out of range");
    const int lo = std::min(a, b), hi = std::max(a, b);
    // (1,1),(1,2),...,(1,k),(2,2),...; row r holds k-r+1 pairs
    return (lo - 1) * (k + 1) - lo * (lo - 1) / 2 + (hi - lo);
}

std::pair<int, int> CsbmParams::block_pair_from_index(int k, int idx) {
    for (int a = 1; a <= k; ++a) {
        const int row = k - a + 1;
        if (idx < row) return {a, a + idx};
        idx -= row;
    }
    throw std::invalid_argument("block-pair index out of range");
}

int CsbmParams::pair_block(int i, int j) const {
    return block_pair_index(k, z.labels[static_cast<std::size_t>(i - 1)],
                            z.labels[static_cast<std::size_t>(j - 1)]);
}

Eigen::MatrixXd CsbmParams::theta() const {
    Eigen::MatrixXd th = Eigen::MatrixXd::Zero(z.n, z.n);
    for (int i = 1; i <= z.n; ++i)
        for (int j = i + 1; j <= z.n; ++j) th(i - 1, j - 1) = th(j - 1, i - 1) = rho[pair_block(i, j)];
    return th;
}

CsbmParams solve_csbm(CommunityAssignment z, const std::vector<double>& rho_diag,
                      const std::vector<std::vector<double>>& rho_one) {
    z.validate(true);
    CsbmParams params;
    params.k = z.k;
    const int K = params.k * (params.k + 1) / 2;
    if (static_cast<int>(rho_diag.size()) != K)
        throw std::invalid_argument("rho_diag needs one entry per block pair (" +
                                    std::to_string(K) + ")");
    if (static_cast<int>(rho_one.size()) != K)
        throw std::invalid_argument("rho_one must be a full block-pair table");
    for (const auto& row : rho_one)
        if (static_cast<int>(row.size()) != K)
            throw std::invalid_argument("rho_one must be a full block-pair table");
    for (int b = 0; b < K; ++b) {
        check_prob(rho_diag[b], "rho_diag entry");
        for (int c = 0; c < K; ++c) check_prob(rho_one[b][c], "rho_one entry");
    }

    params.rho.assign(K, 0.0);
    params.rho1 = rho_one;
    params.rho0.assign(K, std::vector<double>(K, 0.0));

    // Stationary law of each self-transition sub-chain.
    for (int b = 0; b < K; ++b) {
        const double denom = 1.0 + rho_diag[b] - rho_one[b][b];
        if (denom <= 0.0)
            throw InfeasibleError("block pair " + block_pair_name(params.k, b) +
                                  ": stationary probability undefined");
        params.rho[b] = rho_diag[b] / denom;
        params.rho0[b][b] = rho_diag[b];
    }
    // Remaining zero-conditional entries keep every cross-pair marginal stationary.
    for (int prev = 0; prev < K; ++prev) {
        for (int cur = 0; cur < K; ++cur) {
            if (prev == cur) continue;
            if (params.rho[prev] >= 1.0)
                throw InfeasibleError("block pair " + block_pair_name(params.k, prev) +
                                      " has stationary probability 1; cross constraints unsolvable");
            const double v =
                (params.rho[cur] - rho_one[prev][cur] * params.rho[prev]) / (1.0 - params.rho[prev]);
            if (!(v >= 0.0 && v <= 1.0)) {
                std::ostringstream msg;
                msg << "infeasible constraint system: derived zero-conditional probability for "
                    << "current pair " << block_pair_name(params.k, cur) << " after "
                    << block_pair_name(params.k, prev) << " is " << v;
                throw InfeasibleError(msg.str());
            }
            params.rho0[prev][cur] = v;
        }
    }
    params.z = std::move(z);
    return params;
}

CsbmParams csbm_preset_two_group(CommunityAssignment z) {
    if (z.k != 2) throw std::invalid_argument("two-group preset needs k=2");
    const std::vector<double> rho_diag = {0.1, 0.01, 0.2};
    const std::vector<std::vector<double>> rho_one = {
        {0.4, 0.05, 0.3},
        {0.3, 0.1, 0.1},
        {0.2, 0.03, 0.6},
    };
    return solve_csbm(std::move(z), rho_diag, rho_one);
}

CsbmParams csbm_preset_three_group(CommunityAssignment z) {
    if (z.k != 3) throw std::invalid_argument("three-group preset needs k=3");
    const std::vector<double> rho_diag = {0.3, 0.01, 0.02, 0.3, 0.06, 0.3};
    const std::vector<std::vector<double>> rho_one = {
        {0.5, 0.02, 0.05, 0.3, 0.02, 0.04},
        {0.3, 0.1, 0.05, 0.2, 0.02, 0.04},
        {0.2, 0.1, 0.08, 0.05, 0.02, 0.04},
        {0.15, 0.02, 0.02, 0.6, 0.02, 0.04},
        {0.15, 0.1, 0.05, 0.01, 0.1, 0.04},
        {0.2, 0.01, 0.02, 0.05, 0.02, 0.7},
    };
    return solve_csbm(std::move(z), rho_diag, rho_one);
}

GraphonFn GraphonFn::constant(double c) {
    check_prob(c, "graphon constant");
    return GraphonFn([c](double, double) { return c; });
}

GraphonFn GraphonFn::blocks(std::vector<double> thresholds, Eigen::MatrixXd table) {
    const int k = static_cast<int>(table.rows());
    if (table.cols() != k || k < 1) throw std::invalid_argument("block table must be square");
    if (static_cast<int>(thresholds.size()) != k - 1)
        throw std::invalid_argument("need k-1 thresholds for a k x k block table");
    double last = 0.0;
    for (double t : thresholds) {
        if (!(t > last && t < 1.0)) throw std::invalid_argument("thresholds must increase inside (0,1)");
        last = t;
    }
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            check_prob(table(a, b), "block table entry");
            if (table(a, b) != table(b, a)) throw std::invalid_argument("block table must be symmetric");
        }
    auto cell = [thresholds](double x) {
        int c = 0;
        while (c < static_cast<int>(thresholds.size()) && x >= thresholds[c]) ++c;
        return c;
    };
    return GraphonFn([cell, table = std::move(table)](double x, double y) {
        return table(cell(x), cell(y));
    });
}

GraphonFn GraphonFn::product() {
    return GraphonFn([](double x, double y) { return x * y; });
}

GraphonFn GraphonFn::mean() {
    return GraphonFn([](double x, double y) { return (x + y) / 2.0; });
}

InhomSchedule make_inhom_schedule(double target, std::vector<double> q1) {
    if (!(target > 0.0 && target < 1.0))
        throw std::invalid_argument("target stationary probability must lie in (0,1)");
    InhomSchedule schedule;
    schedule.target = target;
    schedule.q0.resize(q1.size());
    for (std::size_t i = 0; i < q1.size(); ++i) {
        if (!(q1[i] >= 0.0 && q1[i] < 1.0))
            throw std::invalid_argument("q1 entries must lie in [0,1)");
        const double q0 = target * (1.0 - q1[i]) / (1.0 - target);
        if (q0 > 1.0)
            throw InfeasibleError("schedule infeasible at index " + std::to_string(i + 1) +
                                  ": q0 = " + std::to_string(q0) + " > 1");
        schedule.q0[i] = q0;
    }
    schedule.q1 = std::move(q1);
    return schedule;
}

GeneratorSpec apply_sparse_scaling(GeneratorSpec spec, double rho_n) {
    check_sparse(rho_n);
    spec.sparse_rho *= rho_n;
    check_sparse(spec.sparse_rho);
    return spec;
}

MecltgParams apply_sparse_scaling(const MecltgParams& params, double rho_n) {
    check_sparse(rho_n);
    MecltgParams scaled;
    scaled.p0 = rho_n * params.p0;
    scaled.p1 = rho_n * params.p1;
    scaled.validate();
    return scaled;
}

std::vector<std::uint8_t> generate_chain(const GeneratorSpec& spec, const Ordering& ordering,
                                         std::uint64_t seed) {
    check_sparse(spec.sparse_rho);
    Rng rng(seed);
    const double scale = spec.sparse_rho;
    return std::visit(
        [&](const auto& model) -> std::vector<std::uint8_t> {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, MecltgParams>) {
                model.validate();
                return mecltg_chain(ordering.num_pairs(), model, scale, rng);
            } else if constexpr (std::is_same_v<T, CsbmParams>) {
                check_ordering(ordering, model.z.n);
                return csbm_chain(model, ordering, scale, rng);
            } else if constexpr (std::is_same_v<T, GraphonSpec>) {
                return graphon_chain(model, ordering, scale, rng, nullptr);
            } else {
                return inhom_chain(model, ordering.num_pairs(), scale, rng);
            }
        },
        spec.model);
}

namespace {

Graph graph_from_bits(std::vector<std::uint8_t> bits, const Ordering& ordering) {
    EdgeChain chain;
    chain.bits = std::move(bits);
    Graph g = graph_from_chain(chain, ordering, ordering.n());
    g.ordering = ordering;
    return g;
}

} // namespace

Graph gen_mecltg(int n, const Ordering& ordering, const MecltgParams& params, std::uint64_t seed) {
    check_ordering(ordering, n);
    params.validate();
    params.stationary(); // reject degenerate chains before drawing anything
    Rng rng(seed);
    return graph_from_bits(mecltg_chain(ordering.num_pairs(), params, 1.0, rng), ordering);
}

Graph gen_erdos_renyi(int n, const Ordering& ordering, double p, std::uint64_t seed) {
    check_prob(p, "p");
    return gen_mecltg(n, ordering, MecltgParams{p, p}, seed);
}

Graph gen_csbm(const Ordering& ordering, const CsbmParams& params, std::uint64_t seed) {
    check_ordering(ordering, params.z.n);
    params.z.validate(true);
    Rng rng(seed);
    Graph g = graph_from_bits(csbm_chain(params, ordering, 1.0, rng), ordering);
    g.truth = params.z;
    g.theta = params.theta();
    return g;
}

Graph gen_composite_graphon(int n, const Ordering& ordering, const GraphonSpec& spec,
                            std::uint64_t seed) {
    check_ordering(ordering, n);
    Rng rng(seed);
    std::vector<double> xi;
    Graph g = graph_from_bits(graphon_chain(spec, ordering, 1.0, rng, &xi), ordering);
    Eigen::MatrixXd th = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) th(i, j) = th(j, i) = spec.f(xi[i], xi[j]);
    g.theta = std::move(th);
    return g;
}

Graph gen_inhom(int n, const Ordering& ordering, const InhomSchedule& schedule,
                std::uint64_t seed) {
    check_ordering(ordering, n);
    Rng rng(seed);
    return graph_from_bits(inhom_chain(schedule, ordering.num_pairs(), 1.0, rng), ordering);
}

Graph generate(const GeneratorSpec& spec, const Ordering& ordering, std::uint64_t seed) {
    check_sparse(spec.sparse_rho);
    Rng rng(seed);
    const double scale = spec.sparse_rho;
    return std::visit(
        [&](const auto& model) -> Graph {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, MecltgParams>) {
                model.validate();
                return graph_from_bits(mecltg_chain(ordering.num_pairs(), model, scale, rng),
                                       ordering);
            } else if constexpr (std::is_same_v<T, CsbmParams>) {
                check_ordering(ordering, model.z.n);
                Graph g = graph_from_bits(csbm_chain(model, ordering, scale, rng), ordering);
                g.truth = model.z;
                std::vector<double> st(model.num_block_pairs());
                for (int b = 0; b < model.num_block_pairs(); ++b)
                    st[b] = scaled_two_state_stationary(model.rho0[b][b], model.rho1[b][b], scale);
                Eigen::MatrixXd th = Eigen::MatrixXd::Zero(model.z.n, model.z.n);
                for (int i = 1; i <= model.z.n; ++i)
                    for (int j = i + 1; j <= model.z.n; ++j)
                        th(i - 1, j - 1) = th(j - 1, i - 1) = st[model.pair_block(i, j)];
                g.theta = std::move(th);
                return g;
            } else if constexpr (std::is_same_v<T, GraphonSpec>) {
                std::vector<double> xi;
                Graph g = graph_from_bits(graphon_chain(model, ordering, scale, rng, &xi), ordering);
                const int n = ordering.n();
                Eigen::MatrixXd th = Eigen::MatrixXd::Zero(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j)
                        th(i, j) = th(j, i) = scale * model.f(xi[i], xi[j]);
                g.theta = std::move(th);
                return g;
            } else {
                return graph_from_bits(inhom_chain(model, ordering.num_pairs(), scale, rng),
                                       ordering);
            }
        },
        spec.model);
}

std::pair<Graph, Graph> gen_coupled(int n, const Ordering& ordering, double p0, double p1,
                                    double p_a, std::uint64_t seed) {
    check_ordering(ordering, n);
    check_prob(p0, "p0");
    check_prob(p1, "p1");
    check_prob(p_a, "p_a");
    const double p = scaled_two_state_stationary(p0, p1, 1.0);

    const std::int64_t N = ordering.num_pairs();
    std::vector<std::uint8_t> srg_bits(static_cast<std::size_t>(N));
    std::vector<std::uint8_t> chain_bits(static_cast<std::size_t>(N));
    Rng rng(seed);
    std::uint8_t prev = 0;
    for (std::int64_t s = 0; s < N; ++s) {
        const double u = rng.uniform();
        srg_bits[static_cast<std::size_t>(s)] = (u < p_a) ? 1 : 0;
        const double thr = (s == 0) ? p : (prev ? p1 : p0);
        prev = (u < thr) ? 1 : 0;
        chain_bits[static_cast<std::size_t>(s)] = prev;
    }
    return {graph_from_bits(std::move(srg_bits), ordering),
            graph_from_bits(std::move(chain_bits), ordering)};
}

} // namespace latnet
