#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "latnet/community.hpp"
#include "latnet/graph.hpp"
#include "latnet/ordering.hpp"
#include "latnet/rng.hpp"

namespace latnet {

/// Two-state Markov edge chain with constant marginal. p0 = P(B_i=1 | B_{i-1}=0),
/// p1 = P(B_i=1 | B_{i-1}=1). The chain starts from its stationary law
/// p = p0 / (1 + p0 - p1).
struct MecltgParams {
    double p0 = 0.0;
    double p1 = 0.0;

    /// Rate form p0 = lambda0/n, p1 = 1 - lambda1 * n^{-c}.
    static MecltgParams from_rates(int n, double lambda0, double lambda1, double c);
    /// Connectivity-scale form p_w = lambda_w * log(n) / n.
    static MecltgParams from_log_rates(int n, double lambda0, double lambda1);

    /// Throws DegenerateError when p0=0 and p1=1 (stationary law is 0/0).
    double stationary() const;
    void validate() const;
};

/// Community-dependent chain: the kernel of each edge variable depends on the
/// previous chain bit and on the block pairs of both the previous and the
/// current node pair. Tables are indexed by unordered block-pair index.
struct CsbmParams {
    CommunityAssignment z;
    int k = 0;
    std::vector<double> rho;                 // stationary probability per block pair
    std::vector<std::vector<double>> rho0;   // [prev block pair][current block pair]
    std::vector<std::vector<double>> rho1;

    int num_block_pairs() const { return k * (k + 1) / 2; }
    static int block_pair_index(int k, int a, int b);
    static std::pair<int, int> block_pair_from_index(int k, int idx);
    int pair_block(int i, int j) const; // block-pair index of nodes i,j (1-based)

    Eigen::MatrixXd theta() const; // hollow n x n matrix of stationary probabilities
};

/// Solves the constraint system for a community-dependent chain.
/// rho_diag[bp] is the zero-conditional self-transition probability of block
/// pair bp; rho_one[prev][cur] the full one-conditional table. Stationary
/// probabilities come from the self-transition pairs, all remaining
/// zero-conditional entries are solved for, and every derived probability is
/// validated in [0,1]. Throws InfeasibleError naming the offending block pair.
CsbmParams solve_csbm(CommunityAssignment z, const std::vector<double>& rho_diag,
                      const std::vector<std::vector<double>>& rho_one);

/// Built-in two-group and three-group parameter sets used by the bundled
/// experiment configurations.
CsbmParams csbm_preset_two_group(CommunityAssignment z);
CsbmParams csbm_preset_three_group(CommunityAssignment z);

/// Symmetric function [0,1]^2 -> [0,1], supplied as a named built-in or a
/// block-constant table.
class GraphonFn {
public:
    static GraphonFn constant(double c);
    /// thresholds are the k-1 interior cut points of [0,1]; table is k x k.
    static GraphonFn blocks(std::vector<double> thresholds, Eigen::MatrixXd table);
    static GraphonFn product(); // f(x,y) = x*y
    static GraphonFn mean();    // f(x,y) = (x+y)/2

    double operator()(double x, double y) const { return fn_(x, y); }

private:
    explicit GraphonFn(std::function<double(double, double)> fn) : fn_(std::move(fn)) {}
    std::function<double(double, double)> fn_;
};

/// Memory-1 composite chain with marginals m_s = f(xi_i, xi_j) and persistence
/// knob d: q1(s) = m_s + d(1-m_s), q0(s) = (m_s - q1(s) m_{s-1}) / (1 - m_{s-1}),
/// which keeps P(B_s=1) = m_s for all s. d=0 gives conditionally independent
/// edges (the classical graphon model).
struct GraphonSpec {
    GraphonFn f = GraphonFn::constant(0.0);
    double alpha = 1.0;       // smoothness tag, used by k selection
    double persistence = 0.0; // d in [0,1)
    std::optional<std::vector<double>> latent; // inject xi instead of sampling
};

/// Single-group inhomogeneous chain: every position has marginal `target`,
/// with per-step kernels q1[i] = P(B_i=1|B_{i-1}=1) and derived
/// q0[i] = target (1 - q1[i]) / (1 - target).
struct InhomSchedule {
    double target = 0.0;
    std::vector<double> q1;
    std::vector<double> q0;
};

/// Derives and validates q0; throws InfeasibleError at the first bad index.
InhomSchedule make_inhom_schedule(double target, std::vector<double> q1);

using ChainModel = std::variant<MecltgParams, CsbmParams, GraphonSpec, InhomSchedule>;

/// A chain model plus the sparsity scale rho_n: every conditional success
/// probability is multiplied by sparse_rho at generation time and the start is
/// drawn from the scaled kernel's stationary/marginal law. sparse_rho = 1 is
/// the identity.
struct GeneratorSpec {
    ChainModel model;
    double sparse_rho = 1.0;
};

GeneratorSpec apply_sparse_scaling(GeneratorSpec spec, double rho_n);
MecltgParams apply_sparse_scaling(const MecltgParams& params, double rho_n);

/// Ordered edge variables for the given spec; deterministic given seed.
std::vector<std::uint8_t> generate_chain(const GeneratorSpec& spec, const Ordering& ordering,
                                         std::uint64_t seed);

Graph gen_mecltg(int n, const Ordering& ordering, const MecltgParams& params, std::uint64_t seed);
Graph gen_erdos_renyi(int n, const Ordering& ordering, double p, std::uint64_t seed);
Graph gen_csbm(const Ordering& ordering, const CsbmParams& params, std::uint64_t seed);
Graph gen_composite_graphon(int n, const Ordering& ordering, const GraphonSpec& spec,
                            std::uint64_t seed);
Graph gen_inhom(int n, const Ordering& ordering, const InhomSchedule& schedule,
                std::uint64_t seed);

/// Dispatch on the model variant; attaches truth/theta where the model has them.
Graph generate(const GeneratorSpec& spec, const Ordering& ordering, std::uint64_t seed);

/// Couples a simple random graph and a two-state chain on shared uniforms:
/// one U per chain step, SRG edge iff U < p_a, chain bit via the p (first
/// step) / p1 / p0 thresholds. With p_a >= max(p0,p1) every SRG non-edge
/// forces a chain non-edge at the same position; with p_a <= min(p0,p1) the
/// domination reverses.
std::pair<Graph, Graph> gen_coupled(int n, const Ordering& ordering, double p0, double p1,
                                    double p_a, std::uint64_t seed);

} // namespace latnet
