#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "latnet/community.hpp"
#include "latnet/graph.hpp"

namespace latnet {

/// Block means of a symmetric hollow matrix under an assignment: off-diagonal
/// Q_ab averages M over the a x b rectangle, diagonal Q_aa over unordered
/// within-group pairs. Throws std::domain_error for empty or singleton
/// diagonal blocks (no within pair exists).
Eigen::MatrixXd block_means(const Eigen::MatrixXd& M, const CommunityAssignment& z);

/// Least-squares objective sum_{i<j} (M_ij - Q_{z(i) z(j)})^2.
double cls_loss(const Eigen::MatrixXd& M, const Eigen::MatrixXd& Q,
                const CommunityAssignment& z);

struct BlockEstimate {
    Eigen::MatrixXd Q;
    CommunityAssignment z;
    double loss = 0.0;

    /// Induced hollow matrix theta_hat(i,j) = Q_{z(i) z(j)}.
    Eigen::MatrixXd theta_hat() const;
};

/// Exact combinatorial least squares by enumeration of all k^n assignments
/// (Q set to block means for each z). Ties broken by lexicographically
/// smallest label sequence. Guarded to k^n <= 4096; larger instances throw
/// and should use cls_heuristic.
BlockEstimate cls_exact(const Eigen::MatrixXd& M, int k);
BlockEstimate cls_exact(const Graph& g, int k);

/// Alternating minimization: one spectral initialization plus restarts-1
/// random ones; each iteration recomputes block means, then reassigns nodes
/// one at a time to the group minimizing their squared-loss contribution.
/// The loss is non-increasing across iterations; empty groups are repaired by
/// moving the worst-fitting node in. Deterministic given seed. loss_trace,
/// when provided, records the per-iteration loss of the first restart.
BlockEstimate cls_heuristic(const Eigen::MatrixXd& M, int k, int restarts, int max_iters,
                            std::uint64_t seed, std::vector<double>* loss_trace = nullptr);
BlockEstimate cls_heuristic(const Graph& g, int k, int restarts, int max_iters,
                            std::uint64_t seed, std::vector<double>* loss_trace = nullptr);

/// Same solver applied to a known conditional-probability matrix instead of
/// an adjacency matrix.
BlockEstimate oracle_cls(const Eigen::MatrixXd& theta, int k, int restarts, int max_iters,
                         std::uint64_t seed);

/// (1/n^2) sum over all ordered pairs of squared deviations.
double mse(const Eigen::MatrixXd& theta_hat, const Eigen::MatrixXd& theta);

/// Group count for smooth graphons: floor(n^{1/(1 + min(alpha,1))}), in [1,n].
int graphon_k_select(int n, double alpha);

} // namespace latnet
