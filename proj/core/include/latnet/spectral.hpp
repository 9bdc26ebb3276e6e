#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "latnet/community.hpp"
#include "latnet/graph.hpp"

namespace latnet {

/// Normalized Laplacian D^{-1/2} M D^{-1/2} of a symmetric hollow matrix,
/// restricted to nodes of positive degree. Zero-degree nodes are recorded in
/// `isolated` and excluded before inversion. tau = min_i D_ii / n over all
/// nodes of the input.
struct LaplacianResult {
    Eigen::MatrixXd L;
    std::vector<int> kept;     // 0-based original node indices, ascending
    std::vector<int> isolated; // 0-based
    double tau = 0.0;
};

LaplacianResult laplacian(const Eigen::MatrixXd& M);
LaplacianResult laplacian(const Graph& g);

struct EigenPairs {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

/// Eigenpairs of the k largest-in-magnitude eigenvalues of a symmetric matrix,
/// ordered by |lambda| descending with ties by signed value descending.
/// Each vector is normalized with its first nonzero component positive.
EigenPairs top_k_eigvecs(const Eigen::MatrixXd& S, int k);

struct KMeansResult {
    std::vector<int> labels; // 0-based cluster ids
    Eigen::MatrixXd centroids;
    double objective = 0.0;
    bool degenerate = false; // fewer distinct points than clusters
};

/// Lloyd iterations with k-means++ seeding and restarts; squared-Euclidean
/// objective, non-increasing per iteration; empty clusters are re-seeded from
/// the farthest point. Deterministic given seed.
KMeansResult kmeans(const Eigen::MatrixXd& points, int k, int restarts, std::uint64_t seed);

struct ClusterResult {
    CommunityAssignment assignment;
    Eigen::MatrixXd centroids;
    Eigen::VectorXd eigenvalues;
    double tau = 0.0;
    std::vector<int> isolated;         // 1-based node ids assigned post-hoc
    std::optional<int> misclustered;   // filled when the graph carries truth
    int max_group_size = 0;
};

/// Laplacian -> top-k eigenvectors -> k-means on the embedding rows. Isolated
/// nodes are assigned to the largest resulting cluster and flagged.
ClusterResult spectral_cluster(const Graph& g, int k, std::uint64_t seed);
ClusterResult spectral_cluster(const Eigen::MatrixXd& M, int k, std::uint64_t seed);

/// Minimal Hamming distance between two assignments over all label
/// permutations. Exhaustive over k! permutations; guarded to k <= 8 (an
/// assignment-problem solver would lift this, not needed at experiment scale).
int misclustered_count(const CommunityAssignment& z_hat, const CommunityAssignment& z_star);

/// Frobenius norm of L*L - Lbar*Lbar for same-size matrices.
double laplacian_discrepancy(const Eigen::MatrixXd& L, const Eigen::MatrixXd& L_bar);

} // namespace latnet
