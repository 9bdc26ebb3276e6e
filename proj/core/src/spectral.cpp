#include "latnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "latnet/errors.hpp"
#include "latnet/rng.hpp"

namespace latnet {

namespace {

void check_symmetric(const Eigen::MatrixXd& M, double tol) {
    if (M.rows() != M.cols()) throw std::invalid_argument("matrix must be square");
    for (int i = 0; i < M.rows(); ++i)
        for (int j = i + 1; j < M.cols(); ++j)
            if (std::abs(M(i, j) - M(j, i)) > tol)
                throw std::invalid_argument("matrix must be symmetric");
}

} // namespace

LaplacianResult laplacian(const Eigen::MatrixXd& M) {
    check_symmetric(M, 1e-10);
    const int n = static_cast<int>(M.rows());
    for (int i = 0; i < n; ++i)
        if (M(i, i) != 0.0) throw std::invalid_argument("input must be hollow");

    LaplacianResult result;
    Eigen::VectorXd deg = M.rowwise().sum();
    result.tau = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        result.tau = std::min(result.tau, deg(i) / n);
        if (deg(i) > 0.0)
            result.kept.push_back(i);
        else
            result.isolated.push_back(i);
    }
    if (result.kept.empty()) throw DegenerateError("all nodes have zero degree; Laplacian is empty");

    const int m = static_cast<int>(result.kept.size());
    result.L.resize(m, m);
    for (int a = 0; a < m; ++a) {
        const double da = deg(result.kept[a]);
        for (int b = 0; b < m; ++b)
            result.L(a, b) = M(result.kept[a], result.kept[b]) / std::sqrt(da * deg(result.kept[b]));
    }
    return result;
}

LaplacianResult laplacian(const Graph& g) { return laplacian(adjacency_matrix(g)); }

EigenPairs top_k_eigvecs(const Eigen::MatrixXd& S, int k) {
    check_symmetric(S, 1e-10);
    const int n = static_cast<int>(S.rows());
    if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= dim");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto& vals = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const double ma = std::abs(vals(a)), mb = std::abs(vals(b));
        if (ma != mb) return ma > mb;
        return vals(a) > vals(b);
    });

    EigenPairs out;
    out.values.resize(k);
    out.vectors.resize(n, k);
    for (int c = 0; c < k; ++c) {
        out.values(c) = vals(order[c]);
        Eigen::VectorXd v = solver.eigenvectors().col(order[c]);
        for (int i = 0; i < n; ++i) {
            if (std::abs(v(i)) > 1e-12) {
                if (v(i) < 0.0) v = -v;
                break;
            }
        }
        out.vectors.col(c) = v;
    }
    return out;
}

KMeansResult kmeans(const Eigen::MatrixXd& points, int k, int restarts, std::uint64_t seed) {
    const int n = static_cast<int>(points.rows());
    const int dim = static_cast<int>(points.cols());
    if (k < 1 || n < k) throw std::invalid_argument("k-means needs n >= k >= 1");
    if (restarts < 1) throw std::invalid_argument("need restarts >= 1");

    KMeansResult best;
    best.objective = std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < restarts; ++restart) {
        Rng rng(derive_seed(seed, restart));
        Eigen::MatrixXd centroids(k, dim);

        // k-means++ seeding
        centroids.row(0) = points.row(static_cast<int>(rng.below(n)));
        Eigen::VectorXd dist2(n);
        for (int i = 0; i < n; ++i) dist2(i) = (points.row(i) - centroids.row(0)).squaredNorm();
        for (int c = 1; c < k; ++c) {
            const double total = dist2.sum();
            int pick;
            if (total <= 0.0) {
                pick = static_cast<int>(rng.below(n)); // duplicates everywhere
            } else {
                double target = rng.uniform() * total;
                pick = n - 1;
                for (int i = 0; i < n; ++i) {
                    target -= dist2(i);
                    if (target <= 0.0) {
                        pick = i;
                        break;
                    }
                }
            }
            centroids.row(c) = points.row(pick);
            for (int i = 0; i < n; ++i)
                dist2(i) = std::min(dist2(i), (points.row(i) - centroids.row(c)).squaredNorm());
        }

        std::vector<int> labels(n, 0);
        bool degenerate = false;
        for (int iter = 0; iter < 100; ++iter) {
            bool changed = (iter == 0);
            for (int i = 0; i < n; ++i) {
                int arg = 0;
                double bestd = (points.row(i) - centroids.row(0)).squaredNorm();
                for (int c = 1; c < k; ++c) {
                    const double d = (points.row(i) - centroids.row(c)).squaredNorm();
                    if (d < bestd) {
                        bestd = d;
                        arg = c;
                    }
                }
                if (arg != labels[i]) {
                    labels[i] = arg;
                    changed = true;
                }
            }
            if (!changed) break;

            std::vector<int> counts(k, 0);
            Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, dim);
            for (int i = 0; i < n; ++i) {
                ++counts[labels[i]];
                sums.row(labels[i]) += points.row(i);
            }
            for (int c = 0; c < k; ++c) {
                if (counts[c] > 0) {
                    centroids.row(c) = sums.row(c) / counts[c];
                    continue;
                }
                // re-seed an empty cluster from the farthest point
                int far = 0;
                double fard = -1.0;
                for (int i = 0; i < n; ++i) {
                    const double d = (points.row(i) - centroids.row(labels[i])).squaredNorm();
                    if (d > fard) {
                        fard = d;
                        far = i;
                    }
                }
                centroids.row(c) = points.row(far);
                if (fard <= 0.0) degenerate = true; // fewer distinct points than clusters
            }
        }

        double objective = 0.0;
        for (int i = 0; i < n; ++i)
            objective += (points.row(i) - centroids.row(labels[i])).squaredNorm();
        if (objective < best.objective) {
            best.labels = labels;
            best.centroids = centroids;
            best.objective = objective;
            best.degenerate = degenerate;
        }
    }
    return best;
}

namespace {

constexpr int kKmeansRestarts = 10;

ClusterResult cluster_matrix(const Eigen::MatrixXd& M, int k, std::uint64_t seed) {
    LaplacianResult lap = laplacian(M);
    const int n = static_cast<int>(M.rows());
    if (static_cast<int>(lap.kept.size()) < k)
        throw std::invalid_argument("fewer non-isolated nodes than requested clusters");

    const EigenPairs eig = top_k_eigvecs(lap.L, k);
    const KMeansResult km = kmeans(eig.vectors, k, kKmeansRestarts, seed);

    ClusterResult result;
    result.assignment.n = n;
    result.assignment.k = k;
    result.assignment.labels.assign(n, 0);
    for (std::size_t a = 0; a < lap.kept.size(); ++a)
        result.assignment.labels[lap.kept[a]] = km.labels[a] + 1;

    std::vector<int> sizes(k, 0);
    for (int lbl : km.labels) ++sizes[lbl];
    const int largest =
        static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin()) + 1;
    for (int node : lap.isolated) {
        result.assignment.labels[node] = largest;
        result.isolated.push_back(node + 1);
    }

    result.centroids = km.centroids;
    result.eigenvalues = eig.values;
    result.tau = lap.tau;
    result.max_group_size = result.assignment.max_group_size();
    return result;
}

} // namespace

ClusterResult spectral_cluster(const Eigen::MatrixXd& M, int k, std::uint64_t seed) {
    return cluster_matrix(M, k, seed);
}

ClusterResult spectral_cluster(const Graph& g, int k, std::uint64_t seed) {
    ClusterResult result = cluster_matrix(adjacency_matrix(g), k, seed);
    if (g.truth) result.misclustered = misclustered_count(result.assignment, *g.truth);
    return result;
}

int misclustered_count(const CommunityAssignment& z_hat, const CommunityAssignment& z_star) {
    if (z_hat.n != z_star.n) throw std::invalid_argument("assignments have different n");
    const int k = std::max(z_hat.k, z_star.k);
    if (k > 8)
        throw std::invalid_argument("misclustered_count enumerates k! permutations; k > 8 needs an "
                                    "assignment-problem solver");
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 1);
    int best = z_hat.n;
    do {
        int mismatches = 0;
        for (int i = 0; i < z_hat.n; ++i)
            if (perm[z_hat.labels[i] - 1] != z_star.labels[i]) ++mismatches;
        best = std::min(best, mismatches);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

double laplacian_discrepancy(const Eigen::MatrixXd& L, const Eigen::MatrixXd& L_bar) {
    if (L.rows() != L_bar.rows() || L.cols() != L_bar.cols())
        throw std::invalid_argument("Laplacians have different sizes");
    return (L * L - L_bar * L_bar).norm();
}

} // namespace latnet
