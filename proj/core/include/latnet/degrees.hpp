#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "latnet/graph.hpp"

namespace latnet {

/// Degree counts, possibly pooled across replications of the same node count.
/// graph_n is the per-graph node count (so degrees lie in [0, graph_n-1]);
/// graphs the number of pooled graphs; sum of counts = graph_n * graphs.
struct DegreeHistogram {
    int graph_n = 0;
    std::int64_t graphs = 0;
    std::map<int, std::int64_t> counts;

    std::int64_t total() const;
    std::int64_t count(int k) const;
    double freq(int k) const;
    int max_degree() const;

    /// Pools another histogram over graphs of the same size.
    void absorb(const DegreeHistogram& other);
};

DegreeHistogram degree_histogram(const Graph& g);
DegreeHistogram degree_histogram(std::span<const int> degrees, int graph_n);

struct PowerLawFit {
    double gamma0 = 0.0;
    double gamma1 = 0.0;
    int k_lo = 0; // argmax of counts over 0 <= k <= sqrt(graph_n), ties to smallest k
    int k_hi = 0; // largest degree with positive count
    int points_used = 0;
};

/// Least squares of log(count_k) on log(k) over positive-count bins in
/// [k_lo, k_hi]; k=0 never enters the regression. Throws when fewer than
/// three usable bins remain.
PowerLawFit powerlaw_fit(const DegreeHistogram& hist);

/// Total-variation distance between the degree frequencies and Poisson(lambda),
/// with the Poisson tail beyond the maximal degree summed analytically.
double poisson_tv(const DegreeHistogram& hist, double lambda);

struct TailSets {
    std::vector<int> heavy;  // {k : freq_k >= M_gamma k^-gamma}
    std::vector<int> cutoff; // {k : freq_k >= M_{gamma,mu} k^-gamma e^{-mu k}}
};

/// Normalizers satisfy sum_{k=1}^{n} M_gamma k^-gamma = 1 and
/// sum_{k=1}^{n} M_{gamma,mu} k^-gamma e^{-mu k} = 1. Requires gamma > 1.
TailSets tail_sets(const DegreeHistogram& hist, double gamma, double mu);
TailSets tail_sets(std::span<const double> freq, int n, double gamma, double mu);

struct ComponentSummary {
    std::vector<std::int64_t> sizes; // descending
    bool connected = false;
};

ComponentSummary components(const Graph& g);

} // namespace latnet
