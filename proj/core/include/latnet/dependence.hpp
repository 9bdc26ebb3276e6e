#pragma once

#include <cstdint>
#include <vector>

#include "latnet/generators.hpp"
#include "latnet/ordering.hpp"

namespace latnet {

/// Dependence diagnostics of a two-state kernel (memory 1).
/// chi = 1 - 2 alpha' with alpha' the minimal transition probability;
/// the exact decay rate |p1 - p0| is bounded by chi.
struct DependenceProfile {
    double chi = 0.0;
    double alpha_prime = 0.0;
    int memory = 1;
    double p_tilde = 0.0;    // maximal one-step conditional spread = |p1 - p0|
    double exact_rate = 0.0; // |p1 - p0|
    double p0 = 0.0;
    double p1 = 0.0;

    /// Closed-form dependence measure at lag k.
    double delta(int k) const;
};

/// Requires p0, p1 strictly inside (0,1); boundary values make alpha' = 0 and
/// the chi bound undefined.
DependenceProfile chi_of_two_state(double p0, double p1);

struct KStepConditionals {
    double one_given_zero = 0.0;
    double one_given_one = 0.0;
    double zero_given_one = 0.0;
    double zero_given_zero = 0.0;
};

/// P(B_j = a | B_{j-k} = b) in closed form:
/// P_k(1|0) = p - p r^k, P_k(1|1) = p + (1-p) r^k with r = p1 - p0.
KStepConditionals k_step_conditionals(double p0, double p1, int k);

/// Delta(k) = max(p, 1-p) |p1 - p0|^k for the first-order two-state chain.
double delta_closed_form(double p0, double p1, int k);

struct DeltaEstimate {
    double value = 0.0;
    double std_error = 0.0;
    int undefined_cells = 0; // conditioning events never observed, excluded from the max
};

/// Monte Carlo estimate of the dependence measure at lag k from R independent
/// chain replications: max over requested positions i, outcomes s and
/// conditioning values b of |P(B_i=s | B_{i-k}=b) - P(B_i=s)|, all estimated
/// empirically. Conditioning uses only B_{i-k}, exact for the memory-1 models
/// generated here. The standard error is the normal approximation for the
/// argmax cell. Requires R >= 100 and positions within [k+1, N].
DeltaEstimate delta_empirical(const GeneratorSpec& spec, const Ordering& ordering, int k,
                              const std::vector<std::int64_t>& positions, int R,
                              std::uint64_t seed);

/// G(chi, N, u) = sum_{r=0}^{N} r^u chi^{r/2}, with 0^0 = 1. Requires chi in [0,1).
double g_function(double chi, std::int64_t N, int u);

} // namespace latnet
