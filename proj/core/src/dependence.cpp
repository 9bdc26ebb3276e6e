#include "latnet/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "latnet/errors.hpp"

namespace latnet {

namespace {

double two_state_p(double p0, double p1) {
    const double denom = 1.0 + p0 - p1;
    if (denom <= 0.0 || (p0 == 0.0 && p1 == 1.0))
        throw DegenerateError("stationary probability undefined (0/0)");
    return p0 / denom;
}

} // namespace

double DependenceProfile::delta(int k) const { return delta_closed_form(p0, p1, k); }

DependenceProfile chi_of_two_state(double p0, double p1) {
    if (!(p0 > 0.0 && p0 < 1.0 && p1 > 0.0 && p1 < 1.0))
        throw std::invalid_argument(
            "chi bound needs p0, p1 strictly inside (0,1); boundary values give alpha'=0");
    DependenceProfile profile;
    profile.alpha_prime = std::min(std::min(p0, 1.0 - p0), std::min(p1, 1.0 - p1));
    profile.chi = 1.0 - 2.0 * profile.alpha_prime;
    profile.memory = 1;
    profile.p_tilde = std::abs(p1 - p0);
    profile.exact_rate = std::abs(p1 - p0);
    profile.p0 = p0;
    profile.p1 = p1;
    return profile;
}

KStepConditionals k_step_conditionals(double p0, double p1, int k) {
    if (k < 1) throw std::invalid_argument("k-step conditionals need k >= 1");
    const double p = two_state_p(p0, p1);
    const double r = std::pow(p1 - p0, k);
    KStepConditionals c;
    c.one_given_zero = p - p * r;
    c.one_given_one = p + (1.0 - p) * r;
    c.zero_given_one = 1.0 - c.one_given_one;
    c.zero_given_zero = 1.0 - c.one_given_zero;
    return c;
}

double delta_closed_form(double p0, double p1, int k) {
    if (k < 1) throw std::invalid_argument("dependence measure needs k >= 1");
    const double p = two_state_p(p0, p1);
    return std::max(p, 1.0 - p) * std::pow(std::abs(p1 - p0), k);
}

DeltaEstimate delta_empirical(const GeneratorSpec& spec, const Ordering& ordering, int k,
                              const std::vector<std::int64_t>& positions, int R,
                              std::uint64_t seed) {
    if (R < 100) throw std::invalid_argument("delta_empirical needs R >= 100");
    if (k < 1) throw std::invalid_argument("delta_empirical needs k >= 1");
    if (positions.empty()) throw std::invalid_argument("no chain positions requested");
    const std::int64_t N = ordering.num_pairs();
    for (std::int64_t pos : positions)
        if (pos < k + 1 || pos > N)
            throw std::invalid_argument("position " + std::to_string(pos) + " outside [k+1, N]");

    const std::size_t P = positions.size();
    std::vector<std::int64_t> ones(P, 0);          // B_i = 1
    std::vector<std::int64_t> cond_count(2 * P, 0); // B_{i-k} = b
    std::vector<std::int64_t> joint_ones(2 * P, 0); // B_i = 1 and B_{i-k} = b
    for (int rep = 0; rep < R; ++rep) {
        const auto bits = generate_chain(spec, ordering, derive_seed(seed, rep));
        for (std::size_t t = 0; t < P; ++t) {
            const std::uint8_t now = bits[static_cast<std::size_t>(positions[t] - 1)];
            const std::uint8_t back = bits[static_cast<std::size_t>(positions[t] - 1 - k)];
            ones[t] += now;
            cond_count[2 * t + back] += 1;
            joint_ones[2 * t + back] += now;
        }
    }

    DeltaEstimate est;
    double best = -1.0, best_se = 0.0;
    int undefined = 0;
    for (std::size_t t = 0; t < P; ++t) {
        const double p_marg1 = static_cast<double>(ones[t]) / R;
        for (int b = 0; b < 2; ++b) {
            const std::int64_t nb = cond_count[2 * t + b];
            if (nb == 0) {
                undefined += 2; // both outcomes of this conditioning cell
                continue;
            }
            const double p_cond1 = static_cast<double>(joint_ones[2 * t + b]) / nb;
            for (int s = 0; s < 2; ++s) {
                const double pc = s ? p_cond1 : 1.0 - p_cond1;
                const double pm = s ? p_marg1 : 1.0 - p_marg1;
                const double dev = std::abs(pc - pm);
                if (dev > best) {
                    best = dev;
                    best_se = std::sqrt(pc * (1.0 - pc) / nb + pm * (1.0 - pm) / R);
                }
            }
        }
    }
    if (best < 0.0) throw std::runtime_error("every conditioning event was unobserved");
    est.value = best;
    est.std_error = best_se;
    est.undefined_cells = undefined;
    return est;
}

double g_function(double chi, std::int64_t N, int u) {
    if (!(chi >= 0.0 && chi < 1.0)) throw std::invalid_argument("g_function needs chi in [0,1)");
    if (N < 0 || u < 0) throw std::invalid_argument("g_function needs N >= 0 and u >= 0");
    const double half = std::sqrt(chi);
    double sum = (u == 0) ? 1.0 : 0.0; // r = 0 term, 0^0 = 1
    double power = 1.0;
    for (std::int64_t r = 1; r <= N; ++r) {
        power *= half;
        if (power == 0.0) break; // geometric underflow, remaining terms vanish
        sum += std::pow(static_cast<double>(r), u) * power;
    }
    return sum;
}

} // namespace latnet
