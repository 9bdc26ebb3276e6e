#include "latnet/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "latnet/rng.hpp"

namespace latnet {

namespace {

void check_n(int n) {
    if (n < 2) throw std::invalid_argument("ordering requires n >= 2, got " + std::to_string(n));
}

void check_pair(int n, int i, int j) {
    if (i < 1 || j < 1 || i > n || j > n)
        throw std::invalid_argument("node out of range [1," + std::to_string(n) + "]");
    if (i == j) throw std::invalid_argument("self-pairs {i,i} have no chain position");
}

// Position of {i,j} (i<j) when pairs are enumerated row by row:
// (1,2),(1,3),...,(1,n),(2,3),...
std::int64_t pos_omega1(int n, int i, int j) {
    return static_cast<std::int64_t>(n) * (i - 1) - static_cast<std::int64_t>(i) * (i - 1) / 2 +
           (j - i);
}

// Increasing gap j-i, ties by increasing i.
std::int64_t pos_omega2(int n, int i, int j) {
    const std::int64_t d = j - i;
    return i + (2 * static_cast<std::int64_t>(n) - d) * (d - 1) / 2;
}

// Increasing max(i,j), ties by increasing i.
std::int64_t pos_pa(int i, int j) {
    return static_cast<std::int64_t>(j - 1) * (j - 2) / 2 + i;
}

} // namespace

const char* ordering_kind_name(OrderingKind kind) {
    switch (kind) {
        case OrderingKind::Omega1: return "omega1";
        case OrderingKind::Omega2: return "omega2";
        case OrderingKind::PreferentialAttachment: return "pa";
        case OrderingKind::Random: return "random";
        case OrderingKind::Explicit: return "explicit";
    }
    return "?";
}

OrderingKind ordering_kind_from_name(const std::string& name) {
    if (name == "omega1") return OrderingKind::Omega1;
    if (name == "omega2") return OrderingKind::Omega2;
    if (name == "pa") return OrderingKind::PreferentialAttachment;
    if (name == "random") return OrderingKind::Random;
    if (name == "explicit") return OrderingKind::Explicit;
    throw std::invalid_argument("unknown ordering kind: " + name);
}

std::int64_t Ordering::pair_index(int n, int i, int j) {
    check_pair(n, i, j);
    const int a = std::min(i, j), b = std::max(i, j);
    return pos_omega1(n, a, b) - 1;
}

std::pair<int, int> Ordering::pair_from_index(int n, std::int64_t idx) {
    // Row starts at s(i) = (i-1)(2n-i)/2; solve s(i) <= idx for the largest i.
    const double nn = static_cast<double>(n);
    double root = (2 * nn + 1 - std::sqrt((2 * nn + 1) * (2 * nn + 1) - 8 * (nn + idx))) / 2;
    int i = std::max(1, static_cast<int>(root));
    auto row_start = [n](int r) {
        return static_cast<std::int64_t>(r - 1) * (2 * static_cast<std::int64_t>(n) - r) / 2;
    };
    while (i > 1 && row_start(i) > idx) --i;
    while (i < n - 1 && row_start(i + 1) <= idx) ++i;
    const int j = static_cast<int>(idx - row_start(i)) + i + 1;
    return {i, j};
}

Ordering Ordering::omega1(int n) {
    check_n(n);
    return Ordering(n, OrderingKind::Omega1);
}

Ordering Ordering::omega2(int n) {
    check_n(n);
    return Ordering(n, OrderingKind::Omega2);
}

Ordering Ordering::preferential_attachment(int n) {
    check_n(n);
    return Ordering(n, OrderingKind::PreferentialAttachment);
}

Ordering Ordering::random(int n, std::uint64_t seed) {
    check_n(n);
    Ordering o(n, OrderingKind::Random);
    const std::int64_t N = o.num_pairs();
    o.forward_.resize(N);
    for (std::int64_t t = 0; t < N; ++t) o.forward_[t] = t;
    Rng rng(seed);
    for (std::int64_t t = N - 1; t > 0; --t) {
        const std::int64_t u = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(t + 1)));
        std::swap(o.forward_[t], o.forward_[u]);
    }
    o.inverse_.resize(N);
    for (std::int64_t t = 0; t < N; ++t) o.inverse_[o.forward_[t]] = t;
    return o;
}

Ordering Ordering::explicit_map(int n, std::vector<std::int64_t> forward) {
    check_n(n);
    Ordering o(n, OrderingKind::Explicit);
    const std::int64_t N = o.num_pairs();
    if (static_cast<std::int64_t>(forward.size()) != N)
        throw std::invalid_argument("explicit ordering needs n(n-1)/2 entries");
    o.forward_.resize(N);
    o.inverse_.assign(N, -1);
    for (std::int64_t t = 0; t < N; ++t) {
        const std::int64_t pos = forward[t];
        if (pos < 1 || pos > N) throw std::invalid_argument("explicit ordering position out of range");
        if (o.inverse_[pos - 1] != -1) throw std::invalid_argument("explicit ordering is not a bijection");
        o.forward_[t] = pos - 1;
        o.inverse_[pos - 1] = t;
    }
    return o;
}

std::int64_t Ordering::position(int i, int j) const {
    check_pair(n_, i, j);
    const int a = std::min(i, j), b = std::max(i, j);
    switch (kind_) {
        case OrderingKind::Omega1: return pos_omega1(n_, a, b);
        case OrderingKind::Omega2: return pos_omega2(n_, a, b);
        case OrderingKind::PreferentialAttachment: return pos_pa(a, b);
        case OrderingKind::Random:
        case OrderingKind::Explicit: return forward_[pair_index(n_, a, b)] + 1;
    }
    return 0;
}

std::pair<int, int> Ordering::pair_at(std::int64_t s) const {
    if (s < 1 || s > num_pairs())
        throw std::invalid_argument("chain position out of range: " + std::to_string(s));
    switch (kind_) {
        case OrderingKind::Omega1:
            return pair_from_index(n_, s - 1);
        case OrderingKind::Omega2: {
            // Gap-d block starts after base(d) = (2n-d)(d-1)/2 positions.
            auto base = [this](std::int64_t d) {
                return (2 * static_cast<std::int64_t>(n_) - d) * (d - 1) / 2;
            };
            std::int64_t lo = 1, hi = n_ - 1;
            while (lo < hi) { // largest d with base(d) < s
                const std::int64_t mid = (lo + hi + 1) / 2;
                if (base(mid) < s) lo = mid;
                else hi = mid - 1;
            }
            const int i = static_cast<int>(s - base(lo));
            return {i, i + static_cast<int>(lo)};
        }
        case OrderingKind::PreferentialAttachment: {
            auto base = [](std::int64_t j) { return (j - 1) * (j - 2) / 2; };
            std::int64_t lo = 2, hi = n_;
            while (lo < hi) { // largest j with base(j) < s
                const std::int64_t mid = (lo + hi + 1) / 2;
                if (base(mid) < s) lo = mid;
                else hi = mid - 1;
            }
            return {static_cast<int>(s - base(lo)), static_cast<int>(lo)};
        }
        case OrderingKind::Random:
        case OrderingKind::Explicit:
            return pair_from_index(n_, inverse_[s - 1]);
    }
    return {0, 0};
}

Ordering make_ordering(OrderingKind kind, int n, std::optional<std::uint64_t> seed) {
    switch (kind) {
        case OrderingKind::Omega1: return Ordering::omega1(n);
        case OrderingKind::Omega2: return Ordering::omega2(n);
        case OrderingKind::PreferentialAttachment: return Ordering::preferential_attachment(n);
        case OrderingKind::Random:
            if (!seed) throw std::invalid_argument("random ordering requires a seed");
            return Ordering::random(n, *seed);
        case OrderingKind::Explicit:
            throw std::invalid_argument("explicit orderings are built via Ordering::explicit_map");
    }
    throw std::invalid_argument("unknown ordering kind");
}

} // namespace latnet
