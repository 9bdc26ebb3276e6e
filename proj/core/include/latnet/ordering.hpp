#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace latnet {

enum class OrderingKind { Omega1, Omega2, PreferentialAttachment, Random, Explicit };

const char* ordering_kind_name(OrderingKind kind);
OrderingKind ordering_kind_from_name(const std::string& name);

/// Bijection between unordered node pairs {i,j} (1-based, i != j) and chain
/// positions 1..N with N = n(n-1)/2. The built-in kinds use closed-form
/// position/inverse maps; Random and Explicit store the permutation.
///
/// Omega1 enumerates all pairs containing node 1 first, then node 2, ...
/// Omega2 enumerates pairs by increasing j-i, ties by increasing i.
/// PreferentialAttachment enumerates by increasing max(i,j), ties by min.
class Ordering {
public:
    static Ordering omega1(int n);
    static Ordering omega2(int n);
    static Ordering preferential_attachment(int n);
    /// Seeded Fisher-Yates permutation of the Omega1 enumeration.
    static Ordering random(int n, std::uint64_t seed);
    /// forward[t] = chain position of the t-th pair in lexicographic order.
    static Ordering explicit_map(int n, std::vector<std::int64_t> forward);

    int n() const { return n_; }
    std::int64_t num_pairs() const { return static_cast<std::int64_t>(n_) * (n_ - 1) / 2; }
    OrderingKind kind() const { return kind_; }

    /// Chain position of the unordered pair {i,j}; symmetric in i and j.
    std::int64_t position(int i, int j) const;
    /// Pair occupying position s (1 <= s <= N), returned with i < j.
    std::pair<int, int> pair_at(std::int64_t s) const;

    /// 0-based index of {i,j} in the lexicographic upper-triangle enumeration.
    static std::int64_t pair_index(int n, int i, int j);
    static std::pair<int, int> pair_from_index(int n, std::int64_t idx);

private:
    Ordering(int n, OrderingKind kind) : n_(n), kind_(kind) {}

    int n_;
    OrderingKind kind_;
    std::vector<std::int64_t> forward_; // lexicographic pair index -> position-1
    std::vector<std::int64_t> inverse_; // position-1 -> lexicographic pair index
};

/// Factory matching the CLI surface. seed is required iff kind == Random.
Ordering make_ordering(OrderingKind kind, int n,
                       std::optional<std::uint64_t> seed = std::nullopt);

} // namespace latnet
