#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "latnet/community.hpp"
#include "latnet/ordering.hpp"

namespace latnet {

/// Ordered edge variables B_1..B_N of a graph under some ordering.
struct EdgeChain {
    std::vector<std::uint8_t> bits;
};

/// Symmetric hollow binary adjacency matrix, stored as the upper triangle in
/// lexicographic pair order. Simulated graphs optionally carry the ordering
/// they were generated under, the ground-truth assignment, and the matrix of
/// conditional edge probabilities.
class Graph {
public:
    explicit Graph(int n);

    int n() const { return n_; }
    std::int64_t num_pairs() const { return static_cast<std::int64_t>(bits_.size()); }

    bool edge(int i, int j) const;
    void set_edge(int i, int j, bool present);

    std::int64_t edge_count() const;
    std::vector<int> degrees() const;

    const std::vector<std::uint8_t>& pair_bits() const { return bits_; }
    std::vector<std::uint8_t>& pair_bits() { return bits_; }

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && bits_ == other.bits_;
    }

    std::optional<Ordering> ordering;
    std::optional<CommunityAssignment> truth;
    std::optional<Eigen::MatrixXd> theta;

private:
    int n_;
    std::vector<std::uint8_t> bits_;
};

EdgeChain chain_from_graph(const Graph& g, const Ordering& ordering);
Graph graph_from_chain(const EdgeChain& chain, const Ordering& ordering, int n);

/// Dense double adjacency matrix (hollow, symmetric).
Eigen::MatrixXd adjacency_matrix(const Graph& g);

/// Edge-list format: first line "n <count>", then one "<i> <j>" line per edge
/// with i < j, 1-based, sorted lexicographically. Blank lines and '#'
/// comments are ignored on read.
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);
void write_edge_list_file(const std::string& path, const Graph& g);
Graph read_edge_list_file(const std::string& path);

} // namespace latnet
