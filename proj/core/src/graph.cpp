#include "latnet/graph.hpp"

#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace latnet {

Graph::Graph(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("graph needs n >= 1");
    bits_.assign(static_cast<std::size_t>(static_cast<std::int64_t>(n) * (n - 1) / 2), 0);
}

bool Graph::edge(int i, int j) const {
    return bits_[static_cast<std::size_t>(Ordering::pair_index(n_, i, j))] != 0;
}

void Graph::set_edge(int i, int j, bool present) {
    bits_[static_cast<std::size_t>(Ordering::pair_index(n_, i, j))] = present ? 1 : 0;
}

std::int64_t Graph::edge_count() const {
    return std::accumulate(bits_.begin(), bits_.end(), std::int64_t{0});
}

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(n_, 0);
    std::int64_t t = 0;
    for (int i = 1; i < n_; ++i) {
        for (int j = i + 1; j <= n_; ++j, ++t) {
            if (bits_[static_cast<std::size_t>(t)]) {
                ++deg[i - 1];
                ++deg[j - 1];
            }
        }
    }
    return deg;
}

EdgeChain chain_from_graph(const Graph& g, const Ordering& ordering) {
    if (ordering.n() != g.n())
        throw std::invalid_argument("ordering is for n=" + std::to_string(ordering.n()) +
                                    ", graph has n=" + std::to_string(g.n()));
    EdgeChain chain;
    chain.bits.resize(static_cast<std::size_t>(g.num_pairs()));
    std::int64_t t = 0;
    for (int i = 1; i < g.n(); ++i)
        for (int j = i + 1; j <= g.n(); ++j, ++t)
            chain.bits[static_cast<std::size_t>(ordering.position(i, j) - 1)] =
                g.pair_bits()[static_cast<std::size_t>(t)];
    return chain;
}

Graph graph_from_chain(const EdgeChain& chain, const Ordering& ordering, int n) {
    if (ordering.n() != n) throw std::invalid_argument("ordering/graph size mismatch");
    Graph g(n);
    if (static_cast<std::int64_t>(chain.bits.size()) != g.num_pairs())
        throw std::invalid_argument("chain length " + std::to_string(chain.bits.size()) +
                                    " does not match n(n-1)/2 = " + std::to_string(g.num_pairs()));
    for (std::int64_t s = 1; s <= g.num_pairs(); ++s) {
        if (chain.bits[static_cast<std::size_t>(s - 1)]) {
            const auto [i, j] = ordering.pair_at(s);
            g.set_edge(i, j, true);
        }
    }
    return g;
}

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(g.n(), g.n());
    std::int64_t t = 0;
    for (int i = 1; i < g.n(); ++i)
        for (int j = i + 1; j <= g.n(); ++j, ++t)
            if (g.pair_bits()[static_cast<std::size_t>(t)]) A(i - 1, j - 1) = A(j - 1, i - 1) = 1.0;
    return A;
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "n " << g.n() << '\n';
    std::int64_t t = 0;
    for (int i = 1; i < g.n(); ++i)
        for (int j = i + 1; j <= g.n(); ++j, ++t)
            if (g.pair_bits()[static_cast<std::size_t>(t)]) out << i << ' ' << j << '\n';
}

Graph read_edge_list(std::istream& in) {
    std::string line;
    int n = -1;
    std::optional<Graph> g;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (n < 0) {
            std::string tag;
            if (!(ls >> tag)) continue;
            if (tag != "n" || !(ls >> n) || n < 1)
                throw std::invalid_argument("edge list must start with \"n <count>\" (line " +
                                            std::to_string(lineno) + ")");
            g.emplace(n);
            continue;
        }
        int i = 0, j = 0;
        if (!(ls >> i)) continue;
        if (!(ls >> j))
            throw std::invalid_argument("edge line needs two nodes (line " + std::to_string(lineno) + ")");
        if (i < 1 || j < 1 || i > n || j > n || i >= j)
            throw std::invalid_argument("edge must satisfy 1 <= i < j <= n (line " +
                                        std::to_string(lineno) + ")");
        g->set_edge(i, j, true);
    }
    if (!g) throw std::invalid_argument("edge list is empty");
    return *g;
}

void write_edge_list_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_edge_list(out, g);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_edge_list(in);
}

} // namespace latnet
