#include "latnet/community.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace latnet {

void CommunityAssignment::validate(bool require_covering) const {
    if (n < 1 || k < 1) throw std::invalid_argument("assignment needs n >= 1 and k >= 1");
    if (static_cast<int>(labels.size()) != n)
        throw std::invalid_argument("assignment has " + std::to_string(labels.size()) +
                                    " labels for n=" + std::to_string(n));
    std::vector<int> sizes(k, 0);
    for (int label : labels) {
        if (label < 1 || label > k)
            throw std::invalid_argument("group label " + std::to_string(label) +
                                        " outside [1," + std::to_string(k) + "]");
        ++sizes[label - 1];
    }
    if (require_covering) {
        for (int g = 0; g < k; ++g)
            if (sizes[g] == 0)
                throw std::invalid_argument("group " + std::to_string(g + 1) + " is empty");
    }
}

std::vector<int> CommunityAssignment::group_sizes() const {
    std::vector<int> sizes(k, 0);
    for (int label : labels) ++sizes[label - 1];
    return sizes;
}

int CommunityAssignment::max_group_size() const {
    const auto sizes = group_sizes();
    return *std::max_element(sizes.begin(), sizes.end());
}

CommunityAssignment CommunityAssignment::balanced(int n, int k) {
    std::vector<double> proportions(k, 1.0 / k);
    return from_proportions(n, proportions);
}

CommunityAssignment CommunityAssignment::from_proportions(int n,
                                                          const std::vector<double>& proportions) {
    if (n < 1 || proportions.empty())
        throw std::invalid_argument("need n >= 1 and at least one group proportion");
    double total = 0.0;
    for (double p : proportions) {
        if (p <= 0.0) throw std::invalid_argument("group proportions must be positive");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("group proportions must sum to 1");
    const int k = static_cast<int>(proportions.size());
    if (n < k) throw std::invalid_argument("fewer nodes than groups");

    CommunityAssignment z;
    z.n = n;
    z.k = k;
    z.labels.reserve(n);
    double cum = 0.0;
    int assigned = 0;
    for (int g = 1; g <= k; ++g) {
        cum += proportions[g - 1];
        int upto = (g == k) ? n : std::min(n, static_cast<int>(std::llround(cum * n)));
        upto = std::max(upto, assigned + 1); // keep every group nonempty
        upto = std::min(upto, n - (k - g));  // leave room for the remaining groups
        for (; assigned < upto; ++assigned) z.labels.push_back(g);
    }
    z.validate(true);
    return z;
}

CommunityAssignment read_labels(std::istream& in) {
    std::vector<std::pair<int, int>> entries;
    std::string line;
    int max_node = 0, max_group = 0;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int node = 0, group = 0;
        if (!(ls >> node)) continue; // blank or comment-only line
        if (!(ls >> group)) throw std::invalid_argument("label line needs \"node group\": " + line);
        if (node < 1 || group < 1) throw std::invalid_argument("labels are 1-based: " + line);
        entries.emplace_back(node, group);
        max_node = std::max(max_node, node);
        max_group = std::max(max_group, group);
    }
    if (entries.empty()) throw std::invalid_argument("label file is empty");
    CommunityAssignment z;
    z.n = max_node;
    z.k = max_group;
    z.labels.assign(max_node, 0);
    for (const auto& [node, group] : entries) {
        if (z.labels[node - 1] != 0) throw std::invalid_argument("duplicate node in label file");
        z.labels[node - 1] = group;
    }
    for (int i = 0; i < max_node; ++i)
        if (z.labels[i] == 0)
            throw std::invalid_argument("node " + std::to_string(i + 1) + " has no label");
    z.validate(false);
    return z;
}

void write_labels(std::ostream& out, const CommunityAssignment& z) {
    for (int i = 0; i < z.n; ++i) out << (i + 1) << ' ' << z.labels[i] << '\n';
}

} // namespace latnet
