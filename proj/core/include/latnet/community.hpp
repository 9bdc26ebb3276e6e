#pragma once

#include <iosfwd>
#include <vector>

namespace latnet {

/// Assignment of n nodes to k groups. labels[i] is the group of node i+1,
/// in [1, k]. Ground-truth assignments used for generation must cover every
/// group; estimates are allowed to leave groups empty.
struct CommunityAssignment {
    int n = 0;
    int k = 0;
    std::vector<int> labels;

    /// Throws std::invalid_argument on malformed labels;
    /// require_covering additionally demands every group nonempty.
    void validate(bool require_covering = false) const;

    std::vector<int> group_sizes() const;
    int max_group_size() const;

    /// Contiguous near-equal groups: nodes 1..ceil(n/k) in group 1, etc.
    static CommunityAssignment balanced(int n, int k);
    /// Contiguous groups with the given size proportions (must sum to ~1).
    static CommunityAssignment from_proportions(int n, const std::vector<double>& proportions);
};

/// Label file: one "node group" pair per line, 1-based, '#' comments ignored.
CommunityAssignment read_labels(std::istream& in);
void write_labels(std::ostream& out, const CommunityAssignment& z);

} // namespace latnet
