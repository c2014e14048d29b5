#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "symdicut/digraph.hpp"

namespace symdicut {

/// Symmetric directed vertex multicut instance: delete at most k vertices
/// so that no request pair shares a strongly connected component.
struct MulticutInstance {
    Digraph D;
    std::vector<std::pair<Vertex, Vertex>> requests;
    int k = 0;
};

namespace exact_kl {

/// |X| <= k and every request (s,t) has s, t in distinct SCCs of D - X
/// (vacuous when an endpoint is deleted).
bool validate_solution(const MulticutInstance& inst, const VertexSet& X);

/// Ordered partition of the terminal set: blocks[0] is the deleted part
/// T_0 (may be empty), blocks[1..r] are the nonempty ordered classes.
struct TerminalPartition {
    std::vector<VertexSet> blocks;

    bool operator==(const TerminalPartition&) const = default;
    bool operator<(const TerminalPartition& o) const {
        return blocks < o.blocks;
    }
};

/// Streams every ordered partition of T into labels 0..num_labels-1
/// (label 0 is the deleted part; empty inner blocks compacted, duplicates
/// skipped), rejecting partitions that put both endpoints of a request
/// into the same inner block. Stops early when the visitor returns true.
void for_each_labeled_partition(
    const VertexSet& T, int num_labels,
    const std::vector<std::pair<Vertex, Vertex>>& C,
    const std::function<bool(const TerminalPartition&)>& visit);

/// Labels 0..2|C|, the bound needed for multicut terminal guessing.
void for_each_partition(
    const VertexSet& T, const std::vector<std::pair<Vertex, Vertex>>& C,
    const std::function<bool(const TerminalPartition&)>& visit);

/// Materialized variant (desk-scale only).
std::vector<TerminalPartition> enumerate_partitions(
    const VertexSet& T, const std::vector<std::pair<Vertex, Vertex>>& C);

/// Exact solver parameterized by k + number of requests.
std::optional<VertexSet> solve_exact_kl(const MulticutInstance& inst);

}  // namespace exact_kl
}  // namespace symdicut
