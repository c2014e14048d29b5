#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "symdicut/digraph.hpp"

namespace symdicut::skew {

/// Skew multicut: find X, |X| <= k, disjoint from all terminals, such
/// that D - X has no (s_j, t_i)-path for any j >= i over the ordered
/// pair list.
struct SkewInstance {
    Digraph D;
    std::vector<std::pair<Vertex, Vertex>> pairs;  // (s_1,t_1)..(s_r,t_r)
    int k = 0;
};

/// Returns a hitting set of size <= k, or nullopt when none exists.
std::optional<VertexSet> solve_skew(const SkewInstance& inst);

/// True iff X is disjoint from the terminals, |X| <= k, and no forbidden
/// path survives in D - X.
bool skew_solution_valid(const SkewInstance& inst, const VertexSet& X);

}  // namespace symdicut::skew
