#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "symdicut/digraph.hpp"
#include "symdicut/exact_kl.hpp"

namespace symdicut::approx2 {

/// nullopt means "no solution of size at most k exists"; a value is a
/// solution within the wrapper's approximation budget.
using Outcome = std::optional<VertexSet>;

/// Compression solver: given the instance restricted to the current
/// vertex prefix and a known solution Y (ordered), return an improved
/// solution or conclude no solution of size <= k exists.
using CompressionSolver = std::function<Outcome(
    const MulticutInstance& inst, const std::vector<Vertex>& Y)>;

/// Generic iterative compression: processes vertices in id order,
/// maintaining a solution of the growing induced instance.
Outcome iterative_compression(const MulticutInstance& inst,
                              const CompressionSolver& inner);

/// One compression step of the 2-approximation: from a solution Y of
/// size <= 2k+1 to a solution of size <= 2k, or NoSolutionAtMostK.
Outcome compress_2approx(const MulticutInstance& inst,
                         const std::vector<Vertex>& Y);

/// X_0 disjoint from Y, |X_0| <= k, killing every (y_j, y_i)-path with
/// j > i; nullopt when no such set exists.
std::optional<VertexSet> skew_cut_of_Y(const Digraph& D,
                                       const std::vector<Vertex>& Y, int k);

/// One strongly connected piece left after the component reductions.
struct CenteredComponent {
    Digraph H;
    Vertex center = 0;
    std::vector<std::pair<Vertex, Vertex>> requests;
};

/// Applies the three solution-set-preserving reductions (drop vertices
/// strongly connected to no y, drop cross-component requests, delete
/// inter-SCC arcs) and splits the result into centered components.
/// Requires that D has no (y_j, y_i)-path for j > i and each y lives in
/// its own SCC.
std::vector<CenteredComponent> simplify_components(
    const Digraph& D, const std::vector<std::pair<Vertex, Vertex>>& C,
    const std::vector<Vertex>& Y);

struct SingleCenterStats {
    long long leaves = 0;
};

/// Exact solver for one strongly connected component with a single
/// undeletable center y; requests are satisfiable only by vertex
/// deletions that break the s–y–t co-circulation.
std::optional<VertexSet> solve_single_center(
    const Digraph& H, Vertex y,
    const std::vector<std::pair<Vertex, Vertex>>& requests, int k,
    SingleCenterStats* stats = nullptr);

/// Full pipeline: either a valid solution of size <= 2k or the verdict
/// that no solution of size <= k exists.
Outcome approx2_solve(const MulticutInstance& inst);

}  // namespace symdicut::approx2
