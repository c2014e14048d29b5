#pragma once

#include <map>
#include <vector>

#include "symdicut/digraph.hpp"

namespace symdicut::cuts {

enum class CutStatus { Found, Infeasible, BudgetExceeded };

struct Cut {
    VertexSet vertices;  // the cut S, disjoint from source/sink
    VertexSet source;    // X
    VertexSet sink;      // Y
    VertexSet reach;     // vertices reachable from X in D - S

    bool operator==(const Cut& other) const {
        return vertices == other.vertices;
    }
    bool operator<(const Cut& other) const {
        if (vertices.size() != other.vertices.size())
            return vertices.size() < other.vertices.size();
        return vertices < other.vertices;
    }
};

struct MinCutResult {
    CutStatus status = CutStatus::Infeasible;
    Cut cut;  // meaningful only when status == Found
};

enum class CutSide { Closest, Farthest };

/// Minimum-capacity vertex (X,Y)-cut disjoint from X ∪ Y ∪ forbidden.
/// Unlisted vertices have capacity 1. Infeasible when Y stays reachable
/// from X through undeletable vertices alone (e.g. a direct arc), which
/// callers treat as a dead branch rather than an error. BudgetExceeded
/// when the minimum is larger than `budget`.
MinCutResult min_vertex_cut(const Digraph& D, const VertexSet& X,
                            const VertexSet& Y, int budget,
                            const std::map<Vertex, int>& capacities = {},
                            CutSide side = CutSide::Closest,
                            const VertexSet& forbidden = {});

/// True iff cut S is inclusion-minimal and no (X,Y)-cut of at most the
/// same size avoiding `forbidden` reaches strictly farther. Throws if S
/// is not an (X,Y)-cut disjoint from X ∪ Y.
bool is_important(const Digraph& D, const VertexSet& X, const VertexSet& Y,
                  const VertexSet& S, const VertexSet& forbidden = {});

/// Important cut S' with |S'| <= |S| and reach(S') ⊇ reach(S). Throws if
/// S is not an (X,Y)-cut disjoint from X ∪ Y.
Cut push_to_important(const Digraph& D, const VertexSet& X,
                      const VertexSet& Y, const VertexSet& S,
                      const VertexSet& forbidden = {});

/// All important (X,Y)-cuts of size <= k avoiding `forbidden`, sorted by
/// size then lexicographically. At most 4^k of them.
std::vector<Cut> enumerate_important(const Digraph& D, const VertexSet& X,
                                     const VertexSet& Y, int k,
                                     const VertexSet& forbidden = {});

/// Important (Y,X)-cuts of the reversed graph, reported on the original
/// orientation with source X and sink Y.
std::vector<Cut> enumerate_anti_important(const Digraph& D,
                                          const VertexSet& X,
                                          const VertexSet& Y, int k,
                                          const VertexSet& forbidden = {});

}  // namespace symdicut::cuts
