#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "symdicut/digraph.hpp"
#include "symdicut/exact_kl.hpp"
#include "symdicut/multiway.hpp"

// Brute-force reference solvers. Each predicate is a direct transcription
// of the problem statement plus subset enumeration; nothing here shares
// code with the solvers under test beyond the digraph primitives.

namespace symdicut::oracle {

struct OracleReport {
    bool feasible = false;
    std::optional<int> optimum;
    std::optional<VertexSet> witness;
    bool size_warning = false;  // n > 16: expect pain, not refusal
};

/// Direct validity checks.
bool multicut_valid(const Digraph& D,
                    const std::vector<std::pair<Vertex, Vertex>>& C,
                    const VertexSet& X);
bool arc_terminal_valid_brute(const multiway::ArcTerminalInstance& inst,
                              const VertexSet& X);
bool multiway_valid_brute(const Digraph& D, const VertexSet& T,
                          const VertexSet& X);

/// True iff the arc uv lies on a closed walk of D; used by the
/// arc-terminal predicate (u, v in one SCC; loops always qualify).
bool arc_on_closed_walk(const Digraph& D, Vertex u, Vertex v);

OracleReport brute_force_opt(const MulticutInstance& inst);

OracleReport brute_force_arc_terminal(const multiway::ArcTerminalInstance& inst);

OracleReport brute_force_multiway(const Digraph& D, const VertexSet& T, int k);

/// All important (X,Y)-cuts of size <= k by exhaustive definition check.
std::set<VertexSet> brute_force_important(const Digraph& D, const VertexSet& X,
                                          const VertexSet& Y, int k);

/// All valid multicut solutions of size <= k, ordered by size then
/// lexicographically.
std::vector<VertexSet> enumerate_all_solutions(const MulticutInstance& inst,
                                               int k);

/// Undirected multicut reference: X cuts every request pair into
/// different connected components of the (undirected) remainder.
OracleReport brute_force_undirected_multicut(
    const Digraph& G, const std::vector<std::pair<Vertex, Vertex>>& C, int k);

/// Directed subset feedback vertex set reference: true iff no cycle of
/// D - X passes through one of the listed arcs (an arc uv lies on a
/// cycle iff it survives and v still reaches u).
bool hits_all_cycles_through(const Digraph& D, const VertexSet& X,
                             const std::vector<std::pair<Vertex, Vertex>>& S);

}  // namespace symdicut::oracle
