#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "symdicut/digraph.hpp"

namespace symdicut::multiway {

/// One terminal arc set A_i = (S_i × T_i) ∩ E(D), kept in biclique form
/// because only that representation is closed under shadow contraction.
struct ArcSet {
    VertexSet S;
    VertexSet T;

    bool operator==(const ArcSet&) const = default;
    bool operator<(const ArcSet& o) const {
        return std::tie(S, T) < std::tie(o.S, o.T);
    }
};

/// Arc-terminal instance: delete at most k vertices so that no closed
/// walk of the remainder meets two distinct arc sets. When Y is nonempty
/// the instance is a compression instance: Y is a solution of the
/// Y-free part and carries arcs y_i -> y_j for i < j.
struct ArcTerminalInstance {
    Digraph D;
    std::vector<ArcSet> arc_sets;
    int k = 0;
    std::vector<Vertex> Y;
};

struct TcPair {
    std::set<int> I;  // 0-based arc-set indices
    VertexSet Tc;

    bool operator<(const TcPair& o) const {
        return std::tie(I, Tc) < std::tie(o.I, o.Tc);
    }
};

enum class ShadowMode { Exhaustive, Random };

struct SolveOptions {
    ShadowMode mode = ShadowMode::Exhaustive;
    std::uint64_t seed = 0;
    int rounds = 32;  // random-mode sampling rounds
};

ArcTerminalInstance encode_multiway(const Digraph& D, const VertexSet& T,
                                    int k);

/// Vertices outside T ∪ X that cannot reach T or are unreachable from T
/// in D - X.
VertexSet shadow_of(const Digraph& D, const VertexSet& T, const VertexSet& X);

/// Candidate shadow covers, all disjoint from Y, empty set always first.
/// Exhaustive mode emits every subset of V \ Y (only sensible when that
/// set is small); random mode draws `rounds` seeded samples.
std::vector<VertexSet> candidate_shadow_sets(const Digraph& D,
                                             const VertexSet& Y, int k,
                                             std::uint64_t seed, int rounds,
                                             ShadowMode mode);

/// Torso contraction: remove Z and shortcut walks through it. Rejects
/// (nullopt) when some closed walk inside D[Z] meets two distinct arc
/// sets — a valid solution disjoint from Z cannot exist then.
std::optional<ArcTerminalInstance> contract_shadow(
    const ArcTerminalInstance& inst, const VertexSet& Z);

/// Candidate (I, T_c) pairs covering the active arc-set indices and
/// blocked T-side vertices of a shadowless solution. Requires nonempty Y.
std::vector<TcPair> candidate_Tc_pairs(const ArcTerminalInstance& inst,
                                       std::uint64_t seed, ShadowMode mode,
                                       int rounds);

/// Compression solver for arc-terminal instances (Y nonempty or trivially
/// satisfied). Sound unconditionally; complete in exhaustive mode.
std::optional<VertexSet> solve_arc_terminal_compression(
    const ArcTerminalInstance& inst, const SolveOptions& opts = {});

/// True iff |X| <= k, X avoids nothing in particular, and no SCC of
/// D - X contains arcs of two distinct arc sets; in compression context
/// also no (y_j, y_i)-path with j > i among surviving Y.
bool arc_terminal_valid(const ArcTerminalInstance& inst, const VertexSet& X);

/// Symmetric directed multiway cut: at most k deletions so that no two
/// surviving terminals share an SCC.
std::optional<VertexSet> solve_multiway(const Digraph& D, const VertexSet& T,
                                        int k, const SolveOptions& opts = {});

bool multiway_valid(const Digraph& D, const VertexSet& T, int k,
                    const VertexSet& X);

}  // namespace symdicut::multiway
