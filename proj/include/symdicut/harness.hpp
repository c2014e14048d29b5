#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "symdicut/digraph.hpp"
#include "symdicut/multiway.hpp"

namespace symdicut::harness {

enum class Kind { SymDicut, SymDimw, ArcTerm };

std::string kind_name(Kind k);

/// One instance file: vertices are 1..n, header `p <kind> n m <l||T|> k`,
/// then `a u v` arcs and, per kind, `c s t` requests, `t v` terminals, or
/// `A i` / `S i v` / `T i v` arc-set blocks. `#` starts a comment line.
struct Instance {
    Kind kind = Kind::SymDicut;
    Digraph D;
    int k = 0;
    std::vector<std::pair<Vertex, Vertex>> requests;  // symdicut
    std::vector<Vertex> terminals;                    // symdimw
    std::vector<multiway::ArcSet> arc_sets;           // arcterm

    bool operator==(const Instance&) const = default;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
          line(line_) {}
};

Instance parse_instance(const std::string& text);

/// Canonical serialization: sorted arcs, sorted requests/terminals/blocks.
/// parse(write(x)) == canonicalized x; write is idempotent after one pass.
std::string write_instance(const Instance& inst);

/// Seeded Erdős–Rényi-style digraph with `count` distinct request pairs,
/// terminals, or singleton-source arc-set blocks depending on kind.
/// arc_prob is fixed-point in millionths to keep seeds portable.
Instance gen_random(Kind kind, int n, std::uint64_t arc_prob_ppm, int count,
                    int k, std::uint64_t seed);

struct Planted {
    Instance inst;
    VertexSet X;  // valid by construction, |X| = k_true
};

/// Plants X of size k_true: the rest of the digraph is a random DAG (all
/// requests/terminals trivially separated), then arcs through X are added
/// freely. Requires k_true < n.
Planted gen_planted(Kind kind, int n, int k_true, int count,
                    std::uint64_t seed);

/// Undirected multicut -> symmetric directed multicut: each edge becomes
/// the two opposite arcs.
Instance encode_undirected(int n, const std::vector<Arc>& edges,
                           const std::vector<std::pair<Vertex, Vertex>>& requests,
                           int k);

/// Directed subset FVS with special arcs -> the special arcs read as
/// request pairs, graph unchanged.
Instance encode_subset_fvs(const Digraph& D, const std::vector<Arc>& special,
                           int k);

/// Directed FVS -> all-pairs requests.
Instance encode_dfvs(const Digraph& D, int k);

/// Makes a request endpoint undeletable by replacing it with k+1 false
/// twins (same in/out neighborhoods, no arcs among the copies) and
/// replicating its requests onto every copy. The new copies take the
/// smallest unused ids.
Instance encode_nondeletable_terminal(const Instance& inst, Vertex t);

enum class SolveStatus { Solution, NoSolutionAtK, NoSolutionAt2kApprox };

struct SolveReport {
    SolveStatus status = SolveStatus::NoSolutionAtK;
    std::vector<Vertex> solution;  // sorted, empty unless status==Solution
    std::string algo;
    std::uint64_t seed = 0;
    std::string shadow_mode;  // multiway only, "" otherwise
    int rounds = 0;
    double elapsed_ms = 0.0;
    long long leaves = 0;  // approx2 single-center leaf count
};

/// Single JSON object, one trailing newline.
std::string report_to_json(const SolveReport& rep);

}  // namespace symdicut::harness
