#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace symdicut {

using Vertex = int;
using VertexSet = std::set<Vertex>;
using Arc = std::pair<Vertex, Vertex>;

class ContractionMap {
public:
    ContractionMap() = default;

    void set_image(Vertex original, Vertex representative);
    void set_deleted(Vertex original);

    /// Representative of v, or nullopt if v was deleted. Vertices never
    /// mentioned map to themselves.
    std::optional<Vertex> image(Vertex v) const;

    /// All original vertices mapping to `representative`.
    VertexSet preimage(Vertex representative) const;

    /// Union of preimages of a vertex set on the contracted graph.
    VertexSet lift(const VertexSet& contracted) const;

    /// this followed by `later` as a single map.
    ContractionMap composed_with(const ContractionMap& later) const;

private:
    std::map<Vertex, std::optional<Vertex>> map_;
};

/// Immutable-after-construction directed graph. Loops allowed, parallel
/// arcs collapsed. Vertex ids are opaque and survive derived-graph
/// operations unchanged, so solutions computed downstream translate back
/// without bookkeeping.
class Digraph {
public:
    Digraph() = default;

    static Digraph from_arcs(const VertexSet& vertices,
                             const std::vector<Arc>& arcs);

    void add_vertex(Vertex v);
    void add_arc(Vertex u, Vertex v);  // inserts missing endpoints

    bool has_vertex(Vertex v) const;
    bool has_arc(Vertex u, Vertex v) const;

    std::size_t vertex_count() const;
    std::size_t arc_count() const;

    std::vector<Vertex> vertices() const;  // sorted ascending
    VertexSet vertex_set() const;
    std::vector<Arc> arcs() const;  // sorted lexicographically

    const VertexSet& out_neighbors(Vertex v) const;
    const VertexSet& in_neighbors(Vertex v) const;

    /// Induced subgraph on V \ X.
    Digraph removed(const VertexSet& X) const;

    /// Induced subgraph on `keep`.
    Digraph induced(const VertexSet& keep) const;

    /// Every arc reversed; loops fixed.
    Digraph reversed() const;

    /// All vertices on a directed walk from S, including S itself.
    VertexSet reachable_from(const VertexSet& S) const;
    VertexSet reachable_from(Vertex v) const;

    /// true iff v is reachable from u (reaches(u, u) is true).
    bool reaches(Vertex u, Vertex v) const;

    /// Strongly connected components in a topological order: for every arc
    /// uv with u in block i and v in block j, i <= j. Ties between
    /// incomparable components break on the smallest vertex id, so the
    /// order is deterministic.
    std::vector<VertexSet> scc_components() const;

    /// Merge each block into a single representative (its smallest id).
    /// Blocks must be pairwise disjoint subsets of V; throws otherwise.
    /// A self-loop appears iff an arc existed inside a block.
    std::pair<Digraph, ContractionMap> contracted(
        const std::vector<VertexSet>& blocks) const;

    bool operator==(const Digraph& other) const = default;

private:
    std::map<Vertex, VertexSet> out_;
    std::map<Vertex, VertexSet> in_;
};

}  // namespace symdicut
