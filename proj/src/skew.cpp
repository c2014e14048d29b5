#include "symdicut/skew.hpp"

#include "symdicut/cuts.hpp"

namespace symdicut::skew {

namespace {

VertexSet terminals_of(const SkewInstance& inst) {
    VertexSet t;
    for (auto [s, u] : inst.pairs) {
        t.insert(s);
        t.insert(u);
    }
    return t;
}

// Targets the last pair's source must not reach: t_i for i <= r. A target
// equal to the source itself is vacuous (a zero-length path cannot be cut
// and carries no connectivity).
VertexSet live_targets(const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    Vertex src = pairs.back().first;
    VertexSet targets;
    for (const auto& [s, t] : pairs)
        if (t != src) targets.insert(t);
    return targets;
}

std::optional<VertexSet> solve_rec(const Digraph& D,
                                   std::vector<std::pair<Vertex, Vertex>> pairs,
                                   int k, const VertexSet& terminals,
                                   VertexSet acc);

// Shortest surviving forbidden path, if any: (s_j, t_i) with j >= i and
// s_j != t_i.
std::optional<std::vector<Vertex>> violated_path(
    const Digraph& D, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    std::optional<std::vector<Vertex>> best;
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        Vertex src = pairs[j].first;
        if (!D.has_vertex(src)) continue;
        // BFS parents from src
        std::map<Vertex, Vertex> parent;
        std::vector<Vertex> queue{src};
        parent[src] = src;
        for (std::size_t h = 0; h < queue.size(); ++h)
            for (Vertex w : D.out_neighbors(queue[h]))
                if (!parent.count(w)) {
                    parent[w] = queue[h];
                    queue.push_back(w);
                }
        for (std::size_t i = 0; i <= j; ++i) {
            Vertex tgt = pairs[i].second;
            if (tgt == src || !parent.count(tgt)) continue;
            std::vector<Vertex> path{tgt};
            while (path.back() != src) path.push_back(parent[path.back()]);
            if (!best || path.size() < best->size())
                best = std::move(path);
        }
    }
    return best;
}

// Complete bounded-search-tree branch for the case where the last pair's
// source doubles as an earlier target: the cut-pushing argument does not
// apply there (a farther cut can expose paths INTO the source), so hit a
// shortest forbidden path vertex by vertex instead.
std::optional<VertexSet> solve_by_path(
    const Digraph& D, const std::vector<std::pair<Vertex, Vertex>>& pairs,
    int k, const VertexSet& terminals, const VertexSet& acc) {
    auto path = violated_path(D, pairs);
    if (!path) return acc;
    if (k <= 0) return std::nullopt;
    for (Vertex v : *path) {
        if (terminals.count(v)) continue;
        VertexSet next = acc;
        next.insert(v);
        auto sub =
            solve_rec(D.removed({v}), pairs, k - 1, terminals, std::move(next));
        if (sub) return sub;
    }
    return std::nullopt;
}

std::optional<VertexSet> solve_rec(const Digraph& D,
                                   std::vector<std::pair<Vertex, Vertex>> pairs,
                                   int k, const VertexSet& terminals,
                                   VertexSet acc) {
    // Drop trailing pairs whose source already reaches no target.
    while (!pairs.empty()) {
        Vertex src = pairs.back().first;
        VertexSet reach = D.reachable_from(src);
        bool violated = false;
        for (Vertex t : live_targets(pairs))
            if (reach.count(t)) violated = true;
        if (violated) break;
        pairs.pop_back();
    }
    if (pairs.empty()) return acc;

    Vertex src = pairs.back().first;
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
        if (pairs[i].second == src)
            return solve_by_path(D, pairs, k, terminals, acc);
    VertexSet Y = live_targets(pairs);
    // Only pair indices below the last one survive the branch; they do not
    // mention the last pair's terminals, so the pair is retired wholesale.
    std::vector<std::pair<Vertex, Vertex>> rest(pairs.begin(),
                                                pairs.end() - 1);
    for (const cuts::Cut& c :
         cuts::enumerate_important(D, {src}, Y, k, terminals)) {
        if (c.vertices.empty()) continue;  // violated, so never optimal
        VertexSet next = acc;
        next.insert(c.vertices.begin(), c.vertices.end());
        auto sub = solve_rec(D.removed(c.vertices), rest,
                             k - (int)c.vertices.size(), terminals,
                             std::move(next));
        if (sub) return sub;
    }
    return std::nullopt;
}

}  // namespace

std::optional<VertexSet> solve_skew(const SkewInstance& inst) {
    if (inst.k < 0) return std::nullopt;
    return solve_rec(inst.D, inst.pairs, inst.k, terminals_of(inst), {});
}

bool skew_solution_valid(const SkewInstance& inst, const VertexSet& X) {
    if ((int)X.size() > inst.k) return false;
    for (auto [s, t] : inst.pairs)
        if (X.count(s) || X.count(t)) return false;
    Digraph H = inst.D.removed(X);
    for (std::size_t j = 0; j < inst.pairs.size(); ++j) {
        Vertex src = inst.pairs[j].first;
        for (std::size_t i = 0; i <= j; ++i) {
            Vertex tgt = inst.pairs[i].second;
            if (tgt == src) continue;
            if (H.reaches(src, tgt)) return false;
        }
    }
    return true;
}

}  // namespace symdicut::skew
