#include "symdicut/oracle.hpp"

#include <algorithm>
#include <functional>

namespace symdicut::oracle {

namespace {

// Visit all subsets of `universe` of size exactly `size`, ascending
// lexicographically; stop when the visitor returns true.
bool for_each_subset_of_size(
    const std::vector<Vertex>& universe, int size,
    const std::function<bool(const VertexSet&)>& visit) {
    std::vector<Vertex> chosen;
    std::function<bool(std::size_t)> rec = [&](std::size_t from) {
        if ((int)chosen.size() == size) {
            return visit(VertexSet(chosen.begin(), chosen.end()));
        }
        for (std::size_t i = from; i < universe.size(); ++i) {
            chosen.push_back(universe[i]);
            if (rec(i + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    return rec(0);
}

// Size-ascending scan stopping at the first accepted subset.
OracleReport scan(const Digraph& D, int k,
                  const std::function<bool(const VertexSet&)>& valid) {
    OracleReport rep;
    rep.size_warning = D.vertex_count() > 16;
    std::vector<Vertex> verts = D.vertices();
    for (int size = 0; size <= k && size <= (int)verts.size(); ++size) {
        bool found = for_each_subset_of_size(verts, size, [&](const VertexSet& X) {
            if (!valid(X)) return false;
            rep.feasible = true;
            rep.optimum = size;
            rep.witness = X;
            return true;
        });
        if (found) break;
    }
    return rep;
}

std::map<Vertex, int> scc_index(const Digraph& D) {
    std::map<Vertex, int> idx;
    auto comps = D.scc_components();
    for (int i = 0; i < (int)comps.size(); ++i)
        for (Vertex v : comps[i]) idx[v] = i;
    return idx;
}

}  // namespace

bool multicut_valid(const Digraph& D,
                    const std::vector<std::pair<Vertex, Vertex>>& C,
                    const VertexSet& X) {
    Digraph H = D.removed(X);
    auto idx = scc_index(H);
    for (auto [s, t] : C) {
        if (!H.has_vertex(s) || !H.has_vertex(t)) continue;  // endpoint gone
        if (idx[s] == idx[t]) return false;
    }
    return true;
}

bool arc_on_closed_walk(const Digraph& D, Vertex u, Vertex v) {
    if (!D.has_arc(u, v)) return false;
    if (u == v) return true;  // loop
    auto idx = scc_index(D);
    return idx.at(u) == idx.at(v);
}

bool arc_terminal_valid_brute(const multiway::ArcTerminalInstance& inst,
                              const VertexSet& X) {
    Digraph H = inst.D.removed(X);
    auto idx = scc_index(H);
    // index of the unique arc set whose arcs a component may meet
    std::map<int, int> owner;
    for (int i = 0; i < (int)inst.arc_sets.size(); ++i) {
        for (Vertex u : inst.arc_sets[i].S) {
            if (!H.has_vertex(u)) continue;
            for (Vertex v : inst.arc_sets[i].T) {
                if (!H.has_arc(u, v)) continue;
                if (u != v && idx[u] != idx[v]) continue;  // not on a closed walk
                auto [it, fresh] = owner.emplace(idx[u], i);
                if (!fresh && it->second != i) return false;
            }
        }
    }
    if (!inst.Y.empty()) {
        // compression mode: deletions must avoid Y and no back-path may survive
        for (Vertex y : inst.Y)
            if (X.count(y)) return false;
        for (std::size_t j = 0; j < inst.Y.size(); ++j)
            for (std::size_t i = 0; i < j; ++i)
                if (H.reaches(inst.Y[j], inst.Y[i])) return false;
    }
    return true;
}

bool multiway_valid_brute(const Digraph& D, const VertexSet& T,
                          const VertexSet& X) {
    Digraph H = D.removed(X);
    auto idx = scc_index(H);
    std::map<int, Vertex> seen;
    for (Vertex t : T) {
        if (!H.has_vertex(t)) continue;
        auto [it, fresh] = seen.emplace(idx[t], t);
        if (!fresh && it->second != t) return false;
    }
    return true;
}

OracleReport brute_force_opt(const MulticutInstance& inst) {
    return scan(inst.D, inst.k, [&](const VertexSet& X) {
        return multicut_valid(inst.D, inst.requests, X);
    });
}

OracleReport brute_force_arc_terminal(
    const multiway::ArcTerminalInstance& inst) {
    return scan(inst.D, inst.k, [&](const VertexSet& X) {
        return arc_terminal_valid_brute(inst, X);
    });
}

OracleReport brute_force_multiway(const Digraph& D, const VertexSet& T,
                                  int k) {
    return scan(D, k, [&](const VertexSet& X) {
        return multiway_valid_brute(D, T, X);
    });
}

std::set<VertexSet> brute_force_important(const Digraph& D,
                                          const VertexSet& X,
                                          const VertexSet& Y, int k) {
    std::vector<Vertex> candidates;
    for (Vertex v : D.vertices())
        if (!X.count(v) && !Y.count(v)) candidates.push_back(v);

    auto is_cut = [&](const VertexSet& S) {
        VertexSet reach = D.removed(S).reachable_from(X);
        for (Vertex y : Y)
            if (reach.count(y)) return false;
        return true;
    };

    // gather every cut of size <= k with its reach set
    std::vector<std::pair<VertexSet, VertexSet>> cuts;  // (S, reach)
    for (int size = 0; size <= k && size <= (int)candidates.size(); ++size) {
        for_each_subset_of_size(candidates, size, [&](const VertexSet& S) {
            if (is_cut(S))
                cuts.emplace_back(S, D.removed(S).reachable_from(X));
            return false;
        });
    }

    std::set<VertexSet> important;
    for (const auto& [S, R] : cuts) {
        bool minimal = true;
        for (Vertex v : S) {
            VertexSet smaller = S;
            smaller.erase(v);
            if (is_cut(smaller)) {
                minimal = false;
                break;
            }
        }
        if (!minimal) continue;
        bool dominated = false;
        for (const auto& [S2, R2] : cuts) {
            if (S2 == S || S2.size() > S.size()) continue;
            if (std::includes(R2.begin(), R2.end(), R.begin(), R.end())) {
                dominated = true;
                break;
            }
        }
        if (!dominated) important.insert(S);
    }
    return important;
}

std::vector<VertexSet> enumerate_all_solutions(const MulticutInstance& inst,
                                               int k) {
    std::vector<VertexSet> out;
    std::vector<Vertex> verts = inst.D.vertices();
    for (int size = 0; size <= k && size <= (int)verts.size(); ++size) {
        for_each_subset_of_size(verts, size, [&](const VertexSet& X) {
            if (multicut_valid(inst.D, inst.requests, X)) out.push_back(X);
            return false;
        });
    }
    return out;
}

OracleReport brute_force_undirected_multicut(
    const Digraph& G, const std::vector<std::pair<Vertex, Vertex>>& C,
    int k) {
    // components of the underlying undirected graph = SCCs after
    // symmetrizing all arcs
    return scan(G, k, [&](const VertexSet& X) {
        Digraph H = G.removed(X);
        Digraph sym = H;
        for (auto [u, v] : H.arcs()) sym.add_arc(v, u);
        auto idx = scc_index(sym);
        for (auto [s, t] : C) {
            if (!H.has_vertex(s) || !H.has_vertex(t)) continue;
            if (idx[s] == idx[t]) return false;
        }
        return true;
    });
}

bool hits_all_cycles_through(const Digraph& D, const VertexSet& X,
                             const std::vector<std::pair<Vertex, Vertex>>& S) {
    Digraph H = D.removed(X);
    for (auto [u, v] : S) {
        if (!H.has_arc(u, v)) continue;
        if (u == v) return false;  // surviving loop
        if (H.reaches(v, u)) return false;
    }
    return true;
}

}  // namespace symdicut::oracle
