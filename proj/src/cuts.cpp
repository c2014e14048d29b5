#include "symdicut/cuts.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <stdexcept>

namespace symdicut::cuts {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

// Max-flow network over the split digraph: each vertex v becomes an
// internal arc v_in -> v_out carrying v's capacity; original arcs get
// infinite capacity, so min cuts consist of internal arcs only.
struct FlowNet {
    struct Edge {
        int to;
        long long cap;
        int rev;  // index of reverse edge in adj[to]
    };

    std::vector<std::vector<Edge>> adj;
    std::map<Vertex, int> id;  // vertex -> index; in = 2*id, out = 2*id+1
    int s = 0, t = 0;

    int node_in(Vertex v) const { return 2 * id.at(v); }
    int node_out(Vertex v) const { return 2 * id.at(v) + 1; }

    void add_edge(int from, int to, long long cap) {
        adj[from].push_back({to, cap, (int)adj[to].size()});
        adj[to].push_back({from, 0, (int)adj[from].size() - 1});
    }

    FlowNet(const Digraph& D, const VertexSet& X, const VertexSet& Y,
            const std::map<Vertex, int>& capacities,
            const VertexSet& forbidden) {
        int n = 0;
        for (Vertex v : D.vertices()) id[v] = n++;
        s = 2 * n;
        t = 2 * n + 1;
        adj.resize(2 * n + 2);
        for (Vertex v : D.vertices()) {
            long long cap = 1;
            if (auto it = capacities.find(v); it != capacities.end())
                cap = it->second;
            if (X.count(v) || Y.count(v) || forbidden.count(v)) cap = kInf;
            add_edge(node_in(v), node_out(v), cap);
            for (Vertex w : D.out_neighbors(v))
                add_edge(node_out(v), node_in(w), kInf);
        }
        for (Vertex x : X)
            if (id.count(x)) add_edge(s, node_in(x), kInf);
        for (Vertex y : Y)
            if (id.count(y)) add_edge(node_out(y), t, kInf);
    }

    // One augmenting path (BFS, shortest); returns bottleneck or 0.
    long long augment() {
        std::vector<std::pair<int, int>> parent(adj.size(), {-1, -1});
        std::deque<int> queue{s};
        parent[s] = {s, -1};
        while (!queue.empty() && parent[t].first < 0) {
            int v = queue.front();
            queue.pop_front();
            for (int i = 0; i < (int)adj[v].size(); ++i) {
                const Edge& e = adj[v][i];
                if (e.cap > 0 && parent[e.to].first < 0) {
                    parent[e.to] = {v, i};
                    queue.push_back(e.to);
                }
            }
        }
        if (parent[t].first < 0) return 0;
        long long bottleneck = kInf;
        for (int v = t; v != s;) {
            auto [u, i] = parent[v];
            bottleneck = std::min(bottleneck, adj[u][i].cap);
            v = u;
        }
        for (int v = t; v != s;) {
            auto [u, i] = parent[v];
            adj[u][i].cap -= bottleneck;
            adj[adj[u][i].to][adj[u][i].rev].cap += bottleneck;
            v = u;
        }
        return bottleneck;
    }

    std::vector<bool> residual_reachable_from_source() const {
        std::vector<bool> seen(adj.size(), false);
        std::deque<int> queue{s};
        seen[s] = true;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (const Edge& e : adj[v])
                if (e.cap > 0 && !seen[e.to]) {
                    seen[e.to] = true;
                    queue.push_back(e.to);
                }
        }
        return seen;
    }

    std::vector<bool> residual_coreachable_to_sink() const {
        std::vector<bool> seen(adj.size(), false);
        std::deque<int> queue{t};
        seen[t] = true;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (const Edge& e : adj[v]) {
                // edge into v with residual capacity: the reverse entry
                const Edge& back = adj[e.to][e.rev];
                if (back.cap > 0 && !seen[e.to]) {
                    seen[e.to] = true;
                    queue.push_back(e.to);
                }
            }
        }
        return seen;
    }
};

// Y reachable from X along paths whose interior uses only undeletable
// vertices — then no cut disjoint from them exists.
bool trivially_connected(const Digraph& D, const VertexSet& X,
                         const VertexSet& Y, const VertexSet& forbidden) {
    VertexSet seen;
    std::deque<Vertex> queue;
    for (Vertex x : X)
        if (D.has_vertex(x) && seen.insert(x).second) queue.push_back(x);
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        if (Y.count(v)) return true;
        if (!X.count(v) && !forbidden.count(v)) continue;  // deletable: stop
        for (Vertex w : D.out_neighbors(v))
            if (seen.insert(w).second) queue.push_back(w);
    }
    return false;
}

}  // namespace

MinCutResult min_vertex_cut(const Digraph& D, const VertexSet& X,
                            const VertexSet& Y, int budget,
                            const std::map<Vertex, int>& capacities,
                            CutSide side, const VertexSet& forbidden) {
    for (Vertex x : X)
        if (Y.count(x))
            throw std::invalid_argument("min_vertex_cut: X and Y overlap");
    if (trivially_connected(D, X, Y, forbidden))
        return {CutStatus::Infeasible, {}};

    FlowNet net(D, X, Y, capacities, forbidden);
    long long flow = 0;
    while (long long pushed = net.augment()) {
        flow += pushed;
        if (flow > budget) return {CutStatus::BudgetExceeded, {}};
    }
    if (flow > budget) return {CutStatus::BudgetExceeded, {}};

    VertexSet S;
    if (side == CutSide::Closest) {
        auto seen = net.residual_reachable_from_source();
        for (const auto& [v, idx] : net.id)
            if (seen[2 * idx] && !seen[2 * idx + 1]) S.insert(v);
    } else {
        auto seen = net.residual_coreachable_to_sink();
        for (const auto& [v, idx] : net.id)
            if (seen[2 * idx + 1] && !seen[2 * idx]) S.insert(v);
    }
    Cut cut{S, X, Y, D.removed(S).reachable_from(X)};
    return {CutStatus::Found, std::move(cut)};
}

namespace {

bool is_cut(const Digraph& D, const VertexSet& X, const VertexSet& Y,
            const VertexSet& S) {
    VertexSet reach = D.removed(S).reachable_from(X);
    for (Vertex y : Y)
        if (reach.count(y)) return false;
    return true;
}

void require_cut(const Digraph& D, const VertexSet& X, const VertexSet& Y,
                 const VertexSet& S) {
    for (Vertex v : S)
        if (X.count(v) || Y.count(v))
            throw std::invalid_argument("cut intersects X or Y");
    if (!is_cut(D, X, Y, S))
        throw std::invalid_argument("S is not an (X,Y)-cut");
}

}  // namespace

bool is_important(const Digraph& D, const VertexSet& X, const VertexSet& Y,
                  const VertexSet& S, const VertexSet& forbidden) {
    require_cut(D, X, Y, S);
    for (Vertex v : S) {
        VertexSet smaller = S;
        smaller.erase(v);
        if (is_cut(D, X, Y, smaller)) return false;  // not minimal
    }
    // A minimal cut is important iff it is the farthest minimum cut when
    // its own reach set is merged into the source side.
    VertexSet reach = D.removed(S).reachable_from(X);
    VertexSet src = X;
    src.insert(reach.begin(), reach.end());
    auto res = min_vertex_cut(D, src, Y, (int)D.vertex_count(), {},
                              CutSide::Farthest, forbidden);
    return res.status == CutStatus::Found && res.cut.vertices == S;
}

Cut push_to_important(const Digraph& D, const VertexSet& X,
                      const VertexSet& Y, const VertexSet& S,
                      const VertexSet& forbidden) {
    require_cut(D, X, Y, S);
    VertexSet cur = S;
    for (std::size_t iter = 0; iter <= D.vertex_count() + 2; ++iter) {
        VertexSet reach = D.removed(cur).reachable_from(X);
        VertexSet src = X;
        src.insert(reach.begin(), reach.end());
        auto res = min_vertex_cut(D, src, Y, (int)D.vertex_count(), {},
                                  CutSide::Farthest, forbidden);
        assert(res.status == CutStatus::Found);
        if (res.cut.vertices == cur) {
            res.cut.source = X;
            res.cut.sink = Y;
            res.cut.reach = reach;
            return res.cut;
        }
        cur = res.cut.vertices;
    }
    throw std::logic_error("push_to_important did not converge");
}

namespace {

void enumerate_rec(const Digraph& D, const VertexSet& X, const VertexSet& Y,
                   int k, const VertexSet& forbidden, const VertexSet& prefix,
                   std::vector<VertexSet>& out) {
    auto res =
        min_vertex_cut(D, X, Y, k, {}, CutSide::Farthest, forbidden);
    if (res.status != CutStatus::Found) return;
    if (res.cut.vertices.empty()) {  // Y already unreachable
        out.push_back(prefix);
        return;
    }
    Vertex v = *res.cut.vertices.begin();
    // v in the cut
    if (k >= 1) {
        VertexSet next = prefix;
        next.insert(v);
        enumerate_rec(D.removed({v}), X, Y, k - 1, forbidden, next, out);
    }
    // v on the source side
    VertexSet src = X;
    src.insert(v);
    enumerate_rec(D, src, Y, k, forbidden, prefix, out);
}

}  // namespace

std::vector<Cut> enumerate_important(const Digraph& D, const VertexSet& X,
                                     const VertexSet& Y, int k,
                                     const VertexSet& forbidden) {
    for (Vertex x : X)
        if (Y.count(x))
            throw std::invalid_argument("enumerate_important: X and Y overlap");
    std::vector<VertexSet> candidates;
    enumerate_rec(D, X, Y, k, forbidden, {}, candidates);
    std::sort(candidates.begin(), candidates.end(),
              [](const VertexSet& a, const VertexSet& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());
    std::vector<Cut> result;
    for (const VertexSet& S : candidates) {
        if ((int)S.size() > k) continue;
        if (!is_important(D, X, Y, S, forbidden)) continue;
        result.push_back({S, X, Y, D.removed(S).reachable_from(X)});
    }
    return result;
}

std::vector<Cut> enumerate_anti_important(const Digraph& D,
                                          const VertexSet& X,
                                          const VertexSet& Y, int k,
                                          const VertexSet& forbidden) {
    std::vector<Cut> rev = enumerate_important(D.reversed(), Y, X, k, forbidden);
    std::vector<Cut> result;
    for (const Cut& c : rev)
        result.push_back({c.vertices, X, Y,
                          D.removed(c.vertices).reachable_from(X)});
    return result;
}

}  // namespace symdicut::cuts
