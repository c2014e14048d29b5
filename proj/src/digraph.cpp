#include "symdicut/digraph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace symdicut {

void ContractionMap::set_image(Vertex original, Vertex representative) {
    map_[original] = representative;
}

void ContractionMap::set_deleted(Vertex original) {
    map_[original] = std::nullopt;
}

std::optional<Vertex> ContractionMap::image(Vertex v) const {
    auto it = map_.find(v);
    if (it == map_.end()) return v;
    return it->second;
}

VertexSet ContractionMap::preimage(Vertex representative) const {
    VertexSet result;
    bool rep_remapped = false;
    for (const auto& [orig, img] : map_) {
        if (orig == representative) rep_remapped = true;
        if (img && *img == representative) result.insert(orig);
    }
    if (!rep_remapped) result.insert(representative);
    return result;
}

VertexSet ContractionMap::lift(const VertexSet& contracted) const {
    VertexSet result;
    for (Vertex v : contracted) {
        VertexSet pre = preimage(v);
        result.insert(pre.begin(), pre.end());
    }
    return result;
}

ContractionMap ContractionMap::composed_with(const ContractionMap& later) const {
    ContractionMap out;
    for (const auto& [orig, img] : map_) {
        if (!img) {
            out.set_deleted(orig);
        } else if (auto final_img = later.image(*img)) {
            out.set_image(orig, *final_img);
        } else {
            out.set_deleted(orig);
        }
    }
    for (const auto& [orig, img] : later.map_) {
        // entries only the later map touches
        if (map_.count(orig)) continue;
        if (img) {
            out.set_image(orig, *img);
        } else {
            out.set_deleted(orig);
        }
    }
    return out;
}

Digraph Digraph::from_arcs(const VertexSet& vertices,
                           const std::vector<Arc>& arcs) {
    Digraph g;
    for (Vertex v : vertices) g.add_vertex(v);
    for (const auto& [u, v] : arcs) g.add_arc(u, v);
    return g;
}

void Digraph::add_vertex(Vertex v) {
    out_.try_emplace(v);
    in_.try_emplace(v);
}

void Digraph::add_arc(Vertex u, Vertex v) {
    add_vertex(u);
    add_vertex(v);
    out_[u].insert(v);
    in_[v].insert(u);
}

bool Digraph::has_vertex(Vertex v) const { return out_.count(v) > 0; }

bool Digraph::has_arc(Vertex u, Vertex v) const {
    auto it = out_.find(u);
    return it != out_.end() && it->second.count(v) > 0;
}

std::size_t Digraph::vertex_count() const { return out_.size(); }

std::size_t Digraph::arc_count() const {
    std::size_t m = 0;
    for (const auto& [v, nbrs] : out_) m += nbrs.size();
    return m;
}

std::vector<Vertex> Digraph::vertices() const {
    std::vector<Vertex> vs;
    vs.reserve(out_.size());
    for (const auto& [v, nbrs] : out_) vs.push_back(v);
    return vs;
}

VertexSet Digraph::vertex_set() const {
    VertexSet vs;
    for (const auto& [v, nbrs] : out_) vs.insert(v);
    return vs;
}

std::vector<Arc> Digraph::arcs() const {
    std::vector<Arc> result;
    for (const auto& [u, nbrs] : out_)
        for (Vertex v : nbrs) result.emplace_back(u, v);
    return result;
}

const VertexSet& Digraph::out_neighbors(Vertex v) const {
    static const VertexSet empty;
    auto it = out_.find(v);
    return it == out_.end() ? empty : it->second;
}

const VertexSet& Digraph::in_neighbors(Vertex v) const {
    static const VertexSet empty;
    auto it = in_.find(v);
    return it == in_.end() ? empty : it->second;
}

Digraph Digraph::removed(const VertexSet& X) const {
    Digraph g;
    for (const auto& [v, nbrs] : out_) {
        if (X.count(v)) continue;
        g.add_vertex(v);
        for (Vertex w : nbrs)
            if (!X.count(w)) g.add_arc(v, w);
    }
    return g;
}

Digraph Digraph::induced(const VertexSet& keep) const {
    Digraph g;
    for (Vertex v : keep) {
        if (!has_vertex(v)) continue;
        g.add_vertex(v);
        for (Vertex w : out_neighbors(v))
            if (keep.count(w)) g.add_arc(v, w);
    }
    return g;
}

Digraph Digraph::reversed() const {
    Digraph g;
    for (const auto& [v, nbrs] : out_) {
        g.add_vertex(v);
        for (Vertex w : nbrs) g.add_arc(w, v);
    }
    return g;
}

VertexSet Digraph::reachable_from(const VertexSet& S) const {
    VertexSet seen;
    std::deque<Vertex> queue;
    for (Vertex v : S) {
        if (has_vertex(v) && seen.insert(v).second) queue.push_back(v);
    }
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : out_neighbors(v))
            if (seen.insert(w).second) queue.push_back(w);
    }
    return seen;
}

VertexSet Digraph::reachable_from(Vertex v) const {
    return reachable_from(VertexSet{v});
}

bool Digraph::reaches(Vertex u, Vertex v) const {
    if (!has_vertex(u) || !has_vertex(v)) return false;
    return reachable_from(u).count(v) > 0;
}

namespace {

// Iterative Tarjan. Explores vertices in ascending id order, so component
// discovery (and hence the reverse-topological output) is deterministic.
struct TarjanState {
    const Digraph& g;
    std::map<Vertex, int> index, lowlink;
    std::map<Vertex, bool> on_stack;
    std::vector<Vertex> stack;
    int counter = 0;
    std::vector<VertexSet> components;  // reverse topological order

    explicit TarjanState(const Digraph& graph) : g(graph) {}

    void run(Vertex root) {
        struct Frame {
            Vertex v;
            VertexSet::const_iterator it, end;
        };
        std::vector<Frame> frames;
        visit(root);
        frames.push_back({root, g.out_neighbors(root).begin(),
                          g.out_neighbors(root).end()});
        while (!frames.empty()) {
            Frame& f = frames.back();
            bool descended = false;
            while (f.it != f.end) {
                Vertex w = *f.it++;
                if (!index.count(w)) {
                    visit(w);
                    frames.push_back({w, g.out_neighbors(w).begin(),
                                      g.out_neighbors(w).end()});
                    descended = true;
                    break;
                }
                if (on_stack[w])
                    lowlink[f.v] = std::min(lowlink[f.v], index[w]);
            }
            if (descended) continue;
            if (lowlink[f.v] == index[f.v]) pop_component(f.v);
            Vertex done = f.v;
            frames.pop_back();
            if (!frames.empty()) {
                Vertex parent = frames.back().v;
                lowlink[parent] = std::min(lowlink[parent], lowlink[done]);
            }
        }
    }

    void visit(Vertex v) {
        index[v] = lowlink[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
    }

    void pop_component(Vertex root) {
        VertexSet comp;
        Vertex w;
        do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.insert(w);
        } while (w != root);
        components.push_back(std::move(comp));
    }
};

}  // namespace

std::vector<VertexSet> Digraph::scc_components() const {
    TarjanState st(*this);
    for (Vertex v : vertices())
        if (!st.index.count(v)) st.run(v);
    const auto& comps = st.components;

    // Topologically sort the condensation, breaking ties by the smallest
    // vertex id of the component, so the output order is canonical.
    std::map<Vertex, int> comp_of;
    for (int i = 0; i < (int)comps.size(); ++i)
        for (Vertex v : comps[i]) comp_of[v] = i;
    std::vector<std::set<int>> succ(comps.size());
    std::vector<int> indeg(comps.size(), 0);
    for (const auto& [u, nbrs] : out_)
        for (Vertex w : nbrs) {
            int a = comp_of[u], b = comp_of[w];
            if (a != b && succ[a].insert(b).second) ++indeg[b];
        }
    // min-heap keyed by smallest vertex id
    auto key = [&](int i) { return *comps[i].begin(); };
    std::set<std::pair<Vertex, int>> ready;
    for (int i = 0; i < (int)comps.size(); ++i)
        if (indeg[i] == 0) ready.insert({key(i), i});
    std::vector<VertexSet> ordered;
    while (!ready.empty()) {
        int i = ready.begin()->second;
        ready.erase(ready.begin());
        ordered.push_back(comps[i]);
        for (int j : succ[i])
            if (--indeg[j] == 0) ready.insert({key(j), j});
    }
    return ordered;
}

std::pair<Digraph, ContractionMap> Digraph::contracted(
    const std::vector<VertexSet>& blocks) const {
    ContractionMap cm;
    std::map<Vertex, Vertex> rep_of;
    for (const auto& block : blocks) {
        if (block.empty()) continue;
        Vertex rep = *block.begin();
        for (Vertex v : block) {
            if (!has_vertex(v))
                throw std::invalid_argument("contracted: unknown vertex");
            if (rep_of.count(v))
                throw std::invalid_argument("contracted: overlapping blocks");
            rep_of[v] = rep;
            cm.set_image(v, rep);
        }
    }
    auto rep = [&](Vertex v) {
        auto it = rep_of.find(v);
        return it == rep_of.end() ? v : it->second;
    };
    Digraph g;
    for (const auto& [v, nbrs] : out_) {
        g.add_vertex(rep(v));
        for (Vertex w : nbrs) g.add_arc(rep(v), rep(w));
    }
    return {std::move(g), std::move(cm)};
}

}  // namespace symdicut
