#include "symdicut/exact_kl.hpp"

#include <map>
#include <set>

#include "symdicut/skew.hpp"

namespace symdicut::exact_kl {

bool validate_solution(const MulticutInstance& inst, const VertexSet& X) {
    if ((int)X.size() > inst.k) return false;
    Digraph H = inst.D.removed(X);
    std::map<Vertex, int> idx;
    auto comps = H.scc_components();
    for (int i = 0; i < (int)comps.size(); ++i)
        for (Vertex v : comps[i]) idx[v] = i;
    for (auto [s, t] : inst.requests) {
        if (!H.has_vertex(s) || !H.has_vertex(t)) continue;
        if (idx[s] == idx[t]) return false;
    }
    return true;
}

void for_each_labeled_partition(
    const VertexSet& T, int labels,
    const std::vector<std::pair<Vertex, Vertex>>& C,
    const std::function<bool(const TerminalPartition&)>& visit) {
    std::vector<Vertex> terms(T.begin(), T.end());
    std::set<std::vector<VertexSet>> seen;

    std::vector<int> label(terms.size(), 0);
    for (;;) {
        // assemble: block 0, then nonempty label classes in label order
        std::vector<VertexSet> by_label(labels);
        for (std::size_t i = 0; i < terms.size(); ++i)
            by_label[label[i]].insert(terms[i]);
        TerminalPartition p;
        p.blocks.push_back(by_label[0]);
        for (int l = 1; l < labels; ++l)
            if (!by_label[l].empty()) p.blocks.push_back(by_label[l]);

        bool rejected = false;
        for (auto [s, t] : C) {
            for (std::size_t b = 1; b < p.blocks.size() && !rejected; ++b)
                if (p.blocks[b].count(s) && p.blocks[b].count(t))
                    rejected = true;
            if (rejected) break;
        }
        if (!rejected && seen.insert(p.blocks).second) {
            if (visit(p)) return;
        }

        // odometer over label assignments, last terminal fastest
        std::size_t pos = terms.size();
        while (pos > 0) {
            if (++label[pos - 1] < labels) break;
            label[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) return;
    }
}

void for_each_partition(
    const VertexSet& T, const std::vector<std::pair<Vertex, Vertex>>& C,
    const std::function<bool(const TerminalPartition&)>& visit) {
    for_each_labeled_partition(T, 2 * (int)C.size() + 1, C, visit);
}

std::vector<TerminalPartition> enumerate_partitions(
    const VertexSet& T, const std::vector<std::pair<Vertex, Vertex>>& C) {
    std::vector<TerminalPartition> out;
    for_each_partition(T, C, [&](const TerminalPartition& p) {
        out.push_back(p);
        return false;
    });
    return out;
}

std::optional<VertexSet> solve_exact_kl(const MulticutInstance& inst) {
    if (inst.k < 0) return std::nullopt;
    VertexSet T;
    for (auto [s, t] : inst.requests) {
        T.insert(s);
        T.insert(t);
    }
    std::optional<VertexSet> result;
    for_each_partition(T, inst.requests, [&](const TerminalPartition& p) {
        const VertexSet& t0 = p.blocks[0];
        if ((int)t0.size() > inst.k) return false;
        Digraph pruned = inst.D.removed(t0);
        std::vector<VertexSet> inner(p.blocks.begin() + 1, p.blocks.end());
        auto [contracted, cm] = pruned.contracted(inner);

        VertexSet candidate = t0;
        if (inner.size() >= 2) {
            // representative of each class, in class order; kill every
            // path from a later class to an earlier one
            std::vector<Vertex> reps;
            for (const VertexSet& block : inner) reps.push_back(*block.begin());
            skew::SkewInstance si;
            si.D = contracted;
            for (std::size_t i = 0; i + 1 < reps.size(); ++i)
                si.pairs.emplace_back(reps[i + 1], reps[i]);
            si.k = inst.k - (int)t0.size();
            auto X1 = skew::solve_skew(si);
            if (!X1) return false;
            candidate.insert(X1->begin(), X1->end());
        }
        if (!validate_solution(inst, candidate)) return false;
        result = candidate;
        return true;
    });
    return result;
}

}  // namespace symdicut::exact_kl
