#include "symdicut/multiway.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "symdicut/cuts.hpp"
#include "symdicut/exact_kl.hpp"
#include "symdicut/rng.hpp"

namespace symdicut::multiway {

namespace {

VertexSet to_set(const std::vector<Vertex>& v) {
    return VertexSet(v.begin(), v.end());
}

std::map<Vertex, int> scc_index(const Digraph& D) {
    std::map<Vertex, int> idx;
    auto comps = D.scc_components();
    for (int i = 0; i < (int)comps.size(); ++i)
        for (Vertex v : comps[i]) idx[v] = i;
    return idx;
}

// Restrict an arc set to the vertices of a graph.
ArcSet filtered(const ArcSet& a, const Digraph& D) {
    ArcSet out;
    for (Vertex v : a.S)
        if (D.has_vertex(v)) out.S.insert(v);
    for (Vertex v : a.T)
        if (D.has_vertex(v)) out.T.insert(v);
    return out;
}

// Conflict test without budget concerns: does some SCC of D carry arcs of
// two distinct arc sets, or does a (y_j, y_i)-back-path survive?
bool conflict_free(const ArcTerminalInstance& inst, const Digraph& H) {
    auto idx = scc_index(H);
    std::map<int, int> owner;
    for (int i = 0; i < (int)inst.arc_sets.size(); ++i) {
        for (Vertex u : inst.arc_sets[i].S) {
            if (!H.has_vertex(u)) continue;
            for (Vertex v : inst.arc_sets[i].T) {
                if (!H.has_arc(u, v)) continue;
                if (u != v && idx[u] != idx[v]) continue;
                auto [it, fresh] = owner.emplace(idx[u], i);
                if (!fresh && it->second != i) return false;
            }
        }
    }
    for (std::size_t j = 0; j < inst.Y.size(); ++j) {
        if (!H.has_vertex(inst.Y[j])) continue;
        for (std::size_t i = 0; i < j; ++i) {
            if (!H.has_vertex(inst.Y[i])) continue;
            if (H.reaches(inst.Y[j], inst.Y[i])) return false;
        }
    }
    return true;
}

std::string instance_key(const ArcTerminalInstance& inst) {
    std::ostringstream os;
    os << inst.k << ";v";
    for (Vertex v : inst.D.vertices()) os << ' ' << v;
    os << ";e";
    for (auto [u, v] : inst.D.arcs()) os << ' ' << u << ':' << v;
    for (const ArcSet& a : inst.arc_sets) {
        os << ";S";
        for (Vertex v : a.S)
            if (inst.D.has_vertex(v)) os << ' ' << v;
        os << ";T";
        for (Vertex v : a.T)
            if (inst.D.has_vertex(v)) os << ' ' << v;
    }
    os << ";Y";
    for (Vertex y : inst.Y) os << ' ' << y;
    return os.str();
}

// Subsets of `pool` of size exactly `size`, lexicographic, early-exit.
bool for_each_subset(const std::vector<Vertex>& pool, int size,
                     const std::function<bool(const VertexSet&)>& visit) {
    std::vector<Vertex> chosen;
    std::function<bool(std::size_t)> rec = [&](std::size_t from) {
        if ((int)chosen.size() == size)
            return visit(VertexSet(chosen.begin(), chosen.end()));
        for (std::size_t i = from; i < pool.size(); ++i) {
            chosen.push_back(pool[i]);
            if (rec(i + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    return rec(0);
}

}  // namespace

ArcTerminalInstance encode_multiway(const Digraph& D, const VertexSet& T,
                                    int k) {
    ArcTerminalInstance inst;
    inst.D = D;
    inst.k = k;
    for (Vertex t : T) {
        if (!D.has_vertex(t)) continue;
        inst.arc_sets.push_back({{t}, D.out_neighbors(t)});
    }
    return inst;
}

VertexSet shadow_of(const Digraph& D, const VertexSet& T,
                    const VertexSet& X) {
    Digraph H = D.removed(X);
    VertexSet fwd = H.reachable_from(T);
    VertexSet bwd = H.reversed().reachable_from(T);
    VertexSet out;
    for (Vertex v : H.vertices()) {
        if (T.count(v)) continue;
        if (!fwd.count(v) || !bwd.count(v)) out.insert(v);
    }
    return out;
}

std::vector<VertexSet> candidate_shadow_sets(const Digraph& D,
                                             const VertexSet& Y, int k,
                                             std::uint64_t seed, int rounds,
                                             ShadowMode mode) {
    std::vector<Vertex> pool;
    for (Vertex v : D.vertices())
        if (!Y.count(v)) pool.push_back(v);

    std::vector<VertexSet> out;
    std::set<VertexSet> seen;
    auto push = [&](const VertexSet& Z) {
        if (seen.insert(Z).second) out.push_back(Z);
    };
    push({});
    if (mode == ShadowMode::Exhaustive) {
        for (int size = 1; size <= (int)pool.size(); ++size)
            for_each_subset(pool, size, [&](const VertexSet& Z) {
                push(Z);
                return false;
            });
    } else {
        Rng rng(seed);
        for (int round = 0; round < rounds; ++round) {
            // inclusion probability 2^-e with e uniform in 1..k+1
            int e = 1 + (int)rng.below((std::uint64_t)std::max(1, k) + 1);
            VertexSet Z;
            for (Vertex v : pool)
                if (rng.below(std::uint64_t{1} << e) == 0) Z.insert(v);
            push(Z);
        }
    }
    return out;
}

std::optional<ArcTerminalInstance> contract_shadow(
    const ArcTerminalInstance& inst, const VertexSet& Zin_raw) {
    VertexSet Yset = to_set(inst.Y);
    VertexSet Z;
    for (Vertex v : Zin_raw)
        if (inst.D.has_vertex(v) && !Yset.count(v)) Z.insert(v);
    if (Z.empty()) return inst;

    Digraph DZ = inst.D.induced(Z);
    auto zidx = scc_index(DZ);
    // reject when a closed walk inside Z meets two distinct arc sets
    std::map<int, int> owner;
    for (int i = 0; i < (int)inst.arc_sets.size(); ++i) {
        for (Vertex u : inst.arc_sets[i].S) {
            if (!Z.count(u)) continue;
            for (Vertex v : inst.arc_sets[i].T) {
                if (!DZ.has_arc(u, v)) continue;
                if (zidx[u] != zidx[v]) continue;
                auto [it, fresh] = owner.emplace(zidx[u], i);
                if (!fresh && it->second != i) return std::nullopt;
            }
        }
    }

    // Z-vertices reachable from / reaching each survivor through Z only
    Digraph DZrev = DZ.reversed();
    std::map<Vertex, VertexSet> zout, zin;
    for (Vertex u : inst.D.vertices()) {
        if (Z.count(u)) continue;
        VertexSet fwd_start, bwd_start;
        for (Vertex w : inst.D.out_neighbors(u))
            if (Z.count(w)) fwd_start.insert(w);
        for (Vertex w : inst.D.in_neighbors(u))
            if (Z.count(w)) bwd_start.insert(w);
        zout[u] = DZ.reachable_from(fwd_start);
        zin[u] = DZrev.reachable_from(bwd_start);
    }

    ArcTerminalInstance out;
    out.k = inst.k;
    out.Y = inst.Y;
    for (Vertex u : inst.D.vertices()) {
        if (Z.count(u)) continue;
        out.D.add_vertex(u);
        for (Vertex w : inst.D.out_neighbors(u))
            if (!Z.count(w)) out.D.add_arc(u, w);
        for (Vertex z : zout[u])
            for (Vertex w : inst.D.out_neighbors(z))
                if (!Z.count(w)) out.D.add_arc(u, w);
    }
    for (const ArcSet& a : inst.arc_sets) {
        // sources/sinks of the actual arcs of this set
        VertexSet heads, tails;
        for (Vertex u : a.S)
            for (Vertex v : a.T)
                if (inst.D.has_arc(u, v)) {
                    heads.insert(u);
                    tails.insert(v);
                }
        ArcSet na;
        for (Vertex u : out.D.vertices()) {
            if (heads.count(u)) na.S.insert(u);
            else
                for (Vertex z : zout[u])
                    if (heads.count(z)) {
                        na.S.insert(u);
                        break;
                    }
            if (tails.count(u)) na.T.insert(u);
            else
                for (Vertex z : zin[u])
                    if (tails.count(z)) {
                        na.T.insert(u);
                        break;
                    }
        }
        out.arc_sets.push_back(std::move(na));
    }
    return out;
}

std::vector<TcPair> candidate_Tc_pairs(const ArcTerminalInstance& inst,
                                       std::uint64_t seed, ShadowMode mode,
                                       int rounds) {
    const int k = inst.k;
    const Vertex yr = inst.Y.back();
    std::vector<Vertex> verts = inst.D.vertices();
    const int n = (int)verts.size();
    const int l = (int)inst.arc_sets.size();

    // node layout of the auxiliary digraph
    std::map<Vertex, int> pos;
    for (int i = 0; i < n; ++i) pos[verts[i]] = i;
    auto vminus = [&](Vertex v) { return 2 * pos.at(v); };
    auto vplus = [&](Vertex v) { return 2 * pos.at(v) + 1; };
    auto znode = [&](int i) { return 2 * n + i; };
    const int src = 2 * n + l, snk = 2 * n + l + 1;

    Digraph aux;
    for (int i = 0; i <= snk; ++i) aux.add_vertex(i);
    for (int i = 0; i < l; ++i) {
        for (Vertex u : inst.arc_sets[i].S)
            if (pos.count(u)) aux.add_arc(vplus(u), znode(i));
        for (Vertex v : inst.arc_sets[i].T)
            if (pos.count(v)) aux.add_arc(znode(i), vminus(v));
    }
    for (auto [u, v] : inst.D.arcs()) aux.add_arc(vplus(u), vplus(v));
    aux.add_arc(src, vplus(yr));
    for (Vertex v : verts) aux.add_arc(vminus(v), snk);

    // the U family replaces the splitter: U must hit a specific reachable
    // vertex while avoiding the solution
    std::vector<VertexSet> family{{}};
    if (mode == ShadowMode::Exhaustive) {
        for (Vertex v : verts) family.push_back({v});
    } else {
        Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
        int samples =
            (int)std::ceil(std::max(1, k) *
                           std::log((double)std::max(2, rounds)));
        for (int i = 0; i < samples; ++i) {
            VertexSet U;
            for (Vertex v : verts)
                if (rng.chance(1, (std::uint64_t)std::max(1, k))) U.insert(v);
            family.push_back(U);
        }
    }

    std::vector<TcPair> out;
    std::set<TcPair> seen;
    for (const VertexSet& U : family) {
        VertexSet forbidden;
        for (Vertex v : U)
            if (pos.count(v)) forbidden.insert(vminus(v));
        VertexSet tc_prime;
        for (const cuts::Cut& c : cuts::enumerate_important(
                 aux, {src}, {snk}, 2 * k + 1, forbidden))
            tc_prime.insert(c.vertices.begin(), c.vertices.end());
        TcPair pair;
        for (int i = 0; i < l; ++i)
            if (tc_prime.count(znode(i))) pair.I.insert(i);
        for (Vertex v : verts)
            if (tc_prime.count(vminus(v))) pair.Tc.insert(v);
        if ((double)(pair.I.size() + pair.Tc.size()) >
            (2.0 * k + 1) * std::pow(4.0, 2 * k + 1))
            throw std::logic_error("candidate_Tc_pairs: size bound violated");
        if (seen.insert(pair).second) out.push_back(pair);
    }
    return out;
}

namespace {

// does A_i still induce at least one arc of H?
bool live_arc_set(const ArcSet& a, const Digraph& H) {
    for (Vertex u : a.S) {
        if (!H.has_vertex(u)) continue;
        for (Vertex v : a.T)
            if (H.has_arc(u, v)) return true;
    }
    return false;
}

}  // namespace

bool arc_terminal_valid(const ArcTerminalInstance& inst, const VertexSet& X) {
    if (inst.k < 0 || (int)X.size() > inst.k) return false;
    for (Vertex y : inst.Y)
        if (X.count(y)) return false;
    return conflict_free(inst, inst.D.removed(X));
}

namespace {

struct Ctx {
    SolveOptions opts;
    std::map<std::string, std::optional<VertexSet>> memo;
};

std::optional<VertexSet> compression_rec(const ArcTerminalInstance& inst,
                                         Ctx& ctx);

std::optional<VertexSet> solve_shadowless(const ArcTerminalInstance& inst,
                                          Ctx& ctx) {
    if (inst.Y.empty()) return std::nullopt;  // unsatisfied, nothing to cut by
    const Vertex yr = inst.Y.back();
    VertexSet Yset = to_set(inst.Y);
    std::vector<Vertex> Ychild(inst.Y.begin(), inst.Y.end() - 1);

    std::set<std::pair<int, VertexSet>> tried;  // (i0, X_c) combinations
    for (const TcPair& pair :
         candidate_Tc_pairs(inst, ctx.opts.seed, ctx.opts.mode,
                            ctx.opts.rounds)) {
        std::vector<int> choices{-1};  // -1: no active set at y_r
        choices.insert(choices.end(), pair.I.begin(), pair.I.end());
        std::vector<Vertex> tc_pool;
        for (Vertex v : pair.Tc)
            if (!Yset.count(v)) tc_pool.push_back(v);
        for (int i0 : choices) {
            for (int xc_size = 0;
                 xc_size <= std::min(inst.k, (int)tc_pool.size());
                 ++xc_size) {
                std::optional<VertexSet> found;
                for_each_subset(tc_pool, xc_size, [&](const VertexSet& Xc) {
                    if (!tried.insert({i0, Xc}).second) return false;
                    Digraph D0 = inst.D.removed(Xc);
                    // S-side vertices of live sets serve as cut targets, and
                    // cuts are disjoint from their targets, so deleting such
                    // a vertex needs a branch of its own
                    std::vector<Vertex> spool;
                    {
                        VertexSet sp;
                        for (int i = 0; i < (int)inst.arc_sets.size(); ++i) {
                            if (i == i0) continue;
                            if (!live_arc_set(inst.arc_sets[i], D0)) continue;
                            for (Vertex u : inst.arc_sets[i].S)
                                if (D0.has_vertex(u) && !Yset.count(u))
                                    sp.insert(u);
                        }
                        spool.assign(sp.begin(), sp.end());
                    }
                    for (int jsize = 0; jsize <= inst.k - xc_size &&
                                        jsize <= (int)spool.size() && !found;
                         ++jsize) {
                        for_each_subset(spool, jsize, [&](const VertexSet& J) {
                            VertexSet pre = Xc;
                            pre.insert(J.begin(), J.end());
                            Digraph Dbare = inst.D.removed(pre);
                            Digraph Dp = Dbare;
                            if (i0 >= 0)
                                for (Vertex v : inst.arc_sets[i0].T)
                                    if (Dp.has_vertex(v)) Dp.add_arc(yr, v);
                            VertexSet B;  // cut targets
                            for (Vertex y : inst.Y)
                                if (Dbare.has_vertex(y)) B.insert(y);
                            for (int i = 0; i < (int)inst.arc_sets.size();
                                 ++i) {
                                if (i == i0) continue;
                                if (!live_arc_set(inst.arc_sets[i], Dbare))
                                    continue;
                                for (Vertex u : inst.arc_sets[i].S)
                                    if (Dbare.has_vertex(u)) B.insert(u);
                            }
                            B.erase(yr);
                            for (const cuts::Cut& c :
                                 cuts::enumerate_important(
                                     Dp, {yr}, B,
                                     inst.k - (int)pre.size())) {
                                ArcTerminalInstance child;
                                VertexSet gone = pre;
                                gone.insert(c.vertices.begin(),
                                            c.vertices.end());
                                child.D = inst.D.removed(gone);  // no added arcs
                                child.k = inst.k - (int)gone.size();
                                child.Y = Ychild;
                                for (const ArcSet& a : inst.arc_sets)
                                    child.arc_sets.push_back(
                                        filtered(a, child.D));
                                auto sub = compression_rec(child, ctx);
                                if (!sub) continue;
                                VertexSet cand = gone;
                                cand.insert(sub->begin(), sub->end());
                                if (arc_terminal_valid(inst, cand)) {
                                    found = cand;
                                    return true;
                                }
                            }
                            return false;
                        });
                    }
                    return found.has_value();
                });
                if (found) return found;
            }
        }
    }
    return std::nullopt;
}

std::optional<VertexSet> compression_rec(const ArcTerminalInstance& inst,
                                         Ctx& ctx) {
    if (inst.k >= 0 && conflict_free(inst, inst.D)) return VertexSet{};
    if (inst.k <= 0) return std::nullopt;
    std::string key = instance_key(inst);
    if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;

    std::optional<VertexSet> result;
    for (const VertexSet& Z : candidate_shadow_sets(
             inst.D, to_set(inst.Y), inst.k, ctx.opts.seed, ctx.opts.rounds,
             ctx.opts.mode)) {
        auto reduced = contract_shadow(inst, Z);
        if (!reduced) continue;
        auto X = solve_shadowless(*reduced, ctx);
        if (X && arc_terminal_valid(inst, *X)) {
            result = X;
            break;
        }
    }
    ctx.memo[key] = result;
    return result;
}

}  // namespace

std::optional<VertexSet> solve_arc_terminal_compression(
    const ArcTerminalInstance& inst, const SolveOptions& opts) {
    Ctx ctx{opts, {}};
    return compression_rec(inst, ctx);
}

bool multiway_valid(const Digraph& D, const VertexSet& T, int k,
                    const VertexSet& X) {
    if (k < 0 || (int)X.size() > k) return false;
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

namespace {

// One compression step: Y (unordered) is a solution of (D, T) of size at
// most k+1; returns a solution of size at most k or concludes none exists.
std::optional<VertexSet> compress_multiway_step(const Digraph& D,
                                                const VertexSet& T, int k,
                                                const VertexSet& Yset,
                                                const SolveOptions& opts) {
    std::vector<Vertex> ypool(Yset.begin(), Yset.end());
    std::optional<VertexSet> result;
    for (int wsize = 0; wsize <= std::min(k, (int)ypool.size()) && !result;
         ++wsize) {
        for_each_subset(ypool, wsize, [&](const VertexSet& W) {
            Digraph Dw = D.removed(W);
            VertexSet Yrem;
            for (Vertex y : ypool)
                if (!W.count(y)) Yrem.insert(y);
            exact_kl::for_each_labeled_partition(
                Yrem, (int)Yrem.size() + 1, {},
                [&](const exact_kl::TerminalPartition& p) {
                    if (!p.blocks[0].empty()) return false;  // no deletions here
                    std::vector<VertexSet> blocks(p.blocks.begin() + 1,
                                                  p.blocks.end());
                    auto [Dc, cm] = Dw.contracted(blocks);
                    std::vector<Vertex> reps;
                    for (const VertexSet& b : blocks)
                        reps.push_back(*b.begin());
                    for (std::size_t i = 0; i < reps.size(); ++i)
                        for (std::size_t j = i + 1; j < reps.size(); ++j)
                            Dc.add_arc(reps[i], reps[j]);
                    ArcTerminalInstance inst;
                    inst.k = k - wsize;
                    inst.Y = reps;
                    for (Vertex t : T) {
                        if (!D.has_vertex(t)) continue;
                        ArcSet a;
                        auto ti = cm.image(t);
                        if (!ti || W.count(t) || !Dc.has_vertex(*ti))
                            a = ArcSet{};
                        else {
                            a.S.insert(*ti);
                            for (Vertex u : D.out_neighbors(t)) {
                                if (W.count(u)) continue;
                                if (auto ui = cm.image(u);
                                    ui && Dc.has_vertex(*ui))
                                    a.T.insert(*ui);
                            }
                        }
                        inst.arc_sets.push_back(std::move(a));
                    }
                    inst.D = Dc;
                    auto X = solve_arc_terminal_compression(inst, opts);
                    if (!X) return false;
                    VertexSet cand = W;
                    cand.insert(X->begin(), X->end());
                    if (!multiway_valid(D, T, k, cand)) return false;
                    result = cand;
                    return true;
                });
            return result.has_value();
        });
    }
    return result;
}

}  // namespace

namespace {

// decision variant at exactly budget k (any solution of size <= k)
std::optional<VertexSet> solve_multiway_budget(const Digraph& D,
                                               const VertexSet& terms, int k,
                                               const SolveOptions& opts) {
    VertexSet prefix, current;
    for (Vertex v : D.vertices()) {
        prefix.insert(v);
        Digraph Dp = D.induced(prefix);
        VertexSet Tp;
        for (Vertex t : terms)
            if (prefix.count(t)) Tp.insert(t);
        if (multiway_valid(Dp, Tp, k, current)) continue;
        VertexSet Y = current;
        Y.insert(v);
        auto X = compress_multiway_step(Dp, Tp, k, Y, opts);
        if (!X) return std::nullopt;
        current = *X;
    }
    return current;
}

}  // namespace

std::optional<VertexSet> solve_multiway(const Digraph& D, const VertexSet& T,
                                        int k, const SolveOptions& opts) {
    if (k < 0) return std::nullopt;
    VertexSet terms;
    for (Vertex t : T)
        if (D.has_vertex(t)) terms.insert(t);
    if (terms.size() <= 1) return VertexSet{};

    // ascending budgets: the first feasible one yields a minimum solution
    for (int b = 0; b <= k; ++b)
        if (auto X = solve_multiway_budget(D, terms, b, opts)) return X;
    return std::nullopt;
}

}  // namespace symdicut::multiway
