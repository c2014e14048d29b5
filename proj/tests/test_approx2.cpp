#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "symdicut/approx2.hpp"
#include "symdicut/oracle.hpp"
#include "symdicut/rng.hpp"

using namespace symdicut;
using namespace symdicut::approx2;

namespace {

Digraph random_digraph(Rng& rng, int n, int percent) {
    Digraph g;
    for (int v = 1; v <= n; ++v) g.add_vertex(v);
    for (int u = 1; u <= n; ++u)
        for (int v = 1; v <= n; ++v)
            if (u != v && rng.chance(percent, 100)) g.add_arc(u, v);
    return g;
}

MulticutInstance random_instance(Rng& rng, int n, int percent, int l, int k) {
    MulticutInstance inst;
    inst.D = random_digraph(rng, n, percent);
    inst.k = k;
    for (int i = 0; i < l; ++i) {
        Vertex s = (Vertex)(1 + rng.below(n));
        Vertex t = (Vertex)(1 + rng.below(n));
        if (s != t) inst.requests.emplace_back(s, t);
    }
    return inst;
}

// smallest single-center solution by exhaustive search (y undeletable)
std::optional<VertexSet> brute_single_center(
    const Digraph& H, Vertex y,
    const std::vector<std::pair<Vertex, Vertex>>& reqs, int k) {
    std::vector<Vertex> pool;
    for (Vertex v : H.vertices())
        if (v != y) pool.push_back(v);
    int limit = std::min<int>(k, (int)pool.size());
    std::vector<int> pick;
    std::optional<VertexSet> best;
    std::function<bool(int, int, int)> rec = [&](int size, int idx, int from) {
        if (idx == size) {
            VertexSet X;
            for (int i : pick) X.insert(pool[i]);
            if (oracle::multicut_valid(H, reqs, X)) {
                best = X;
                return true;
            }
            return false;
        }
        for (int i = from; i < (int)pool.size(); ++i) {
            pick.push_back(i);
            if (rec(size, idx + 1, i + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    for (int size = 0; size <= limit && !best; ++size) rec(size, 0, 0);
    return best;
}

}  // namespace

TEST_CASE("iterative compression trivial cases") {
    CHECK(approx2_solve({Digraph{}, {}, 2}) == VertexSet{});
    Digraph g = Digraph::from_arcs({1, 2, 3}, {{1, 2}, {2, 1}});
    CHECK(approx2_solve({g, {}, 0}) == VertexSet{});
}

TEST_CASE("skew_cut_of_Y") {
    // no backward path: nothing to do
    Digraph fwd = Digraph::from_arcs({1, 2}, {{1, 2}});
    CHECK(skew_cut_of_Y(fwd, {1, 2}, 1) == VertexSet{});
    // y2 -> a -> y1 must be broken at a
    Digraph back = Digraph::from_arcs({1, 2, 3}, {{2, 3}, {3, 1}});
    CHECK(skew_cut_of_Y(back, {1, 2}, 1) == VertexSet{3});
    // direct backward arc: impossible
    Digraph hard = Digraph::from_arcs({1, 2}, {{2, 1}});
    CHECK_FALSE(skew_cut_of_Y(hard, {1, 2}, 5).has_value());
    // returned sets verified on random graphs
    Rng rng(61);
    for (int trial = 0; trial < 60; ++trial) {
        Digraph g = random_digraph(rng, 8, 15);
        std::vector<Vertex> Y{2, 5, 7};
        auto X0 = skew_cut_of_Y(g, Y, 3);  // throws internally if unsound
        if (!X0) continue;
        CHECK(X0->size() <= 3);
        for (Vertex y : Y) CHECK_FALSE(X0->count(y));
    }
}

TEST_CASE("simplify_components") {
    // one-way bridge vertex 3 between two bidirected pairs
    Digraph g = Digraph::from_arcs(
        {1, 2, 3, 4, 5},
        {{1, 2}, {2, 1}, {2, 3}, {3, 4}, {4, 5}, {5, 4}});
    auto comps = simplify_components(g, {{2, 4}, {1, 2}}, {1, 4});
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].center == 1);
    CHECK(comps[0].H.vertex_set() == VertexSet{1, 2});  // 3 dropped
    // cross-component request (2,4) dropped, local (1,2) kept
    REQUIRE(comps[0].requests.size() == 1);
    CHECK(comps[0].requests[0] == std::pair<Vertex, Vertex>{1, 2});
    CHECK(comps[1].center == 4);
    CHECK(comps[1].requests.empty());
}

TEST_CASE("simplification preserves solutions on compression intermediates") {
    Rng rng(62);
    int tested = 0;
    for (int trial = 0; trial < 120 && tested < 40; ++trial) {
        MulticutInstance inst = random_instance(rng, 8, 18, 2, 2);
        auto rep = oracle::brute_force_opt(inst);
        if (!rep.feasible || rep.witness->empty()) continue;
        std::vector<Vertex> Y(rep.witness->begin(), rep.witness->end());
        std::optional<VertexSet> X0;
        try {
            X0 = skew_cut_of_Y(inst.D, Y, inst.k);
        } catch (const std::logic_error&) {
            continue;
        }
        if (!X0) continue;
        ++tested;
        Digraph D3 = inst.D.removed(*X0);
        std::vector<std::pair<Vertex, Vertex>> C2;
        for (auto [s, t] : inst.requests)
            if (D3.has_vertex(s) && D3.has_vertex(t)) C2.emplace_back(s, t);
        auto comps = simplify_components(D3, C2, Y);
        // reduced universe and the original agree on every candidate set
        VertexSet keep;
        for (const auto& cc : comps) {
            VertexSet vs = cc.H.vertex_set();
            keep.insert(vs.begin(), vs.end());
        }
        std::vector<Vertex> pool;
        for (Vertex v : keep)
            if (!rep.witness->count(v)) pool.push_back(v);
        for (int mask = 0; mask < (1 << std::min<int>(10, pool.size()));
             ++mask) {
            VertexSet X;
            for (int i = 0; i < (int)pool.size() && i < 10; ++i)
                if (mask & (1 << i)) X.insert(pool[i]);
            if ((int)X.size() > inst.k) continue;
            bool before = oracle::multicut_valid(D3, C2, X);
            bool after = true;
            for (const auto& cc : comps) {
                VertexSet local;
                for (Vertex v : X)
                    if (cc.H.has_vertex(v)) local.insert(v);
                if (!oracle::multicut_valid(cc.H, cc.requests, local))
                    after = false;
            }
            CHECK(before == after);
        }
    }
    CHECK(tested >= 20);
}

TEST_CASE("solve_single_center on the 3-cycle") {
    Digraph cyc = Digraph::from_arcs({1, 2, 3}, {{1, 2}, {2, 3}, {3, 1}});
    auto X = solve_single_center(cyc, 1, {{2, 3}}, 1);
    REQUIRE(X.has_value());
    CHECK(X->size() == 1);
    CHECK_FALSE(X->count(1));
    // satisfied and starved cases
    CHECK(solve_single_center(cyc, 1, {}, 0) == VertexSet{});
    CHECK_FALSE(solve_single_center(cyc, 1, {{2, 3}}, 0).has_value());
}

TEST_CASE("solve_single_center needs the endpoint-deletion branch") {
    // y <-> s and y <-> t: every vertex cut between two of {s,y,t} hits
    // a direct arc, yet deleting s (or t) solves it
    Digraph g = Digraph::from_arcs(
        {1, 2, 3}, {{1, 2}, {2, 1}, {1, 3}, {3, 1}});
    auto X = solve_single_center(g, 1, {{2, 3}}, 1);
    REQUIRE(X.has_value());
    CHECK(X->size() == 1);
}

TEST_CASE("solve_single_center matches brute force") {
    Rng rng(63);
    int tested = 0;
    for (int trial = 0; trial < 300 && tested < 120; ++trial) {
        int n = 4 + (int)rng.below(4);
        Digraph g = random_digraph(rng, n, 30);
        // work on the SCC of vertex 1
        auto comps = g.scc_components();
        VertexSet home;
        for (const auto& c : comps)
            if (c.count(1)) home = c;
        if (home.size() < 3) continue;
        Digraph H = g.induced(home);
        std::vector<std::pair<Vertex, Vertex>> reqs;
        std::vector<Vertex> members(home.begin(), home.end());
        for (int i = 0; i < 2; ++i) {
            Vertex s = members[rng.below(members.size())];
            Vertex t = members[rng.below(members.size())];
            if (s != t) reqs.emplace_back(s, t);
        }
        if (reqs.empty()) continue;
        ++tested;
        int k = 1 + (int)rng.below(3);
        auto mine = solve_single_center(H, 1, reqs, k);
        auto ref = brute_single_center(H, 1, reqs, k);
        REQUIRE(mine.has_value() == ref.has_value());
        if (mine) {
            CHECK(oracle::multicut_valid(H, reqs, *mine));
            CHECK(mine->size() <= (std::size_t)k);
        }
    }
    CHECK(tested >= 80);
}

TEST_CASE("solve_single_center leaf count stays within 8^k") {
    Rng rng(64);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 4 + (int)rng.below(4);
        Digraph g = random_digraph(rng, n, 30);
        auto comps = g.scc_components();
        VertexSet home;
        for (const auto& c : comps)
            if (c.count(1)) home = c;
        if (home.size() < 3) continue;
        Digraph H = g.induced(home);
        std::vector<Vertex> members(home.begin(), home.end());
        std::vector<std::pair<Vertex, Vertex>> reqs;
        for (int i = 0; i < 2; ++i) {
            Vertex s = members[rng.below(members.size())];
            Vertex t = members[rng.below(members.size())];
            if (s != t) reqs.emplace_back(s, t);
        }
        for (int k = 1; k <= 3; ++k) {
            SingleCenterStats stats;
            solve_single_center(H, 1, reqs, k, &stats);
            CHECK((double)stats.leaves <= std::pow(8.0, k));
        }
    }
}

TEST_CASE("approx2_solve against the oracle") {
    Rng rng(65);
    for (int trial = 0; trial < 150; ++trial) {
        int n = 4 + (int)rng.below(6);
        MulticutInstance inst = random_instance(
            rng, n, 18, 1 + (int)rng.below(3), 1 + (int)rng.below(3));
        auto rep = oracle::brute_force_opt(inst);
        auto out = approx2_solve(inst);
        if (rep.feasible) {
            REQUIRE(out.has_value());
            CHECK(exact_kl::validate_solution(
                {inst.D, inst.requests, 2 * inst.k}, *out));
        } else {
            CHECK_FALSE(out.has_value());
        }
    }
}

TEST_CASE("approx2_solve stays within twice the optimum") {
    Rng rng(66);
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 60; ++trial) {
        MulticutInstance inst = random_instance(rng, 8, 20, 2, 8);
        auto rep = oracle::brute_force_opt(inst);
        if (!rep.feasible || *rep.optimum == 0) continue;
        ++tested;
        inst.k = *rep.optimum;
        auto out = approx2_solve(inst);
        REQUIRE(out.has_value());
        CHECK((int)out->size() <= 2 * *rep.optimum);
        inst.k = *rep.optimum - 1;
        CHECK_FALSE(approx2_solve(inst).has_value());
    }
    CHECK(tested >= 40);
}
