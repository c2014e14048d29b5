#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "symdicut/digraph.hpp"
#include "symdicut/rng.hpp"

using namespace symdicut;

namespace {

Digraph random_digraph(Rng& rng, int n, int percent) {
    Digraph g;
    for (int v = 1; v <= n; ++v) g.add_vertex(v);
    for (int u = 1; u <= n; ++u)
        for (int v = 1; v <= n; ++v)
            if (u != v && rng.chance(percent, 100)) g.add_arc(u, v);
    return g;
}

}  // namespace

TEST_CASE("scc components: 2-cycle plus tail") {
    Digraph g = Digraph::from_arcs({1, 2, 3}, {{1, 2}, {2, 1}, {2, 3}});
    auto comps = g.scc_components();
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == VertexSet{1, 2});
    CHECK(comps[1] == VertexSet{3});
}

TEST_CASE("scc components: no arcs") {
    Digraph g = Digraph::from_arcs({1, 2}, {});
    auto comps = g.scc_components();
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].size() == 1);
    CHECK(comps[1].size() == 1);
}

TEST_CASE("scc components: single cycle") {
    Digraph g = Digraph::from_arcs({1, 2, 3}, {{1, 2}, {2, 3}, {3, 1}});
    auto comps = g.scc_components();
    REQUIRE(comps.size() == 1);
    CHECK(comps[0] == VertexSet{1, 2, 3});
}

TEST_CASE("scc components: topological order on random graphs") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        Digraph g = random_digraph(rng, 12, 15);
        auto comps = g.scc_components();
        // partition check
        VertexSet all;
        for (auto& c : comps) {
            for (Vertex v : c) CHECK(all.insert(v).second);
            // strong connectivity inside a block
            Digraph sub = g.induced(c);
            for (Vertex v : c) CHECK(sub.reachable_from(v) == c);
        }
        CHECK(all == g.vertex_set());
        std::map<Vertex, int> idx;
        for (int i = 0; i < (int)comps.size(); ++i)
            for (Vertex v : comps[i]) idx[v] = i;
        for (auto [u, v] : g.arcs()) CHECK(idx[u] <= idx[v]);
    }
}

TEST_CASE("reachable_from basics") {
    Digraph g = Digraph::from_arcs({1, 2, 3}, {{1, 2}, {2, 3}});
    CHECK(g.reachable_from(VertexSet{1}) == VertexSet{1, 2, 3});
    CHECK(g.reachable_from(VertexSet{3}) == VertexSet{3});
    CHECK(g.reachable_from(VertexSet{}) == VertexSet{});
}

TEST_CASE("reachable_from fixed point on random graphs") {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        Digraph g = random_digraph(rng, 30, 5);
        VertexSet S;
        for (Vertex v : g.vertices())
            if (rng.chance(1, 5)) S.insert(v);
        VertexSet R = g.reachable_from(S);
        // closed under out-neighbors and least such set containing S
        for (Vertex v : S) CHECK(R.count(v));
        VertexSet step = S;
        for (;;) {
            VertexSet next = step;
            for (Vertex v : step)
                for (Vertex w : g.out_neighbors(v)) next.insert(w);
            if (next == step) break;
            step = next;
        }
        CHECK(step == R);
    }
}

TEST_CASE("reverse") {
    CHECK(Digraph::from_arcs({1, 2}, {{1, 2}}).reversed() ==
          Digraph::from_arcs({1, 2}, {{2, 1}}));
    CHECK(Digraph::from_arcs({1}, {{1, 1}}).reversed() ==
          Digraph::from_arcs({1}, {{1, 1}}));
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        Digraph g = random_digraph(rng, 10, 20);
        CHECK(g.reversed().reversed() == g);
    }
}

TEST_CASE("removed") {
    Digraph g = Digraph::from_arcs({1, 2, 3}, {{1, 2}, {2, 3}});
    Digraph r = g.removed({2});
    CHECK(r.vertex_set() == VertexSet{1, 3});
    CHECK(r.arc_count() == 0);
    CHECK(g.removed({}) == g);
    CHECK(g.removed({1, 2, 3}).vertex_count() == 0);
}

TEST_CASE("contracted") {
    // arc inside the block becomes a loop on the representative
    Digraph g = Digraph::from_arcs({1, 2, 3}, {{1, 2}, {2, 3}});
    auto [c, cm] = g.contracted({{1, 2}});
    CHECK(c.vertex_set() == VertexSet{1, 3});
    CHECK(c.has_arc(1, 1));
    CHECK(c.has_arc(1, 3));
    CHECK(c.arc_count() == 2);
    CHECK(cm.image(2) == 1);
    CHECK(cm.preimage(1) == VertexSet{1, 2});

    // empty block list: identity
    auto [c2, cm2] = g.contracted({});
    CHECK(c2 == g);

    // parallel arcs collapse
    Digraph h = Digraph::from_arcs({1, 2, 3}, {{1, 3}, {2, 3}});
    auto [c3, cm3] = h.contracted({{1, 2}});
    CHECK(c3.vertex_set() == VertexSet{1, 3});
    CHECK(c3.arcs() == std::vector<Arc>{{1, 3}});

    CHECK_THROWS(g.contracted({{1, 2}, {2, 3}}));
}

TEST_CASE("contraction map lift round-trips") {
    Rng rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        Digraph g = random_digraph(rng, 10, 20);
        VertexSet b1, b2;
        for (Vertex v : g.vertices()) {
            if (rng.chance(1, 4)) b1.insert(v);
            else if (rng.chance(1, 4)) b2.insert(v);
        }
        if (b1.empty() || b2.empty()) continue;
        auto [c, cm] = g.contracted({b1, b2});
        for (Vertex v : g.vertices()) {
            auto img = cm.image(v);
            REQUIRE(img.has_value());
            CHECK(c.has_vertex(*img));
            CHECK(cm.preimage(*img).count(v));
        }
        // lifting the whole contracted vertex set recovers the original
        CHECK(cm.lift(c.vertex_set()) == g.vertex_set());
    }
}

TEST_CASE("contraction maps compose") {
    Digraph g =
        Digraph::from_arcs({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}});
    auto [c1, m1] = g.contracted({{1, 2}});
    auto [c2, m2] = c1.contracted({{1, 3}});
    ContractionMap both = m1.composed_with(m2);
    CHECK(both.image(2) == 1);
    CHECK(both.image(3) == 1);
    CHECK(both.image(4) == 4);
    CHECK(both.preimage(1) == VertexSet{1, 2, 3});
}
