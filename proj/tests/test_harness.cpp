#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "symdicut/harness.hpp"
#include "symdicut/oracle.hpp"
#include "symdicut/rng.hpp"

using namespace symdicut;
using namespace symdicut::harness;

TEST_CASE("parse_instance accepts the documented examples") {
    auto tri = parse_instance(
        "p symdicut 3 3 1 1\na 1 2\na 2 3\na 3 1\nc 1 2\n");
    CHECK(tri.kind == Kind::SymDicut);
    CHECK(tri.D.vertex_count() == 3);
    CHECK(tri.D.has_arc(3, 1));
    CHECK(tri.requests == std::vector<std::pair<Vertex, Vertex>>{{1, 2}});
    CHECK(tri.k == 1);

    auto mw = parse_instance(
        "p symdimw 4 4 2 1\n# a comment\na 1 2\na 2 1\na 3 4\na 4 3\n"
        "t 1\nt 3\n");
    CHECK(mw.kind == Kind::SymDimw);
    CHECK(mw.terminals == std::vector<Vertex>{1, 3});

    auto none = parse_instance("p symdicut 2 1 0 3\na 1 2\n");
    CHECK(none.requests.empty());
    CHECK(none.k == 3);

    auto at = parse_instance(
        "p arcterm 3 2 1 1\na 1 2\na 2 3\nA 1\nS 1 1\nT 1 2\n");
    REQUIRE(at.arc_sets.size() == 1);
    CHECK(at.arc_sets[0].S == VertexSet{1});
    CHECK(at.arc_sets[0].T == VertexSet{2});
}

TEST_CASE("parse_instance rejects malformed input with line numbers") {
    CHECK_THROWS_AS(parse_instance("p symdicut 2 0 0 1\nq 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("p symdicut 2 1 0 1\na 1 5\n"), ParseError);
    CHECK_THROWS_AS(
        parse_instance("p symdicut 2 0 0 1\np symdicut 2 0 0 1\n"),
        ParseError);
    CHECK_THROWS_AS(parse_instance("a 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("p nosuch 2 0 0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("p symdicut 2 2 0 1\na 1 2\n"),
                    ParseError);  // header m disagrees
    try {
        parse_instance("p symdicut 2 0 0 1\na 1 9\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("parse and write round-trip") {
    Rng rng(31337);
    for (int trial = 0; trial < 30; ++trial) {
        Kind kind = trial % 3 == 0   ? Kind::SymDicut
                    : trial % 3 == 1 ? Kind::SymDimw
                                     : Kind::ArcTerm;
        auto inst = gen_random(kind, 2 + (int)rng.below(8), 300000, 2, 2,
                               rng.next_u64());
        std::string text = write_instance(inst);
        auto back = parse_instance(text);
        CHECK(back == inst);
        CHECK(write_instance(back) == text);
    }
}

TEST_CASE("gen_random determinism and probability extremes") {
    auto a = gen_random(Kind::SymDicut, 6, 400000, 3, 2, 99);
    auto b = gen_random(Kind::SymDicut, 6, 400000, 3, 2, 99);
    CHECK(a == b);
    CHECK(gen_random(Kind::SymDicut, 5, 0, 2, 1, 7).D.arc_count() == 0);
    CHECK(gen_random(Kind::SymDicut, 4, 1000000, 2, 1, 7).D.arc_count() == 12);
}

TEST_CASE("gen_planted plants a valid solution") {
    Rng rng(2718);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 4 + (int)rng.below(5);
        int kt = (int)rng.below(3);
        std::uint64_t seed = rng.next_u64();
        if (trial % 2 == 0) {
            auto [inst, X] = gen_planted(Kind::SymDicut, n, kt, 3, seed);
            CHECK((int)X.size() == kt);
            CHECK(oracle::multicut_valid(inst.D, inst.requests, X));
            auto rep = oracle::brute_force_opt(
                MulticutInstance{inst.D, inst.requests, kt});
            CHECK(rep.feasible);
            CHECK(*rep.optimum <= kt);
        } else {
            auto [inst, X] = gen_planted(Kind::SymDimw, n, kt, 3, seed);
            VertexSet T(inst.terminals.begin(), inst.terminals.end());
            CHECK(oracle::multiway_valid_brute(inst.D, T, X));
        }
    }
    // k_true = 0: the instance must already be cut
    auto [inst0, X0] = gen_planted(Kind::SymDicut, 6, 0, 3, 5);
    CHECK(X0.empty());
    CHECK(oracle::multicut_valid(inst0.D, inst0.requests, {}));
    CHECK_THROWS_AS(gen_planted(Kind::SymDicut, 3, 3, 1, 0),
                    std::invalid_argument);
}

TEST_CASE("encode_undirected bidirects every edge") {
    auto inst = encode_undirected(3, {{1, 2}, {2, 3}, {3, 1}}, {{1, 2}}, 1);
    CHECK(inst.D.arc_count() == 6);
    CHECK(inst.D.has_arc(1, 2));
    CHECK(inst.D.has_arc(2, 1));
    // optimum matches the undirected reference
    auto und = oracle::brute_force_undirected_multicut(inst.D, inst.requests, 1);
    auto dir = oracle::brute_force_opt(
        MulticutInstance{inst.D, inst.requests, 1});
    CHECK(und.feasible == dir.feasible);
    CHECK(und.optimum == dir.optimum);
}

TEST_CASE("encode_dfvs of a 3-cycle has optimum 1") {
    Digraph cyc = Digraph::from_arcs({1, 2, 3}, {{1, 2}, {2, 3}, {3, 1}});
    auto inst = encode_dfvs(cyc, 1);
    CHECK(inst.requests.size() == 3);
    auto rep = oracle::brute_force_opt(
        MulticutInstance{inst.D, inst.requests, 1});
    CHECK(rep.feasible);
    CHECK(*rep.optimum == 1);
}

TEST_CASE("encode_subset_fvs matches the cycle-hitting reference") {
    Rng rng(1123);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + (int)rng.below(4);
        auto base = gen_random(Kind::SymDicut, n, 350000, 2, 1, rng.next_u64());
        std::vector<Arc> special;
        auto arcs = base.D.arcs();
        for (const Arc& a : arcs)
            if (rng.chance(1, 3)) special.push_back(a);
        auto inst = encode_subset_fvs(base.D, special, 2);
        // every X of size <= k agrees between the two predicates
        auto verts = base.D.vertices();
        for (int mask = 0; mask < (1 << n); ++mask) {
            VertexSet X;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) X.insert(verts[i]);
            if (X.size() > 2) continue;
            CHECK(oracle::multicut_valid(inst.D, inst.requests, X) ==
                  oracle::hits_all_cycles_through(base.D, X, special));
        }
    }
}

TEST_CASE("encode_nondeletable_terminal adds k+1 copies in total") {
    auto base = parse_instance(
        "p symdicut 3 3 1 1\na 1 2\na 2 3\na 3 1\nc 1 3\n");
    auto inst = encode_nondeletable_terminal(base, 1);
    CHECK(inst.D.vertex_count() == 4);  // k=1: vertex 1 plus one twin
    CHECK(inst.D.has_arc(4, 2));
    CHECK(inst.D.has_arc(3, 4));
    CHECK_FALSE(inst.D.has_arc(1, 4));
    CHECK_FALSE(inst.D.has_arc(4, 1));
    // requests replicated onto the twin
    CHECK(inst.requests ==
          std::vector<std::pair<Vertex, Vertex>>{{1, 3}, {4, 3}});

    // optimum preserved vs the source problem where t is undeletable
    Rng rng(555);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 3 + (int)rng.below(4);
        auto src = gen_random(Kind::SymDicut, n, 400000, 2, 1, rng.next_u64());
        if (src.requests.empty()) continue;
        Vertex t = src.requests[0].first;
        auto enc = encode_nondeletable_terminal(src, t);
        // reference: brute force skipping sets containing t
        auto verts = src.D.vertices();
        int best = -1;
        for (int mask = 0; mask < (1 << n); ++mask) {
            VertexSet X;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) X.insert(verts[i]);
            if (X.count(t) || (int)X.size() > src.k) continue;
            if (oracle::multicut_valid(src.D, src.requests, X))
                if (best < 0 || (int)X.size() < best) best = (int)X.size();
        }
        auto rep = oracle::brute_force_opt(
            MulticutInstance{enc.D, enc.requests, enc.k});
        if (best < 0)
            CHECK_FALSE(rep.feasible);
        else {
            REQUIRE(rep.feasible);
            CHECK(*rep.optimum == best);
        }
    }
}

TEST_CASE("report_to_json is stable and well-formed") {
    SolveReport rep;
    rep.status = SolveStatus::Solution;
    rep.solution = {2, 5};
    rep.algo = "exact-kl";
    rep.seed = 42;
    std::string a = report_to_json(rep);
    std::string b = report_to_json(rep);
    CHECK(a == b);
    CHECK(a.find("\"status\":\"solution\"") != std::string::npos);
    CHECK(a.back() == '\n');
}
