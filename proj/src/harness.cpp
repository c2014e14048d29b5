#include "symdicut/harness.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "symdicut/rng.hpp"

namespace symdicut::harness {

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::SymDicut: return "symdicut";
        case Kind::SymDimw: return "symdimw";
        case Kind::ArcTerm: return "arcterm";
    }
    return "?";
}

namespace {

std::optional<Kind> kind_from(const std::string& s) {
    if (s == "symdicut") return Kind::SymDicut;
    if (s == "symdimw") return Kind::SymDimw;
    if (s == "arcterm") return Kind::ArcTerm;
    return std::nullopt;
}

}  // namespace

Instance parse_instance(const std::string& text) {
    Instance inst;
    bool have_header = false;
    int n = 0, m = 0, cnt = 0;
    int arc_lines = 0;
    std::vector<bool> block_seen;
    std::set<std::pair<Vertex, Vertex>> request_set;
    std::set<Vertex> terminal_set;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto check_vertex = [&](Vertex v, int at) {
        if (v < 1 || v > n) throw ParseError(at, "vertex out of range");
    };
    auto check_block = [&](int i, int at) {
        if (i < 1 || i > cnt) throw ParseError(at, "arc-set index out of range");
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "p") {
            if (have_header) throw ParseError(lineno, "duplicate header");
            std::string kname;
            if (!(ls >> kname >> n >> m >> cnt >> inst.k) || n < 0 || m < 0 ||
                cnt < 0)
                throw ParseError(lineno, "malformed header");
            auto kk = kind_from(kname);
            if (!kk) throw ParseError(lineno, "unknown problem kind");
            inst.kind = *kk;
            for (Vertex v = 1; v <= n; ++v) inst.D.add_vertex(v);
            if (inst.kind == Kind::ArcTerm) {
                inst.arc_sets.resize(cnt);
                block_seen.resize(cnt, false);
            }
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError(lineno, "directive before header");
        if (tag == "a") {
            Vertex u, v;
            if (!(ls >> u >> v)) throw ParseError(lineno, "malformed arc");
            check_vertex(u, lineno);
            check_vertex(v, lineno);
            inst.D.add_arc(u, v);
            ++arc_lines;
        } else if (tag == "c" && inst.kind == Kind::SymDicut) {
            Vertex s, t;
            if (!(ls >> s >> t)) throw ParseError(lineno, "malformed request");
            check_vertex(s, lineno);
            check_vertex(t, lineno);
            if (request_set.insert({s, t}).second)
                inst.requests.push_back({s, t});
        } else if (tag == "t" && inst.kind == Kind::SymDimw) {
            Vertex v;
            if (!(ls >> v)) throw ParseError(lineno, "malformed terminal");
            check_vertex(v, lineno);
            if (terminal_set.insert(v).second) inst.terminals.push_back(v);
        } else if (tag == "A" && inst.kind == Kind::ArcTerm) {
            int i;
            if (!(ls >> i)) throw ParseError(lineno, "malformed arc-set line");
            check_block(i, lineno);
            block_seen[i - 1] = true;
        } else if ((tag == "S" || tag == "T") && inst.kind == Kind::ArcTerm) {
            int i;
            Vertex v;
            if (!(ls >> i >> v)) throw ParseError(lineno, "malformed arc-set line");
            check_block(i, lineno);
            check_vertex(v, lineno);
            if (!block_seen[i - 1])
                throw ParseError(lineno, "arc-set member before its A line");
            (tag == "S" ? inst.arc_sets[i - 1].S : inst.arc_sets[i - 1].T)
                .insert(v);
        } else {
            throw ParseError(lineno, "unknown directive '" + tag + "'");
        }
    }
    if (!have_header) throw ParseError(lineno, "missing header");
    if (arc_lines != m) throw ParseError(lineno, "arc count differs from header");
    if (inst.kind == Kind::SymDicut && (int)inst.requests.size() != cnt)
        throw ParseError(lineno, "request count differs from header");
    if (inst.kind == Kind::SymDimw && (int)inst.terminals.size() != cnt)
        throw ParseError(lineno, "terminal count differs from header");
    if (inst.kind == Kind::ArcTerm)
        for (int i = 0; i < cnt; ++i)
            if (!block_seen[i])
                throw ParseError(lineno,
                                 "arc set " + std::to_string(i + 1) +
                                     " never declared");
    std::sort(inst.requests.begin(), inst.requests.end());
    std::sort(inst.terminals.begin(), inst.terminals.end());
    return inst;
}

std::string write_instance(const Instance& inst) {
    std::ostringstream out;
    int n = inst.D.vertices().empty() ? 0 : inst.D.vertices().back();
    int cnt = inst.kind == Kind::SymDicut ? (int)inst.requests.size()
              : inst.kind == Kind::SymDimw ? (int)inst.terminals.size()
                                           : (int)inst.arc_sets.size();
    out << "p " << kind_name(inst.kind) << ' ' << n << ' '
        << inst.D.arc_count() << ' ' << cnt << ' ' << inst.k << '\n';
    for (auto [u, v] : inst.D.arcs()) out << "a " << u << ' ' << v << '\n';
    if (inst.kind == Kind::SymDicut) {
        auto reqs = inst.requests;
        std::sort(reqs.begin(), reqs.end());
        for (auto [s, t] : reqs) out << "c " << s << ' ' << t << '\n';
    } else if (inst.kind == Kind::SymDimw) {
        auto terms = inst.terminals;
        std::sort(terms.begin(), terms.end());
        for (Vertex t : terms) out << "t " << t << '\n';
    } else {
        for (int i = 0; i < cnt; ++i) {
            out << "A " << i + 1 << '\n';
            for (Vertex v : inst.arc_sets[i].S)
                out << "S " << i + 1 << ' ' << v << '\n';
            for (Vertex v : inst.arc_sets[i].T)
                out << "T " << i + 1 << ' ' << v << '\n';
        }
    }
    return out.str();
}

namespace {

std::vector<std::pair<Vertex, Vertex>> random_pairs(Rng& rng, int n,
                                                    int count) {
    std::set<std::pair<Vertex, Vertex>> seen;
    std::vector<std::pair<Vertex, Vertex>> out;
    count = std::min<long long>(count, (long long)n * (n - 1));
    while ((int)out.size() < count) {
        Vertex s = 1 + (Vertex)rng.below((std::uint64_t)n);
        Vertex t = 1 + (Vertex)rng.below((std::uint64_t)n);
        if (s != t && seen.insert({s, t}).second) out.push_back({s, t});
    }
    return out;
}

std::vector<Vertex> random_vertices(Rng& rng, int n, int count) {
    VertexSet seen;
    count = std::min(count, n);
    while ((int)seen.size() < count)
        seen.insert(1 + (Vertex)rng.below((std::uint64_t)n));
    return std::vector<Vertex>(seen.begin(), seen.end());
}

void attach_payload(Instance& inst, Kind kind, Rng& rng, int n, int count) {
    if (kind == Kind::SymDicut) {
        inst.requests = random_pairs(rng, n, count);
        std::sort(inst.requests.begin(), inst.requests.end());
    } else if (kind == Kind::SymDimw) {
        inst.terminals = random_vertices(rng, n, count);
    } else {
        for (int i = 0; i < count; ++i) {
            multiway::ArcSet a;
            Vertex s = 1 + (Vertex)rng.below((std::uint64_t)n);
            a.S.insert(s);
            for (Vertex v : inst.D.out_neighbors(s))
                if (rng.chance(1, 2)) a.T.insert(v);
            inst.arc_sets.push_back(std::move(a));
        }
    }
}

}  // namespace

Instance gen_random(Kind kind, int n, std::uint64_t arc_prob_ppm, int count,
                    int k, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_random: n must be positive");
    Instance inst;
    inst.kind = kind;
    inst.k = k;
    Rng rng(seed);
    for (Vertex v = 1; v <= n; ++v) inst.D.add_vertex(v);
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = 1; v <= n; ++v)
            if (u != v && rng.below(1000000) < arc_prob_ppm)
                inst.D.add_arc(u, v);
    attach_payload(inst, kind, rng, n, count);
    return inst;
}

Planted gen_planted(Kind kind, int n, int k_true, int count,
                    std::uint64_t seed) {
    if (k_true < 0 || k_true >= n)
        throw std::invalid_argument("gen_planted: need 0 <= k_true < n");
    Rng rng(seed);
    Planted out;
    out.inst.kind = kind;
    out.inst.k = k_true;
    for (Vertex v = 1; v <= n; ++v) out.inst.D.add_vertex(v);
    auto xs = random_vertices(rng, n, k_true);
    out.X = VertexSet(xs.begin(), xs.end());

    std::vector<Vertex> rest;
    for (Vertex v = 1; v <= n; ++v)
        if (!out.X.count(v)) rest.push_back(v);
    // random topological order over the survivors, arcs only forward
    for (std::size_t i = rest.size(); i > 1; --i)
        std::swap(rest[i - 1], rest[rng.below(i)]);
    for (std::size_t i = 0; i < rest.size(); ++i)
        for (std::size_t j = i + 1; j < rest.size(); ++j)
            if (rng.chance(1, 3)) out.inst.D.add_arc(rest[i], rest[j]);
    // arbitrary arcs through the planted set
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = 1; v <= n; ++v)
            if (u != v && (out.X.count(u) || out.X.count(v)) &&
                rng.chance(1, 3))
                out.inst.D.add_arc(u, v);

    int nrest = (int)rest.size();
    std::sort(rest.begin(), rest.end());
    if (kind == Kind::SymDicut) {
        auto pairs = random_pairs(rng, nrest, count);
        for (auto [s, t] : pairs)
            out.inst.requests.push_back({rest[s - 1], rest[t - 1]});
        std::sort(out.inst.requests.begin(), out.inst.requests.end());
    } else if (kind == Kind::SymDimw) {
        for (Vertex i : random_vertices(rng, nrest, count))
            out.inst.terminals.push_back(rest[i - 1]);
        std::sort(out.inst.terminals.begin(), out.inst.terminals.end());
    } else {
        attach_payload(out.inst, kind, rng, n, count);
    }
    return out;
}

Instance encode_undirected(
    int n, const std::vector<Arc>& edges,
    const std::vector<std::pair<Vertex, Vertex>>& requests, int k) {
    Instance inst;
    inst.kind = Kind::SymDicut;
    inst.k = k;
    inst.requests = requests;
    std::sort(inst.requests.begin(), inst.requests.end());
    for (Vertex v = 1; v <= n; ++v) inst.D.add_vertex(v);
    for (auto [u, v] : edges) {
        inst.D.add_arc(u, v);
        inst.D.add_arc(v, u);
    }
    return inst;
}

Instance encode_subset_fvs(const Digraph& D, const std::vector<Arc>& special,
                           int k) {
    Instance inst;
    inst.kind = Kind::SymDicut;
    inst.k = k;
    inst.D = D;
    inst.requests = special;
    std::sort(inst.requests.begin(), inst.requests.end());
    inst.requests.erase(
        std::unique(inst.requests.begin(), inst.requests.end()),
        inst.requests.end());
    return inst;
}

Instance encode_dfvs(const Digraph& D, int k) {
    Instance inst;
    inst.kind = Kind::SymDicut;
    inst.k = k;
    inst.D = D;
    auto verts = D.vertices();
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            inst.requests.push_back({verts[i], verts[j]});
    return inst;
}

Instance encode_nondeletable_terminal(const Instance& inst, Vertex t) {
    if (inst.kind != Kind::SymDicut)
        throw std::invalid_argument("twin encoding needs a multicut instance");
    if (!inst.D.has_vertex(t))
        throw std::invalid_argument("twin encoding: no such vertex");
    Instance out = inst;
    Vertex next = inst.D.vertices().back();
    std::vector<Vertex> copies{t};
    for (int i = 0; i < inst.k; ++i) {
        Vertex tw = ++next;
        copies.push_back(tw);
        out.D.add_vertex(tw);
        for (Vertex v : inst.D.out_neighbors(t))
            if (v != t) out.D.add_arc(tw, v);
        for (Vertex v : inst.D.in_neighbors(t))
            if (v != t) out.D.add_arc(v, tw);
    }
    std::vector<std::pair<Vertex, Vertex>> reqs;
    for (auto [s, u] : inst.requests) {
        if (s != t && u != t) {
            reqs.push_back({s, u});
            continue;
        }
        for (Vertex cs : (s == t ? copies : std::vector<Vertex>{s}))
            for (Vertex cu : (u == t ? copies : std::vector<Vertex>{u}))
                reqs.push_back({cs, cu});
    }
    std::sort(reqs.begin(), reqs.end());
    reqs.erase(std::unique(reqs.begin(), reqs.end()), reqs.end());
    out.requests = std::move(reqs);
    return out;
}

std::string report_to_json(const SolveReport& rep) {
    nlohmann::json j;
    switch (rep.status) {
        case SolveStatus::Solution: j["status"] = "solution"; break;
        case SolveStatus::NoSolutionAtK: j["status"] = "no-solution-at-k"; break;
        case SolveStatus::NoSolutionAt2kApprox:
            j["status"] = "no-solution-at-2k-approx";
            break;
    }
    j["solution"] = rep.solution;
    j["size"] = rep.solution.size();
    j["stats"] = {{"algo", rep.algo},
                  {"seed", rep.seed},
                  {"shadow_mode", rep.shadow_mode},
                  {"rounds", rep.rounds},
                  {"elapsed_ms", rep.elapsed_ms},
                  {"leaves", rep.leaves}};
    return j.dump() + "\n";
}

}  // namespace symdicut::harness
