#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>

#include "symdicut/approx2.hpp"
#include "symdicut/exact_kl.hpp"
#include "symdicut/harness.hpp"
#include "symdicut/multiway.hpp"
#include "symdicut/oracle.hpp"

using namespace symdicut;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct SolveFlags {
    std::string algo = "exact-kl";
    int k = -1;  // -1: take the instance's k
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string shadow_mode = "exhaustive";
    int rounds = 32;
    long timeout_ms = 0;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
    cmd->add_option("--algo", f.algo, "solver")
        ->check(CLI::IsMember({"exact-kl", "approx2", "multiway", "brute"}));
    cmd->add_option("--k", f.k, "budget override (default: from file)");
    cmd->add_option("--seed", f.seed, "rng seed");
    cmd->add_option("--shadow-mode", f.shadow_mode)
        ->check(CLI::IsMember({"exhaustive", "random"}));
    cmd->add_option("--rounds", f.rounds, "random-mode sampling rounds");
    cmd->add_option("--timeout-ms", f.timeout_ms, "0 = unlimited");
}

harness::SolveReport run_solver(const harness::Instance& inst,
                                const SolveFlags& f) {
    harness::SolveReport rep;
    rep.algo = f.algo;
    rep.seed = f.seed;
    int k = f.k >= 0 ? f.k : inst.k;

    auto start = std::chrono::steady_clock::now();
    std::optional<VertexSet> X;
    bool approx = false;
    if (f.algo == "exact-kl") {
        if (inst.kind != harness::Kind::SymDicut)
            throw std::runtime_error("exact-kl needs a symdicut instance");
        X = exact_kl::solve_exact_kl({inst.D, inst.requests, k});
    } else if (f.algo == "approx2") {
        if (inst.kind != harness::Kind::SymDicut)
            throw std::runtime_error("approx2 needs a symdicut instance");
        X = approx2::approx2_solve({inst.D, inst.requests, k});
        approx = true;
    } else if (f.algo == "multiway") {
        if (inst.kind != harness::Kind::SymDimw)
            throw std::runtime_error("multiway needs a symdimw instance");
        multiway::SolveOptions opts;
        opts.mode = f.shadow_mode == "random" ? multiway::ShadowMode::Random
                                              : multiway::ShadowMode::Exhaustive;
        opts.seed = f.seed;
        opts.rounds = f.rounds;
        rep.shadow_mode = f.shadow_mode;
        rep.rounds = f.rounds;
        VertexSet T(inst.terminals.begin(), inst.terminals.end());
        X = multiway::solve_multiway(inst.D, T, k, opts);
    } else {  // brute
        if (inst.kind == harness::Kind::SymDicut) {
            auto r = oracle::brute_force_opt({inst.D, inst.requests, k});
            if (r.feasible) X = r.witness;
        } else if (inst.kind == harness::Kind::SymDimw) {
            VertexSet T(inst.terminals.begin(), inst.terminals.end());
            auto r = oracle::brute_force_multiway(inst.D, T, k);
            if (r.feasible) X = r.witness;
        } else {
            multiway::ArcTerminalInstance ai{inst.D, inst.arc_sets, k, {}};
            auto r = oracle::brute_force_arc_terminal(ai);
            if (r.feasible) X = r.witness;
        }
    }
    auto end = std::chrono::steady_clock::now();
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(end - start).count();

    if (X) {
        rep.status = harness::SolveStatus::Solution;
        rep.solution.assign(X->begin(), X->end());
    } else {
        rep.status = approx ? harness::SolveStatus::NoSolutionAt2kApprox
                            : harness::SolveStatus::NoSolutionAtK;
    }
    return rep;
}

harness::SolveReport run_with_timeout(const harness::Instance& inst,
                                      const SolveFlags& f) {
    if (f.timeout_ms <= 0) return run_solver(inst, f);
    auto fut = std::async(std::launch::async,
                          [&] { return run_solver(inst, f); });
    if (fut.wait_for(std::chrono::milliseconds(f.timeout_ms)) ==
        std::future_status::timeout) {
        std::cerr << "timeout after " << f.timeout_ms << " ms\n";
        std::_Exit(2);
    }
    return fut.get();
}

std::uint64_t default_seed(bool given, std::uint64_t seed) {
    if (given) return seed;
    std::random_device rd;
    std::uint64_t s = ((std::uint64_t)rd() << 32) | rd();
    std::cerr << "seed defaulted to " << s << "\n";
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetric directed multicut toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an instance");
    std::string g_kind = "symdicut";
    int g_n = 8, g_l = 2, g_k = 1;
    double g_p = 0.3;
    std::uint64_t g_seed = 0;
    bool g_planted = false;
    gen->add_option("--kind", g_kind)
        ->check(CLI::IsMember({"symdicut", "symdimw", "arcterm"}));
    gen->add_option("--n", g_n)->required();
    gen->add_option("--p", g_p, "arc probability");
    gen->add_option("--l", g_l, "request / terminal / arc-set count");
    gen->add_option("--k", g_k, "budget (planted: solution size)");
    auto* g_seed_opt = gen->add_option("--seed", g_seed);
    gen->add_flag("--planted", g_planted);

    // solve
    auto* solve = app.add_subcommand("solve", "solve one instance");
    std::string s_file;
    solve->add_option("instance", s_file, "instance file or -")->required();
    SolveFlags sf;
    add_solve_flags(solve, sf);
    auto* s_seed_opt = solve->get_option("--seed");

    // verify
    auto* verify = app.add_subcommand("verify", "check a solution file");
    std::string v_inst, v_sol;
    verify->add_option("instance", v_inst)->required();
    verify->add_option("solution", v_sol)->required();

    // bench
    auto* bench = app.add_subcommand("bench", "solve a corpus directory");
    std::string b_dir;
    bench->add_option("corpus", b_dir)->required();
    SolveFlags bf;
    add_solve_flags(bench, bf);
    auto* b_seed_opt = bench->get_option("--seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            harness::Kind kind = g_kind == "symdimw" ? harness::Kind::SymDimw
                                 : g_kind == "arcterm" ? harness::Kind::ArcTerm
                                                       : harness::Kind::SymDicut;
            std::uint64_t seed = default_seed(g_seed_opt->count() > 0, g_seed);
            if (g_planted) {
                auto planted = harness::gen_planted(kind, g_n, g_k, g_l, seed);
                std::cerr << "planted:";
                for (Vertex v : planted.X) std::cerr << ' ' << v;
                std::cerr << "\n";
                std::cout << harness::write_instance(planted.inst);
            } else {
                auto inst = harness::gen_random(
                    kind, g_n, (std::uint64_t)(g_p * 1e6 + 0.5), g_l, g_k,
                    seed);
                std::cout << harness::write_instance(inst);
            }
            return 0;
        }
        if (solve->parsed()) {
            sf.seed = default_seed(s_seed_opt->count() > 0, sf.seed);
            auto inst = harness::parse_instance(slurp(s_file));
            auto rep = run_with_timeout(inst, sf);
            std::cout << harness::report_to_json(rep);
            return rep.status == harness::SolveStatus::Solution ? 0 : 1;
        }
        if (verify->parsed()) {
            auto inst = harness::parse_instance(slurp(v_inst));
            VertexSet X;
            std::istringstream in(slurp(v_sol));
            std::string line;
            while (std::getline(in, line)) {
                std::istringstream ls(line);
                std::string tok;
                while (ls >> tok) {
                    if (tok[0] == '#') break;
                    X.insert(std::stoi(tok));
                }
            }
            bool ok = (int)X.size() <= inst.k;
            if (ok) {
                if (inst.kind == harness::Kind::SymDicut)
                    ok = oracle::multicut_valid(inst.D, inst.requests, X);
                else if (inst.kind == harness::Kind::SymDimw)
                    ok = oracle::multiway_valid_brute(
                        inst.D,
                        VertexSet(inst.terminals.begin(),
                                  inst.terminals.end()),
                        X);
                else
                    ok = oracle::arc_terminal_valid_brute(
                        {inst.D, inst.arc_sets, inst.k, {}}, X);
            }
            std::cout << "{\"valid\":" << (ok ? "true" : "false")
                      << ",\"size\":" << X.size() << "}\n";
            return ok ? 0 : 1;
        }
        if (bench->parsed()) {
            bf.seed = default_seed(b_seed_opt->count() > 0, bf.seed);
            std::vector<fs::path> files;
            for (const auto& e : fs::directory_iterator(b_dir))
                if (e.is_regular_file()) files.push_back(e.path());
            std::sort(files.begin(), files.end());
            for (const fs::path& p : files) {
                auto inst = harness::parse_instance(slurp(p.string()));
                auto rep = run_with_timeout(inst, bf);
                std::string line = harness::report_to_json(rep);
                line.pop_back();  // re-attach after the file field
                std::cout << line.substr(0, line.size() - 1)
                          << ",\"file\":\"" << p.filename().string()
                          << "\"}\n";
            }
            return 0;
        }
    } catch (const harness::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
