#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ccn/certificates.hpp"
#include "ccn/clique_color.hpp"
#include "ccn/experiments.hpp"
#include "ccn/graph_io.hpp"
#include "ccn/profile.hpp"
#include "ccn/tail_bounds.hpp"

namespace {

using namespace ccn;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInvalidColoring = 4;

double now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open output file: " + path);
    return out;
}

Graph load_graph(const std::string& path, bool warn = true) {
    IoWarnings w;
    Graph g = read_graph_file(path, &w);
    if (warn && (w.self_loops || w.duplicate_edges))
        std::cerr << "note: dropped " << w.self_loops << " self-loops, " << w.duplicate_edges
                  << " duplicate edges\n";
    return g;
}

struct GenArgs {
    int n = 0;
    double p = 0.5;
    std::uint64_t seed = 1;
    std::string out;
    bool dimacs = false;
};

int run_gen(const GenArgs& a) {
    double t0 = now_ms();
    Rng rng(a.seed);
    Graph g = gen_gnp(a.n, a.p, rng);
    GraphFormat fmt = a.dimacs ? GraphFormat::dimacs : GraphFormat::edge_list;
    if (!a.out.empty()) {
        auto out = open_out(a.out);
        write_graph(g, fmt, out);
    } else {
        write_graph(g, fmt, std::cout);
    }
    std::cerr << "gen n=" << a.n << " p=" << a.p << " seed=" << a.seed
              << " edges=" << g.edge_count() << " generator=" << Rng::kGeneratorId
              << " wall_ms=" << now_ms() - t0 << "\n";
    return kExitOk;
}

struct SolveArgs {
    std::string graph;
    bool heuristic = false;
    std::uint64_t seed = 1;
    std::string out;
    long long max_nodes = ExactLimits{}.max_nodes;
    std::uint64_t clique_cap = kDefaultCliqueCap;
};

int run_solve(const SolveArgs& a) {
    double t0 = now_ms();
    Graph g = load_graph(a.graph);
    Coloring coloring;
    if (a.heuristic) {
        Rng rng(a.seed);
        GreedyLimits lim;
        lim.clique_cap = a.clique_cap;
        coloring = greedy_clique_coloring(g, rng, lim);
        coloring.compact();
        std::cout << "status=ok colors=" << coloring.num_colors << "\n";
    } else {
        ExactLimits lim;
        lim.max_nodes = a.max_nodes;
        lim.clique_cap = a.clique_cap;
        ExactResult er = chi_c_exact(g, lim);
        coloring = er.coloring;
        if (er.proved())
            std::cout << "status=proved chi=" << er.chi() << "\n";
        else
            std::cout << "status=gap lower=" << er.lower << " upper=" << er.upper << "\n";
    }
    if (!a.out.empty()) {
        auto out = open_out(a.out);
        write_coloring(coloring, out);
    }
    std::cerr << "solve wall_ms=" << now_ms() - t0 << "\n";
    return kExitOk;
}

struct VerifyArgs {
    std::string graph, coloring;
    std::string out;
    std::uint64_t clique_cap = kDefaultCliqueCap;
};

int run_verify(const VerifyArgs& a) {
    Graph g = load_graph(a.graph);
    Coloring c = read_coloring_file(a.coloring);
    c.validate(g.vertex_count());
    Verdict v = verify_coloring(g, c, a.clique_cap);
    nlohmann::json j{{"valid", v.valid}};
    if (v.witness) j["witness"] = v.witness->to_vector();
    if (!a.out.empty()) {
        auto out = open_out(a.out);
        out << j.dump() << "\n";
    }
    if (v.valid) {
        std::cout << "valid\n";
        return kExitOk;
    }
    std::cout << "invalid witness=" << nlohmann::json(v.witness->to_vector()).dump() << "\n";
    return kExitInvalidColoring;
}

struct CertifyArgs {
    int n = 512;
    double p = 0.5;
    int seeds = 20;
    std::uint64_t seed = 1;
    std::string profile = "desk";
    int trials = 50;
    int jobs = 1;
    std::string out;
    std::string format = "jsonl";
};

int run_certify(const CertifyArgs& a) {
    double t0 = now_ms();
    ParameterProfile profile = resolve_profile_arg(a.profile);
    CertifyOptions opt;
    opt.n = a.n;
    opt.p = a.p;
    opt.seeds = a.seeds;
    opt.base_seed = a.seed;
    opt.avoidance_trials = a.trials;
    opt.jobs = a.jobs;
    CertifyResult res = run_certify(opt, profile);
    if (!a.out.empty()) {
        auto out = open_out(a.out);
        if (a.format == "csv")
            write_certify_csv(res, out);
        else
            write_certify_jsonl(res, out);
    }
    std::cout << res.aggregate.dump(2) << "\n";
    std::cerr << "certify wall_ms=" << now_ms() - t0 << "\n";
    return kExitOk;
}

struct BoundsArgs {
    std::vector<double> Ls{50, 100, 150, 200, 300};
    std::vector<double> ps{0.5, 0.25, 0.1};
    std::string profile = "paper";
    std::string out;
    std::string format = "table";
};

int run_bounds(const BoundsArgs& a) {
    ParameterProfile profile = resolve_profile_arg(a.profile);
    std::ostringstream buf;
    bool csv = a.format == "csv";
    bool first = true;
    for (double L : a.Ls) {
        for (const BoundReport& rep :
             {avoidance_union_bound(L, profile), bad_vertex_union_bound(L, profile),
              janson_report(L, profile)}) {
            if (csv) {
                buf << "# " << rep.title << "\n";
                rep.write_csv(buf, first);
                first = false;
            } else {
                rep.write_table(buf);
                buf << "\n";
            }
        }
    }
    char line[128];
    std::snprintf(line, sizeof line, "%s mu crossover L* = %.4f\n", csv ? "#" : "",
                  janson_mu_crossover(profile));
    buf << (csv ? std::string(line) : std::string(line + 1));
    for (double p : a.ps) {
        std::snprintf(line, sizeof line, "%s lower bound coefficient p=%g: %.6f\n",
                      csv ? "#" : "", p, lower_bound_coefficient(p));
        buf << (csv ? std::string(line) : std::string(line + 1));
    }
    if (!a.out.empty()) {
        auto out = open_out(a.out);
        out << buf.str();
    }
    std::cout << buf.str();
    return kExitOk;
}

struct SweepArgs {
    std::vector<int> ns;
    int seeds = 20;
    double p = 0.5;
    std::string mode = "heuristic";
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string out;
    std::string format = "csv";
    bool gnuplot = false;
};

int run_sweep_cmd(const SweepArgs& a) {
    double t0 = now_ms();
    SweepOptions opt;
    opt.n_grid = a.ns;
    opt.seeds_per_n = a.seeds;
    opt.p = a.p;
    opt.mode = a.mode == "exact" ? SweepMode::exact : SweepMode::heuristic;
    opt.base_seed = a.seed;
    opt.jobs = a.jobs;
    SweepResult res = run_sweep(opt);
    if (!a.out.empty()) {
        auto out = open_out(a.out);
        if (a.format == "jsonl")
            write_sweep_jsonl(res, out);
        else
            write_sweep_csv(res, out);
        if (a.gnuplot) {
            auto gp = open_out(a.out + ".gp");
            gp << gnuplot_script(res, a.out);
        }
    } else {
        if (a.format == "jsonl")
            write_sweep_jsonl(res, std::cout);
        else
            write_sweep_csv(res, std::cout);
    }
    for (const auto& row : res.summary.per_n)
        std::cerr << "n=" << row.n << " samples=" << row.samples << " mean=" << row.mean
                  << " min=" << row.min << " max=" << row.max << "\n";
    if (res.summary.fit)
        std::cerr << "fit a=" << res.summary.fit->a << " b=" << res.summary.fit->b << "\n";
    std::cerr << "sweep wall_ms=" << now_ms() - t0 << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"clique chromatic number toolkit"};
    app.require_subcommand(1);

    GenArgs gen;
    CLI::App* cmd_gen = app.add_subcommand("gen", "sample a G(n,p) graph");
    cmd_gen->add_option("-n,--n", gen.n, "vertex count")->required();
    cmd_gen->add_option("-p,--p", gen.p, "edge probability");
    cmd_gen->add_option("--seed", gen.seed, "rng seed");
    cmd_gen->add_option("-o,--out", gen.out, "output graph file (stdout when absent)");
    cmd_gen->add_flag("--dimacs", gen.dimacs, "write dimacs instead of edge list");

    SolveArgs solve;
    CLI::App* cmd_solve = app.add_subcommand("solve", "compute a clique coloring");
    cmd_solve->add_option("graph", solve.graph, "input graph file")->required();
    auto* exact_flag = cmd_solve->add_flag("--exact", "prove the exact value (default)");
    auto* heur_flag = cmd_solve->add_flag("--heuristic", solve.heuristic, "randomized upper bound only");
    exact_flag->excludes(heur_flag);
    cmd_solve->add_option("--seed", solve.seed, "rng seed (heuristic mode)");
    cmd_solve->add_option("-o,--out", solve.out, "coloring output file");
    cmd_solve->add_option("--max-nodes", solve.max_nodes, "search node budget per color count");
    cmd_solve->add_option("--clique-cap", solve.clique_cap, "maximal clique enumeration cap");

    VerifyArgs verify;
    CLI::App* cmd_verify = app.add_subcommand("verify", "check a coloring file");
    cmd_verify->add_option("graph", verify.graph, "input graph file")->required();
    cmd_verify->add_option("coloring", verify.coloring, "coloring file")->required();
    cmd_verify->add_option("-o,--out", verify.out, "verdict output file (json)");
    cmd_verify->add_option("--clique-cap", verify.clique_cap, "maximal clique enumeration cap");

    CertifyArgs certify;
    CLI::App* cmd_certify = app.add_subcommand("certify", "run the certificate campaign");
    cmd_certify->add_option("-n,--n", certify.n, "vertex count");
    cmd_certify->add_option("-p,--p", certify.p, "edge probability");
    cmd_certify->add_option("--seeds", certify.seeds, "number of seeds");
    cmd_certify->add_option("--seed", certify.seed, "base seed");
    cmd_certify->add_option("--profile", certify.profile, "paper | desk | profile file");
    cmd_certify->add_option("--trials", certify.trials, "sampled avoidance sets per size");
    cmd_certify->add_option("--jobs", certify.jobs, "worker threads");
    cmd_certify->add_option("-o,--out", certify.out, "output file");
    cmd_certify->add_option("--format", certify.format, "jsonl | csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));

    BoundsArgs bounds;
    CLI::App* cmd_bounds = app.add_subcommand("bounds", "evaluate the probability bookkeeping");
    cmd_bounds->add_option("--L", bounds.Ls, "log2 n values");
    cmd_bounds->add_option("--p-list", bounds.ps, "edge probabilities for the lower-bound coefficient");
    cmd_bounds->add_option("--profile", bounds.profile, "paper | desk | profile file");
    cmd_bounds->add_option("-o,--out", bounds.out, "output file");
    cmd_bounds->add_option("--format", bounds.format, "table | csv")
        ->check(CLI::IsMember({"table", "csv"}));

    SweepArgs sweep;
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "chi_c over an n grid");
    cmd_sweep->add_option("--n", sweep.ns, "grid of vertex counts")->required();
    cmd_sweep->add_option("--seeds", sweep.seeds, "seeds per n");
    cmd_sweep->add_option("-p,--p", sweep.p, "edge probability");
    cmd_sweep->add_option("--mode", sweep.mode, "exact | heuristic")
        ->check(CLI::IsMember({"exact", "heuristic"}));
    cmd_sweep->add_option("--seed", sweep.seed, "base seed");
    cmd_sweep->add_option("--jobs", sweep.jobs, "worker threads");
    cmd_sweep->add_option("-o,--out", sweep.out, "output file");
    cmd_sweep->add_option("--format", sweep.format, "csv | jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    cmd_sweep->add_flag("--gnuplot", sweep.gnuplot, "also write a <out>.gp plot script");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_gen->parsed()) return run_gen(gen);
        if (cmd_solve->parsed()) {
            solve.heuristic = heur_flag->count() > 0;
            return run_solve(solve);
        }
        if (cmd_verify->parsed()) return run_verify(verify);
        if (cmd_certify->parsed()) return run_certify(certify);
        if (cmd_bounds->parsed()) return run_bounds(bounds);
        if (cmd_sweep->parsed()) return run_sweep_cmd(sweep);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitUsage;
}
