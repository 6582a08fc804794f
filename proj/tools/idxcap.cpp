#include <CLI11.hpp>
#include <fstream>
#include <map>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "idxcap/bounds.hpp"
#include "idxcap/census.hpp"
#include "idxcap/confusion.hpp"
#include "idxcap/criticality.hpp"
#include "idxcap/invariants.hpp"
#include "idxcap/theta.hpp"

using nlohmann::json;
using namespace idxcap;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitCap = 3;

std::string slurp_arg(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream f(arg.substr(1));
        if (!f) throw ParseError("cannot open " + arg.substr(1));
        std::ostringstream os;
        os << f.rdbuf();
        std::string s = os.str();
        while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
        return s;
    }
    return arg;
}

std::string vertex_set_text(std::uint32_t mask, int n) {
    std::string out;
    for (int v = 0; v < n; ++v)
        if ((mask >> v) & 1u) {
            if (!out.empty()) out += "+";
            out += "R" + std::to_string(v + 1);
        }
    return out;
}

json region_json(const RateRegion& region) {
    json arr = json::array();
    for (const auto& [mask, b] : region.inequalities) {
        json ineq;
        ineq["S"] = json::array();
        for (int v = 0; v < region.n; ++v)
            if ((mask >> v) & 1u) ineq["S"].push_back(v + 1);
        ineq["b"] = to_string(b);
        arr.push_back(ineq);
    }
    return arr;
}

int cmd_analyze(const std::string& problem_arg, int t, int q, bool as_json) {
    Digraph g = parse_problem(slurp_arg(problem_arg));
    ProblemSpec spec(g, std::vector<int>(g.n(), t), q);
    int exit_code = 0;

    Budget budget;
    BetaBracket bracket = beta_bracket(g, &budget);
    if (budget.exhausted()) exit_code = kExitCap;

    std::optional<RateRegion> region;
    try {
        region = region_mais(g);
    } catch (const std::invalid_argument&) {
        exit_code = kExitCap;
    }
    std::optional<CriticalityReport> crit;
    try {
        crit = check_conditions(g);
    } catch (const std::invalid_argument&) {
        exit_code = kExitCap;
    }

    if (as_json) {
        json out;
        out["problem"] = render_problem(g);
        out["lower"] = to_string(bracket.lower);
        out["upper"] = to_string(bracket.upper);
        out["tight"] = bracket.tight();
        out["sources"] = json::array({bracket.lower_src, bracket.upper_src});
        if (bracket.has_theta) out["theta_upper"] = bracket.theta_upper;
        if (region) out["region"] = region_json(*region);
        if (crit) {
            json c;
            c["flags"] = {{"union_of_cycles", crit->flags.union_of_cycles},
                          {"nondegraded", crit->flags.nondegraded},
                          {"union_of_unicycles", crit->flags.union_of_unicycles}};
            c["edges"] = json::array();
            for (const auto& e : crit->edges)
                c["edges"].push_back({{"from", e.from + 1},
                                      {"to", e.to + 1},
                                      {"on_cycle", e.on_cycle},
                                      {"in_unicycle", e.in_unicycle},
                                      {"degraded", e.degraded},
                                      {"verdict", verdict_name(e.verdict)}});
            out["criticality"] = c;
        }
        std::cout << out.dump(2) << "\n";
        return exit_code;
    }

    std::cout << "problem: " << render_problem(g) << "\n";
    std::cout << "beta bracket: [" << to_string(bracket.lower) << ", " << to_string(bracket.upper) << "]"
              << (bracket.tight() ? " (tight)" : "") << "\n";
    std::cout << "sources: lower " << bracket.lower_src << ", upper " << bracket.upper_src << "\n";
    if (bracket.has_theta) std::cout << "theta upper (informational): " << bracket.theta_upper << "\n";
    if (region) {
        std::cout << "MAIS region:\n";
        for (const auto& [mask, b] : region->inequalities)
            std::cout << "  " << vertex_set_text(mask, region->n) << " <= " << to_string(b) << "\n";
    }
    if (crit) {
        std::cout << "flags: union_of_cycles=" << crit->flags.union_of_cycles
                  << " nondegraded=" << crit->flags.nondegraded
                  << " union_of_unicycles=" << crit->flags.union_of_unicycles << "\n";
        std::cout << "edges:\n";
        for (const auto& e : crit->edges)
            std::cout << "  " << e.from + 1 << "->" << e.to + 1 << " on_cycle=" << e.on_cycle
                      << " in_unicycle=" << e.in_unicycle << " degraded=" << e.degraded << " verdict=" << verdict_name(e.verdict)
                      << "\n";
    }
    return exit_code;
}

int cmd_confusion(const std::string& problem_arg, const std::string& tspec, const std::string& export_path,
                  bool as_json) {
    Digraph g = parse_problem(slurp_arg(problem_arg));
    std::vector<int> t;
    if (tspec.empty())
        t.assign(g.n(), 1);
    else {
        std::stringstream ss(tspec);
        std::string item;
        while (std::getline(ss, item, ',')) t.push_back(std::stoi(item));
        if (static_cast<int>(t.size()) != g.n()) throw ParseError("confusion: --t needs one length per vertex");
    }
    ProblemSpec spec(g, t);
    UndirectedGraph gamma = confusion_graph(spec);
    if (!export_path.empty()) {
        std::ofstream f(export_path, std::ios::trunc);
        f << edge_list(gamma);
    }
    BoundedInt x = chi(gamma);
    BoundedInt w = omega(gamma);
    BoundedInt a = alpha(gamma);
    if (as_json) {
        json out;
        out["problem"] = render_problem(g);
        out["vertices"] = gamma.n();
        out["edges"] = gamma.edge_count();
        out["chi"] = {{"lower", x.lower}, {"upper", x.upper}};
        out["omega"] = {{"lower", w.lower}, {"upper", w.upper}};
        out["alpha"] = {{"lower", a.lower}, {"upper", a.upper}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "confusion graph: " << gamma.n() << " vertices, " << gamma.edge_count() << " edges\n";
        std::cout << "chi: [" << x.lower << ", " << x.upper << "]  omega: [" << w.lower << ", " << w.upper
                  << "]  alpha: [" << a.lower << ", " << a.upper << "]\n";
    }
    return 0;
}

int cmd_theta(const std::string& path, double tol, bool as_json) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (path != "-") {
        file.open(path);
        if (!file) throw ParseError("cannot open " + path);
        in = &file;
    }
    // Vertex labels are arbitrary nonnegative integers; compact them so the
    // graph has exactly the vertices that appear (isolated vertices cannot be
    // expressed in an edge list).
    std::vector<std::pair<int, int>> edges;
    std::map<int, int> label;
    int a, b;
    while (*in >> a >> b) {
        if (a < 0 || b < 0 || a == b) throw ParseError("theta: bad edge");
        label.emplace(a, 0);
        label.emplace(b, 0);
        edges.emplace_back(a, b);
    }
    if (edges.empty()) throw ParseError("theta: empty edge list");
    int next = 0;
    for (auto& [v, idx] : label) idx = next++;
    UndirectedGraph u(next);
    for (auto [x, y] : edges)
        if (!u.has_edge(label[x], label[y])) u.add_edge(label[x], label[y]);
    ThetaResult r = lovasz_theta(u, tol);
    if (as_json) {
        json out{{"value", r.value}, {"tol", r.tol}, {"iterations", r.iterations}, {"converged", r.converged}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "theta = " << r.value << " (gap " << r.tol << ", " << r.iterations << " iterations"
                  << (r.converged ? "" : ", NOT converged") << ")\n";
    }
    return r.converged ? 0 : kExitCap;
}

int cmd_product(const std::string& ga, const std::string& fa, bool as_json) {
    Digraph g = parse_problem(slurp_arg(ga));
    Digraph f = parse_problem(slurp_arg(fa));
    Digraph p = lex_product(g, f);
    Budget budget;
    BetaBracket bg = beta_bracket(g, &budget);
    BetaBracket bf = beta_bracket(f, &budget);
    BetaBracket bp = beta_bracket(p, &budget);
    Rational lo = bg.lower * bf.lower, hi = bg.upper * bf.upper;
    if (lo > bp.lower) {
        bp.lower = lo;
        bp.lower_src = "LEX";
    }
    if (hi < bp.upper) {
        bp.upper = hi;
        bp.upper_src = "LEX";
    }
    if (as_json) {
        json out;
        out["problem"] = render_problem(p);
        out["lower"] = to_string(bp.lower);
        out["upper"] = to_string(bp.upper);
        out["tight"] = bp.tight();
        out["sources"] = json::array({bp.lower_src, bp.upper_src});
        out["factors"] = {{"g", {{"lower", to_string(bg.lower)}, {"upper", to_string(bg.upper)}}},
                          {"f", {{"lower", to_string(bf.lower)}, {"upper", to_string(bf.upper)}}}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "product problem: " << render_problem(p) << "\n";
        std::cout << "factor brackets: g [" << to_string(bg.lower) << ", " << to_string(bg.upper) << "], f ["
                  << to_string(bf.lower) << ", " << to_string(bf.upper) << "]\n";
        std::cout << "beta bracket: [" << to_string(bp.lower) << ", " << to_string(bp.upper) << "]"
                  << (bp.tight() ? " (tight)" : "") << "\n";
    }
    return 0;
}

int cmd_census(int n, int shards, int threads, const std::string& checkpoint, bool resume,
               const std::string& jsonl, std::uint64_t budget, bool as_json) {
    CensusOptions opts;
    opts.shards = shards;
    opts.threads = threads;
    opts.checkpoint_path = checkpoint;
    opts.resume = resume;
    opts.jsonl_path = jsonl;
    if (budget) opts.instance_budget = budget;
    CensusTally t = run_census(n, opts);
    if (as_json) {
        json out{{"n", n},       {"total", t.total},   {"p1", t.p1},
                 {"p2", t.p2},   {"p3cert", t.p3cert}, {"p4", t.p4},
                 {"remaining", t.remaining}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << tally_csv(t);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"index coding capacity analysis"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "JSON output");

    std::string problem, tspec, export_path, theta_input, prodg, prodf, checkpoint, jsonl;
    int t = 1, q = 2, n = 3, shards = 1, threads = 1;
    std::uint64_t budget = 0;
    double tol = 1e-6;
    bool resume = false;

    auto* analyze = app.add_subcommand("analyze", "bounds, region, and criticality for a problem");
    analyze->add_option("problem", problem, "problem text or @file")->required();
    analyze->add_option("--t", t, "uniform message length");
    analyze->add_option("--q", q, "alphabet size");

    auto* confusion = app.add_subcommand("confusion", "confusion graph construction");
    confusion->add_option("problem", problem, "problem text or @file")->required();
    confusion->add_option("--t", tspec, "comma-separated per-vertex lengths");
    confusion->add_option("--export", export_path, "write edge list to file");

    auto* theta = app.add_subcommand("theta", "Lovasz theta of an edge-list graph");
    theta->add_option("input", theta_input, "edge-list file, or - for stdin")->required();
    theta->add_option("--tol", tol, "target tolerance");

    auto* product = app.add_subcommand("product", "lexicographic product composition");
    product->add_option("g", prodg, "outer problem")->required();
    product->add_option("f", prodf, "inner problem")->required();

    auto* census = app.add_subcommand("census", "classify all nonisomorphic digraphs");
    census->add_option("--n", n, "vertex count")->required();
    census->add_option("--shards", shards, "work shards");
    census->add_option("--threads", threads, "worker threads");
    census->add_option("--checkpoint", checkpoint, "checkpoint file");
    census->add_flag("--resume", resume, "resume from checkpoint");
    census->add_option("--jsonl", jsonl, "per-instance JSONL output file");
    census->add_option("--budget", budget, "per-instance solver budget");

    for (auto* sc : {analyze, confusion, theta, product, census}) sc->add_flag("--json", as_json, "JSON output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return cmd_analyze(problem, t, q, as_json);
        if (*confusion) return cmd_confusion(problem, tspec, export_path, as_json);
        if (*theta) return cmd_theta(theta_input, tol, as_json);
        if (*product) return cmd_product(prodg, prodf, as_json);
        if (*census) return cmd_census(n, shards, threads, checkpoint, resume, jsonl, budget, as_json);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
