#pragma once

// Command-line front end. Exit codes: 0 success, 1 domain error (printed as
// `error: <kind>: <message>`), 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "solfree.hpp"

namespace solfree::cli {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<Ratio> parse_ratio_list(const std::string& text) {
    std::vector<Ratio> out;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ','))
        if (!detail::trim(tok).empty()) out.push_back(Ratio::parse(detail::trim(tok)));
    return out;
}

inline std::string format_alpha(const AlphaResult& a) {
    std::ostringstream os;
    if (a.exact())
        os << "alpha=" << a.lower;
    else
        os << "alpha=[" << a.lower << ',' << a.upper << ']';
    os << " method=" << a.method;
    return os.str();
}

inline int cli_dispatch(int argc, const char* const* argv, std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
    CLI::App app{"Solution-free sets in prime fields with small Cayley-graph independence number"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    int status = 0;

    // classify
    std::string eq_text;
    auto* classify_cmd = app.add_subcommand("classify", "Classify an equation as degenerate or non-degenerate");
    classify_cmd->add_option("equation", eq_text, "e.g. \"x1 + x2 - x3 = 0\" or 1,1,-1")->required();
    classify_cmd->callback([&] {
        const auto c = classify(parse_equation(eq_text));
        if (c.kind == Kind::Degenerate)
            out << "degenerate S=" << format_index_set(*c.witness) << '\n';
        else
            out << "nondegenerate\n";
    });

    // alpha
    std::int64_t p = 0;
    std::string gens_text;
    bool exact = false, bounds = false;
    std::uint64_t budget = kDefaultNodeBudget;
    auto* alpha_cmd = app.add_subcommand("alpha", "Independence number of Cay(F_p, A)");
    alpha_cmd->add_option("--p", p, "prime modulus")->required();
    alpha_cmd->add_option("--gens", gens_text, "generator list, e.g. 1,3")->required();
    auto* exact_flag = alpha_cmd->add_flag("--exact", exact, "exact branch and bound (error if undecided)");
    alpha_cmd->add_flag("--bounds", bounds, "greedy lower bound and ratio/clique upper bound only")->excludes(exact_flag);
    alpha_cmd->add_option("--budget", budget, "branch-and-bound node budget");
    alpha_cmd->callback([&] {
        const CayleyGraph g(PrimeField(p), parse_residue_list(gens_text));
        AlphaOptions o;
        o.node_budget = budget;
        AlphaResult r;
        if (exact)
            r = alpha_exact(g, o);
        else if (bounds)
            r = detail::alpha_bounds_only(g);
        else
            r = alpha_certified(g, o);
        out << format_alpha(r) << '\n';
    });

    // count
    bool distinct = false;
    auto* count_cmd = app.add_subcommand("count", "Count solutions of an equation inside a set");
    count_cmd->add_option("--p", p, "prime modulus")->required();
    count_cmd->add_option("--gens", gens_text, "the set A")->required();
    count_cmd->add_option("--eq", eq_text, "equation")->required();
    count_cmd->add_flag("--distinct", distinct, "count pairwise-distinct solutions only");
    count_cmd->callback([&] {
        const PrimeField field(p);
        const auto eq = parse_equation(eq_text);
        const auto set = parse_residue_list(gens_text);
        const auto n = distinct ? count_solutions_distinct(set, eq, field) : count_solutions_all(set, eq, field);
        out << "count=" << n << '\n';
    });

    // witness
    std::string set_file;
    bool relaxed = false, all_subsets = false;
    std::string eps_text;
    auto* witness_cmd = app.add_subcommand("witness", "Find a solution through the rainbow-path pipeline");
    witness_cmd->add_option("--p", p, "prime modulus")->required();
    witness_cmd->add_option("--set-file", set_file, "file listing the residues of A")->required();
    witness_cmd->add_option("--eq", eq_text, "degenerate equation")->required();
    witness_cmd->add_option("--eps", eps_text, "density parameter for the nominal quota 100^k k^2 eps p");
    witness_cmd->add_flag("--relaxed", relaxed, "cap the extraction quota at |A|/(2k')");
    witness_cmd->add_flag("--all-subsets", all_subsets, "try every zero-sum subset");
    witness_cmd->callback([&] {
        const PrimeField field(p);
        PipelineConfig cfg;
        cfg.relaxed = relaxed;
        cfg.try_all_subsets = all_subsets;
        if (!eps_text.empty()) cfg.eps = Ratio::parse(eps_text);
        const auto set = parse_residue_list(read_file(set_file));
        out << to_text(find_solution_via_rainbow(set, parse_equation(eq_text), field, cfg));
    });

    // construct
    std::string graph_file, out_path;
    std::int64_t t_param = 0;
    auto* construct_cmd = app.add_subcommand("construct", "Build and verify an explicit lower-bound set");
    construct_cmd->require_subcommand(1);
    auto add_common = [&](CLI::App* c, bool needs_eq, bool needs_graph) {
        c->add_option("--p", p, "prime modulus")->required();
        auto* e = c->add_option("--eq", eq_text, "equation");
        if (needs_eq) e->required();
        c->add_option("--eps", eps_text, "density parameter")->required(needs_graph);
        auto* g = c->add_option("--graph-file", graph_file, "edge-list graph file");
        if (needs_graph) g->required();
        c->add_option("--out", out_path, "write the report here");
    };
    auto emit = [&](const ConstructionReport& r) {
        const auto text = to_text(r);
        out << text;
        if (!out_path.empty()) write_atomically(out_path, text);
        if (!r.ok()) status = 1;
    };
    auto load_graph = [&] {
        std::istringstream in(read_file(graph_file));
        return parse_graph(in);
    };
    auto* nondeg = construct_cmd->add_subcommand("nondeg", "Non-degenerate equations");
    add_common(nondeg, true, false);
    nondeg->add_option("--t", t_param, "base t > sum |c_i| (default sum |c_i| + 1)");
    nondeg->callback([&] {
        std::optional<std::int64_t> t;
        if (t_param > 0) t = t_param;
        emit(construct_nondegenerate(parse_equation(eq_text), PrimeField(p), t));
    });
    auto* schur = construct_cmd->add_subcommand("schur", "Schur equation from a triangle-free graph");
    add_common(schur, false, true);
    schur->add_option("--t", t_param, "window parameter (default 100/eps)");
    schur->callback([&] {
        ConstructOptions o;
        if (t_param > 0) o.t = Ratio(t_param, 1);
        emit(construct_schur_lower(PrimeField(p), Ratio::parse(eps_text), load_graph(), o));
    });
    auto* poly = construct_cmd->add_subcommand("poly", "Equations with non-zero coefficient sum from a high-girth graph");
    add_common(poly, true, true);
    poly->callback([&] {
        emit(construct_poly_lower(parse_equation(eq_text), PrimeField(p), Ratio::parse(eps_text), load_graph()));
    });

    // density
    std::string primes_text, grid_text, mode_text = "exact";
    std::uint64_t seed = 1, iterations = 2000;
    bool exclude_zero = false;
    unsigned threads = 1;
    auto* density_cmd = app.add_subcommand("density", "Tabulate D(eq, eps, p) over a grid");
    density_cmd->add_option("--eq", eq_text, "equation")->required();
    density_cmd->add_option("--primes", primes_text, "comma-separated primes")->required();
    density_cmd->add_option("--eps-grid", grid_text, "comma-separated eps values")->required();
    density_cmd->add_option("--mode", mode_text, "exact or heuristic")->check(CLI::IsMember({"exact", "heuristic"}));
    density_cmd->add_option("--out", out_path, "CSV output path")->required();
    density_cmd->add_option("--seed", seed, "random seed for heuristic mode");
    density_cmd->add_option("--iterations", iterations, "local-search moves per point");
    density_cmd->add_option("--threads", threads, "worker threads");
    density_cmd->add_flag("--exclude-zero", exclude_zero, "do not allow 0 in A");
    density_cmd->callback([&] {
        std::vector<std::int64_t> primes;
        for (auto v : parse_residue_list(primes_text)) primes.push_back(v);
        for (auto q : primes)
            if (!is_prime(q)) throw NotPrime(std::to_string(q) + " is not prime");
        DensityOptions o;
        o.seed = seed;
        o.iterations = iterations;
        o.exclude_zero = exclude_zero;
        o.threads = threads;
        const auto curve = density_curve(parse_equation(eq_text), primes, parse_ratio_list(grid_text),
                                         parse_density_mode(mode_text), o);
        write_atomically(out_path, to_csv(curve));
        out << "rows=" << curve.rows.size() << " failed=" << curve.failed
            << " monotone=" << (curve.monotone() ? "true" : "false") << '\n';
        if (curve.failed) status = 1;
    });

    // rainbow
    std::string instance_file;
    std::size_t length = 0;
    bool use_exhaustive = false;
    auto* rainbow_cmd = app.add_subcommand("rainbow", "Search a proper rainbow path in a restricted digraph system");
    rainbow_cmd->add_option("--instance-file", instance_file, "instance file")->required();
    rainbow_cmd->add_option("--length", length, "path length")->required();
    rainbow_cmd->add_flag("--exhaustive", use_exhaustive, "exhaustive search (small instances)");
    rainbow_cmd->callback([&] {
        std::istringstream in(read_file(instance_file));
        const auto sys = parse_instance(in);
        if (length == 0 || length > sys.digraph_count())
            throw InvalidSystem("length must be between 1 and the number of digraphs (" +
                                std::to_string(sys.digraph_count()) + ")");
        const auto path = use_exhaustive ? find_rainbow_exhaustive(sys, length) : find_rainbow_greedy(sys, length);
        if (!path) {
            out << "none\n";
            return;
        }
        const auto check = verify_rainbow(sys, *path);
        out << "path " << to_string(*path) << '\n' << "verified=" << (check.ok() ? "true" : "false") << '\n';
        if (!check.ok()) status = 1;
    });

    // graph generators
    std::size_t n = 0, attempts = 20, girth_target = 5;
    auto* graph_cmd = app.add_subcommand("graph", "Generate a triangle-free or high-girth graph");
    graph_cmd->require_subcommand(1);
    auto* tf = graph_cmd->add_subcommand("triangle-free", "Triangle-free process with restarts");
    auto* hg = graph_cmd->add_subcommand("girth", "Random graph with no short cycles");
    for (auto* c : {tf, hg}) {
        c->add_option("--n", n, "number of vertices")->required();
        c->add_option("--attempts", attempts, "restarts");
        c->add_option("--seed", seed, "random seed");
        c->add_option("--out", out_path, "write the edge list here");
    }
    hg->add_option("--girth", girth_target, "every cycle has length >= this");
    auto emit_graph = [&](const GeneratedGraph& g) {
        const auto text = to_text(g.graph);
        if (!out_path.empty()) write_atomically(out_path, text);
        else out << text;
        out << "# vertices=" << g.graph.size() << " edges=" << g.graph.edges().size() << " alpha=";
        if (g.alpha_exact()) out << g.alpha_lower;
        else out << '[' << g.alpha_lower << ',' << g.alpha_upper << ']';
        out << '\n';
    };
    tf->callback([&] { emit_graph(gen_triangle_free(n, attempts, seed)); });
    hg->callback([&] { emit_graph(gen_high_girth(n, girth_target, attempts, seed)); });

    // run
    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment config file");
    run_cmd->add_option("config", config_path, "key=value config")->required();
    run_cmd->callback([&] {
        const auto res = run_experiment(load_config(config_path));
        out << "rows=" << res.rows << " failed=" << res.failed << " csv=" << res.csv_path.string() << '\n';
        if (res.failed) status = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const BudgetExhausted& e) {
        err << "error: " << e.kind() << ": " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.kind() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: IOError: " << e.what() << '\n';
        return 1;
    }
    return status;
}

}  // namespace solfree::cli
