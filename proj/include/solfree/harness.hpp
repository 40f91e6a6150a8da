#pragma once

// Reproducible experiment runs from a flat key=value config file.
//
//   task = density            # density | nondeg | schur | poly
//   equation = 1,1,-1
//   primes = 5,7,11           # or: prime_range = 1000,5000 and prime_count = 3
//   eps = 0.2,0.5,1.0
//   mode = exact              # density only: exact | heuristic
//   seed = 7
//   out = results/density.csv
//
// Lines starting with '#' are comments. Relative `out` and `graph` paths are
// resolved against the config file's directory.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "constructs.hpp"
#include "density.hpp"
#include "equation.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "sparse_graph.hpp"
#include "version.hpp"

namespace solfree {

struct ExperimentConfig {
    std::string task = "density";
    std::string equation;
    std::vector<std::int64_t> primes;
    std::vector<Ratio> eps;
    std::string mode = "exact";
    std::uint64_t seed = 1;
    std::filesystem::path out;
    bool relaxed = true;
    bool exclude_zero = false;
    std::optional<std::int64_t> t;
    std::filesystem::path graph;
    std::uint64_t iterations = 2000;
    unsigned threads = 1;
    std::vector<std::pair<std::string, std::string>> raw;  // as read, for provenance
};

namespace detail {

inline std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.emplace_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.emplace_back(trim(cur));
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

inline std::int64_t config_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const auto x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
    }
}

inline bool config_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

}  // namespace detail

// Parses and validates a config. Every prime is checked here, before any work.
inline ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {}) {
    ExperimentConfig cfg;
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto t = detail::trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key(detail::trim(t.substr(0, eq))), value(detail::trim(t.substr(eq + 1)));
        if (kv.count(key)) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        kv[key] = value;
        cfg.raw.emplace_back(key, value);
    }

    std::optional<std::pair<std::int64_t, std::int64_t>> range;
    std::optional<std::int64_t> count;
    for (const auto& [key, value] : kv) {
        if (key == "task") {
            cfg.task = value;
        } else if (key == "equation") {
            cfg.equation = value;
        } else if (key == "primes") {
            for (const auto& s : detail::split_list(value)) cfg.primes.push_back(detail::config_int(key, s));
        } else if (key == "prime_range") {
            const auto parts = detail::split_list(value);
            if (parts.size() != 2) throw ConfigError("prime_range expects 'lo,hi'");
            range = {detail::config_int(key, parts[0]), detail::config_int(key, parts[1])};
        } else if (key == "prime_count") {
            count = detail::config_int(key, value);
        } else if (key == "eps") {
            for (const auto& s : detail::split_list(value)) {
                try {
                    cfg.eps.push_back(Ratio::parse(s));
                } catch (const SyntaxError& e) {
                    throw ConfigError("key 'eps': " + std::string(e.what()));
                }
            }
        } else if (key == "mode") {
            cfg.mode = value;
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(detail::config_int(key, value));
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "relaxed") {
            cfg.relaxed = detail::config_bool(key, value);
        } else if (key == "exclude_zero") {
            cfg.exclude_zero = detail::config_bool(key, value);
        } else if (key == "t") {
            cfg.t = detail::config_int(key, value);
        } else if (key == "graph") {
            cfg.graph = value;
        } else if (key == "iterations") {
            cfg.iterations = static_cast<std::uint64_t>(detail::config_int(key, value));
        } else if (key == "threads") {
            cfg.threads = static_cast<unsigned>(std::max<std::int64_t>(1, detail::config_int(key, value)));
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }

    if (range) {
        if (!cfg.primes.empty()) throw ConfigError("give either primes or prime_range, not both");
        const auto [lo, hi] = *range;
        const std::int64_t want = count.value_or(INT64_MAX);
        for (std::int64_t p = next_prime(std::max<std::int64_t>(lo, 2) - 1);
             p <= hi && static_cast<std::int64_t>(cfg.primes.size()) < want; p = next_prime(p))
            cfg.primes.push_back(p);
    } else if (count) {
        throw ConfigError("prime_count needs prime_range");
    }

    static const std::vector<std::string> tasks{"density", "nondeg", "schur", "poly"};
    if (std::find(tasks.begin(), tasks.end(), cfg.task) == tasks.end())
        throw ConfigError("unknown task '" + cfg.task + "'");
    if (cfg.task != "schur" && cfg.equation.empty()) throw ConfigError("missing key 'equation'");
    if (!cfg.equation.empty()) {
        try {
            parse_equation(cfg.equation);
        } catch (const Error& e) {
            throw ConfigError("key 'equation': " + std::string(e.what()));
        }
    }
    if (cfg.primes.empty()) throw ConfigError("no primes given");
    for (auto p : cfg.primes)
        if (!is_prime(p)) throw ConfigError("p = " + std::to_string(p) + " is not prime");
    if (cfg.eps.empty() && cfg.task != "nondeg") throw ConfigError("missing key 'eps'");
    if (cfg.mode != "exact" && cfg.mode != "heuristic") throw ConfigError("mode must be exact or heuristic");
    if ((cfg.task == "schur" || cfg.task == "poly") && cfg.graph.empty()) throw ConfigError("missing key 'graph'");
    if (cfg.out.empty()) throw ConfigError("missing key 'out'");
    if (!base_dir.empty()) {
        if (cfg.out.is_relative()) cfg.out = base_dir / cfg.out;
        if (!cfg.graph.empty() && cfg.graph.is_relative()) cfg.graph = base_dir / cfg.graph;
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    return parse_config(in, path.parent_path());
}

struct ExperimentResult {
    std::string csv;
    std::size_t rows = 0;
    std::size_t failed = 0;
    bool monotone = true;
    double wall_seconds = 0.0;
    std::filesystem::path csv_path, provenance_path;
};

// Writes via a temporary sibling and rename, so readers never see a partial file.
inline void write_atomically(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw ConfigError("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

namespace detail {

inline std::string construction_failed_row(const std::string& task, const std::string& eq, std::int64_t p,
                                           const Error& e) {
    std::ostringstream os;
    os << task << ",\"" << eq << "\"," << p << ",,,," << e.kind() << ",false,false";
    return os.str();
}

inline SparseGraph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open graph file '" + path.string() + "'");
    return parse_graph(in);
}

}  // namespace detail

// Runs the configured task and writes `out` plus `out.provenance`. The CSV is
// a pure function of the config; timings go only into the sidecar.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentResult res;
    std::ostringstream csv;

    if (cfg.task == "density") {
        const auto eq = parse_equation(cfg.equation);
        DensityOptions o;
        o.seed = cfg.seed;
        o.exclude_zero = cfg.exclude_zero;
        o.iterations = cfg.iterations;
        o.threads = cfg.threads;
        const auto curve = density_curve(eq, cfg.primes, cfg.eps, parse_density_mode(cfg.mode), o);
        csv << to_csv(curve);
        res.rows = curve.rows.size();
        res.failed = curve.failed;
        res.monotone = curve.monotone();
    } else {
        csv << csv_header_construction() << '\n';
        std::optional<SparseGraph> graph;
        if (!cfg.graph.empty()) graph = detail::load_graph(cfg.graph);
        const std::string eq_text = cfg.task == "schur" ? "1,1,-1" : to_string(parse_equation(cfg.equation));
        for (auto p : cfg.primes) {
            ++res.rows;
            try {
                const PrimeField field(p);
                ConstructOptions o;
                o.verify.seed = cfg.seed;
                ConstructionReport rep;
                if (cfg.task == "nondeg")
                    rep = construct_nondegenerate(parse_equation(cfg.equation), field, cfg.t, o);
                else if (cfg.task == "schur") {
                    if (cfg.t) o.t = Ratio(*cfg.t, 1);
                    rep = construct_schur_lower(field, cfg.eps.front(), *graph, o);
                } else
                    rep = construct_poly_lower(parse_equation(cfg.equation), field, cfg.eps.front(), *graph, o);
                csv << to_csv_row(rep) << '\n';
                if (!rep.ok()) ++res.failed;
            } catch (const Error& e) {
                csv << detail::construction_failed_row(cfg.task, eq_text, p, e) << '\n';
                ++res.failed;
            }
        }
    }
    res.csv = csv.str();
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    res.csv_path = cfg.out;
    res.provenance_path = cfg.out;
    res.provenance_path += ".provenance";
    write_atomically(res.csv_path, res.csv);

    std::ostringstream prov;
    prov << "version=" << kVersion << '\n';
    prov << "seed=" << cfg.seed << '\n';
    prov << "task=" << cfg.task << '\n';
    for (const auto& [k, v] : cfg.raw) prov << "param." << k << '=' << v << '\n';
    prov << "relaxed_constants=" << (cfg.relaxed ? "true" : "false") << '\n';
    prov << "rows=" << res.rows << '\n';
    prov << "failed_rows=" << res.failed << '\n';
    if (cfg.task == "density") prov << "monotone_in_eps=" << (res.monotone ? "true" : "false") << '\n';
    prov << "wall_seconds=" << res.wall_seconds << '\n';
    write_atomically(res.provenance_path, prov.str());
    return res;
}

}  // namespace solfree
