// rwcut: command-line front end for the random-walk MaxCut library.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rwcut/error.hpp"
#include "rwcut/graph_io.hpp"
#include "rwcut/harness.hpp"
#include "rwcut/local_partition.hpp"
#include "rwcut/solver.hpp"
#include "rwcut/spectral.hpp"
#include "rwcut/tradeoff.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace rwcut;

enum class LogLevel { Quiet, Info, Debug };

LogLevel log_level() {
    const char* env = std::getenv("RWCUT_LOG");
    const std::string v = env ? env : "info";
    if (v == "quiet") {
        return LogLevel::Quiet;
    }
    if (v == "debug") {
        return LogLevel::Debug;
    }
    return LogLevel::Info;
}

void log_info(const std::string& msg) {
    if (log_level() != LogLevel::Quiet) {
        std::cerr << "rwcut: " << msg << '\n';
    }
}

void log_debug(const std::string& msg) {
    if (log_level() == LogLevel::Debug) {
        std::cerr << "rwcut[debug]: " << msg << '\n';
    }
}

struct Config {
    std::string input;
    std::string output;
    std::string partition;
    std::string algo = "simple";
    double mu = 1.0;
    double b = 2.0;
    double mu1 = 0.0; // 0: take the optimum of the tradeoff bound at b
    double eps1 = 0.0; // 0: eps_bar(mu1)
    double kappa = 8.0;
    double delta = 0.05;
    double gamma = 0.05;
    double tau = 0.2;
    double zeta = 0.1;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int reps = 1;
    unsigned threads = 1;
    std::uint64_t find_budget = SolverOptions{}.find_budget;
    std::uint64_t cob_cap = SolverOptions{}.cob_step_cap;
    // gen
    std::size_t n = 500;
    double eps = 0.1;
    double deg = 8.0;
    // tradeoff
    std::string b_grid = "1.6,1.8,2.0,2.2,2.4,2.6,2.8,3.0";
    // cutbound
    VertexId start = 0;
    std::string ls_csv;
};

std::uint64_t resolve_seed(Config& cfg) {
    if (!cfg.seed_given) {
        cfg.seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
        log_info("seed " + std::to_string(cfg.seed) + " (pass --seed to replay)");
    }
    return cfg.seed;
}

SolverOptions solver_options(const Config& cfg) {
    SolverOptions opts;
    opts.delta = cfg.delta;
    opts.gamma = cfg.gamma;
    opts.kappa = cfg.kappa;
    opts.find_budget = cfg.find_budget;
    opts.cob_step_cap = cfg.cob_cap;
    opts.threads = cfg.threads;
    return opts;
}

void check_common(const Config& cfg) {
    if (cfg.threads < 1) {
        throw InvalidParams("--threads must be at least 1");
    }
    if (cfg.reps < 1) {
        throw InvalidParams("--reps must be at least 1");
    }
    if (!(cfg.kappa > 0.0) || !(cfg.delta > 0.0) || !(cfg.gamma > 0.0 && cfg.gamma < 1.0)) {
        throw InvalidParams("--kappa and --delta must be positive, --gamma in (0, 1)");
    }
}

json baseline_report(const std::string& algo, std::uint64_t seed, const WeightedGraph& g, const Partition& sides) {
    json j;
    j["algorithm"] = algo;
    j["seed"] = seed;
    j["vertices"] = g.vertex_count();
    j["cut_value"] = cut_value(g, sides);
    j["walks"] = 0;
    j["steps"] = 0;
    return j;
}

int cmd_solve(Config& cfg) {
    check_common(cfg);
    const WeightedGraph g = load_graph(cfg.input);
    const std::uint64_t seed = resolve_seed(cfg);
    const SolverOptions opts = solver_options(cfg);

    double mu1 = cfg.mu1;
    if (cfg.algo == "balance" && mu1 <= 0.0) {
        mu1 = best_tradeoff(cfg.b).mu1;
        log_info("mu1 = " + std::to_string(mu1) + " from the tradeoff optimum at b = " + std::to_string(cfg.b));
    }
    const double eps1 = cfg.eps1 > 0.0 ? cfg.eps1 : kDefaultEps1;
    if (cfg.algo == "simple" && !(cfg.mu > 0.0)) {
        throw InvalidParams("--mu must be positive");
    }

    const auto started = std::chrono::steady_clock::now();
    json best;
    Partition best_sides;
    double best_value = -1.0;
    std::vector<double> values;
    for (int rep = 0; rep < cfg.reps; ++rep) {
        const std::uint64_t rs = cfg.reps == 1 ? seed : derive_seed(seed, static_cast<std::uint64_t>(rep));
        json j;
        Partition sides;
        if (cfg.algo == "simple" || cfg.algo == "balance") {
            const SolveReport r = cfg.algo == "simple" ? simple_solve(g, cfg.mu, opts, rs)
                                                       : balance_solve(g, cfg.b, mu1, eps1, opts, rs);
            j = json::parse(r.to_json());
            sides = r.sides;
        } else if (cfg.algo == "trevisan") {
            sides = trevisan_baseline(g, 0, rs);
            j = baseline_report(cfg.algo, rs, g, sides);
        } else if (cfg.algo == "greedy") {
            sides = greedy_cut(g);
            j = baseline_report(cfg.algo, rs, g, sides);
        } else if (cfg.algo == "random") {
            Rng rng(rs);
            sides = random_cut(g, rng);
            j = baseline_report(cfg.algo, rs, g, sides);
        } else if (cfg.algo == "exact") {
            const ExactCut ex = brute_force_maxcut(g, cfg.threads);
            sides = ex.sides;
            j = baseline_report(cfg.algo, rs, g, sides);
        } else {
            throw InvalidParams("unknown algorithm '" + cfg.algo + "'");
        }
        const double v = j["cut_value"].get<double>();
        values.push_back(v);
        if (v > best_value) {
            best_value = v;
            best = std::move(j);
            best_sides = std::move(sides);
        }
    }
    if (cfg.reps > 1) {
        best["rep_values"] = values;
    }
    if (!cfg.output.empty()) {
        write_partition(cfg.output, best_sides);
    }
    std::cout << best.dump(2) << '\n';
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::ostringstream msg;
    msg << "cut_value " << std::setprecision(6) << best_value << ", wall time " << secs << " s";
    log_info(msg.str());
    return 0;
}

int cmd_gen(Config& cfg) {
    const std::uint64_t seed = resolve_seed(cfg);
    const PlantedInstance inst = gen_planted(cfg.n, cfg.eps, cfg.deg, seed);
    std::string stem = cfg.output;
    if (stem.empty()) {
        stem = "planted_n" + std::to_string(cfg.n) + "_s" + std::to_string(seed);
    }
    write_instance(stem, inst);
    json j;
    j["graph"] = stem + ".el";
    j["metadata"] = stem + ".json";
    j["vertices"] = inst.graph.vertex_count();
    j["edges"] = inst.graph.edge_count();
    j["planted_value"] = inst.planted_value;
    j["seed"] = seed;
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_eval(Config& cfg) {
    const WeightedGraph g = load_graph(cfg.input);
    const Partition sides = read_partition(cfg.partition, g.vertex_count());
    json j;
    j["vertices"] = g.vertex_count();
    j["edge_weight"] = g.edge_weight();
    j["cut_weight"] = cut_weight(g, sides);
    j["cut_value"] = cut_value(g, sides);
    std::cout << j.dump(2) << '\n';
    return 0;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw InvalidParams("bad --b grid entry '" + item + "'");
        }
        if (used != item.size() || !(v > 1.5)) {
            throw InvalidParams("--b grid entries must be numbers above 1.5, got '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw InvalidParams("--b grid is empty");
    }
    return out;
}

int cmd_tradeoff(Config& cfg) {
    const std::vector<double> grid = parse_grid(cfg.b_grid);
    std::ostringstream csv;
    csv << "b,mu1,eps1,tau,mu2,balance_ratio,simple_ratio,ratio\n";
    csv << std::setprecision(6) << std::fixed;
    for (double b : grid) {
        const TradeoffPoint p = best_tradeoff(b);
        csv << std::setprecision(4) << p.b << ',' << std::setprecision(6) << p.mu1 << ',' << p.eps1 << ','
            << p.tau << ',' << p.mu2 << ',' << p.balance_ratio << ',' << p.simple_ratio << ',' << p.ratio << '\n';
        log_debug("b = " + std::to_string(b) + " done");
    }
    std::cout << csv.str();
    return 0;
}

int cmd_cutbound(Config& cfg) {
    const WeightedGraph g = load_graph(cfg.input);
    const std::uint64_t seed = resolve_seed(cfg);
    if (cfg.start >= g.vertex_count()) {
        throw InvalidParams("--start out of range");
    }
    CutOrBoundOptions opts;
    opts.threads = cfg.threads;
    opts.step_cap = cfg.cob_cap;
    opts.record_curves = !cfg.ls_csv.empty();
    CutOrBoundResult r;
    try {
        r = cut_or_bound(g, cfg.start, cfg.tau, cfg.zeta, seed, opts);
    } catch (const InvalidInput& e) {
        throw InvalidParams(e.what());
    }
    json j;
    j["result"] = r.is_cut ? "cut" : "bound";
    j["seed"] = seed;
    j["start"] = cfg.start;
    j["alpha"] = r.stats.alpha;
    j["phi"] = r.stats.phi;
    j["length"] = r.stats.length;
    j["walks"] = r.stats.walks;
    j["walks_full"] = r.stats.walks_full;
    j["truncated"] = r.stats.truncated;
    j["prefix_cap"] = r.stats.prefix_cap;
    if (r.is_cut) {
        j["conductance"] = r.conductance;
        j["cut_length"] = r.cut_length;
        j["set"] = r.set;
    } else {
        j["bound"] = r.bound;
    }
    std::cout << j.dump(2) << '\n';
    if (!cfg.ls_csv.empty()) {
        std::ofstream out(cfg.ls_csv);
        if (!out) {
            throw ResourceError("cannot write " + cfg.ls_csv);
        }
        out << "length,x,y\n" << std::setprecision(17);
        for (std::size_t l = 0; l < r.stats.curves.size(); ++l) {
            for (const auto& [x, y] : r.stats.curves[l].breakpoints()) {
                out << l << ',' << x << ',' << y << '\n';
            }
        }
    }
    return 0;
}

void add_solver_flags(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--mu", cfg.mu, "runtime exponent of the threshold solver")->capture_default_str();
    cmd->add_option("--b", cfg.b, "runtime exponent target of the decomposition solver (> 1.5)")
        ->capture_default_str();
    cmd->add_option("--mu1", cfg.mu1, "decomposition mu1 (0 = tradeoff optimum at --b)")->capture_default_str();
    cmd->add_option("--eps1", cfg.eps1, "decomposition eps1 (0 = 1 - (3/4)^{mu1/(1+mu1)})")
        ->capture_default_str();
    cmd->add_option("--kappa", cfg.kappa, "walk-count constant")->capture_default_str();
    cmd->add_option("--delta", cfg.delta, "spectral slack in the walk length")->capture_default_str();
    cmd->add_option("--gamma", cfg.gamma, "geometric threshold step")->capture_default_str();
    cmd->add_option("--budget", cfg.find_budget, "walk steps per threshold search")->capture_default_str();
    cmd->add_option("--cob-cap", cfg.cob_cap, "walk steps per local partition call")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    Config cfg;
    CLI::App app{"Random-walk MaxCut toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", "rwcut 1.0");
    auto seed_opt = app.add_option("--seed", cfg.seed, "random seed (printed when auto-generated)");
    app.add_option("--threads", cfg.threads, "worker threads; results do not depend on it")
        ->capture_default_str();

    auto* solve = app.add_subcommand("solve", "solve MaxCut on an edge-list graph");
    solve->add_option("--in", cfg.input, "input edge list")->required();
    solve->add_option("--out", cfg.output, "write the partition here");
    solve->add_option("--algo", cfg.algo, "algorithm")
        ->check(CLI::IsMember({"simple", "balance", "trevisan", "greedy", "random", "exact"}))
        ->capture_default_str();
    solve->add_option("--reps", cfg.reps, "repetitions with derived seeds; the best is kept")
        ->capture_default_str();
    add_solver_flags(solve, cfg);

    auto* gen = app.add_subcommand("gen", "generate a planted instance");
    gen->add_option("--n", cfg.n, "vertex count (even)")->capture_default_str();
    gen->add_option("--eps", cfg.eps, "fraction of non-crossing edges")->capture_default_str();
    gen->add_option("--deg", cfg.deg, "average degree")->capture_default_str();
    gen->add_option("--out", cfg.output, "output stem (<stem>.el, <stem>.json)");

    auto* eval = app.add_subcommand("eval", "evaluate a partition");
    eval->add_option("--in", cfg.input, "input edge list")->required();
    eval->add_option("--part", cfg.partition, "partition file")->required();

    auto* trade = app.add_subcommand("tradeoff", "print the runtime / ratio tradeoff as CSV");
    trade->add_option("--b", cfg.b_grid, "comma-separated exponents, each > 1.5")->capture_default_str();

    auto* cob = app.add_subcommand("cutbound", "run one local partition call");
    cob->add_option("--in", cfg.input, "input edge list")->required();
    cob->add_option("--start", cfg.start, "start vertex")->capture_default_str();
    cob->add_option("--tau", cfg.tau, "alpha = m^{-tau}")->capture_default_str();
    cob->add_option("--zeta", cfg.zeta, "walk length ln(m) / zeta; zeta * tau < 1/8")->capture_default_str();
    cob->add_option("--cob-cap", cfg.cob_cap, "walk step cap")->capture_default_str();
    cob->add_option("--ls-csv", cfg.ls_csv, "dump per-length empirical curves (length,x,y)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    cfg.seed_given = seed_opt->count() > 0;

    try {
        if (*solve) {
            return cmd_solve(cfg);
        }
        if (*gen) {
            return cmd_gen(cfg);
        }
        if (*eval) {
            return cmd_eval(cfg);
        }
        if (*trade) {
            return cmd_tradeoff(cfg);
        }
        if (*cob) {
            return cmd_cutbound(cfg);
        }
    } catch (const ParseError& e) {
        std::cerr << "rwcut: " << e.what() << '\n';
        return 1;
    } catch (const InvalidParams& e) {
        std::cerr << "rwcut: invalid parameters: " << e.what() << '\n';
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "rwcut: invalid input: " << e.what() << '\n';
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "rwcut: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "rwcut: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
