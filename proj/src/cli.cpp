#include "qmatch/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "qmatch/bipartite.hpp"
#include "qmatch/errors.hpp"
#include "qmatch/feasibility.hpp"
#include "qmatch/io.hpp"
#include "qmatch/oracle.hpp"
#include "qmatch/quasi_matching.hpp"
#include "qmatch/routing.hpp"

namespace qmatch::cli {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_matching(std::ostream& out, const BipartiteGraph& g, const QuasiMatching& f) {
    std::vector<std::pair<std::size_t, std::size_t>> ms;
    for (EdgeId e : f.edges()) ms.emplace_back(g.edge(e).a.index + 1, g.edge(e).b.index + 1);
    std::sort(ms.begin(), ms.end());
    for (auto [i, j] : ms) out << "m " << i << ' ' << j << '\n';
}

void print_dist(std::ostream& out, const DegreeDistribution& d) {
    out << "dist";
    for (int v : d.values()) out << ' ' << v;
    out << '\n';
}

int cmd_solve(const std::string& file, bool prune, bool stats, std::ostream& out) {
    const io::BipartiteInstance inst = io::parse_bipartite(slurp(file));
    const SolverState st = solve(inst.graph, inst.need, SolverOptions{prune});
    print_matching(out, st.graph(), st.matching());
    print_dist(out, st.distribution());
    if (stats)
        out << "augmentations " << st.stats().augmentations << "\nedges-scanned " << st.stats().edges_scanned
            << '\n';
    return ok;
}

int cmd_verify(const std::string& file, std::ostream& out) {
    const io::BipartiteInstance inst = io::parse_bipartite(slurp(file));
    const QuasiMatching f = inst.matching.value_or(QuasiMatching(inst.graph));
    const MinimalityVerdict v = verify_minimum(inst.graph, inst.need, f);
    print_dist(out, degree_distribution(inst.graph, f));
    if (v.violation) {
        out << "violating path: " << v.violation->to_string() << '\n';
        out << "decline " << decline(f, *v.violation) << '\n';
        return negative;
    }
    if (v.surplus) {
        const Edge& e = inst.graph.edge(v.surplus->edge);
        out << "surplus: b" << v.surplus->b.index + 1 << " covered " << f.degree(v.surplus->b) << " > need "
            << inst.need[v.surplus->b] << " (drop m " << e.a.index + 1 << ' ' << e.b.index + 1 << ")\n";
        return negative;
    }
    out << "minimal\n";
    return ok;
}

int cmd_feasible(const std::string& file, std::ostream& out) {
    const io::BipartiteInstance inst = io::parse_bipartite(slurp(file));
    const FeasibilityVerdict v = feasible(inst.graph, inst.capacity, inst.need);
    out << "flow " << v.flow_value << " need " << v.total_need << '\n';
    if (v.feasible()) {
        out << "feasible\n";
        print_matching(out, inst.graph, *v.witness);
        return ok;
    }
    out << "infeasible\nviolating Y:";
    for (BVertex b : *v.violating) out << " b" << b.index + 1;
    out << '\n';
    return negative;
}

void apply(SolverState& st, const io::Event& ev) {
    auto bvertex = [&](std::size_t j) {
        const BVertex b{j};
        if (!st.graph().contains(b)) throw InputError("unknown B-vertex " + std::to_string(j + 1));
        return b;
    };
    auto avertex = [&](std::size_t i) {
        const AVertex a{i};
        if (!st.graph().contains(a)) throw InputError("unknown A-vertex " + std::to_string(i + 1));
        return a;
    };
    switch (ev.kind) {
        case io::EventKind::inc: st.increment_need(bvertex(ev.target)); break;
        case io::EventKind::dec: st.decrement_need(bvertex(ev.target)); break;
        case io::EventKind::rmb: st.remove_b_vertex(bvertex(ev.target)); break;
        case io::EventKind::rma: st.remove_a_vertex(avertex(ev.target)); break;
        case io::EventKind::addb: {
            std::vector<AVertex> nb;
            for (std::size_t i : ev.neighbours) nb.push_back(avertex(i));
            st.add_b_vertex(nb, ev.need);
            break;
        }
        case io::EventKind::adda: {
            std::vector<BVertex> nb;
            for (std::size_t j : ev.neighbours) nb.push_back(bvertex(j));
            st.add_a_vertex(nb);
            break;
        }
    }
}

int cmd_online(const std::string& file, const std::string& events_file, bool prune, std::ostream& out,
               std::ostream& err) {
    const io::BipartiteInstance inst = io::parse_bipartite(slurp(file));
    std::vector<io::Event> events;
    try {
        events = io::parse_events(slurp(events_file));
    } catch (const InputError& e) {
        err << events_file << ": " << e.what() << '\n';
        return input_error;
    }
    SolverState st = solve(inst.graph, inst.need, SolverOptions{prune});
    for (const io::Event& ev : events) {
        try {
            apply(st, ev);
        } catch (const InfeasibleError& e) {
            err << events_file << ": line " << ev.line << ": infeasible: " << e.what() << '\n';
            return negative;
        } catch (const InputError& e) {
            err << events_file << ": line " << ev.line << ": " << e.what() << '\n';
            return input_error;
        }
        print_dist(out, st.distribution());
    }
    return ok;
}

int cmd_route(const std::string& file, int need, bool prune, std::ostream& out, std::ostream& err) {
    const RootedGraph r = io::parse_rooted(slurp(file));
    if (need < 0) throw InputError("--need must be non-negative");
    const std::vector<int> needs(r.vertex_count(), need);
    const RoutingPlan plan = solve_routing(r, needs, SolverOptions{prune});
    for (auto [u, v] : plan.decomposition().same_level_edges)
        err << "dropped same-level edge " << u + 1 << ' ' << v + 1 << '\n';
    for (auto [child, parent] : plan.routes()) out << "parent " << child + 1 << ' ' << parent + 1 << '\n';
    const auto dists = plan.distributions();
    for (std::size_t i = 0; i < dists.size(); ++i) {
        out << "level " << i << " dist";
        for (int v : dists[i].values()) out << ' ' << v;
        out << '\n';
    }
    return ok;
}

// Brute-force cross-checks of one instance; returns false if any fails.
bool oracle_checks(const std::string& file, std::ostream& out) {
    const io::BipartiteInstance inst = io::parse_bipartite(slurp(file));
    const BipartiteGraph& g = inst.graph;
    bool all = true;
    auto report = [&](const char* name, int verdict, const std::string& detail = {}) {
        static constexpr const char* words[] = {"skip", "pass", "FAIL"};
        out << file << ": " << name << ' ' << words[verdict];
        if (!detail.empty()) out << " (" << detail << ')';
        out << '\n';
        if (verdict == 2) all = false;
    };

    bool solvable = true;
    for (BVertex b : g.b_vertices())
        if (static_cast<std::size_t>(inst.need[b]) > g.degree(b)) solvable = false;

    std::optional<SolverState> st;
    if (solvable) st = solve(g, inst.need);

    if (g.edge_count() > oracle::edge_limit) {
        report("brute-min", 0, "too many edges");
    } else if (!solvable) {
        bool brute_infeasible = false;
        try {
            oracle::brute_min_distribution(g, inst.need);
        } catch (const InfeasibleError&) {
            brute_infeasible = true;
        }
        report("brute-min", brute_infeasible ? 1 : 2, "infeasible needs");
    } else {
        const DegreeDistribution want = oracle::brute_min_distribution(g, inst.need);
        report("brute-min", want == st->distribution() ? 1 : 2, "dist " + st->distribution().to_string());
    }

    if (st) report("certificate", verify_minimum(g, inst.need, st->matching()).minimal() ? 1 : 2);
    else report("certificate", 0, "infeasible needs");

    if (g.b_count() > hall_enumeration_limit) {
        report("flow-vs-hall", 0, "too many B-vertices");
    } else {
        const FeasibilityVerdict fv = feasible(g, inst.capacity, inst.need);
        const HallVerdict hv = hall_enumerate(g, inst.capacity, inst.need);
        report("flow-vs-hall", fv.feasible() == hv.all_pass() ? 1 : 2, fv.feasible() ? "feasible" : "infeasible");
    }

    bool unit = solvable;
    for (BVertex b : g.b_vertices())
        if (inst.need[b] != 1) unit = false;
    if (!unit) {
        report("max-matching", 0, "needs are not all 1");
    } else {
        const std::size_t m = extract_max_matching(*st).size();
        const std::size_t want = oracle::brute_max_matching(g);
        report("max-matching", m == want ? 1 : 2, std::to_string(m));
    }
    return all;
}

}  // namespace

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimum quasi-matchings in bipartite graphs", "qmatch"};
    app.require_subcommand(1);

    std::string file, events_file;
    std::vector<std::string> files;
    bool no_prune = false, stats = false;
    int need = 1;

    auto* solve_cmd = app.add_subcommand("solve", "minimum g-quasi-matching of a bqm file");
    solve_cmd->add_option("file", file, "bqm instance")->required();
    solve_cmd->add_flag("--no-prune", no_prune, "search every degree level when augmenting");
    solve_cmd->add_flag("--stats", stats, "print augmentation and edge-scan counts");

    auto* verify_cmd = app.add_subcommand("verify", "check the m-lines of a bqm file for minimality");
    verify_cmd->add_option("file", file, "bqm instance with m lines")->required();

    auto* feasible_cmd = app.add_subcommand("feasible", "decide whether an f,g-quasi-matching exists");
    feasible_cmd->add_option("file", file, "bqm instance")->required();

    auto* online_cmd = app.add_subcommand("online", "apply an event script, printing dist after each event");
    online_cmd->add_option("file", file, "bqm instance")->required();
    online_cmd->add_option("events", events_file, "event script")->required();
    online_cmd->add_flag("--no-prune", no_prune, "search every degree level when augmenting");

    auto* route_cmd = app.add_subcommand("route", "balanced routing subgraph of a rooted graph");
    route_cmd->add_option("file", file, "rooted graph")->required();
    route_cmd->add_option("--need", need, "parents required per non-root vertex")->capture_default_str();
    route_cmd->add_flag("--no-prune", no_prune, "search every degree level when augmenting");

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force cross-checks on small instances");
    oracle_cmd->add_option("files", files, "bqm instances")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return input_error;
    }

    const std::string* where = &file;
    try {
        if (*solve_cmd) return cmd_solve(file, !no_prune, stats, out);
        if (*verify_cmd) return cmd_verify(file, out);
        if (*feasible_cmd) return cmd_feasible(file, out);
        if (*online_cmd) return cmd_online(file, events_file, !no_prune, out, err);
        if (*route_cmd) return cmd_route(file, need, !no_prune, out, err);
        if (*oracle_cmd) {
            bool all = true;
            for (const std::string& f : files) {
                where = &f;
                all = oracle_checks(f, out) && all;
            }
            return all ? ok : negative;
        }
    } catch (const InputError& e) {
        err << *where << ": " << e.what() << '\n';
        return input_error;
    } catch (const InfeasibleError& e) {
        err << *where << ": infeasible: " << e.what() << '\n';
        return negative;
    }
    return input_error;
}

}  // namespace qmatch::cli
