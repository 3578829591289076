// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qmatch/feasibility.hpp"
#include "qmatch/oracle.hpp"
#include "qmatch/quasi_matching.hpp"
#include "qmatch/routing.hpp"
#include "support.hpp"

using namespace qmatch;
using namespace qmatch::test;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Report {
    bool pass = true;
    std::string first_failure;
    std::uint64_t failures = 0;

    void fail(const std::string& what) {
        if (pass) first_failure = what;
        pass = false;
        ++failures;
    }
};

void print(int number, const char* name, const Report& r, const std::string& detail, double secs) {
    std::printf("criterion %d %-28s %s  %s (%.1fs)\n", number, name, r.pass ? "PASS" : "FAIL", detail.c_str(),
                secs);
    if (!r.pass)
        std::printf("    %llu failure(s); first: %s\n", static_cast<unsigned long long>(r.failures),
                    r.first_failure.c_str());
    std::fflush(stdout);
}

std::string describe(const BipartiteGraph& g, const NeedMap* need = nullptr, const QuasiMatching* f = nullptr) {
    std::ostringstream os;
    os << "|A|=" << g.a_count() << " |B|=" << g.b_count() << " E={";
    for (EdgeId e : g.edge_ids()) os << ' ' << label(g.edge(e).a) << label(g.edge(e).b);
    os << " }";
    if (need) {
        os << " g=(";
        for (BVertex b : g.b_vertices()) os << ' ' << (*need)[b];
        os << " )";
    }
    if (f) {
        os << " F={";
        for (EdgeId e : f->edges()) os << ' ' << label(g.edge(e).a) << label(g.edge(e).b);
        os << " }";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// The small family: connected bipartite graphs, |A|, |B| <= 4, |E| <= 10,
// all labelings.

struct SmallGraph {
    std::size_t na, nb;
    std::uint32_t mask;
};

std::vector<SmallGraph> small_family() {
    std::vector<SmallGraph> out;
    for (std::size_t na = 1; na <= 4; ++na)
        for (std::size_t nb = 1; nb <= 4; ++nb)
            for (std::uint32_t m = 1; m < (1U << (na * nb)); ++m)
                if (__builtin_popcount(m) <= 10 && connected(na, nb, m)) out.push_back({na, nb, m});
    return out;
}

// Need maps with g(b) <= min(2, d(b)) are indexed by base-3 codes.
constexpr int need_cap = 2;

std::size_t code_of(const std::vector<int>& digits) {
    std::size_t c = 0;
    for (std::size_t j = digits.size(); j-- > 0;) c = c * 3 + static_cast<std::size_t>(digits[j]);
    return c;
}

// Sorted-descending degrees packed so that integer order is lex order.
std::uint64_t dist_key(const DegreeDistribution& d) {
    std::uint64_t k = 0;
    for (int v : d.values()) k = k * 16 + static_cast<std::uint64_t>(v);
    return k;
}

// Every subset F of E, grouped by the pattern min(2, d_F(b)).
struct Exhaustive {
    std::vector<QuasiMatching> subsets;
    std::vector<std::uint64_t> key;
    std::vector<std::size_t> cover;  // code of min(2, d_F(b))
    std::vector<std::uint64_t> best_at_least;  // per need code: min key over F with d_F >= g
    std::size_t codes = 1;
};

Exhaustive exhaust(const BipartiteGraph& g) {
    Exhaustive x;
    const std::size_t nb = g.b_size();
    for (std::size_t j = 0; j < nb; ++j) x.codes *= 3;
    std::vector<std::uint64_t> best_exact(x.codes, std::numeric_limits<std::uint64_t>::max());
    oracle::for_each_quasi_matching(g, NeedMap(nb, 0), [&](const QuasiMatching& f) {
        std::vector<int> digits(nb);
        for (std::size_t j = 0; j < nb; ++j) digits[j] = std::min(need_cap, f.degree(BVertex{j}));
        const std::size_t c = code_of(digits);
        const std::uint64_t k = dist_key(degree_distribution(g, f));
        x.subsets.push_back(f);
        x.key.push_back(k);
        x.cover.push_back(c);
        best_exact[c] = std::min(best_exact[c], k);
    });
    // Suffix minimum over the product order, one coordinate at a time.
    x.best_at_least = best_exact;
    std::size_t stride = 1;
    for (std::size_t j = 0; j < nb; ++j, stride *= 3)
        for (std::size_t c = x.codes; c-- > 0;)
            if ((c / stride) % 3 < 2) x.best_at_least[c] = std::min(x.best_at_least[c], x.best_at_least[c + stride]);
    return x;
}

std::vector<NeedMap> need_family(const BipartiteGraph& g) {
    std::vector<NeedMap> out;
    for_each_need(g, need_cap, [&](const NeedMap& n) { out.push_back(n); });
    return out;
}

std::size_t need_code(const BipartiteGraph& g, const NeedMap& need) {
    std::vector<int> digits(g.b_size());
    for (std::size_t j = 0; j < g.b_size(); ++j) digits[j] = need[BVertex{j}];
    return code_of(digits);
}

// ---------------------------------------------------------------------------
// Criteria 1 and 2 share one sweep over the family.

struct SweepResult {
    Report equivalence, certificate;
    std::uint64_t instances = 0, oracle_spot_checks = 0;
    std::uint64_t pairs = 0, exact_pairs = 0, paths = 0, surplus = 0;
    double equivalence_secs = 0, certificate_secs = 0;
};

SweepResult sweep(const std::vector<SmallGraph>& family) {
    SweepResult r;
    std::uint64_t count = 0;
    for (const SmallGraph& sg : family) {
        const BipartiteGraph g = from_mask(sg.na, sg.nb, sg.mask);
        const std::vector<NeedMap> needs = need_family(g);

        auto t0 = Clock::now();
        const Exhaustive x = exhaust(g);
        for (const NeedMap& need : needs) {
            ++r.instances;
            const std::uint64_t want = x.best_at_least[need_code(g, need)];
            const SolverState s = solve(g, need);
            if (dist_key(s.distribution()) != want)
                r.equivalence.fail(describe(g, &need) + " solve gave " + s.distribution().to_string());
            // Re-derive a sample with the reference enumerator directly.
            if (++count % 101 == 0) {
                ++r.oracle_spot_checks;
                if (dist_key(oracle::brute_min_distribution(g, need)) != want)
                    r.equivalence.fail(describe(g, &need) + " brute-force tables disagree");
            }
        }
        r.equivalence_secs += seconds_since(t0);

        t0 = Clock::now();
        std::vector<int> top(g.b_size());
        for (std::size_t j = 0; j < g.b_size(); ++j) top[j] = std::min<int>(need_cap, g.degree(BVertex{j}));
        for (std::size_t i = 0; i < x.subsets.size(); ++i) {
            const QuasiMatching& f = x.subsets[i];
            // Every admissible need with d_F(b) >= g(b).
            std::vector<int> cap(g.b_size()), digit(g.b_size(), 0);
            for (std::size_t j = 0; j < g.b_size(); ++j) cap[j] = std::min(top[j], f.degree(BVertex{j}));
            NeedMap need(g.b_size(), 0);
            for (;;) {
                ++r.pairs;
                const bool minimum = x.key[i] == x.best_at_least[code_of(digit)];
                bool exact = true;
                for (std::size_t j = 0; j < g.b_size(); ++j) exact = exact && f.degree(BVertex{j}) == digit[j];
                r.exact_pairs += exact;

                const MinimalityVerdict v = verify_minimum(g, need, f);
                if (v.minimal() != minimum) {
                    r.certificate.fail(describe(g, &need, &f) + (minimum ? " is minimum but rejected"
                                                                         : " is not minimum but accepted"));
                } else if (v.violation) {
                    ++r.paths;
                    const AlternatingPath& p = *v.violation;
                    try {
                        check_alternating(g, f, p);
                        if (p.kind != PathKind::forward) throw ContractError("not a forward path");
                    } catch (const ContractError& e) {
                        r.certificate.fail(describe(g, &need, &f) + " invalid path " + p.to_string() + ": " + e.what());
                    }
                    if (f.degree(p.first_a()) - f.degree(p.last_a()) < 2)
                        r.certificate.fail(describe(g, &need, &f) + " path " + p.to_string() + " declines < 2");
                } else if (v.surplus) {
                    ++r.surplus;
                    const SurplusCoverage& sc = *v.surplus;
                    if (exact) r.certificate.fail(describe(g, &need, &f) + " exact F without a violating path");
                    QuasiMatching smaller = f;
                    if (!f.contains(sc.edge) || g.edge(sc.edge).b != sc.b || f.degree(sc.b) <= need[sc.b]) {
                        r.certificate.fail(describe(g, &need, &f) + " bogus surplus certificate");
                    } else {
                        smaller.erase(g, sc.edge);
                        if (lex_compare(degree_distribution(g, smaller), degree_distribution(g, f)) >= 0)
                            r.certificate.fail(describe(g, &need, &f) + " surplus edge does not improve F");
                    }
                }

                std::size_t j = 0;
                for (; j < g.b_size(); ++j) {
                    if (digit[j] < cap[j]) {
                        ++digit[j];
                        need.set(BVertex{j}, digit[j]);
                        break;
                    }
                    digit[j] = 0;
                    need.set(BVertex{j}, 0);
                }
                if (j == g.b_size()) break;
            }
        }
        r.certificate_secs += seconds_since(t0);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Criterion 3: online maintenance against recomputation.

Report online_equals_offline(std::uint64_t& events) {
    Report r;
    Rng rng(0x5eed0003);
    for (int script = 0; script < 1000 && r.pass; ++script) {
        const BipartiteGraph g = random_graph(rng, 1 + rng.below(6), rng.below(7), 0.5);
        SolverState s = solve(g, random_need(rng, g, 2));
        const std::size_t length = 1 + rng.below(30);
        std::string history;
        for (std::size_t step = 0; step < length; ++step) {
            history += random_event(rng, s, 6, 6) + "; ";
            ++events;
            const SolverState fresh = solve(s.graph(), s.need());
            bool exact = true;
            for (BVertex b : s.graph().b_vertices()) exact = exact && s.matching().degree(b) == s.need()[b];
            if (!exact || s.distribution() != fresh.distribution()) {
                r.fail("script " + std::to_string(script) + ": " + history + " online " + s.distribution().to_string() +
                       " offline " + fresh.distribution().to_string());
                break;
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Criterion 4: flow verdict against subset enumeration.

Report feasibility_agrees(std::uint64_t& infeasible) {
    Report r;
    Rng rng(0x5eed0004);
    for (int round = 0; round < 500; ++round) {
        const std::size_t na = 1 + rng.below(8), nb = rng.below(13);
        const BipartiteGraph g = random_graph(rng, na, nb, 0.1 + 0.5 * rng.below(100) / 100.0);
        CapacityMap cap(na);
        for (AVertex a : g.a_vertices()) cap.set(a, rng.between(0, 4));
        NeedMap need(nb);
        for (BVertex b : g.b_vertices()) need.set(b, rng.between(0, 3));

        const FeasibilityVerdict v = feasible(g, cap, need);
        const HallVerdict h = hall_enumerate(g, cap, need);
        const std::string where = describe(g, &need);
        if (v.feasible() != h.all_pass()) r.fail(where + " flow and subset verdicts differ");
        if (v.feasible()) {
            for (BVertex b : g.b_vertices())
                if (v.witness->degree(b) < need[b]) r.fail(where + " witness under-covers " + label(b));
            for (AVertex a : g.a_vertices())
                if (v.witness->degree(a) > cap[a]) r.fail(where + " witness overloads " + label(a));
        } else {
            ++infeasible;
            const std::vector<BVertex>& ys = *v.violating;
            std::int64_t avail = 0;
            for (AVertex a : g.a_vertices()) {
                std::int64_t dy = 0;
                for (BVertex b : ys) dy += g.find_edge(a, b).has_value();
                avail += std::min<std::int64_t>(cap[a], dy);
            }
            std::int64_t want = 0;
            for (BVertex b : ys) want += need[b];
            if (avail >= want) r.fail(where + " reported Y is not violating");
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Criteria 5 and 6 on the unit-need members of the family.

Report convex_costs_agree(const std::vector<SmallGraph>& family, std::uint64_t& sets) {
    Report r;
    for (const SmallGraph& sg : family) {
        const BipartiteGraph g = from_mask(sg.na, sg.nb, sg.mask);
        const NeedMap unit = uniform_need(g, 1);
        std::vector<QuasiMatching> all;
        oracle::for_each_semi_matching(g, [&](const QuasiMatching& f) { all.push_back(f); });

        auto minimisers = [&](auto key) {
            auto best = key(all.front());
            for (const QuasiMatching& f : all) best = std::min(best, key(f));
            std::vector<char> out;
            for (const QuasiMatching& f : all) out.push_back(key(f) == best);
            return out;
        };
        const auto lex = minimisers([&](const QuasiMatching& f) { return dist_key(degree_distribution(g, f)); });
        const std::array<std::pair<const char*, std::vector<char>>, 4> others{{
            {"cost_ell", minimisers([&](const QuasiMatching& f) { return oracle::cost_ell(g, f); })},
            {"sum d^2", minimisers([&](const QuasiMatching& f) { return oracle::lp_power_sum(g, f, 2); })},
            {"sum d^3", minimisers([&](const QuasiMatching& f) { return oracle::lp_power_sum(g, f, 3); })},
            {"variance", minimisers([&](const QuasiMatching& f) { return oracle::variance(g, f); })},
        }};
        for (const auto& [name, set] : others)
            if (set != lex) r.fail(describe(g) + " minimisers of " + name + " differ from lexicographic");
        for (std::size_t i = 0; i < all.size(); ++i)
            if (lex[i] && !verify_minimum(g, unit, all[i]).minimal())
                r.fail(describe(g, &unit, &all[i]) + " lexicographic minimiser fails verification");
        ++sets;
    }
    return r;
}

Report max_matching_agrees(const std::vector<SmallGraph>& family) {
    Report r;
    for (const SmallGraph& sg : family) {
        const BipartiteGraph g = from_mask(sg.na, sg.nb, sg.mask);
        const SolverState s = solve(g, uniform_need(g, 1));
        const std::vector<EdgeId> m = extract_max_matching(s);
        std::vector<char> used_a(g.a_size(), 0), used_b(g.b_size(), 0);
        for (EdgeId e : m) {
            if (!s.matching().contains(e)) r.fail(describe(g) + " matching edge outside F");
            if (used_a[g.edge(e).a.index]++ || used_b[g.edge(e).b.index]++) r.fail(describe(g) + " not a matching");
        }
        const std::size_t want = oracle::brute_max_matching(g);
        if (m.size() != want)
            r.fail(describe(g) + " extracted " + std::to_string(m.size()) + ", maximum " + std::to_string(want));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Criterion 7: augmentation count and wall-clock scaling.

BipartiteGraph random_graph_with_edges(Rng& rng, std::size_t na, std::size_t nb, std::size_t edges) {
    BipartiteGraph g(na, nb);
    // Every b gets at least two edges so that g = 2 stays feasible.
    for (std::size_t j = 0; j < nb; ++j) {
        const std::size_t first = rng.below(na);
        g.add_edge(AVertex{first}, BVertex{j});
        g.add_edge(AVertex{(first + 1 + rng.below(na - 1)) % na}, BVertex{j});
    }
    while (g.edge_count() < edges) {
        const AVertex a{rng.below(na)};
        const BVertex b{rng.below(nb)};
        if (!g.find_edge(a, b)) g.add_edge(a, b);
    }
    return g;
}

double best_time(const BipartiteGraph& g, const NeedMap& need, bool prune, std::size_t& augmentations) {
    double best = std::numeric_limits<double>::max();
    for (int rep = 0; rep < 3; ++rep) {
        const auto t0 = Clock::now();
        const SolverState s = solve(g, need, SolverOptions{prune});
        best = std::min(best, seconds_since(t0));
        augmentations = s.stats().augmentations;
    }
    return best;
}

Report complexity(std::string& detail) {
    Report r;
    Rng rng(0x5eed0007);

    // Exact augmentation count on assorted random instances.
    for (int round = 0; round < 200; ++round) {
        const BipartiteGraph g = random_graph(rng, 1 + rng.below(20), 1 + rng.below(20), 0.3);
        const NeedMap need = random_need(rng, g, 4);
        for (bool prune : {true, false}) {
            const SolverState s = solve(g, need, SolverOptions{prune});
            if (static_cast<std::int64_t>(s.stats().augmentations) != need.total())
                r.fail(describe(g, &need) + " augmentations " + std::to_string(s.stats().augmentations));
        }
    }

    const std::size_t edges = 100'000;
    const BipartiteGraph g = random_graph_with_edges(rng, 1000, 1000, edges);
    for (bool prune : {true, false}) {
        const char* mode = prune ? "pruned" : "full BFS";
        std::size_t aug1 = 0, aug2 = 0;
        const double t1 = best_time(g, uniform_need(g, 1), prune, aug1);
        const double t2 = best_time(g, uniform_need(g, 2), prune, aug2);
        const double ratio = t2 / t1;
        if (aug1 != 1000 || aug2 != 2000)
            r.fail(std::string(mode) + " augmentation counts " + std::to_string(aug1) + ", " + std::to_string(aug2));
        if (t1 >= 10.0 || t2 >= 10.0) r.fail(std::string(mode) + " solve exceeded 10 s");
        if (ratio > 3.0) r.fail(std::string(mode) + " doubling g(B) multiplied time by " + std::to_string(ratio));

        char buf[160];
        std::snprintf(buf, sizeof buf, "%s%s %.3fs -> %.3fs (x%.2f)", detail.empty() ? "" : "; ", mode, t1, t2,
                      ratio);
        detail += buf;
    }
    detail = "|E|=100000, g(B) 1000 -> 2000: " + detail;
    return r;
}

// ---------------------------------------------------------------------------
// Criterion 8: routing trees.

RootedGraph random_rooted(Rng& rng, std::size_t n) {
    RootedGraph r(n, rng.below(n));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng.engine());
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    auto link = [&](std::size_t u, std::size_t v) {
        if (u == v || adj[u][v]) return;
        adj[u][v] = adj[v][u] = 1;
        r.add_edge(u, v);
    };
    for (std::size_t k = 1; k < n; ++k) link(order[k], order[rng.below(k)]);
    const std::size_t extra = rng.below(3 * n);
    for (std::size_t k = 0; k < extra; ++k) link(rng.below(n), rng.below(n));
    return r;
}

Report routing() {
    Report r;
    Rng rng(0x5eed0008);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = 1 + rng.below(50);
        const RootedGraph rg = random_rooted(rng, n);
        const RoutingPlan plan = solve_routing(rg, std::vector<int>(n, 1));
        const auto& level = plan.decomposition().level_of;
        const auto routes = plan.routes();
        const std::string where = "graph " + std::to_string(round) + " (n=" + std::to_string(n) + ")";
        if (routes.size() != n - 1) r.fail(where + " has " + std::to_string(routes.size()) + " tree edges");

        // Acyclic with n - 1 edges: union-find over the chosen edges.
        std::vector<std::size_t> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
            return parent[v] == v ? v : parent[v] = find(parent[v]);
        };
        for (auto [child, up] : routes) {
            if (*level[child] != *level[up] + 1) r.fail(where + " edge skips a level");
            bool adjacent = false;
            for (std::size_t w : rg.neighbours(child)) adjacent = adjacent || w == up;
            if (!adjacent) r.fail(where + " uses a non-edge");
            const std::size_t x = find(child), y = find(up);
            if (x == y) r.fail(where + " contains a cycle");
            parent[x] = y;
        }
        for (const RoutingLevel& lvl : plan.level_problems())
            if (!verify_minimum(lvl.state.graph(), lvl.state.need(), lvl.state.matching()).minimal())
                r.fail(where + " level distribution not minimum");
    }

    // Root r; level 1 = {u1, u2}; level 2 = {v1, v2, v3}, all cross edges.
    RootedGraph two(6, 0);
    two.add_edge(0, 1);
    two.add_edge(0, 2);
    for (std::size_t u : {1, 2})
        for (std::size_t v : {3, 4, 5}) two.add_edge(u, v);
    const auto unit = solve_routing(two, std::vector<int>(6, 1)).distributions();
    if (unit.size() != 2 || unit[1] != dist({2, 1})) r.fail("two-level example with need 1 is not [2,1]");
    const auto multi = solve_routing(two, std::vector<int>{0, 1, 1, 2, 2, 2}).distributions();
    if (multi.size() != 2 || multi[1] != dist({3, 3})) r.fail("two-level example with need 2 is not [3,3]");
    return r;
}

}  // namespace

int main() {
    bool all = true;
    const auto t_family = Clock::now();
    const std::vector<SmallGraph> family = small_family();
    const double family_secs = seconds_since(t_family);

    {
        const SweepResult s = sweep(family);
        print(1, "oracle-equivalence", s.equivalence,
              std::to_string(family.size()) + " graphs, " + std::to_string(s.instances) + " need maps, " +
                  std::to_string(s.oracle_spot_checks) + " direct brute-force re-checks",
              s.equivalence_secs + family_secs);
        print(2, "certificate-soundness", s.certificate,
              std::to_string(s.pairs) + " (F, g) pairs, " + std::to_string(s.exact_pairs) + " with d_F = g; " +
                  std::to_string(s.paths) + " violating paths, " + std::to_string(s.surplus) +
                  " surplus certificates",
              s.certificate_secs);
        all = all && s.equivalence.pass && s.certificate.pass;
    }
    {
        const auto t0 = Clock::now();
        std::uint64_t events = 0;
        const Report r = online_equals_offline(events);
        print(3, "online-equals-offline", r, "1000 scripts, " + std::to_string(events) + " events", seconds_since(t0));
        all = all && r.pass;
    }
    {
        const auto t0 = Clock::now();
        std::uint64_t infeasible = 0;
        const Report r = feasibility_agrees(infeasible);
        print(4, "feasibility", r, "500 instances, " + std::to_string(infeasible) + " infeasible", seconds_since(t0));
        all = all && r.pass;
    }
    {
        const auto t0 = Clock::now();
        std::uint64_t sets = 0;
        const Report r = convex_costs_agree(family, sets);
        print(5, "convex-cost-equivalence", r, std::to_string(sets) + " graphs with g = 1", seconds_since(t0));
        all = all && r.pass;
    }
    {
        const auto t0 = Clock::now();
        const Report r = max_matching_agrees(family);
        print(6, "maximum-matching", r, std::to_string(family.size()) + " graphs with g = 1", seconds_since(t0));
        all = all && r.pass;
    }
    {
        const auto t0 = Clock::now();
        std::string detail;
        const Report r = complexity(detail);
        print(7, "complexity", r, detail, seconds_since(t0));
        all = all && r.pass;
    }
    {
        const auto t0 = Clock::now();
        const Report r = routing();
        print(8, "routing", r, "200 random rooted graphs + two-level examples", seconds_since(t0));
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
