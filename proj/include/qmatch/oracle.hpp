#ifndef QMATCH_ORACLE_HPP
#define QMATCH_ORACLE_HPP

// Exhaustive reference computations. Everything here is exponential and
// meant for cross-checking the solver on small instances.

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "qmatch/bipartite.hpp"
#include "qmatch/errors.hpp"

namespace qmatch::oracle {

inline constexpr std::size_t edge_limit = 24;

/// Calls `visit(F)` for every F subset of E with d_F(b) >= g(b) on all live b.
template <typename Visit>
void for_each_quasi_matching(const BipartiteGraph& g, const NeedMap& need, Visit&& visit) {
    const std::vector<EdgeId> es = g.edge_ids();
    if (es.size() > edge_limit)
        throw InputError("quasi-matching enumeration is limited to " + std::to_string(edge_limit) + " edges");

    QuasiMatching f(g);
    std::size_t deficient = 0;
    for (BVertex b : g.b_vertices())
        if (need[b] > 0) ++deficient;
    if (deficient == 0) visit(std::as_const(f));

    // Gray-code walk: one edge toggles per step.
    const std::uint64_t subsets = std::uint64_t{1} << es.size();
    for (std::uint64_t i = 1; i < subsets; ++i) {
        const EdgeId e = es[static_cast<std::size_t>(__builtin_ctzll(i))];
        const BVertex b = g.edge(e).b;
        const bool was_ok = f.degree(b) >= need[b];
        f.toggle(g, e);
        const bool now_ok = f.degree(b) >= need[b];
        if (was_ok && !now_ok) ++deficient;
        if (!was_ok && now_ok) --deficient;
        if (deficient == 0) visit(std::as_const(f));
    }
}

inline std::uint64_t count_quasi_matchings(const BipartiteGraph& g, const NeedMap& need) {
    std::uint64_t n = 0;
    for_each_quasi_matching(g, need, [&](const QuasiMatching&) { ++n; });
    return n;
}

/// Calls `visit(F)` for every semi-matching: exactly one F-edge per live b.
template <typename Visit>
void for_each_semi_matching(const BipartiteGraph& g, Visit&& visit) {
    const std::vector<BVertex> bs = g.b_vertices();
    std::uint64_t total = 1;
    for (BVertex b : bs) {
        if (g.degree(b) == 0) return;
        total *= g.degree(b);
        if (total > (std::uint64_t{1} << edge_limit))
            throw InputError("semi-matching enumeration too large");
    }
    QuasiMatching f(g);
    std::vector<std::size_t> pick(bs.size(), 0);
    for (std::size_t k = 0; k < bs.size(); ++k) f.insert(g, g.incident(bs[k])[0]);
    for (;;) {
        visit(std::as_const(f));
        std::size_t k = 0;
        for (; k < bs.size(); ++k) {
            const auto inc = g.incident(bs[k]);
            f.erase(g, inc[pick[k]]);
            pick[k] = (pick[k] + 1) % inc.size();
            f.insert(g, inc[pick[k]]);
            if (pick[k] != 0) break;
        }
        if (k == bs.size()) return;
    }
}

/// Lexicographic minimum of d_F(A) over all g-quasi-matchings.
inline DegreeDistribution brute_min_distribution(const BipartiteGraph& g, const NeedMap& need) {
    for (BVertex b : g.b_vertices())
        if (static_cast<std::size_t>(need[b]) > g.degree(b))
            throw InfeasibleError("need of B-vertex " + label(b) + " exceeds its degree",
                                  {b.index});
    std::optional<DegreeDistribution> best;
    for_each_quasi_matching(g, need, [&](const QuasiMatching& f) {
        DegreeDistribution d = degree_distribution(g, f);
        if (!best || lex_compare(d, *best) < 0) best = std::move(d);
    });
    return *best;
}

/// Exact non-negative rational, kept in lowest terms.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational of(std::int64_t n, std::int64_t d) {
        const std::int64_t k = std::gcd(n, d);
        return k ? Rational{n / k, d / k} : Rational{0, 1};
    }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
        return static_cast<__int128>(x.num) * y.den <=> static_cast<__int128>(y.num) * x.den;
    }
};

/// Sum over A of h(d_F(a)).
template <typename Cost>
auto cost_convex(const BipartiteGraph& g, const QuasiMatching& f, Cost&& h) {
    std::invoke_result_t<Cost&, int> total{};
    for (AVertex a : g.a_vertices()) total += h(f.degree(a));
    return total;
}

/// Sum over A of d(d + 1) / 2, total latency of unit jobs.
inline std::int64_t cost_ell(const BipartiteGraph& g, const QuasiMatching& f) {
    return cost_convex(g, f, [](int d) { return std::int64_t{d} * (d + 1) / 2; });
}

/// Sum over A of d^p. Compares like the L_p norm without taking the root.
inline std::int64_t lp_power_sum(const BipartiteGraph& g, const QuasiMatching& f, int p) {
    if (p < 1) throw InputError("L_p norm needs p >= 1");
    return cost_convex(g, f, [p](int d) {
        std::int64_t x = 1;
        for (int i = 0; i < p; ++i) x *= d;
        return x;
    });
}

inline double lp_norm(const BipartiteGraph& g, const QuasiMatching& f, int p) {
    return std::pow(static_cast<double>(lp_power_sum(g, f, p)), 1.0 / p);
}

/// Population variance of d_F(A) (denominator |A|).
inline Rational variance(const BipartiteGraph& g, const QuasiMatching& f) {
    const auto n = static_cast<std::int64_t>(g.a_count());
    if (n == 0) return Rational{};
    std::int64_t s1 = 0, s2 = 0;
    for (AVertex a : g.a_vertices()) {
        const std::int64_t d = f.degree(a);
        s1 += d;
        s2 += d * d;
    }
    return Rational::of(n * s2 - s1 * s1, n * n);
}

/// Maximum matching size by Kuhn's single augmenting-path search.
inline std::size_t brute_max_matching(const BipartiteGraph& g) {
    std::vector<std::optional<AVertex>> owner(g.b_size());
    std::vector<char> visited;

    std::function<bool(AVertex)> try_place = [&](AVertex a) {
        for (EdgeId e : g.incident(a)) {
            const BVertex b = g.edge(e).b;
            if (visited[b.index]) continue;
            visited[b.index] = 1;
            if (!owner[b.index] || try_place(*owner[b.index])) {
                owner[b.index] = a;
                return true;
            }
        }
        return false;
    };

    std::size_t size = 0;
    for (AVertex a : g.a_vertices()) {
        visited.assign(g.b_size(), 0);
        if (try_place(a)) ++size;
    }
    return size;
}

}  // namespace qmatch::oracle

#endif  // QMATCH_ORACLE_HPP
