#ifndef QMATCH_TESTS_SUPPORT_HPP
#define QMATCH_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qmatch/bipartite.hpp"
#include "qmatch/quasi_matching.hpp"

namespace qmatch::test {

using Pairs = std::initializer_list<std::pair<std::size_t, std::size_t>>;

inline AVertex A(std::size_t i) { return AVertex{i - 1}; }
inline BVertex B(std::size_t j) { return BVertex{j - 1}; }

/// Graph from 1-based (i, j) pairs.
inline BipartiteGraph graph(std::size_t na, std::size_t nb, Pairs edges) {
    BipartiteGraph g(na, nb);
    for (auto [i, j] : edges) g.add_edge(A(i), B(j));
    return g;
}

inline BipartiteGraph complete(std::size_t na, std::size_t nb) {
    BipartiteGraph g(na, nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) g.add_edge(AVertex{i}, BVertex{j});
    return g;
}

inline QuasiMatching matching(const BipartiteGraph& g, Pairs edges) {
    QuasiMatching f(g);
    for (auto [i, j] : edges) f.insert(g, *g.find_edge(A(i), B(j)));
    return f;
}

inline NeedMap needs(std::initializer_list<int> values) { return NeedMap(std::vector<int>(values)); }

inline NeedMap uniform_need(const BipartiteGraph& g, int value) { return NeedMap(g.b_size(), value); }

inline DegreeDistribution dist(std::initializer_list<int> values) {
    return DegreeDistribution(std::vector<int>(values));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
    int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(engine_); }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Each possible edge present independently with probability p.
inline BipartiteGraph random_graph(Rng& rng, std::size_t na, std::size_t nb, double p) {
    BipartiteGraph g(na, nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            if (rng.chance(p)) g.add_edge(AVertex{i}, BVertex{j});
    return g;
}

/// Need in [0, min(cap, d(b))] for every live b.
inline NeedMap random_need(Rng& rng, const BipartiteGraph& g, int cap) {
    NeedMap need(g.b_size());
    for (BVertex b : g.b_vertices())
        need.set(b, rng.between(0, std::min(cap, static_cast<int>(g.degree(b)))));
    return need;
}

/// Whether the graph encoded by `mask` is connected; bit i * nb + j is the
/// edge a_i b_j.
inline bool connected(std::size_t na, std::size_t nb, std::uint32_t mask) {
    const std::size_t n = na + nb;
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < n; ++v) {
            if (seen[v]) continue;
            const bool ua = u < na, va = v < na;
            if (ua == va) continue;
            const std::size_t i = ua ? u : v, j = (ua ? v : u) - na;
            if (!((mask >> (i * nb + j)) & 1U)) continue;
            seen[v] = 1;
            ++count;
            stack.push_back(v);
        }
    }
    return count == n;
}

inline BipartiteGraph from_mask(std::size_t na, std::size_t nb, std::uint32_t mask) {
    BipartiteGraph g(na, nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            if ((mask >> (i * nb + j)) & 1U) g.add_edge(AVertex{i}, BVertex{j});
    return g;
}

/// Calls visit(need) for every need map with need(b) <= min(cap, d(b)).
template <typename Visit>
void for_each_need(const BipartiteGraph& g, int cap, Visit&& visit) {
    const std::vector<BVertex> bs = g.b_vertices();
    NeedMap need(g.b_size());
    std::vector<int> top;
    for (BVertex b : bs) top.push_back(std::min(cap, static_cast<int>(g.degree(b))));
    for (;;) {
        visit(std::as_const(need));
        std::size_t k = 0;
        for (; k < bs.size(); ++k) {
            if (need[bs[k]] < top[k]) {
                need.set(bs[k], need[bs[k]] + 1);
                break;
            }
            need.set(bs[k], 0);
        }
        if (k == bs.size()) return;
    }
}

/// Applies one random event that keeps the state feasible, with at most
/// max_a / max_b live vertices per side. Returns a short description.
inline std::string random_event(Rng& rng, SolverState& s, std::size_t max_a, std::size_t max_b) {
    const BipartiteGraph& g = s.graph();
    auto pick = [&](const auto& xs) { return xs[rng.below(xs.size())]; };
    for (;;) {
        const std::vector<AVertex> as = g.a_vertices();
        const std::vector<BVertex> bs = g.b_vertices();
        switch (rng.below(6)) {
            case 0: {
                std::vector<BVertex> open;
                for (BVertex b : bs)
                    if (static_cast<std::size_t>(s.need()[b]) < g.degree(b)) open.push_back(b);
                if (open.empty()) break;
                const BVertex b = pick(open);
                s.increment_need(b);
                return "inc " + label(b);
            }
            case 1: {
                std::vector<BVertex> loaded;
                for (BVertex b : bs)
                    if (s.need()[b] > 0) loaded.push_back(b);
                if (loaded.empty()) break;
                const BVertex b = pick(loaded);
                s.decrement_need(b);
                return "dec " + label(b);
            }
            case 2: {
                if (bs.size() >= max_b || as.empty()) break;
                std::vector<AVertex> nb;
                for (AVertex a : as)
                    if (rng.chance(0.5)) nb.push_back(a);
                const int need = rng.between(0, std::min(2, static_cast<int>(nb.size())));
                const BVertex b = s.add_b_vertex(nb, need);
                return "addb " + label(b);
            }
            case 3: {
                if (bs.empty()) break;
                const BVertex b = pick(bs);
                s.remove_b_vertex(b);
                return "rmb " + label(b);
            }
            case 4: {
                if (as.size() >= max_a) break;
                std::vector<BVertex> nb;
                for (BVertex b : bs)
                    if (rng.chance(0.5)) nb.push_back(b);
                const AVertex a = s.add_a_vertex(nb);
                return "adda " + label(a);
            }
            case 5: {
                if (as.size() <= 1) break;
                std::vector<AVertex> removable;
                for (AVertex a : as) {
                    bool ok = true;
                    for (EdgeId e : g.incident(a)) {
                        const BVertex b = g.edge(e).b;
                        if (static_cast<std::size_t>(s.need()[b]) + 1 > g.degree(b)) ok = false;
                    }
                    if (ok) removable.push_back(a);
                }
                if (removable.empty()) break;
                const AVertex a = pick(removable);
                s.remove_a_vertex(a);
                return "rma " + label(a);
            }
        }
    }
}

}  // namespace qmatch::test

#endif  // QMATCH_TESTS_SUPPORT_HPP
