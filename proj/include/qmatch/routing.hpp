#ifndef QMATCH_ROUTING_HPP
#define QMATCH_ROUTING_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qmatch/bipartite.hpp"
#include "qmatch/errors.hpp"
#include "qmatch/quasi_matching.hpp"

namespace qmatch {

/// Simple undirected graph with a distinguished root; vertices 0..n-1.
class RootedGraph {
public:
    RootedGraph(std::size_t vertex_count, std::size_t root) : adj_(vertex_count), root_(root) {
        if (root >= vertex_count) throw InputError("root " + std::to_string(root + 1) + " out of range");
    }

    void add_edge(std::size_t u, std::size_t v) {
        if (u >= adj_.size() || v >= adj_.size()) throw InputError("edge endpoint out of range");
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u + 1));
        const auto k = key(u, v);
        if (!keys_.insert(k).second)
            throw InputError("duplicate edge (" + std::to_string(u + 1) + ", " + std::to_string(v + 1) + ")");
        edges_.emplace_back(u, v);
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }

    std::size_t vertex_count() const noexcept { return adj_.size(); }
    std::size_t root() const noexcept { return root_; }
    std::span<const std::pair<std::size_t, std::size_t>> edges() const noexcept { return edges_; }
    std::span<const std::size_t> neighbours(std::size_t v) const { return adj_[v]; }

private:
    static std::uint64_t key(std::size_t u, std::size_t v) {
        if (u > v) std::swap(u, v);
        return (static_cast<std::uint64_t>(u) << 32) ^ v;
    }

    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::unordered_set<std::uint64_t> keys_;
    std::size_t root_;
};

/// Breadth-first distance classes from the root.
struct LevelDecomposition {
    std::vector<std::vector<std::size_t>> levels;         // ascending within each level
    std::vector<std::optional<std::size_t>> level_of;     // per vertex
    std::vector<std::size_t> unreachable;
    /// cross_edges[i] joins levels i and i + 1, stored (upper, lower).
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> cross_edges;
    std::vector<std::pair<std::size_t, std::size_t>> same_level_edges;
};

inline LevelDecomposition bfs_levels(const RootedGraph& r) {
    LevelDecomposition d;
    d.level_of.assign(r.vertex_count(), std::nullopt);
    d.level_of[r.root()] = 0;
    std::vector<std::size_t> frontier{r.root()};
    while (!frontier.empty()) {
        std::sort(frontier.begin(), frontier.end());
        d.levels.push_back(frontier);
        std::vector<std::size_t> next;
        for (std::size_t u : frontier)
            for (std::size_t v : r.neighbours(u))
                if (!d.level_of[v]) {
                    d.level_of[v] = d.levels.size();
                    next.push_back(v);
                }
        frontier = std::move(next);
    }
    for (std::size_t v = 0; v < r.vertex_count(); ++v)
        if (!d.level_of[v]) d.unreachable.push_back(v);

    d.cross_edges.resize(d.levels.size() > 0 ? d.levels.size() - 1 : 0);
    for (auto [u, v] : r.edges()) {
        if (!d.level_of[u] || !d.level_of[v]) continue;
        const std::size_t lu = *d.level_of[u], lv = *d.level_of[v];
        if (lu == lv)
            d.same_level_edges.emplace_back(std::min(u, v), std::max(u, v));
        else if (lu < lv)
            d.cross_edges[lu].emplace_back(u, v);
        else
            d.cross_edges[lv].emplace_back(v, u);
    }
    for (auto& ce : d.cross_edges) std::sort(ce.begin(), ce.end());
    std::sort(d.same_level_edges.begin(), d.same_level_edges.end());
    return d;
}

/// One consecutive level pair: A = upper level, B = lower level.
struct RoutingLevel {
    std::vector<std::size_t> upper;
    std::vector<std::size_t> lower;
    SolverState state;
};

/// Union of minimum quasi-matchings between consecutive BFS levels. Each
/// non-root vertex v gets need(v) parents one level closer to the root.
class RoutingPlan {
public:
    const LevelDecomposition& decomposition() const noexcept { return levels_; }
    std::span<const RoutingLevel> level_problems() const noexcept { return problems_; }

    /// (child, parent) pairs sorted by child then parent.
    std::vector<std::pair<std::size_t, std::size_t>> routes() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (const RoutingLevel& lvl : problems_) {
            const auto& g = lvl.state.graph();
            for (EdgeId e : lvl.state.matching().edges())
                out.emplace_back(lvl.lower[g.edge(e).b.index], lvl.upper[g.edge(e).a.index]);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Parent-degree distribution of level i (as the upper side).
    std::vector<DegreeDistribution> distributions() const {
        std::vector<DegreeDistribution> out;
        for (const RoutingLevel& lvl : problems_) out.push_back(lvl.state.distribution());
        return out;
    }

    int need(std::size_t v) const {
        const auto [lvl, j] = locate(v);
        return problems_[lvl].state.need()[BVertex{j}];
    }

    /// Changes one sensor's need through the online solver operations.
    void set_need(std::size_t v, int value) {
        const auto [lvl, j] = locate(v);
        SolverState& st = problems_[lvl].state;
        const BVertex b{j};
        if (value < 0) throw InputError("negative need");
        if (static_cast<std::size_t>(value) > st.graph().degree(b))
            throw InfeasibleError("need of vertex " + std::to_string(v + 1) + " exceeds its upper-level neighbours",
                                  {v});
        while (st.need()[b] < value) st.increment_need(b);
        while (st.need()[b] > value) st.decrement_need(b);
    }

private:
    friend RoutingPlan solve_routing(const RootedGraph&, std::span<const int>, SolverOptions);

    std::pair<std::size_t, std::size_t> locate(std::size_t v) const {
        if (v >= levels_.level_of.size()) throw InputError("vertex " + std::to_string(v + 1) + " out of range");
        if (!levels_.level_of[v] || *levels_.level_of[v] == 0)
            throw InputError("vertex " + std::to_string(v + 1) + " has no upper level");
        const std::size_t lvl = *levels_.level_of[v] - 1;
        const auto& lower = problems_[lvl].lower;
        const auto it = std::lower_bound(lower.begin(), lower.end(), v);
        return {lvl, static_cast<std::size_t>(it - lower.begin())};
    }

    LevelDecomposition levels_;
    std::vector<RoutingLevel> problems_;
};

/// Solves every level pair in order. `need` has one entry per vertex; the
/// root's entry is ignored.
inline RoutingPlan solve_routing(const RootedGraph& r, std::span<const int> need, SolverOptions options = {}) {
    if (need.size() != r.vertex_count()) throw InputError("need must list every vertex");

    RoutingPlan plan;
    plan.levels_ = bfs_levels(r);
    const LevelDecomposition& d = plan.levels_;

    std::vector<std::size_t> stuck;
    for (std::size_t v = 0; v < r.vertex_count(); ++v) {
        if (v == r.root()) continue;
        if (need[v] < 0) throw InputError("negative need at vertex " + std::to_string(v + 1));
        if (!d.level_of[v]) {
            if (need[v] > 0) stuck.push_back(v);
            continue;
        }
        std::size_t up = 0;
        for (std::size_t u : r.neighbours(v))
            if (d.level_of[u] && *d.level_of[u] + 1 == *d.level_of[v]) ++up;
        if (static_cast<std::size_t>(need[v]) > up) stuck.push_back(v);
    }
    if (!stuck.empty()) {
        const std::string what =
            "vertex " + std::to_string(stuck.front() + 1) + " cannot reach its need from the level above";
        throw InfeasibleError(what, std::move(stuck));
    }

    for (std::size_t i = 0; i + 1 < d.levels.size(); ++i) {
        const auto& upper = d.levels[i];
        const auto& lower = d.levels[i + 1];
        auto pos = [](const std::vector<std::size_t>& level, std::size_t v) {
            return static_cast<std::size_t>(std::lower_bound(level.begin(), level.end(), v) - level.begin());
        };
        BipartiteGraph g(upper.size(), lower.size());
        for (auto [u, v] : d.cross_edges[i]) g.add_edge(AVertex{pos(upper, u)}, BVertex{pos(lower, v)});
        NeedMap g_need(lower.size());
        for (std::size_t j = 0; j < lower.size(); ++j) g_need.set(BVertex{j}, need[lower[j]]);
        plan.problems_.push_back(RoutingLevel{upper, lower, solve(g, g_need, options)});
    }
    return plan;
}

}  // namespace qmatch

#endif  // QMATCH_ROUTING_HPP
