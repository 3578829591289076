#ifndef QMATCH_QUASI_MATCHING_HPP
#define QMATCH_QUASI_MATCHING_HPP

#include <algorithm>
#include <climits>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmatch/bipartite.hpp"
#include "qmatch/errors.hpp"

namespace qmatch {

enum class Side : std::uint8_t { a, b };

struct PathVertex {
    Side side = Side::a;
    std::size_t index = 0;
    friend bool operator==(const PathVertex&, const PathVertex&) = default;
};

inline PathVertex path_vertex(AVertex a) { return {Side::a, a.index}; }
inline PathVertex path_vertex(BVertex b) { return {Side::b, b.index}; }

/// forward:    A -F- B -nonF- A ... -nonF- A   (first edge in F, last not)
/// backward:   reverse of a forward path
/// augmenting: B -nonF- A -F- B ... -nonF- A
enum class PathKind { forward, backward, augmenting };

struct AlternatingPath {
    PathKind kind = PathKind::forward;
    std::vector<PathVertex> vertices;
    std::vector<EdgeId> edges;

    AVertex first_a() const {
        return AVertex{kind == PathKind::augmenting ? vertices.at(1).index : vertices.front().index};
    }
    AVertex last_a() const { return AVertex{vertices.back().index}; }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (i) s += ' ';
            s += vertices[i].side == Side::a ? 'a' : 'b';
            s += std::to_string(vertices[i].index + 1);
        }
        return s;
    }
};

/// Checks that `p` is a simple path of `g` with the membership pattern its
/// kind demands relative to `f`. Throws ContractError otherwise.
inline void check_alternating(const BipartiteGraph& g, const QuasiMatching& f, const AlternatingPath& p) {
    if (p.edges.empty() || p.vertices.size() != p.edges.size() + 1)
        throw ContractError("path must have one more vertex than edges");

    const Side first = p.kind == PathKind::augmenting ? Side::b : Side::a;
    if (p.vertices.front().side != first || p.vertices.back().side != Side::a)
        throw ContractError("path endpoints on the wrong side");

    std::vector<char> seen_a(g.a_size(), 0), seen_b(g.b_size(), 0);
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        const PathVertex v = p.vertices[i];
        const Side expect = (i % 2 == 0) ? first : (first == Side::a ? Side::b : Side::a);
        if (v.side != expect) throw ContractError("path does not alternate sides");
        auto& seen = v.side == Side::a ? seen_a : seen_b;
        if (v.index >= seen.size()) throw ContractError("path vertex out of range");
        if (seen[v.index]) throw ContractError("path repeats a vertex");
        seen[v.index] = 1;
    }

    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        const EdgeId e = p.edges[i];
        if (!g.contains(e)) throw ContractError("path uses an unknown edge");
        const Edge& ed = g.edge(e);
        const PathVertex u = p.vertices[i], w = p.vertices[i + 1];
        const PathVertex ua = u.side == Side::a ? u : w;
        const PathVertex ub = u.side == Side::a ? w : u;
        if (ed.a.index != ua.index || ed.b.index != ub.index)
            throw ContractError("path edge does not join consecutive vertices");

        bool want_in = false;
        switch (p.kind) {
            case PathKind::forward: want_in = (i % 2 == 0); break;
            case PathKind::backward:
            case PathKind::augmenting: want_in = (i % 2 == 1); break;
        }
        if (f.contains(e) != want_in) throw ContractError("path does not alternate F and non-F edges");
    }
}

/// Decline dc(P) = d_F(start) - d_F(end) of a forward path; a backward path
/// is measured in its forward direction.
inline int decline(const QuasiMatching& f, const AlternatingPath& p) {
    switch (p.kind) {
        case PathKind::forward: return f.degree(p.first_a()) - f.degree(p.last_a());
        case PathKind::backward: return f.degree(p.last_a()) - f.degree(p.first_a());
        case PathKind::augmenting: break;
    }
    throw InputError("decline is defined for alternating paths only");
}

/// Unchecked symmetric difference F := F xor E.
inline void exchange(const BipartiteGraph& g, QuasiMatching& f, std::span<const EdgeId> edges) {
    for (EdgeId e : edges) f.toggle(g, e);
}

/// F := F xor E(P) for an alternating or augmenting P. Along an augmenting
/// path the B-start and the A-end each gain one F-edge; every other degree
/// is unchanged.
inline void augment(const BipartiteGraph& g, QuasiMatching& f, const AlternatingPath& p) {
    check_alternating(g, f, p);
    exchange(g, f, p.edges);
}

struct SolverOptions {
    /// Restrict augmenting searches to one degree level and stop at the
    /// first vertex one below it. Requires a minimum F.
    bool prune = true;
};

struct SolverStats {
    std::size_t augmentations = 0;
    std::size_t edges_scanned = 0;
    std::size_t last_search_scanned = 0;
    std::size_t repair_exchanges = 0;  // add_a_vertex fallbacks found by verification
};

namespace detail {

inline constexpr EdgeId no_edge = static_cast<EdgeId>(-1);

// Reusable BFS scratch; an epoch counter avoids clearing between searches.
class PathSearch {
public:
    void reset(const BipartiteGraph& g) {
        if (stamp_a_.size() < g.a_size()) {
            stamp_a_.resize(g.a_size(), 0);
            via_a_.resize(g.a_size(), no_edge);
            dist_a_.resize(g.a_size(), 0);
        }
        if (stamp_b_.size() < g.b_size()) {
            stamp_b_.resize(g.b_size(), 0);
            via_b_.resize(g.b_size(), no_edge);
        }
        if (++epoch_ == 0) {
            std::fill(stamp_a_.begin(), stamp_a_.end(), 0u);
            std::fill(stamp_b_.begin(), stamp_b_.end(), 0u);
            epoch_ = 1;
        }
        queue_.clear();
        found_.clear();
    }

    bool seen(AVertex a) const { return stamp_a_[a.index] == epoch_; }
    bool seen(BVertex b) const { return stamp_b_[b.index] == epoch_; }
    void mark(AVertex a, EdgeId via, std::size_t dist = 0) {
        stamp_a_[a.index] = epoch_;
        via_a_[a.index] = via;
        dist_a_[a.index] = dist;
    }
    void mark(BVertex b, EdgeId via) {
        stamp_b_[b.index] = epoch_;
        via_b_[b.index] = via;
    }
    EdgeId via(AVertex a) const { return via_a_[a.index]; }
    EdgeId via(BVertex b) const { return via_b_[b.index]; }
    std::size_t dist(AVertex a) const { return dist_a_[a.index]; }

    std::vector<PathVertex> queue_;
    std::vector<AVertex> found_;

private:
    std::vector<unsigned> stamp_a_, stamp_b_;
    std::vector<EdgeId> via_a_, via_b_;
    std::vector<std::size_t> dist_a_;
    unsigned epoch_ = 0;
};

// Walks via-links back from A-vertex `end` until a vertex whose via is
// no_edge (A-source) or the B-vertex `stop`.
inline AlternatingPath trace(const BipartiteGraph& g, const PathSearch& s, AVertex end, PathKind kind,
                             std::optional<BVertex> stop) {
    AlternatingPath p;
    p.kind = kind;
    AVertex cur = end;
    p.vertices.push_back(path_vertex(cur));
    for (;;) {
        const EdgeId ea = s.via(cur);
        if (ea == no_edge) break;
        p.edges.push_back(ea);
        const BVertex b = g.edge(ea).b;
        p.vertices.push_back(path_vertex(b));
        if (stop && b == *stop) break;
        const EdgeId eb = s.via(b);
        p.edges.push_back(eb);
        cur = g.edge(eb).a;
        p.vertices.push_back(path_vertex(cur));
    }
    std::reverse(p.vertices.begin(), p.vertices.end());
    std::reverse(p.edges.begin(), p.edges.end());
    return p;
}

// Breadth-first search from `b` alternating non-F (B to A) and F (A to B)
// edges; returns the augmenting path to the reachable A-vertex of least
// F-degree (smallest index on ties).
inline AlternatingPath find_augmenting(const BipartiteGraph& g, const QuasiMatching& f, BVertex start,
                                       bool prune, PathSearch& s, std::size_t& scanned) {
    g.require(start);
    int level = INT_MAX;
    for (EdgeId e : g.incident(start))
        if (!f.contains(e)) level = std::min(level, f.degree(g.edge(e).a));
    if (level == INT_MAX)
        throw NoPathError("B-vertex " + label(start) + " has no non-F edge to augment along");

    s.reset(g);
    s.mark(start, no_edge);
    s.queue_.push_back(path_vertex(start));

    // Nothing anywhere sits below the level: a direct neighbour is optimal.
    if (prune && f.a_count_below(level) == 0) {
        std::optional<EdgeId> pick;
        for (EdgeId e : g.incident(start)) {
            ++scanned;
            if (f.contains(e) || f.degree(g.edge(e).a) != level) continue;
            if (!pick || g.edge(e).a < g.edge(*pick).a) pick = e;
        }
        s.mark(g.edge(*pick).a, *pick);
        return trace(g, s, g.edge(*pick).a, PathKind::augmenting, start);
    }

    std::optional<AVertex> best;
    int best_deg = INT_MAX;
    for (std::size_t qi = 0; qi < s.queue_.size(); ++qi) {
        const BVertex u{s.queue_[qi].index};
        for (EdgeId e : g.incident(u)) {
            ++scanned;
            if (f.contains(e)) continue;
            const AVertex a = g.edge(e).a;
            if (s.seen(a)) continue;
            s.mark(a, e);
            const int da = f.degree(a);
            if (prune && da < level) return trace(g, s, a, PathKind::augmenting, start);
            if (da < best_deg || (da == best_deg && a.index < best->index)) {
                best = a;
                best_deg = da;
            }
            if (prune && da != level) continue;
            for (EdgeId e2 : g.incident(a)) {
                ++scanned;
                if (!f.contains(e2)) continue;
                const BVertex w = g.edge(e2).b;
                if (s.seen(w)) continue;
                s.mark(w, e2);
                s.queue_.push_back(path_vertex(w));
            }
        }
    }
    return trace(g, s, *best, PathKind::augmenting, start);
}

// Breadth-first search from A-vertex `source` along non-F edges out of A
// and F edges out of B: every reached A-vertex has a backward alternating
// path from `source`. Reached vertices land in s.found_ in BFS order.
inline void backward_reach(const BipartiteGraph& g, const QuasiMatching& f, AVertex source, PathSearch& s,
                           std::size_t& scanned) {
    s.reset(g);
    s.mark(source, no_edge, 0);
    s.queue_.push_back(path_vertex(source));
    for (std::size_t qi = 0; qi < s.queue_.size(); ++qi) {
        const AVertex u{s.queue_[qi].index};
        for (EdgeId e : g.incident(u)) {
            ++scanned;
            if (f.contains(e)) continue;
            const BVertex b = g.edge(e).b;
            if (s.seen(b)) continue;
            s.mark(b, e);
            for (EdgeId e2 : g.incident(b)) {
                ++scanned;
                if (!f.contains(e2)) continue;
                const AVertex w = g.edge(e2).a;
                if (s.seen(w)) continue;
                s.mark(w, e2, s.dist(u) + 1);
                s.found_.push_back(w);
                s.queue_.push_back(path_vertex(w));
            }
        }
    }
}

// trace() walks from the far end towards the source; a backward path is
// read from the source outwards.
inline AlternatingPath trace_backward(const BipartiteGraph& g, const PathSearch& s, AVertex end) {
    return trace(g, s, end, PathKind::backward, std::nullopt);
}

}  // namespace detail

/// Minimum g-quasi-matching together with its graph and needs.
///
/// After every public mutation d_F(b) = g(b) for every live b and F is a
/// lexicographically minimum g-quasi-matching. Mutations either complete
/// or throw before touching the state.
class SolverState {
public:
    SolverState() = default;

    /// A state with zero needs and an empty matching.
    explicit SolverState(BipartiteGraph graph, SolverOptions options = {})
        : graph_(std::move(graph)), need_(graph_.b_size()), matching_(graph_), options_(options) {}

    /// Resumes from a given F. F must cover every b exactly g(b) times and
    /// be minimum; otherwise InputError.
    static SolverState from_matching(BipartiteGraph graph, const NeedMap& need, const QuasiMatching& f,
                                     SolverOptions options = {});

    const BipartiteGraph& graph() const noexcept { return graph_; }
    const NeedMap& need() const noexcept { return need_; }
    const QuasiMatching& matching() const noexcept { return matching_; }
    const SolverOptions& options() const noexcept { return options_; }
    const SolverStats& stats() const noexcept { return stats_; }
    void set_options(SolverOptions options) noexcept { options_ = options; }

    /// Number of F-edges credited to b; equals g(b).
    int satisfied(BVertex b) const { return matching_.degree(b); }

    DegreeDistribution distribution() const { return degree_distribution(graph_, matching_); }

    /// Raises g(b) by one and restores minimality with one augmentation.
    void increment_need(BVertex b) {
        graph_.require(b);
        if (static_cast<std::size_t>(matching_.degree(b)) >= graph_.degree(b))
            throw InfeasibleError("need of B-vertex " + label(b) + " would exceed its degree",
                                  {b.index});
        need_.set(b, need_[b] + 1);
        augment_from(b);
    }

    /// Lowers g(b) by one. Only the heaviest F-neighbours a' of b are
    /// candidates: prefers shifting a unit along the shortest backward
    /// alternating path from such an a' to a vertex of degree d_F(a') + 1,
    /// otherwise drops the edge to the heaviest F-neighbour.
    void decrement_need(BVertex b) {
        graph_.require(b);
        if (need_[b] == 0) throw InputError("need of B-vertex " + label(b) + " is already 0");

        std::vector<std::pair<AVertex, EdgeId>> fnbrs;
        for (EdgeId e : graph_.incident(b))
            if (matching_.contains(e)) fnbrs.emplace_back(graph_.edge(e).a, e);
        std::sort(fnbrs.begin(), fnbrs.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        int top = 0;
        for (const auto& c : fnbrs) top = std::max(top, matching_.degree(c.first));
        std::erase_if(fnbrs, [&](const auto& c) { return matching_.degree(c.first) != top; });

        struct Choice {
            std::size_t length;
            AVertex from;
            AVertex to;
            EdgeId cut;
        };
        std::optional<Choice> pick;
        std::optional<AlternatingPath> path;
        for (auto [src, cut] : fnbrs) {
            detail::backward_reach(graph_, matching_, src, search_, stats_.edges_scanned);
            const int want = matching_.degree(src) + 1;
            std::optional<AVertex> hit;
            for (AVertex w : search_.found_) {
                if (hit && search_.dist(w) > search_.dist(*hit)) break;
                if (matching_.degree(w) == want && (!hit || w < *hit)) hit = w;
            }
            if (!hit) continue;
            const std::size_t len = search_.dist(*hit);
            if (!pick || len < pick->length) {
                pick = Choice{len, src, *hit, cut};
                path = detail::trace_backward(graph_, search_, *hit);
            }
        }

        if (pick) {
            exchange(graph_, matching_, path->edges);
            matching_.erase(graph_, pick->cut);
        } else {
            matching_.erase(graph_, fnbrs.front().second);
        }
        need_.set(b, need_[b] - 1);
    }

    /// Inserts a new B-vertex adjacent to `neighbours` and raises its need
    /// one unit at a time.
    BVertex add_b_vertex(std::span<const AVertex> neighbours, int need) {
        detail::require_distinct(graph_, neighbours, graph_.a_size());
        if (need < 0) throw InputError("negative need");
        if (static_cast<std::size_t>(need) > neighbours.size())
            throw InfeasibleError("need of new B-vertex exceeds its degree", {graph_.b_size()});
        const BVertex b = graph_.add_b_vertex();
        for (AVertex a : neighbours) graph_.add_edge(a, b);
        refit();
        for (int i = 0; i < need; ++i) increment_need(b);
        return b;
    }

    /// Lowers g(b) to zero step by step, then deletes b.
    void remove_b_vertex(BVertex b) {
        graph_.require(b);
        while (need_[b] > 0) decrement_need(b);
        graph_.remove_vertex(b);
    }

    /// Inserts a new A-vertex and pulls load onto it while some vertex
    /// reaches it by an alternating path of decline two or more.
    AVertex add_a_vertex(std::span<const BVertex> neighbours) {
        detail::require_distinct(graph_, neighbours, graph_.b_size());
        const AVertex a = graph_.add_a_vertex();
        for (BVertex b : neighbours) graph_.add_edge(a, b);
        refit();

        for (;;) {
            detail::backward_reach(graph_, matching_, a, search_, stats_.edges_scanned);
            std::optional<AVertex> heavy;
            for (AVertex w : search_.found_) {
                if (!heavy) {
                    heavy = w;
                    continue;
                }
                const int dw = matching_.degree(w), dh = matching_.degree(*heavy);
                if (dw > dh || (dw == dh && search_.dist(w) == search_.dist(*heavy) && w < *heavy))
                    heavy = w;
            }
            if (!heavy || matching_.degree(*heavy) - matching_.degree(a) < 2) break;
            const AlternatingPath p = detail::trace_backward(graph_, search_, *heavy);
            exchange(graph_, matching_, p.edges);
        }
        repair();
        return a;
    }

    /// Deletes a; each B-vertex that lost an F-edge is re-covered by one
    /// augmentation.
    void remove_a_vertex(AVertex a) {
        graph_.require(a);
        std::vector<std::size_t> stuck;
        std::vector<BVertex> lost;
        for (EdgeId e : graph_.incident(a)) {
            const BVertex b = graph_.edge(e).b;
            if (static_cast<std::size_t>(need_[b]) + 1 > graph_.degree(b)) stuck.push_back(b.index);
            if (matching_.contains(e)) lost.push_back(b);
        }
        if (!stuck.empty()) {
            std::sort(stuck.begin(), stuck.end());
            throw InfeasibleError("removing A-vertex " + label(a) +
                                      " leaves B-vertices whose need exceeds their degree",
                                  std::move(stuck));
        }
        for (EdgeId e : graph_.incident(a)) matching_.erase(graph_, e);
        graph_.remove_vertex(a);
        std::sort(lost.begin(), lost.end());
        for (BVertex b : lost) augment_from(b);
    }

private:
    friend SolverState solve(const BipartiteGraph&, const NeedMap&, SolverOptions);

    void refit() {
        matching_.fit(graph_);
        need_.resize(std::max(need_.size(), graph_.b_size()));
    }

    void augment_from(BVertex b) {
        const std::size_t before = stats_.edges_scanned;
        const AlternatingPath p =
            detail::find_augmenting(graph_, matching_, b, options_.prune, search_, stats_.edges_scanned);
        stats_.last_search_scanned = stats_.edges_scanned - before;
        exchange(graph_, matching_, p.edges);
        ++stats_.augmentations;
    }

    void repair();

    BipartiteGraph graph_;
    NeedMap need_;
    QuasiMatching matching_;
    SolverOptions options_;
    SolverStats stats_;
    detail::PathSearch search_;
};

/// Certificate returned by verify_minimum. Exactly one of the states holds:
/// minimal, a forward path of decline >= 2, or a B-vertex covered beyond
/// its need (dropping `edge` strictly improves F).
struct SurplusCoverage {
    BVertex b;
    EdgeId edge;
};

struct MinimalityVerdict {
    std::optional<AlternatingPath> violation;
    std::optional<SurplusCoverage> surplus;

    bool minimal() const noexcept { return !violation && !surplus; }
};

/// Decides whether F is a minimum g-quasi-matching.
///
/// For every F-degree level D >= 2 a multi-source search runs from all
/// A-vertices of degree D along forward alternating steps; reaching a
/// vertex of degree <= D - 2 yields the violating path. Without such a path
/// F is minimum iff no B-vertex holds more F-edges than its need.
inline MinimalityVerdict verify_minimum(const BipartiteGraph& g, const NeedMap& need, const QuasiMatching& f) {
    for (BVertex b : g.b_vertices())
        if (f.degree(b) < need[b])
            throw InputError("F covers B-vertex " + label(b) + " below its need");

    const std::vector<AVertex> as = g.a_vertices();
    std::vector<int> levels;
    for (AVertex a : as)
        if (f.degree(a) >= 2) levels.push_back(f.degree(a));
    std::sort(levels.begin(), levels.end(), std::greater<>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    MinimalityVerdict verdict;
    detail::PathSearch s;
    for (int level : levels) {
        s.reset(g);
        for (AVertex a : as)
            if (f.degree(a) == level) {
                s.mark(a, detail::no_edge);
                s.queue_.push_back(path_vertex(a));
            }
        for (std::size_t qi = 0; qi < s.queue_.size(); ++qi) {
            const PathVertex v = s.queue_[qi];
            if (v.side == Side::a) {
                for (EdgeId e : g.incident(AVertex{v.index})) {
                    if (!f.contains(e)) continue;
                    const BVertex b = g.edge(e).b;
                    if (s.seen(b)) continue;
                    s.mark(b, e);
                    s.queue_.push_back(path_vertex(b));
                }
                continue;
            }
            for (EdgeId e : g.incident(BVertex{v.index})) {
                if (f.contains(e)) continue;
                const AVertex w = g.edge(e).a;
                if (s.seen(w)) continue;
                s.mark(w, e);
                if (f.degree(w) <= level - 2) {
                    verdict.violation = detail::trace(g, s, w, PathKind::forward, std::nullopt);
                    return verdict;
                }
                s.queue_.push_back(path_vertex(w));
            }
        }
    }

    for (BVertex b : g.b_vertices())
        if (f.degree(b) > need[b])
            for (EdgeId e : g.incident(b))
                if (f.contains(e)) {
                    verdict.surplus = SurplusCoverage{b, e};
                    return verdict;
                }
    return verdict;
}

inline void SolverState::repair() {
    for (;;) {
        const MinimalityVerdict v = verify_minimum(graph_, need_, matching_);
        if (!v.violation) return;
        exchange(graph_, matching_, v.violation->edges);
        ++stats_.repair_exchanges;
    }
}

inline SolverState SolverState::from_matching(BipartiteGraph graph, const NeedMap& need, const QuasiMatching& f,
                                              SolverOptions options) {
    SolverState state(std::move(graph), options);
    for (BVertex b : state.graph_.b_vertices())
        if (f.degree(b) != need[b])
            throw InputError("F covers B-vertex " + label(b) + " " + std::to_string(f.degree(b)) +
                             " times, need is " + std::to_string(need[b]));
    for (EdgeId e : f.edges()) state.graph_.require(e);
    if (!verify_minimum(state.graph_, need, f).minimal()) throw InputError("F is not a minimum quasi-matching");
    for (BVertex b : state.graph_.b_vertices()) state.need_.set(b, need[b]);
    for (EdgeId e : f.edges()) state.matching_.insert(state.graph_, e);
    return state;
}

/// Augmenting path from b to a least-loaded reachable A-vertex.
inline AlternatingPath find_augmenting_path(const BipartiteGraph& g, const QuasiMatching& f, BVertex b,
                                            bool prune = true) {
    detail::PathSearch s;
    std::size_t scanned = 0;
    return detail::find_augmenting(g, f, b, prune, s, scanned);
}

inline AlternatingPath find_augmenting_path(const SolverState& state, BVertex b) {
    return find_augmenting_path(state.graph(), state.matching(), b, state.options().prune);
}

/// Minimum g-quasi-matching by successive augmentation: B-vertices in index
/// order, g(b) augmentations each, every one ending at a least-loaded
/// reachable A-vertex.
inline SolverState solve(const BipartiteGraph& g, const NeedMap& need, SolverOptions options = {}) {
    for (BVertex b : g.b_vertices())
        if (static_cast<std::size_t>(need[b]) > g.degree(b))
            throw InfeasibleError("need of B-vertex " + label(b) + " exceeds its degree",
                                  {b.index});

    SolverState state(g, options);
    state.need_.resize(g.b_size());
    for (BVertex b : g.b_vertices())
        for (int c = 0; c < need[b]; ++c) {
            state.need_.set(b, state.need_[b] + 1);
            state.augment_from(b);
        }
    return state;
}

/// A matching M inside a minimum semi-matching F: one F-edge per loaded
/// A-vertex. Its size is the maximum matching size of the graph.
inline std::vector<EdgeId> extract_max_matching(const SolverState& state) {
    const BipartiteGraph& g = state.graph();
    for (BVertex b : g.b_vertices())
        if (state.need()[b] != 1) throw InputError("maximum matching extraction needs g = 1 everywhere");
    std::vector<EdgeId> m;
    for (AVertex a : g.a_vertices())
        for (EdgeId e : g.incident(a))
            if (state.matching().contains(e)) {
                m.push_back(e);
                break;
            }
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace qmatch

#endif  // QMATCH_QUASI_MATCHING_HPP
