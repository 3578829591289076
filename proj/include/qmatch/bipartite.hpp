#ifndef QMATCH_BIPARTITE_HPP
#define QMATCH_BIPARTITE_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "qmatch/errors.hpp"

namespace qmatch {

// Vertices are dense 0-based indices per side. Removed vertices keep their
// slot so that ids stay stable across online updates.
struct AVertex {
    std::size_t index = 0;
    friend auto operator<=>(const AVertex&, const AVertex&) = default;
};

struct BVertex {
    std::size_t index = 0;
    friend auto operator<=>(const BVertex&, const BVertex&) = default;
};

using EdgeId = std::size_t;

/// Display names, 1-based: a1, b2.
inline std::string label(AVertex a) { return "a" + std::to_string(a.index + 1); }
inline std::string label(BVertex b) { return "b" + std::to_string(b.index + 1); }

struct Edge {
    AVertex a;
    BVertex b;
};

/// Simple bipartite graph G = A + B with insertion-ordered edge ids.
///
/// Adjacency is kept symmetric: every live edge id appears exactly once in
/// the incidence list of each endpoint. Vertex and edge removal tombstones
/// the slot; ids are never reused.
class BipartiteGraph {
public:
    BipartiteGraph() = default;

    BipartiteGraph(std::size_t a_count, std::size_t b_count)
        : adj_a_(a_count), adj_b_(b_count), a_alive_(a_count, 1), b_alive_(b_count, 1),
          a_live_(a_count), b_live_(b_count) {}

    /// Builds a graph from 0-based (a, b) pairs; ids follow list order.
    static BipartiteGraph from_edges(std::size_t a_count, std::size_t b_count,
                                     std::span<const std::pair<std::size_t, std::size_t>> edges) {
        BipartiteGraph g(a_count, b_count);
        for (auto [a, b] : edges) g.add_edge(AVertex{a}, BVertex{b});
        return g;
    }

    // Slot counts, including removed vertices.
    std::size_t a_size() const noexcept { return adj_a_.size(); }
    std::size_t b_size() const noexcept { return adj_b_.size(); }
    std::size_t edge_slots() const noexcept { return edges_.size(); }

    std::size_t a_count() const noexcept { return a_live_; }
    std::size_t b_count() const noexcept { return b_live_; }
    std::size_t edge_count() const noexcept { return edge_live_; }

    bool contains(AVertex a) const noexcept { return a.index < a_size() && a_alive_[a.index]; }
    bool contains(BVertex b) const noexcept { return b.index < b_size() && b_alive_[b.index]; }
    bool contains(EdgeId e) const noexcept { return e < edges_.size() && edge_alive_[e]; }

    void require(AVertex a) const {
        if (!contains(a)) throw InputError("unknown A-vertex " + label(a));
    }
    void require(BVertex b) const {
        if (!contains(b)) throw InputError("unknown B-vertex " + label(b));
    }
    void require(EdgeId e) const {
        if (!contains(e)) throw InputError("unknown edge " + std::to_string(e));
    }

    const Edge& edge(EdgeId e) const { return edges_[e]; }

    /// Live incident edge ids, in insertion order. Unchecked.
    std::span<const EdgeId> incident(AVertex a) const { return adj_a_[a.index]; }
    std::span<const EdgeId> incident(BVertex b) const { return adj_b_[b.index]; }

    std::size_t degree(AVertex a) const {
        require(a);
        return adj_a_[a.index].size();
    }
    std::size_t degree(BVertex b) const {
        require(b);
        return adj_b_[b.index].size();
    }

    std::vector<AVertex> a_vertices() const {
        std::vector<AVertex> out;
        out.reserve(a_live_);
        for (std::size_t i = 0; i < a_size(); ++i)
            if (a_alive_[i]) out.push_back(AVertex{i});
        return out;
    }

    std::vector<BVertex> b_vertices() const {
        std::vector<BVertex> out;
        out.reserve(b_live_);
        for (std::size_t j = 0; j < b_size(); ++j)
            if (b_alive_[j]) out.push_back(BVertex{j});
        return out;
    }

    std::vector<EdgeId> edge_ids() const {
        std::vector<EdgeId> out;
        out.reserve(edge_live_);
        for (EdgeId e = 0; e < edges_.size(); ++e)
            if (edge_alive_[e]) out.push_back(e);
        return out;
    }

    std::optional<EdgeId> find_edge(AVertex a, BVertex b) const {
        if (!contains(a) || !contains(b)) return std::nullopt;
        const auto& small = degree(a) <= degree(b) ? adj_a_[a.index] : adj_b_[b.index];
        for (EdgeId e : small)
            if (edges_[e].a == a && edges_[e].b == b) return e;
        return std::nullopt;
    }

    EdgeId add_edge(AVertex a, BVertex b) {
        require(a);
        require(b);
        if (!keys_.insert(key(a, b)).second)
            throw InputError("duplicate edge " + label(a) + label(b));
        const EdgeId id = edges_.size();
        edges_.push_back(Edge{a, b});
        edge_alive_.push_back(1);
        adj_a_[a.index].push_back(id);
        adj_b_[b.index].push_back(id);
        ++edge_live_;
        return id;
    }

    AVertex add_a_vertex() {
        adj_a_.emplace_back();
        a_alive_.push_back(1);
        ++a_live_;
        return AVertex{adj_a_.size() - 1};
    }

    BVertex add_b_vertex() {
        adj_b_.emplace_back();
        b_alive_.push_back(1);
        ++b_live_;
        return BVertex{adj_b_.size() - 1};
    }

    void remove_edge(EdgeId e) {
        require(e);
        const Edge ed = edges_[e];
        erase_from(adj_a_[ed.a.index], e);
        erase_from(adj_b_[ed.b.index], e);
        keys_.erase(key(ed.a, ed.b));
        edge_alive_[e] = 0;
        --edge_live_;
    }

    void remove_vertex(AVertex a) {
        require(a);
        const std::vector<EdgeId> inc(adj_a_[a.index]);
        for (EdgeId e : inc) remove_edge(e);
        a_alive_[a.index] = 0;
        --a_live_;
    }

    void remove_vertex(BVertex b) {
        require(b);
        const std::vector<EdgeId> inc(adj_b_[b.index]);
        for (EdgeId e : inc) remove_edge(e);
        b_alive_[b.index] = 0;
        --b_live_;
    }

    /// N(X): live B-neighbours of the given A-vertices, ascending.
    std::vector<BVertex> neighbours(std::span<const AVertex> xs) const {
        std::vector<char> mark(b_size(), 0);
        for (AVertex a : xs) {
            require(a);
            for (EdgeId e : incident(a)) mark[edges_[e].b.index] = 1;
        }
        std::vector<BVertex> out;
        for (std::size_t j = 0; j < mark.size(); ++j)
            if (mark[j]) out.push_back(BVertex{j});
        return out;
    }

    /// N(Y): live A-neighbours of the given B-vertices, ascending.
    std::vector<AVertex> neighbours(std::span<const BVertex> ys) const {
        std::vector<char> mark(a_size(), 0);
        for (BVertex b : ys) {
            require(b);
            for (EdgeId e : incident(b)) mark[edges_[e].a.index] = 1;
        }
        std::vector<AVertex> out;
        for (std::size_t i = 0; i < mark.size(); ++i)
            if (mark[i]) out.push_back(AVertex{i});
        return out;
    }

    friend bool operator==(const BipartiteGraph& x, const BipartiteGraph& y) {
        if (x.a_alive_ != y.a_alive_ || x.b_alive_ != y.b_alive_) return false;
        if (x.edge_alive_ != y.edge_alive_) return false;
        for (EdgeId e = 0; e < x.edges_.size(); ++e)
            if (x.edge_alive_[e] &&
                (x.edges_[e].a != y.edges_[e].a || x.edges_[e].b != y.edges_[e].b))
                return false;
        return true;
    }

private:
    static std::uint64_t key(AVertex a, BVertex b) noexcept {
        return (static_cast<std::uint64_t>(a.index) << 32) ^ static_cast<std::uint64_t>(b.index);
    }

    static void erase_from(std::vector<EdgeId>& list, EdgeId e) {
        list.erase(std::find(list.begin(), list.end(), e));
    }

    std::vector<Edge> edges_;
    std::vector<char> edge_alive_;
    std::vector<std::vector<EdgeId>> adj_a_;
    std::vector<std::vector<EdgeId>> adj_b_;
    std::vector<char> a_alive_;
    std::vector<char> b_alive_;
    std::size_t a_live_ = 0;
    std::size_t b_live_ = 0;
    std::size_t edge_live_ = 0;
    std::unordered_set<std::uint64_t> keys_;
};

/// Non-negative integer per vertex of one side. NeedMap holds g on B,
/// CapacityMap holds f on A.
template <typename Vertex>
class VertexCounts {
public:
    VertexCounts() = default;
    explicit VertexCounts(std::size_t size, int value = 0) : values_(size, value) {
        if (value < 0) throw InputError("negative vertex count");
    }
    explicit VertexCounts(std::vector<int> values) : values_(std::move(values)) {
        for (int v : values_)
            if (v < 0) throw InputError("negative vertex count");
    }

    int operator[](Vertex v) const { return v.index < values_.size() ? values_[v.index] : 0; }

    void set(Vertex v, int value) {
        if (value < 0) throw InputError("negative vertex count");
        if (v.index >= values_.size()) values_.resize(v.index + 1, 0);
        values_[v.index] = value;
    }

    std::size_t size() const noexcept { return values_.size(); }
    void resize(std::size_t n) { values_.resize(n, 0); }

    /// Sum over the given vertices (g(Y) / f(X)).
    std::int64_t total(std::span<const Vertex> vs) const {
        std::int64_t s = 0;
        for (Vertex v : vs) s += (*this)[v];
        return s;
    }

    std::int64_t total() const { return std::accumulate(values_.begin(), values_.end(), std::int64_t{0}); }

    std::span<const int> values() const noexcept { return values_; }

    friend bool operator==(const VertexCounts&, const VertexCounts&) = default;

private:
    std::vector<int> values_;
};

using NeedMap = VertexCounts<BVertex>;
using CapacityMap = VertexCounts<AVertex>;

/// f(a) = d(a) for every live A-vertex: the capacity that imposes nothing.
inline CapacityMap degree_capacities(const BipartiteGraph& g) {
    CapacityMap f(g.a_size());
    for (AVertex a : g.a_vertices()) f.set(a, static_cast<int>(g.degree(a)));
    return f;
}

/// An edge subset F with cached F-degrees on both sides.
class QuasiMatching {
public:
    QuasiMatching() = default;
    explicit QuasiMatching(const BipartiteGraph& g)
        : member_(g.edge_slots(), 0), deg_a_(g.a_size(), 0), deg_b_(g.b_size(), 0), a_at_(1, g.a_size()) {}

    static QuasiMatching from_edges(const BipartiteGraph& g, std::span<const EdgeId> edges) {
        QuasiMatching f(g);
        for (EdgeId e : edges) {
            g.require(e);
            if (f.contains(e)) throw InputError("edge listed twice in quasi-matching");
            f.insert(g, e);
        }
        return f;
    }

    /// Grows the caches after vertices or edges were added to `g`.
    void fit(const BipartiteGraph& g) {
        member_.resize(g.edge_slots(), 0);
        if (a_at_.empty()) a_at_.push_back(0);
        a_at_[0] += g.a_size() - std::min(g.a_size(), deg_a_.size());
        deg_a_.resize(g.a_size(), 0);
        deg_b_.resize(g.b_size(), 0);
    }

    bool contains(EdgeId e) const noexcept { return e < member_.size() && member_[e]; }

    void insert(const BipartiteGraph& g, EdgeId e) {
        if (member_[e]) return;
        member_[e] = 1;
        const int d = deg_a_[g.edge(e).a.index]++;
        if (a_at_.size() < static_cast<std::size_t>(d) + 2) a_at_.resize(d + 2, 0);
        --a_at_[d];
        ++a_at_[d + 1];
        ++deg_b_[g.edge(e).b.index];
        ++size_;
    }

    void erase(const BipartiteGraph& g, EdgeId e) {
        if (!member_[e]) return;
        member_[e] = 0;
        const int d = deg_a_[g.edge(e).a.index]--;
        --a_at_[d];
        ++a_at_[d - 1];
        --deg_b_[g.edge(e).b.index];
        --size_;
    }

    void toggle(const BipartiteGraph& g, EdgeId e) {
        if (member_[e])
            erase(g, e);
        else
            insert(g, e);
    }

    int degree(AVertex a) const { return a.index < deg_a_.size() ? deg_a_[a.index] : 0; }
    int degree(BVertex b) const { return b.index < deg_b_.size() ? deg_b_[b.index] : 0; }
    std::size_t size() const noexcept { return size_; }

    /// Number of A slots (isolated and removed ones included) with F-degree
    /// below `d`.
    std::size_t a_count_below(int d) const {
        std::size_t n = 0;
        for (int k = 0; k < d && static_cast<std::size_t>(k) < a_at_.size(); ++k) n += a_at_[k];
        return n;
    }

    std::vector<EdgeId> edges() const {
        std::vector<EdgeId> out;
        out.reserve(size_);
        for (EdgeId e = 0; e < member_.size(); ++e)
            if (member_[e]) out.push_back(e);
        return out;
    }

    /// Recounts every incidence against `g` and compares with the caches.
    bool coherent_with(const BipartiteGraph& g) const {
        std::vector<int> da(deg_a_.size(), 0), db(deg_b_.size(), 0);
        std::size_t n = 0;
        for (EdgeId e = 0; e < member_.size(); ++e) {
            if (!member_[e]) continue;
            if (!g.contains(e)) return false;
            ++da[g.edge(e).a.index];
            ++db[g.edge(e).b.index];
            ++n;
        }
        std::vector<std::size_t> at(a_at_.size(), 0);
        for (int d : da) {
            if (static_cast<std::size_t>(d) >= at.size()) return false;
            ++at[d];
        }
        return da == deg_a_ && db == deg_b_ && n == size_ && at == a_at_;
    }

    /// Edge-set equality; caches follow.
    friend bool operator==(const QuasiMatching& x, const QuasiMatching& y) {
        return x.edges() == y.edges();
    }

private:
    std::vector<char> member_;
    std::vector<int> deg_a_;
    std::vector<int> deg_b_;
    std::vector<std::size_t> a_at_;  // a_at_[d]: A slots of F-degree d
    std::size_t size_ = 0;
};

/// Non-increasing degree sequence, compared lexicographically.
class DegreeDistribution {
public:
    DegreeDistribution() = default;
    explicit DegreeDistribution(std::vector<int> values) : values_(std::move(values)) {
        std::sort(values_.begin(), values_.end(), std::greater<>());
    }

    std::span<const int> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(values_[i]);
        }
        return s;
    }

    friend bool operator==(const DegreeDistribution&, const DegreeDistribution&) = default;

private:
    std::vector<int> values_;
};

/// Lexicographic comparison of two distributions over the same vertex set.
inline std::strong_ordering lex_compare(const DegreeDistribution& p, const DegreeDistribution& q) {
    if (p.size() != q.size())
        throw InputError("distributions differ in length (" + std::to_string(p.size()) + " vs " +
                         std::to_string(q.size()) + ")");
    const auto pv = p.values();
    const auto qv = q.values();
    return std::lexicographical_compare_three_way(pv.begin(), pv.end(), qv.begin(), qv.end());
}

namespace detail {

template <typename Vertex>
void require_distinct(const BipartiteGraph& g, std::span<const Vertex> vs, std::size_t slots) {
    std::vector<char> seen(slots, 0);
    for (Vertex v : vs) {
        g.require(v);
        if (seen[v.index]) throw InputError("vertex listed twice in set");
        seen[v.index] = 1;
    }
}

}  // namespace detail

/// d_F(X): F-degrees of X, sorted descending.
inline DegreeDistribution degree_distribution(const BipartiteGraph& g, const QuasiMatching& f,
                                              std::span<const AVertex> xs) {
    detail::require_distinct(g, xs, g.a_size());
    std::vector<int> d;
    d.reserve(xs.size());
    for (AVertex a : xs) d.push_back(f.degree(a));
    return DegreeDistribution(std::move(d));
}

/// d_F(A) over every live A-vertex.
inline DegreeDistribution degree_distribution(const BipartiteGraph& g, const QuasiMatching& f) {
    std::vector<int> d;
    d.reserve(g.a_count());
    for (AVertex a : g.a_vertices()) d.push_back(f.degree(a));
    return DegreeDistribution(std::move(d));
}

/// Smallest distribution any g-quasi-matching can induce on X.
///
/// With Y = N(X), t = #edges between Y and A - X and k = |X|, the need
/// g(Y) - t must land on X; spread evenly that is r copies of d + 1 and
/// k - r copies of d where g(Y) - t = d k + r. Clamped to zeros when
/// g(Y) <= t.
inline DegreeDistribution lower_bound_distribution(const BipartiteGraph& g, const NeedMap& need,
                                                   std::span<const AVertex> xs) {
    if (xs.empty()) throw InputError("lower bound needs a nonempty vertex set");
    detail::require_distinct(g, xs, g.a_size());

    std::vector<char> in_x(g.a_size(), 0);
    for (AVertex a : xs) in_x[a.index] = 1;
    const std::vector<BVertex> ys = g.neighbours(xs);

    std::int64_t outside = 0;
    for (BVertex b : ys)
        for (EdgeId e : g.incident(b))
            if (!in_x[g.edge(e).a.index]) ++outside;

    const auto k = static_cast<std::int64_t>(xs.size());
    const std::int64_t rest = std::max<std::int64_t>(0, need.total(ys) - outside);
    const std::int64_t d = rest / k;
    const std::int64_t r = rest % k;

    std::vector<int> values(xs.size(), static_cast<int>(d));
    std::fill_n(values.begin(), r, static_cast<int>(d + 1));
    return DegreeDistribution(std::move(values));
}

/// f(X, Y) = sum over x in X of min(f(x), d_Y(x)).
inline std::int64_t relative_availability(const BipartiteGraph& g, const CapacityMap& cap,
                                          std::span<const AVertex> xs, std::span<const BVertex> ys) {
    detail::require_distinct(g, xs, g.a_size());
    detail::require_distinct(g, ys, g.b_size());
    std::vector<char> in_y(g.b_size(), 0);
    for (BVertex b : ys) in_y[b.index] = 1;

    std::int64_t total = 0;
    for (AVertex a : xs) {
        std::int64_t dy = 0;
        for (EdgeId e : g.incident(a))
            if (in_y[g.edge(e).b.index]) ++dy;
        total += std::min<std::int64_t>(cap[a], dy);
    }
    return total;
}

}  // namespace qmatch

#endif  // QMATCH_BIPARTITE_HPP
