#ifndef QMATCH_FEASIBILITY_HPP
#define QMATCH_FEASIBILITY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "qmatch/bipartite.hpp"
#include "qmatch/errors.hpp"

namespace qmatch {

struct FlowArc {
    std::size_t from = 0;
    std::size_t to = 0;
    std::int64_t capacity = 0;
    std::int64_t flow = 0;
};

/// source -> a (capacity f(a)), a -> b (capacity 1 per graph edge),
/// b -> sink (capacity g(b)). Node 0 is the source, node 1 the sink, then
/// one node per A slot followed by one per B slot.
class FlowNetwork {
public:
    static constexpr std::size_t source = 0;
    static constexpr std::size_t sink = 1;

    FlowNetwork(std::size_t a_slots, std::size_t b_slots)
        : a_slots_(a_slots), residual_(2 + a_slots + b_slots) {}

    std::size_t node_count() const noexcept { return residual_.size(); }
    std::size_t a_node(AVertex a) const noexcept { return 2 + a.index; }
    std::size_t b_node(BVertex b) const noexcept { return 2 + a_slots_ + b.index; }

    std::size_t add_arc(std::size_t from, std::size_t to, std::int64_t capacity) {
        const std::size_t id = arcs_.size();
        arcs_.push_back(FlowArc{from, to, capacity, 0});
        residual_[from].push_back(Ref{id, true});
        residual_[to].push_back(Ref{id, false});
        return id;
    }

    std::span<const FlowArc> arcs() const noexcept { return arcs_; }
    std::span<FlowArc> arcs() noexcept { return arcs_; }

    /// Graph edge carried by a middle arc, if any.
    std::optional<EdgeId> edge_of(std::size_t arc) const {
        if (arc < edge_of_arc_.size() && edge_of_arc_[arc] != none) return edge_of_arc_[arc];
        return std::nullopt;
    }
    void tag(std::size_t arc, EdgeId e) {
        if (edge_of_arc_.size() <= arc) edge_of_arc_.resize(arc + 1, none);
        edge_of_arc_[arc] = e;
    }

    std::int64_t value() const {
        std::int64_t v = 0;
        for (const FlowArc& a : arcs_)
            if (a.from == source) v += a.flow;
        return v;
    }

    // Residual arc handle: forward uses capacity - flow, backward uses flow.
    struct Ref {
        std::size_t arc;
        bool forward;
    };
    std::span<const Ref> residual(std::size_t node) const { return residual_[node]; }

    std::int64_t residual_capacity(Ref r) const {
        const FlowArc& a = arcs_[r.arc];
        return r.forward ? a.capacity - a.flow : a.flow;
    }
    std::size_t head(Ref r) const { return r.forward ? arcs_[r.arc].to : arcs_[r.arc].from; }

private:
    static constexpr EdgeId none = static_cast<EdgeId>(-1);
    std::size_t a_slots_;
    std::vector<FlowArc> arcs_;
    std::vector<std::vector<Ref>> residual_;
    std::vector<EdgeId> edge_of_arc_;
};

/// Network whose integral flows of value g(B) are the f,g-quasi-matchings.
inline FlowNetwork build_network(const BipartiteGraph& g, const CapacityMap& cap, const NeedMap& need) {
    FlowNetwork net(g.a_size(), g.b_size());
    for (AVertex a : g.a_vertices()) net.add_arc(FlowNetwork::source, net.a_node(a), cap[a]);
    for (EdgeId e : g.edge_ids()) {
        const Edge& ed = g.edge(e);
        net.tag(net.add_arc(net.a_node(ed.a), net.b_node(ed.b), 1), e);
    }
    for (BVertex b : g.b_vertices()) net.add_arc(net.b_node(b), FlowNetwork::sink, need[b]);
    return net;
}

/// Shortest-augmenting-path maximum flow (Edmonds-Karp) on top of whatever
/// flow `net` already carries. Returns the final flow value.
inline std::int64_t max_flow(FlowNetwork& net) {
    const std::size_t n = net.node_count();
    std::vector<std::optional<FlowNetwork::Ref>> parent(n);
    std::vector<std::size_t> queue;
    for (;;) {
        std::fill(parent.begin(), parent.end(), std::nullopt);
        std::vector<char> seen(n, 0);
        seen[FlowNetwork::source] = 1;
        queue.assign(1, FlowNetwork::source);
        for (std::size_t qi = 0; qi < queue.size() && !seen[FlowNetwork::sink]; ++qi) {
            const std::size_t u = queue[qi];
            for (const auto& r : net.residual(u)) {
                const std::size_t v = net.head(r);
                if (seen[v] || net.residual_capacity(r) <= 0) continue;
                seen[v] = 1;
                parent[v] = r;
                queue.push_back(v);
            }
        }
        if (!seen[FlowNetwork::sink]) break;

        std::int64_t push = std::numeric_limits<std::int64_t>::max();
        for (std::size_t v = FlowNetwork::sink; v != FlowNetwork::source;) {
            const auto r = *parent[v];
            push = std::min(push, net.residual_capacity(r));
            v = r.forward ? net.arcs()[r.arc].from : net.arcs()[r.arc].to;
        }
        for (std::size_t v = FlowNetwork::sink; v != FlowNetwork::source;) {
            const auto r = *parent[v];
            FlowArc& arc = net.arcs()[r.arc];
            arc.flow += r.forward ? push : -push;
            v = r.forward ? arc.from : arc.to;
        }
    }
    return net.value();
}

/// Nodes reachable from the source in the residual network.
inline std::vector<char> source_side(const FlowNetwork& net) {
    std::vector<char> seen(net.node_count(), 0);
    std::vector<std::size_t> queue{FlowNetwork::source};
    seen[FlowNetwork::source] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (const auto& r : net.residual(queue[qi])) {
            const std::size_t v = net.head(r);
            if (seen[v] || net.residual_capacity(r) <= 0) continue;
            seen[v] = 1;
            queue.push_back(v);
        }
    return seen;
}

struct FeasibilityVerdict {
    std::int64_t flow_value = 0;
    std::int64_t total_need = 0;
    std::optional<QuasiMatching> witness;        // d_F(b) = g(b), d_F(a) <= f(a)
    std::optional<std::vector<BVertex>> violating;  // f(N(Y), Y) < g(Y)

    bool feasible() const noexcept { return witness.has_value(); }
};

/// Decides whether an f,g-quasi-matching exists.
///
/// A flow of value g(B) gives the witness through its saturated middle
/// arcs. Otherwise the B-vertices left outside the residual source side form
/// a set Y whose relative availability falls short of its need.
inline FeasibilityVerdict feasible(const BipartiteGraph& g, const CapacityMap& cap, const NeedMap& need) {
    FlowNetwork net = build_network(g, cap, need);
    FeasibilityVerdict v;
    v.flow_value = max_flow(net);
    v.total_need = need.total(g.b_vertices());

    if (v.flow_value == v.total_need) {
        QuasiMatching f(g);
        for (std::size_t i = 0; i < net.arcs().size(); ++i)
            if (auto e = net.edge_of(i); e && net.arcs()[i].flow == 1) f.insert(g, *e);
        v.witness = std::move(f);
        return v;
    }

    const std::vector<char> s = source_side(net);
    std::vector<BVertex> ys;
    for (BVertex b : g.b_vertices())
        if (!s[net.b_node(b)]) ys.push_back(b);
    v.violating = std::move(ys);
    return v;
}

struct HallVerdict {
    std::optional<std::vector<BVertex>> violating;
    bool all_pass() const noexcept { return !violating; }
};

inline constexpr std::size_t hall_enumeration_limit = 20;

/// Checks f(N(Y), Y) >= g(Y) over every subset Y of B, in increasing
/// bitmask order, and reports the first violation.
inline HallVerdict hall_enumerate(const BipartiteGraph& g, const CapacityMap& cap, const NeedMap& need) {
    const std::vector<BVertex> bs = g.b_vertices();
    if (bs.size() > hall_enumeration_limit)
        throw InputError("subset enumeration is limited to " + std::to_string(hall_enumeration_limit) +
                         " B-vertices");
    const std::vector<AVertex> as = g.a_vertices();

    // dy[a] = d_Y(a), kept incrementally over a Gray-code walk.
    std::vector<std::int64_t> dy(g.a_size(), 0);
    std::vector<char> in_y(bs.size(), 0);
    std::int64_t need_y = 0;

    const std::uint64_t subsets = std::uint64_t{1} << bs.size();
    std::optional<std::uint64_t> first;
    for (std::uint64_t i = 1; i < subsets; ++i) {
        const auto bit = static_cast<std::size_t>(__builtin_ctzll(i));
        const int sign = in_y[bit] ? -1 : 1;
        in_y[bit] ^= 1;
        need_y += sign * need[bs[bit]];
        for (EdgeId e : g.incident(bs[bit])) dy[g.edge(e).a.index] += sign;

        std::int64_t avail = 0;
        for (AVertex a : as) avail += std::min<std::int64_t>(cap[a], dy[a.index]);
        if (avail < need_y) {
            const std::uint64_t mask = i ^ (i >> 1);
            if (!first || mask < *first) first = mask;
        }
    }

    HallVerdict v;
    if (first) {
        std::vector<BVertex> ys;
        for (std::size_t k = 0; k < bs.size(); ++k)
            if ((*first >> k) & 1U) ys.push_back(bs[k]);
        v.violating = std::move(ys);
    }
    return v;
}

}  // namespace qmatch

#endif  // QMATCH_FEASIBILITY_HPP
