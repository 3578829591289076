#ifndef QMATCH_IO_HPP
#define QMATCH_IO_HPP

// Line-oriented text formats, 1-based indices, '#' starts a comment.
//
//   bipartite:  p bqm <|A|> <|B|>
//               a <i> <capacity>      default: degree of a_i
//               b <j> <need>          default: 1
//               e <i> <j>
//               m <i> <j>             optional quasi-matching edge (verify)
//
//   rooted:     p rooted <n> <m>
//               root <v>
//               e <u> <v>
//
//   events:     inc <j> | dec <j> | addb <need> <i>... | rmb <j>
//               adda <j>... | rma <i>

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmatch/bipartite.hpp"
#include "qmatch/errors.hpp"
#include "qmatch/routing.hpp"

namespace qmatch::io {

struct BipartiteInstance {
    BipartiteGraph graph;
    CapacityMap capacity;
    NeedMap need;
    std::optional<QuasiMatching> matching;  // present iff the file had m lines
};

namespace detail {

struct Line {
    std::size_t number;
    std::vector<std::string_view> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        Line l{number, {}};
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            const std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
            if (i > start) l.tokens.push_back(line.substr(start, i - start));
        }
        if (!l.tokens.empty()) lines.push_back(std::move(l));
    }
    return lines;
}

inline long long integer(const Line& l, std::size_t k) {
    const std::string_view t = l.tokens[k];
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        throw ParseError(l.number, "expected an integer, got '" + std::string(t) + "'");
    return v;
}

inline void arity(const Line& l, std::size_t n) {
    if (l.tokens.size() != n)
        throw ParseError(l.number, "'" + std::string(l.tokens[0]) + "' takes " + std::to_string(n - 1) +
                                       " arguments");
}

// 1-based index in [1, count] -> 0-based.
inline std::size_t index(const Line& l, std::size_t k, std::size_t count, const char* what) {
    const long long v = integer(l, k);
    if (v < 1 || static_cast<unsigned long long>(v) > count)
        throw ParseError(l.number, std::string(what) + " index " + std::to_string(v) + " out of range");
    return static_cast<std::size_t>(v - 1);
}

inline int count_value(const Line& l, std::size_t k, const char* what) {
    const long long v = integer(l, k);
    if (v < 0 || v > 1'000'000'000) throw ParseError(l.number, std::string(what) + " must be non-negative");
    return static_cast<int>(v);
}

}  // namespace detail

inline BipartiteInstance parse_bipartite(std::string_view text) {
    using namespace detail;
    const std::vector<Line> lines = tokenize(text);
    if (lines.empty() || lines[0].tokens[0] != "p")
        throw ParseError(lines.empty() ? 1 : lines[0].number, "missing 'p bqm' header");
    const Line& head = lines[0];
    arity(head, 4);
    if (head.tokens[1] != "bqm") throw ParseError(head.number, "expected 'p bqm'");
    const long long na = integer(head, 2), nb = integer(head, 3);
    if (na < 1) throw ParseError(head.number, "|A| must be positive");
    if (nb < 0) throw ParseError(head.number, "|B| must be non-negative");

    BipartiteInstance inst;
    inst.graph = BipartiteGraph(static_cast<std::size_t>(na), static_cast<std::size_t>(nb));
    std::vector<std::optional<int>> cap(inst.graph.a_size());
    std::vector<std::optional<int>> need(inst.graph.b_size());
    std::vector<std::pair<const Line*, std::pair<std::size_t, std::size_t>>> members;

    for (std::size_t k = 1; k < lines.size(); ++k) {
        const Line& l = lines[k];
        const std::string_view op = l.tokens[0];
        if (op == "a") {
            arity(l, 3);
            const std::size_t i = index(l, 1, inst.graph.a_size(), "A-vertex");
            if (cap[i]) throw ParseError(l.number, "capacity of a" + std::to_string(i + 1) + " set twice");
            cap[i] = count_value(l, 2, "capacity");
        } else if (op == "b") {
            arity(l, 3);
            const std::size_t j = index(l, 1, inst.graph.b_size(), "B-vertex");
            if (need[j]) throw ParseError(l.number, "need of b" + std::to_string(j + 1) + " set twice");
            need[j] = count_value(l, 2, "need");
        } else if (op == "e") {
            arity(l, 3);
            const std::size_t i = index(l, 1, inst.graph.a_size(), "A-vertex");
            const std::size_t j = index(l, 2, inst.graph.b_size(), "B-vertex");
            if (inst.graph.find_edge(AVertex{i}, BVertex{j}))
                throw ParseError(l.number, "duplicate edge " + std::to_string(i + 1) + " " + std::to_string(j + 1));
            inst.graph.add_edge(AVertex{i}, BVertex{j});
        } else if (op == "m") {
            arity(l, 3);
            members.push_back({&l,
                               {index(l, 1, inst.graph.a_size(), "A-vertex"),
                                index(l, 2, inst.graph.b_size(), "B-vertex")}});
        } else if (op == "p") {
            throw ParseError(l.number, "second header line");
        } else {
            throw ParseError(l.number, "unknown directive '" + std::string(op) + "'");
        }
    }

    inst.capacity = CapacityMap(inst.graph.a_size());
    for (std::size_t i = 0; i < cap.size(); ++i)
        inst.capacity.set(AVertex{i}, cap[i].value_or(static_cast<int>(inst.graph.degree(AVertex{i}))));
    inst.need = NeedMap(inst.graph.b_size());
    for (std::size_t j = 0; j < need.size(); ++j) inst.need.set(BVertex{j}, need[j].value_or(1));

    if (!members.empty()) {
        QuasiMatching f(inst.graph);
        for (const auto& [l, ij] : members) {
            const auto e = inst.graph.find_edge(AVertex{ij.first}, BVertex{ij.second});
            if (!e) throw ParseError(l->number, "matching edge is not a graph edge");
            if (f.contains(*e)) throw ParseError(l->number, "matching edge listed twice");
            f.insert(inst.graph, *e);
        }
        inst.matching = std::move(f);
    }
    return inst;
}

/// Canonical text: header, every capacity, every need, edges in id order,
/// then matching edges sorted by (i, j).
inline std::string serialize(const BipartiteInstance& inst) {
    const BipartiteGraph& g = inst.graph;
    std::ostringstream os;
    os << "p bqm " << g.a_size() << ' ' << g.b_size() << '\n';
    for (std::size_t i = 0; i < g.a_size(); ++i) os << "a " << i + 1 << ' ' << inst.capacity[AVertex{i}] << '\n';
    for (std::size_t j = 0; j < g.b_size(); ++j) os << "b " << j + 1 << ' ' << inst.need[BVertex{j}] << '\n';
    for (EdgeId e : g.edge_ids()) os << "e " << g.edge(e).a.index + 1 << ' ' << g.edge(e).b.index + 1 << '\n';
    if (inst.matching) {
        std::vector<std::pair<std::size_t, std::size_t>> ms;
        for (EdgeId e : inst.matching->edges()) ms.emplace_back(g.edge(e).a.index + 1, g.edge(e).b.index + 1);
        std::sort(ms.begin(), ms.end());
        for (auto [i, j] : ms) os << "m " << i << ' ' << j << '\n';
    }
    return os.str();
}

inline RootedGraph parse_rooted(std::string_view text) {
    using namespace detail;
    const std::vector<Line> lines = tokenize(text);
    if (lines.empty() || lines[0].tokens[0] != "p")
        throw ParseError(lines.empty() ? 1 : lines[0].number, "missing 'p rooted' header");
    const Line& head = lines[0];
    arity(head, 4);
    if (head.tokens[1] != "rooted") throw ParseError(head.number, "expected 'p rooted'");
    const long long n = integer(head, 2), m = integer(head, 3);
    if (n < 1) throw ParseError(head.number, "vertex count must be positive");
    if (m < 0) throw ParseError(head.number, "edge count must be non-negative");

    std::optional<std::size_t> root;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const Line& l = lines[k];
        const std::string_view op = l.tokens[0];
        if (op == "root") {
            arity(l, 2);
            if (root) throw ParseError(l.number, "root given twice");
            root = index(l, 1, static_cast<std::size_t>(n), "vertex");
        } else if (op == "e") {
            arity(l, 3);
            const std::size_t u = index(l, 1, static_cast<std::size_t>(n), "vertex");
            const std::size_t v = index(l, 2, static_cast<std::size_t>(n), "vertex");
            if (u == v) throw ParseError(l.number, "self-loop");
            if (!seen.insert(std::minmax(u, v)).second) throw ParseError(l.number, "duplicate edge");
            edges.emplace_back(u, v);
        } else {
            throw ParseError(l.number, "unknown directive '" + std::string(op) + "'");
        }
    }
    if (!root) throw ParseError(head.number, "missing 'root' line");
    if (edges.size() != static_cast<std::size_t>(m))
        throw ParseError(head.number, "header announces " + std::to_string(m) + " edges, found " +
                                          std::to_string(edges.size()));
    RootedGraph r(static_cast<std::size_t>(n), *root);
    for (auto [u, v] : edges) r.add_edge(u, v);
    return r;
}

enum class EventKind { inc, dec, addb, rmb, adda, rma };

struct Event {
    EventKind kind;
    std::size_t line = 0;
    std::size_t target = 0;                // inc/dec/rmb: B index, rma: A index (0-based)
    int need = 0;                          // addb
    std::vector<std::size_t> neighbours;   // addb: A indices, adda: B indices (0-based)
};

/// Vertex ranges are checked when the event is applied, since earlier
/// events may add vertices.
inline std::vector<Event> parse_events(std::string_view text) {
    using namespace detail;
    auto id = [](const Line& l, std::size_t k) {
        const long long v = integer(l, k);
        if (v < 1) throw ParseError(l.number, "vertex index must be positive");
        return static_cast<std::size_t>(v - 1);
    };
    std::vector<Event> events;
    for (const Line& l : tokenize(text)) {
        const std::string_view op = l.tokens[0];
        Event ev{EventKind::inc, l.number, 0, 0, {}};
        if (op == "inc" || op == "dec" || op == "rmb" || op == "rma") {
            arity(l, 2);
            ev.kind = op == "inc" ? EventKind::inc
                      : op == "dec" ? EventKind::dec
                      : op == "rmb" ? EventKind::rmb
                                    : EventKind::rma;
            ev.target = id(l, 1);
        } else if (op == "addb") {
            if (l.tokens.size() < 2) throw ParseError(l.number, "'addb' takes a need and neighbours");
            ev.kind = EventKind::addb;
            ev.need = count_value(l, 1, "need");
            for (std::size_t k = 2; k < l.tokens.size(); ++k) ev.neighbours.push_back(id(l, k));
        } else if (op == "adda") {
            ev.kind = EventKind::adda;
            for (std::size_t k = 1; k < l.tokens.size(); ++k) ev.neighbours.push_back(id(l, k));
        } else {
            throw ParseError(l.number, "unknown event '" + std::string(op) + "'");
        }
        events.push_back(std::move(ev));
    }
    return events;
}

}  // namespace qmatch::io

#endif  // QMATCH_IO_HPP
