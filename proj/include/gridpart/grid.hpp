#pragma once

// Node-weighted grid graph data model: coordinates, parsing/serialization,
// boundary enumeration, 2-cut detection and bipartition bookkeeping.

#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gridpart {

// Raised when an operation is outside what this build can solve
// (as opposed to malformed input).
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 1-based grid coordinate.
struct NodeId {
    int row = 0;
    int col = 0;

    friend bool operator==(const NodeId& a, const NodeId& b) {
        return a.row == b.row && a.col == b.col;
    }
    friend bool operator!=(const NodeId& a, const NodeId& b) { return !(a == b); }
    friend bool operator<(const NodeId& a, const NodeId& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    }
};

inline std::string to_string(NodeId v) {
    return "(" + std::to_string(v.row) + "," + std::to_string(v.col) + ")";
}

class GridGraph {
public:
    GridGraph(int m, int n, std::vector<std::uint32_t> weights) : m_(m), n_(n), w_(std::move(weights)) {
        if (m_ < 1 || n_ < 1) throw std::invalid_argument("grid dimensions must be positive");
        if (w_.size() != static_cast<std::size_t>(m_) * static_cast<std::size_t>(n_))
            throw std::invalid_argument("weight matrix does not match grid dimensions");
        total_ = 0;
        for (std::uint32_t x : w_) {
            if (x == 0) throw std::invalid_argument("node weights must be positive");
            total_ += x;
        }
    }

    int rows() const { return m_; }
    int cols() const { return n_; }
    std::size_t node_count() const { return static_cast<std::size_t>(m_) * n_; }
    std::uint64_t total_weight() const { return total_; }

    bool in_bounds(NodeId v) const {
        return v.row >= 1 && v.row <= m_ && v.col >= 1 && v.col <= n_;
    }
    std::size_t index(NodeId v) const {
        return static_cast<std::size_t>(v.row - 1) * n_ + (v.col - 1);
    }
    NodeId node_at(std::size_t idx) const {
        return NodeId{static_cast<int>(idx / n_) + 1, static_cast<int>(idx % n_) + 1};
    }

    std::uint32_t weight(NodeId v) const { return w_[index(v)]; }
    std::uint32_t weight_at(std::size_t idx) const { return w_[idx]; }
    const std::vector<std::uint32_t>& weights() const { return w_; }

    bool on_boundary(NodeId v) const {
        return v.row == 1 || v.row == m_ || v.col == 1 || v.col == n_;
    }
    bool is_corner(NodeId v) const {
        return (v.row == 1 || v.row == m_) && (v.col == 1 || v.col == n_);
    }
    bool is_interior(NodeId v) const { return !on_boundary(v); }

    template <class F>
    void for_each_neighbor(NodeId v, F&& f) const {
        if (v.row > 1) f(NodeId{v.row - 1, v.col});
        if (v.row < m_) f(NodeId{v.row + 1, v.col});
        if (v.col > 1) f(NodeId{v.row, v.col - 1});
        if (v.col < n_) f(NodeId{v.row, v.col + 1});
    }

    GridGraph transposed() const {
        std::vector<std::uint32_t> tw(w_.size());
        for (int r = 0; r < m_; ++r)
            for (int c = 0; c < n_; ++c)
                tw[static_cast<std::size_t>(c) * m_ + r] = w_[static_cast<std::size_t>(r) * n_ + c];
        return GridGraph(n_, m_, std::move(tw));
    }

private:
    int m_;
    int n_;
    std::vector<std::uint32_t> w_;
    std::uint64_t total_ = 0;
};

// Simple grid path with cached endpoint-inclusive weight.
struct GridPath {
    std::vector<NodeId> nodes;
    std::uint64_t weight = 0;
};

inline bool grid_adjacent(NodeId a, NodeId b) {
    int dr = a.row - b.row, dc = a.col - b.col;
    if (dr < 0) dr = -dr;
    if (dc < 0) dc = -dc;
    return dr + dc == 1;
}

// Validates adjacency and simplicity, computes the weight.
inline GridPath make_path(const GridGraph& g, std::vector<NodeId> nodes) {
    if (nodes.empty()) throw std::invalid_argument("path must contain at least one node");
    std::vector<std::uint8_t> seen(g.node_count(), 0);
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!g.in_bounds(nodes[i])) throw std::invalid_argument("path node out of bounds");
        std::size_t idx = g.index(nodes[i]);
        if (seen[idx]) throw std::invalid_argument("path repeats node " + to_string(nodes[i]));
        seen[idx] = 1;
        if (i > 0 && !grid_adjacent(nodes[i - 1], nodes[i]))
            throw std::invalid_argument("path nodes " + to_string(nodes[i - 1]) + " and " +
                                        to_string(nodes[i]) + " are not adjacent");
        w += g.weight(nodes[i]);
    }
    return GridPath{std::move(nodes), w};
}

// Two-coloring of the grid with per-side totals. side[idx] is 0 or 1.
struct Bipartition {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> side;
    std::uint64_t weight0 = 0;
    std::uint64_t weight1 = 0;

    std::uint64_t balance() const { return weight0 < weight1 ? weight0 : weight1; }
    std::uint8_t side_of(NodeId v) const {
        return side[static_cast<std::size_t>(v.row - 1) * cols + (v.col - 1)];
    }
};

inline Bipartition make_bipartition(const GridGraph& g, std::vector<std::uint8_t> side) {
    if (side.size() != g.node_count())
        throw std::invalid_argument("side matrix does not match grid dimensions");
    Bipartition b;
    b.rows = g.rows();
    b.cols = g.cols();
    b.side = std::move(side);
    for (std::size_t i = 0; i < b.side.size(); ++i) {
        if (b.side[i] > 1) throw std::invalid_argument("side labels must be 0 or 1");
        if (b.side[i]) b.weight1 += g.weight_at(i);
        else b.weight0 += g.weight_at(i);
    }
    return b;
}

namespace detail {

// Flood fill within {idx : pred(idx)} starting from `start`; returns number reached.
template <class Pred>
std::size_t flood_count(const GridGraph& g, Pred&& pred, std::size_t start) {
    std::vector<std::uint8_t> vis(g.node_count(), 0);
    std::vector<std::size_t> stack{start};
    vis[start] = 1;
    std::size_t count = 0;
    const int n = g.cols();
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        ++count;
        NodeId v = g.node_at(u);
        auto push = [&](int r, int c) {
            std::size_t j = static_cast<std::size_t>(r - 1) * n + (c - 1);
            if (!vis[j] && pred(j)) {
                vis[j] = 1;
                stack.push_back(j);
            }
        };
        if (v.row > 1) push(v.row - 1, v.col);
        if (v.row < g.rows()) push(v.row + 1, v.col);
        if (v.col > 1) push(v.row, v.col - 1);
        if (v.col < n) push(v.row, v.col + 1);
    }
    return count;
}

// True iff the nodes selected by pred form a non-empty connected subgraph.
template <class Pred>
bool connected_nonempty(const GridGraph& g, Pred&& pred) {
    std::size_t first = g.node_count();
    std::size_t total = 0;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        if (pred(i)) {
            if (first == g.node_count()) first = i;
            ++total;
        }
    }
    if (total == 0) return false;
    return flood_count(g, pred, first) == total;
}

} // namespace detail

// True iff both sides are non-empty and each induces a connected subgraph.
inline bool validate_bipartition(const GridGraph& g, const Bipartition& b) {
    if (b.rows != g.rows() || b.cols != g.cols() || b.side.size() != g.node_count())
        throw std::invalid_argument("bipartition does not match grid dimensions");
    const auto& side = b.side;
    bool ok0 = detail::connected_nonempty(g, [&](std::size_t i) { return side[i] == 0; });
    bool ok1 = detail::connected_nonempty(g, [&](std::size_t i) { return side[i] == 1; });
    return ok0 && ok1;
}

// Clockwise boundary enumeration starting at (1,1); length 2m+2n-4.
inline std::vector<NodeId> boundary_cycle(const GridGraph& g) {
    if (g.rows() < 2 || g.cols() < 2) throw std::invalid_argument("grid has no boundary cycle");
    const int m = g.rows(), n = g.cols();
    std::vector<NodeId> out;
    out.reserve(2 * (m + n) - 4);
    for (int c = 1; c <= n; ++c) out.push_back({1, c});
    for (int r = 2; r <= m; ++r) out.push_back({r, n});
    for (int c = n - 1; c >= 1; --c) out.push_back({m, c});
    for (int r = m - 1; r >= 2; --r) out.push_back({r, 1});
    return out;
}

// The corner whose two neighbors are exactly {s,t}, if any. On grids with
// m,n >= 3 these pairs are the only 2-cuts.
inline std::optional<NodeId> two_cut_corner(const GridGraph& g, NodeId s, NodeId t) {
    if (g.rows() < 3 || g.cols() < 3) throw std::invalid_argument("two_cut_corner requires m,n >= 3");
    if (!g.in_bounds(s) || !g.in_bounds(t)) throw std::invalid_argument("node out of bounds");
    if (s == t) throw std::invalid_argument("nodes must be distinct");
    const int m = g.rows(), n = g.cols();
    const NodeId corners[4] = {{1, 1}, {1, n}, {m, 1}, {m, n}};
    for (NodeId x : corners) {
        NodeId a{x.row == 1 ? 2 : m - 1, x.col};
        NodeId b{x.row, x.col == 1 ? 2 : n - 1};
        if ((s == a && t == b) || (s == b && t == a)) return x;
    }
    return std::nullopt;
}

// Text format: line 1 "m n", then m lines of n positive integers.
inline GridGraph parse_grid(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++lineno;
        return true;
    };
    if (!next_line()) throw ParseError("malformed header at line 1");
    long long m = 0, n = 0;
    {
        std::istringstream hs(line);
        std::string rest;
        if (!(hs >> m >> n) || (hs >> rest))
            throw ParseError("malformed header at line 1");
        if (m < 1 || n < 1) throw ParseError("malformed header at line 1");
        if (m > (1 << 20) || n > (1 << 20) || m * n > (1LL << 28))
            throw ParseError("grid too large at line 1");
    }
    std::vector<std::uint32_t> w;
    w.reserve(static_cast<std::size_t>(m * n));
    std::uint64_t total = 0;
    for (long long r = 0; r < m; ++r) {
        if (!next_line()) throw ParseError("missing row at line " + std::to_string(lineno + 1));
        std::istringstream rs(line);
        std::string tok;
        long long count = 0;
        while (rs >> tok) {
            if (count == n) throw ParseError("too many weights at line " + std::to_string(lineno));
            if (tok[0] == '-' || tok == "0")
                throw ParseError("non-positive weight at line " + std::to_string(lineno));
            std::uint64_t val = 0;
            for (char ch : tok) {
                if (ch < '0' || ch > '9')
                    throw ParseError("invalid weight at line " + std::to_string(lineno));
                val = val * 10 + static_cast<std::uint64_t>(ch - '0');
                if (val > std::numeric_limits<std::uint32_t>::max())
                    throw ParseError("weight out of range at line " + std::to_string(lineno));
            }
            if (val == 0) throw ParseError("non-positive weight at line " + std::to_string(lineno));
            w.push_back(static_cast<std::uint32_t>(val));
            total += val;
            ++count;
        }
        if (count < n) throw ParseError("too few weights at line " + std::to_string(lineno));
    }
    while (next_line()) {
        for (char ch : line)
            if (ch != ' ' && ch != '\t' && ch != '\r')
                throw ParseError("unexpected content at line " + std::to_string(lineno));
    }
    if (total > (std::uint64_t{1} << 63) - 1) throw ParseError("total weight overflow");
    return GridGraph(static_cast<int>(m), static_cast<int>(n), std::move(w));
}

inline GridGraph parse_grid(const std::string& text) {
    std::istringstream in(text);
    return parse_grid(in);
}

inline void serialize_grid(const GridGraph& g, std::ostream& out) {
    out << g.rows() << ' ' << g.cols() << '\n';
    for (int r = 1; r <= g.rows(); ++r) {
        for (int c = 1; c <= g.cols(); ++c) {
            if (c > 1) out << ' ';
            out << g.weight(NodeId{r, c});
        }
        out << '\n';
    }
}

inline std::string serialize_grid(const GridGraph& g) {
    std::ostringstream os;
    serialize_grid(g, os);
    return os.str();
}

} // namespace gridpart
