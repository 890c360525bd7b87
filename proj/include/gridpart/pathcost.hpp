#pragma once

// Distance primitives for the non-separating path search: boundary prefix
// sums over the doubled clockwise sequence, node-weighted interior shortest
// paths with predecessor tracking, and a sparse-table argmin structure.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "gridpart/grid.hpp"

namespace gridpart {

// Sentinel for "no interior path". Additions saturate at this value.
inline constexpr std::uint64_t kUnreachable = std::numeric_limits<std::uint64_t>::max() / 2;

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    if (a >= kUnreachable || b >= kUnreachable || a + b >= kUnreachable) return kUnreachable;
    return a + b;
}

// Clockwise boundary order with doubled prefix sums for wraparound arcs.
struct BoundaryIndexing {
    std::vector<NodeId> order;          // clockwise from (1,1)
    std::vector<std::uint64_t> prefix;  // prefix[k] = weight of first k doubled entries
    std::vector<int> pos;               // grid index -> boundary position, -1 off boundary
    std::uint64_t boundary_weight = 0;  // W_B

    int size() const { return static_cast<int>(order.size()); }

    int position_of(const GridGraph& g, NodeId v) const { return pos[g.index(v)]; }

    std::uint64_t node_weight(int doubled_pos) const {
        return prefix[doubled_pos + 1] - prefix[doubled_pos];
    }

    // Endpoint-inclusive weight of the clockwise arc p -> q (positions mod |B|).
    std::uint64_t cw_arc(int p, int q) const {
        int b = size();
        int span = (q - p) % b;
        if (span < 0) span += b;
        return prefix[p + span + 1] - prefix[p];
    }
};

inline BoundaryIndexing build_boundary_indexing(const GridGraph& g) {
    BoundaryIndexing bi;
    bi.order = boundary_cycle(g);
    const int b = static_cast<int>(bi.order.size());
    bi.pos.assign(g.node_count(), -1);
    for (int k = 0; k < b; ++k) bi.pos[g.index(bi.order[k])] = k;
    bi.prefix.assign(2 * static_cast<std::size_t>(b) + 1, 0);
    for (int k = 0; k < 2 * b; ++k)
        bi.prefix[k + 1] = bi.prefix[k] + g.weight(bi.order[k % b]);
    bi.boundary_weight = bi.prefix[b];
    return bi;
}

// (clockwise, counterclockwise) endpoint-inclusive arc weights between two
// boundary nodes; the minimum of the two is d_B.
inline std::pair<std::uint64_t, std::uint64_t> boundary_arc_weights(const GridGraph& g,
                                                                    const BoundaryIndexing& bi,
                                                                    NodeId i, NodeId j) {
    int p = bi.position_of(g, i), q = bi.position_of(g, j);
    if (p < 0 || q < 0) throw std::invalid_argument("node is not on the boundary");
    if (p == q) throw std::invalid_argument("positions must be distinct");
    return {bi.cw_arc(p, q), bi.cw_arc(q, p)};
}

// d_I(source, v) for every v: minimum endpoint-inclusive weight of a path
// whose internal nodes are all interior. Corners are unreachable; any other
// boundary node is reached through its unique interior neighbor.
struct InteriorDistanceField {
    NodeId source;
    std::vector<std::uint64_t> dist;
    std::vector<std::int32_t> pred; // row-major index, -1 = none

    std::uint64_t at(const GridGraph& g, NodeId v) const { return dist[g.index(v)]; }

    // Witness path source -> target along predecessor links.
    std::vector<NodeId> path_to(const GridGraph& g, NodeId target) const {
        if (dist[g.index(target)] >= kUnreachable)
            throw std::invalid_argument("target unreachable through the interior");
        std::vector<NodeId> out;
        std::size_t cur = g.index(target);
        while (true) {
            out.push_back(g.node_at(cur));
            if (g.node_at(cur) == source) break;
            cur = static_cast<std::size_t>(pred[cur]);
        }
        std::reverse(out.begin(), out.end());
        return out;
    }
};

// Unique interior neighbor of a non-corner boundary node.
inline NodeId interior_neighbor(const GridGraph& g, NodeId v) {
    if (v.row == 1) return {2, v.col};
    if (v.row == g.rows()) return {g.rows() - 1, v.col};
    if (v.col == 1) return {v.row, 2};
    return {v.row, g.cols() - 1};
}

inline InteriorDistanceField interior_distances(const GridGraph& g, NodeId src) {
    if (g.rows() < 3 || g.cols() < 3) throw std::invalid_argument("no interior");
    if (!g.in_bounds(src)) throw std::invalid_argument("source out of bounds");

    InteriorDistanceField f;
    f.source = src;
    f.dist.assign(g.node_count(), kUnreachable);
    f.pred.assign(g.node_count(), -1);

    // heap entries ordered by (dist, row, col) for deterministic witnesses
    using Entry = std::tuple<std::uint64_t, int, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;

    f.dist[g.index(src)] = g.weight(src);
    if (g.is_interior(src)) {
        heap.emplace(f.dist[g.index(src)], src.row, src.col);
    } else if (!g.is_corner(src)) {
        NodeId nb = interior_neighbor(g, src);
        f.dist[g.index(nb)] = sat_add(g.weight(src), g.weight(nb));
        f.pred[g.index(nb)] = static_cast<std::int32_t>(g.index(src));
        heap.emplace(f.dist[g.index(nb)], nb.row, nb.col);
    }
    // a corner source reaches nothing through the interior

    while (!heap.empty()) {
        auto [d, r, c] = heap.top();
        heap.pop();
        NodeId u{r, c};
        std::size_t ui = g.index(u);
        if (d > f.dist[ui]) continue; // stale
        g.for_each_neighbor(u, [&](NodeId v) {
            if (!g.is_interior(v)) return;
            std::size_t vi = g.index(v);
            std::uint64_t nd = sat_add(d, g.weight(v));
            if (nd < f.dist[vi]) {
                f.dist[vi] = nd;
                f.pred[vi] = static_cast<std::int32_t>(ui);
                heap.emplace(nd, v.row, v.col);
            }
        });
    }

    // extend one step onto non-corner boundary nodes
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        NodeId v = g.node_at(i);
        if (!g.on_boundary(v) || g.is_corner(v) || v == src) continue;
        NodeId nb = interior_neighbor(g, v);
        std::uint64_t base = f.dist[g.index(nb)];
        if (base >= kUnreachable) continue;
        f.dist[i] = sat_add(base, g.weight(v));
        f.pred[i] = static_cast<std::int32_t>(g.index(nb));
    }
    return f;
}

// Sparse-table range argmin; ties break toward the smallest index.
class RmqTable {
public:
    explicit RmqTable(std::vector<std::uint64_t> values) : values_(std::move(values)) {
        if (values_.empty()) throw std::invalid_argument("rmq over empty array");
        std::size_t n = values_.size();
        int levels = 1;
        while ((std::size_t{1} << levels) <= n) ++levels;
        table_.assign(static_cast<std::size_t>(levels), std::vector<std::uint32_t>(n));
        for (std::size_t i = 0; i < n; ++i) table_[0][i] = static_cast<std::uint32_t>(i);
        for (int k = 1; k < levels; ++k) {
            std::size_t half = std::size_t{1} << (k - 1);
            for (std::size_t i = 0; i + (half << 1) <= n; ++i)
                table_[static_cast<std::size_t>(k)][i] =
                    better(table_[static_cast<std::size_t>(k - 1)][i],
                           table_[static_cast<std::size_t>(k - 1)][i + half]);
        }
    }

    std::size_t query(std::size_t lo, std::size_t hi) const {
        if (lo > hi || hi >= values_.size()) throw std::invalid_argument("bad rmq range");
        std::size_t len = hi - lo + 1;
        int k = 0;
        while ((std::size_t{2} << k) <= len) ++k;
        return better(table_[static_cast<std::size_t>(k)][lo],
                      table_[static_cast<std::size_t>(k)][hi + 1 - (std::size_t{1} << k)]);
    }

    std::uint64_t value_at(std::size_t i) const { return values_[i]; }

private:
    std::uint32_t better(std::uint32_t a, std::uint32_t b) const {
        if (values_[a] != values_[b]) return values_[a] < values_[b] ? a : b;
        return a < b ? a : b;
    }

    std::vector<std::uint64_t> values_;
    std::vector<std::vector<std::uint32_t>> table_;
};

} // namespace gridpart
