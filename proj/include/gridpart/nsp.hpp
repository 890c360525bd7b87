#pragma once

// Minimum non-separating st-paths and connectors on grid graphs.
//
// For m,n >= 3 and {s,t} not a 2-cut, the minimum non-separating path, the
// minimum non-separating induced path and the minimum NSC coincide, and the
// optimum is a minimum-weight st-path with at most one boundary subpath.
// That yields four cases:
//   (a) {s,t} is the 2-cut around a corner x: compare (s,x,t) against a
//       Hamiltonian st-path of G-x (exists iff m or n is even);
//   (b) both endpoints on the boundary: the cheaper boundary arc;
//   (c) one endpoint on the boundary: min over boundary attachment i of
//       d_B(s,i) + d_I(i,t) - w(i);
//   (d) both interior: min of d_I(s,t) and the boundary-pair objective
//       d_I(s,i) + d_B(i,j) + d_I(j,t) - w(i) - w(j), evaluated with the
//       right(i)/sigma/RMQ sweep in both rotation directions.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gridpart/grid.hpp"
#include "gridpart/pathcost.hpp"

namespace gridpart {

enum class NscKind { Path, WholeMinusCorner };

struct NspResult {
    NscKind kind = NscKind::Path;
    GridPath path;                 // set when kind == Path
    std::vector<NodeId> node_set;  // set when kind == WholeMinusCorner
    NodeId excluded_corner{0, 0};  // set when kind == WholeMinusCorner
    std::uint64_t weight = 0;
};

// ---- validators ---------------------------------------------------------

inline bool removal_keeps_connected(const GridGraph& g, const std::vector<NodeId>& removed) {
    std::vector<std::uint8_t> gone(g.node_count(), 0);
    for (NodeId v : removed) gone[g.index(v)] = 1;
    return detail::connected_nonempty(g, [&](std::size_t i) { return !gone[i]; });
}

inline bool is_induced_path(const GridGraph&, const GridPath& p) {
    for (std::size_t i = 0; i < p.nodes.size(); ++i)
        for (std::size_t j = i + 2; j < p.nodes.size(); ++j)
            if (grid_adjacent(p.nodes[i], p.nodes[j])) return false;
    return true;
}

// Number of maximal runs of boundary nodes along the path.
inline int boundary_subpath_count(const GridGraph& g, const GridPath& p) {
    int runs = 0;
    bool in_run = false;
    for (NodeId v : p.nodes) {
        bool on = g.on_boundary(v);
        if (on && !in_run) ++runs;
        in_run = on;
    }
    return runs;
}

// ---- Hamiltonian path of G - corner -------------------------------------

// Visits all mn-1 nodes of the grid minus one corner, with endpoints the two
// neighbors of that corner. Exists iff m or n is even; boustrophedon layout.
inline std::vector<NodeId> hamiltonian_st_path_minus_corner(int m, int n, NodeId corner) {
    if (m < 3 || n < 3) throw std::invalid_argument("requires m,n >= 3");
    bool corner_ok = (corner.row == 1 || corner.row == m) && (corner.col == 1 || corner.col == n);
    if (!corner_ok) throw std::invalid_argument("not a corner node");
    if (m % 2 == 1 && n % 2 == 1) throw std::invalid_argument("nonexistent (parity)");

    // canonical form: corner (1,1), even number of rows; other cases by
    // transposition / reflection
    bool transpose = (m % 2 == 1); // then n is even and the transpose has even rows
    int mm = transpose ? n : m;
    int nn = transpose ? m : n;

    std::vector<NodeId> path;
    path.reserve(static_cast<std::size_t>(m) * n - 1);
    // serpentine rows 1..mm over columns 2..nn, then climb column 1
    for (int r = 1; r <= mm; ++r) {
        if (r % 2 == 1)
            for (int c = 2; c <= nn; ++c) path.push_back({r, c});
        else
            for (int c = nn; c >= 2; --c) path.push_back({r, c});
    }
    for (int r = mm; r >= 2; --r) path.push_back({r, 1});

    if (transpose)
        for (NodeId& v : path) std::swap(v.row, v.col);
    if (corner.row == m)
        for (NodeId& v : path) v.row = m + 1 - v.row;
    if (corner.col == n)
        for (NodeId& v : path) v.col = n + 1 - v.col;
    return path;
}

// ---- 2-cut case ----------------------------------------------------------

// {s,t} is the 2-cut around corner x: the only non-separating st-paths are
// (s,x,t) and the Hamiltonian st-paths of G-x, all of weight W - w(x).
inline NspResult two_cut_nsp(const GridGraph& g, NodeId s, NodeId t, NodeId x) {
    auto check = two_cut_corner(g, s, t);
    if (!check || *check != x) throw std::invalid_argument("{s,t} is not the 2-cut around x");

    std::uint64_t short_w = static_cast<std::uint64_t>(g.weight(s)) + g.weight(x) + g.weight(t);
    NspResult out;
    out.kind = NscKind::Path;

    const int m = g.rows(), n = g.cols();
    if (m % 2 == 0 || n % 2 == 0) {
        std::uint64_t ham_w = g.total_weight() - g.weight(x);
        if (ham_w < short_w) {
            auto nodes = hamiltonian_st_path_minus_corner(m, n, x);
            // orient from s to t
            if (nodes.front() != s) std::reverse(nodes.begin(), nodes.end());
            out.path = make_path(g, std::move(nodes));
            out.weight = out.path.weight;
            return out;
        }
    }
    out.path = make_path(g, {s, x, t});
    out.weight = short_w;
    return out;
}

// ---- case (d) sweep ------------------------------------------------------

struct BoundaryPairTerm {
    bool found = false;
    std::uint64_t value = kUnreachable;
    NodeId attach_s{0, 0}; // boundary node joined to the s-side interior path
    NodeId attach_t{0, 0};
    bool reversed_round = false; // true when the arc runs counterclockwise
};

namespace detail {

// One sweep round over a boundary order: for every attachment i, the best j
// in (i, right(i)] minimizing sigma(j) = prefix(j) + d_I(t, j), where
// right(i) is the furthest j whose clockwise (in this order) arc is minimal.
inline void sweep_round(const GridGraph& g, const std::vector<NodeId>& ord,
                        const InteriorDistanceField& fs, const InteriorDistanceField& ft,
                        bool reversed, BoundaryPairTerm& best) {
    const int b = static_cast<int>(ord.size());
    std::vector<std::uint64_t> pref(2 * static_cast<std::size_t>(b) + 1, 0);
    for (int k = 0; k < 2 * b; ++k) pref[k + 1] = pref[k] + g.weight(ord[k % b]);
    const std::uint64_t wb = pref[b];

    std::vector<std::uint64_t> sigma(2 * static_cast<std::size_t>(b));
    for (int k = 0; k < 2 * b; ++k) sigma[k] = sat_add(pref[k], ft.dist[g.index(ord[k % b])]);
    RmqTable rmq(sigma);

    int r = 0;
    for (int i = 0; i < b; ++i) {
        std::uint64_t dsi = fs.dist[g.index(ord[i])];
        // grow right(i): largest j <= i+b-1 with pref[j]+pref[j+1] <= wb+pref[i]+pref[i+1]
        if (r < i + 1) r = i + 1;
        while (r + 1 <= i + b - 1 && pref[r + 1] + pref[r + 2] <= wb + pref[i] + pref[i + 1]) ++r;
        if (dsi >= kUnreachable) continue;
        std::size_t jstar = rmq.query(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(r));
        std::uint64_t sum = sat_add(dsi, sigma[jstar]);
        if (sum >= kUnreachable) continue;
        std::uint64_t value = sum - pref[i + 1];
        if (value < best.value) {
            best.found = true;
            best.value = value;
            best.attach_s = ord[i];
            best.attach_t = ord[jstar % b];
            best.reversed_round = reversed;
        }
    }
}

// Boundary segment from `from` to `to` walking forward in `ord` (cyclic).
inline std::vector<NodeId> walk_segment(const std::vector<NodeId>& ord, NodeId from, NodeId to) {
    const int b = static_cast<int>(ord.size());
    int p = -1;
    for (int k = 0; k < b; ++k)
        if (ord[k] == from) { p = k; break; }
    std::vector<NodeId> seg;
    for (int k = p;; k = (k + 1) % b) {
        seg.push_back(ord[k % b]);
        if (ord[k % b] == to) break;
    }
    return seg;
}

} // namespace detail

// Best boundary-pair objective for two interior endpoints; exposed so the
// sweep can be cross-checked against a quadratic evaluation.
inline BoundaryPairTerm min_boundary_pair_term(const GridGraph& g, const BoundaryIndexing& bi,
                                               const InteriorDistanceField& fs,
                                               const InteriorDistanceField& ft) {
    BoundaryPairTerm best;
    detail::sweep_round(g, bi.order, fs, ft, false, best);
    std::vector<NodeId> rev(bi.order.rbegin(), bi.order.rend());
    detail::sweep_round(g, rev, fs, ft, true, best);
    return best;
}

// ---- main dispatch -------------------------------------------------------

namespace detail {

inline GridPath boundary_arc_path(const GridGraph& g, const BoundaryIndexing& bi, NodeId s, NodeId t) {
    auto [cw, ccw] = boundary_arc_weights(g, bi, s, t);
    std::vector<NodeId> nodes;
    if (cw <= ccw) {
        nodes = walk_segment(bi.order, s, t);
    } else {
        std::vector<NodeId> rev(bi.order.rbegin(), bi.order.rend());
        nodes = walk_segment(rev, s, t);
    }
    return make_path(g, std::move(nodes));
}

// joined = a + b with b's first node identical to a's last node
inline std::vector<NodeId> splice(std::vector<NodeId> a, const std::vector<NodeId>& b) {
    a.insert(a.end(), b.begin() + 1, b.end());
    return a;
}

} // namespace detail

inline NspResult min_nonseparating_path(const GridGraph& g, NodeId s, NodeId t) {
    if (!g.in_bounds(s) || !g.in_bounds(t)) throw std::invalid_argument("node out of bounds");
    if (s == t) throw std::invalid_argument("endpoints must be distinct");
    if (g.rows() < 3 || g.cols() < 3)
        throw CapabilityError("use oracle for degenerate grids (needs m,n >= 3)");

    // (a) 2-cut special
    if (auto x = two_cut_corner(g, s, t)) return two_cut_nsp(g, s, t, *x);

    NspResult out;
    out.kind = NscKind::Path;

    const bool sb = g.on_boundary(s), tb = g.on_boundary(t);
    if (sb && tb) {
        // (b) cheaper boundary arc
        auto bi = build_boundary_indexing(g);
        out.path = detail::boundary_arc_path(g, bi, s, t);
        out.weight = out.path.weight;
        return out;
    }

    if (sb || tb) {
        // (c) one boundary endpoint; make s the boundary one
        NodeId bs = sb ? s : t;
        NodeId it = sb ? t : s;
        auto bi = build_boundary_indexing(g);
        auto field = interior_distances(g, it);
        const int b = bi.size();
        const int ps = bi.position_of(g, bs);

        std::uint64_t best = kUnreachable;
        int best_pos = -1;
        for (int q = 0; q < b; ++q) {
            NodeId i = bi.order[q];
            std::uint64_t di = field.dist[g.index(i)];
            if (di >= kUnreachable) continue;
            std::uint64_t db = q == ps
                                   ? g.weight(bs)
                                   : std::min(bi.cw_arc(ps, q), bi.cw_arc(q, ps));
            std::uint64_t val = sat_add(db, di) - g.weight(i);
            if (val < best) {
                best = val;
                best_pos = q;
            }
        }
        if (best_pos < 0) throw std::logic_error("no attachment found");
        NodeId attach = bi.order[best_pos];
        std::vector<NodeId> nodes;
        if (best_pos == ps) {
            nodes = field.path_to(g, bs);
            std::reverse(nodes.begin(), nodes.end()); // bs -> it
        } else {
            GridPath arc = detail::boundary_arc_path(g, bi, bs, attach);
            auto tail = field.path_to(g, attach); // it -> attach
            std::reverse(tail.begin(), tail.end());
            nodes = detail::splice(arc.nodes, tail);
        }
        if (!sb) std::reverse(nodes.begin(), nodes.end()); // orient s -> t
        out.path = make_path(g, std::move(nodes));
        out.weight = out.path.weight;
        if (out.weight != best) throw std::logic_error("reconstruction weight mismatch");
        return out;
    }

    // (d) both interior
    auto fs = interior_distances(g, s);
    auto ft = interior_distances(g, t);
    auto bi = build_boundary_indexing(g);

    std::uint64_t direct = fs.dist[g.index(t)];
    BoundaryPairTerm pair = min_boundary_pair_term(g, bi, fs, ft);

    std::vector<NodeId> nodes;
    if (direct <= pair.value) {
        nodes = fs.path_to(g, t);
    } else {
        std::vector<NodeId> head = fs.path_to(g, pair.attach_s); // s -> i
        std::vector<NodeId> seg;
        if (!pair.reversed_round) {
            seg = detail::walk_segment(bi.order, pair.attach_s, pair.attach_t);
        } else {
            std::vector<NodeId> rev(bi.order.rbegin(), bi.order.rend());
            seg = detail::walk_segment(rev, pair.attach_s, pair.attach_t);
        }
        auto tail = ft.path_to(g, pair.attach_t); // t -> j
        std::reverse(tail.begin(), tail.end());   // j -> t
        nodes = detail::splice(detail::splice(std::move(head), seg), tail);
    }
    out.path = make_path(g, std::move(nodes));
    out.weight = out.path.weight;
    if (out.weight != std::min(direct, pair.value)) throw std::logic_error("reconstruction weight mismatch");
    return out;
}

// Minimum non-separating connector. Off the 2-cut case this coincides with
// the minimum non-separating path; on it, the candidates are the path
// (s,x,t) and the whole grid minus the corner.
inline NspResult min_nsc(const GridGraph& g, NodeId s, NodeId t) {
    if (!g.in_bounds(s) || !g.in_bounds(t)) throw std::invalid_argument("node out of bounds");
    if (s == t) throw std::invalid_argument("endpoints must be distinct");
    if (g.rows() < 3 || g.cols() < 3)
        throw CapabilityError("use oracle for degenerate grids (needs m,n >= 3)");

    auto x = two_cut_corner(g, s, t);
    if (!x) return min_nonseparating_path(g, s, t);

    std::uint64_t path_w = static_cast<std::uint64_t>(g.weight(s)) + g.weight(*x) + g.weight(t);
    std::uint64_t rest_w = g.total_weight() - g.weight(*x);
    NspResult out;
    if (path_w <= rest_w) {
        out.kind = NscKind::Path;
        out.path = make_path(g, {s, *x, t});
        out.weight = path_w;
    } else {
        out.kind = NscKind::WholeMinusCorner;
        out.excluded_corner = *x;
        out.weight = rest_w;
        out.node_set.reserve(g.node_count() - 1);
        for (std::size_t i = 0; i < g.node_count(); ++i)
            if (g.node_at(i) != *x) out.node_set.push_back(g.node_at(i));
    }
    return out;
}

} // namespace gridpart
