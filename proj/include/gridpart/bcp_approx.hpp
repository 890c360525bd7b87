#pragma once

// 5/4-approximation for the balanced connected bipartition on grids.
// Dispatch: a node of weight >= W/2 makes the singleton split optimal;
// with 0, 1, 2 or 4 heavy nodes (> W/5) the st-numbering prefix split
// already achieves the ratio; with exactly 3 heavy nodes the minimum
// pairwise non-separating connector decides between an optimal output and
// a contraction that reduces to the two-heavy case.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gridpart/bcp_exact.hpp"
#include "gridpart/grid.hpp"
#include "gridpart/nsp.hpp"
#include "gridpart/stnum.hpp"

namespace gridpart {

// Nodes with 5*w > W, heaviest first (ties by node order). At most 4 exist.
inline std::vector<NodeId> heavy_nodes(const GridGraph& g) {
    std::vector<NodeId> out;
    const std::uint64_t W = g.total_weight();
    for (std::size_t i = 0; i < g.node_count(); ++i)
        if (5 * static_cast<std::uint64_t>(g.weight_at(i)) > W) out.push_back(g.node_at(i));
    std::sort(out.begin(), out.end(), [&](NodeId a, NodeId b) {
        if (g.weight(a) != g.weight(b)) return g.weight(a) > g.weight(b);
        return a < b;
    });
    return out;
}

namespace bcp_detail {

inline Bipartition lift_general_bipartition(const GridGraph& g, const GeneralGraph& G,
                                            const std::vector<std::uint8_t>& side) {
    std::vector<std::uint8_t> grid_side(g.node_count(), 0);
    for (int v = 0; v < G.size(); ++v)
        for (NodeId orig : G.origin[static_cast<std::size_t>(v)])
            grid_side[g.index(orig)] = side[static_cast<std::size_t>(v)];
    return make_bipartition(g, std::move(grid_side));
}

inline std::vector<NodeId> connector_nodes(const NspResult& r) {
    if (r.kind == NscKind::Path) return r.path.nodes;
    return r.node_set;
}

} // namespace bcp_detail

// The three-heavy-nodes case: take the lightest pairwise min-NSC B; if it
// weighs less than W/2, contract it and run the prefix split on G\B, else
// (V(B), V - V(B)) is exactly optimal.
inline Bipartition three_heavy(const GridGraph& g, const std::vector<NodeId>& heavy) {
    if (heavy.size() != 3) throw std::invalid_argument("three_heavy needs exactly three heavy nodes");
    const std::uint64_t W = g.total_weight();

    NspResult best;
    bool have = false;
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = a + 1; b < 3; ++b) {
            NspResult r = min_nsc(g, heavy[a], heavy[b]);
            if (!have || r.weight < best.weight) {
                best = std::move(r);
                have = true;
            }
        }
    }

    std::vector<NodeId> members = bcp_detail::connector_nodes(best);
    if (2 * best.weight < W) {
        GeneralGraph G = grid_to_general(g);
        std::vector<int> U;
        U.reserve(members.size());
        for (NodeId v : members) U.push_back(static_cast<int>(g.index(v)));
        GeneralGraph C = contract(G, U);
        GeneralBipartition gb = stn_bipartition(C);
        return bcp_detail::lift_general_bipartition(g, C, gb.side);
    }

    std::vector<std::uint8_t> side(g.node_count(), 1);
    for (NodeId v : members) side[g.index(v)] = 0;
    return make_bipartition(g, std::move(side));
}

inline Bipartition approx_bcp2(const GridGraph& g) {
    if (g.node_count() < 2) throw std::invalid_argument("need at least two nodes");

    // degenerate grids: the exact sweep is cheap with at most two rows and
    // the connector machinery needs three
    if (std::min(g.rows(), g.cols()) < 3) return exact_bcp2(g).bipartition;

    const std::uint64_t W = g.total_weight();
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        if (2 * static_cast<std::uint64_t>(g.weight_at(i)) >= W) {
            std::vector<std::uint8_t> side(g.node_count(), 0);
            side[i] = 1;
            return make_bipartition(g, std::move(side));
        }
    }

    std::vector<NodeId> heavy = heavy_nodes(g);
    if (heavy.size() == 3) return three_heavy(g, heavy);

    GeneralGraph G = grid_to_general(g);
    GeneralBipartition gb = stn_bipartition(G);
    return bcp_detail::lift_general_bipartition(g, G, gb.side);
}

} // namespace gridpart
