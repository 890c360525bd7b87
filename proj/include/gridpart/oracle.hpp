#pragma once

// Exhaustive ground-truth solvers for small instances. Everything here is
// deliberately independent of the fast solvers: plain DFS/flood fill over
// the grid model only, so the two code paths can check each other.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "gridpart/grid.hpp"

namespace gridpart::oracle {

struct OraclePath {
    std::uint64_t weight = 0;
    std::vector<NodeId> nodes;
};

struct OracleSet {
    std::uint64_t weight = 0;
    std::vector<NodeId> nodes;
};

struct OracleBcp {
    std::uint64_t balance = 0;
    Bipartition bipartition;
};

namespace detail {

inline std::size_t flood_outside(const GridGraph& g, const std::vector<std::uint8_t>& removed) {
    std::size_t first = g.node_count();
    std::size_t total = 0;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        if (!removed[i]) {
            if (first == g.node_count()) first = i;
            ++total;
        }
    }
    if (total == 0) return 0;
    std::size_t reached =
        gridpart::detail::flood_count(g, [&](std::size_t i) { return !removed[i]; }, first);
    return reached == total ? total : 0; // 0 signals "disconnected or empty"
}

} // namespace detail

// Minimum-weight simple st-path whose removal leaves the grid connected and
// non-empty. DFS over all simple paths with weight pruning.
inline std::optional<OraclePath> brute_min_nonseparating_path(const GridGraph& g, NodeId s, NodeId t) {
    if (g.node_count() > 25) throw CapabilityError("instance too large for oracle (N <= 25)");
    if (!g.in_bounds(s) || !g.in_bounds(t)) throw std::invalid_argument("node out of bounds");
    if (s == t) throw std::invalid_argument("endpoints must be distinct");

    std::optional<OraclePath> best;
    std::vector<std::uint8_t> on_path(g.node_count(), 0);
    std::vector<NodeId> cur;

    auto consider = [&]() {
        std::size_t rest = detail::flood_outside(g, on_path);
        if (rest == 0) return;
        std::uint64_t w = 0;
        for (NodeId v : cur) w += g.weight(v);
        if (!best || w < best->weight) best = OraclePath{w, cur};
    };

    // recursive lambda via explicit stack-free recursion
    std::uint64_t cur_weight = 0;
    auto dfs = [&](auto&& self, NodeId u) -> void {
        if (best && cur_weight >= best->weight) return;
        if (u == t) {
            consider();
            return;
        }
        g.for_each_neighbor(u, [&](NodeId v) {
            std::size_t idx = g.index(v);
            if (on_path[idx]) return;
            on_path[idx] = 1;
            cur.push_back(v);
            cur_weight += g.weight(v);
            self(self, v);
            cur_weight -= g.weight(v);
            cur.pop_back();
            on_path[idx] = 0;
        });
    };

    on_path[g.index(s)] = 1;
    cur.push_back(s);
    cur_weight = g.weight(s);
    dfs(dfs, s);
    return best;
}

// All-pairs minimum non-separating connector weights by subset enumeration.
// weight_of[s][t] index is row-major; entries without any NSC stay empty.
inline std::vector<std::vector<std::optional<std::uint64_t>>> brute_min_nsc_all_pairs(const GridGraph& g) {
    const std::size_t N = g.node_count();
    if (N > 20) throw CapabilityError("instance too large for oracle (N <= 20)");
    std::vector<std::vector<std::optional<std::uint64_t>>> table(
        N, std::vector<std::optional<std::uint64_t>>(N));
    const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << N) - 1);

    auto mask_connected = [&](std::uint32_t mask) {
        if (mask == 0) return false;
        int start = -1;
        for (std::size_t i = 0; i < N; ++i)
            if (mask >> i & 1u) { start = static_cast<int>(i); break; }
        std::uint32_t vis = 1u << start;
        std::vector<int> stack{start};
        const int n = g.cols();
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            NodeId v = g.node_at(static_cast<std::size_t>(u));
            auto push = [&](int r, int c) {
                int j = (r - 1) * n + (c - 1);
                if ((mask >> j & 1u) && !(vis >> j & 1u)) {
                    vis |= 1u << j;
                    stack.push_back(j);
                }
            };
            if (v.row > 1) push(v.row - 1, v.col);
            if (v.row < g.rows()) push(v.row + 1, v.col);
            if (v.col > 1) push(v.row, v.col - 1);
            if (v.col < n) push(v.row, v.col + 1);
        }
        return vis == mask;
    };

    for (std::uint32_t mask = 1; mask < full; ++mask) {
        if (!mask_connected(mask)) continue;
        std::uint32_t comp = full & ~mask;
        if (!mask_connected(comp)) continue;
        std::uint64_t w = 0;
        for (std::size_t i = 0; i < N; ++i)
            if (mask >> i & 1u) w += g.weight_at(i);
        for (std::size_t a = 0; a < N; ++a) {
            if (!(mask >> a & 1u)) continue;
            for (std::size_t b = a + 1; b < N; ++b) {
                if (!(mask >> b & 1u)) continue;
                auto& cell = table[a][b];
                if (!cell || w < *cell) cell = w;
            }
        }
    }
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = a + 1; b < N; ++b) table[b][a] = table[a][b];
    return table;
}

// Minimum-weight connected node set containing s and t whose complement is
// connected and non-empty.
inline std::optional<OracleSet> brute_min_nsc(const GridGraph& g, NodeId s, NodeId t) {
    const std::size_t N = g.node_count();
    if (N > 20) throw CapabilityError("instance too large for oracle (N <= 20)");
    if (!g.in_bounds(s) || !g.in_bounds(t)) throw std::invalid_argument("node out of bounds");
    if (s == t) throw std::invalid_argument("endpoints must be distinct");

    const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << N) - 1);
    const std::uint32_t need = (1u << g.index(s)) | (1u << g.index(t));

    std::optional<OracleSet> best;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        if ((mask & need) != need) continue;
        std::vector<std::uint8_t> removed(N, 0);
        std::uint64_t w = 0;
        for (std::size_t i = 0; i < N; ++i) {
            if (mask >> i & 1u) {
                removed[i] = 1;
                w += g.weight_at(i);
            }
        }
        if (best && w >= best->weight) continue;
        // connector connected?
        std::size_t inside = gridpart::detail::flood_count(
            g, [&](std::size_t i) { return removed[i] == 1; }, g.index(s));
        std::size_t member_count = 0;
        for (std::size_t i = 0; i < N; ++i) member_count += removed[i];
        if (inside != member_count) continue;
        if (detail::flood_outside(g, removed) == 0) continue;
        std::vector<NodeId> nodes;
        for (std::size_t i = 0; i < N; ++i)
            if (removed[i]) nodes.push_back(g.node_at(i));
        best = OracleSet{w, std::move(nodes)};
    }
    return best;
}

// Exhaustive maximum-balance connected bipartition.
inline OracleBcp brute_bcp2(const GridGraph& g) {
    const std::size_t N = g.node_count();
    if (N > 20) throw CapabilityError("instance too large for oracle (N <= 20)");
    if (N < 2) throw std::invalid_argument("need at least two nodes");

    const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << N) - 1);
    std::optional<std::uint64_t> best;
    std::uint32_t best_mask = 0;

    auto mask_connected = [&](std::uint32_t mask) {
        int start = -1;
        for (std::size_t i = 0; i < N; ++i)
            if (mask >> i & 1u) { start = static_cast<int>(i); break; }
        if (start < 0) return false;
        std::size_t total = 0;
        for (std::size_t i = 0; i < N; ++i) total += (mask >> i) & 1u;
        std::size_t reached = gridpart::detail::flood_count(
            g, [&](std::size_t i) { return (mask >> i & 1u) != 0; }, static_cast<std::size_t>(start));
        return reached == total;
    };

    // enumerate masks containing node 0 on side 1 to halve the work
    for (std::uint32_t mask = 1; mask < full; mask += 2) {
        if (!mask_connected(mask)) continue;
        if (!mask_connected(full & ~mask)) continue;
        std::uint64_t w1 = 0;
        for (std::size_t i = 0; i < N; ++i)
            if (mask >> i & 1u) w1 += g.weight_at(i);
        std::uint64_t bal = std::min(w1, g.total_weight() - w1);
        if (!best || bal > *best) {
            best = bal;
            best_mask = mask;
        }
    }
    if (!best) throw std::logic_error("no connected bipartition found");
    std::vector<std::uint8_t> side(N, 0);
    for (std::size_t i = 0; i < N; ++i)
        side[i] = static_cast<std::uint8_t>(best_mask >> i & 1u);
    OracleBcp out;
    out.balance = *best;
    out.bipartition = make_bipartition(g, std::move(side));
    return out;
}

// --- Reachable DP states -----------------------------------------------
//
// Reimplements the column-sweep state transition with explicit flood fill
// (no union-find, no shared code with the DP) so the topology-counting
// bounds can be validated against an independent route.

using DpState = std::pair<std::uint32_t, std::uint64_t>; // (mask, packed tau)

namespace detail {

inline std::uint64_t pack_tau(const std::vector<int>& tau) {
    std::uint64_t p = 0;
    for (std::size_t i = 0; i < tau.size(); ++i)
        p |= static_cast<std::uint64_t>(tau[i]) << (4 * i);
    return p;
}

inline std::vector<int> column_tau(int m, std::uint32_t z) {
    std::vector<int> tau(m);
    for (int i = 0; i < m; ++i)
        tau[i] = (i > 0 && ((z >> i) & 1u) == ((z >> (i - 1)) & 1u)) ? tau[i - 1] : i;
    return tau;
}

// One transition step via BFS on a 2-column gadget; empty result = illegal.
inline std::optional<std::vector<int>> step_tau(int m, std::uint32_t z, const std::vector<int>& tau,
                                                std::uint32_t znew) {
    // gadget nodes: 0..m-1 = old column rows, m..2m-1 = new column rows
    std::vector<std::vector<int>> adj(2 * m);
    for (int i = 0; i < m; ++i) {
        for (int k = i + 1; k < m; ++k)
            if (tau[i] == tau[k]) {
                adj[i].push_back(k);
                adj[k].push_back(i);
            }
        if (((z >> i) & 1u) == ((znew >> i) & 1u)) {
            adj[i].push_back(m + i);
            adj[m + i].push_back(i);
        }
        if (i + 1 < m && ((znew >> i) & 1u) == ((znew >> (i + 1)) & 1u)) {
            adj[m + i].push_back(m + i + 1);
            adj[m + i + 1].push_back(m + i);
        }
    }
    std::vector<int> comp(2 * m, -1);
    int ncomp = 0;
    for (int start = 0; start < 2 * m; ++start) {
        if (comp[start] >= 0) continue;
        std::vector<int> stack{start};
        comp[start] = ncomp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u])
                if (comp[v] < 0) {
                    comp[v] = ncomp;
                    stack.push_back(v);
                }
        }
        ++ncomp;
    }
    // closure: an old component with no new-column member
    std::vector<std::uint8_t> has_new(static_cast<std::size_t>(ncomp), 0);
    for (int i = 0; i < m; ++i) has_new[static_cast<std::size_t>(comp[m + i])] = 1;
    for (int i = 0; i < m; ++i)
        if (!has_new[static_cast<std::size_t>(comp[i])]) return std::nullopt;
    std::vector<int> rep(static_cast<std::size_t>(ncomp), m);
    for (int i = 0; i < m; ++i)
        rep[static_cast<std::size_t>(comp[m + i])] = std::min(rep[static_cast<std::size_t>(comp[m + i])], i);
    std::vector<int> out(m);
    for (int i = 0; i < m; ++i) out[i] = rep[static_cast<std::size_t>(comp[m + i])];
    return out;
}

} // namespace detail

// All distinct (mask, tau) states reachable after `steps` columns.
inline std::set<DpState> enumerate_reachable_topologies(int m, int steps) {
    if (m < 1 || m > 6 || steps < 1 || steps > 6)
        throw CapabilityError("enumerate_reachable_topologies limited to m <= 6, steps <= 6");
    std::set<DpState> cur;
    for (std::uint32_t z = 0; z < (1u << m); ++z)
        cur.insert({z, detail::pack_tau(detail::column_tau(m, z))});
    for (int s = 2; s <= steps; ++s) {
        std::set<DpState> next;
        for (const auto& [z, packed] : cur) {
            std::vector<int> tau(m);
            for (int i = 0; i < m; ++i) tau[i] = static_cast<int>(packed >> (4 * i) & 0xF);
            for (std::uint32_t znew = 0; znew < (1u << m); ++znew) {
                auto t2 = detail::step_tau(m, z, tau, znew);
                if (t2) next.insert({znew, detail::pack_tau(*t2)});
            }
        }
        cur.swap(next);
    }
    return cur;
}

} // namespace gridpart::oracle
