#pragma once

// General-graph layer used by the 5/4-approximation: st-numbering of
// biconnected graphs, the prefix-split bipartition built on it, and node-set
// contraction. Nodes carry 64-bit weights because contraction aggregates.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gridpart/grid.hpp"

namespace gridpart {

struct GeneralGraph {
    std::vector<std::uint64_t> weight;
    std::vector<std::vector<int>> adj;
    std::vector<std::vector<NodeId>> origin; // grid nodes each vertex represents

    int size() const { return static_cast<int>(weight.size()); }

    std::uint64_t total_weight() const {
        std::uint64_t w = 0;
        for (std::uint64_t x : weight) w += x;
        return w;
    }

    bool has_edge(int a, int b) const {
        for (int v : adj[static_cast<std::size_t>(a)])
            if (v == b) return true;
        return false;
    }

    void add_edge(int a, int b) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
};

inline GeneralGraph grid_to_general(const GridGraph& g) {
    GeneralGraph G;
    const std::size_t N = g.node_count();
    G.weight.resize(N);
    G.adj.resize(N);
    G.origin.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        G.weight[i] = g.weight_at(i);
        G.origin[i] = {g.node_at(i)};
    }
    const int m = g.rows(), n = g.cols();
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c) {
            int u = r * n + c;
            if (c + 1 < n) G.add_edge(u, u + 1);
            if (r + 1 < m) G.add_edge(u, u + n);
        }
    }
    return G;
}

inline bool is_connected(const GeneralGraph& G) {
    if (G.size() == 0) return false;
    std::vector<std::uint8_t> vis(static_cast<std::size_t>(G.size()), 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int count = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        ++count;
        for (int v : G.adj[static_cast<std::size_t>(u)])
            if (!vis[static_cast<std::size_t>(v)]) {
                vis[static_cast<std::size_t>(v)] = 1;
                stack.push_back(v);
            }
    }
    return count == G.size();
}

// Connected with no articulation vertex (a single edge counts as biconnected).
inline bool is_biconnected(const GeneralGraph& G) {
    const int n = G.size();
    if (n < 2) return false;
    if (!is_connected(G)) return false;

    std::vector<int> pre(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
        parent(static_cast<std::size_t>(n), -1), it(static_cast<std::size_t>(n), 0);
    int counter = 0;
    int root_children = 0;
    std::vector<int> stack{0};
    pre[0] = low[0] = counter++;
    while (!stack.empty()) {
        int u = stack.back();
        auto& i = it[static_cast<std::size_t>(u)];
        if (i < static_cast<int>(G.adj[static_cast<std::size_t>(u)].size())) {
            int v = G.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(i++)];
            if (pre[static_cast<std::size_t>(v)] < 0) {
                parent[static_cast<std::size_t>(v)] = u;
                pre[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = counter++;
                if (u == 0) ++root_children;
                stack.push_back(v);
            } else if (v != parent[static_cast<std::size_t>(u)]) {
                low[static_cast<std::size_t>(u)] =
                    std::min(low[static_cast<std::size_t>(u)], pre[static_cast<std::size_t>(v)]);
            }
        } else {
            stack.pop_back();
            int p = parent[static_cast<std::size_t>(u)];
            if (p >= 0) {
                low[static_cast<std::size_t>(p)] =
                    std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(u)]);
                if (p != 0 && low[static_cast<std::size_t>(u)] >= pre[static_cast<std::size_t>(p)])
                    return false; // p is an articulation vertex
            }
        }
    }
    return root_children <= 1;
}

struct StNumbering {
    std::vector<int> lambda; // 1..n
    std::vector<int> order;  // order[k] = vertex with lambda == k+1
};

inline bool is_valid_st_numbering(const GeneralGraph& G, int s, int t, const std::vector<int>& lambda) {
    const int n = G.size();
    if (static_cast<int>(lambda.size()) != n) return false;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v) {
        if (lambda[static_cast<std::size_t>(v)] < 1 || lambda[static_cast<std::size_t>(v)] > n)
            return false;
        if (seen[static_cast<std::size_t>(lambda[static_cast<std::size_t>(v)])]) return false;
        seen[static_cast<std::size_t>(lambda[static_cast<std::size_t>(v)])] = 1;
    }
    if (lambda[static_cast<std::size_t>(s)] != 1 || lambda[static_cast<std::size_t>(t)] != n)
        return false;
    for (int v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        bool smaller = false, larger = false;
        for (int u : G.adj[static_cast<std::size_t>(v)]) {
            if (lambda[static_cast<std::size_t>(u)] < lambda[static_cast<std::size_t>(v)]) smaller = true;
            if (lambda[static_cast<std::size_t>(u)] > lambda[static_cast<std::size_t>(v)]) larger = true;
        }
        if (!smaller || !larger) return false;
    }
    return true;
}

// Even-Tarjan st-numbering: DFS from t with (t,s) first, then the pathfinder
// pops vertices off a stack, each time tracing a path of new edges to an old
// vertex and re-pushing it; a vertex with no new edge left gets the next
// number. A virtual (s,t) edge is added for the computation when missing.
inline StNumbering st_numbering(const GeneralGraph& G, int s, int t) {
    const int n = G.size();
    if (n < 2) throw std::invalid_argument("st-numbering needs at least two vertices");
    if (s == t || s < 0 || t < 0 || s >= n || t >= n) throw std::invalid_argument("bad s/t");
    if (!is_biconnected(G)) throw std::invalid_argument("graph is not biconnected");

    // arc list with edge ids; arc (v,w,eid)
    struct Arc {
        int to;
        int eid;
    };
    std::vector<std::vector<Arc>> adj(static_cast<std::size_t>(n));
    int eid_count = 0;
    for (int v = 0; v < n; ++v)
        for (int w : G.adj[static_cast<std::size_t>(v)])
            if (v < w) {
                adj[static_cast<std::size_t>(v)].push_back({w, eid_count});
                adj[static_cast<std::size_t>(w)].push_back({v, eid_count});
                ++eid_count;
            }
    int st_eid = -1;
    for (const Arc& a : adj[static_cast<std::size_t>(s)])
        if (a.to == t) st_eid = a.eid;
    if (st_eid < 0) {
        st_eid = eid_count++;
        adj[static_cast<std::size_t>(s)].push_back({t, st_eid});
        adj[static_cast<std::size_t>(t)].push_back({s, st_eid});
    }
    // make (t,s) the first arc explored from the root
    for (std::size_t k = 0; k < adj[static_cast<std::size_t>(t)].size(); ++k)
        if (adj[static_cast<std::size_t>(t)][k].eid == st_eid) {
            std::swap(adj[static_cast<std::size_t>(t)][0], adj[static_cast<std::size_t>(t)][k]);
            break;
        }

    // DFS from t: preorder, parent, parent edge, lowpoint
    std::vector<int> pre(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
        parent(static_cast<std::size_t>(n), -1), parent_eid(static_cast<std::size_t>(n), -1),
        it(static_cast<std::size_t>(n), 0);
    int counter = 0;
    std::vector<int> dstack{t};
    pre[static_cast<std::size_t>(t)] = low[static_cast<std::size_t>(t)] = counter++;
    while (!dstack.empty()) {
        int u = dstack.back();
        auto& i = it[static_cast<std::size_t>(u)];
        if (i < static_cast<int>(adj[static_cast<std::size_t>(u)].size())) {
            const Arc a = adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(i++)];
            if (pre[static_cast<std::size_t>(a.to)] < 0) {
                parent[static_cast<std::size_t>(a.to)] = u;
                parent_eid[static_cast<std::size_t>(a.to)] = a.eid;
                pre[static_cast<std::size_t>(a.to)] = low[static_cast<std::size_t>(a.to)] = counter++;
                dstack.push_back(a.to);
            } else if (a.eid != parent_eid[static_cast<std::size_t>(u)]) {
                low[static_cast<std::size_t>(u)] = std::min(low[static_cast<std::size_t>(u)],
                                                            pre[static_cast<std::size_t>(a.to)]);
            }
        } else {
            dstack.pop_back();
            int p = parent[static_cast<std::size_t>(u)];
            if (p >= 0)
                low[static_cast<std::size_t>(p)] =
                    std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(u)]);
        }
    }

    // pathfinder
    std::vector<std::uint8_t> old_v(static_cast<std::size_t>(n), 0), old_e(static_cast<std::size_t>(eid_count), 0);
    old_v[static_cast<std::size_t>(s)] = old_v[static_cast<std::size_t>(t)] = 1;
    old_e[static_cast<std::size_t>(st_eid)] = 1;
    std::fill(it.begin(), it.end(), 0);

    std::vector<int> stack{t, s};
    std::vector<int> lambda(static_cast<std::size_t>(n), 0);
    int next_label = 0;
    std::vector<int> path;

    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == t) {
            lambda[static_cast<std::size_t>(v)] = ++next_label;
            break;
        }
        // find a new edge at v
        int chosen = -1;
        auto& cur = it[static_cast<std::size_t>(v)];
        while (cur < static_cast<int>(adj[static_cast<std::size_t>(v)].size())) {
            if (!old_e[static_cast<std::size_t>(adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(cur)].eid)]) {
                chosen = cur;
                break;
            }
            ++cur;
        }
        if (chosen < 0) {
            lambda[static_cast<std::size_t>(v)] = ++next_label;
            continue;
        }

        const Arc first = adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(chosen)];
        old_e[static_cast<std::size_t>(first.eid)] = 1;
        path.clear();
        path.push_back(v);
        path.push_back(first.to);

        if (pre[static_cast<std::size_t>(first.to)] < pre[static_cast<std::size_t>(v)]) {
            // edge toward an ancestor: it is old by the ancestors-of-old invariant
        } else if (parent[static_cast<std::size_t>(first.to)] == v &&
                   parent_eid[static_cast<std::size_t>(first.to)] == first.eid) {
            // tree edge down: chase the lowpoint to an old ancestor
            int u = first.to;
            while (!old_v[static_cast<std::size_t>(u)]) {
                old_v[static_cast<std::size_t>(u)] = 1;
                int nxt = -1;
                // prefer the frond realizing low(u), else the child carrying it
                for (const Arc& a : adj[static_cast<std::size_t>(u)]) {
                    if (old_e[static_cast<std::size_t>(a.eid)]) continue;
                    if (pre[static_cast<std::size_t>(a.to)] < pre[static_cast<std::size_t>(u)] &&
                        pre[static_cast<std::size_t>(a.to)] == low[static_cast<std::size_t>(u)] &&
                        a.eid != parent_eid[static_cast<std::size_t>(u)]) {
                        nxt = a.eid;
                        path.push_back(a.to);
                        u = a.to;
                        break;
                    }
                }
                if (nxt < 0) {
                    for (const Arc& a : adj[static_cast<std::size_t>(u)]) {
                        if (old_e[static_cast<std::size_t>(a.eid)]) continue;
                        if (parent[static_cast<std::size_t>(a.to)] == u &&
                            parent_eid[static_cast<std::size_t>(a.to)] == a.eid &&
                            low[static_cast<std::size_t>(a.to)] == low[static_cast<std::size_t>(u)]) {
                            nxt = a.eid;
                            path.push_back(a.to);
                            u = a.to;
                            break;
                        }
                    }
                }
                if (nxt < 0) throw std::logic_error("st-numbering: lowpoint path broke");
                old_e[static_cast<std::size_t>(nxt)] = 1;
            }
        } else {
            // frond from a descendant: climb tree edges back to an old vertex
            int u = first.to;
            while (!old_v[static_cast<std::size_t>(u)]) {
                old_v[static_cast<std::size_t>(u)] = 1;
                int pe = parent_eid[static_cast<std::size_t>(u)];
                old_e[static_cast<std::size_t>(pe)] = 1;
                u = parent[static_cast<std::size_t>(u)];
                path.push_back(u);
            }
        }

        // re-push: intermediates under v, v on top; the old endpoint stays put
        for (std::size_t k = path.size() - 1; k >= 1; --k) stack.push_back(path[k - 1]);
    }

    if (next_label != n) throw std::logic_error("st-numbering did not cover all vertices");
    StNumbering out;
    out.lambda = std::move(lambda);
    out.order.assign(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) out.order[static_cast<std::size_t>(out.lambda[static_cast<std::size_t>(v)]) - 1] = v;
    if (!is_valid_st_numbering(G, s, t, out.lambda))
        throw std::logic_error("st-numbering failed validation");
    return out;
}

struct GeneralBipartition {
    std::vector<std::uint8_t> side; // 0 = prefix V_k (contains s)
    std::uint64_t weight0 = 0;
    std::uint64_t weight1 = 0;
    int k_star = 0;

    std::uint64_t balance() const { return weight0 < weight1 ? weight0 : weight1; }
};

// Algorithm STN: number from the two heaviest vertices, then take the best
// prefix split. Both sides of any prefix are connected by the numbering.
inline GeneralBipartition stn_bipartition(const GeneralGraph& G) {
    const int n = G.size();
    if (n < 2) throw std::invalid_argument("need at least two vertices");

    std::vector<int> by_weight(static_cast<std::size_t>(n));
    std::iota(by_weight.begin(), by_weight.end(), 0);
    std::sort(by_weight.begin(), by_weight.end(), [&](int a, int b) {
        if (G.weight[static_cast<std::size_t>(a)] != G.weight[static_cast<std::size_t>(b)])
            return G.weight[static_cast<std::size_t>(a)] > G.weight[static_cast<std::size_t>(b)];
        return a < b;
    });
    int s = by_weight[0], t = by_weight[1];

    StNumbering num = st_numbering(G, s, t);
    const std::uint64_t W = G.total_weight();

    // prefix weights; find i with w(V_i) <= W/2 < w(V_{i+1})
    std::vector<std::uint64_t> prefw(static_cast<std::size_t>(n) + 1, 0);
    for (int k = 0; k < n; ++k)
        prefw[static_cast<std::size_t>(k) + 1] =
            prefw[static_cast<std::size_t>(k)] + G.weight[static_cast<std::size_t>(num.order[static_cast<std::size_t>(k)])];

    int i = 0;
    for (int k = 1; k <= n - 1; ++k)
        if (2 * prefw[static_cast<std::size_t>(k)] <= W) i = k;
    int k_star;
    if (i == 0) k_star = 1;
    else if (i == n - 1) k_star = n - 1;
    else k_star = (prefw[static_cast<std::size_t>(i)] >= W - prefw[static_cast<std::size_t>(i) + 1]) ? i : i + 1;

    GeneralBipartition out;
    out.k_star = k_star;
    out.side.assign(static_cast<std::size_t>(n), 1);
    for (int k = 0; k < k_star; ++k) out.side[static_cast<std::size_t>(num.order[static_cast<std::size_t>(k)])] = 0;
    for (int v = 0; v < n; ++v) {
        if (out.side[static_cast<std::size_t>(v)]) out.weight1 += G.weight[static_cast<std::size_t>(v)];
        else out.weight0 += G.weight[static_cast<std::size_t>(v)];
    }
    return out;
}

// Contract the connected set U into a single vertex, appended last. The new
// vertex carries the aggregate weight and the union of the origins.
inline GeneralGraph contract(const GeneralGraph& G, const std::vector<int>& U) {
    const int n = G.size();
    if (U.empty()) throw std::invalid_argument("cannot contract an empty set");
    std::vector<std::uint8_t> in_u(static_cast<std::size_t>(n), 0);
    for (int v : U) {
        if (v < 0 || v >= n) throw std::invalid_argument("contract: vertex out of range");
        in_u[static_cast<std::size_t>(v)] = 1;
    }
    // G[U] must be connected
    {
        std::vector<std::uint8_t> vis(static_cast<std::size_t>(n), 0);
        std::vector<int> stack{U[0]};
        vis[static_cast<std::size_t>(U[0])] = 1;
        std::size_t count = 0;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            ++count;
            for (int v : G.adj[static_cast<std::size_t>(u)])
                if (in_u[static_cast<std::size_t>(v)] && !vis[static_cast<std::size_t>(v)]) {
                    vis[static_cast<std::size_t>(v)] = 1;
                    stack.push_back(v);
                }
        }
        std::size_t u_size = 0;
        for (auto f : in_u) u_size += f;
        if (count != u_size) throw std::invalid_argument("contract: set is not connected");
    }

    GeneralGraph out;
    std::vector<int> remap(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int v = 0; v < n; ++v)
        if (!in_u[static_cast<std::size_t>(v)]) remap[static_cast<std::size_t>(v)] = next++;
    const int u_new = next;
    out.weight.assign(static_cast<std::size_t>(next) + 1, 0);
    out.adj.resize(static_cast<std::size_t>(next) + 1);
    out.origin.resize(static_cast<std::size_t>(next) + 1);

    for (int v = 0; v < n; ++v) {
        if (in_u[static_cast<std::size_t>(v)]) {
            out.weight[static_cast<std::size_t>(u_new)] += G.weight[static_cast<std::size_t>(v)];
            out.origin[static_cast<std::size_t>(u_new)].insert(out.origin[static_cast<std::size_t>(u_new)].end(),
                                                               G.origin[static_cast<std::size_t>(v)].begin(),
                                                               G.origin[static_cast<std::size_t>(v)].end());
        } else {
            out.weight[static_cast<std::size_t>(remap[static_cast<std::size_t>(v)])] = G.weight[static_cast<std::size_t>(v)];
            out.origin[static_cast<std::size_t>(remap[static_cast<std::size_t>(v)])] = G.origin[static_cast<std::size_t>(v)];
        }
    }

    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) {
        for (int w : G.adj[static_cast<std::size_t>(v)]) {
            if (v >= w) continue;
            int a = in_u[static_cast<std::size_t>(v)] ? u_new : remap[static_cast<std::size_t>(v)];
            int b = in_u[static_cast<std::size_t>(w)] ? u_new : remap[static_cast<std::size_t>(w)];
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            edges.push_back({a, b});
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto [a, b] : edges) out.add_edge(a, b);
    return out;
}

} // namespace gridpart
