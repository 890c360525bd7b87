#pragma once

// Exact maximum balanced connected bipartition on grids: a column sweep over
// configurations (z, theta, tau), where z is the column's side mask, theta
// the side-1 weight of the processed prefix, and tau the connection topology
// of the current column (component representative = smallest member row).
//
// Transition rules for a new column mask z':
//   - a component of the previous column survives iff one of its rows keeps
//     its side in z' (horizontal adjacency);
//   - closing the unique component of a side yields a feasible completion
//     (all remaining columns go to the other side), which is scored but not
//     stored;
//   - any other closure is illegal;
//   - otherwise tau' is rebuilt by union-find over vertical runs of z' and
//     the surviving components' anchor rows.
//
// Also holds the topology-counting functions used to bound the state space.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gridpart/grid.hpp"

namespace gridpart {

// ---- counting functions ---------------------------------------------------

// alpha(i,j): number of 0-topologies of i segments with j uncovered subsets.
// alpha(i,0) = 0, alpha(i,i) = 1, alpha(i,j) = sum_{k=j-1}^{i-1} alpha(i-1,k).
inline std::uint64_t alpha(int i, int j) {
    if (i < 1 || j < 0 || j > i) throw std::invalid_argument("alpha needs 0 <= j <= i, i >= 1");
    std::vector<std::vector<std::uint64_t>> a(static_cast<std::size_t>(i) + 1);
    for (int ii = 1; ii <= i; ++ii) {
        a[static_cast<std::size_t>(ii)].assign(static_cast<std::size_t>(ii) + 1, 0);
        a[static_cast<std::size_t>(ii)][static_cast<std::size_t>(ii)] = 1;
        for (int jj = 1; jj < ii; ++jj) {
            std::uint64_t sum = 0;
            for (int k = jj - 1; k <= ii - 1; ++k)
                if (k >= 0 && k <= ii - 1) sum += a[static_cast<std::size_t>(ii) - 1][static_cast<std::size_t>(k)];
            a[static_cast<std::size_t>(ii)][static_cast<std::size_t>(jj)] = sum;
        }
    }
    return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = std::min(i, n); j >= 1; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j) - 1];
    return row[static_cast<std::size_t>(k)];
}

struct TopologyBound {
    std::uint64_t t = 0;           // sum_j 2^j alpha(p,j)
    std::uint64_t closed_form = 0; // 4^p - C(2p,p)
};

// t(p) with its closed-form upper bound; the inequality t(p) <= bound is a
// structural invariant and is asserted here.
inline TopologyBound topology_bound(int p) {
    if (p < 1) throw std::invalid_argument("p >= 1");
    TopologyBound out;
    for (int j = 1; j <= p; ++j) out.t += (std::uint64_t{1} << j) * alpha(p, j);
    out.closed_form = (std::uint64_t{1} << (2 * p)) - binomial(2 * p, p);
    if (out.t > out.closed_form) throw std::logic_error("topology bound violated");
    return out;
}

// ---- tau packing ------------------------------------------------------------

// tau arrays are packed 4 bits per row (row caps at 12 < 16)
inline int tau_get(std::uint64_t packed, int i) { return static_cast<int>(packed >> (4 * i) & 0xF); }

inline std::uint64_t tau_pack(const std::vector<int>& tau) {
    std::uint64_t p = 0;
    for (std::size_t i = 0; i < tau.size(); ++i) p |= static_cast<std::uint64_t>(tau[i]) << (4 * i);
    return p;
}

// topology of a lone column: vertical runs of equal side bits
inline std::uint64_t column_topology(int m, std::uint32_t z) {
    std::uint64_t packed = 0;
    int rep = 0;
    for (int i = 0; i < m; ++i) {
        if (i > 0 && ((z >> i) & 1u) != ((z >> (i - 1)) & 1u)) rep = i;
        packed |= static_cast<std::uint64_t>(rep) << (4 * i);
    }
    return packed;
}

// ---- single transition (unit-testable form) --------------------------------

struct ExtendResult {
    enum class Kind { NewConfig, Illegal, Feasible } kind = Kind::Illegal;
    std::uint64_t tau = 0;               // NewConfig
    std::uint64_t theta = 0;             // NewConfig
    std::uint64_t candidate_balance = 0; // Feasible: best completion balance
};

namespace bcp_detail {

struct CompInfo {
    std::uint32_t members[12]; // member-row mask per component
    int reps[12];
    int sides[12];
    int count = 0;
    int per_side[2] = {0, 0};
};

inline CompInfo census(int m, std::uint32_t z, std::uint64_t tau) {
    CompInfo ci;
    for (int i = 0; i < m; ++i) {
        int rep = tau_get(tau, i);
        int found = -1;
        for (int c = 0; c < ci.count; ++c)
            if (ci.reps[c] == rep) { found = c; break; }
        if (found < 0) {
            found = ci.count++;
            ci.reps[found] = rep;
            ci.members[found] = 0;
            ci.sides[found] = static_cast<int>(z >> i & 1u);
            ++ci.per_side[ci.sides[found]];
        }
        ci.members[found] |= 1u << i;
    }
    return ci;
}

// tau' for a legal transition: union-find over vertical runs of znew plus
// the surviving components' anchor rows.
inline std::uint64_t next_tau(int m, std::uint32_t znew, const CompInfo& ci, std::uint32_t agree) {
    int parent[12];
    for (int i = 0; i < m; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    for (int i = 0; i + 1 < m; ++i)
        if (((znew >> i) & 1u) == ((znew >> (i + 1)) & 1u)) unite(i, i + 1);
    for (int c = 0; c < ci.count; ++c) {
        std::uint32_t anchors = ci.members[c] & agree;
        int base = -1;
        for (int i = 0; i < m; ++i) {
            if (!(anchors >> i & 1u)) continue;
            if (base < 0) base = i;
            else unite(base, i);
        }
    }
    std::vector<int> tau(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) tau[static_cast<std::size_t>(i)] = find(i);
    return tau_pack(tau);
}

} // namespace bcp_detail

// One DP transition in isolation. `col_weights` are the weights of column j
// (the column being entered), `weight_before` the total weight of columns
// < j, `total_weight` the whole grid.
inline ExtendResult extend(int m, std::uint32_t prev_z, std::uint64_t prev_tau, std::uint64_t prev_theta,
                           std::uint32_t new_z, const std::vector<std::uint64_t>& col_weights,
                           std::uint64_t weight_before, std::uint64_t total_weight) {
    if (m < 1 || m > 12) throw std::invalid_argument("m out of range");
    auto ci = bcp_detail::census(m, prev_z, prev_tau);
    const std::uint32_t full = m == 32 ? ~0u : ((1u << m) - 1);
    const std::uint32_t agree = ~(new_z ^ prev_z) & full;

    bool any_closed = false;
    bool candidate[2] = {false, false};
    for (int c = 0; c < ci.count; ++c) {
        if ((ci.members[c] & agree) != 0) continue; // survives
        any_closed = true;
        int q = ci.sides[c];
        if (ci.per_side[q] == 1) candidate[q] = true;
    }

    ExtendResult out;
    if (any_closed) {
        // a multi-component closure alongside a single-component one still
        // yields the candidate; the transition itself is never stored
        if (!candidate[0] && !candidate[1]) {
            out.kind = ExtendResult::Kind::Illegal;
            return out;
        }
        out.kind = ExtendResult::Kind::Feasible;
        std::uint64_t best = 0;
        for (int q = 0; q < 2; ++q) {
            if (!candidate[q]) continue;
            std::uint64_t side_q = q == 1 ? prev_theta : weight_before - prev_theta;
            std::uint64_t bal = std::min(side_q, total_weight - side_q);
            best = std::max(best, bal);
        }
        out.candidate_balance = best;
        return out;
    }

    out.kind = ExtendResult::Kind::NewConfig;
    out.tau = bcp_detail::next_tau(m, new_z, ci, agree);
    out.theta = prev_theta;
    for (int i = 0; i < m; ++i)
        if (new_z >> i & 1u) out.theta += col_weights[static_cast<std::size_t>(i)];
    return out;
}

// ---- the sweep --------------------------------------------------------------

inline constexpr int kMaxExactRows = 12;

struct RawDpResult {
    std::uint64_t balance = 0;
    std::vector<std::uint8_t> side; // row-major m*n over the oriented grid
};

class ProfileDp {
public:
    struct Stored {
        std::uint64_t tau;
        std::uint64_t theta;
        std::int32_t parent;
        std::uint32_t col;
        std::uint32_t z;
    };

    // weights: row-major m*n, zeros allowed (scaled instances)
    ProfileDp(int m, int n, std::vector<std::uint64_t> weights)
        : m_(m), n_(n), w_(std::move(weights)) {
        if (m_ < 1 || n_ < 1) throw std::invalid_argument("bad dimensions");
        if (static_cast<std::size_t>(m_) * n_ != w_.size())
            throw std::invalid_argument("weight matrix does not match dimensions");
        if (static_cast<std::size_t>(m_) * n_ < 2) throw std::invalid_argument("need at least two nodes");
        if (m_ > kMaxExactRows)
            throw CapabilityError("row count " + std::to_string(m_) + " exceeds the exact solver cap (" +
                                  std::to_string(kMaxExactRows) + "); use the approximation or the fptas");
    }

    RawDpResult solve() {
        arena_.clear();
        col_begin_.assign(static_cast<std::size_t>(n_) + 1, 0);
        distinct_ztau_.assign(static_cast<std::size_t>(n_), 0);

        const std::uint32_t masks = 1u << m_;
        std::uint64_t total = 0;
        std::vector<std::uint64_t> col_pref(static_cast<std::size_t>(n_) + 1, 0);
        for (int j = 0; j < n_; ++j) {
            std::uint64_t cw = 0;
            for (int i = 0; i < m_; ++i) cw += w(i, j);
            col_pref[static_cast<std::size_t>(j) + 1] = col_pref[static_cast<std::size_t>(j)] + cw;
        }
        total = col_pref[static_cast<std::size_t>(n_)];

        // column 0: one configuration per mask
        for (std::uint32_t z = 0; z < masks; ++z) {
            std::uint64_t theta = 0;
            for (int i = 0; i < m_; ++i)
                if (z >> i & 1u) theta += w(i, 0);
            arena_.push_back({column_topology(m_, z), theta, -1, 0, z});
        }
        col_begin_[1] = arena_.size();
        distinct_ztau_[0] = masks;

        struct Best {
            bool set = false;
            std::uint64_t balance = 0;
            enum class Kind { Final, Mid } kind = Kind::Final;
            std::size_t cfg = 0;
            int suffix_side = 0; // Mid: side filling columns >= col
            int col = 0;         // Mid: first filled column
        } best;

        auto offer_mid = [&](std::uint64_t bal, std::size_t cfg, int q, int j) {
            if (!best.set || bal > best.balance) {
                best.set = true;
                best.balance = bal;
                best.kind = Best::Kind::Mid;
                best.cfg = cfg;
                best.suffix_side = 1 - q;
                best.col = j;
            }
        };

        struct KeyHash {
            std::size_t operator()(const std::pair<std::uint32_t, std::uint64_t>& k) const noexcept {
                std::uint64_t x = (static_cast<std::uint64_t>(k.first) << 48) ^ k.second;
                x += 0x9e3779b97f4a7c15ULL;
                x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
                x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
                return static_cast<std::size_t>(x ^ (x >> 31));
            }
        };
        std::unordered_map<std::pair<std::uint32_t, std::uint64_t>,
                           std::vector<std::pair<std::uint64_t, std::size_t>>, KeyHash>
            layer;
        std::unordered_set<std::uint64_t> ztau_seen;

        for (int j = 1; j < n_; ++j) {
            layer.clear();
            ztau_seen.clear();
            std::vector<std::uint64_t> colw(static_cast<std::size_t>(m_));
            for (int i = 0; i < m_; ++i) colw[static_cast<std::size_t>(i)] = w(i, j);

            const std::size_t lo = col_begin_[static_cast<std::size_t>(j) - 1 + 0];
            const std::size_t hi = col_begin_[static_cast<std::size_t>(j)];
            for (std::size_t idx = lo; idx < hi; ++idx) {
                const Stored cfg = arena_[idx];
                auto ci = bcp_detail::census(m_, cfg.z, cfg.tau);
                const std::uint32_t full = (1u << m_) - 1;

                // feasible completion: a side with exactly one component can
                // stop here and cede all remaining columns to the other side
                for (int q = 0; q < 2; ++q) {
                    if (ci.per_side[q] != 1) continue;
                    std::uint64_t side_q =
                        q == 1 ? cfg.theta : col_pref[static_cast<std::size_t>(j)] - cfg.theta;
                    offer_mid(std::min(side_q, total - side_q), idx, q, j);
                }

                for (std::uint32_t z2 = 0; z2 < masks; ++z2) {
                    const std::uint32_t agree = ~(z2 ^ cfg.z) & full;
                    bool closed = false;
                    for (int c = 0; c < ci.count; ++c)
                        if ((ci.members[c] & agree) == 0) { closed = true; break; }
                    if (closed) continue; // candidates were scored above

                    std::uint64_t tau2 = bcp_detail::next_tau(m_, z2, ci, agree);
                    std::uint64_t theta2 = cfg.theta;
                    for (int i = 0; i < m_; ++i)
                        if (z2 >> i & 1u) theta2 += colw[static_cast<std::size_t>(i)];

                    auto& bucket = layer[{z2, theta2}];
                    bool dup = false;
                    for (const auto& [t, unused] : bucket)
                        if (t == tau2) { dup = true; break; }
                    if (dup) continue; // keep the first-encountered parent
                    bucket.push_back({tau2, arena_.size()});
                    ztau_seen.insert(static_cast<std::uint64_t>(z2) << 48 | tau2);
                    arena_.push_back({tau2, theta2, static_cast<std::int32_t>(idx),
                                      static_cast<std::uint32_t>(j), z2});
                }
            }
            col_begin_[static_cast<std::size_t>(j) + 1] = arena_.size();
            distinct_ztau_[static_cast<std::size_t>(j)] = ztau_seen.size();
        }

        // final column: feasible iff each side is exactly one component
        for (std::size_t idx = col_begin_[static_cast<std::size_t>(n_) - 1];
             idx < col_begin_[static_cast<std::size_t>(n_)]; ++idx) {
            const Stored& cfg = arena_[idx];
            auto ci = bcp_detail::census(m_, cfg.z, cfg.tau);
            if (ci.per_side[0] != 1 || ci.per_side[1] != 1) continue;
            std::uint64_t bal = std::min(cfg.theta, total - cfg.theta);
            if (!best.set || bal > best.balance) {
                best.set = true;
                best.balance = bal;
                best.kind = Best::Kind::Final;
                best.cfg = idx;
            }
        }

        if (!best.set) throw std::logic_error("no connected bipartition found");

        // reconstruct the side matrix through the parent chain
        RawDpResult out;
        out.balance = best.balance;
        out.side.assign(static_cast<std::size_t>(m_) * n_, 0);
        int paint_from;
        std::size_t chain;
        if (best.kind == Best::Kind::Mid) {
            for (int j = best.col; j < n_; ++j)
                for (int i = 0; i < m_; ++i)
                    out.side[cell(i, j)] = static_cast<std::uint8_t>(best.suffix_side);
            paint_from = best.col - 1;
            chain = best.cfg;
        } else {
            paint_from = n_ - 1;
            chain = best.cfg;
        }
        for (int j = paint_from; j >= 0; --j) {
            const Stored& cfg = arena_[chain];
            for (int i = 0; i < m_; ++i)
                out.side[cell(i, j)] = static_cast<std::uint8_t>(cfg.z >> i & 1u);
            if (j > 0) chain = static_cast<std::size_t>(cfg.parent);
        }

        // consistency: recompute the balance from the painted sides
        std::uint64_t w1 = 0;
        for (int j = 0; j < n_; ++j)
            for (int i = 0; i < m_; ++i)
                if (out.side[cell(i, j)]) w1 += w(i, j);
        if (std::min(w1, total - w1) != out.balance)
            throw std::logic_error("reconstruction does not match tracked balance");
        return out;
    }

    const std::vector<Stored>& arena() const { return arena_; }
    const std::vector<std::size_t>& column_offsets() const { return col_begin_; }
    const std::vector<std::size_t>& distinct_ztau_per_column() const { return distinct_ztau_; }
    int rows() const { return m_; }
    int cols() const { return n_; }

private:
    std::uint64_t w(int i, int j) const { return w_[cell(i, j)]; }
    std::size_t cell(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

    int m_;
    int n_;
    std::vector<std::uint64_t> w_;
    std::vector<Stored> arena_;
    std::vector<std::size_t> col_begin_;
    std::vector<std::size_t> distinct_ztau_;
};

struct DpResult {
    std::uint64_t balance = 0;
    Bipartition bipartition;
};

// Orients the grid so m <= n, runs the sweep, and maps the answer back.
inline DpResult exact_bcp2(const GridGraph& g) {
    if (g.node_count() < 2) throw std::invalid_argument("need at least two nodes");
    const bool transpose = g.rows() > g.cols();
    const int m = transpose ? g.cols() : g.rows();
    const int n = transpose ? g.rows() : g.cols();

    std::vector<std::uint64_t> w(static_cast<std::size_t>(m) * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            NodeId v = transpose ? NodeId{j + 1, i + 1} : NodeId{i + 1, j + 1};
            w[static_cast<std::size_t>(i) * n + j] = g.weight(v);
        }

    ProfileDp dp(m, n, std::move(w));
    RawDpResult raw = dp.solve();

    std::vector<std::uint8_t> side(g.node_count());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            NodeId v = transpose ? NodeId{j + 1, i + 1} : NodeId{i + 1, j + 1};
            side[g.index(v)] = raw.side[static_cast<std::size_t>(i) * n + j];
        }
    DpResult out;
    out.balance = raw.balance;
    out.bipartition = make_bipartition(g, std::move(side));
    return out;
}

} // namespace gridpart
