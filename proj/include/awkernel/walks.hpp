#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "awkernel/graph.hpp"

namespace awkernel {

// A walk is a node-id sequence whose consecutive nodes are adjacent. "Length
// l" counts positions (nodes), not edges, so R(phi) lands in R^{l*l}.
using Walk = std::vector<int>;

// Anonymous walk: 1-based first-occurrence labels. First label is 1; label at
// position i is either a previously used label or (max label so far) + 1.
using AnonymousWalk = std::vector<int>;

constexpr std::size_t kDefaultEnumerationCap = 200000;

// All walks of l nodes starting at u, in DFS order. Immediate backtracking is
// allowed. Throws EnumerationOverflow once more than `cap` walks exist.
inline std::vector<Walk> enumerate_walks(const Graph& g, int u, int l,
                                         std::size_t cap = kDefaultEnumerationCap) {
    if (l < 1) throw ParamError("enumerate_walks: l must be >= 1");
    if (u < 0 || u >= g.node_count) throw ParamError("enumerate_walks: bad start node");
    std::vector<Walk> out;
    Walk current;
    current.reserve(static_cast<std::size_t>(l));
    current.push_back(u);
    auto dfs = [&](auto&& self) -> void {
        if (static_cast<int>(current.size()) == l) {
            if (out.size() >= cap)
                throw EnumerationOverflow(
                    "enumerate_walks: more than " + std::to_string(cap) +
                    " walks from one node; switch to sampling");
            out.push_back(current);
            return;
        }
        for (int v : g.neighbors[static_cast<std::size_t>(current.back())]) {
            current.push_back(v);
            self(self);
            current.pop_back();
        }
    };
    dfs(dfs);
    return out;
}

// m uniform random walks of l nodes from u; empty when u is isolated.
// Deterministic given (rng state, graph, u).
inline std::vector<Walk> sample_walks(const Graph& g, int u, int l, int m,
                                      std::mt19937_64& rng) {
    if (m < 1) throw ParamError("sample_walks: m must be >= 1");
    if (u < 0 || u >= g.node_count) throw ParamError("sample_walks: bad start node");
    std::vector<Walk> out;
    if (g.neighbors[static_cast<std::size_t>(u)].empty() && l >= 2) return out;
    out.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        Walk w;
        w.reserve(static_cast<std::size_t>(l));
        w.push_back(u);
        for (int step = 1; step < l; ++step) {
            const auto& adj = g.neighbors[static_cast<std::size_t>(w.back())];
            std::uniform_int_distribution<std::size_t> pick(0, adj.size() - 1);
            w.push_back(adj[pick(rng)]);
        }
        out.push_back(std::move(w));
    }
    return out;
}

inline std::vector<Walk> sample_walks(const Graph& g, int u, int l, int m,
                                      std::uint64_t seed) {
    auto rng = make_rng(seed, 0, static_cast<std::uint64_t>(u), /*salt=*/0x77616c6b);
    return sample_walks(g, u, l, m, rng);
}

// Label at position i = 1-based index of the first occurrence of w[i] among
// the distinct nodes seen so far.
inline AnonymousWalk anonymize(const Walk& w) {
    AnonymousWalk labels;
    labels.reserve(w.size());
    std::vector<int> seen;  // distinct nodes in first-occurrence order
    for (int node : w) {
        int idx = 0;
        for (; idx < static_cast<int>(seen.size()); ++idx)
            if (seen[static_cast<std::size_t>(idx)] == node) break;
        if (idx == static_cast<int>(seen.size())) seen.push_back(node);
        labels.push_back(idx + 1);
    }
    return labels;
}

inline bool is_valid_anonymous_walk(const AnonymousWalk& aw) {
    int max_label = 0;
    for (std::size_t i = 0; i < aw.size(); ++i) {
        int lab = aw[i];
        if (lab < 1 || lab > max_label + 1) return false;
        if (i == 0 && lab != 1) return false;
        max_label = std::max(max_label, lab);
    }
    return max_label <= static_cast<int>(aw.size());
}

inline std::vector<AnonymousWalk> sample_anonymous_walks(const Graph& g, int u, int l,
                                                         int m, std::uint64_t seed) {
    auto rng = make_rng(seed, 0, static_cast<std::uint64_t>(u), /*salt=*/0x616e6f6e);
    std::vector<AnonymousWalk> out;
    for (const Walk& w : sample_walks(g, u, l, m, rng)) out.push_back(anonymize(w));
    return out;
}

// R(phi): l blocks of width l; block i carries a single 1 at index
// (label_i - 1). For phi=(1,2,3,1) this reproduces the
// one-hot(1),one-hot(2),one-hot(3),one-hot(1) block pattern.
inline Eigen::VectorXd encode_aw(const AnonymousWalk& phi, int l) {
    if (static_cast<int>(phi.size()) != l)
        throw ParamError("encode_aw: walk length != l");
    Eigen::VectorXd r = Eigen::VectorXd::Zero(static_cast<long>(l) * l);
    for (int i = 0; i < l; ++i) {
        int lab = phi[static_cast<std::size_t>(i)];
        if (lab < 1 || lab > l) throw ParamError("encode_aw: label out of range");
        r(static_cast<long>(i) * l + (lab - 1)) = 1.0;
    }
    return r;
}

// X(w): per-node attribute rows unit-normalized (zero rows stay zero) and
// concatenated in position order; dimension |w| * d0. Normalizing keeps
// x1.dot(x2) <= l so the exp(alpha*x - alpha*l) rewrite of the Gaussian
// kernel applies to the walk branch too.
inline Eigen::VectorXd encode_walk(const Walk& w, const Eigen::MatrixXd& attributes) {
    const long d0 = attributes.cols();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<long>(w.size()) * d0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        Eigen::VectorXd row = attributes.row(w[i]).transpose();
        double norm = row.norm();
        if (norm > 0) row /= norm;
        x.segment(static_cast<long>(i) * d0, d0) = row;
    }
    return x;
}

// All valid anonymous walks of length l whose consecutive labels differ (the
// ones realizable as walks on simple graphs), in lexicographic order.
inline std::vector<AnonymousWalk> aw_universe(int l) {
    std::vector<AnonymousWalk> out;
    AnonymousWalk cur;
    auto rec = [&](auto&& self, int max_label) -> void {
        if (static_cast<int>(cur.size()) == l) {
            out.push_back(cur);
            return;
        }
        for (int lab = 1; lab <= max_label + 1 && lab <= l; ++lab) {
            if (!cur.empty() && cur.back() == lab) continue;
            cur.push_back(lab);
            self(self, std::max(max_label, lab));
            cur.pop_back();
        }
    };
    if (l >= 1) rec(rec, 0);
    return out;
}

// Multiset of anonymous walks with multiplicities, used by the exact kernels
// and the enumeration-mode embeddings.
using AwCounts = std::map<AnonymousWalk, double>;

inline AwCounts count_anonymous_walks(const std::vector<Walk>& walks) {
    AwCounts counts;
    for (const Walk& w : walks) counts[anonymize(w)] += 1.0;
    return counts;
}

}  // namespace awkernel
