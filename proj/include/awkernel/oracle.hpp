#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "awkernel/feature_maps.hpp"
#include "awkernel/graph.hpp"
#include "awkernel/linalg.hpp"
#include "awkernel/walks.hpp"

// Exact brute-force kernels (ground truth for the Nystrom pipeline) and 1-WL
// color refinement. Everything here enumerates, so inputs must stay at desk
// scale.
namespace awkernel {

enum class BaseMode { hard_delta, gaussian };

namespace detail {

// All l-node walks from every start node, keyed by raw attribute sequence
// (hard delta) with multiplicities.
inline std::map<std::vector<double>, double> walk_attr_counts(const Graph& g, int l,
                                                              std::size_t cap) {
    std::map<std::vector<double>, double> counts;
    for (int u = 0; u < g.node_count; ++u) {
        for (const Walk& w : enumerate_walks(g, u, l, cap)) {
            std::vector<double> key;
            key.reserve(w.size() * static_cast<std::size_t>(g.attr_dim()));
            for (int node : w)
                for (int j = 0; j < g.attr_dim(); ++j) key.push_back(g.attributes(node, j));
            counts[key] += 1.0;
        }
    }
    return counts;
}

// Distinct encoded feature rows with multiplicities, for Gaussian-mode sums.
struct FeatureCounts {
    Eigen::MatrixXd features;  // D x dim
    Eigen::VectorXd counts;    // D
};

inline FeatureCounts to_feature_counts(const std::map<std::vector<double>, double>& m,
                                       long dim) {
    FeatureCounts fc;
    fc.features.resize(static_cast<long>(m.size()), dim);
    fc.counts.resize(static_cast<long>(m.size()));
    long row = 0;
    for (const auto& [key, c] : m) {
        for (long j = 0; j < dim; ++j) fc.features(row, j) = key[static_cast<std::size_t>(j)];
        fc.counts(row) = c;
        ++row;
    }
    return fc;
}

// sum_{i,j} c1_i c2_j k_Gauss(x_i, y_j)
inline double gaussian_cross_sum(const FeatureCounts& a, const FeatureCounts& b,
                                 double alpha) {
    if (a.features.rows() == 0 || b.features.rows() == 0) return 0.0;
    Eigen::VectorXd na = a.features.rowwise().squaredNorm();
    Eigen::VectorXd nb = b.features.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = na.replicate(1, b.features.rows()) +
                         nb.transpose().replicate(a.features.rows(), 1) -
                         2.0 * a.features * b.features.transpose();
    Eigen::MatrixXd k = (-0.5 * alpha * d2.array().max(0.0)).exp();
    return a.counts.dot(k * b.counts);
}

inline std::map<std::vector<double>, double> walk_gauss_counts(const Graph& g, int l,
                                                               std::size_t cap) {
    std::map<std::vector<double>, double> counts;
    for (int u = 0; u < g.node_count; ++u) {
        for (const Walk& w : enumerate_walks(g, u, l, cap)) {
            Eigen::VectorXd x = encode_walk(w, g.attributes);
            counts[std::vector<double>(x.data(), x.data() + x.size())] += 1.0;
        }
    }
    return counts;
}

inline std::vector<Walk> enumerate_paths(const Graph& g, int u, int l, std::size_t cap) {
    std::vector<Walk> out;
    Walk current{u};
    std::vector<char> used(static_cast<std::size_t>(g.node_count), 0);
    used[static_cast<std::size_t>(u)] = 1;
    auto dfs = [&](auto&& self) -> void {
        if (static_cast<int>(current.size()) == l) {
            if (out.size() >= cap) throw EnumerationOverflow("enumerate_paths: cap exceeded");
            out.push_back(current);
            return;
        }
        for (int v : g.neighbors[static_cast<std::size_t>(current.back())]) {
            if (used[static_cast<std::size_t>(v)]) continue;
            used[static_cast<std::size_t>(v)] = 1;
            current.push_back(v);
            self(self);
            current.pop_back();
            used[static_cast<std::size_t>(v)] = 0;
        }
    };
    if (l >= 1) dfs(dfs);
    return out;
}

}  // namespace detail

// K_walk(G1,G2) = sum over all walk pairs of delta(X(w1),X(w2)), or of
// k_Gauss on unit-block walk encodings in gaussian mode.
inline double exact_rwgk(const Graph& g1, const Graph& g2, int l,
                         BaseMode mode = BaseMode::hard_delta, double alpha = 1.5,
                         std::size_t cap = kDefaultEnumerationCap) {
    if (g1.attr_dim() != g2.attr_dim())
        throw ParamError("exact_rwgk: attribute dimension mismatch");
    if (mode == BaseMode::hard_delta) {
        auto c1 = detail::walk_attr_counts(g1, l, cap);
        auto c2 = detail::walk_attr_counts(g2, l, cap);
        double k = 0.0;
        for (const auto& [key, c] : c1) {
            auto it = c2.find(key);
            if (it != c2.end()) k += c * it->second;
        }
        return k;
    }
    const long dim = static_cast<long>(l) * g1.attr_dim();
    auto fc1 = detail::to_feature_counts(detail::walk_gauss_counts(g1, l, cap), dim);
    auto fc2 = detail::to_feature_counts(detail::walk_gauss_counts(g2, l, cap), dim);
    return detail::gaussian_cross_sum(fc1, fc2, alpha);
}

// Path kernel: the same double sum restricted to walks without repeated nodes.
inline double exact_path_kernel(const Graph& g1, const Graph& g2, int l,
                                BaseMode mode = BaseMode::hard_delta, double alpha = 1.5,
                                std::size_t cap = kDefaultEnumerationCap) {
    if (g1.attr_dim() != g2.attr_dim())
        throw ParamError("exact_path_kernel: attribute dimension mismatch");
    auto collect = [&](const Graph& g) {
        std::map<std::vector<double>, double> raw;
        std::map<std::vector<double>, double> enc;
        for (int u = 0; u < g.node_count; ++u) {
            for (const Walk& p : detail::enumerate_paths(g, u, l, cap)) {
                if (mode == BaseMode::hard_delta) {
                    std::vector<double> key;
                    for (int node : p)
                        for (int j = 0; j < g.attr_dim(); ++j)
                            key.push_back(g.attributes(node, j));
                    raw[key] += 1.0;
                } else {
                    Eigen::VectorXd x = encode_walk(p, g.attributes);
                    enc[std::vector<double>(x.data(), x.data() + x.size())] += 1.0;
                }
            }
        }
        return mode == BaseMode::hard_delta ? raw : enc;
    };
    auto c1 = collect(g1);
    auto c2 = collect(g2);
    if (mode == BaseMode::hard_delta) {
        double k = 0.0;
        for (const auto& [key, c] : c1) {
            auto it = c2.find(key);
            if (it != c2.end()) k += c * it->second;
        }
        return k;
    }
    const long dim = static_cast<long>(l) * g1.attr_dim();
    return detail::gaussian_cross_sum(detail::to_feature_counts(c1, dim),
                                      detail::to_feature_counts(c2, dim), alpha);
}

// Union over start nodes of the graph's AW multiset (enumeration mode).
inline AwCounts graph_aw_counts(const Graph& g, int l,
                                std::size_t cap = kDefaultEnumerationCap) {
    AwCounts counts;
    for (int u = 0; u < g.node_count; ++u)
        for (const Walk& w : enumerate_walks(g, u, l, cap)) counts[anonymize(w)] += 1.0;
    return counts;
}

// Sampled-mode counterpart (m walks per node).
inline AwCounts graph_aw_counts_sampled(const Graph& g, int l, int m, std::uint64_t seed) {
    AwCounts counts;
    for (int u = 0; u < g.node_count; ++u)
        for (const AnonymousWalk& aw : sample_anonymous_walks(g, u, l, m, seed))
            counts[aw] += 1.0;
    return counts;
}

namespace detail {

inline FeatureCounts aw_feature_counts(const AwCounts& counts, int l) {
    FeatureCounts fc;
    fc.features.resize(static_cast<long>(counts.size()), static_cast<long>(l) * l);
    fc.counts.resize(static_cast<long>(counts.size()));
    long row = 0;
    for (const auto& [aw, c] : counts) {
        fc.features.row(row) = encode_aw(aw, l).transpose();
        fc.counts(row) = c;
        ++row;
    }
    return fc;
}

}  // namespace detail

// K_AW(G1,G2) = sum over AW pairs of k_Gauss(R(phi1), R(phi2)).
inline double exact_awgk(const Graph& g1, const Graph& g2, int l, double alpha = 1.5,
                         std::size_t cap = kDefaultEnumerationCap) {
    auto fc1 = detail::aw_feature_counts(graph_aw_counts(g1, l, cap), l);
    auto fc2 = detail::aw_feature_counts(graph_aw_counts(g2, l, cap), l);
    return detail::gaussian_cross_sum(fc1, fc2, alpha);
}

inline double exact_awgk_sampled(const Graph& g1, const Graph& g2, int l, int m,
                                 std::uint64_t seed, double alpha = 1.5) {
    auto fc1 = detail::aw_feature_counts(graph_aw_counts_sampled(g1, l, m, derive_seed(seed, 1)), l);
    auto fc2 = detail::aw_feature_counts(graph_aw_counts_sampled(g2, l, m, derive_seed(seed, 2)), l);
    return detail::gaussian_cross_sum(fc1, fc2, alpha);
}

// kappa_AR realized as the sum of the two base kernels (Eq. 8 == inner product
// of the concatenated mappings).
inline double exact_argk(const Graph& g1, const Graph& g2, int l_walk, int l_aw,
                         BaseMode walk_mode = BaseMode::hard_delta, double alpha = 1.5,
                         std::size_t cap = kDefaultEnumerationCap) {
    return exact_rwgk(g1, g2, l_walk, walk_mode, alpha, cap) +
           exact_awgk(g1, g2, l_aw, alpha, cap);
}

// ---------------------------------------------------------------------------
// 1-WL color refinement with canonical cross-graph colors.

struct WlColoring {
    // colors[i][u] = canonical color of node u after i refinement rounds
    std::vector<std::vector<int>> colors;
    // histograms[i] = color -> multiplicity
    std::vector<std::map<int, long>> histograms;
};

// Joint refinement over several graphs: per iteration, signatures from all
// graphs share one sorted signature -> color dictionary, so colors (and
// histograms) are directly comparable across graphs.
inline std::vector<WlColoring> wl_refine_joint(const std::vector<const Graph*>& graphs,
                                               int iterations) {
    if (iterations < 0) throw ParamError("wl_refine_joint: iterations must be >= 0");
    std::vector<WlColoring> out(graphs.size());

    // iteration 0: colors from attribute rows
    {
        std::map<std::vector<double>, int> dict;
        for (const Graph* g : graphs)
            for (int u = 0; u < g->node_count; ++u) {
                std::vector<double> key(g->attributes.row(u).data(),
                                        g->attributes.row(u).data() + g->attr_dim());
                dict.emplace(key, 0);
            }
        int next = 0;
        for (auto& [key, id] : dict) id = next++;
        for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
            const Graph* g = graphs[gi];
            std::vector<int> c(static_cast<std::size_t>(g->node_count));
            for (int u = 0; u < g->node_count; ++u) {
                std::vector<double> key(g->attributes.row(u).data(),
                                        g->attributes.row(u).data() + g->attr_dim());
                c[static_cast<std::size_t>(u)] = dict[key];
            }
            out[gi].colors.push_back(std::move(c));
        }
    }

    for (int it = 1; it <= iterations; ++it) {
        using Sig = std::pair<int, std::vector<int>>;
        std::map<Sig, int> dict;
        std::vector<std::vector<Sig>> sigs(graphs.size());
        for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
            const Graph* g = graphs[gi];
            const auto& prev = out[gi].colors.back();
            sigs[gi].resize(static_cast<std::size_t>(g->node_count));
            for (int u = 0; u < g->node_count; ++u) {
                std::vector<int> nb;
                nb.reserve(g->neighbors[static_cast<std::size_t>(u)].size());
                for (int v : g->neighbors[static_cast<std::size_t>(u)])
                    nb.push_back(prev[static_cast<std::size_t>(v)]);
                std::sort(nb.begin(), nb.end());
                sigs[gi][static_cast<std::size_t>(u)] = {prev[static_cast<std::size_t>(u)],
                                                         std::move(nb)};
                dict.emplace(sigs[gi][static_cast<std::size_t>(u)], 0);
            }
        }
        int next = 0;
        for (auto& [sig, id] : dict) id = next++;
        for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
            std::vector<int> c(sigs[gi].size());
            for (std::size_t u = 0; u < sigs[gi].size(); ++u) c[u] = dict[sigs[gi][u]];
            out[gi].colors.push_back(std::move(c));
        }
    }

    for (auto& coloring : out) {
        coloring.histograms.resize(coloring.colors.size());
        for (std::size_t it = 0; it < coloring.colors.size(); ++it)
            for (int c : coloring.colors[it]) ++coloring.histograms[it][c];
    }
    return out;
}

inline WlColoring wl_refine(const Graph& g, int iterations) {
    return wl_refine_joint({&g}, iterations)[0];
}

// K_WL = sum_{i<=depth} sum_{u1,u2} delta(color_i(u1), color_i(u2)), colors
// canonicalized jointly across the two graphs.
inline double wl_subtree_kernel(const Graph& g1, const Graph& g2, int depth) {
    auto colorings = wl_refine_joint({&g1, &g2}, depth);
    double k = 0.0;
    for (int it = 0; it <= depth; ++it) {
        const auto& h1 = colorings[0].histograms[static_cast<std::size_t>(it)];
        const auto& h2 = colorings[1].histograms[static_cast<std::size_t>(it)];
        for (const auto& [color, count] : h1) {
            auto f = h2.find(color);
            if (f != h2.end()) k += static_cast<double>(count) * static_cast<double>(f->second);
        }
    }
    return k;
}

// Worst-case Nystrom approximation error over all feature pairs:
// max_ij |<psi(x_i), psi(x_j)> - k_Gauss(x_i, x_j)|.
inline double nystrom_gap(const Eigen::MatrixXd& features, const LandmarkSet& lm) {
    if (features.rows() == 0) return 0.0;
    Eigen::MatrixXd p = project_rows(features, lm);
    Eigen::MatrixXd approx = p * p.transpose();
    Eigen::VectorXd n = features.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = n.replicate(1, features.rows()) +
                         n.transpose().replicate(features.rows(), 1) -
                         2.0 * features * features.transpose();
    Eigen::MatrixXd exact = (-0.5 * lm.alpha * d2.array().max(0.0)).exp();
    return (approx - exact).cwiseAbs().maxCoeff();
}

}  // namespace awkernel
