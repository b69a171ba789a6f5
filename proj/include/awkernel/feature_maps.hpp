#pragma once

#include <Eigen/Dense>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "awkernel/graph.hpp"
#include "awkernel/kmeans.hpp"
#include "awkernel/linalg.hpp"
#include "awkernel/walks.hpp"

namespace awkernel {

enum class Branch { walk, aw };

inline const char* to_string(Branch b) { return b == Branch::walk ? "walk" : "aw"; }

// q landmarks with the precomputed (sigma(Z Z^T) + eps I)^{-1/2} factor of
// the Nystrom projection.
struct LandmarkSet {
    Eigen::MatrixXd Z;  // q x p, one landmark per row
    double alpha = 1.5;
    int walk_len = 0;  // l in sigma(x) = exp(alpha x - alpha l)
    double epsilon = 1e-7;
    Eigen::MatrixXd inv_sqrt_gram;  // q x q
    Branch branch = Branch::aw;

    long q() const { return Z.rows(); }
    long p() const { return Z.cols(); }
};

inline LandmarkSet landmark_set_from(Eigen::MatrixXd z, double alpha, int l,
                                     double epsilon, Branch branch) {
    LandmarkSet lm;
    lm.Z = std::move(z);
    lm.alpha = alpha;
    lm.walk_len = l;
    lm.epsilon = epsilon;
    lm.branch = branch;
    Eigen::MatrixXd gram = sigma(lm.Z * lm.Z.transpose(), alpha, l);
    lm.inv_sqrt_gram = inv_sqrt_psd(gram, epsilon);
    return lm;
}

// Landmarks = q-means centroids over the feature rows.
inline LandmarkSet fit_landmark_set(const Eigen::MatrixXd& features, int q, double alpha,
                                    int l, double epsilon, std::uint64_t seed,
                                    Branch branch = Branch::aw, int kmeans_iters = 100,
                                    double kmeans_tol = 1e-6,
                                    std::size_t subsample_cap = 100000, int threads = 1) {
    if (features.rows() == 0) throw ParamError("fit_landmark_set: no features");
    Eigen::MatrixXd pool = subsample(features, subsample_cap, seed);
    KMeansResult km = kmeans(pool, q, kmeans_iters, kmeans_tol, seed, threads);
    return landmark_set_from(km.centroids, alpha, l, epsilon, branch);
}

// psi(x) = sigma(Z Z^T)^{-1/2} sigma(Z x)
inline Eigen::VectorXd project(const Eigen::VectorXd& feature, const LandmarkSet& lm) {
    if (feature.size() != lm.p()) throw ParamError("project: dimension mismatch");
    return lm.inv_sqrt_gram * sigma(lm.Z * feature, lm.alpha, lm.walk_len);
}

// Row-wise projection: returns one projected row per feature row.
inline Eigen::MatrixXd project_rows(const Eigen::MatrixXd& features, const LandmarkSet& lm) {
    if (features.cols() != lm.p()) throw ParamError("project_rows: dimension mismatch");
    return sigma(lm.Z * features.transpose(), lm.alpha, lm.walk_len).transpose() *
           lm.inv_sqrt_gram.transpose();
}

// sum_i w_i psi(x_i), evaluated as inv_sqrt_gram * (sigma(Z F^T) w).
inline Eigen::VectorXd project_weighted_sum(const Eigen::MatrixXd& features,
                                            const Eigen::VectorXd& weights,
                                            const LandmarkSet& lm) {
    if (features.rows() == 0) return Eigen::VectorXd::Zero(lm.q());
    return lm.inv_sqrt_gram *
           (sigma(lm.Z * features.transpose(), lm.alpha, lm.walk_len) * weights);
}

// ---------------------------------------------------------------------------
// Pipeline configuration (Algorithm parameter surface).

struct ModelConfig {
    bool use_walk = true;
    bool use_aw = true;
    int l_walk = 3;  // walk length in nodes, RW branch
    int l_aw = 6;    // walk length in nodes, AW branch
    int m_aw = 30;   // AW samples per node (ignored in exhaustive mode)
    bool aw_exhaustive = false;
    int q_walk = 32;
    int q_aw = 32;
    double alpha = 1.5;
    double epsilon = 1e-7;
    int layers = 1;        // walk-branch stacking depth
    bool stack_aw = false; // stack the AW branch beyond layer 1 (off by default)
    std::size_t walk_cap = kDefaultEnumerationCap;  // per-node enumeration cap
    int m_walk_fallback = 30;  // samples per node when enumeration overflows
    std::size_t kmeans_cap = 100000;
    int kmeans_iters = 100;
    double kmeans_tol = 1e-6;
    std::uint64_t seed = 1;
    int threads = 0;

    int embed_dim() const { return (use_walk ? q_walk : 0) + (use_aw ? q_aw : 0); }

    std::string summary() const {
        std::ostringstream os;
        os << "branch=" << (use_walk && use_aw ? "both" : (use_walk ? "walk" : "aw"))
           << " l_walk=" << l_walk << " l_aw=" << l_aw << " m_aw=" << m_aw
           << " aw_exhaustive=" << (aw_exhaustive ? 1 : 0) << " q_walk=" << q_walk
           << " q_aw=" << q_aw << " alpha=" << alpha << " epsilon=" << epsilon
           << " layers=" << layers << " stack_aw=" << (stack_aw ? 1 : 0)
           << " seed=" << seed;
        return os.str();
    }
};

// Walk material for one graph, reusable across landmark refits (the samples
// depend only on (seed, graph index, node id)).
struct GraphWalks {
    std::vector<AwCounts> aw_per_node;              // AW multiset per node
    std::vector<std::vector<Walk>> walks_per_node;  // raw walks, RW branch
    bool aw_fell_back_to_sampling = false;
    bool walk_fell_back_to_sampling = false;
};

inline GraphWalks collect_walks(const Graph& g, std::size_t graph_index,
                                const ModelConfig& cfg) {
    GraphWalks out;
    if (cfg.use_aw) {
        out.aw_per_node.resize(static_cast<std::size_t>(g.node_count));
        for (int u = 0; u < g.node_count; ++u) {
            if (cfg.aw_exhaustive) {
                try {
                    out.aw_per_node[static_cast<std::size_t>(u)] =
                        count_anonymous_walks(enumerate_walks(g, u, cfg.l_aw, cfg.walk_cap));
                    continue;
                } catch (const EnumerationOverflow&) {
                    if (!out.aw_fell_back_to_sampling)
                        warn("AW enumeration overflow on graph " + std::to_string(graph_index) +
                             ", sampling " + std::to_string(cfg.m_aw) + " walks per node instead");
                    out.aw_fell_back_to_sampling = true;
                }
            }
            auto rng = make_rng(cfg.seed, graph_index, static_cast<std::uint64_t>(u),
                                /*salt=*/0x617753);
            std::vector<AnonymousWalk> aws;
            for (const Walk& w : sample_walks(g, u, cfg.l_aw, cfg.m_aw, rng))
                aws.push_back(anonymize(w));
            AwCounts counts;
            for (const auto& aw : aws) counts[aw] += 1.0;
            out.aw_per_node[static_cast<std::size_t>(u)] = std::move(counts);
        }
    }
    if (cfg.use_walk || (cfg.use_aw && cfg.stack_aw && cfg.layers > 1)) {
        out.walks_per_node.resize(static_cast<std::size_t>(g.node_count));
        for (int u = 0; u < g.node_count; ++u) {
            try {
                out.walks_per_node[static_cast<std::size_t>(u)] =
                    enumerate_walks(g, u, cfg.l_walk, cfg.walk_cap);
            } catch (const EnumerationOverflow&) {
                if (!out.walk_fell_back_to_sampling)
                    warn("walk enumeration overflow on graph " + std::to_string(graph_index) +
                         ", sampling " + std::to_string(cfg.m_walk_fallback) +
                         " walks per node instead");
                out.walk_fell_back_to_sampling = true;
                auto rng = make_rng(cfg.seed, graph_index, static_cast<std::uint64_t>(u),
                                    /*salt=*/0x727753);
                out.walks_per_node[static_cast<std::size_t>(u)] =
                    sample_walks(g, u, cfg.l_walk, cfg.m_walk_fallback, rng);
            }
        }
    }
    return out;
}

namespace detail {

// Distinct AW features of a graph as rows, plus per-node multiplicity columns.
struct AwGraphFeatures {
    Eigen::MatrixXd features;  // D x l^2
    // counts[u] lists (row index into features, multiplicity)
    std::vector<std::vector<std::pair<long, double>>> counts;
};

inline AwGraphFeatures aw_graph_features(const GraphWalks& walks, int l) {
    AwGraphFeatures out;
    std::map<AnonymousWalk, long> row_of;
    for (const auto& per_node : walks.aw_per_node)
        for (const auto& [aw, c] : per_node) row_of.emplace(aw, 0);
    long next = 0;
    for (auto& [aw, row] : row_of) row = next++;
    out.features.resize(next, static_cast<long>(l) * l);
    for (const auto& [aw, row] : row_of) out.features.row(row) = encode_aw(aw, l).transpose();
    out.counts.resize(walks.aw_per_node.size());
    for (std::size_t u = 0; u < walks.aw_per_node.size(); ++u)
        for (const auto& [aw, c] : walks.aw_per_node[u])
            out.counts[u].emplace_back(row_of[aw], c);
    return out;
}

// Walk features for one node against an arbitrary node-feature matrix
// (attributes at layer 1, previous-layer embeddings above).
inline Eigen::MatrixXd walk_feature_rows(const std::vector<Walk>& walks,
                                         const Eigen::MatrixXd& node_features) {
    if (walks.empty()) return Eigen::MatrixXd(0, 0);
    const long d = node_features.cols();
    Eigen::MatrixXd rows(static_cast<long>(walks.size()),
                         d * static_cast<long>(walks[0].size()));
    for (std::size_t i = 0; i < walks.size(); ++i)
        rows.row(static_cast<long>(i)) = encode_walk(walks[i], node_features).transpose();
    return rows;
}

}  // namespace detail

// psi_AW(u) = sum_{phi in Phi^l(G,u)} inv_sqrt_gram sigma(Z R(phi)) — a sum,
// not a mean; isolated nodes map to the zero vector.
inline Eigen::VectorXd psi_aw_node(const Graph& g, int u, const LandmarkSet& lm, int l,
                                   int m, std::uint64_t seed) {
    auto aws = sample_anonymous_walks(g, u, l, m, seed);
    if (aws.empty()) return Eigen::VectorXd::Zero(lm.q());
    Eigen::MatrixXd features(static_cast<long>(aws.size()), static_cast<long>(l) * l);
    for (std::size_t i = 0; i < aws.size(); ++i)
        features.row(static_cast<long>(i)) = encode_aw(aws[i], l).transpose();
    return project_weighted_sum(features, Eigen::VectorXd::Ones(features.rows()), lm);
}

// Walk-branch analogue over enumerated (or sampled on overflow) attributed walks.
inline Eigen::VectorXd psi_walk_node(const Graph& g, int u, const LandmarkSet& lm, int l,
                                     std::size_t cap = kDefaultEnumerationCap,
                                     int m_fallback = 30, std::uint64_t seed = 0) {
    std::vector<Walk> walks;
    try {
        walks = enumerate_walks(g, u, l, cap);
    } catch (const EnumerationOverflow&) {
        warn("psi_walk_node: enumeration overflow, sampling " + std::to_string(m_fallback) +
             " walks");
        walks = sample_walks(g, u, l, m_fallback, seed);
    }
    if (walks.empty()) return Eigen::VectorXd::Zero(lm.q());
    Eigen::MatrixXd features = detail::walk_feature_rows(walks, g.attributes);
    return project_weighted_sum(features, Eigen::VectorXd::Ones(features.rows()), lm);
}

// Sum pooling over nodes (Psi = sum_u psi(u)); empty graphs pool to zero.
inline Eigen::VectorXd graph_pool(const Eigen::MatrixXd& node_embeddings) {
    if (node_embeddings.rows() == 0) {
        warn("graph_pool: empty graph, returning zero vector");
        return Eigen::VectorXd::Zero(node_embeddings.cols());
    }
    return node_embeddings.colwise().sum().transpose();
}

// ---------------------------------------------------------------------------
// Fitted model: landmarks per layer for each branch.

struct EmbeddingModel {
    ModelConfig config;
    std::vector<LandmarkSet> walk_layers;
    std::vector<LandmarkSet> aw_layers;
    std::string landmark_pool;  // run metadata: which graphs fed q-means

    // Actual output widths; can be below the configured q when q-means
    // reduced the landmark count on a degenerate pool.
    int walk_dim() const {
        return walk_layers.empty() ? 0 : static_cast<int>(walk_layers.back().q());
    }
    int aw_dim() const {
        return aw_layers.empty() ? 0 : static_cast<int>(aw_layers.back().q());
    }
    int dim() const { return walk_dim() + aw_dim(); }
};

// Dense embeddings with provenance (config snapshot + pool description).
struct EmbeddingMatrix {
    Eigen::MatrixXd values;
    bool per_graph = true;
    std::string provenance;
};

namespace detail {

// Gathers up to `cap` feature rows (multiset semantics: multiplicities expand
// to repeated rows) from the listed graphs, uniformly without replacement in
// deterministic order.
class PooledRows {
  public:
    PooledRows(std::size_t total, std::size_t cap, long dim, std::uint64_t seed)
        : keep_all_(total <= cap) {
        rows_.resize(static_cast<long>(std::min(total, cap)), dim);
        if (!keep_all_) {
            std::vector<std::size_t> idx(total);
            std::iota(idx.begin(), idx.end(), 0);
            auto rng = make_rng(seed, total, cap, /*salt=*/0x706f6f6c);
            for (std::size_t i = 0; i < cap; ++i) {
                std::uniform_int_distribution<std::size_t> pick(i, total - 1);
                std::swap(idx[i], idx[pick(rng)]);
            }
            idx.resize(cap);
            std::sort(idx.begin(), idx.end());
            selected_ = std::move(idx);
        }
    }

    void offer(const Eigen::RowVectorXd& row) {
        if (keep_all_) {
            rows_.row(written_++) = row;
        } else {
            if (cursor_ < selected_.size() && selected_[cursor_] == offered_) {
                rows_.row(written_++) = row;
                ++cursor_;
            }
        }
        ++offered_;
    }

    Eigen::MatrixXd take() {
        rows_.conservativeResize(written_, Eigen::NoChange);
        return std::move(rows_);
    }

  private:
    bool keep_all_;
    Eigen::MatrixXd rows_;
    std::vector<std::size_t> selected_;
    std::size_t offered_ = 0;
    std::size_t cursor_ = 0;
    long written_ = 0;
};

}  // namespace detail

namespace detail {

// One walk-type layer pass: node u -> sum of projections of its walk features.
inline Eigen::MatrixXd walk_layer_pass(const Graph& g, const GraphWalks& gw,
                                       const Eigen::MatrixXd& node_features,
                                       const LandmarkSet& lm) {
    Eigen::MatrixXd next(g.node_count, lm.q());
    for (int u = 0; u < g.node_count; ++u) {
        const auto& wlist = gw.walks_per_node[static_cast<std::size_t>(u)];
        if (wlist.empty()) {
            next.row(u).setZero();
            continue;
        }
        Eigen::MatrixXd f = walk_feature_rows(wlist, node_features);
        next.row(u) =
            project_weighted_sum(f, Eigen::VectorXd::Ones(f.rows()), lm).transpose();
    }
    return next;
}

// Fits `n_layers` walk-type layers. `node_features` (one matrix per graph in
// the collection) is advanced in place so callers can keep composing.
inline std::vector<LandmarkSet> fit_walk_stack(const GraphCollection& coll,
                                               const std::vector<GraphWalks>& walks,
                                               const ModelConfig& cfg,
                                               const std::vector<int>& pool,
                                               std::vector<Eigen::MatrixXd>& node_features,
                                               int n_layers, int q, std::uint64_t salt) {
    std::vector<LandmarkSet> layers;
    std::size_t total = 0;
    for (int gi : pool)
        for (const auto& w : walks[static_cast<std::size_t>(gi)].walks_per_node)
            total += w.size();
    if (total == 0) throw ParamError("fit_model: no walks in pool");
    for (int layer = 0; layer < n_layers; ++layer) {
        const long dim = node_features[static_cast<std::size_t>(pool[0])].cols() * cfg.l_walk;
        PooledRows pooled(total, cfg.kmeans_cap, dim,
                          derive_seed(cfg.seed, salt, static_cast<std::uint64_t>(layer), 1));
        for (int gi : pool) {
            const auto& gw = walks[static_cast<std::size_t>(gi)];
            const auto& nf = node_features[static_cast<std::size_t>(gi)];
            for (const auto& per_node : gw.walks_per_node)
                for (const Walk& w : per_node) pooled.offer(encode_walk(w, nf).transpose());
        }
        Eigen::MatrixXd rows = pooled.take();
        KMeansResult km =
            kmeans(rows, q, cfg.kmeans_iters, cfg.kmeans_tol,
                   derive_seed(cfg.seed, salt, static_cast<std::uint64_t>(layer), 2),
                   resolve_threads(cfg.threads));
        layers.push_back(
            landmark_set_from(km.centroids, cfg.alpha, cfg.l_walk, cfg.epsilon, Branch::walk));
        if (layer + 1 == n_layers) break;
        for (std::size_t gi = 0; gi < coll.size(); ++gi)
            node_features[gi] =
                walk_layer_pass(coll.graphs[gi], walks[gi], node_features[gi], layers.back());
    }
    return layers;
}

// AW layer-1 node embeddings for one graph.
inline Eigen::MatrixXd aw_layer_pass(const Graph& g, const GraphWalks& gw,
                                     const LandmarkSet& lm, int l) {
    auto feats = aw_graph_features(gw, l);
    Eigen::MatrixXd projected;  // D x q, one row per distinct AW
    if (feats.features.rows() > 0) projected = project_rows(feats.features, lm);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(g.node_count, lm.q());
    for (int u = 0; u < g.node_count; ++u)
        for (const auto& [row, c] : feats.counts[static_cast<std::size_t>(u)])
            out.row(u) += c * projected.row(row);
    return out;
}

}  // namespace detail

// Fits landmarks for every branch/layer using walks from `pool` graphs only
// (pass all indices for unsupervised runs). Walk material is taken from
// `walks`, one entry per collection graph.
inline EmbeddingModel fit_model(const GraphCollection& coll,
                                const std::vector<GraphWalks>& walks,
                                const ModelConfig& cfg, const std::vector<int>& pool) {
    if (pool.empty()) throw ParamError("fit_model: empty landmark pool");
    EmbeddingModel model;
    model.config = cfg;
    {
        std::ostringstream os;
        os << "landmark pool: " << pool.size() << "/" << coll.size() << " graphs [";
        for (std::size_t i = 0; i < pool.size() && i < 8; ++i)
            os << (i ? "," : "") << pool[i];
        if (pool.size() > 8) os << ",...";
        os << "]";
        model.landmark_pool = os.str();
    }

    if (cfg.use_aw) {
        std::size_t total = 0;
        for (int gi : pool)
            for (const auto& per_node : walks[static_cast<std::size_t>(gi)].aw_per_node)
                for (const auto& [aw, c] : per_node) total += static_cast<std::size_t>(c);
        if (total == 0) throw ParamError("fit_model: no anonymous walks in pool");
        detail::PooledRows pooled(total, cfg.kmeans_cap,
                                  static_cast<long>(cfg.l_aw) * cfg.l_aw,
                                  derive_seed(cfg.seed, 11));
        for (int gi : pool) {
            auto feats = detail::aw_graph_features(walks[static_cast<std::size_t>(gi)], cfg.l_aw);
            for (const auto& per_node : feats.counts)
                for (const auto& [row, c] : per_node)
                    for (long k = 0; k < static_cast<long>(c); ++k)
                        pooled.offer(feats.features.row(row));
        }
        Eigen::MatrixXd rows = pooled.take();
        KMeansResult km = kmeans(rows, cfg.q_aw, cfg.kmeans_iters, cfg.kmeans_tol,
                                 derive_seed(cfg.seed, 12), resolve_threads(cfg.threads));
        model.aw_layers.push_back(
            landmark_set_from(km.centroids, cfg.alpha, cfg.l_aw, cfg.epsilon, Branch::aw));

        if (cfg.stack_aw && cfg.layers > 1) {
            std::vector<Eigen::MatrixXd> node_features(coll.size());
            for (std::size_t gi = 0; gi < coll.size(); ++gi)
                node_features[gi] = detail::aw_layer_pass(
                    coll.graphs[gi], walks[gi], model.aw_layers.front(), cfg.l_aw);
            auto upper = detail::fit_walk_stack(coll, walks, cfg, pool, node_features,
                                                cfg.layers - 1, cfg.q_aw, /*salt=*/31);
            for (auto& lm : upper) model.aw_layers.push_back(std::move(lm));
        }
    }

    if (cfg.use_walk) {
        // layer 1 on raw attributes, layer k on layer k-1 embeddings
        // (encode_walk renormalizes blocks); landmark features always come
        // from pool graphs.
        std::vector<Eigen::MatrixXd> node_features(coll.size());
        for (std::size_t gi = 0; gi < coll.size(); ++gi)
            node_features[gi] = coll.graphs[gi].attributes;
        model.walk_layers = detail::fit_walk_stack(coll, walks, cfg, pool, node_features,
                                                   cfg.layers, cfg.q_walk, /*salt=*/21);
    }
    return model;
}

// Node-level embeddings of one graph under a fitted model: walk branch
// stacked through its layers, AW branch single layer, concatenated
// [psi_walk || psi_aw].
inline Eigen::MatrixXd embed_nodes(const EmbeddingModel& model, const Graph& g,
                                   const GraphWalks& walks) {
    const ModelConfig& cfg = model.config;
    const int n = g.node_count;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, model.dim());
    long col = 0;

    if (!model.walk_layers.empty()) {
        Eigen::MatrixXd features = g.attributes;
        for (const LandmarkSet& lm : model.walk_layers)
            features = detail::walk_layer_pass(g, walks, features, lm);
        out.middleCols(col, model.walk_dim()) = features;
        col += model.walk_dim();
    }

    if (!model.aw_layers.empty()) {
        Eigen::MatrixXd features =
            detail::aw_layer_pass(g, walks, model.aw_layers.front(), cfg.l_aw);
        for (std::size_t layer = 1; layer < model.aw_layers.size(); ++layer)
            features = detail::walk_layer_pass(g, walks, features, model.aw_layers[layer]);
        out.middleCols(col, model.aw_dim()) = features;
    }
    return out;
}

// Fit + embed a collection end to end. Returns per-graph pooled embeddings;
// node-level matrices optionally via `node_out`.
inline EmbeddingMatrix embed_collection(const GraphCollection& coll, const ModelConfig& cfg,
                                        const std::vector<int>& landmark_pool,
                                        std::vector<Eigen::MatrixXd>* node_out = nullptr,
                                        EmbeddingModel* model_out = nullptr) {
    std::vector<GraphWalks> walks(coll.size());
    parallel_for(coll.size(), cfg.threads, [&](std::size_t gi) {
        walks[gi] = collect_walks(coll.graphs[gi], gi, cfg);
    });
    EmbeddingModel model = fit_model(coll, walks, cfg, landmark_pool);

    EmbeddingMatrix out;
    out.per_graph = true;
    out.values.resize(static_cast<long>(coll.size()), model.dim());
    if (node_out) node_out->resize(coll.size());
    parallel_for(coll.size(), cfg.threads, [&](std::size_t gi) {
        Eigen::MatrixXd nodes = embed_nodes(model, coll.graphs[gi], walks[gi]);
        out.values.row(static_cast<long>(gi)) = graph_pool(nodes).transpose();
        if (node_out) (*node_out)[gi] = std::move(nodes);
    });
    out.provenance = cfg.summary() + " | " + model.landmark_pool;
    if (model_out) *model_out = std::move(model);
    return out;
}

inline std::vector<int> all_indices(std::size_t n) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

// Node-level embedding of a standalone graph (landmarks fitted on that graph).
inline EmbeddingMatrix stack_layers(const Graph& g, const ModelConfig& cfg) {
    GraphCollection coll;
    coll.graphs.push_back(g);
    coll.class_count = 1;
    std::vector<Eigen::MatrixXd> nodes;
    EmbeddingMatrix graphs = embed_collection(coll, cfg, {0}, &nodes);
    EmbeddingMatrix out;
    out.values = std::move(nodes[0]);
    out.per_graph = false;
    out.provenance = graphs.provenance;
    return out;
}

// psi_AR(u) = [psi_walk(u) || psi_AW(u)] for a fitted model.
inline Eigen::VectorXd psi_ar_node(const Graph& g, int u, const EmbeddingModel& model,
                                   std::size_t graph_index = 0) {
    GraphWalks walks = collect_walks(g, graph_index, model.config);
    return embed_nodes(model, g, walks).row(u).transpose();
}

}  // namespace awkernel
