#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "awkernel/feature_maps.hpp"
#include "awkernel/oracle.hpp"
#include "awkernel/synthgen.hpp"

using namespace awkernel;
using Catch::Approx;

namespace {

Eigen::MatrixXd universe_features(int l) {
    auto u = aw_universe(l);
    Eigen::MatrixXd f(static_cast<long>(u.size()), static_cast<long>(l) * l);
    for (std::size_t i = 0; i < u.size(); ++i)
        f.row(static_cast<long>(i)) = encode_aw(u[i], l).transpose();
    return f;
}

Eigen::MatrixXd exact_gauss_gram(const Eigen::MatrixXd& f, double alpha) {
    Eigen::MatrixXd g(f.rows(), f.rows());
    for (long i = 0; i < f.rows(); ++i)
        for (long j = 0; j < f.rows(); ++j)
            g(i, j) = gaussian_kernel(f.row(i).transpose(), f.row(j).transpose(), alpha);
    return g;
}

Graph permuted(const Graph& g, const std::vector<int>& perm) {
    Graph out;
    out.node_count = g.node_count;
    for (auto [u, v] : g.edges)
        out.edges.emplace_back(perm[static_cast<std::size_t>(u)],
                               perm[static_cast<std::size_t>(v)]);
    out.attributes = Eigen::MatrixXd(g.node_count, g.attr_dim());
    for (int u = 0; u < g.node_count; ++u)
        out.attributes.row(perm[static_cast<std::size_t>(u)]) = g.attributes.row(u);
    out.label = g.label;
    out.finalize();
    return out;
}

Graph random_graph(int n, double p, std::uint64_t seed) {
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng) < p) edges.emplace_back(u, v);
    return make_graph(n, std::move(edges));
}

}  // namespace

TEST_CASE("landmark gram factor inverts sigma(ZZ^T)+epsI") {
    Eigen::MatrixXd z = universe_features(4);
    LandmarkSet lm = landmark_set_from(z, 1.5, 4, 1e-7, Branch::aw);
    Eigen::MatrixXd gram = sigma(z * z.transpose(), 1.5, 4);
    gram.diagonal().array() += 1e-7;
    Eigen::MatrixXd shouldBeI = lm.inv_sqrt_gram * lm.inv_sqrt_gram * gram;
    CHECK((shouldBeI - Eigen::MatrixXd::Identity(z.rows(), z.rows())).cwiseAbs().maxCoeff() <
          1e-6);
    CHECK((lm.inv_sqrt_gram - lm.inv_sqrt_gram.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("projection through a single landmark reproduces the kernel") {
    Eigen::VectorXd x = encode_aw({1, 2, 1}, 3);  // ||x||^2 = 3 = l
    LandmarkSet lm = landmark_set_from(x.transpose(), 1.5, 3, 0.0, Branch::aw);
    Eigen::VectorXd psi = project(x, lm);
    REQUIRE(psi.size() == 1);
    CHECK(psi(0) == Approx(1.0).epsilon(1e-9));
    CHECK(psi.dot(psi) == Approx(gaussian_kernel(x, x, 1.5)).epsilon(1e-9));
}

TEST_CASE("Nystrom is exact when landmarks cover all distinct features") {
    Eigen::MatrixXd f = universe_features(4);
    LandmarkSet lm = landmark_set_from(f, 1.5, 4, 0.0, Branch::aw);
    Eigen::MatrixXd p = project_rows(f, lm);
    REQUIRE(p.cols() == f.rows());
    Eigen::MatrixXd gap = p * p.transpose() - exact_gauss_gram(f, 1.5);
    CHECK(gap.cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("fit_landmark_set handles degenerate pools") {
    Eigen::VectorXd x = encode_aw({1, 2, 1, 2}, 4);
    Eigen::MatrixXd same = x.transpose().replicate(40, 1);
    int warnings = 0;
    warn_sink() = [&](const std::string&) { ++warnings; };
    LandmarkSet lm = fit_landmark_set(same, 8, 1.5, 4, 1e-7, 3);
    warn_sink() = nullptr;
    CHECK(warnings >= 1);
    REQUIRE(lm.q() == 1);
    // all-ones 1x1 gram is handled by the epsilon ridge
    CHECK(std::isfinite(lm.inv_sqrt_gram(0, 0)));

    Eigen::MatrixXd feats = universe_features(4);
    LandmarkSet mean_lm = fit_landmark_set(feats, 1, 1.5, 4, 1e-7, 3);
    CHECK((mean_lm.Z.row(0) - feats.colwise().mean()).cwiseAbs().maxCoeff() < 1e-12);

    LandmarkSet l1 = fit_landmark_set(feats, 3, 1.5, 4, 1e-7, 9);
    LandmarkSet l2 = fit_landmark_set(feats, 3, 1.5, 4, 1e-7, 9);
    CHECK(l1.Z == l2.Z);
}

TEST_CASE("psi_aw_node sums projections of sampled AWs") {
    Graph edge = make_graph(2, {{0, 1}});
    Eigen::VectorXd r = encode_aw({1, 2, 1}, 3);
    LandmarkSet lm = landmark_set_from(r.transpose(), 1.5, 3, 0.0, Branch::aw);
    Eigen::VectorXd one = psi_aw_node(edge, 0, lm, 3, /*m=*/1, /*seed=*/4);
    REQUIRE(one.size() == 1);
    CHECK(one(0) == Approx(1.0).epsilon(1e-9));
    Eigen::VectorXd thirty = psi_aw_node(edge, 0, lm, 3, /*m=*/30, /*seed=*/4);
    CHECK(thirty(0) == Approx(30.0).epsilon(1e-9));  // sum, not mean

    Graph lonely = make_graph(3, {{1, 2}});
    CHECK(psi_aw_node(lonely, 0, lm, 3, 10, 1).norm() == 0.0);
}

TEST_CASE("psi_walk_node symmetry and isolated nodes") {
    Graph edge = make_graph(2, {{0, 1}}, 0);
    edge.attributes = Eigen::MatrixXd::Ones(2, 1);
    Eigen::MatrixXd feats(1, 2);
    feats << 1, 1;
    LandmarkSet lm = landmark_set_from(feats, 1.5, 2, 1e-7, Branch::walk);
    Eigen::VectorXd pa = psi_walk_node(edge, 0, lm, 2);
    Eigen::VectorXd pb = psi_walk_node(edge, 1, lm, 2);
    CHECK((pa - pb).cwiseAbs().maxCoeff() == 0.0);

    Graph lonely = make_graph(3, {{1, 2}}, 1);
    lonely.attributes = Eigen::MatrixXd::Ones(3, 1);
    CHECK(psi_walk_node(lonely, 0, lm, 2).norm() == 0.0);

    // vertex-transitive graph: every node embeds identically
    Graph c6 = degree_attributes(gen_basic(Family::cycle, 6), 3);
    ModelConfig cfg;
    cfg.use_aw = false;
    cfg.q_walk = 4;
    cfg.l_walk = 3;
    cfg.seed = 5;
    cfg.threads = 1;
    GraphCollection coll;
    coll.graphs.push_back(c6);
    coll.class_count = 1;
    std::vector<GraphWalks> walks{collect_walks(c6, 0, cfg)};
    EmbeddingModel model = fit_model(coll, walks, cfg, {0});
    Eigen::MatrixXd nodes = embed_nodes(model, c6, walks[0]);
    for (int u = 1; u < 6; ++u)
        CHECK((nodes.row(u) - nodes.row(0)).cwiseAbs().maxCoeff() < 1e-9);

    // model-based walk column equals the standalone op with the same landmarks
    Eigen::VectorXd direct = psi_walk_node(c6, 2, model.walk_layers[0], cfg.l_walk);
    CHECK((nodes.row(2).transpose() - direct).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("stacked walk layers change the output dimension and stay finite") {
    GraphCollection coll;
    coll.class_count = 1;
    for (int n = 6; n <= 9; ++n) {
        coll.graphs.push_back(gen_basic(Family::cycle, n));
        coll.graphs.push_back(gen_basic(Family::wheel, n));
        coll.graphs.push_back(gen_basic(Family::path, n));
    }
    coll = with_degree_attributes(coll);

    ModelConfig cfg;
    cfg.use_aw = false;
    cfg.q_walk = 5;
    cfg.l_walk = 3;
    cfg.layers = 2;
    cfg.seed = 8;
    cfg.threads = 1;
    EmbeddingMatrix emb = embed_collection(coll, cfg, all_indices(coll.size()));
    CHECK(emb.values.rows() == 12);
    CHECK(emb.values.cols() == 5);
    CHECK(emb.values.allFinite());
}

TEST_CASE("node embeddings are permutation-equivariant under a fixed model") {
    ModelConfig cfg;
    cfg.use_aw = true;
    cfg.use_walk = true;
    cfg.aw_exhaustive = true;
    cfg.l_aw = 5;
    cfg.l_walk = 3;
    cfg.q_aw = 6;
    cfg.q_walk = 6;
    cfg.seed = 3;
    cfg.threads = 1;

    auto rng = make_rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        Graph g = random_graph(8, 0.4, 100 + static_cast<std::uint64_t>(trial));
        g = degree_attributes(g, 7);
        GraphCollection coll;
        coll.graphs.push_back(g);
        coll.class_count = 1;
        std::vector<GraphWalks> walks{collect_walks(g, 0, cfg)};
        EmbeddingModel model = fit_model(coll, walks, cfg, {0});
        Eigen::MatrixXd base = embed_nodes(model, g, walks[0]);

        std::vector<int> perm(8);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Graph pg = permuted(g, perm);
        GraphWalks pwalks = collect_walks(pg, 0, cfg);
        Eigen::MatrixXd pemb = embed_nodes(model, pg, pwalks);

        for (int u = 0; u < 8; ++u)
            CHECK((pemb.row(perm[static_cast<std::size_t>(u)]) - base.row(u))
                      .cwiseAbs()
                      .maxCoeff() < 1e-9);
        CHECK((graph_pool(pemb) - graph_pool(base)).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("graph_pool sums nodes and splits over disjoint unions") {
    Eigen::MatrixXd one(1, 3);
    one << 1, 2, 3;
    CHECK(graph_pool(one) == Eigen::Vector3d(1, 2, 3));

    int warnings = 0;
    warn_sink() = [&](const std::string&) { ++warnings; };
    Eigen::VectorXd empty = graph_pool(Eigen::MatrixXd(0, 4));
    warn_sink() = nullptr;
    CHECK(empty.size() == 4);
    CHECK(empty.norm() == 0.0);
    CHECK(warnings == 1);

    // disjoint union: pool(G1 ++ G2) = pool(G1) + pool(G2) under one model
    Graph a = gen_basic(Family::cycle, 5);
    Graph b = gen_basic(Family::path, 4);
    Graph u;
    u.node_count = 9;
    u.edges = a.edges;
    for (auto [x, y] : b.edges) u.edges.emplace_back(x + 5, y + 5);
    u.finalize();
    GraphCollection coll;
    coll.class_count = 1;
    coll.graphs = {a, b, u};
    coll = with_degree_attributes(coll);

    ModelConfig cfg;
    cfg.aw_exhaustive = true;
    cfg.l_aw = 4;
    cfg.l_walk = 3;
    cfg.q_aw = 4;
    cfg.q_walk = 4;
    cfg.seed = 2;
    cfg.threads = 1;
    std::vector<GraphWalks> walks(3);
    for (std::size_t i = 0; i < 3; ++i) walks[i] = collect_walks(coll.graphs[i], i, cfg);
    EmbeddingModel model = fit_model(coll, walks, cfg, {0, 1, 2});
    Eigen::VectorXd pa = graph_pool(embed_nodes(model, coll.graphs[0], walks[0]));
    Eigen::VectorXd pb = graph_pool(embed_nodes(model, coll.graphs[1], walks[1]));
    Eigen::VectorXd pu = graph_pool(embed_nodes(model, coll.graphs[2], walks[2]));
    CHECK((pu - pa - pb).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("psi_ar_node concatenates both branches") {
    // wheel: degree diversity keeps both landmark pools non-degenerate
    Graph g = degree_attributes(gen_basic(Family::wheel, 7), 6);
    GraphCollection coll;
    coll.graphs.push_back(g);
    coll.class_count = 1;
    ModelConfig cfg;
    cfg.q_walk = 4;
    cfg.q_aw = 3;
    cfg.l_aw = 4;
    cfg.aw_exhaustive = true;
    cfg.seed = 6;
    cfg.threads = 1;
    std::vector<GraphWalks> walks{collect_walks(g, 0, cfg)};
    EmbeddingModel model = fit_model(coll, walks, cfg, {0});
    CHECK(model.walk_dim() == 4);
    CHECK(model.aw_dim() == 3);
    Eigen::VectorXd combined = psi_ar_node(g, 0, model);
    REQUIRE(combined.size() == model.dim());
    REQUIRE(combined.size() == 7);
    Eigen::MatrixXd nodes = embed_nodes(model, g, walks[0]);
    CHECK((combined - nodes.row(0).transpose()).cwiseAbs().maxCoeff() == 0.0);

    // zero AW part on an isolated node, walk part zero as well
    Graph lonely = make_graph(2, {});
    lonely.attributes = Eigen::MatrixXd::Ones(2, 7);
    GraphWalks lw = collect_walks(lonely, 0, cfg);
    Eigen::MatrixXd lemb = embed_nodes(model, lonely, lw);
    CHECK(lemb.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("enumeration-mode AW embeddings separate the ring pair") {
    auto [big, two] = gen_ring_pair(4);  // R8 vs R4,4 with l = 6
    GraphCollection coll;
    coll.class_count = 2;
    coll.graphs = {big, two};
    coll = with_degree_attributes(coll);

    ModelConfig cfg;
    cfg.use_walk = false;
    cfg.aw_exhaustive = true;
    cfg.l_aw = 6;
    cfg.q_aw = 8;
    cfg.seed = 4;
    cfg.threads = 1;
    EmbeddingMatrix emb = embed_collection(coll, cfg, all_indices(2));
    CHECK((emb.values.row(0) - emb.values.row(1)).norm() > 1e-3);
    CHECK(emb.provenance.find("landmark pool") != std::string::npos);
}

TEST_CASE("nested landmark prefixes never worsen the Frobenius gap") {
    Eigen::MatrixXd f = universe_features(4);
    Eigen::MatrixXd exact = exact_gauss_gram(f, 1.5);
    const std::vector<int> qs{4, 8, 16, 32};
    std::vector<std::vector<double>> gaps(qs.size());
    for (std::uint64_t seed = 0; seed < 7; ++seed) {
        std::vector<long> order(static_cast<std::size_t>(f.rows()));
        std::iota(order.begin(), order.end(), 0);
        auto rng = make_rng(seed, 0, 0, 0x6d6f6e6f);
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t qi = 0; qi < qs.size(); ++qi) {
            const long q_eff = std::min<long>(qs[qi], f.rows());
            Eigen::MatrixXd z(q_eff, f.cols());
            for (long i = 0; i < q_eff; ++i) z.row(i) = f.row(order[static_cast<std::size_t>(i)]);
            LandmarkSet lm = landmark_set_from(z, 1.5, 4, 1e-7, Branch::aw);
            Eigen::MatrixXd p = project_rows(f, lm);
            gaps[qi].push_back((p * p.transpose() - exact).norm());
        }
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    for (std::size_t qi = 1; qi < qs.size(); ++qi)
        CHECK(median(gaps[qi]) <= median(gaps[qi - 1]) + 1e-9);
}
