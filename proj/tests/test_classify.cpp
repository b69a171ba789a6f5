#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "awkernel/classify.hpp"
#include "awkernel/synthgen.hpp"

using namespace awkernel;
using Catch::Approx;

TEST_CASE("stratified folds partition evenly") {
    // 188 samples, two classes (125/63) like MUTAG: eight folds of 19, two of 18
    std::vector<int> labels(188, 0);
    for (int i = 125; i < 188; ++i) labels[static_cast<std::size_t>(i)] = 1;
    FoldPlan plan = stratified_folds(labels, 10, 3);

    std::vector<int> sizes(10, 0);
    for (int f : plan.fold_of) ++sizes[static_cast<std::size_t>(f)];
    std::multiset<int> size_set(sizes.begin(), sizes.end());
    CHECK(size_set == std::multiset<int>{18, 18, 19, 19, 19, 19, 19, 19, 19, 19});

    // every fold contains both classes and train/test partition the samples
    for (int f = 0; f < 10; ++f) {
        auto train = plan.train_indices(f);
        auto test = plan.test_indices(f);
        CHECK(train.size() + test.size() == labels.size());
        std::set<int> cls;
        for (int i : test) cls.insert(labels[static_cast<std::size_t>(i)]);
        CHECK(cls.size() == 2);
    }
    FoldPlan again = stratified_folds(labels, 10, 3);
    CHECK(again.fold_of == plan.fold_of);
    CHECK(stratified_folds(labels, 10, 4).fold_of != plan.fold_of);
}

TEST_CASE("fit_linear separates a separable toy set") {
    Eigen::MatrixXd x(8, 2);
    x << -2, -1, -3, -2, -2.5, 1, -1.5, -0.5, 2, 1, 3, 2, 2.5, -1, 1.5, 0.5;
    std::vector<int> y{0, 0, 0, 0, 1, 1, 1, 1};
    for (ClassifierKind kind :
         {ClassifierKind::logistic, ClassifierKind::squared_hinge_svm}) {
        LinearModel m = fit_linear(x, y, 1e-3, kind, 1);
        CHECK(accuracy(y, predict(m, x)) == 1.0);
    }
}

TEST_CASE("fit_linear degenerate inputs") {
    // constant features: model can do no better than the majority class
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(10, 3);
    std::vector<int> y{0, 0, 0, 0, 0, 0, 0, 1, 1, 1};
    LinearModel m = fit_linear(x, y, 1e-2, ClassifierKind::logistic, 1);
    CHECK(accuracy(y, predict(m, x)) == Approx(0.7));

    int warnings = 0;
    warn_sink() = [&](const std::string&) { ++warnings; };
    std::vector<int> same(10, 4);
    LinearModel constant = fit_linear(x, same, 1e-2, ClassifierKind::logistic, 1);
    warn_sink() = nullptr;
    CHECK(warnings == 1);
    CHECK(constant.constant);
    CHECK(predict(constant, x) == same);

    // determinism
    Eigen::MatrixXd r = Eigen::MatrixXd::Random(30, 4);
    std::vector<int> ry(30);
    for (int i = 0; i < 30; ++i) ry[static_cast<std::size_t>(i)] = i % 3;
    LinearModel a = fit_linear(r, ry, 1e-1, ClassifierKind::logistic, 5);
    LinearModel b = fit_linear(r, ry, 1e-1, ClassifierKind::logistic, 5);
    CHECK(a.weights == b.weights);
    CHECK(a.bias == b.bias);
}

TEST_CASE("f1 scores behave") {
    std::vector<int> truth{0, 0, 1, 1, 2, 2};
    std::vector<int> pred{0, 1, 1, 1, 2, 0};
    F1Scores f1 = f1_scores(truth, pred);
    CHECK(f1.micro == Approx(accuracy(truth, pred)));
    CHECK(f1.macro >= 0.0);
    CHECK(f1.macro <= 1.0);

    std::vector<int> same(5, 3);
    F1Scores perfect = f1_scores(same, same);
    CHECK(perfect.macro == 1.0);
    CHECK(perfect.micro == 1.0);
}

TEST_CASE("standardizer centers and scales training columns") {
    Eigen::MatrixXd x(4, 3);
    x << 1, 5, 7, 3, 5, 9, 5, 5, 11, 7, 5, 13;
    Standardizer st = Standardizer::fit(x);
    Eigen::MatrixXd z = st.apply(x);
    CHECK(z.colwise().mean().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(z.col(0).squaredNorm() / 4.0 == Approx(1.0));
    CHECK(z.col(1).cwiseAbs().maxCoeff() == 0.0);  // constant column stays centered
}

TEST_CASE("cross_validate separates an easy synthetic task without leakage") {
    GraphCollection coll;
    coll.class_count = 2;
    auto rng = make_rng(17);
    for (int i = 0; i < 30; ++i) {
        std::uniform_int_distribution<int> size(8, 14);
        Graph g = (i % 2 == 0) ? gen_basic(Family::cycle, size(rng))
                               : gen_basic(Family::wheel, size(rng));
        g.label = i % 2;
        coll.graphs.push_back(std::move(g));
    }
    coll = with_degree_attributes(coll);

    ModelConfig cfg;
    cfg.use_aw = true;
    cfg.use_walk = true;
    cfg.l_walk = 3;
    cfg.l_aw = 5;
    cfg.m_aw = 20;
    cfg.q_walk = 8;
    cfg.q_aw = 8;
    cfg.seed = 21;
    cfg.threads = 2;
    EvalReport rep = cross_validate(coll, cfg, 5, 7);

    REQUIRE(rep.fold_accuracy.size() == 5);
    CHECK(rep.mean_accuracy >= 0.9);  // hubs make this trivially separable

    // micro-F1 over pooled held-out predictions equals pooled accuracy
    double correct = 0, total = 0;
    for (std::size_t c = 0; c < rep.per_class_total.size(); ++c) {
        correct += rep.per_class_correct[c];
        total += rep.per_class_total[c];
    }
    CHECK(total == 30.0);
    CHECK(rep.micro_f1 == Approx(correct / total));

    // leakage audit: recorded landmark pools never contain held-out graphs
    FoldPlan plan = stratified_folds(coll.labels(), 5, derive_seed(7, 0xCF));
    REQUIRE(rep.fold_train_indices.size() == 5);
    for (int f = 0; f < 5; ++f) {
        std::set<int> train(rep.fold_train_indices[static_cast<std::size_t>(f)].begin(),
                            rep.fold_train_indices[static_cast<std::size_t>(f)].end());
        for (int i : plan.test_indices(f)) CHECK(train.count(i) == 0);
        CHECK(train.size() + plan.test_indices(f).size() == coll.size());
    }

    // mean/std are consistent with the per-fold values
    double mean = 0;
    for (double a : rep.fold_accuracy) mean += a;
    mean /= 5.0;
    CHECK(rep.mean_accuracy == Approx(mean));
    double var = 0;
    for (double a : rep.fold_accuracy) var += (a - mean) * (a - mean);
    CHECK(rep.std_accuracy == Approx(std::sqrt(var / 5.0)));
}

TEST_CASE("node_classification_eval on separable node embeddings") {
    const int n = 120;
    Eigen::MatrixXd emb(n, 4);
    std::vector<int> labels(n);
    auto rng = make_rng(9);
    std::normal_distribution<double> noise(0.0, 0.3);
    for (int i = 0; i < n; ++i) {
        int c = i % 3;
        labels[static_cast<std::size_t>(i)] = c;
        emb.row(i) << 3.0 * c + noise(rng), -2.0 * c + noise(rng), noise(rng), noise(rng);
    }
    EvalReport rep = node_classification_eval(emb, labels, 0.7, 5, 10);
    REQUIRE(rep.fold_accuracy.size() == 10);
    CHECK(rep.micro_f1 > 0.95);
    CHECK(rep.macro_f1 > 0.95);
    CHECK(rep.micro_f1_std >= 0.0);

    // micro-F1 equals accuracy for single-label multi-class
    CHECK(rep.micro_f1 == Approx(rep.mean_accuracy).epsilon(1e-12));

    std::vector<int> flat(n, 2);
    EvalReport trivial = node_classification_eval(emb, flat, 0.7, 5, 3);
    CHECK(trivial.macro_f1 == 1.0);
    CHECK(trivial.micro_f1 == 1.0);
}
