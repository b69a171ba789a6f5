#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "awkernel/feature_maps.hpp"
#include "awkernel/graph.hpp"

// Linear classifiers and the paper's evaluation protocols: stratified 10-fold
// CV for graph classification, random stratified splits averaged over 10 runs
// for node classification.
namespace awkernel {

enum class ClassifierKind { logistic, squared_hinge_svm };

struct FoldPlan {
    std::vector<int> fold_of;  // per sample
    int folds = 0;
    std::uint64_t seed = 0;

    std::vector<int> train_indices(int fold) const {
        std::vector<int> out;
        for (std::size_t i = 0; i < fold_of.size(); ++i)
            if (fold_of[i] != fold) out.push_back(static_cast<int>(i));
        return out;
    }
    std::vector<int> test_indices(int fold) const {
        std::vector<int> out;
        for (std::size_t i = 0; i < fold_of.size(); ++i)
            if (fold_of[i] == fold) out.push_back(static_cast<int>(i));
        return out;
    }
};

// Stratified fold assignment: per-class shuffles dealt round-robin, so fold
// sizes differ by at most one and every class spreads across folds.
inline FoldPlan stratified_folds(const std::vector<int>& labels, int folds,
                                 std::uint64_t seed) {
    if (folds < 2) throw ParamError("stratified_folds: need >= 2 folds");
    FoldPlan plan;
    plan.folds = folds;
    plan.seed = seed;
    plan.fold_of.assign(labels.size(), 0);

    std::map<int, std::vector<int>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i)
        by_class[labels[i]].push_back(static_cast<int>(i));
    std::size_t position = 0;
    for (auto& [cls, idx] : by_class) {
        auto rng = make_rng(seed, static_cast<std::uint64_t>(cls), 0, /*salt=*/0x666f6c64);
        std::shuffle(idx.begin(), idx.end(), rng);
        for (int i : idx) {
            plan.fold_of[static_cast<std::size_t>(i)] =
                static_cast<int>(position % static_cast<std::size_t>(folds));
            ++position;
        }
    }
    for (int f = 0; f < folds; ++f) {
        std::set<int> train_classes;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (plan.fold_of[i] != f) train_classes.insert(labels[i]);
        if (train_classes.size() < by_class.size())
            warn("stratified_folds: some class missing from training data of fold " +
                 std::to_string(f));
    }
    return plan;
}

// Per-dimension zero mean / unit variance; constant dimensions are centered
// and left unscaled.
struct Standardizer {
    Eigen::VectorXd mean;
    Eigen::VectorXd scale;

    static Standardizer fit(const Eigen::MatrixXd& x) {
        Standardizer s;
        s.mean = x.colwise().mean();
        Eigen::VectorXd var =
            (x.rowwise() - s.mean.transpose()).array().square().colwise().mean();
        s.scale = var.cwiseSqrt();
        for (long j = 0; j < s.scale.size(); ++j)
            if (s.scale(j) < 1e-12) s.scale(j) = 1.0;
        return s;
    }

    Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const {
        return (x.rowwise() - mean.transpose()).array().rowwise() /
               scale.transpose().array();
    }
};

struct LinearModel {
    Eigen::MatrixXd weights;  // one row per class head
    Eigen::VectorXd bias;
    std::vector<int> classes;
    ClassifierKind kind = ClassifierKind::logistic;
    bool constant = false;  // single-class training data
};

namespace detail {

inline double logistic_loss(double margin) {
    // log(1 + exp(-margin)), stable for large |margin|
    if (margin > 0) return std::log1p(std::exp(-margin));
    return -margin + std::log1p(std::exp(margin));
}

// L2-regularized binary head on labels y in {-1,+1}, damped Newton with
// backtracking, run to gradient-infinity-norm 1e-5 or the iteration cap.
inline void fit_binary_head(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                            double reg, ClassifierKind kind, Eigen::VectorXd& w_out,
                            double& b_out) {
    const long n = x.rows(), d = x.cols();
    Eigen::VectorXd wb = Eigen::VectorXd::Zero(d + 1);  // last entry = bias

    auto objective = [&](const Eigen::VectorXd& wb_) {
        Eigen::VectorXd f = x * wb_.head(d) + Eigen::VectorXd::Constant(n, wb_(d));
        double loss = 0.0;
        if (kind == ClassifierKind::logistic) {
            for (long i = 0; i < n; ++i) loss += logistic_loss(y(i) * f(i));
        } else {
            for (long i = 0; i < n; ++i) {
                double m = std::max(0.0, 1.0 - y(i) * f(i));
                loss += m * m;
            }
        }
        return loss / static_cast<double>(n) + 0.5 * reg * wb_.head(d).squaredNorm();
    };

    const int max_iters = 100;
    for (int iter = 0; iter < max_iters; ++iter) {
        Eigen::VectorXd f = x * wb.head(d) + Eigen::VectorXd::Constant(n, wb(d));
        Eigen::VectorXd dloss(n);   // d loss_i / d f_i
        Eigen::VectorXd curv(n);    // d2 loss_i / d f_i^2 (generalized for hinge)
        if (kind == ClassifierKind::logistic) {
            for (long i = 0; i < n; ++i) {
                double p = 1.0 / (1.0 + std::exp(-f(i)));  // P(y=+1)
                dloss(i) = p - (y(i) > 0 ? 1.0 : 0.0);
                curv(i) = std::max(p * (1.0 - p), 1e-10);
            }
        } else {
            for (long i = 0; i < n; ++i) {
                double m = 1.0 - y(i) * f(i);
                dloss(i) = m > 0 ? -2.0 * y(i) * m : 0.0;
                curv(i) = m > 0 ? 2.0 : 0.0;
            }
        }
        Eigen::VectorXd grad(d + 1);
        grad.head(d) = x.transpose() * dloss / static_cast<double>(n) + reg * wb.head(d);
        grad(d) = dloss.sum() / static_cast<double>(n);
        if (grad.cwiseAbs().maxCoeff() < 1e-5) break;

        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d + 1, d + 1);
        Eigen::MatrixXd xs = x.array().colwise() * curv.array();
        h.topLeftCorner(d, d) = x.transpose() * xs / static_cast<double>(n);
        h.topLeftCorner(d, d).diagonal().array() += reg + 1e-10;
        h.topRightCorner(d, 1) = xs.colwise().sum().transpose() / static_cast<double>(n);
        h.bottomLeftCorner(1, d) = h.topRightCorner(d, 1).transpose();
        h(d, d) = curv.sum() / static_cast<double>(n) + 1e-10;

        Eigen::VectorXd step = h.ldlt().solve(grad);
        double f0 = objective(wb);
        double t = 1.0;
        Eigen::VectorXd trial = wb - t * step;
        int backtracks = 0;
        while (objective(trial) > f0 - 1e-4 * t * grad.dot(step) && backtracks < 30) {
            t *= 0.5;
            trial = wb - t * step;
            ++backtracks;
        }
        if (backtracks >= 30) break;  // no descent direction left
        wb = trial;
    }
    w_out = wb.head(d);
    b_out = wb(d);
}

}  // namespace detail

// One-vs-rest L2-regularized linear model. `seed` only fixes tie-breaking
// conventions; the optimization itself is deterministic.
inline LinearModel fit_linear(const Eigen::MatrixXd& x, const std::vector<int>& y,
                              double reg, ClassifierKind kind = ClassifierKind::logistic,
                              std::uint64_t seed = 0) {
    (void)seed;
    if (x.rows() != static_cast<long>(y.size()))
        throw ParamError("fit_linear: row/label count mismatch");
    LinearModel model;
    model.kind = kind;
    std::set<int> classes(y.begin(), y.end());
    model.classes.assign(classes.begin(), classes.end());
    if (model.classes.size() < 2) {
        warn("fit_linear: single-class training data, returning constant predictor");
        model.constant = true;
        model.weights = Eigen::MatrixXd::Zero(1, x.cols());
        model.bias = Eigen::VectorXd::Zero(1);
        return model;
    }
    const long heads = static_cast<long>(model.classes.size());
    model.weights.resize(heads, x.cols());
    model.bias.resize(heads);
    for (long h = 0; h < heads; ++h) {
        Eigen::VectorXd ybin(x.rows());
        for (long i = 0; i < x.rows(); ++i)
            ybin(i) = (y[static_cast<std::size_t>(i)] == model.classes[static_cast<std::size_t>(h)])
                          ? 1.0
                          : -1.0;
        Eigen::VectorXd w;
        double b = 0.0;
        detail::fit_binary_head(x, ybin, reg, kind, w, b);
        model.weights.row(h) = w.transpose();
        model.bias(h) = b;
    }
    return model;
}

inline std::vector<int> predict(const LinearModel& model, const Eigen::MatrixXd& x) {
    std::vector<int> out(static_cast<std::size_t>(x.rows()));
    if (model.constant) {
        std::fill(out.begin(), out.end(), model.classes.empty() ? 0 : model.classes[0]);
        return out;
    }
    Eigen::MatrixXd scores = x * model.weights.transpose();
    scores.rowwise() += model.bias.transpose();
    for (long i = 0; i < x.rows(); ++i) {
        Eigen::Index best = 0;
        scores.row(i).maxCoeff(&best);
        out[static_cast<std::size_t>(i)] = model.classes[static_cast<std::size_t>(best)];
    }
    return out;
}

inline double accuracy(const std::vector<int>& truth, const std::vector<int>& pred) {
    if (truth.empty()) return 0.0;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (truth[i] == pred[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(truth.size());
}

struct F1Scores {
    double macro = 0.0;
    double micro = 0.0;
};

inline F1Scores f1_scores(const std::vector<int>& truth, const std::vector<int>& pred) {
    std::set<int> classes(truth.begin(), truth.end());
    classes.insert(pred.begin(), pred.end());
    double macro = 0.0;
    long tp_all = 0, fp_all = 0, fn_all = 0;
    for (int c : classes) {
        long tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            bool t = truth[i] == c, p = pred[i] == c;
            tp += t && p;
            fp += !t && p;
            fn += t && !p;
        }
        macro += (2 * tp + fp + fn) > 0
                     ? 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn)
                     : 0.0;
        tp_all += tp;
        fp_all += fp;
        fn_all += fn;
    }
    F1Scores s;
    s.macro = classes.empty() ? 0.0 : macro / static_cast<double>(classes.size());
    s.micro = (2 * tp_all + fp_all + fn_all) > 0
                  ? 2.0 * static_cast<double>(tp_all) /
                        static_cast<double>(2 * tp_all + fp_all + fn_all)
                  : 0.0;
    return s;
}

struct EvalReport {
    std::vector<double> fold_accuracy;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;  // population std over folds/runs
    double macro_f1 = 0.0;
    double micro_f1 = 0.0;
    double macro_f1_std = 0.0;
    double micro_f1_std = 0.0;
    std::vector<double> chosen_reg;                // per fold/run
    std::vector<std::vector<int>> fold_train_indices;  // leakage audit trail
    std::vector<int> per_class_correct;            // pooled over held-out folds
    std::vector<int> per_class_total;
    std::string config_snapshot;
};

inline void finalize_accuracy_stats(EvalReport& rep) {
    const auto& a = rep.fold_accuracy;
    if (a.empty()) return;
    rep.mean_accuracy = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(a.size());
    double var = 0.0;
    for (double v : a) var += (v - rep.mean_accuracy) * (v - rep.mean_accuracy);
    rep.std_accuracy = std::sqrt(var / static_cast<double>(a.size()));
}

inline const std::vector<double>& reg_grid() {
    static const std::vector<double> grid{1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2};
    return grid;
}

namespace detail {

// Stratified single split of `idx` (by label) into inner-train / inner-val.
inline void inner_split(const std::vector<int>& idx, const std::vector<int>& labels,
                        double train_fraction, std::uint64_t seed,
                        std::vector<int>& train, std::vector<int>& val) {
    std::map<int, std::vector<int>> by_class;
    for (int i : idx) by_class[labels[static_cast<std::size_t>(i)]].push_back(i);
    for (auto& [cls, members] : by_class) {
        auto rng = make_rng(seed, static_cast<std::uint64_t>(cls), 0, /*salt=*/0x696e6e72);
        std::shuffle(members.begin(), members.end(), rng);
        std::size_t k = static_cast<std::size_t>(
            std::ceil(train_fraction * static_cast<double>(members.size())));
        k = std::min(k, members.size());
        for (std::size_t i = 0; i < members.size(); ++i)
            (i < k ? train : val).push_back(members[i]);
    }
    std::sort(train.begin(), train.end());
    std::sort(val.begin(), val.end());
}

inline Eigen::MatrixXd take_rows(const Eigen::MatrixXd& x, const std::vector<int>& idx) {
    Eigen::MatrixXd out(static_cast<long>(idx.size()), x.cols());
    for (std::size_t i = 0; i < idx.size(); ++i)
        out.row(static_cast<long>(i)) = x.row(idx[i]);
    return out;
}

inline std::vector<int> take_labels(const std::vector<int>& y, const std::vector<int>& idx) {
    std::vector<int> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(y[static_cast<std::size_t>(i)]);
    return out;
}

// Standardize on train rows, pick reg on an inner 80/20 split, refit on the
// full training set, and predict the eval rows.
inline std::vector<int> train_and_predict(const Eigen::MatrixXd& x,
                                          const std::vector<int>& y,
                                          const std::vector<int>& train_idx,
                                          const std::vector<int>& eval_idx,
                                          ClassifierKind kind, std::uint64_t seed,
                                          double* chosen_reg_out) {
    Eigen::MatrixXd x_train = take_rows(x, train_idx);
    Standardizer st = Standardizer::fit(x_train);
    x_train = st.apply(x_train);
    std::vector<int> y_train = take_labels(y, train_idx);

    std::vector<int> inner_train, inner_val;
    inner_split(train_idx, y, 0.8, seed, inner_train, inner_val);
    double best_reg = 1.0;
    if (!inner_val.empty() && !inner_train.empty()) {
        double best_acc = -1.0;
        Eigen::MatrixXd xi = st.apply(take_rows(x, inner_train));
        Eigen::MatrixXd xv = st.apply(take_rows(x, inner_val));
        std::vector<int> yi = take_labels(y, inner_train);
        std::vector<int> yv = take_labels(y, inner_val);
        for (double reg : reg_grid()) {
            LinearModel m = fit_linear(xi, yi, reg, kind, seed);
            double acc = accuracy(yv, predict(m, xv));
            if (acc > best_acc) {
                best_acc = acc;
                best_reg = reg;
            }
        }
    }
    if (chosen_reg_out) *chosen_reg_out = best_reg;

    LinearModel model = fit_linear(x_train, y_train, best_reg, kind, seed);
    return predict(model, st.apply(take_rows(x, eval_idx)));
}

}  // namespace detail

// Paper protocol for graph classification: stratified k-fold CV; per fold,
// landmarks are fitted on training graphs' walks only, every graph is
// embedded under that model, and a linear classifier (inner-validated reg)
// is trained on the training folds.
inline EvalReport cross_validate(const GraphCollection& coll, const ModelConfig& cfg,
                                 int folds = 10, std::uint64_t seed = 0,
                                 ClassifierKind kind = ClassifierKind::logistic) {
    const std::vector<int> labels = coll.labels();
    for (int l : labels)
        if (l < 0) throw ParamError("cross_validate: unlabeled graph in collection");
    FoldPlan plan = stratified_folds(labels, folds, derive_seed(seed, 0xCF));

    std::vector<GraphWalks> walks(coll.size());
    parallel_for(coll.size(), cfg.threads, [&](std::size_t gi) {
        walks[gi] = collect_walks(coll.graphs[gi], gi, cfg);
    });

    EvalReport rep;
    rep.config_snapshot = cfg.summary() + " folds=" + std::to_string(folds) +
                          " cv_seed=" + std::to_string(seed);
    rep.per_class_correct.assign(static_cast<std::size_t>(coll.class_count), 0);
    rep.per_class_total.assign(static_cast<std::size_t>(coll.class_count), 0);
    std::vector<int> pooled_truth, pooled_pred;

    for (int fold = 0; fold < folds; ++fold) {
        std::vector<int> train_idx = plan.train_indices(fold);
        std::vector<int> test_idx = plan.test_indices(fold);
        rep.fold_train_indices.push_back(train_idx);

        EmbeddingModel model = fit_model(coll, walks, cfg, train_idx);
        Eigen::MatrixXd x(static_cast<long>(coll.size()), model.dim());
        parallel_for(coll.size(), cfg.threads, [&](std::size_t gi) {
            x.row(static_cast<long>(gi)) =
                graph_pool(embed_nodes(model, coll.graphs[gi], walks[gi])).transpose();
        });

        double chosen = 1.0;
        std::vector<int> pred = detail::train_and_predict(
            x, labels, train_idx, test_idx, kind, derive_seed(seed, 0xF0 + static_cast<std::uint64_t>(fold)),
            &chosen);
        rep.chosen_reg.push_back(chosen);
        std::vector<int> truth = detail::take_labels(labels, test_idx);
        rep.fold_accuracy.push_back(accuracy(truth, pred));
        for (std::size_t i = 0; i < truth.size(); ++i) {
            pooled_truth.push_back(truth[i]);
            pooled_pred.push_back(pred[i]);
            ++rep.per_class_total[static_cast<std::size_t>(truth[i])];
            if (truth[i] == pred[i])
                ++rep.per_class_correct[static_cast<std::size_t>(truth[i])];
        }
    }
    finalize_accuracy_stats(rep);
    F1Scores f1 = f1_scores(pooled_truth, pooled_pred);
    rep.macro_f1 = f1.macro;
    rep.micro_f1 = f1.micro;
    return rep;
}

// Paper protocol for node classification: embeddings are fixed (unsupervised),
// a random stratified train split of the given fraction feeds a logistic
// probe, repeated `runs` times.
inline EvalReport node_classification_eval(const Eigen::MatrixXd& embeddings,
                                           const std::vector<int>& labels,
                                           double train_fraction, std::uint64_t seed,
                                           int runs = 10,
                                           ClassifierKind kind = ClassifierKind::logistic) {
    if (embeddings.rows() != static_cast<long>(labels.size()))
        throw ParamError("node_classification_eval: row/label mismatch");
    if (train_fraction <= 0.0 || train_fraction >= 1.0)
        throw ParamError("node_classification_eval: train_fraction must be in (0,1)");
    EvalReport rep;
    std::vector<int> all_idx(labels.size());
    std::iota(all_idx.begin(), all_idx.end(), 0);
    std::vector<double> macros, micros;
    for (int run = 0; run < runs; ++run) {
        std::vector<int> train, test;
        detail::inner_split(all_idx, labels, train_fraction,
                            derive_seed(seed, 0xA0 + static_cast<std::uint64_t>(run)), train,
                            test);
        if (test.empty()) {
            warn("node_classification_eval: empty test split, skipping run");
            continue;
        }
        rep.fold_train_indices.push_back(train);
        double chosen = 1.0;
        std::vector<int> pred = detail::train_and_predict(
            embeddings, labels, train, test, kind,
            derive_seed(seed, 0xB0 + static_cast<std::uint64_t>(run)), &chosen);
        rep.chosen_reg.push_back(chosen);
        std::vector<int> truth = detail::take_labels(labels, test);
        rep.fold_accuracy.push_back(accuracy(truth, pred));
        F1Scores f1 = f1_scores(truth, pred);
        macros.push_back(f1.macro);
        micros.push_back(f1.micro);
    }
    finalize_accuracy_stats(rep);
    auto mean_std = [](const std::vector<double>& v, double& mean, double& sd) {
        if (v.empty()) return;
        mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        sd = std::sqrt(var / static_cast<double>(v.size()));
    };
    mean_std(macros, rep.macro_f1, rep.macro_f1_std);
    mean_std(micros, rep.micro_f1, rep.micro_f1_std);
    return rep;
}

}  // namespace awkernel
