#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "awkernel/classify.hpp"
#include "awkernel/feature_maps.hpp"

// On-disk formats: embedding CSV (9 significant digits), versioned textual
// model files (17 digits, bit-exact round trip), and eval reports.
namespace awkernel {

inline constexpr const char* kModelMagic = "awkernel-model v1";

namespace detail {

inline std::string fmt_g(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

inline void write_landmark_set(std::ostream& out, const LandmarkSet& lm) {
    out << "branch " << to_string(lm.branch) << "\n";
    out << "alpha " << fmt_g(lm.alpha, 17) << "\n";
    out << "l " << lm.walk_len << "\n";
    out << "epsilon " << fmt_g(lm.epsilon, 17) << "\n";
    out << "q " << lm.q() << "\n";
    out << "p " << lm.p() << "\n";
    out << "Z\n";
    for (long i = 0; i < lm.Z.rows(); ++i) {
        for (long j = 0; j < lm.Z.cols(); ++j)
            out << (j ? " " : "") << fmt_g(lm.Z(i, j), 17);
        out << "\n";
    }
}

inline LandmarkSet read_landmark_set(std::istream& in) {
    std::string key, branch;
    double alpha = 0, epsilon = 0;
    int l = 0;
    long q = 0, p = 0;
    in >> key >> branch;
    if (key != "branch") throw FormatError("model file: expected 'branch'");
    in >> key >> alpha;
    in >> key >> l;
    in >> key >> epsilon;
    in >> key >> q;
    in >> key >> p;
    in >> key;
    if (key != "Z") throw FormatError("model file: expected 'Z'");
    Eigen::MatrixXd z(q, p);
    for (long i = 0; i < q; ++i)
        for (long j = 0; j < p; ++j)
            if (!(in >> z(i, j))) throw FormatError("model file: truncated Z matrix");
    return landmark_set_from(std::move(z), alpha, l, epsilon,
                             branch == "walk" ? Branch::walk : Branch::aw);
}

}  // namespace detail

inline void save_model(const EmbeddingModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write model file " + path.string());
    out << kModelMagic << "\n";
    out << "config " << model.config.summary() << "\n";
    out << "pool " << model.landmark_pool << "\n";
    out << "walk_layers " << model.walk_layers.size() << "\n";
    out << "aw_layers " << model.aw_layers.size() << "\n";
    for (const auto& lm : model.walk_layers) detail::write_landmark_set(out, lm);
    for (const auto& lm : model.aw_layers) detail::write_landmark_set(out, lm);
}

// Reloads landmark sets (inv_sqrt_gram is recomputed from Z). The config
// echo lines are provenance, not parsed back into a ModelConfig.
inline EmbeddingModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open model file " + path.string());
    std::string line;
    std::getline(in, line);
    if (line != kModelMagic) throw FormatError("not an awkernel model file: " + path.string());
    EmbeddingModel model;
    std::getline(in, line);  // config ...
    if (line.rfind("config ", 0) != 0) throw FormatError("model file: expected config line");
    std::getline(in, line);  // pool ...
    model.landmark_pool = line.rfind("pool ", 0) == 0 ? line.substr(5) : line;
    std::string key;
    std::size_t n_walk = 0, n_aw = 0;
    in >> key >> n_walk;
    in >> key >> n_aw;
    for (std::size_t i = 0; i < n_walk; ++i)
        model.walk_layers.push_back(detail::read_landmark_set(in));
    for (std::size_t i = 0; i < n_aw; ++i)
        model.aw_layers.push_back(detail::read_landmark_set(in));
    model.config.use_walk = n_walk > 0;
    model.config.use_aw = n_aw > 0;
    if (n_walk > 0) {
        model.config.l_walk = model.walk_layers.front().walk_len;
        model.config.q_walk = static_cast<int>(model.walk_layers.back().q());
        model.config.layers = static_cast<int>(n_walk);
        model.config.alpha = model.walk_layers.front().alpha;
        model.config.epsilon = model.walk_layers.front().epsilon;
    }
    if (n_aw > 0) {
        model.config.l_aw = model.aw_layers.front().walk_len;
        model.config.q_aw = static_cast<int>(model.aw_layers.back().q());
        model.config.alpha = model.aw_layers.front().alpha;
        model.config.epsilon = model.aw_layers.front().epsilon;
    }
    return model;
}

// id column then one column per dimension, 9 significant digits. Provenance
// rides along as '#'-prefixed comment lines before the header.
inline void save_embedding_csv(const EmbeddingMatrix& emb,
                               const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write " + path.string());
    std::istringstream prov(emb.provenance);
    std::string line;
    while (std::getline(prov, line)) out << "# " << line << "\n";
    out << (emb.per_graph ? "graph_id" : "node_id");
    for (long j = 0; j < emb.values.cols(); ++j) out << ",e" << j;
    out << "\n";
    for (long i = 0; i < emb.values.rows(); ++i) {
        out << i;
        for (long j = 0; j < emb.values.cols(); ++j)
            out << "," << detail::fmt_g(emb.values(i, j), 9);
        out << "\n";
    }
}

inline void save_kernel_csv(const Eigen::MatrixXd& k, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write " + path.string());
    for (long i = 0; i < k.rows(); ++i) {
        for (long j = 0; j < k.cols(); ++j)
            out << (j ? "," : "") << detail::fmt_g(k(i, j), 17);
        out << "\n";
    }
}

inline std::string eval_report_table(const EvalReport& rep) {
    std::ostringstream os;
    os << "fold  accuracy  reg\n";
    for (std::size_t i = 0; i < rep.fold_accuracy.size(); ++i) {
        os << "  " << i << "     " << detail::fmt_g(rep.fold_accuracy[i], 6) << "    "
           << (i < rep.chosen_reg.size() ? detail::fmt_g(rep.chosen_reg[i], 3) : "-") << "\n";
    }
    os << "mean accuracy " << detail::fmt_g(rep.mean_accuracy, 6) << " +- "
       << detail::fmt_g(rep.std_accuracy, 6) << "\n";
    os << "macro-F1 " << detail::fmt_g(rep.macro_f1, 6) << "  micro-F1 "
       << detail::fmt_g(rep.micro_f1, 6) << "\n";
    if (!rep.per_class_total.empty()) {
        os << "per-class accuracy:";
        for (std::size_t c = 0; c < rep.per_class_total.size(); ++c) {
            double acc = rep.per_class_total[c]
                             ? static_cast<double>(rep.per_class_correct[c]) /
                                   static_cast<double>(rep.per_class_total[c])
                             : 0.0;
            os << " class" << c << "=" << detail::fmt_g(acc, 4);
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace awkernel
