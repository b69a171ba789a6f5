#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "awkernel/graph.hpp"

// TUDataset plain-text format:
//   NAME_A.txt               comma-separated "u, v" edge lines, 1-based global ids
//   NAME_graph_indicator.txt one graph id per node line (1-based)
//   NAME_graph_labels.txt    one label per graph line
//   NAME_node_labels.txt     optional, one integer per node (one-hot encoded on load)
//   NAME_node_attributes.txt optional, comma-separated floats per node
namespace awkernel {

namespace detail {

inline std::vector<std::string> read_lines(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw LoadError("cannot open " + p.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        // skip pure-whitespace lines (some distributions end with one)
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        lines.push_back(line);
    }
    return lines;
}

inline std::vector<double> parse_csv_row(const std::string& line, const std::string& ctx) {
    std::vector<double> out;
    std::string item;
    std::stringstream ss(line);
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw FormatError("bad numeric field '" + item + "' in " + ctx);
        }
    }
    if (out.empty()) throw FormatError("empty row in " + ctx);
    return out;
}

}  // namespace detail

// Loads a TUDataset-format directory. Edges are deduplicated and symmetrized,
// categorical node labels are one-hot encoded (width = number of distinct
// label values in the file, sorted), continuous attributes load verbatim, and
// graph labels are remapped to contiguous 0-based class ids.
inline GraphCollection load_tu_dataset(const std::filesystem::path& dir,
                                       const std::string& name) {
    namespace fs = std::filesystem;
    const fs::path a_path = dir / (name + "_A.txt");
    const fs::path ind_path = dir / (name + "_graph_indicator.txt");
    const fs::path glab_path = dir / (name + "_graph_labels.txt");
    const fs::path nlab_path = dir / (name + "_node_labels.txt");
    const fs::path nattr_path = dir / (name + "_node_attributes.txt");
    for (const fs::path* p : {&a_path, &ind_path, &glab_path}) {
        if (!fs::exists(*p)) throw LoadError("missing mandatory file " + p->string());
    }

    const auto indicator_lines = detail::read_lines(ind_path);
    const std::size_t total_nodes = indicator_lines.size();
    std::vector<int> graph_of(total_nodes);
    int num_graphs = 0;
    for (std::size_t i = 0; i < total_nodes; ++i) {
        int gid = 0;
        try {
            gid = std::stoi(indicator_lines[i]);
        } catch (const std::exception&) {
            throw FormatError("bad graph indicator line " + std::to_string(i + 1));
        }
        if (gid < 1) throw FormatError("graph indicator must be >= 1");
        graph_of[i] = gid - 1;
        num_graphs = std::max(num_graphs, gid);
    }

    // Map 1-based global node ids to (graph, 0-based local id), in file order.
    std::vector<int> local_of(total_nodes);
    std::vector<int> nodes_per_graph(static_cast<std::size_t>(num_graphs), 0);
    for (std::size_t i = 0; i < total_nodes; ++i) {
        local_of[i] = nodes_per_graph[static_cast<std::size_t>(graph_of[i])]++;
    }

    GraphCollection coll;
    coll.name = name;
    coll.graphs.resize(static_cast<std::size_t>(num_graphs));
    for (int gi = 0; gi < num_graphs; ++gi)
        coll.graphs[static_cast<std::size_t>(gi)].node_count =
            nodes_per_graph[static_cast<std::size_t>(gi)];

    for (const auto& line : detail::read_lines(a_path)) {
        auto row = detail::parse_csv_row(line, name + "_A.txt");
        if (row.size() != 2) throw FormatError("edge line must have two fields: " + line);
        long u = static_cast<long>(row[0]), v = static_cast<long>(row[1]);
        if (u < 1 || v < 1 || u > static_cast<long>(total_nodes) ||
            v > static_cast<long>(total_nodes))
            throw FormatError("edge endpoint out of range: " + line);
        std::size_t ui = static_cast<std::size_t>(u - 1), vi = static_cast<std::size_t>(v - 1);
        if (graph_of[ui] != graph_of[vi])
            throw FormatError("edge crosses graph boundary: " + line);
        if (ui == vi) {
            warn(name + ": dropping self-loop at global node " + std::to_string(u));
            continue;
        }
        coll.graphs[static_cast<std::size_t>(graph_of[ui])].edges.emplace_back(
            local_of[ui], local_of[vi]);
    }

    // Graph labels, remapped to contiguous 0-based ids by sorted value.
    const auto glab_lines = detail::read_lines(glab_path);
    if (glab_lines.size() != static_cast<std::size_t>(num_graphs))
        throw FormatError(name + "_graph_labels.txt has " + std::to_string(glab_lines.size()) +
                          " lines for " + std::to_string(num_graphs) + " graphs");
    std::vector<int> raw_labels(glab_lines.size());
    std::map<int, int> label_map;
    for (std::size_t i = 0; i < glab_lines.size(); ++i) {
        raw_labels[i] = std::stoi(glab_lines[i]);
        label_map[raw_labels[i]] = 0;
    }
    int next_class = 0;
    for (auto& [raw, mapped] : label_map) mapped = next_class++;
    coll.class_count = next_class;
    for (std::size_t i = 0; i < raw_labels.size(); ++i)
        coll.graphs[i].label = label_map[raw_labels[i]];

    // Node attributes: continuous file wins when both are present.
    namespace fs2 = std::filesystem;
    if (fs2::exists(nattr_path)) {
        const auto lines = detail::read_lines(nattr_path);
        if (lines.size() != total_nodes)
            throw FormatError(name + "_node_attributes.txt row count mismatch");
        auto first = detail::parse_csv_row(lines[0], name + "_node_attributes.txt");
        const int d0 = static_cast<int>(first.size());
        for (auto& g : coll.graphs) g.attributes = Eigen::MatrixXd::Zero(g.node_count, d0);
        for (std::size_t i = 0; i < total_nodes; ++i) {
            auto row = detail::parse_csv_row(lines[i], name + "_node_attributes.txt");
            if (static_cast<int>(row.size()) != d0)
                throw FormatError("ragged attribute row " + std::to_string(i + 1));
            Graph& g = coll.graphs[static_cast<std::size_t>(graph_of[i])];
            for (int j = 0; j < d0; ++j) g.attributes(local_of[i], j) = row[j];
        }
        coll.attribute_kind = AttributeKind::continuous;
    } else if (fs2::exists(nlab_path)) {
        const auto lines = detail::read_lines(nlab_path);
        if (lines.size() != total_nodes)
            throw FormatError(name + "_node_labels.txt row count mismatch");
        std::vector<int> raw(total_nodes);
        std::map<int, int> value_map;
        for (std::size_t i = 0; i < total_nodes; ++i) {
            raw[i] = std::stoi(lines[i]);
            value_map[raw[i]] = 0;
        }
        int next = 0;
        for (auto& [val, idx] : value_map) idx = next++;
        const int d0 = next;
        for (auto& g : coll.graphs) {
            g.attributes = Eigen::MatrixXd::Zero(g.node_count, d0);
            g.node_labels.clear();
        }
        for (std::size_t i = 0; i < total_nodes; ++i) {
            Graph& g = coll.graphs[static_cast<std::size_t>(graph_of[i])];
            g.attributes(local_of[i], value_map[raw[i]]) = 1.0;
        }
        // also keep the raw categorical value; node-classification runs read it
        // as the node's class id
        for (auto& g : coll.graphs) g.node_labels.resize(static_cast<std::size_t>(g.node_count));
        for (std::size_t i = 0; i < total_nodes; ++i) {
            coll.graphs[static_cast<std::size_t>(graph_of[i])]
                .node_labels[static_cast<std::size_t>(local_of[i])] = value_map[raw[i]];
        }
        coll.attribute_kind = AttributeKind::categorical_one_hot;
    } else {
        for (auto& g : coll.graphs) g.attributes = Eigen::MatrixXd::Zero(g.node_count, 0);
        coll.attribute_kind = AttributeKind::none;
    }

    for (auto& g : coll.graphs) g.finalize();
    return coll;
}

// Writes a collection in TUDataset format (both edge directions, matching how
// the distributed datasets store undirected graphs). Continuous attributes are
// printed with %.17g so a reload reproduces them bit-exactly.
inline void save_tu_dataset(const GraphCollection& coll,
                            const std::filesystem::path& dir,
                            const std::string& name) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    auto open = [&](const std::string& suffix) {
        std::ofstream out(dir / (name + suffix));
        if (!out) throw LoadError("cannot write " + (dir / (name + suffix)).string());
        return out;
    };

    std::ofstream a = open("_A.txt");
    std::ofstream ind = open("_graph_indicator.txt");
    std::ofstream glab = open("_graph_labels.txt");

    long base = 1;  // 1-based global node ids
    for (std::size_t gi = 0; gi < coll.graphs.size(); ++gi) {
        const Graph& g = coll.graphs[gi];
        for (const auto& [u, v] : g.edges) {
            a << (base + u) << ", " << (base + v) << "\n";
            a << (base + v) << ", " << (base + u) << "\n";
        }
        for (int u = 0; u < g.node_count; ++u) ind << (gi + 1) << "\n";
        glab << g.label.value_or(0) << "\n";
        base += g.node_count;
    }

    if (coll.attribute_kind == AttributeKind::categorical_one_hot) {
        std::ofstream nlab = open("_node_labels.txt");
        for (const auto& g : coll.graphs) {
            for (int u = 0; u < g.node_count; ++u) {
                long idx = 0;
                if (!g.node_labels.empty()) {
                    idx = g.node_labels[static_cast<std::size_t>(u)];
                } else {
                    Eigen::Index im = 0;
                    g.attributes.row(u).maxCoeff(&im);
                    idx = static_cast<long>(im);
                }
                nlab << idx << "\n";
            }
        }
    } else if (coll.attribute_kind == AttributeKind::continuous) {
        std::ofstream nattr = open("_node_attributes.txt");
        char buf[64];
        for (const auto& g : coll.graphs) {
            for (int u = 0; u < g.node_count; ++u) {
                for (int j = 0; j < g.attr_dim(); ++j) {
                    std::snprintf(buf, sizeof(buf), "%.17g", g.attributes(u, j));
                    nattr << (j ? ", " : "") << buf;
                }
                nattr << "\n";
            }
        }
    }
}

}  // namespace awkernel
