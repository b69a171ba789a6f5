#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "awkernel/common.hpp"

namespace awkernel {

// Undirected simple graph with per-node attribute vectors.
// Node ids are 0-based and contiguous within the graph.
struct Graph {
    int node_count = 0;
    // Canonical after finalize(): u < v, sorted, deduplicated.
    std::vector<std::pair<int, int>> edges;
    // node_count x d0 (one attribute row per node). May have 0 columns.
    Eigen::MatrixXd attributes;
    std::optional<int> label;
    // Per-node class ids for node-classification datasets; empty when absent.
    std::vector<int> node_labels;

    std::vector<std::vector<int>> neighbors;

    // Canonicalizes the edge list (collapses (u,v)/(v,u) and duplicates) and
    // builds the adjacency lists. Self-loops and dangling endpoints are kept
    // so that validate() can report them.
    void finalize() {
        for (auto& e : edges) {
            if (e.first > e.second) std::swap(e.first, e.second);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        neighbors.assign(static_cast<std::size_t>(std::max(node_count, 0)), {});
        for (const auto& [u, v] : edges) {
            if (u >= 0 && u < node_count && v >= 0 && v < node_count) {
                neighbors[static_cast<std::size_t>(u)].push_back(v);
                if (u != v) neighbors[static_cast<std::size_t>(v)].push_back(u);
            }
        }
        for (auto& adj : neighbors) std::sort(adj.begin(), adj.end());
    }

    int degree(int u) const { return static_cast<int>(neighbors[static_cast<std::size_t>(u)].size()); }
    std::size_t edge_count() const { return edges.size(); }
    int attr_dim() const { return static_cast<int>(attributes.cols()); }

    bool has_edge(int u, int v) const {
        if (u > v) std::swap(u, v);
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
    }
};

inline Graph make_graph(int node_count, std::vector<std::pair<int, int>> edges,
                        int attr_dim = 0) {
    Graph g;
    g.node_count = node_count;
    g.edges = std::move(edges);
    g.attributes = Eigen::MatrixXd::Zero(node_count, attr_dim);
    g.finalize();
    return g;
}

enum class AttributeKind { categorical_one_hot, continuous, none };

inline const char* to_string(AttributeKind k) {
    switch (k) {
        case AttributeKind::categorical_one_hot: return "categorical-one-hot";
        case AttributeKind::continuous: return "continuous";
        case AttributeKind::none: return "none";
    }
    return "?";
}

// Ordered list of graphs sharing attribute layout and label space.
struct GraphCollection {
    std::vector<Graph> graphs;
    int class_count = 0;
    AttributeKind attribute_kind = AttributeKind::none;
    std::string name;

    std::size_t size() const { return graphs.size(); }
    int attr_dim() const { return graphs.empty() ? 0 : graphs.front().attr_dim(); }

    std::vector<int> labels() const {
        std::vector<int> out;
        out.reserve(graphs.size());
        for (const auto& g : graphs) out.push_back(g.label.value_or(-1));
        return out;
    }
};

// Reports every invariant violation; empty result means the graph is valid.
inline std::vector<std::string> validate(const Graph& g) {
    std::vector<std::string> issues;
    if (g.node_count < 0) issues.push_back("negative node count");
    for (const auto& [u, v] : g.edges) {
        if (u == v) issues.push_back("self-loop at node " + std::to_string(u));
        if (u < 0 || u >= g.node_count)
            issues.push_back("dangling endpoint " + std::to_string(u));
        if (v < 0 || v >= g.node_count)
            issues.push_back("dangling endpoint " + std::to_string(v));
    }
    if (g.attributes.rows() != g.node_count)
        issues.push_back("attribute row count " + std::to_string(g.attributes.rows()) +
                         " != node count " + std::to_string(g.node_count));
    if (!g.node_labels.empty() &&
        g.node_labels.size() != static_cast<std::size_t>(g.node_count))
        issues.push_back("node label count mismatch");
    return issues;
}

inline std::vector<std::string> validate(const GraphCollection& c) {
    std::vector<std::string> issues;
    for (std::size_t i = 0; i < c.graphs.size(); ++i) {
        const Graph& g = c.graphs[i];
        for (const auto& s : validate(g))
            issues.push_back("graph " + std::to_string(i) + ": " + s);
        if (g.attr_dim() != c.attr_dim())
            issues.push_back("graph " + std::to_string(i) + ": attribute dim mismatch");
        if (g.label && (*g.label < 0 || *g.label >= c.class_count))
            issues.push_back("graph " + std::to_string(i) + ": label out of range");
    }
    return issues;
}

// Copy of g whose attributes are one-hot degree encodings of width
// max_degree+1; degrees above max_degree clamp into the last bucket.
inline Graph degree_attributes(const Graph& g, int max_degree) {
    if (max_degree < 1) throw ParamError("degree_attributes: max_degree must be positive");
    Graph out = g;
    out.attributes = Eigen::MatrixXd::Zero(g.node_count, max_degree + 1);
    for (int u = 0; u < g.node_count; ++u) {
        int d = std::min(g.degree(u), max_degree);
        out.attributes(u, d) = 1.0;
    }
    return out;
}

inline int max_degree(const GraphCollection& c) {
    int m = 0;
    for (const auto& g : c.graphs)
        for (int u = 0; u < g.node_count; ++u) m = std::max(m, g.degree(u));
    return m;
}

// Replaces all attributes with degree one-hots capped at the collection's
// observed maximum degree. Used for attribute-free datasets and for the
// RW(degree) ablation.
inline GraphCollection with_degree_attributes(const GraphCollection& c) {
    GraphCollection out = c;
    int cap = std::max(1, max_degree(c));
    for (auto& g : out.graphs) g = degree_attributes(g, cap);
    out.attribute_kind = AttributeKind::categorical_one_hot;
    return out;
}

}  // namespace awkernel
