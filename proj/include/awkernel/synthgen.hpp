#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "awkernel/graph.hpp"

// Deterministic generators for the synthetic benchmark families (Structure,
// Regular) and the 1-WL-confusable ring pairs.
namespace awkernel {

enum class Family { cycle, wheel, path, ladder };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::cycle: return "cycle";
        case Family::wheel: return "wheel";
        case Family::path: return "path";
        case Family::ladder: return "ladder";
    }
    return "?";
}

// cycle(n): n nodes, n edges, all degree 2          (n >= 3)
// wheel(n): hub 0 joined to an (n-1)-cycle          (n >= 4)
// path(n):  n nodes, n-1 edges                      (n >= 2)
// ladder(r): r = rungs, 2r nodes, 3r-2 edges        (r >= 2)
inline Graph gen_basic(Family family, int n) {
    std::vector<std::pair<int, int>> edges;
    switch (family) {
        case Family::cycle: {
            if (n < 3) throw ParamError("cycle needs n >= 3");
            for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
            return make_graph(n, std::move(edges));
        }
        case Family::wheel: {
            if (n < 4) throw ParamError("wheel needs n >= 4");
            const int rim = n - 1;
            for (int i = 1; i <= rim; ++i) {
                edges.emplace_back(0, i);
                edges.emplace_back(i, i % rim + 1);
            }
            return make_graph(n, std::move(edges));
        }
        case Family::path: {
            if (n < 2) throw ParamError("path needs n >= 2");
            for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
            return make_graph(n, std::move(edges));
        }
        case Family::ladder: {
            const int r = n;  // rungs
            if (r < 2) throw ParamError("ladder needs r >= 2");
            for (int i = 0; i < r; ++i) {
                edges.emplace_back(2 * i, 2 * i + 1);
                if (i + 1 < r) {
                    edges.emplace_back(2 * i, 2 * (i + 1));
                    edges.emplace_back(2 * i + 1, 2 * (i + 1) + 1);
                }
            }
            return make_graph(2 * r, std::move(edges));
        }
    }
    throw ParamError("unknown family");
}

struct NoiseResult {
    Graph graph;
    int requested = 0;
    int added = 0;  // < requested only when the graph ran out of free slots
};

// Adds ceil(fraction * |E|) uniformly sampled non-existing, non-self-loop
// edges. Deterministic given the seed.
inline NoiseResult add_noise_edges(const Graph& g, double fraction, std::uint64_t seed) {
    if (fraction < 0) throw ParamError("noise fraction must be >= 0");
    NoiseResult res{g, 0, 0};
    const long e = static_cast<long>(g.edge_count());
    res.requested = static_cast<int>(std::ceil(fraction * static_cast<double>(e)));
    if (res.requested == 0) return res;

    const long n = g.node_count;
    const long max_edges = n * (n - 1) / 2;
    const long free_slots = max_edges - e;
    const int target = static_cast<int>(std::min<long>(res.requested, free_slots));
    if (target < res.requested)
        warn("add_noise_edges: only " + std::to_string(target) + " of " +
             std::to_string(res.requested) + " noise edges fit");

    std::set<std::pair<int, int>> present(g.edges.begin(), g.edges.end());
    auto rng = make_rng(seed, 0, 0, /*salt=*/0x6e6f6973);
    std::uniform_int_distribution<int> pick(0, g.node_count - 1);
    while (res.added < target) {
        int u = pick(rng), v = pick(rng);
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (!present.insert({u, v}).second) continue;
        res.graph.edges.emplace_back(u, v);
        ++res.added;
    }
    res.graph.finalize();
    return res;
}

// 400 graphs, 100 per family, sizes uniform on [20, 80] (inclusive), 10%
// noise edges; class id = family index.
inline GraphCollection gen_structure_dataset(std::uint64_t seed) {
    GraphCollection coll;
    coll.name = "Structure";
    coll.class_count = 4;
    coll.attribute_kind = AttributeKind::none;
    const Family families[] = {Family::cycle, Family::wheel, Family::path, Family::ladder};
    for (int fi = 0; fi < 4; ++fi) {
        for (int k = 0; k < 100; ++k) {
            auto rng = make_rng(seed, static_cast<std::uint64_t>(fi),
                                static_cast<std::uint64_t>(k), /*salt=*/0x73747275);
            Graph g;
            if (families[fi] == Family::ladder) {
                // 2r nodes must land in [20, 80]
                std::uniform_int_distribution<int> rungs(10, 40);
                g = gen_basic(Family::ladder, rungs(rng));
            } else {
                std::uniform_int_distribution<int> size(20, 80);
                g = gen_basic(families[fi], size(rng));
            }
            g = add_noise_edges(g, 0.10, rng()).graph;
            g.label = fi;
            coll.graphs.push_back(std::move(g));
        }
    }
    return coll;
}

inline int component_count(const Graph& g) {
    std::vector<int> comp(static_cast<std::size_t>(g.node_count), -1);
    int count = 0;
    for (int s = 0; s < g.node_count; ++s) {
        if (comp[static_cast<std::size_t>(s)] != -1) continue;
        std::vector<int> stack{s};
        comp[static_cast<std::size_t>(s)] = count;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : g.neighbors[static_cast<std::size_t>(u)]) {
                if (comp[static_cast<std::size_t>(v)] == -1) {
                    comp[static_cast<std::size_t>(v)] = count;
                    stack.push_back(v);
                }
            }
        }
        ++count;
    }
    return count;
}

// Samples a simple d-regular graph on n nodes via the configuration (pairing)
// model, resampling whole matchings until simple. Throws after max_tries.
inline Graph gen_regular(int n, int d, std::mt19937_64& rng, bool require_connected,
                         int max_tries = 10000) {
    if (n <= d) throw ParamError("regular graph needs d < n");
    if ((static_cast<long>(n) * d) % 2 != 0) throw ParamError("regular graph needs n*d even");
    std::vector<int> stubs(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
    for (int u = 0; u < n; ++u)
        for (int j = 0; j < d; ++j) stubs[static_cast<std::size_t>(u) * d + j] = u;

    for (int attempt = 0; attempt < max_tries; ++attempt) {
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::set<std::pair<int, int>> edges;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v) { ok = false; break; }
            if (u > v) std::swap(u, v);
            if (!edges.insert({u, v}).second) { ok = false; break; }
        }
        if (!ok) continue;
        Graph g = make_graph(n, {edges.begin(), edges.end()});
        if (require_connected && component_count(g) != 1) continue;
        return g;
    }
    throw Error("gen_regular: retry cap exceeded (n=" + std::to_string(n) +
                ", d=" + std::to_string(d) + ")");
}

// 100 graphs: class 0 = connected 5-regular on 20 nodes (Reg-20-5), class 1 =
// two disjoint 5-regular graphs of 10 nodes each (2-Reg-10-5). No noise.
inline GraphCollection gen_regular_dataset(std::uint64_t seed) {
    GraphCollection coll;
    coll.name = "Regular";
    coll.class_count = 2;
    coll.attribute_kind = AttributeKind::none;
    for (int k = 0; k < 50; ++k) {
        auto rng = make_rng(seed, 0, static_cast<std::uint64_t>(k), /*salt=*/0x72656730);
        Graph g = gen_regular(20, 5, rng, /*require_connected=*/true);
        g.label = 0;
        coll.graphs.push_back(std::move(g));
    }
    for (int k = 0; k < 50; ++k) {
        auto rng = make_rng(seed, 1, static_cast<std::uint64_t>(k), /*salt=*/0x72656731);
        Graph a = gen_regular(10, 5, rng, /*require_connected=*/true);
        Graph b = gen_regular(10, 5, rng, /*require_connected=*/true);
        Graph g;
        g.node_count = 20;
        g.edges = a.edges;
        for (const auto& [u, v] : b.edges) g.edges.emplace_back(u + 10, v + 10);
        g.attributes = Eigen::MatrixXd::Zero(20, 0);
        g.finalize();
        g.label = 1;
        coll.graphs.push_back(std::move(g));
    }
    return coll;
}

// (R_{2k}, R_{k,k}): one 2k-cycle vs. two disjoint k-cycles. Both have 2k
// nodes, 2k edges, all degrees 2; non-isomorphic yet 1-WL-equivalent.
inline std::pair<Graph, Graph> gen_ring_pair(int k) {
    if (k < 3) throw ParamError("gen_ring_pair needs k >= 3");
    Graph big = gen_basic(Family::cycle, 2 * k);
    Graph two;
    two.node_count = 2 * k;
    for (int i = 0; i < k; ++i) {
        two.edges.emplace_back(i, (i + 1) % k);
        two.edges.emplace_back(k + i, k + (i + 1) % k);
    }
    two.attributes = Eigen::MatrixXd::Zero(2 * k, 0);
    two.finalize();
    return {std::move(big), std::move(two)};
}

}  // namespace awkernel
