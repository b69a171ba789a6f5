#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "awkernel/common.hpp"

// q-means landmark fitting (k-means++ init + Lloyd iterations) used to choose
// Nystrom landmarks unsupervised.
namespace awkernel {

struct KMeansResult {
    Eigen::MatrixXd centroids;     // q x p
    std::vector<int> assignments;  // per point, indexes centroids
    double inertia = 0.0;          // sum of squared distances to assigned centroid
    int iterations_run = 0;
    std::vector<double> inertia_history;  // one value per Lloyd iteration
};

namespace detail {

// Nearest centroid per point, ties broken by lowest centroid index.
// dist2(i,c) = ||x_i||^2 - 2 x_i.z_c + ||z_c||^2, computed blockwise.
inline void assign_points(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                          std::vector<int>& assignments, std::vector<double>& dist2,
                          int threads) {
    const long n = points.rows();
    const long q = centroids.rows();
    assignments.assign(static_cast<std::size_t>(n), 0);
    dist2.assign(static_cast<std::size_t>(n), 0.0);
    Eigen::VectorXd cnorm = centroids.rowwise().squaredNorm();
    const long block = 4096;
    const std::size_t blocks = static_cast<std::size_t>((n + block - 1) / block);
    parallel_for(blocks, threads, [&](std::size_t bi) {
        const long lo = static_cast<long>(bi) * block;
        const long hi = std::min(n, lo + block);
        Eigen::MatrixXd dots = points.middleRows(lo, hi - lo) * centroids.transpose();
        for (long i = lo; i < hi; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (long c = 0; c < q; ++c) {
                double d = cnorm(c) - 2.0 * dots(i - lo, c);
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<int>(c);
                }
            }
            assignments[static_cast<std::size_t>(i)] = best;
            dist2[static_cast<std::size_t>(i)] =
                std::max(0.0, best_d + points.row(i).squaredNorm());
        }
    });
}

}  // namespace detail

// Lloyd's algorithm with k-means++ initialization. Empty clusters are
// re-seeded with the point farthest from its centroid. If fewer distinct
// points than q exist, q is reduced with a warning.
inline KMeansResult kmeans(const Eigen::MatrixXd& points, int q, int max_iters = 100,
                           double tol = 1e-6, std::uint64_t seed = 0, int threads = 1) {
    const long n = points.rows();
    if (n == 0) throw ParamError("kmeans: no points");
    if (q < 1) throw ParamError("kmeans: q must be >= 1");

    auto rng = make_rng(seed, 0, 0, /*salt=*/0x6b6d6561);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // k-means++ seeding
    std::vector<long> chosen;
    chosen.push_back(static_cast<long>(rng() % static_cast<std::uint64_t>(n)));
    Eigen::VectorXd d2 =
        (points.rowwise() - points.row(chosen[0])).rowwise().squaredNorm();
    while (static_cast<int>(chosen.size()) < std::min<long>(q, n)) {
        double total = d2.sum();
        if (total <= 0.0) break;  // no distinct point left
        double r = unit(rng) * total;
        long pick = n - 1;
        double acc = 0.0;
        for (long i = 0; i < n; ++i) {
            acc += d2(i);
            if (acc >= r) {
                pick = i;
                break;
            }
        }
        chosen.push_back(pick);
        d2 = d2.cwiseMin((points.rowwise() - points.row(pick)).rowwise().squaredNorm());
    }
    int q_eff = static_cast<int>(chosen.size());
    if (q_eff < q)
        warn("kmeans: q reduced from " + std::to_string(q) + " to " + std::to_string(q_eff) +
             " (fewer distinct points)");

    KMeansResult res;
    res.centroids.resize(q_eff, points.cols());
    for (int c = 0; c < q_eff; ++c)
        res.centroids.row(c) = points.row(chosen[static_cast<std::size_t>(c)]);

    std::vector<double> dist2;
    for (int iter = 0; iter < max_iters; ++iter) {
        detail::assign_points(points, res.centroids, res.assignments, dist2, threads);

        // re-seed empty clusters with the farthest points, then reassign
        std::vector<long> count(static_cast<std::size_t>(q_eff), 0);
        for (int a : res.assignments) ++count[static_cast<std::size_t>(a)];
        std::vector<int> empties;
        for (int c = 0; c < q_eff; ++c)
            if (count[static_cast<std::size_t>(c)] == 0) empties.push_back(c);
        if (!empties.empty()) {
            std::vector<long> order(static_cast<std::size_t>(n));
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](long a, long b) {
                return dist2[static_cast<std::size_t>(a)] > dist2[static_cast<std::size_t>(b)];
            });
            for (std::size_t e = 0; e < empties.size() && e < order.size(); ++e)
                res.centroids.row(empties[e]) = points.row(order[e]);
            detail::assign_points(points, res.centroids, res.assignments, dist2, threads);
        }

        double inertia = std::accumulate(dist2.begin(), dist2.end(), 0.0);
        res.inertia_history.push_back(inertia);
        res.inertia = inertia;
        res.iterations_run = iter + 1;

        // update step
        Eigen::MatrixXd next = Eigen::MatrixXd::Zero(q_eff, points.cols());
        std::vector<long> sizes(static_cast<std::size_t>(q_eff), 0);
        for (long i = 0; i < n; ++i) {
            next.row(res.assignments[static_cast<std::size_t>(i)]) += points.row(i);
            ++sizes[static_cast<std::size_t>(res.assignments[static_cast<std::size_t>(i)])];
        }
        double shift = 0.0;
        for (int c = 0; c < q_eff; ++c) {
            if (sizes[static_cast<std::size_t>(c)] > 0)
                next.row(c) /= static_cast<double>(sizes[static_cast<std::size_t>(c)]);
            else
                next.row(c) = res.centroids.row(c);
            shift = std::max(shift, (next.row(c) - res.centroids.row(c)).norm());
        }
        res.centroids = next;
        if (shift < tol) break;
    }

    // final assignment/inertia against the converged centroids
    detail::assign_points(points, res.centroids, res.assignments, dist2, threads);
    double inertia = std::accumulate(dist2.begin(), dist2.end(), 0.0);
    res.inertia_history.push_back(inertia);
    res.inertia = inertia;
    return res;
}

// Uniform sample without replacement (original row order kept) when the pool
// exceeds cap; identity otherwise.
inline Eigen::MatrixXd subsample(const Eigen::MatrixXd& points, std::size_t cap,
                                 std::uint64_t seed) {
    const std::size_t n = static_cast<std::size_t>(points.rows());
    if (n <= cap) return points;
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    auto rng = make_rng(seed, 0, 0, /*salt=*/0x73756273);
    for (std::size_t i = 0; i < cap; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(cap);
    std::sort(idx.begin(), idx.end());
    Eigen::MatrixXd out(static_cast<long>(cap), points.cols());
    for (std::size_t i = 0; i < cap; ++i) out.row(static_cast<long>(i)) = points.row(static_cast<long>(idx[i]));
    return out;
}

}  // namespace awkernel
