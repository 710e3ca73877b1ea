#include "bftc/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "bftc/errors.hpp"
#include "bftc/parallel.hpp"

namespace bftc {

NeighborGraph build_knn(const PointCloud& pc, int k) {
    const Eigen::Index n = pc.size();
    if (k < 1) throw DataError("k must be >= 1");
    if (k >= n) throw DataError("k must be <= n-1 (k=" + std::to_string(k) +
                                ", n=" + std::to_string(n) + ")");

    NeighborGraph g;
    g.k = k;
    g.neighbors.resize(static_cast<std::size_t>(n));
    g.distances.resize(static_cast<std::size_t>(n));

    const Eigen::MatrixXd& x = pc.points;
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        std::vector<std::pair<double, int>> cand;
        cand.reserve(static_cast<std::size_t>(n) - 1);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (static_cast<std::size_t>(j) == i) continue;
            double dist = (x.row(static_cast<Eigen::Index>(i)) - x.row(j)).norm();
            cand.emplace_back(dist, static_cast<int>(j));
        }
        // ties broken by smaller index via pair ordering
        std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
        auto& nb = g.neighbors[i];
        auto& dd = g.distances[i];
        nb.resize(static_cast<std::size_t>(k));
        dd.resize(static_cast<std::size_t>(k));
        for (int s = 0; s < k; ++s) {
            nb[static_cast<std::size_t>(s)] = cand[static_cast<std::size_t>(s)].second;
            dd[static_cast<std::size_t>(s)] = cand[static_cast<std::size_t>(s)].first;
        }
    });
    return g;
}

double max_kth_distance(const NeighborGraph& g) {
    if (g.size() == 0 || g.k < 1) throw DataError("invalid neighbor graph");
    double max_dist = 0.0;
    for (const auto& dd : g.distances)
        max_dist = std::max(max_dist, dd.back());
    return max_dist;
}

ScaleGrid scale_grid(double max_scale, int length) {
    if (max_scale <= 0.0)
        throw DegenerateError("scale grid requires D > 0 (all points coincident?)");
    if (length < 1) throw DataError("filtration length must be >= 1");
    ScaleGrid grid;
    grid.max_scale = max_scale;
    grid.epsilons.resize(static_cast<std::size_t>(length));
    for (int l = 1; l <= length; ++l)
        grid.epsilons[static_cast<std::size_t>(l - 1)] =
            max_scale * (static_cast<double>(l) / static_cast<double>(length));
    return grid;
}

} // namespace bftc
