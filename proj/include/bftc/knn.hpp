#ifndef BFTC_KNN_HPP
#define BFTC_KNN_HPP

#include <vector>

#include "bftc/pointcloud.hpp"

namespace bftc {

// Exact k-nearest-neighbor lists under the Euclidean metric.
// neighbors[i] holds k indices sorted by ascending distance (ties broken by
// smaller index), self excluded; distances[i] matches element-wise.
struct NeighborGraph {
    int k = 0;
    std::vector<std::vector<int>> neighbors;
    std::vector<std::vector<double>> distances;

    std::size_t size() const { return neighbors.size(); }
};

// Ascending filtration scales eps_1 < ... < eps_L = D; zero excluded.
struct ScaleGrid {
    double max_scale = 0.0;            // D
    std::vector<double> epsilons;      // length L

    int length() const { return static_cast<int>(epsilons.size()); }
};

// Brute-force exact k-NN, O(n^2) distance evaluations, parallel over points.
// Requires 1 <= k <= n-1.
NeighborGraph build_knn(const PointCloud& pc, int k);

// D = max over points of the k-th neighbor distance.
double max_kth_distance(const NeighborGraph& g);

// eps_l = l * D / L for l = 1..L. Requires D > 0, L >= 1.
ScaleGrid scale_grid(double max_scale, int length);

} // namespace bftc

#endif
