#ifndef BFTC_HOMOLOGY_HPP
#define BFTC_HOMOLOGY_HPP

#include <Eigen/Core>
#include <limits>
#include <vector>

#include "bftc/knn.hpp"
#include "bftc/pointcloud.hpp"

namespace bftc {

// A simplex of the local Vietoris-Rips complex. Vertices are strictly
// ascending local indices; the filtration value is the max pairwise
// distance among the vertices (0 for a single vertex).
struct Simplex {
    std::vector<int> vertices;
    double filtration_value = 0.0;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

// Simplices sorted by (filtration_value, dim, lexicographic vertices), which
// realizes the nesting VR(eps_1) <= ... <= VR(eps_L) and keeps every face
// before anything it bounds.
struct Filtration {
    std::vector<Simplex> simplices;
    int max_dim = 0;
};

constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

struct PersistenceInterval {
    double birth = 0.0;
    double death = kInfiniteDeath;

    bool contains(double eps) const { return birth <= eps && eps < death; }
};

// Persistence intervals per homology dimension 0..M. Zero-length intervals
// (birth == death) are retained; the half-open containment test keeps them
// from ever contributing to a Betti count.
struct Barcode {
    std::vector<std::vector<PersistenceInterval>> intervals;  // index = dimension

    int max_dim() const { return static_cast<int>(intervals.size()) - 1; }
};

// (M+1) x L matrix: row m is the Betti sequence of one point for dimension m.
struct BettiSequence {
    Eigen::MatrixXi values;

    Eigen::VectorXi row(int m) const { return values.row(m); }
};

// {x_i} union N(x_i): k+1 points with x_i first, as rows.
Eigen::MatrixXd local_point_set(const PointCloud& pc, const NeighborGraph& g, int i);

// Flag/clique expansion of the eps = max_scale proximity graph, keeping
// simplices with at most max_dim+1 vertices.
Filtration build_vr_filtration(const Eigen::MatrixXd& points, int max_dim,
                               double max_scale);

// Boundary-matrix column reduction over GF(2) in filtration order. Requires
// f.max_dim >= max_hom_dim + 1 so that Betti_M accounts for rank of the
// (M+1)-boundary.
Barcode compute_barcode(const Filtration& f, int max_hom_dim);

// Count of dimension-m intervals with birth <= eps < death.
int betti_at_scale(const Barcode& b, int m, double eps);

// One (M+1) x L Betti sequence per point: local VR filtration capped at the
// global D, Betti counts sampled at every grid scale. Parallel over points.
std::vector<BettiSequence> betti_sequences(const PointCloud& pc, const NeighborGraph& g,
                                           const ScaleGrid& grid, int max_hom_dim);

// Per-point barcodes (same construction as betti_sequences), for debug dumps.
std::vector<Barcode> local_barcodes(const PointCloud& pc, const NeighborGraph& g,
                                    const ScaleGrid& grid, int max_hom_dim);

} // namespace bftc

#endif
