#ifndef BFTC_SPECTRAL_HPP
#define BFTC_SPECTRAL_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <vector>

#include "bftc/pointcloud.hpp"

namespace bftc {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class Kernel {
    Gaussian,  // exp(-||x_i - x_j||^2 / (2 sigma^2))
    None,      // unit weight on every mutual edge (ablation)
};

// The n x p matrix of eigenvectors paired with their ascending eigenvalues.
struct Embedding {
    Eigen::MatrixXd vectors;
    Eigen::VectorXd eigenvalues;
};

// Root total variance about the centroid: sqrt((1/n) sum ||x_i - mean||^2).
// Errors on n < 2 or a coincident (sigma = 0) cloud.
double data_sigma(const PointCloud& pc);

// A'_ij = kernel weight iff the edge is mutual (j in N'(x_i) and i in N'(x_j)),
// else 0; zero diagonal; exactly symmetric by construction.
SparseMatrix build_adjacency(const PointCloud& pc,
                             const std::vector<std::vector<int>>& nprime,
                             double sigma, Kernel kernel = Kernel::Gaussian);

// Unnormalized Laplacian L = D - A. Errors on asymmetric input.
SparseMatrix laplacian(const SparseMatrix& adjacency);

// The p eigenpairs with smallest eigenvalues of a symmetric PSD matrix.
// Dense solver up to dense_cutoff rows; above it, shift-inverted subspace
// iteration with Rayleigh-Ritz extraction (deterministic seeded start).
// Each eigenvector's sign is fixed so its largest-magnitude entry is positive.
Embedding smallest_eigenvectors(const SparseMatrix& lap, int p,
                                int dense_cutoff = 1024);

// Lloyd iterations with k-means++ seeding, 10 restarts, iteration cap 300;
// empty clusters repaired by promoting the worst-fit point to a singleton.
// Deterministic under seed.
std::vector<int> kmeans(const Eigen::MatrixXd& rows, int p, RngSeed seed);

} // namespace bftc

#endif
