#include "bftc/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "bftc/errors.hpp"

namespace bftc {

double data_sigma(const PointCloud& pc) {
    const Eigen::Index n = pc.size();
    if (n < 2) throw DataError("sigma needs at least two points");
    Eigen::RowVectorXd mean = pc.points.colwise().mean();
    double total = (pc.points.rowwise() - mean).squaredNorm() / static_cast<double>(n);
    double sigma = std::sqrt(total);
    if (sigma == 0.0) throw DegenerateError("degenerate cloud: all points coincident");
    return sigma;
}

SparseMatrix build_adjacency(const PointCloud& pc,
                             const std::vector<std::vector<int>>& nprime,
                             double sigma, Kernel kernel) {
    if (sigma <= 0.0) throw DataError("sigma must be positive");
    const int n = static_cast<int>(nprime.size());
    if (pc.size() != n) throw DataError("neighbor lists do not match point count");

    std::vector<std::vector<char>> is_neighbor(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        is_neighbor[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(n), 0);
        for (int j : nprime[static_cast<std::size_t>(i)])
            is_neighbor[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    }

    std::vector<Eigen::Triplet<double>> triplets;
    const double denom = 2.0 * sigma * sigma;
    for (int i = 0; i < n; ++i) {
        for (int j : nprime[static_cast<std::size_t>(i)]) {
            if (j <= i) continue;  // fill each unordered pair once, mirror below
            if (!is_neighbor[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) continue;
            double weight = 1.0;
            if (kernel == Kernel::Gaussian) {
                double d2 = (pc.points.row(i) - pc.points.row(j)).squaredNorm();
                weight = std::exp(-d2 / denom);
            }
            triplets.emplace_back(i, j, weight);
            triplets.emplace_back(j, i, weight);
        }
    }
    SparseMatrix adjacency(n, n);
    adjacency.setFromTriplets(triplets.begin(), triplets.end());
    adjacency.makeCompressed();
    return adjacency;
}

SparseMatrix laplacian(const SparseMatrix& adjacency) {
    SparseMatrix diff = SparseMatrix(adjacency.transpose()) - adjacency;
    if (diff.coeffs().size() > 0 && diff.coeffs().cwiseAbs().maxCoeff() != 0.0)
        throw DataError("adjacency matrix is not symmetric");

    const int n = static_cast<int>(adjacency.rows());
    Eigen::VectorXd degree = adjacency * Eigen::VectorXd::Ones(n);
    SparseMatrix lap(n, n);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(adjacency.nonZeros()) + static_cast<std::size_t>(n));
    for (int col = 0; col < adjacency.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(adjacency, col); it; ++it)
            triplets.emplace_back(static_cast<int>(it.row()), col, -it.value());
    for (int i = 0; i < n; ++i) triplets.emplace_back(i, i, degree(i));
    lap.setFromTriplets(triplets.begin(), triplets.end());
    lap.makeCompressed();
    return lap;
}

namespace {

void fix_signs(Eigen::MatrixXd& vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        Eigen::Index argmax = 0;
        vectors.col(c).cwiseAbs().maxCoeff(&argmax);
        if (vectors(argmax, c) < 0.0) vectors.col(c) = -vectors.col(c);
    }
}

Embedding dense_smallest(const SparseMatrix& lap, int p) {
    Eigen::MatrixXd dense = Eigen::MatrixXd(lap);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
    if (solver.info() != Eigen::Success)
        throw SolverError("dense symmetric eigensolver failed");
    Embedding e;
    e.eigenvalues = solver.eigenvalues().head(p);
    e.vectors = solver.eigenvectors().leftCols(p);
    fix_signs(e.vectors);
    return e;
}

// Shift-inverted subspace iteration: factor (L + mu I) once, iterate the
// inverse on a block wider than p, extract Ritz pairs of L in the subspace.
// Smallest eigenvalues of L map to the dominant ones of the inverse, so a
// handful of iterations resolves clustered near-zero spectra.
Embedding iterative_smallest(const SparseMatrix& lap, int p) {
    const int n = static_cast<int>(lap.rows());
    const int block = std::min(n, p + 8);
    const int max_iter = 200;

    double diag_scale = 0.0;
    for (int i = 0; i < n; ++i) diag_scale = std::max(diag_scale, std::abs(lap.coeff(i, i)));
    if (diag_scale == 0.0) diag_scale = 1.0;
    const double mu = 1e-8 * diag_scale;
    const double tol = 1e-9 * diag_scale;

    SparseMatrix shifted = lap;
    for (int i = 0; i < n; ++i) shifted.coeffRef(i, i) += mu;
    shifted.makeCompressed();
    Eigen::SimplicialLDLT<SparseMatrix> factor(shifted);
    if (factor.info() != Eigen::Success)
        throw SolverError("sparse factorization of shifted Laplacian failed");

    std::mt19937_64 rng(0x5eedabcdu);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd x(n, block);
    for (int j = 0; j < block; ++j)
        for (int i = 0; i < n; ++i) x(i, j) = gauss(rng);

    Eigen::MatrixXd basis = Eigen::HouseholderQR<Eigen::MatrixXd>(x).householderQ() *
                            Eigen::MatrixXd::Identity(n, block);

    Eigen::VectorXd ritz_values(block);
    for (int iter = 0; iter < max_iter; ++iter) {
        Eigen::MatrixXd y = factor.solve(basis);
        basis = Eigen::HouseholderQR<Eigen::MatrixXd>(y).householderQ() *
                Eigen::MatrixXd::Identity(n, block);

        // Rayleigh-Ritz in the original operator
        Eigen::MatrixXd lap_basis = lap * basis;
        Eigen::MatrixXd small = basis.transpose() * lap_basis;
        small = 0.5 * (small + small.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(small);
        if (ritz.info() != Eigen::Success)
            throw SolverError("Rayleigh-Ritz eigensolver failed");
        basis = basis * ritz.eigenvectors();
        ritz_values = ritz.eigenvalues();

        lap_basis = lap * basis.leftCols(p);
        double worst = 0.0;
        for (int j = 0; j < p; ++j) {
            double residual = (lap_basis.col(j) - ritz_values(j) * basis.col(j)).norm();
            worst = std::max(worst, residual);
        }
        if (worst <= tol) {
            Embedding e;
            e.eigenvalues = ritz_values.head(p);
            e.vectors = basis.leftCols(p);
            fix_signs(e.vectors);
            return e;
        }
    }
    throw SolverError("subspace iteration did not converge");
}

} // namespace

Embedding smallest_eigenvectors(const SparseMatrix& lap, int p, int dense_cutoff) {
    const int n = static_cast<int>(lap.rows());
    if (lap.cols() != n) throw DataError("Laplacian must be square");
    if (p < 1 || p > n) throw DataError("cluster count p out of range [1, n]");
    if (n <= dense_cutoff || p + 8 >= n) return dense_smallest(lap, p);
    return iterative_smallest(lap, p);
}

namespace {

double squared_distance(const Eigen::MatrixXd& rows, int i, const Eigen::RowVectorXd& center) {
    return (rows.row(i) - center).squaredNorm();
}

std::vector<int> plus_plus_init(const Eigen::MatrixXd& rows, int p, std::mt19937_64& rng) {
    const int n = static_cast<int>(rows.rows());
    std::vector<int> centers;
    centers.reserve(static_cast<std::size_t>(p));
    std::uniform_int_distribution<int> first(0, n - 1);
    centers.push_back(first(rng));

    std::vector<double> best_d2(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        best_d2[static_cast<std::size_t>(i)] = squared_distance(rows, i, rows.row(centers[0]));

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    while (static_cast<int>(centers.size()) < p) {
        double total = 0.0;
        for (double d2 : best_d2) total += d2;
        int chosen;
        if (total <= 0.0) {
            chosen = first(rng);  // all points coincide with chosen centers
        } else {
            double r = unit(rng) * total;
            double cumulative = 0.0;
            chosen = n - 1;
            for (int i = 0; i < n; ++i) {
                cumulative += best_d2[static_cast<std::size_t>(i)];
                if (r <= cumulative) {
                    chosen = i;
                    break;
                }
            }
        }
        centers.push_back(chosen);
        for (int i = 0; i < n; ++i)
            best_d2[static_cast<std::size_t>(i)] =
                std::min(best_d2[static_cast<std::size_t>(i)],
                         squared_distance(rows, i, rows.row(chosen)));
    }
    return centers;
}

struct LloydResult {
    std::vector<int> labels;
    double objective = std::numeric_limits<double>::infinity();
};

LloydResult lloyd(const Eigen::MatrixXd& rows, int p, std::mt19937_64& rng) {
    const int n = static_cast<int>(rows.rows());
    const int d = static_cast<int>(rows.cols());
    const int max_iter = 300;

    std::vector<int> seeds = plus_plus_init(rows, p, rng);
    Eigen::MatrixXd centers(p, d);
    for (int c = 0; c < p; ++c) centers.row(c) = rows.row(seeds[static_cast<std::size_t>(c)]);

    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    for (int iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d2 = squared_distance(rows, i, centers.row(0));
            for (int c = 1; c < p; ++c) {
                double d2 = squared_distance(rows, i, centers.row(c));
                if (d2 < best_d2) {
                    best_d2 = d2;
                    best = c;
                }
            }
            if (labels[static_cast<std::size_t>(i)] != best) {
                labels[static_cast<std::size_t>(i)] = best;
                changed = true;
            }
        }

        // repair empty clusters with the globally worst-fit point
        std::vector<int> counts(static_cast<std::size_t>(p), 0);
        for (int l : labels) ++counts[static_cast<std::size_t>(l)];
        for (int c = 0; c < p; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) continue;
            int worst = -1;
            double worst_d2 = -1.0;
            for (int i = 0; i < n; ++i) {
                int l = labels[static_cast<std::size_t>(i)];
                if (counts[static_cast<std::size_t>(l)] <= 1) continue;
                double d2 = squared_distance(rows, i, centers.row(l));
                if (d2 > worst_d2) {
                    worst_d2 = d2;
                    worst = i;
                }
            }
            if (worst < 0) break;
            --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(worst)])];
            labels[static_cast<std::size_t>(worst)] = c;
            counts[static_cast<std::size_t>(c)] = 1;
            changed = true;
        }

        for (int c = 0; c < p; ++c) {
            if (counts[static_cast<std::size_t>(c)] == 0) continue;
            Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(d);
            for (int i = 0; i < n; ++i)
                if (labels[static_cast<std::size_t>(i)] == c) sum += rows.row(i);
            centers.row(c) = sum / counts[static_cast<std::size_t>(c)];
        }
        if (!changed) break;
    }

    LloydResult result;
    result.labels = std::move(labels);
    result.objective = 0.0;
    for (int i = 0; i < n; ++i)
        result.objective +=
            squared_distance(rows, i, centers.row(result.labels[static_cast<std::size_t>(i)]));
    return result;
}

} // namespace

std::vector<int> kmeans(const Eigen::MatrixXd& rows, int p, RngSeed seed) {
    const int n = static_cast<int>(rows.rows());
    if (p < 1) throw DataError("cluster count must be >= 1");
    if (p > n) throw DataError("cluster count exceeds point count");
    if (p == 1) return std::vector<int>(static_cast<std::size_t>(n), 0);

    const int restarts = 10;
    std::mt19937_64 rng(seed);
    LloydResult best;
    for (int r = 0; r < restarts; ++r) {
        LloydResult candidate = lloyd(rows, p, rng);
        if (candidate.objective < best.objective) best = std::move(candidate);
    }
    return best.labels;
}

} // namespace bftc
