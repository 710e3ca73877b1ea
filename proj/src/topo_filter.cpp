#include "bftc/topo_filter.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bftc/errors.hpp"
#include "bftc/parallel.hpp"

namespace bftc {

double cosine_similarity(const Eigen::VectorXi& u, const Eigen::VectorXi& v) {
    if (u.size() != v.size()) throw DataError("Betti row length mismatch");
    const bool u_zero = u.isZero();
    const bool v_zero = v.isZero();
    if (u_zero && v_zero) return 1.0;   // identical trivial topology
    if (u_zero || v_zero) return 0.0;
    double dot = u.cast<double>().dot(v.cast<double>());
    double denom = u.cast<double>().norm() * v.cast<double>().norm();
    return std::clamp(dot / denom, 0.0, 1.0);
}

namespace {

double l2_similarity(const Eigen::VectorXi& u, const Eigen::VectorXi& v) {
    if (u.size() != v.size()) throw DataError("Betti row length mismatch");
    double dist = (u - v).cast<double>().norm();
    return 1.0 / (1.0 + dist);
}

} // namespace

SimilarityTensor edge_similarities(const NeighborGraph& g,
                                   const std::vector<BettiSequence>& seqs,
                                   SimilarityMetric metric) {
    if (seqs.size() != g.size()) throw DataError("missing Betti sequence for some point");
    const int dims = static_cast<int>(seqs.front().values.rows());
    const int n = static_cast<int>(g.size());

    SimilarityTensor t;
    t.scores.assign(static_cast<std::size_t>(dims), Eigen::MatrixXd(n, g.k));
    parallel_for(g.size(), [&](std::size_t i) {
        const auto& nb = g.neighbors[i];
        for (std::size_t s = 0; s < nb.size(); ++s) {
            const auto& other = seqs[static_cast<std::size_t>(nb[s])];
            if (other.values.rows() != dims || other.values.cols() != seqs[i].values.cols())
                throw DataError("Betti sequence shape mismatch");
            for (int m = 0; m < dims; ++m) {
                Eigen::VectorXi u = seqs[i].row(m);
                Eigen::VectorXi v = other.row(m);
                double score = metric == SimilarityMetric::Cosine ? cosine_similarity(u, v)
                                                                  : l2_similarity(u, v);
                t.scores[static_cast<std::size_t>(m)](static_cast<int>(i),
                                                      static_cast<int>(s)) = score;
            }
        }
    });
    return t;
}

namespace {

// Quantile by linear interpolation between order statistics (inclusive scheme).
double quantile_sorted(const std::vector<double>& sorted, double q) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    double h = q * static_cast<double>(n - 1);
    std::size_t lower = static_cast<std::size_t>(h);
    if (lower >= n - 1) return sorted[n - 1];
    double frac = h - static_cast<double>(lower);
    return sorted[lower] + frac * (sorted[lower + 1] - sorted[lower]);
}

} // namespace

Thresholds whisker_thresholds(const SimilarityTensor& t) {
    Thresholds out;
    out.alphas.reserve(t.scores.size());
    for (const auto& matrix : t.scores) {
        if (matrix.size() == 0) throw DataError("empty score pool for some dimension");
        std::vector<double> pool(matrix.data(), matrix.data() + matrix.size());
        std::sort(pool.begin(), pool.end());
        double q1 = quantile_sorted(pool, 0.25);
        double q3 = quantile_sorted(pool, 0.75);
        double alpha = q1 - 1.5 * (q3 - q1);
        out.alphas.push_back(std::max(0.0, alpha));
    }
    return out;
}

std::vector<std::vector<int>> prune_neighborhoods(const NeighborGraph& g,
                                                  const SimilarityTensor& t,
                                                  const Thresholds& a) {
    if (a.alphas.size() != t.scores.size())
        throw DataError("threshold count does not match similarity dimensions");
    std::vector<std::vector<int>> refined(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto& nb = g.neighbors[i];
        for (std::size_t s = 0; s < nb.size(); ++s) {
            bool keep = true;
            for (std::size_t m = 0; m < t.scores.size(); ++m) {
                if (t.scores[m](static_cast<int>(i), static_cast<int>(s)) < a.alphas[m]) {
                    keep = false;
                    break;
                }
            }
            if (keep) refined[i].push_back(nb[s]);
        }
    }
    return refined;
}

} // namespace bftc
