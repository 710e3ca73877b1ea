#ifndef BFTC_TOPO_FILTER_HPP
#define BFTC_TOPO_FILTER_HPP

#include <Eigen/Core>
#include <vector>

#include "bftc/homology.hpp"
#include "bftc/knn.hpp"

namespace bftc {

enum class SimilarityMetric {
    Cosine,   // default
    L2,       // ablation: 1 / (1 + ||u - v||_2), kept in [0,1]
};

// Per-dimension similarity of every directed k-NN edge.
// scores[m] is n x k: scores[m](i, s) pairs point i with its s-th neighbor.
struct SimilarityTensor {
    std::vector<Eigen::MatrixXd> scores;

    int dims() const { return static_cast<int>(scores.size()); }  // M+1
};

// Per-dimension lower cutoffs alpha_0..alpha_M, shared across all points.
struct Thresholds {
    std::vector<double> alphas;
};

// Cosine similarity of two Betti rows, clamped to [0,1].
// Zero-vector convention: both zero -> 1, exactly one zero -> 0.
double cosine_similarity(const Eigen::VectorXi& u, const Eigen::VectorXi& v);

// Scores every (i, j in N(x_i), m) triple; only neighbor pairs are evaluated.
SimilarityTensor edge_similarities(const NeighborGraph& g,
                                   const std::vector<BettiSequence>& seqs,
                                   SimilarityMetric metric = SimilarityMetric::Cosine);

// Lower box-plot whisker per dimension: Q1 - 1.5*(Q3 - Q1) over the pooled
// directed-edge scores, quartiles by linear interpolation, clamped at 0.
Thresholds whisker_thresholds(const SimilarityTensor& t);

// N'(x_i) = { j in N(x_i) : score(i,j,m) >= alpha_m for every m }.
std::vector<std::vector<int>> prune_neighborhoods(const NeighborGraph& g,
                                                  const SimilarityTensor& t,
                                                  const Thresholds& a);

} // namespace bftc

#endif
