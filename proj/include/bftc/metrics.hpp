#ifndef BFTC_METRICS_HPP
#define BFTC_METRICS_HPP

#include <cstdint>
#include <vector>

namespace bftc {

// Joint label-count table with marginals; the shared substrate for RI/ARI/NMI.
struct ContingencyTable {
    std::vector<std::vector<std::int64_t>> counts;  // c_true x c_pred
    std::vector<std::int64_t> row_sums;
    std::vector<std::int64_t> col_sums;
    std::int64_t total = 0;

    static ContingencyTable from_labels(const std::vector<int>& truth,
                                        const std::vector<int>& pred);
};

// Fraction of point pairs on which the two partitions agree.
double rand_index(const std::vector<int>& truth, const std::vector<int>& pred);

// Chance-adjusted pair agreement; 1.0 when both partitions are trivial.
double adjusted_rand_index(const std::vector<int>& truth, const std::vector<int>& pred);

// Mutual information normalized by the geometric mean of the entropies
// (natural log). Both entropies zero -> 1, exactly one zero -> 0.
double nmi(const std::vector<int>& truth, const std::vector<int>& pred);

} // namespace bftc

#endif
