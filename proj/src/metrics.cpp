#include "bftc/metrics.hpp"

#include <cmath>
#include <unordered_map>

#include "bftc/errors.hpp"

namespace bftc {

namespace {

std::vector<int> dense_relabel(const std::vector<int>& labels, std::size_t& classes) {
    std::unordered_map<int, int> mapping;
    std::vector<int> out;
    out.reserve(labels.size());
    for (int l : labels) {
        auto [it, inserted] = mapping.emplace(l, static_cast<int>(mapping.size()));
        out.push_back(it->second);
    }
    classes = mapping.size();
    return out;
}

double comb2(std::int64_t n) { return 0.5 * static_cast<double>(n) * static_cast<double>(n - 1); }

void check_inputs(const std::vector<int>& truth, const std::vector<int>& pred) {
    if (truth.size() != pred.size()) throw DataError("label vectors differ in length");
    if (truth.size() < 2) throw DataError("metrics need at least two points");
}

} // namespace

ContingencyTable ContingencyTable::from_labels(const std::vector<int>& truth,
                                               const std::vector<int>& pred) {
    check_inputs(truth, pred);
    std::size_t rows = 0, cols = 0;
    std::vector<int> t = dense_relabel(truth, rows);
    std::vector<int> p = dense_relabel(pred, cols);

    ContingencyTable table;
    table.counts.assign(rows, std::vector<std::int64_t>(cols, 0));
    table.row_sums.assign(rows, 0);
    table.col_sums.assign(cols, 0);
    table.total = static_cast<std::int64_t>(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        ++table.counts[static_cast<std::size_t>(t[i])][static_cast<std::size_t>(p[i])];
        ++table.row_sums[static_cast<std::size_t>(t[i])];
        ++table.col_sums[static_cast<std::size_t>(p[i])];
    }
    return table;
}

double rand_index(const std::vector<int>& truth, const std::vector<int>& pred) {
    ContingencyTable table = ContingencyTable::from_labels(truth, pred);
    double same_both = 0.0;
    for (const auto& row : table.counts)
        for (std::int64_t c : row) same_both += comb2(c);
    double same_truth = 0.0;
    for (std::int64_t a : table.row_sums) same_truth += comb2(a);
    double same_pred = 0.0;
    for (std::int64_t b : table.col_sums) same_pred += comb2(b);
    double all_pairs = comb2(table.total);
    double agreements = all_pairs + 2.0 * same_both - same_truth - same_pred;
    return agreements / all_pairs;
}

double adjusted_rand_index(const std::vector<int>& truth, const std::vector<int>& pred) {
    ContingencyTable table = ContingencyTable::from_labels(truth, pred);
    double same_both = 0.0;
    for (const auto& row : table.counts)
        for (std::int64_t c : row) same_both += comb2(c);
    double same_truth = 0.0;
    for (std::int64_t a : table.row_sums) same_truth += comb2(a);
    double same_pred = 0.0;
    for (std::int64_t b : table.col_sums) same_pred += comb2(b);

    double expected = same_truth * same_pred / comb2(table.total);
    double max_index = 0.5 * (same_truth + same_pred);
    if (max_index == expected) return 1.0;  // both partitions trivial
    return (same_both - expected) / (max_index - expected);
}

double nmi(const std::vector<int>& truth, const std::vector<int>& pred) {
    ContingencyTable table = ContingencyTable::from_labels(truth, pred);
    const double n = static_cast<double>(table.total);

    double h_truth = 0.0;
    for (std::int64_t a : table.row_sums)
        if (a > 0) h_truth -= (a / n) * std::log(a / n);
    double h_pred = 0.0;
    for (std::int64_t b : table.col_sums)
        if (b > 0) h_pred -= (b / n) * std::log(b / n);

    if (h_truth == 0.0 && h_pred == 0.0) return 1.0;
    if (h_truth == 0.0 || h_pred == 0.0) return 0.0;

    double mutual = 0.0;
    for (std::size_t i = 0; i < table.counts.size(); ++i) {
        for (std::size_t j = 0; j < table.counts[i].size(); ++j) {
            std::int64_t c = table.counts[i][j];
            if (c == 0) continue;
            double joint = c / n;
            mutual += joint * std::log(joint * n * n /
                                       (static_cast<double>(table.row_sums[i]) *
                                        static_cast<double>(table.col_sums[j])));
        }
    }
    return mutual / std::sqrt(h_truth * h_pred);
}

} // namespace bftc
