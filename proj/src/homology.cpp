#include "bftc/homology.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>

#include "bftc/errors.hpp"
#include "bftc/parallel.hpp"

namespace bftc {

Eigen::MatrixXd local_point_set(const PointCloud& pc, const NeighborGraph& g, int i) {
    if (i < 0 || static_cast<std::size_t>(i) >= g.size())
        throw DataError("point index out of range: " + std::to_string(i));
    const auto& nb = g.neighbors[static_cast<std::size_t>(i)];
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(nb.size()) + 1, pc.dim());
    pts.row(0) = pc.points.row(i);
    for (std::size_t s = 0; s < nb.size(); ++s)
        pts.row(static_cast<Eigen::Index>(s) + 1) = pc.points.row(nb[s]);
    return pts;
}

namespace {

// Grows cliques of the proximity graph one vertex at a time; candidates are
// kept sorted and above the current max vertex so each clique is emitted once.
void expand_cliques(std::vector<int>& simplex, double value,
                    const std::vector<int>& candidates,
                    const std::vector<std::vector<int>>& nbrs,
                    const Eigen::MatrixXd& dist, int max_dim,
                    std::vector<Simplex>& out) {
    out.push_back({simplex, value});
    if (static_cast<int>(simplex.size()) > max_dim) return;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        int v = candidates[c];
        double extended_value = value;
        for (int u : simplex) extended_value = std::max(extended_value, dist(u, v));
        std::vector<int> next_candidates;
        next_candidates.reserve(candidates.size() - c);
        std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(c) + 1,
                              candidates.end(), nbrs[static_cast<std::size_t>(v)].begin(),
                              nbrs[static_cast<std::size_t>(v)].end(),
                              std::back_inserter(next_candidates));
        simplex.push_back(v);
        expand_cliques(simplex, extended_value, next_candidates, nbrs, dist, max_dim, out);
        simplex.pop_back();
    }
}

bool filtration_order(const Simplex& a, const Simplex& b) {
    if (a.filtration_value != b.filtration_value)
        return a.filtration_value < b.filtration_value;
    if (a.vertices.size() != b.vertices.size())
        return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
}

} // namespace

Filtration build_vr_filtration(const Eigen::MatrixXd& points, int max_dim,
                               double max_scale) {
    const int n = static_cast<int>(points.rows());
    if (n < 1) throw DataError("filtration needs at least one point");
    if (max_dim < 0) throw DataError("max_dim must be >= 0");
    if (max_scale <= 0.0) throw DataError("max_scale must be positive");

    Eigen::MatrixXd dist(n, n);
    for (int i = 0; i < n; ++i) {
        dist(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) {
            double d = (points.row(i) - points.row(j)).norm();
            dist(i, j) = d;
            dist(j, i) = d;
        }
    }

    std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (j != i && dist(i, j) <= max_scale)
                nbrs[static_cast<std::size_t>(i)].push_back(j);

    Filtration f;
    f.max_dim = max_dim;
    std::vector<int> simplex;
    for (int v = 0; v < n; ++v) {
        simplex.assign(1, v);
        std::vector<int> candidates;
        for (int u : nbrs[static_cast<std::size_t>(v)])
            if (u > v) candidates.push_back(u);
        expand_cliques(simplex, 0.0, candidates, nbrs, dist, max_dim, f.simplices);
    }
    std::sort(f.simplices.begin(), f.simplices.end(), filtration_order);
    return f;
}

namespace {

struct VertexVectorHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a
        for (int x : v) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// GF(2) column addition: symmetric difference of sorted index lists.
std::vector<int> add_columns(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
}

} // namespace

Barcode compute_barcode(const Filtration& f, int max_hom_dim) {
    if (max_hom_dim < 0) throw DataError("max_hom_dim must be >= 0");
    if (f.max_dim < max_hom_dim + 1)
        throw DataError("filtration max_dim must be >= max_hom_dim + 1");

    const int count = static_cast<int>(f.simplices.size());
    std::unordered_map<std::vector<int>, int, VertexVectorHash> index_of;
    index_of.reserve(static_cast<std::size_t>(count) * 2);
    for (int j = 0; j < count; ++j) {
        auto [it, inserted] = index_of.emplace(f.simplices[static_cast<std::size_t>(j)].vertices, j);
        if (!inserted) throw DataError("duplicate simplex in filtration");
    }

    // boundary columns in filtration order, reduced so each pivot row is
    // owned by at most one column
    std::vector<std::vector<int>> reduced(static_cast<std::size_t>(count));
    std::vector<int> pivot_owner(static_cast<std::size_t>(count), -1);
    std::vector<char> is_creator(static_cast<std::size_t>(count), 0);
    std::vector<int> killed_by(static_cast<std::size_t>(count), -1);

    std::vector<int> face;
    for (int j = 0; j < count; ++j) {
        const Simplex& s = f.simplices[static_cast<std::size_t>(j)];
        std::vector<int> column;
        if (s.dim() > 0) {
            column.reserve(s.vertices.size());
            for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
                face.clear();
                for (std::size_t v = 0; v < s.vertices.size(); ++v)
                    if (v != drop) face.push_back(s.vertices[v]);
                auto it = index_of.find(face);
                if (it == index_of.end() || it->second > j)
                    throw DataError("filtration is not face-closed");
                column.push_back(it->second);
            }
            std::sort(column.begin(), column.end());
        }
        while (!column.empty()) {
            int low = column.back();
            int owner = pivot_owner[static_cast<std::size_t>(low)];
            if (owner < 0) break;
            column = add_columns(column, reduced[static_cast<std::size_t>(owner)]);
        }
        if (column.empty()) {
            is_creator[static_cast<std::size_t>(j)] = 1;
        } else {
            int low = column.back();
            pivot_owner[static_cast<std::size_t>(low)] = j;
            killed_by[static_cast<std::size_t>(low)] = j;
            reduced[static_cast<std::size_t>(j)] = std::move(column);
        }
    }

    Barcode barcode;
    barcode.intervals.resize(static_cast<std::size_t>(max_hom_dim) + 1);
    for (int i = 0; i < count; ++i) {
        if (!is_creator[static_cast<std::size_t>(i)]) continue;
        const Simplex& s = f.simplices[static_cast<std::size_t>(i)];
        if (s.dim() > max_hom_dim) continue;
        PersistenceInterval interval;
        interval.birth = s.filtration_value;
        int killer = killed_by[static_cast<std::size_t>(i)];
        interval.death = killer >= 0
                             ? f.simplices[static_cast<std::size_t>(killer)].filtration_value
                             : kInfiniteDeath;
        barcode.intervals[static_cast<std::size_t>(s.dim())].push_back(interval);
    }
    return barcode;
}

int betti_at_scale(const Barcode& b, int m, double eps) {
    if (m < 0 || m > b.max_dim())
        throw DataError("homology dimension out of range: " + std::to_string(m));
    int count = 0;
    for (const auto& interval : b.intervals[static_cast<std::size_t>(m)])
        if (interval.contains(eps)) ++count;
    return count;
}

namespace {

BettiSequence sequence_from_barcode(const Barcode& barcode, const ScaleGrid& grid,
                                    int max_hom_dim) {
    BettiSequence seq;
    seq.values.resize(max_hom_dim + 1, grid.length());
    for (int m = 0; m <= max_hom_dim; ++m)
        for (int l = 0; l < grid.length(); ++l)
            seq.values(m, l) =
                betti_at_scale(barcode, m, grid.epsilons[static_cast<std::size_t>(l)]);
    return seq;
}

} // namespace

std::vector<BettiSequence> betti_sequences(const PointCloud& pc, const NeighborGraph& g,
                                           const ScaleGrid& grid, int max_hom_dim) {
    if (max_hom_dim < 0) throw DataError("max_hom_dim must be >= 0");
    std::vector<BettiSequence> out(g.size());
    parallel_for(g.size(), [&](std::size_t i) {
        Eigen::MatrixXd pts = local_point_set(pc, g, static_cast<int>(i));
        Filtration f = build_vr_filtration(pts, max_hom_dim + 1, grid.max_scale);
        Barcode barcode = compute_barcode(f, max_hom_dim);
        out[i] = sequence_from_barcode(barcode, grid, max_hom_dim);
    });
    return out;
}

std::vector<Barcode> local_barcodes(const PointCloud& pc, const NeighborGraph& g,
                                    const ScaleGrid& grid, int max_hom_dim) {
    if (max_hom_dim < 0) throw DataError("max_hom_dim must be >= 0");
    std::vector<Barcode> out(g.size());
    parallel_for(g.size(), [&](std::size_t i) {
        Eigen::MatrixXd pts = local_point_set(pc, g, static_cast<int>(i));
        Filtration f = build_vr_filtration(pts, max_hom_dim + 1, grid.max_scale);
        out[i] = compute_barcode(f, max_hom_dim);
    });
    return out;
}

} // namespace bftc
