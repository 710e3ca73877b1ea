#include "bftc/pointcloud.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "bftc/errors.hpp"

namespace bftc {

void PointCloud::validate() const {
    if (points.rows() < 1 || points.cols() < 1)
        throw DataError("point cloud '" + name + "' is empty");
    if (!points.allFinite())
        throw DataError("point cloud '" + name + "' contains non-finite coordinates");
    if (labels) {
        if (static_cast<Eigen::Index>(labels->size()) != points.rows())
            throw DataError("label count does not match point count");
        std::set<int> values(labels->begin(), labels->end());
        if (*values.begin() < 0)
            throw DataError("negative label value");
        if (*values.rbegin() != static_cast<int>(values.size()) - 1)
            throw DataError("label values are not a dense range {0..c-1}");
    }
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::Vector3d sample_shape_point(const Shape& shape, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    switch (shape.kind) {
        case Shape::Kind::Torus: {
            double theta = kTwoPi * unit(rng);
            double phi = kTwoPi * unit(rng);
            double ring = shape.a + shape.b * std::cos(phi);
            return {ring * std::cos(theta), ring * std::sin(theta), shape.b * std::sin(phi)};
        }
        case Shape::Kind::Sphere: {
            std::normal_distribution<double> gauss(0.0, 1.0);
            Eigen::Vector3d v;
            do {
                v = {gauss(rng), gauss(rng), gauss(rng)};
            } while (v.norm() < 1e-12);
            return shape.a * v.normalized();
        }
        case Shape::Kind::Circle: {
            double theta = kTwoPi * unit(rng);
            return {shape.a * std::cos(theta), shape.a * std::sin(theta), 0.0};
        }
        case Shape::Kind::Segment: {
            double t = unit(rng);
            return {shape.a * (t - 0.5), 0.0, 0.0};
        }
    }
    throw DataError("unknown shape kind");
}

void check_shape(const Shape& shape, int n) {
    if (n < 1) throw DataError("point count must be >= 1");
    if (shape.a <= 0.0) throw DataError("shape radius/length must be positive");
    if (shape.kind == Shape::Kind::Torus) {
        if (shape.b <= 0.0) throw DataError("torus tube radius must be positive");
        if (shape.a <= shape.b) throw DataError("torus requires major radius > tube radius");
    }
}

} // namespace

PointCloud gen_shape(const Shape& shape, int n, const Eigen::Vector3d& center,
                     const Eigen::Matrix3d& orientation, RngSeed seed) {
    check_shape(shape, n);
    std::mt19937_64 rng(seed);
    PointCloud pc;
    pc.points.resize(n, 3);
    for (int i = 0; i < n; ++i) {
        Eigen::Vector3d p = orientation * sample_shape_point(shape, rng) + center;
        pc.points.row(i) = p.transpose();
    }
    return pc;
}

namespace {

void append_component(PointCloud& pc, const PointCloud& part, int label) {
    Eigen::Index old_n = pc.points.rows();
    if (old_n == 0) {
        pc.points = part.points;
    } else {
        Eigen::MatrixXd merged(old_n + part.points.rows(), part.points.cols());
        merged.topRows(old_n) = pc.points;
        merged.bottomRows(part.points.rows()) = part.points;
        pc.points = std::move(merged);
    }
    if (!pc.labels) pc.labels.emplace();
    pc.labels->insert(pc.labels->end(), static_cast<std::size_t>(part.points.rows()), label);
}

Eigen::Matrix3d rot_x_90() {
    return Eigen::AngleAxisd(std::numbers::pi / 2.0, Eigen::Vector3d::UnitX())
        .toRotationMatrix();
}

} // namespace

// Component placement (all gaps >= 1 tube/radius unit):
//   linked_tori: tori R=2, r=0.5; torus 0 in the xy-plane at the origin,
//     torus 1 rotated 90 deg about x and shifted by (R,0,0) so each passes
//     through the other's hole (Hopf-link arrangement; tube gap = R - 2r = 1).
//   torus_sphere_line: torus R=2, r=0.5 at origin; unit sphere at (5.5,0,0);
//     length-4 segment along z at (0,5.5,0).
//   two_sphere_two_circle: unit spheres at (0,0,0) and (4,0,0); unit circles
//     in the xy-plane at (0,4,0) and (4,4,0).
PointCloud gen_benchmark(const std::string& name, RngSeed seed) {
    PointCloud pc;
    pc.name = name;
    if (name == "linked_tori") {
        Shape torus = Shape::torus(2.0, 0.5);
        append_component(pc, gen_shape(torus, 2000, {0, 0, 0}, seed), 0);
        append_component(pc, gen_shape(torus, 2000, {2.0, 0, 0}, rot_x_90(), seed + 1), 1);
    } else if (name == "torus_sphere_line") {
        append_component(pc, gen_shape(Shape::torus(2.0, 0.5), 2000, {0, 0, 0}, seed), 0);
        append_component(pc, gen_shape(Shape::sphere(1.0), 1000, {5.5, 0, 0}, seed + 1), 1);
        Eigen::Matrix3d along_z =
            Eigen::AngleAxisd(std::numbers::pi / 2.0, Eigen::Vector3d::UnitY())
                .toRotationMatrix();
        append_component(pc, gen_shape(Shape::segment(4.0), 300, {0, 5.5, 0}, along_z, seed + 2), 2);
    } else if (name == "two_sphere_two_circle") {
        append_component(pc, gen_shape(Shape::sphere(1.0), 1000, {0, 0, 0}, seed), 0);
        append_component(pc, gen_shape(Shape::sphere(1.0), 1000, {4.0, 0, 0}, seed + 1), 1);
        append_component(pc, gen_shape(Shape::circle(1.0), 500, {0, 4.0, 0}, seed + 2), 2);
        append_component(pc, gen_shape(Shape::circle(1.0), 500, {4.0, 4.0, 0}, seed + 3), 3);
    } else {
        std::string known;
        for (const auto& b : benchmark_names()) known += (known.empty() ? "" : ", ") + b;
        throw DataError("unknown benchmark '" + name + "' (known: " + known + ")");
    }
    return pc;
}

std::vector<std::string> benchmark_names() {
    return {"linked_tori", "torus_sphere_line", "two_sphere_two_circle"};
}

PointCloud add_gaussian_noise(const PointCloud& pc, double rho, RngSeed seed) {
    if (rho < 0.0) throw DataError("noise standard deviation must be >= 0");
    PointCloud out = pc;
    if (rho == 0.0) return out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, rho);
    for (Eigen::Index i = 0; i < out.points.rows(); ++i)
        for (Eigen::Index j = 0; j < out.points.cols(); ++j)
            out.points(i, j) += gauss(rng);
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

bool parse_double(const std::string& s, double& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

} // namespace

PointCloud load_csv(const std::string& path, const std::optional<std::string>& label_column) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open CSV file: " + path);

    std::string line;
    if (!std::getline(file, line)) throw DataError(path + ": no data rows");
    std::vector<std::string> header = split_csv_line(line);
    for (auto& h : header) h = trim(h);

    int label_idx = -1;
    if (label_column) {
        auto it = std::find(header.begin(), header.end(), *label_column);
        if (it == header.end())
            throw DataError(path + ": label column '" + *label_column + "' not found in header");
        label_idx = static_cast<int>(it - header.begin());
    }

    const std::size_t arity = header.size();
    const std::size_t d = label_idx >= 0 ? arity - 1 : arity;
    if (d == 0) throw DataError(path + ": no feature columns");

    std::vector<std::vector<double>> rows;
    std::vector<std::string> raw_labels;
    std::size_t line_no = 1;
    while (std::getline(file, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != arity)
            throw DataError(path + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(arity) + " cells, got " + std::to_string(cells.size()));
        std::vector<double> row;
        row.reserve(d);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (static_cast<int>(c) == label_idx) {
                raw_labels.push_back(trim(cells[c]));
                continue;
            }
            double value;
            if (!parse_double(cells[c], value))
                throw DataError(path + ":" + std::to_string(line_no) + ": non-numeric cell in column '" +
                                header[c] + "'");
            row.push_back(value);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError(path + ": no data rows");

    PointCloud pc;
    pc.name = path;
    pc.points.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < d; ++j) pc.points(static_cast<Eigen::Index>(i),
                                                      static_cast<Eigen::Index>(j)) = rows[i][j];

    if (label_idx >= 0) {
        // first-occurrence order keeps the mapping stable across reruns
        std::unordered_map<std::string, int> mapping;
        std::vector<int> labels;
        labels.reserve(raw_labels.size());
        for (const auto& raw : raw_labels) {
            auto [it, inserted] = mapping.emplace(raw, static_cast<int>(mapping.size()));
            labels.push_back(it->second);
        }
        pc.labels = std::move(labels);
    }
    pc.validate();
    return pc;
}

void save_csv(const PointCloud& pc, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw IoError("cannot write CSV file: " + path);
    const Eigen::Index d = pc.points.cols();
    for (Eigen::Index j = 0; j < d; ++j) file << (j ? "," : "") << "f" << j;
    if (pc.labels) file << ",label";
    file << "\n";
    char buf[64];
    for (Eigen::Index i = 0; i < pc.points.rows(); ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", pc.points(i, j));
            file << (j ? "," : "") << buf;
        }
        if (pc.labels) file << "," << (*pc.labels)[static_cast<std::size_t>(i)];
        file << "\n";
    }
    if (!file) throw IoError("failed writing CSV file: " + path);
}

} // namespace bftc
