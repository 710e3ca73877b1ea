#ifndef BFTC_POINTCLOUD_HPP
#define BFTC_POINTCLOUD_HPP

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bftc {

using RngSeed = std::uint64_t;

// A finite set of points in R^d with optional ground-truth class ids.
// Immutable by convention: operations return new clouds.
struct PointCloud {
    Eigen::MatrixXd points;                        // n x d, one row per point
    std::optional<std::vector<int>> labels;        // length n, values {0..c-1}
    std::string name;

    Eigen::Index size() const { return points.rows(); }
    Eigen::Index dim() const { return points.cols(); }

    // Throws DataError if any invariant is violated (empty cloud, non-finite
    // coordinate, label length/value mismatch).
    void validate() const;
};

// Parametric surface/curve primitives, all embedded in R^3.
struct Shape {
    enum class Kind { Torus, Sphere, Circle, Segment };
    Kind kind;
    double a = 0.0;   // torus: major radius R; sphere/circle: radius; segment: length
    double b = 0.0;   // torus: tube radius r

    static Shape torus(double major, double tube) { return {Kind::Torus, major, tube}; }
    static Shape sphere(double radius) { return {Kind::Sphere, radius, 0.0}; }
    static Shape circle(double radius) { return {Kind::Circle, radius, 0.0}; }
    static Shape segment(double length) { return {Kind::Segment, length, 0.0}; }
};

// Samples n points uniformly in the shape's angular/length parameters
// (torus: theta,phi uniform; sphere: normalized Gaussian; circle: uniform
// angle; segment: uniform along the line), rotates by `orientation` and
// translates to `center`. Deterministic under seed.
PointCloud gen_shape(const Shape& shape, int n, const Eigen::Vector3d& center,
                     const Eigen::Matrix3d& orientation, RngSeed seed);

inline PointCloud gen_shape(const Shape& shape, int n, const Eigen::Vector3d& center,
                            RngSeed seed) {
    return gen_shape(shape, n, center, Eigen::Matrix3d::Identity(), seed);
}

// Composite 3D benchmark clouds. Recognized names: linked_tori (4000 pts,
// labels {0,1}), torus_sphere_line (3300 pts, labels {0,1,2}),
// two_sphere_two_circle (3000 pts, labels {0,1,2,3}).
PointCloud gen_benchmark(const std::string& name, RngSeed seed);

std::vector<std::string> benchmark_names();

// Perturbs every coordinate by an independent Normal(0, rho^2) draw.
// rho = 0 returns the input unchanged. Labels are preserved.
PointCloud add_gaussian_noise(const PointCloud& pc, double rho, RngSeed seed);

// CSV ingestion: header row required, ',' delimiter. If label_column is
// given, that column is extracted as labels (strings mapped to dense ints
// in first-occurrence order); all remaining columns must be numeric.
PointCloud load_csv(const std::string& path,
                    const std::optional<std::string>& label_column = std::nullopt);

// Writes columns f0..f{d-1}[,label].
void save_csv(const PointCloud& pc, const std::string& path);

} // namespace bftc

#endif
