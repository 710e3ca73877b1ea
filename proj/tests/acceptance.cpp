// Acceptance suite: each criterion prints exactly one [PASS]/[FAIL] line.
// Run all criteria with no arguments, or a subset by number: acceptance 1 5 12

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bftc/homology.hpp"
#include "bftc/knn.hpp"
#include "bftc/metrics.hpp"
#include "bftc/pipeline.hpp"
#include "bftc/pointcloud.hpp"
#include "bftc/spectral.hpp"
#include "bftc/topo_filter.hpp"
#include "oracle.hpp"

using namespace bftc;

namespace {

namespace fs = std::filesystem;

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

fs::path out_dir() {
    fs::path dir = "acceptance_out";
    fs::create_directories(dir);
    return dir;
}

RunConfig make_config(const std::string& input, int k, int length, int max_dim, int p,
                      RngSeed seed = 42, double rho = 0.0) {
    RunConfig config;
    config.input = input;
    config.k = k;
    config.filtration_length = length;
    config.max_betti_dim = max_dim;
    config.clusters = p;
    config.seed = seed;
    config.noise_rho = rho;
    return config;
}

double run_ari(const PointCloud& pc, const RunConfig& config) {
    PipelineResult result = run_pipeline(pc, config);
    return result.ari.value_or(-2.0);
}

// ---------------------------------------------------------------- fixtures

void append_points(PointCloud& pc, const std::vector<Eigen::Vector2d>& pts, int label) {
    Eigen::Index old_n = pc.points.rows();
    Eigen::MatrixXd merged(old_n + static_cast<Eigen::Index>(pts.size()), 2);
    if (old_n > 0) merged.topRows(old_n) = pc.points;
    for (std::size_t i = 0; i < pts.size(); ++i)
        merged.row(old_n + static_cast<Eigen::Index>(i)) = pts[i].transpose();
    pc.points = std::move(merged);
    if (!pc.labels) pc.labels.emplace();
    pc.labels->insert(pc.labels->end(), pts.size(), label);
}

// smiley face: outline circle, two eye blobs, mouth arc; four well-separated parts
PointCloud smile_cloud(RngSeed seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> jitter(0.0, 0.01);
    std::normal_distribution<double> blob(0.0, 0.05);

    PointCloud pc;
    pc.name = "smile";
    std::vector<Eigen::Vector2d> face;
    for (int i = 0; i < 500; ++i) {
        double t = 2.0 * std::numbers::pi * unit(rng);
        face.emplace_back(std::cos(t) + jitter(rng), std::sin(t) + jitter(rng));
    }
    append_points(pc, face, 0);

    for (int eye = 0; eye < 2; ++eye) {
        std::vector<Eigen::Vector2d> pts;
        double cx = eye == 0 ? -0.35 : 0.35;
        for (int i = 0; i < 100; ++i) pts.emplace_back(cx + blob(rng), 0.3 + blob(rng));
        append_points(pc, pts, eye + 1);
    }

    std::vector<Eigen::Vector2d> mouth;
    for (int i = 0; i < 150; ++i) {
        double t = std::numbers::pi * (1.15 + 0.7 * unit(rng));  // lower arc
        mouth.emplace_back(0.5 * std::cos(t) + jitter(rng), 0.5 * std::sin(t) + jitter(rng));
    }
    append_points(pc, mouth, 3);
    return pc;
}

// three interleaved crescents, the classic moons arrangement plus one offset
PointCloud three_moons_cloud(RngSeed seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> jitter(0.0, 0.03);

    PointCloud pc;
    pc.name = "three_moons";
    std::vector<Eigen::Vector2d> a, b, c;
    for (int i = 0; i < 400; ++i) {
        double t = std::numbers::pi * unit(rng);
        a.emplace_back(std::cos(t) + jitter(rng), std::sin(t) + jitter(rng));
        b.emplace_back(1.0 - std::cos(t) + jitter(rng), 0.5 - std::sin(t) + jitter(rng));
        c.emplace_back(3.5 + std::cos(t) + jitter(rng), std::sin(t) + jitter(rng));
    }
    append_points(pc, a, 0);
    append_points(pc, b, 1);
    append_points(pc, c, 2);
    return pc;
}

// -------------------------------------------------------------- criteria

bool criterion_homology_oracle(std::string& detail) {
    double start = now_seconds();
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    long checks = 0;
    for (int set = 0; set < 200; ++set) {
        int n = 3 + static_cast<int>(rng() % 8);  // 3..10
        int d = 1 + static_cast<int>(rng() % 3);  // 1..3
        Eigen::MatrixXd pts(n, d);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < d; ++j) pts(i, j) = unit(rng);

        double diameter = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                diameter = std::max(diameter, (pts.row(i) - pts.row(j)).norm());
        double max_scale = diameter * 1.05 + 1e-9;

        Filtration f = build_vr_filtration(pts, 3, max_scale);
        Barcode barcode = compute_barcode(f, 2);
        for (int step = 1; step <= 10; ++step) {
            double eps = max_scale * step / 10.0;
            for (int m = 0; m <= 2; ++m) {
                int fast = betti_at_scale(barcode, m, eps);
                int slow = oracle::betti_bruteforce(pts, eps, m);
                ++checks;
                if (fast != slow) {
                    std::ostringstream msg;
                    msg << "mismatch set " << set << " eps " << eps << " m " << m << ": "
                        << fast << " vs oracle " << slow;
                    detail = msg.str();
                    return false;
                }
            }
        }
    }
    double elapsed = now_seconds() - start;
    std::ostringstream msg;
    msg << checks << " checks equal in " << elapsed << "s";
    detail = msg.str();
    return elapsed < 60.0;
}

bool criterion_circle_homology(std::string& detail) {
    const int n = 60;
    Eigen::MatrixXd pts(n, 2);
    for (int i = 0; i < n; ++i) {
        double t = 2.0 * std::numbers::pi * i / n;
        pts(i, 0) = std::cos(t);
        pts(i, 1) = std::sin(t);
    }
    const double diameter = 2.0;
    Filtration f = build_vr_filtration(pts, 2, diameter * 1.02);
    Barcode barcode = compute_barcode(f, 1);

    bool window_found = false;
    for (int step = 1; step <= 400; ++step) {
        double eps = diameter * 1.02 * step / 400.0;
        if (betti_at_scale(barcode, 0, eps) == 1 && betti_at_scale(barcode, 1, eps) == 1) {
            window_found = true;
            break;
        }
    }
    bool endpoint_ok = betti_at_scale(barcode, 0, diameter) == 1 &&
                       betti_at_scale(barcode, 1, diameter) == 0;
    detail = window_found ? "loop window present, contractible at the diameter"
                          : "no (1,1) window found";
    return window_found && endpoint_ok;
}

bool criterion_laplacian_spectrum(std::string& detail) {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> weight(0.1, 1.0);

    for (int components = 1; components <= 4; ++components) {
        // random connected blocks joined into a block-diagonal adjacency
        int n = 0;
        std::vector<int> sizes;
        for (int c = 0; c < components; ++c) {
            sizes.push_back(3 + static_cast<int>(rng() % 5));
            n += sizes.back();
        }
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        int base = 0;
        for (int size : sizes) {
            for (int i = 0; i + 1 < size; ++i) {  // spanning path keeps it connected
                double w = weight(rng);
                a(base + i, base + i + 1) = w;
                a(base + i + 1, base + i) = w;
            }
            for (int extra = 0; extra < size; ++extra) {  // plus random chords
                int i = static_cast<int>(rng() % static_cast<unsigned>(size));
                int j = static_cast<int>(rng() % static_cast<unsigned>(size));
                if (i == j) continue;
                double w = weight(rng);
                a(base + i, base + j) = w;
                a(base + j, base + i) = w;
            }
            base += size;
        }
        SparseMatrix lap = laplacian(a.sparseView());
        Embedding e = smallest_eigenvectors(lap, n);
        int zeros = 0;
        for (int i = 0; i < n; ++i)
            if (std::abs(e.eigenvalues(i)) < 1e-8) ++zeros;
        if (zeros != components) {
            detail = "zero-eigenvalue count " + std::to_string(zeros) + " != " +
                     std::to_string(components) + " components";
            return false;
        }
        for (int trial = 0; trial < 1000; ++trial) {
            Eigen::VectorXd v(n);
            for (int i = 0; i < n; ++i) v(i) = gauss(rng);
            if (v.dot(lap * v) < -1e-9) {
                detail = "negative quadratic form";
                return false;
            }
        }
    }
    detail = "multiplicities match on 1-4 components, PSD on 4000 probes";
    return true;
}

bool criterion_metric_oracles(std::string& detail) {
    if (adjusted_rand_index({0, 0, 1, 1}, {0, 1, 0, 1}) != -0.5) {
        detail = "ARI([0,0,1,1],[0,1,0,1]) != -0.5";
        return false;
    }
    std::mt19937_64 rng(505);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 2 + static_cast<int>(rng() % 29);
        int c1 = 1 + static_cast<int>(rng() % 6);
        int c2 = 1 + static_cast<int>(rng() % 6);
        std::vector<int> truth(static_cast<std::size_t>(n)), pred(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            truth[static_cast<std::size_t>(i)] = static_cast<int>(rng() % c1);
            pred[static_cast<std::size_t>(i)] = static_cast<int>(rng() % c2);
        }
        double dri = std::abs(rand_index(truth, pred) - oracle::ri_oracle(truth, pred));
        double dari =
            std::abs(adjusted_rand_index(truth, pred) - oracle::ari_oracle(truth, pred));
        double dnmi = std::abs(nmi(truth, pred) - oracle::nmi_oracle(truth, pred));
        if (dri > 1e-12 || dari > 1e-12 || dnmi > 1e-12) {
            std::ostringstream msg;
            msg << "trial " << trial << " deltas ri " << dri << " ari " << dari << " nmi "
                << dnmi;
            detail = msg.str();
            return false;
        }
    }
    detail = "500 labelings match pair counting / contingency entropy to 1e-12";
    return true;
}

std::string labels_file_bytes(const PointCloud& pc, const RunConfig& config,
                              const fs::path& path) {
    PipelineResult result = run_pipeline(pc, config);
    save_labels_csv(result.labels, path.string());
    std::ifstream file(path, std::ios::binary);
    std::ostringstream bytes;
    bytes << file.rdbuf();
    return bytes.str();
}

bool criterion_determinism(std::string& detail) {
    RunConfig config = make_config("linked_tori", 10, 12, 1, 2, 42);
    PointCloud pc = load_input(config);
    fs::path dir = out_dir();

    setenv("BFTC_THREADS", "1", 1);
    std::string run1 = labels_file_bytes(pc, config, dir / "det_t1_a.csv");
    std::string run2 = labels_file_bytes(pc, config, dir / "det_t1_b.csv");
    unsigned hw = std::thread::hardware_concurrency();
    setenv("BFTC_THREADS", std::to_string(hw == 0 ? 4 : hw).c_str(), 1);
    std::string run3 = labels_file_bytes(pc, config, dir / "det_tmax_a.csv");
    std::string run4 = labels_file_bytes(pc, config, dir / "det_tmax_b.csv");
    unsetenv("BFTC_THREADS");

    if (run1.empty() || run1 != run2) {
        detail = "single-thread reruns differ";
        return false;
    }
    if (run3 != run4 || run1 != run3) {
        detail = "thread count changed the label file";
        return false;
    }
    detail = "4 runs byte-identical across 1 and max threads";
    return true;
}

bool criterion_pruning_monotone(std::string& detail) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 4 + static_cast<int>(rng() % 10);
        int k = 1 + static_cast<int>(rng() % 4);
        if (k >= n) k = n - 1;
        NeighborGraph g;
        g.k = k;
        g.neighbors.assign(static_cast<std::size_t>(n), {});
        g.distances.assign(static_cast<std::size_t>(n),
                           std::vector<double>(static_cast<std::size_t>(k), 1.0));
        for (int i = 0; i < n; ++i)
            for (int s = 0; s < k; ++s)
                g.neighbors[static_cast<std::size_t>(i)].push_back((i + s + 1) % n);

        int dims = 1 + static_cast<int>(rng() % 3);
        SimilarityTensor t;
        for (int m = 0; m < dims; ++m) {
            Eigen::MatrixXd scores(n, k);
            for (int idx = 0; idx < scores.size(); ++idx) scores(idx) = unit(rng);
            t.scores.push_back(scores);
        }
        Thresholds low;
        for (int m = 0; m < dims; ++m) low.alphas.push_back(unit(rng));
        Thresholds high = low;
        high.alphas[static_cast<std::size_t>(rng() % static_cast<unsigned>(dims))] +=
            0.5 * unit(rng);

        auto pruned_low = prune_neighborhoods(g, t, low);
        auto pruned_high = prune_neighborhoods(g, t, high);
        for (int i = 0; i < n; ++i) {
            const auto& original = g.neighbors[static_cast<std::size_t>(i)];
            for (int j : pruned_low[static_cast<std::size_t>(i)])
                if (std::find(original.begin(), original.end(), j) == original.end()) {
                    detail = "N' not a subset of N";
                    return false;
                }
            for (int j : pruned_high[static_cast<std::size_t>(i)]) {
                const auto& low_list = pruned_low[static_cast<std::size_t>(i)];
                if (std::find(low_list.begin(), low_list.end(), j) == low_list.end()) {
                    detail = "raising a threshold added an edge";
                    return false;
                }
            }
        }
    }
    detail = "200 randomized tensors: monotone, N' subset of N";
    return true;
}

bool criterion_2d_benchmarks(std::string& detail) {
    struct Attempt {
        int k, length, max_dim;
    };
    const std::vector<Attempt> attempts = {{8, 12, 1}, {10, 15, 1}, {12, 10, 0}};

    std::ostringstream msg;
    for (const auto& [name, cloud, p] :
         std::vector<std::tuple<std::string, PointCloud, int>>{
             {"smile", smile_cloud(7), 4}, {"three_moons", three_moons_cloud(8), 3}}) {
        double best = -1.0;
        for (const auto& attempt : attempts) {
            RunConfig config = make_config(name, attempt.k, attempt.length, attempt.max_dim, p);
            double start = now_seconds();
            double ari = run_ari(cloud, config);
            double elapsed = now_seconds() - start;
            if (elapsed >= 120.0) {
                detail = name + " run exceeded 2 minutes";
                return false;
            }
            best = std::max(best, ari);
            if (best >= 0.99) break;
        }
        msg << name << " best ARI " << best << "; ";
        if (best < 0.99) {
            detail = msg.str() + "below 0.99";
            return false;
        }
    }
    detail = msg.str();
    return true;
}

bool criterion_linked_tori(std::string& detail) {
    const std::vector<std::pair<int, int>> attempts = {{10, 15}, {8, 15}, {12, 20}};
    double best = -1.0;
    for (const auto& [k, length] : attempts) {
        RunConfig config = make_config("linked_tori", k, length, 1, 2, 42);
        PointCloud pc = load_input(config);
        double start = now_seconds();
        double ari = run_ari(pc, config);
        double elapsed = now_seconds() - start;
        if (elapsed >= 600.0) {
            detail = "run exceeded 10 minutes";
            return false;
        }
        best = std::max(best, ari);
        if (best >= 0.95) break;
    }
    std::ostringstream msg;
    msg << "best ARI " << best;
    detail = msg.str();
    return best >= 0.95;
}

bool criterion_3d_composites(std::string& detail) {
    std::ostringstream msg;

    double best_tsl = -1.0;
    for (int k : {10, 8, 12}) {
        RunConfig config = make_config("torus_sphere_line", k, 15, 1, 3, 42);
        best_tsl = std::max(best_tsl, run_ari(load_input(config), config));
        if (best_tsl >= 0.90) break;
    }
    msg << "torus_sphere_line best ARI " << best_tsl;
    if (best_tsl < 0.90) {
        detail = msg.str();
        return false;
    }

    double best_ssc = -1.0;
    for (int k : {10, 8, 12}) {
        RunConfig config = make_config("two_sphere_two_circle", k, 15, 1, 4, 42);
        best_ssc = std::max(best_ssc, run_ari(load_input(config), config));
        if (best_ssc >= 0.85) break;
    }
    msg << "; two_sphere_two_circle best ARI " << best_ssc;
    detail = msg.str();
    return best_ssc >= 0.85;
}

bool criterion_noise_robustness(std::string& detail) {
    const std::vector<int> ks = {6, 8, 10, 12, 14};
    const std::vector<double> rhos = {0.1, 0.2, 0.3};

    std::ofstream curve(out_dir() / "noise_ari_vs_k.csv");
    curve << "rho,k,ari\n";
    double best_at_03 = -1.0;
    for (double rho : rhos) {
        for (int k : ks) {
            RunConfig config = make_config("linked_tori", k, 12, 1, 2, 42, rho);
            PointCloud pc = load_input(config);
            double ari = run_ari(pc, config);
            curve << rho << "," << k << "," << ari << "\n";
            if (rho == 0.3) best_at_03 = std::max(best_at_03, ari);
        }
    }
    std::ostringstream msg;
    msg << "rho=0.3 best-of-sweep ARI " << best_at_03 << "; curve written";
    detail = msg.str();
    return best_at_03 >= 0.40;
}

bool criterion_ablations(std::string& detail) {
    const std::vector<int> ks = {8, 10, 12};
    auto best_with = [&](SimilarityMetric metric, Kernel kernel) {
        double best = -1.0;
        for (int k : ks) {
            RunConfig config = make_config("linked_tori", k, 12, 1, 2, 42);
            config.similarity = metric;
            config.kernel = kernel;
            best = std::max(best, run_ari(load_input(config), config));
        }
        return best;
    };
    double cosine = best_with(SimilarityMetric::Cosine, Kernel::Gaussian);
    double l2 = best_with(SimilarityMetric::L2, Kernel::Gaussian);
    double no_kernel = best_with(SimilarityMetric::Cosine, Kernel::None);

    std::ostringstream msg;
    msg << "cosine " << cosine << " vs l2 " << l2 << "; gaussian " << cosine
        << " vs none " << no_kernel;
    detail = msg.str();
    return cosine >= l2 && cosine >= no_kernel;
}

bool criterion_complexity(std::string& detail) {
    std::mt19937_64 rng(3030);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> log_n, log_t;
    for (int n : {500, 1000, 2000, 4000}) {
        PointCloud pc;
        pc.name = "uniform";
        pc.points.resize(n, 3);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < 3; ++j) pc.points(i, j) = unit(rng);

        RunConfig config = make_config("uniform", 8, 10, 1, 2, 42);
        double start = now_seconds();
        run_pipeline(pc, config);
        double elapsed = now_seconds() - start;
        log_n.push_back(std::log(static_cast<double>(n)));
        log_t.push_back(std::log(std::max(elapsed, 1e-6)));
    }
    // least-squares slope of log t vs log n
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        mean_x += log_n[i];
        mean_y += log_t[i];
    }
    mean_x /= static_cast<double>(log_n.size());
    mean_y /= static_cast<double>(log_n.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        num += (log_n[i] - mean_x) * (log_t[i] - mean_y);
        den += (log_n[i] - mean_x) * (log_n[i] - mean_x);
    }
    double slope = num / den;
    std::ostringstream msg;
    msg << "log-log slope " << slope;
    detail = msg.str();
    return slope <= 2.4;
}

struct Criterion {
    int id;
    std::string name;
    std::function<bool(std::string&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {1, "homology oracle equivalence", criterion_homology_oracle},
        {2, "known-shape circle homology", criterion_circle_homology},
        {3, "laplacian spectrum", criterion_laplacian_spectrum},
        {4, "metric oracles", criterion_metric_oracles},
        {5, "pipeline determinism", criterion_determinism},
        {6, "pruning monotonicity", criterion_pruning_monotone},
        {7, "2d benchmark reproduction", criterion_2d_benchmarks},
        {8, "linked tori reproduction", criterion_linked_tori},
        {9, "3d composite reproduction", criterion_3d_composites},
        {10, "noise robustness", criterion_noise_robustness},
        {11, "ablation directions", criterion_ablations},
        {12, "complexity sanity", criterion_complexity},
    };
    return list;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& criterion : criteria()) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), criterion.id) == selected.end())
            continue;
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id << ": "
                  << criterion.name << (detail.empty() ? "" : " -- " + detail) << "\n";
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
