#ifndef BFTC_PIPELINE_HPP
#define BFTC_PIPELINE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bftc/pointcloud.hpp"
#include "bftc/spectral.hpp"
#include "bftc/topo_filter.hpp"

namespace bftc {

// Full parameter set of one clustering run; serialized into every report.
struct RunConfig {
    std::string input;                          // benchmark name or CSV path
    std::optional<std::string> label_column;    // for CSV inputs
    int k = 10;
    int filtration_length = 20;                 // L
    int max_betti_dim = 1;                      // M
    int clusters = 2;                           // p
    RngSeed seed = 0;
    double noise_rho = 0.0;
    SimilarityMetric similarity = SimilarityMetric::Cosine;
    Kernel kernel = Kernel::Gaussian;
    std::string out_dir = ".";

    void validate() const;   // throws DataError on out-of-range fields
};

struct StageTimings {
    double knn = 0.0;
    double betti = 0.0;
    double similarity = 0.0;
    double prune = 0.0;
    double adjacency = 0.0;
    double eigensolve = 0.0;
    double kmeans = 0.0;
    double total = 0.0;
};

struct PipelineResult {
    std::vector<int> labels;
    double max_scale = 0.0;                     // D
    std::vector<double> epsilons;
    std::vector<double> alphas;
    long directed_edges_before = 0;
    long directed_edges_after = 0;
    long mutual_edges = 0;
    std::vector<double> eigenvalues;
    StageTimings timings;
    // Present when the input cloud carried ground truth.
    std::optional<double> ri, ari, nmi_score;
};

// Optional per-stage artifact dumps (empty string = skip).
struct DumpOptions {
    std::string barcodes_path;    // JSON lines: {"point","dim","birth","death"}
    std::string scores_path;      // CSV: dim,score per directed edge
    std::string embedding_path;   // CSV: n rows, p columns
};

// Resolves config.input: a recognized benchmark name is generated, anything
// else is loaded as CSV; noise_rho > 0 perturbs the cloud afterwards.
PointCloud load_input(const RunConfig& config);

// Runs the nine pipeline steps on an already-materialized cloud.
PipelineResult run_pipeline(const PointCloud& pc, const RunConfig& config,
                            const DumpOptions& dumps = {});

// Serialized report (config echo, version, grid, thresholds, edge counts,
// eigenvalues, timings, metrics) as a JSON string.
std::string report_json(const RunConfig& config, const PointCloud& pc,
                        const PipelineResult& result);

// labels CSV: header point_index,label.
void save_labels_csv(const std::vector<int>& labels, const std::string& path);
std::vector<int> load_labels_csv(const std::string& path);

} // namespace bftc

#endif
