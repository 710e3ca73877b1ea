#include "bftc/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bftc/errors.hpp"
#include "bftc/homology.hpp"
#include "bftc/knn.hpp"
#include "bftc/metrics.hpp"
#include "bftc/version.hpp"

namespace bftc {

using nlohmann::json;

void RunConfig::validate() const {
    if (input.empty()) throw DataError("input dataset is required");
    if (k < 1) throw DataError("k must be >= 1");
    if (filtration_length < 1) throw DataError("filtration length L must be >= 1");
    if (max_betti_dim < 0) throw DataError("max Betti dimension M must be >= 0");
    if (clusters < 1) throw DataError("cluster count p must be >= 1");
    if (noise_rho < 0.0) throw DataError("noise rho must be >= 0");
}

namespace {

class StageClock {
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();

public:
    double lap() {
        auto now = std::chrono::steady_clock::now();
        double s = std::chrono::duration<double>(now - start_).count();
        start_ = now;
        return s;
    }
};

bool is_benchmark(const std::string& name) {
    for (const auto& b : benchmark_names())
        if (b == name) return true;
    return false;
}

void dump_barcodes(const std::vector<Barcode>& barcodes, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw IoError("cannot write barcode dump: " + path);
    for (std::size_t i = 0; i < barcodes.size(); ++i) {
        for (int m = 0; m <= barcodes[i].max_dim(); ++m) {
            for (const auto& interval : barcodes[i].intervals[static_cast<std::size_t>(m)]) {
                json line = {{"point", i}, {"dim", m}, {"birth", interval.birth}};
                if (interval.death == kInfiniteDeath)
                    line["death"] = "inf";
                else
                    line["death"] = interval.death;
                file << line.dump() << "\n";
            }
        }
    }
}

void dump_scores(const SimilarityTensor& t, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw IoError("cannot write score dump: " + path);
    file << "dim,score\n";
    char buf[64];
    for (int m = 0; m < t.dims(); ++m) {
        const auto& matrix = t.scores[static_cast<std::size_t>(m)];
        for (Eigen::Index i = 0; i < matrix.rows(); ++i)
            for (Eigen::Index s = 0; s < matrix.cols(); ++s) {
                std::snprintf(buf, sizeof(buf), "%.17g", matrix(i, s));
                file << m << "," << buf << "\n";
            }
    }
}

void dump_embedding(const Eigen::MatrixXd& vectors, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw IoError("cannot write embedding dump: " + path);
    char buf[64];
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
        for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", vectors(i, j));
            file << (j ? "," : "") << buf;
        }
        file << "\n";
    }
}

} // namespace

PointCloud load_input(const RunConfig& config) {
    PointCloud pc = is_benchmark(config.input) ? gen_benchmark(config.input, config.seed)
                                               : load_csv(config.input, config.label_column);
    if (config.noise_rho > 0.0)
        pc = add_gaussian_noise(pc, config.noise_rho, config.seed + 0x9e3779b9ull);
    return pc;
}

PipelineResult run_pipeline(const PointCloud& pc, const RunConfig& config,
                            const DumpOptions& dumps) {
    config.validate();
    pc.validate();

    PipelineResult result;
    StageClock clock;
    StageClock total_clock;

    NeighborGraph graph = build_knn(pc, config.k);
    double max_scale = max_kth_distance(graph);
    ScaleGrid grid = scale_grid(max_scale, config.filtration_length);
    result.max_scale = max_scale;
    result.epsilons = grid.epsilons;
    result.timings.knn = clock.lap();

    std::vector<BettiSequence> seqs;
    if (!dumps.barcodes_path.empty()) {
        std::vector<Barcode> barcodes = local_barcodes(pc, graph, grid, config.max_betti_dim);
        dump_barcodes(barcodes, dumps.barcodes_path);
        seqs.resize(barcodes.size());
        for (std::size_t i = 0; i < barcodes.size(); ++i) {
            seqs[i].values.resize(config.max_betti_dim + 1, grid.length());
            for (int m = 0; m <= config.max_betti_dim; ++m)
                for (int l = 0; l < grid.length(); ++l)
                    seqs[i].values(m, l) = betti_at_scale(barcodes[i], m,
                                                          grid.epsilons[static_cast<std::size_t>(l)]);
        }
    } else {
        seqs = betti_sequences(pc, graph, grid, config.max_betti_dim);
    }
    result.timings.betti = clock.lap();

    SimilarityTensor scores = edge_similarities(graph, seqs, config.similarity);
    if (!dumps.scores_path.empty()) dump_scores(scores, dumps.scores_path);
    result.timings.similarity = clock.lap();

    Thresholds thresholds = whisker_thresholds(scores);
    result.alphas = thresholds.alphas;
    std::vector<std::vector<int>> refined = prune_neighborhoods(graph, scores, thresholds);
    result.directed_edges_before = static_cast<long>(graph.size()) * graph.k;
    result.directed_edges_after = 0;
    for (const auto& nb : refined) result.directed_edges_after += static_cast<long>(nb.size());
    result.timings.prune = clock.lap();

    double sigma = data_sigma(pc);
    SparseMatrix adjacency = build_adjacency(pc, refined, sigma, config.kernel);
    result.mutual_edges = static_cast<long>(adjacency.nonZeros()) / 2;
    SparseMatrix lap = laplacian(adjacency);
    result.timings.adjacency = clock.lap();

    Embedding embedding = smallest_eigenvectors(lap, config.clusters);
    if (!dumps.embedding_path.empty()) dump_embedding(embedding.vectors, dumps.embedding_path);
    result.eigenvalues.assign(embedding.eigenvalues.data(),
                              embedding.eigenvalues.data() + embedding.eigenvalues.size());
    result.timings.eigensolve = clock.lap();

    result.labels = kmeans(embedding.vectors, config.clusters, config.seed);
    result.timings.kmeans = clock.lap();
    result.timings.total = total_clock.lap();

    if (pc.labels) {
        result.ri = rand_index(*pc.labels, result.labels);
        result.ari = adjusted_rand_index(*pc.labels, result.labels);
        result.nmi_score = nmi(*pc.labels, result.labels);
    }
    return result;
}

std::string report_json(const RunConfig& config, const PointCloud& pc,
                        const PipelineResult& result) {
    json config_json = {
        {"input", config.input},
        {"k", config.k},
        {"L", config.filtration_length},
        {"M", config.max_betti_dim},
        {"p", config.clusters},
        {"seed", config.seed},
        {"noise_rho", config.noise_rho},
        {"similarity", config.similarity == SimilarityMetric::Cosine ? "cosine" : "l2"},
        {"kernel", config.kernel == Kernel::Gaussian ? "gaussian" : "none"},
        {"out_dir", config.out_dir},
    };
    if (config.label_column) config_json["label_column"] = *config.label_column;

    json report = {
        {"version", kVersion},
        {"config", config_json},
        {"n", pc.size()},
        {"d", pc.dim()},
        {"D", result.max_scale},
        {"epsilons", result.epsilons},
        {"alphas", result.alphas},
        {"directed_edges_before", result.directed_edges_before},
        {"directed_edges_after", result.directed_edges_after},
        {"mutual_edges", result.mutual_edges},
        {"eigenvalues", result.eigenvalues},
        {"stage_seconds",
         {
             {"knn", result.timings.knn},
             {"betti", result.timings.betti},
             {"similarity", result.timings.similarity},
             {"prune", result.timings.prune},
             {"adjacency", result.timings.adjacency},
             {"eigensolve", result.timings.eigensolve},
             {"kmeans", result.timings.kmeans},
             {"total", result.timings.total},
         }},
    };
    if (result.ari) {
        report["metrics"] = {{"ri", *result.ri}, {"ari", *result.ari}, {"nmi", *result.nmi_score}};
    }
    return report.dump(2);
}

void save_labels_csv(const std::vector<int>& labels, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw IoError("cannot write labels CSV: " + path);
    file << "point_index,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i) file << i << "," << labels[i] << "\n";
    if (!file) throw IoError("failed writing labels CSV: " + path);
}

std::vector<int> load_labels_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open labels CSV: " + path);
    std::string line;
    if (!std::getline(file, line)) throw DataError(path + ": no data rows");
    std::vector<int> labels;
    std::size_t line_no = 1;
    while (std::getline(file, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string index_cell, label_cell;
        if (!std::getline(ss, index_cell, ',') || !std::getline(ss, label_cell, ','))
            throw DataError(path + ":" + std::to_string(line_no) + ": expected point_index,label");
        labels.push_back(std::stoi(label_cell));
    }
    if (labels.empty()) throw DataError(path + ": no data rows");
    return labels;
}

} // namespace bftc
