// bftc: Betti-filtration topological clustering.
//
// Subcommands: generate | cluster | evaluate | sweep. Every run writes a
// report that embeds its full configuration, so any output can be reproduced
// from the report alone. Thread count is controlled by BFTC_THREADS.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bftc/errors.hpp"
#include "bftc/metrics.hpp"
#include "bftc/pipeline.hpp"
#include "bftc/pointcloud.hpp"
#include "bftc/version.hpp"

namespace {

using nlohmann::json;

// Exit codes: 0 success, 2 usage/validation, 3 I/O, 4 malformed data,
// 5 degenerate input, 6 solver failure.
enum ExitCode {
    kOk = 0,
    kUsage = 2,
    kIo = 3,
    kData = 4,
    kDegenerate = 5,
    kSolver = 6,
};

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const bftc::IoError*>(&e)) return kIo;
    if (dynamic_cast<const bftc::DegenerateError*>(&e)) return kDegenerate;
    if (dynamic_cast<const bftc::SolverError*>(&e)) return kSolver;
    if (dynamic_cast<const bftc::DataError*>(&e)) return kData;
    return kData;
}

std::string metric_name(bftc::SimilarityMetric m) {
    return m == bftc::SimilarityMetric::Cosine ? "cosine" : "l2";
}

std::string kernel_name(bftc::Kernel k) {
    return k == bftc::Kernel::Gaussian ? "gaussian" : "none";
}

bftc::SimilarityMetric parse_metric(const std::string& s) {
    if (s == "cosine") return bftc::SimilarityMetric::Cosine;
    if (s == "l2") return bftc::SimilarityMetric::L2;
    throw bftc::DataError("unknown similarity metric '" + s + "' (cosine|l2)");
}

bftc::Kernel parse_kernel(const std::string& s) {
    if (s == "gaussian") return bftc::Kernel::Gaussian;
    if (s == "none") return bftc::Kernel::None;
    throw bftc::DataError("unknown kernel '" + s + "' (gaussian|none)");
}

// Mutable string mirror of RunConfig for CLI11 binding; JSON config file
// fills it first, flags override.
struct ConfigArgs {
    std::string input;
    std::string label_column;
    int k = 10;
    int length = 20;
    int max_dim = 1;
    int clusters = 2;
    std::uint64_t seed = 0;
    double rho = 0.0;
    std::string similarity = "cosine";
    std::string kernel = "gaussian";
    std::string out_dir = ".";

    void load_json(const std::string& path) {
        std::ifstream file(path);
        if (!file) throw bftc::IoError("cannot open config file: " + path);
        json j;
        try {
            file >> j;
        } catch (const json::exception& e) {
            throw bftc::DataError(path + ": invalid JSON config: " + e.what());
        }
        if (j.contains("input")) input = j["input"].get<std::string>();
        if (j.contains("label_column")) label_column = j["label_column"].get<std::string>();
        if (j.contains("k")) k = j["k"].get<int>();
        if (j.contains("L")) length = j["L"].get<int>();
        if (j.contains("M")) max_dim = j["M"].get<int>();
        if (j.contains("p")) clusters = j["p"].get<int>();
        if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
        if (j.contains("noise_rho")) rho = j["noise_rho"].get<double>();
        if (j.contains("similarity")) similarity = j["similarity"].get<std::string>();
        if (j.contains("kernel")) kernel = j["kernel"].get<std::string>();
        if (j.contains("out_dir")) out_dir = j["out_dir"].get<std::string>();
    }

    bftc::RunConfig to_config() const {
        bftc::RunConfig config;
        config.input = input;
        if (!label_column.empty()) config.label_column = label_column;
        config.k = k;
        config.filtration_length = length;
        config.max_betti_dim = max_dim;
        config.clusters = clusters;
        config.seed = seed;
        config.noise_rho = rho;
        config.similarity = parse_metric(similarity);
        config.kernel = parse_kernel(kernel);
        config.out_dir = out_dir;
        return config;
    }
};

void add_config_options(CLI::App* cmd, ConfigArgs& args) {
    cmd->add_option("--input", args.input, "benchmark name or CSV path");
    cmd->add_option("--label-column", args.label_column, "label column name for CSV inputs");
    cmd->add_option("-k,--k", args.k, "nearest-neighbor count");
    cmd->add_option("-L,--length", args.length, "filtration length L");
    cmd->add_option("-M,--max-dim", args.max_dim, "max Betti dimension M");
    cmd->add_option("-p,--clusters", args.clusters, "cluster count p");
    cmd->add_option("--seed", args.seed, "RNG seed");
    cmd->add_option("--noise", args.rho, "Gaussian noise standard deviation rho");
    cmd->add_option("--similarity", args.similarity, "similarity metric: cosine|l2");
    cmd->add_option("--kernel", args.kernel, "edge kernel: gaussian|none");
    cmd->add_option("--out-dir", args.out_dir, "output directory");
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream file(path);
    if (!file) throw bftc::IoError("cannot write: " + path);
    file << text;
    if (!file) throw bftc::IoError("failed writing: " + path);
}

int cmd_generate(const std::string& name, double rho, std::uint64_t seed,
                 std::string out_path) {
    bftc::PointCloud pc = bftc::gen_benchmark(name, seed);
    if (rho > 0.0) pc = bftc::add_gaussian_noise(pc, rho, seed + 0x9e3779b9ull);
    if (out_path.empty()) out_path = name + ".csv";
    bftc::save_csv(pc, out_path);
    std::cout << "wrote " << pc.size() << " points to " << out_path << "\n";
    return kOk;
}

int cmd_cluster(const bftc::RunConfig& config, const bftc::DumpOptions& dumps) {
    bftc::PointCloud pc = bftc::load_input(config);
    std::filesystem::create_directories(config.out_dir);
    bftc::PipelineResult result = bftc::run_pipeline(pc, config, dumps);

    const std::string labels_path = config.out_dir + "/labels.csv";
    const std::string report_path = config.out_dir + "/report.json";
    bftc::save_labels_csv(result.labels, labels_path);
    write_text(report_path, bftc::report_json(config, pc, result) + "\n");

    std::cout << "wrote " << labels_path << " and " << report_path << "\n";
    if (result.ari)
        std::cout << "ri=" << *result.ri << " ari=" << *result.ari << " nmi=" << *result.nmi_score
                  << "\n";
    return kOk;
}

std::vector<int> load_truth_labels(const std::string& path, const std::string& label_column) {
    std::ifstream probe(path);
    if (!probe) throw bftc::IoError("cannot open: " + path);
    std::string header;
    std::getline(probe, header);
    probe.close();
    if (header.rfind("point_index,label", 0) == 0) return bftc::load_labels_csv(path);
    bftc::PointCloud pc = bftc::load_csv(path, label_column);
    if (!pc.labels) throw bftc::DataError(path + ": no labels found");
    return *pc.labels;
}

int cmd_evaluate(const std::string& pred_path, const std::string& truth_path,
                 const std::string& label_column, const std::string& out_path) {
    std::vector<int> pred = bftc::load_labels_csv(pred_path);
    std::vector<int> truth = load_truth_labels(truth_path, label_column);
    if (pred.size() != truth.size())
        throw bftc::DataError("label counts differ: pred " + std::to_string(pred.size()) +
                              " vs truth " + std::to_string(truth.size()));
    json out = {
        {"ri", bftc::rand_index(truth, pred)},
        {"ari", bftc::adjusted_rand_index(truth, pred)},
        {"nmi", bftc::nmi(truth, pred)},
    };
    std::string text = out.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) write_text(out_path, text);
    return kOk;
}

int cmd_sweep(const ConfigArgs& base, int k_min, int k_max, int m_min, int m_max,
              std::vector<double> rhos, const std::string& out_path) {
    if (k_min > k_max || m_min > m_max) throw bftc::DataError("empty sweep range");
    if (rhos.empty()) rhos.push_back(base.rho);

    std::ofstream file(out_path);
    if (!file) throw bftc::IoError("cannot write sweep CSV: " + out_path);
    file << "input,k,L,M,p,seed,rho,similarity,kernel,ri,ari,nmi,seconds,error\n";

    for (double rho : rhos) {
        for (int m = m_min; m <= m_max; ++m) {
            for (int k = k_min; k <= k_max; ++k) {
                bftc::RunConfig config = base.to_config();
                config.k = k;
                config.max_betti_dim = m;
                config.noise_rho = rho;
                file << config.input << "," << k << "," << config.filtration_length << "," << m
                     << "," << config.clusters << "," << config.seed << "," << rho << ","
                     << metric_name(config.similarity) << "," << kernel_name(config.kernel) << ",";
                try {
                    bftc::PointCloud pc = bftc::load_input(config);
                    bftc::PipelineResult result = bftc::run_pipeline(pc, config);
                    if (result.ri)
                        file << *result.ri << "," << *result.ari << "," << *result.nmi_score;
                    else
                        file << ",,";
                    file << "," << result.timings.total << ",\n";
                } catch (const std::exception& e) {
                    std::string msg = e.what();
                    for (auto& ch : msg)
                        if (ch == ',' || ch == '\n') ch = ';';
                    file << ",,,," << msg << "\n";
                }
                file.flush();
            }
        }
    }
    std::cout << "wrote " << out_path << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Betti-filtration topological clustering"};
    app.set_version_flag("--version", bftc::kVersion);
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "write a synthetic benchmark cloud as CSV");
    std::string gen_name;
    double gen_rho = 0.0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    generate->add_option("name", gen_name, "benchmark name")->required();
    generate->add_option("--noise", gen_rho, "Gaussian noise rho");
    generate->add_option("--seed", gen_seed, "RNG seed");
    generate->add_option("--out", gen_out, "output CSV path (default <name>.csv)");

    // cluster
    auto* cluster = app.add_subcommand("cluster", "run the full clustering pipeline");
    ConfigArgs cluster_args;
    std::string config_path;
    bftc::DumpOptions dumps;
    cluster->add_option("--config", config_path, "JSON config file (flags override)");
    add_config_options(cluster, cluster_args);
    cluster->add_option("--dump-barcodes", dumps.barcodes_path, "write per-point barcodes (JSON lines)");
    cluster->add_option("--dump-scores", dumps.scores_path, "write per-dimension similarity scores CSV");
    cluster->add_option("--dump-embedding", dumps.embedding_path, "write spectral embedding CSV");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "compare predicted labels against ground truth");
    std::string pred_path, truth_path, truth_label_column = "label", eval_out;
    evaluate->add_option("--pred", pred_path, "predicted labels CSV")->required();
    evaluate->add_option("--truth", truth_path, "truth labels CSV or labeled cloud CSV")->required();
    evaluate->add_option("--label-column", truth_label_column, "label column in truth cloud CSV");
    evaluate->add_option("--out", eval_out, "also write metrics JSON here");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "grid of pipeline runs, one CSV row per cell");
    ConfigArgs sweep_args;
    std::string sweep_config_path;
    int k_min = -1, k_max = -1, m_min = -1, m_max = -1;
    std::vector<double> sweep_rhos;
    std::string sweep_out = "sweep.csv";
    sweep->add_option("--config", sweep_config_path, "JSON config file (flags override)");
    add_config_options(sweep, sweep_args);
    sweep->add_option("--k-min", k_min, "sweep k from this value");
    sweep->add_option("--k-max", k_max, "sweep k up to this value");
    sweep->add_option("--m-min", m_min, "sweep M from this value");
    sweep->add_option("--m-max", m_max, "sweep M up to this value");
    sweep->add_option("--rho", sweep_rhos, "noise levels to sweep")->delimiter(',');
    sweep->add_option("--out", sweep_out, "output CSV path");

    // Config files are applied before flag parsing so that flags win.
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                cluster_args.load_json(argv[i + 1]);
                sweep_args.load_json(argv[i + 1]);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return exit_code_for(e);
            }
        }
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(gen_name, gen_rho, gen_seed, gen_out);
        if (cluster->parsed()) {
            bftc::RunConfig config = cluster_args.to_config();
            config.validate();
            return cmd_cluster(config, dumps);
        }
        if (evaluate->parsed())
            return cmd_evaluate(pred_path, truth_path, truth_label_column, eval_out);
        if (sweep->parsed()) {
            if (k_min < 0) k_min = sweep_args.k;
            if (k_max < 0) k_max = sweep_args.k;
            if (m_min < 0) m_min = sweep_args.max_dim;
            if (m_max < 0) m_max = sweep_args.max_dim;
            return cmd_sweep(sweep_args, k_min, k_max, m_min, m_max, sweep_rhos, sweep_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kUsage;
}
