// Command-line front end: partition, predict, evaluate, mechanism, stats.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fbm/fbm.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 1729;

struct Options {
  std::string input;
  double threshold = 1.0;
  int samples = 50;
  bool samples_given = false;
  double fraction = 0.1;
  int repeats = 100;
  std::uint64_t seed = kDefaultSeed;
  std::string method = "fbm";
  bool sweep = false;
  bool intra = false;
  int workers = 1;
  std::string output;
  std::string format = "json";
};

fbm::Graph load_graph(const std::string& input) {
  if (auto edges = fbm::datasets::builtin_edges(input))
    return fbm::parse_edge_list(*edges);
  std::ifstream in(input, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + input);
  try {
    return fbm::parse_edge_list(in);
  } catch (const fbm::ParseError& e) {
    throw std::runtime_error(input + ": " + e.what());
  }
}

void emit(const Options& opt, const std::string& content) {
  if (opt.output.empty())
    std::cout << content;
  else
    fbm::write_text_file(opt.output, content);
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void add_common_flags(CLI::App* cmd, Options& opt, bool needs_input) {
  auto* input = cmd->add_option("--input,-i", opt.input,
                                "edge-list file, or a builtin dataset name "
                                "(karate, ring6, mech_b, mech_c, three_groups)");
  if (needs_input) input->required();
  cmd->add_option("--threshold,-t", opt.threshold, "link-density threshold")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0))
      ->capture_default_str();
  cmd->add_option("--samples,-s", opt.samples, "partition samples per prediction")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--fraction,-f", opt.fraction, "probe fraction of edges")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)))
      ->capture_default_str();
  cmd->add_option("--repeats,-r", opt.repeats, "experiment repetitions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", opt.seed, "master seed")->capture_default_str();
  cmd->add_option("--method,-m", opt.method,
                  "predictor: fbm, cn, jaccard, aa, ra")
      ->check(CLI::IsMember({"fbm", "cn", "common_neighbors", "jaccard", "aa",
                             "adamic_adar", "ra", "resource_allocation"}))
      ->capture_default_str();
  cmd->add_option("--workers,-w", opt.workers,
                  "worker threads (never changes output bytes)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--output,-o", opt.output, "output file (default: stdout)");
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

int cmd_stats(const Options& opt) {
  const fbm::Graph g = fbm::giant_component(load_graph(opt.input));
  emit(opt, json_text(fbm::to_json(fbm::graph_stats(g))));
  return 0;
}

int cmd_partition(const Options& opt) {
  const fbm::Graph g = load_graph(opt.input);
  const fbm::Partition p = fbm::partition_once(g, opt.threshold, opt.seed);
  const auto matrix = fbm::partition_density_matrix(g, p);
  nlohmann::json j = fbm::partition_to_json(g, p);
  j["density_matrix"] = matrix;
  emit(opt, json_text(j));
  if (!opt.output.empty())
    fbm::write_text_file(opt.output + ".density.csv",
                         fbm::density_matrix_to_csv(matrix));
  return 0;
}

int cmd_predict(const Options& opt) {
  const fbm::Graph g = load_graph(opt.input);
  const fbm::ScoreTable scores =
      fbm::predict(g, opt.threshold, opt.samples, opt.seed, opt.workers);
  emit(opt, fbm::score_table_to_csv(scores, g));
  if (!opt.output.empty())
    fbm::write_text_file(opt.output + ".meta.json",
                         json_text(fbm::score_meta_to_json(scores, g)));
  return 0;
}

int cmd_evaluate(const Options& opt) {
  const fbm::Graph g = fbm::giant_component(load_graph(opt.input));
  const auto method = fbm::method_from_string(opt.method);
  if (!method) throw std::runtime_error("unknown method: " + opt.method);
  fbm::ExperimentConfig cfg;
  cfg.method = *method;
  cfg.threshold = opt.threshold;
  cfg.samples = opt.samples;
  cfg.fraction = opt.fraction;
  cfg.repeats = opt.repeats;
  cfg.master_seed = opt.seed;
  cfg.intra_split = opt.intra;
  cfg.workers = opt.workers;

  if (opt.sweep) {
    if (opt.intra)
      throw std::runtime_error("--sweep and --intra cannot be combined");
    std::vector<double> thresholds;
    for (int i = 1; i <= 10; ++i) thresholds.push_back(0.1 * i);
    const auto curve = fbm::threshold_sweep(g, thresholds, cfg);
    if (opt.format == "csv")
      emit(opt, fbm::sweep_to_csv(curve));
    else
      emit(opt, json_text(fbm::sweep_to_json(curve)));
    return 0;
  }

  const fbm::ExperimentReport report = fbm::run_experiment(g, cfg);
  if (opt.format == "csv") {
    std::string csv =
        "method,threshold,samples,fraction,repeats,auc_mean,auc_std,"
        "wall_time_seconds\n";
    csv += report.method + ',' + fbm::format_double(report.threshold) + ',' +
           std::to_string(report.samples) + ',' +
           fbm::format_double(report.fraction) + ',' +
           std::to_string(report.repeats) + ',' +
           fbm::format_double(report.auc_mean) + ',' +
           fbm::format_double(report.auc_std) + ',' +
           fbm::format_double(report.wall_time_seconds) + '\n';
    emit(opt, csv);
  } else {
    emit(opt, json_text(fbm::report_to_json(report)));
  }
  return 0;
}

int cmd_mechanism(const Options& opt) {
  const int samples = opt.samples_given ? opt.samples : 10000;
  const fbm::MechanismReport rep =
      fbm::mechanism_ratios(samples, opt.seed, opt.workers);

  const bool ring_ok = rep.ring_ratio >= 0.4 && rep.ring_ratio <= 0.6;
  const bool b_ok = rep.net_b_ratio >= 0.65 && rep.net_b_ratio <= 0.85;
  std::cout << "ring   score(3,6)/score(1,3) = " << fbm::format_double(rep.ring_ratio)
            << "  expected [0.4, 0.6]    " << (ring_ok ? "pass" : "FAIL") << "\n"
            << "net_b  score(1,3)/score(3,5) = " << fbm::format_double(rep.net_b_ratio)
            << "  expected [0.65, 0.85]  " << (b_ok ? "pass" : "FAIL") << "\n"
            << "net_c  score(3,5)/score(1,3) = " << fbm::format_double(rep.net_c_ratio)
            << "  informational (stand-in topology)\n";
  if (!opt.output.empty())
    fbm::write_text_file(opt.output, json_text(fbm::mechanism_to_json(rep)));
  return ring_ok && b_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FBM link prediction: density-threshold block partitions, "
               "Bayesian link scores, and an AUC evaluation harness"};
  app.require_subcommand(1);
  Options opt;

  auto* partition = app.add_subcommand("partition", "one seeded block partition");
  add_common_flags(partition, opt, true);
  auto* predict = app.add_subcommand("predict", "score all unlinked node pairs");
  add_common_flags(predict, opt, true);
  auto* evaluate = app.add_subcommand(
      "evaluate", "train/probe AUC experiment (giant component)");
  add_common_flags(evaluate, opt, true);
  evaluate->add_flag("--sweep", opt.sweep, "AUC curve over thresholds 0.1..1.0");
  evaluate->add_flag("--intra", opt.intra,
                     "draw probe edges from intra-community edges only");
  auto* mechanism = app.add_subcommand(
      "mechanism", "link-formation ratios on the bundled toy networks");
  add_common_flags(mechanism, opt, false);
  auto* stats = app.add_subcommand("stats", "graph statistics (giant component)");
  add_common_flags(stats, opt, true);

  CLI11_PARSE(app, argc, argv);
  opt.samples_given = app.get_subcommand()->count("--samples") > 0;

  try {
    if (partition->parsed()) return cmd_partition(opt);
    if (predict->parsed()) return cmd_predict(opt);
    if (evaluate->parsed()) return cmd_evaluate(opt);
    if (mechanism->parsed()) return cmd_mechanism(opt);
    if (stats->parsed()) return cmd_stats(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
