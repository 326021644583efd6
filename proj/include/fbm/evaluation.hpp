#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fbm/baselines.hpp"
#include "fbm/datasets.hpp"
#include "fbm/estimator.hpp"
#include "fbm/graph.hpp"
#include "fbm/parallel.hpp"
#include "fbm/partition.hpp"
#include "fbm/random.hpp"

namespace fbm {

/// Train/probe division of a graph's edge set. The train graph keeps every
/// node (isolated nodes permitted); the probe edges are the removed links.
struct EvaluationSplit {
  Graph train;
  std::vector<Edge> probe;
  double fraction = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::vector<Edge> pick_edges(const std::vector<Edge>& pool, std::size_t k,
                                    Rng& rng) {
  // partial Fisher-Yates over the pool indices
  std::vector<std::size_t> idx(pool.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t swap_with = t + rng.uniform_index(idx.size() - t);
    std::swap(idx[t], idx[swap_with]);
  }
  std::vector<Edge> picked;
  picked.reserve(k);
  for (std::size_t t = 0; t < k; ++t) picked.push_back(pool[idx[t]]);
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace detail

/// Uniform probe split: round(fraction * |E|) edges drawn without
/// replacement become the probe set, the remainder the train graph.
inline EvaluationSplit split_edges(const Graph& g, double fraction,
                                   std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("split_edges: fraction must be in (0,1)");
  if (g.edge_count() < 2)
    throw std::invalid_argument("split_edges: need at least 2 edges");
  const auto k = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(g.edge_count())));
  if (k == 0)
    throw std::invalid_argument("split_edges: fraction yields no probe edges");
  if (k >= g.edge_count())
    throw std::invalid_argument("split_edges: fraction leaves no training edges");
  Rng rng(seed);
  EvaluationSplit split;
  split.fraction = fraction;
  split.seed = seed;
  split.probe = detail::pick_edges(g.edges(), k, rng);
  split.train = remove_edges(g, split.probe);
  return split;
}

/// Probe split restricted to intra-community edges: partition the graph once
/// at the given threshold, then draw round(fraction * |intra|) probe edges
/// uniformly from the edges whose endpoints share a community block.
inline EvaluationSplit split_intra_community(const Graph& g, double threshold,
                                             double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("split_intra_community: fraction must be in (0,1)");
  if (g.edge_count() < 2)
    throw std::invalid_argument("split_intra_community: need at least 2 edges");
  const Partition part = partition_once(g, threshold, derive_seed(seed, 0));
  std::vector<Edge> intra;
  for (const auto& [i, j] : g.edges()) {
    const int b = part.block_of[i];
    if (b == part.block_of[j] && part.blocks[b].kind == BlockKind::community)
      intra.emplace_back(i, j);
  }
  if (intra.empty())
    throw std::invalid_argument("split_intra_community: no intra-community edges");
  const auto k = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(intra.size())));
  if (k == 0)
    throw std::invalid_argument(
        "split_intra_community: fraction yields no probe edges");
  Rng rng(derive_seed(seed, 1));
  EvaluationSplit split;
  split.fraction = fraction;
  split.seed = seed;
  split.probe = detail::pick_edges(intra, k, rng);
  split.train = remove_edges(g, split.probe);
  return split;
}

/// All unordered non-adjacent pairs of g, in index order.
inline std::vector<Edge> non_adjacent_pairs(const Graph& g) {
  std::vector<Edge> out;
  for (NodeId i = 0; i < g.node_count(); ++i)
    for (NodeId j = i + 1; j < g.node_count(); ++j)
      if (!g.has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

struct AucOptions {
  long long exact_limit = 100'000'000;   // switch to Monte Carlo above this
  long long mc_comparisons = 1'000'000;  // seeded comparisons in MC mode
  std::uint64_t seed = 0;
};

/// Probability that a random probe edge outscores a random non-existent
/// pair; ties count one half. Exact Mann-Whitney statistic up to
/// exact_limit probe x non-edge comparisons, seeded Monte Carlo beyond.
inline double auc(const ScoreTable& scores, std::span<const Edge> probe,
                  std::span<const Edge> non_edges, AucOptions options = {}) {
  if (probe.empty()) throw std::invalid_argument("auc: empty probe set");
  if (non_edges.empty()) throw std::invalid_argument("auc: empty non-edge set");

  const auto comparisons = static_cast<long long>(probe.size()) *
                           static_cast<long long>(non_edges.size());
  if (comparisons > options.exact_limit) {
    Rng rng(options.seed);
    long long wins2 = 0;  // win counts twice, tie once
    for (long long t = 0; t < options.mc_comparisons; ++t) {
      const auto& p = probe[rng.uniform_index(probe.size())];
      const auto& q = non_edges[rng.uniform_index(non_edges.size())];
      const double sp = scores.score(p.first, p.second);
      const double sq = scores.score(q.first, q.second);
      if (sp > sq) wins2 += 2;
      else if (sp == sq) wins2 += 1;
    }
    return static_cast<double>(wins2) /
           (2.0 * static_cast<double>(options.mc_comparisons));
  }

  std::vector<double> non_scores;
  non_scores.reserve(non_edges.size());
  for (const auto& [i, j] : non_edges) non_scores.push_back(scores.score(i, j));
  std::sort(non_scores.begin(), non_scores.end());
  double acc = 0.0;
  for (const auto& [i, j] : probe) {
    const double s = scores.score(i, j);
    const auto lo = std::lower_bound(non_scores.begin(), non_scores.end(), s);
    const auto hi = std::upper_bound(non_scores.begin(), non_scores.end(), s);
    acc += static_cast<double>(lo - non_scores.begin());
    acc += 0.5 * static_cast<double>(hi - lo);
  }
  return acc / static_cast<double>(comparisons);
}

/// Predictor selection for experiments: the block model or a baseline index.
enum class Method {
  fbm,
  common_neighbors,
  jaccard,
  adamic_adar,
  resource_allocation,
};

inline std::string to_string(Method m) {
  if (m == Method::fbm) return "fbm";
  return to_string(static_cast<BaselineMethod>(static_cast<int>(m) - 1));
}

inline std::optional<Method> method_from_string(std::string_view name) {
  if (name == "fbm") return Method::fbm;
  if (auto b = baseline_from_string(name))
    return static_cast<Method>(static_cast<int>(*b) + 1);
  return std::nullopt;
}

struct ExperimentConfig {
  Method method = Method::fbm;
  double threshold = 1.0;
  int samples = 50;
  double fraction = 0.1;
  int repeats = 100;
  std::uint64_t master_seed = 0;
  bool intra_split = false;  // probe from intra-community edges only
  int workers = 1;
};

struct ExperimentReport {
  double auc_mean = 0.0;
  double auc_std = 0.0;
  int repeats = 0;
  std::string method;
  double threshold = 1.0;
  int samples = 0;
  double fraction = 0.0;
  std::uint64_t master_seed = 0;
  bool intra_split = false;
  double wall_time_seconds = 0.0;
};

namespace detail {

inline ScoreTable score_with(const Graph& train, const ExperimentConfig& cfg,
                             std::uint64_t predict_seed, int workers) {
  if (cfg.method == Method::fbm)
    return predict(train, cfg.threshold, cfg.samples, predict_seed, workers);
  return score_baseline(
      train, static_cast<BaselineMethod>(static_cast<int>(cfg.method) - 1));
}

inline void mean_and_sample_std(std::span<const double> xs, double* mean,
                                double* stddev) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  *mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) {
    *stddev = 0.0;
    return;
  }
  double ss = 0.0;
  for (double x : xs) ss += (x - *mean) * (x - *mean);
  *stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace detail

/// Repeated split/score/AUC experiment. Repeat r uses split seed
/// derive(master_seed, r); the probe edges are checked against the train
/// graph every run before any prediction. AUC compares probe edges with all
/// pairs non-adjacent in the original graph.
inline ExperimentReport run_experiment(const Graph& g, const ExperimentConfig& cfg) {
  if (cfg.repeats < 1)
    throw std::invalid_argument("run_experiment: repeats must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Edge> non_edges = non_adjacent_pairs(g);
  std::vector<double> aucs(static_cast<std::size_t>(cfg.repeats), 0.0);

  const int outer = cfg.repeats > 1 ? cfg.workers : 1;
  const int inner = cfg.repeats > 1 ? 1 : cfg.workers;
  parallel_for(static_cast<std::size_t>(cfg.repeats), outer,
               [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const EvaluationSplit split =
          cfg.intra_split
              ? split_intra_community(g, cfg.threshold, cfg.fraction,
                                      derive_seed(cfg.master_seed, r))
              : split_edges(g, cfg.fraction, derive_seed(cfg.master_seed, r));
      for (const auto& [i, j] : split.probe)
        if (split.train.has_edge(i, j))
          throw std::logic_error("run_experiment: probe edge leaked into train graph");
      const ScoreTable scores = detail::score_with(
          split.train, cfg, derive_seed(cfg.master_seed, (1ULL << 32) + r), inner);
      AucOptions auc_opt;
      auc_opt.seed = derive_seed(cfg.master_seed, (2ULL << 32) + r);
      aucs[r] = auc(scores, split.probe, non_edges, auc_opt);
    }
  });

  ExperimentReport report;
  detail::mean_and_sample_std(aucs, &report.auc_mean, &report.auc_std);
  report.repeats = cfg.repeats;
  report.method = to_string(cfg.method);
  report.threshold = cfg.threshold;
  report.samples = cfg.samples;
  report.fraction = cfg.fraction;
  report.master_seed = cfg.master_seed;
  report.intra_split = cfg.intra_split;
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

struct SweepPoint {
  double threshold = 0.0;
  double auc_mean = 0.0;
  double auc_std = 0.0;
};

/// One run_experiment per threshold. Split seeds depend only on the master
/// seed, so every threshold sees the same train/probe divisions.
inline std::vector<SweepPoint> threshold_sweep(const Graph& g,
                                               const std::vector<double>& thresholds,
                                               const ExperimentConfig& base) {
  std::vector<SweepPoint> curve;
  curve.reserve(thresholds.size());
  for (double t : thresholds) {
    if (!(t > 0.0 && t <= 1.0))
      throw std::invalid_argument("threshold_sweep: thresholds must be in (0,1]");
    ExperimentConfig cfg = base;
    cfg.threshold = t;
    const ExperimentReport report = run_experiment(g, cfg);
    curve.push_back({t, report.auc_mean, report.auc_std});
  }
  return curve;
}

/// Link-formation probe on the bundled toy networks, scored at threshold 1.
/// ring:  score(3,6) / score(1,3) -- forming a triangle beats not forming one
/// net b: score(1,3) / score(3,5) -- the larger completable clique wins
/// net c: score(3,5) / score(1,3) -- reported only; the net is a stand-in
struct MechanismReport {
  int samples = 0;
  std::uint64_t master_seed = 0;
  double ring_ratio = 0.0;
  double net_b_ratio = 0.0;
  double net_c_ratio = 0.0;
  double ring_score_13 = 0.0, ring_score_36 = 0.0;
  double net_b_score_13 = 0.0, net_b_score_35 = 0.0;
  double net_c_score_13 = 0.0, net_c_score_35 = 0.0;
};

inline MechanismReport mechanism_ratios(int samples, std::uint64_t master_seed,
                                        int workers = 1) {
  if (samples < 1000)
    throw std::invalid_argument("mechanism_ratios: need at least 1000 samples");
  MechanismReport rep;
  rep.samples = samples;
  rep.master_seed = master_seed;

  auto pair_score = [](const Graph& g, const ScoreTable& t, std::string_view a,
                       std::string_view b) {
    return t.score(*g.index_of(a), *g.index_of(b));
  };

  const Graph ring = datasets::builtin_graph("ring6");
  const ScoreTable ring_scores =
      predict(ring, 1.0, samples, derive_seed(master_seed, 0), workers);
  rep.ring_score_13 = pair_score(ring, ring_scores, "1", "3");
  rep.ring_score_36 = pair_score(ring, ring_scores, "3", "6");
  rep.ring_ratio = rep.ring_score_36 / rep.ring_score_13;

  const Graph net_b = datasets::builtin_graph("mech_b");
  const ScoreTable b_scores =
      predict(net_b, 1.0, samples, derive_seed(master_seed, 1), workers);
  rep.net_b_score_13 = pair_score(net_b, b_scores, "1", "3");
  rep.net_b_score_35 = pair_score(net_b, b_scores, "3", "5");
  rep.net_b_ratio = rep.net_b_score_13 / rep.net_b_score_35;

  const Graph net_c = datasets::builtin_graph("mech_c");
  const ScoreTable c_scores =
      predict(net_c, 1.0, samples, derive_seed(master_seed, 2), workers);
  rep.net_c_score_13 = pair_score(net_c, c_scores, "1", "3");
  rep.net_c_score_35 = pair_score(net_c, c_scores, "3", "5");
  rep.net_c_ratio = rep.net_c_score_35 / rep.net_c_score_13;
  return rep;
}

}  // namespace fbm
