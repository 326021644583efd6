#pragma once

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fbm/estimator.hpp"
#include "fbm/evaluation.hpp"
#include "fbm/graph.hpp"
#include "fbm/partition.hpp"

namespace fbm {

/// Shortest round-trip decimal rendering, locale-independent ('.' decimal
/// point always). Used for all CSV number output so files are byte-stable.
inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline nlohmann::json to_json(const GraphStats& s) {
  return {
      {"nodes", s.nodes},          {"edges", s.edges},
      {"density", s.density},      {"clustering", s.clustering},
      {"avg_degree", s.avg_degree}, {"avg_distance", s.avg_distance},
  };
}

inline nlohmann::json partition_to_json(const Graph& g, const Partition& p) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : p.blocks) {
    nlohmann::json nodes = nlohmann::json::array();
    for (NodeId v : b.nodes) nodes.push_back(g.label(v));
    blocks.push_back({
        {"kind", b.kind == BlockKind::community ? "community" : "residual"},
        {"nodes", std::move(nodes)},
        {"m", b.intra_edges},
        {"n", b.pair_count},
    });
  }
  return {
      {"threshold", p.threshold},
      {"seed", p.seed},
      {"block_count", p.blocks.size()},
      {"blocks", std::move(blocks)},
  };
}

inline std::string density_matrix_to_csv(const std::vector<std::vector<double>>& m) {
  std::string out;
  for (const auto& row : m) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

/// node_a,node_b,score rows sorted by descending score; ties break on the
/// canonical index pair so equal configurations always serialize identically.
inline std::string score_table_to_csv(const ScoreTable& table, const Graph& g) {
  std::vector<ScoreEntry> rows = table.entries();
  std::sort(rows.begin(), rows.end(), [](const ScoreEntry& x, const ScoreEntry& y) {
    if (x.score != y.score) return x.score > y.score;
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
  std::string out = "node_a,node_b,score\n";
  for (const auto& e : rows) {
    out += g.label(e.a);
    out += ',';
    out += g.label(e.b);
    out += ',';
    out += format_double(e.score);
    out += '\n';
  }
  return out;
}

inline nlohmann::json score_meta_to_json(const ScoreTable& table, const Graph& g) {
  const ScoreMeta& m = table.meta();
  return {
      {"method", m.method},   {"threshold", m.threshold},
      {"samples", m.samples}, {"seed", m.seed},
      {"nodes", g.node_count()}, {"edges", g.edge_count()},
      {"candidate_pairs", table.size()},
  };
}

inline nlohmann::json score_table_to_json(const ScoreTable& table, const Graph& g) {
  nlohmann::json scores = nlohmann::json::array();
  for (const auto& e : table.entries())
    scores.push_back({{"node_a", g.label(e.a)},
                      {"node_b", g.label(e.b)},
                      {"score", e.score}});
  nlohmann::json out = score_meta_to_json(table, g);
  out["scores"] = std::move(scores);
  return out;
}

inline nlohmann::json report_to_json(const ExperimentReport& r) {
  return {
      {"auc_mean", r.auc_mean},
      {"auc_std", r.auc_std},
      {"repeats", r.repeats},
      {"method", r.method},
      {"threshold", r.threshold},
      {"samples", r.samples},
      {"fraction", r.fraction},
      {"seed", r.master_seed},
      {"intra_split", r.intra_split},
      {"wall_time_seconds", r.wall_time_seconds},
  };
}

inline std::string sweep_to_csv(const std::vector<SweepPoint>& curve) {
  std::string out = "threshold,auc_mean,auc_std\n";
  for (const auto& p : curve) {
    out += format_double(p.threshold);
    out += ',';
    out += format_double(p.auc_mean);
    out += ',';
    out += format_double(p.auc_std);
    out += '\n';
  }
  return out;
}

inline nlohmann::json sweep_to_json(const std::vector<SweepPoint>& curve) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : curve)
    points.push_back({{"threshold", p.threshold},
                      {"auc_mean", p.auc_mean},
                      {"auc_std", p.auc_std}});
  return points;
}

inline nlohmann::json mechanism_to_json(const MechanismReport& r) {
  return {
      {"samples", r.samples},
      {"seed", r.master_seed},
      {"ring",
       {{"score_1_3", r.ring_score_13},
        {"score_3_6", r.ring_score_36},
        {"ratio_36_over_13", r.ring_ratio}}},
      {"net_b",
       {{"score_1_3", r.net_b_score_13},
        {"score_3_5", r.net_b_score_35},
        {"ratio_13_over_35", r.net_b_ratio}}},
      {"net_c",
       {{"score_1_3", r.net_c_score_13},
        {"score_3_5", r.net_c_score_35},
        {"ratio_35_over_13", r.net_c_ratio}}},
  };
}

}  // namespace fbm
