#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fbm/estimator.hpp"
#include "fbm/graph.hpp"

namespace fbm {

/// Structural similarity indices scored over the candidate pairs. Unlike the
/// block-model scores these need not lie in (0,1), only be finite and
/// non-negative.
enum class BaselineMethod {
  common_neighbors,
  jaccard,
  adamic_adar,
  resource_allocation,
};

inline std::string to_string(BaselineMethod m) {
  switch (m) {
    case BaselineMethod::common_neighbors: return "common_neighbors";
    case BaselineMethod::jaccard: return "jaccard";
    case BaselineMethod::adamic_adar: return "adamic_adar";
    case BaselineMethod::resource_allocation: return "resource_allocation";
  }
  return "common_neighbors";
}

inline std::optional<BaselineMethod> baseline_from_string(std::string_view name) {
  if (name == "cn" || name == "common_neighbors") return BaselineMethod::common_neighbors;
  if (name == "jaccard") return BaselineMethod::jaccard;
  if (name == "aa" || name == "adamic_adar") return BaselineMethod::adamic_adar;
  if (name == "ra" || name == "resource_allocation") return BaselineMethod::resource_allocation;
  return std::nullopt;
}

namespace detail {

inline std::vector<NodeId> sorted_intersection(const std::vector<NodeId>& a,
                                               const std::vector<NodeId>& b) {
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace detail

/// Score every non-adjacent pair with the chosen similarity index.
inline ScoreTable score_baseline(const Graph& g, BaselineMethod method) {
  if (g.node_count() == 0)
    throw std::invalid_argument("score_baseline: empty graph");
  std::vector<ScoreEntry> entries;
  const NodeId n = g.node_count();
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (g.has_edge(i, j)) continue;
      const auto common = detail::sorted_intersection(g.neighbors(i), g.neighbors(j));
      double score = 0.0;
      switch (method) {
        case BaselineMethod::common_neighbors:
          score = static_cast<double>(common.size());
          break;
        case BaselineMethod::jaccard: {
          const std::size_t uni =
              g.neighbors(i).size() + g.neighbors(j).size() - common.size();
          score = uni == 0 ? 0.0
                           : static_cast<double>(common.size()) /
                                 static_cast<double>(uni);
          break;
        }
        case BaselineMethod::adamic_adar:
          for (NodeId z : common) {
            // a common neighbor is adjacent to both endpoints
            assert(g.degree(z) >= 2);
            if (g.degree(z) >= 2) score += 1.0 / std::log(g.degree(z));
          }
          break;
        case BaselineMethod::resource_allocation:
          for (NodeId z : common) score += 1.0 / g.degree(z);
          break;
      }
      entries.push_back({i, j, score});
    }
  }
  ScoreMeta meta;
  meta.method = to_string(method);
  return ScoreTable(std::move(entries), std::move(meta));
}

}  // namespace fbm
