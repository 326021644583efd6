#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fbm/graph.hpp"
#include "fbm/parallel.hpp"
#include "fbm/random.hpp"

namespace fbm {

enum class BlockKind { community, residual };

/// One block of a partition. Communities satisfy density >= threshold with at
/// least two nodes and one edge; residual blocks have no intra edges at all.
struct Block {
  std::vector<NodeId> nodes;   // sorted ascending
  long long intra_edges = 0;   // m: edges with both endpoints inside
  long long pair_count = 0;    // n: |nodes|(|nodes|-1)/2
  BlockKind kind = BlockKind::residual;

  long long size() const { return static_cast<long long>(nodes.size()); }
};

/// Disjoint blocks covering every node of the source graph, produced by one
/// seeded run of the greedy block partitioning. Immutable once built.
struct Partition {
  std::vector<Block> blocks;
  std::vector<int> block_of;   // node index -> block index
  double threshold = 1.0;
  std::uint64_t seed = 0;

  /// Crossing-edge counts m[b1][b2] for every block pair, from the graph the
  /// partition was built on.
  std::vector<std::vector<long long>> cross_edge_counts(const Graph& g) const {
    const auto k = blocks.size();
    std::vector<std::vector<long long>> cross(k, std::vector<long long>(k, 0));
    for (const auto& [i, j] : g.edges()) {
      const int bi = block_of[i];
      const int bj = block_of[j];
      if (bi != bj) {
        ++cross[bi][bj];
        ++cross[bj][bi];
      }
    }
    return cross;
  }
};

/// Split the node set in two, each node choosing a side by fair coin. If
/// either side comes out empty, one uniformly chosen node is reassigned to it.
inline std::pair<std::vector<NodeId>, std::vector<NodeId>> random_bipartition(
    const Graph& g, Rng& rng) {
  const NodeId n = g.node_count();
  if (n < 2)
    throw std::invalid_argument("random_bipartition: need at least 2 nodes");
  std::vector<std::uint8_t> side(n);
  for (NodeId v = 0; v < n; ++v) side[v] = rng.coin() ? 1 : 0;
  std::vector<NodeId> first, second;
  for (NodeId v = 0; v < n; ++v) (side[v] ? second : first).push_back(v);
  if (first.empty() || second.empty()) {
    auto& from = first.empty() ? second : first;
    auto& to = first.empty() ? first : second;
    const auto pick = rng.uniform_index(from.size());
    to.push_back(from[pick]);
    from.erase(from.begin() + static_cast<std::ptrdiff_t>(pick));
    std::sort(to.begin(), to.end());
  }
  return {std::move(first), std::move(second)};
}

/// Greedy dense-core extraction: repeatedly remove a minimum-degree node
/// (degree within the current working subgraph, ties broken uniformly by the
/// rng) until the working subgraph's link density reaches the threshold.
/// Returns the surviving node set, sorted.
///
/// The input must contain at least one induced edge; the result then has at
/// least two nodes and one edge. An optional trace receives the removed nodes
/// in order, for verification.
inline std::vector<NodeId> community_find(const Graph& g,
                                          std::span<const NodeId> nodes,
                                          double threshold, Rng& rng,
                                          std::vector<NodeId>* removal_trace = nullptr) {
  std::vector<NodeId> active(nodes.begin(), nodes.end());
  std::sort(active.begin(), active.end());

  std::vector<std::uint8_t> in_set(g.node_count(), 0);
  for (NodeId v : active) in_set[v] = 1;
  std::vector<int> degree(g.node_count(), 0);
  long long edges = 0;
  for (NodeId v : active) {
    for (NodeId u : g.neighbors(v)) {
      if (in_set[u]) {
        ++degree[v];
        if (u > v) ++edges;
      }
    }
  }
  if (edges == 0)
    throw std::invalid_argument("community_find: working subgraph has no edges");

  std::vector<NodeId> ties;
  for (;;) {
    const auto n = static_cast<long long>(active.size());
    if (n < 2) break;  // vacuously complete
    const long long pairs = n * (n - 1) / 2;
    const double density =
        static_cast<double>(edges) / static_cast<double>(pairs);
    if (density >= threshold) break;

    int min_degree = g.node_count();
    for (NodeId v : active) min_degree = std::min(min_degree, degree[v]);
    ties.clear();
    for (NodeId v : active)
      if (degree[v] == min_degree) ties.push_back(v);
    const NodeId victim = ties[rng.uniform_index(ties.size())];

    in_set[victim] = 0;
    edges -= degree[victim];
    for (NodeId u : g.neighbors(victim))
      if (in_set[u]) --degree[u];
    active.erase(std::find(active.begin(), active.end(), victim));
    if (removal_trace) removal_trace->push_back(victim);
  }
  return active;
}

/// One seeded partition: random bipartition, then within each side extract
/// communities until the side's working graph is edgeless. Leftover nodes of
/// each side form that side's residual block (omitted when empty, so a
/// partition carries at most two residual blocks).
inline Partition partition_once(const Graph& g, double threshold,
                                std::uint64_t seed) {
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw std::invalid_argument("partition_once: threshold must be in (0,1]");

  Partition p;
  p.threshold = threshold;
  p.seed = seed;
  p.block_of.assign(g.node_count(), -1);

  auto emit = [&](std::vector<NodeId> nodes, BlockKind kind) {
    Block b;
    std::sort(nodes.begin(), nodes.end());
    b.intra_edges = induced_edge_count(g, nodes);
    const auto sz = static_cast<long long>(nodes.size());
    b.pair_count = sz * (sz - 1) / 2;
    b.kind = kind;
    b.nodes = std::move(nodes);
    for (NodeId v : b.nodes) p.block_of[v] = static_cast<int>(p.blocks.size());
    p.blocks.push_back(std::move(b));
  };

  if (g.node_count() == 0) return p;
  if (g.node_count() == 1) {
    emit({0}, BlockKind::residual);
    return p;
  }

  Rng rng(seed);
  auto [side1, side2] = random_bipartition(g, rng);
  for (auto* side : {&side1, &side2}) {
    std::vector<NodeId> work = std::move(*side);
    while (induced_edge_count(g, work) > 0) {
      std::vector<NodeId> community = community_find(g, work, threshold, rng);
      std::vector<std::uint8_t> taken(g.node_count(), 0);
      for (NodeId v : community) taken[v] = 1;
      std::erase_if(work, [&](NodeId v) { return taken[v] != 0; });
      emit(std::move(community), BlockKind::community);
    }
    if (!work.empty()) emit(std::move(work), BlockKind::residual);
  }
  return p;
}

/// `count` independent partitions; sample k is seeded with
/// derive_seed(master_seed, k), so the sequence is reproducible for any
/// worker count and may be generated in parallel.
inline std::vector<Partition> sample_partitions(const Graph& g, double threshold,
                                                int count, std::uint64_t master_seed,
                                                int workers = 1) {
  if (count < 1)
    throw std::invalid_argument("sample_partitions: count must be >= 1");
  std::vector<Partition> samples(static_cast<std::size_t>(count));
  parallel_for(static_cast<std::size_t>(count), workers,
               [&](std::size_t begin, std::size_t end) {
                 for (std::size_t k = begin; k < end; ++k)
                   samples[k] = partition_once(
                       g, threshold, derive_seed(master_seed, k));
               });
  return samples;
}

/// k x k link-density matrix of a partition: diagonal entries are intra-block
/// densities (vacuous 1.0 for singleton blocks, 0.0 for residual blocks with
/// two or more nodes), off-diagonal entries are cross-block densities.
inline std::vector<std::vector<double>> partition_density_matrix(
    const Graph& g, const Partition& p) {
  const auto k = p.blocks.size();
  std::vector<std::vector<double>> mat(k, std::vector<double>(k, 0.0));
  const auto cross = p.cross_edge_counts(g);
  for (std::size_t a = 0; a < k; ++a) {
    const Block& ba = p.blocks[a];
    mat[a][a] = ba.pair_count == 0
                    ? 1.0
                    : static_cast<double>(ba.intra_edges) /
                          static_cast<double>(ba.pair_count);
    for (std::size_t b = a + 1; b < k; ++b) {
      const double pairs = static_cast<double>(ba.size()) *
                           static_cast<double>(p.blocks[b].size());
      mat[a][b] = mat[b][a] = static_cast<double>(cross[a][b]) / pairs;
    }
  }
  return mat;
}

}  // namespace fbm
