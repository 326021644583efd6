#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fbm/graph.hpp"
#include "fbm/logspace.hpp"
#include "fbm/parallel.hpp"
#include "fbm/partition.hpp"
#include "fbm/random.hpp"

namespace fbm {

/// Log-space numerator/denominator of one Beta-integral sample term.
struct PairTerms {
  double log_numerator = kNegInf;
  double log_denominator = kNegInf;

  double ratio() const { return std::exp(log_numerator - log_denominator); }
};

/// Dense-block sample term for a pair inside a community with n pairs and m
/// intra edges:
///   numerator   = Beta(n+2, n-m+1) = integral of p^(n+1) (1-p)^(n-m)
///   denominator = Beta(n+1, n-m+1) = integral of p^n     (1-p)^(n-m)
/// The per-sample ratio collapses to (n+1)/(2n-m+2).
inline PairTerms intra_terms(long long n_pairs, long long m_edges) {
  if (n_pairs < 1) throw std::invalid_argument("intra_terms: n_pairs must be >= 1");
  if (m_edges < 0 || m_edges > n_pairs)
    throw std::invalid_argument("intra_terms: corrupt block stats (m > n)");
  const auto n = static_cast<std::uint64_t>(n_pairs);
  const auto m = static_cast<std::uint64_t>(m_edges);
  return {log_beta_int(n + 2, n - m + 1), log_beta_int(n + 1, n - m + 1)};
}

/// Sparse-regime sample term for a pair whose context has n pair slots and m
/// edges (cross-block, or a residual block's own pair count with m = 0):
///   numerator   = Beta(m+2, n+1) = integral of p^(m+1) (1-p)^n
///   denominator = Beta(m+1, n+1) = integral of p^m     (1-p)^n
/// The per-sample ratio collapses to (m+1)/(n+m+2).
inline PairTerms inter_terms(long long n_cross, long long m_cross) {
  if (n_cross < 1) throw std::invalid_argument("inter_terms: n_cross must be >= 1");
  if (m_cross < 0) throw std::invalid_argument("inter_terms: negative edge count");
  const auto n = static_cast<std::uint64_t>(n_cross);
  const auto m = static_cast<std::uint64_t>(m_cross);
  return {log_beta_int(m + 2, n + 1), log_beta_int(m + 1, n + 1)};
}

struct ScoreMeta {
  std::string method = "fbm";
  double threshold = 1.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

struct ScoreEntry {
  NodeId a = 0;
  NodeId b = 0;
  double score = 0.0;

  friend bool operator==(const ScoreEntry&, const ScoreEntry&) = default;
};

/// Scores for every candidate pair (unordered non-adjacent pairs of the
/// graph scored on), entries sorted by (a, b).
class ScoreTable {
 public:
  ScoreTable() = default;
  ScoreTable(std::vector<ScoreEntry> entries, ScoreMeta meta)
      : entries_(std::move(entries)), meta_(std::move(meta)) {}

  const std::vector<ScoreEntry>& entries() const { return entries_; }
  const ScoreMeta& meta() const { return meta_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  double score(NodeId i, NodeId j) const {
    if (i > j) std::swap(i, j);
    auto it = std::lower_bound(entries_.begin(), entries_.end(),
                               std::make_pair(i, j), [](const ScoreEntry& e, const std::pair<NodeId, NodeId>& p) {
                                 return std::make_pair(e.a, e.b) < p;
                               });
    if (it == entries_.end() || it->a != i || it->b != j)
      throw std::out_of_range("ScoreTable: pair (" + std::to_string(i) + "," +
                              std::to_string(j) + ") not scored");
    return it->score;
  }

 private:
  std::vector<ScoreEntry> entries_;
  ScoreMeta meta_;
};

namespace detail {

/// Per-partition lookup of sample terms by block pair, shared read-only by
/// the accumulation workers. Entry [b][b] covers pairs inside block b
/// (dense form for communities, sparse form with the block's own pair count
/// for residual blocks); entry [b1][b2] covers straddling pairs.
struct SampleTerms {
  const Partition* partition = nullptr;
  std::size_t block_count = 0;
  std::vector<PairTerms> terms;  // block_count x block_count, row-major

  const PairTerms& at(int b1, int b2) const {
    return terms[static_cast<std::size_t>(b1) * block_count +
                 static_cast<std::size_t>(b2)];
  }
};

inline SampleTerms make_sample_terms(const Graph& g, const Partition& p) {
  SampleTerms st;
  st.partition = &p;
  st.block_count = p.blocks.size();
  st.terms.resize(st.block_count * st.block_count);
  const auto cross = p.cross_edge_counts(g);
  for (std::size_t a = 0; a < st.block_count; ++a) {
    const Block& ba = p.blocks[a];
    if (ba.pair_count >= 1) {
      st.terms[a * st.block_count + a] =
          ba.kind == BlockKind::community
              ? intra_terms(ba.pair_count, ba.intra_edges)
              : inter_terms(ba.pair_count, 0);
    }
    for (std::size_t b = a + 1; b < st.block_count; ++b) {
      const long long pairs = ba.size() * p.blocks[b].size();
      const PairTerms t = inter_terms(pairs, cross[a][b]);
      st.terms[a * st.block_count + b] = t;
      st.terms[b * st.block_count + a] = t;
    }
  }
  return st;
}

}  // namespace detail

/// Running log-sum-exp of sample numerators and denominators for every
/// candidate pair. Candidate pairs are the unordered non-adjacent pairs of
/// the graph, enumerated in index order.
///
/// Cells live in a dense upper-triangular array for graphs of up to 2,000
/// nodes and in a hash map above that.
class PairAccumulator {
 public:
  static constexpr NodeId kDenseNodeLimit = 2000;

  explicit PairAccumulator(const Graph& g) : graph_(&g) {
    const NodeId n = g.node_count();
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = i + 1; j < n; ++j)
        if (!g.has_edge(i, j)) candidates_.emplace_back(i, j);
    use_dense_ = n <= kDenseNodeLimit;
    if (use_dense_) {
      if (n >= 2) dense_.resize(static_cast<std::size_t>(n) * (n - 1) / 2);
    } else {
      map_.reserve(candidates_.size());
      for (const auto& [i, j] : candidates_) map_.emplace(pack(i, j), Cell{});
    }
  }

  const Graph& graph() const { return *graph_; }
  const std::vector<Edge>& candidates() const { return candidates_; }
  int sample_count() const { return sample_count_; }

  /// Fold one partition sample into every candidate pair.
  void accumulate(const Partition& p) {
    check_partition(p);
    const auto st = detail::make_sample_terms(*graph_, p);
    add_range(st, 0, candidates_.size());
    ++sample_count_;
  }

  /// Fold a sequence of samples, sharding candidate pairs across workers.
  /// Every pair folds its samples in sequence order, so the result is
  /// bit-identical to serial accumulation for any worker count.
  void accumulate_samples(std::span<const Partition> samples, int workers = 1) {
    for (const auto& p : samples) check_partition(p);
    std::vector<detail::SampleTerms> terms(samples.size());
    parallel_for(samples.size(), workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k)
        terms[k] = detail::make_sample_terms(*graph_, samples[k]);
    });
    parallel_for(candidates_.size(), workers,
                 [&](std::size_t begin, std::size_t end) {
                   for (const auto& st : terms) add_range(st, begin, end);
                 });
    sample_count_ += static_cast<int>(samples.size());
  }

  /// Ratio of the accumulated sums: score = exp(lse_num - lse_den), a
  /// sample-likelihood-weighted mean of the per-sample ratios, in (0,1).
  ScoreTable finalize(ScoreMeta meta = {}) const {
    if (sample_count_ < 1 && !candidates_.empty())
      throw std::logic_error("PairAccumulator: no samples accumulated");
    meta.samples = sample_count_;
    std::vector<ScoreEntry> entries;
    entries.reserve(candidates_.size());
    for (const auto& [i, j] : candidates_) {
      const Cell& c = cell(i, j);
      entries.push_back({i, j, std::exp(c.log_num - c.log_den)});
    }
    return ScoreTable(std::move(entries), std::move(meta));
  }

 private:
  struct Cell {
    double log_num = kNegInf;
    double log_den = kNegInf;
  };

  static std::uint64_t pack(NodeId i, NodeId j) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
           static_cast<std::uint32_t>(j);
  }

  std::size_t dense_index(NodeId i, NodeId j) const {
    const auto n = static_cast<std::size_t>(graph_->node_count());
    const auto a = static_cast<std::size_t>(i);
    const auto b = static_cast<std::size_t>(j);
    return a * (2 * n - a - 1) / 2 + (b - a - 1);
  }

  Cell& cell(NodeId i, NodeId j) {
    if (use_dense_) return dense_[dense_index(i, j)];
    return map_.find(pack(i, j))->second;
  }
  const Cell& cell(NodeId i, NodeId j) const {
    return const_cast<PairAccumulator*>(this)->cell(i, j);
  }

  void check_partition(const Partition& p) const {
    if (static_cast<NodeId>(p.block_of.size()) != graph_->node_count())
      throw std::invalid_argument("accumulate: partition does not cover the graph");
    for (int b : p.block_of)
      if (b < 0) throw std::invalid_argument("accumulate: node not assigned to a block");
  }

  void add_range(const detail::SampleTerms& st, std::size_t begin, std::size_t end) {
    const auto& block_of = st.partition->block_of;
    for (std::size_t idx = begin; idx < end; ++idx) {
      const auto [i, j] = candidates_[idx];
      const PairTerms& t = st.at(block_of[i], block_of[j]);
      Cell& c = cell(i, j);
      c.log_num = log_add_exp(c.log_num, t.log_numerator);
      c.log_den = log_add_exp(c.log_den, t.log_denominator);
    }
  }

  const Graph* graph_;
  std::vector<Edge> candidates_;
  bool use_dense_ = true;
  std::vector<Cell> dense_;
  std::unordered_map<std::uint64_t, Cell> map_;
  int sample_count_ = 0;
};

/// Full prediction pipeline: sample partitions, accumulate the Beta-integral
/// terms for every candidate pair, finalize to scores. Deterministic for
/// fixed inputs, independent of worker count.
inline ScoreTable predict(const Graph& g, double threshold, int samples,
                          std::uint64_t master_seed, int workers = 1) {
  if (g.node_count() == 0)
    throw std::invalid_argument("predict: empty graph");
  PairAccumulator acc(g);
  ScoreMeta meta{"fbm", threshold, samples, master_seed};
  if (acc.candidates().empty()) return ScoreTable({}, std::move(meta));
  const auto parts = sample_partitions(g, threshold, samples, master_seed, workers);
  acc.accumulate_samples(parts, workers);
  return acc.finalize(std::move(meta));
}

}  // namespace fbm
