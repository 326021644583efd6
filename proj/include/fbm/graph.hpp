#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fbm {

using NodeId = int;
using Edge = std::pair<NodeId, NodeId>;  // canonical: first < second

/// Line-tagged error for malformed edge-list input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Immutable undirected simple graph. Nodes carry string labels mapped to
/// dense indices 0..node_count-1 in first-appearance order; adjacency lists
/// are sorted, edges are stored canonically (i < j, lexicographic). Safe for
/// concurrent reads once constructed.
class Graph {
 public:
  Graph() = default;

  /// Build from labeled endpoint pairs. Duplicate and reversed duplicate
  /// pairs collapse to a single edge; self-loops are rejected.
  static Graph from_label_pairs(
      const std::vector<std::pair<std::string, std::string>>& pairs) {
    Graph g;
    for (const auto& [a, b] : pairs) {
      if (a == b) throw std::invalid_argument("self-loop at node '" + a + "'");
      g.add_edge_by_label(a, b);
    }
    g.finish();
    return g;
  }

  /// Build on an existing label set from canonical index edges. Labels with
  /// no incident edge become isolated nodes.
  static Graph from_index_edges(std::vector<std::string> labels,
                                const std::vector<Edge>& edges) {
    Graph g;
    g.labels_ = std::move(labels);
    const auto n = static_cast<NodeId>(g.labels_.size());
    for (NodeId v = 0; v < n; ++v) g.index_.emplace(g.labels_[v], v);
    g.adjacency_.resize(g.labels_.size());
    for (const auto& [i, j] : edges) {
      if (i == j || i < 0 || j < 0 || i >= n || j >= n)
        throw std::invalid_argument("invalid index edge");
      g.adjacency_[i].push_back(j);
      g.adjacency_[j].push_back(i);
    }
    g.finish();
    return g;
  }

  NodeId node_count() const { return static_cast<NodeId>(labels_.size()); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  const std::vector<NodeId>& neighbors(NodeId v) const { return adjacency_[v]; }
  int degree(NodeId v) const { return static_cast<int>(adjacency_[v].size()); }

  bool has_edge(NodeId i, NodeId j) const {
    const auto& adj = adjacency_[i];
    return std::binary_search(adj.begin(), adj.end(), j);
  }

  const std::string& label(NodeId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<NodeId> index_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Canonical edge-list text: one "label_a label_b" line per edge, in
  /// canonical index order. Inverse of parse_edge_list on the edge set.
  std::string to_edge_list() const {
    std::string out;
    for (const auto& [i, j] : edges_) {
      out += labels_[i];
      out += ' ';
      out += labels_[j];
      out += '\n';
    }
    return out;
  }

 private:
  void add_edge_by_label(const std::string& a, const std::string& b) {
    const NodeId i = intern(a);
    const NodeId j = intern(b);
    adjacency_[i].push_back(j);
    adjacency_[j].push_back(i);
  }

  NodeId intern(const std::string& label) {
    auto [it, inserted] = index_.emplace(label, static_cast<NodeId>(labels_.size()));
    if (inserted) {
      labels_.push_back(label);
      adjacency_.emplace_back();
    }
    return it->second;
  }

  // Sort adjacency, drop duplicates, rebuild the canonical edge vector.
  void finish() {
    edges_.clear();
    for (NodeId v = 0; v < node_count(); ++v) {
      auto& adj = adjacency_[v];
      std::sort(adj.begin(), adj.end());
      adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
      for (NodeId u : adj)
        if (v < u) edges_.emplace_back(v, u);
    }
  }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<Edge> edges_;
};

/// Parse whitespace-separated edge-list text. Lines starting with '#' and
/// blank lines are ignored; every other line must hold exactly two node
/// labels. Self-loops and malformed lines raise ParseError with the
/// offending 1-based line number.
inline Graph parse_edge_list(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;          // blank
    if (a.front() == '#') continue;    // comment
    if (!(ls >> b)) throw ParseError(lineno, "expected two node labels");
    if (ls >> extra) throw ParseError(lineno, "expected two node labels");
    if (a == b) throw ParseError(lineno, "self-loop at node '" + a + "'");
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return Graph::from_label_pairs(pairs);
}

inline Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

/// Copy of g with the given edges removed. Node set, labels and indexing are
/// preserved, so indices remain comparable across the two graphs.
inline Graph remove_edges(const Graph& g, std::span<const Edge> removed) {
  std::vector<Edge> keep;
  keep.reserve(g.edge_count());
  auto canon = [](Edge e) {
    if (e.first > e.second) std::swap(e.first, e.second);
    return e;
  };
  std::vector<Edge> gone(removed.begin(), removed.end());
  for (auto& e : gone) e = canon(e);
  std::sort(gone.begin(), gone.end());
  for (const auto& e : g.edges())
    if (!std::binary_search(gone.begin(), gone.end(), e)) keep.push_back(e);
  return Graph::from_index_edges(g.labels(), keep);
}

/// Number of edges with both endpoints in `nodes`.
inline long long induced_edge_count(const Graph& g, std::span<const NodeId> nodes) {
  std::vector<std::uint8_t> in_set(g.node_count(), 0);
  for (NodeId v : nodes) in_set[v] = 1;
  long long count = 0;
  for (NodeId v : nodes)
    for (NodeId u : g.neighbors(v))
      if (u > v && in_set[u]) ++count;
  return count;
}

/// Number of edges with one endpoint in `a` and the other in `b`.
inline long long cross_edge_count(const Graph& g, std::span<const NodeId> a,
                                  std::span<const NodeId> b) {
  std::vector<std::uint8_t> in_b(g.node_count(), 0);
  for (NodeId v : b) in_b[v] = 1;
  long long count = 0;
  for (NodeId v : a)
    for (NodeId u : g.neighbors(v))
      if (in_b[u]) ++count;
  return count;
}

/// Intra-block link density: induced edges over |nodes|(|nodes|-1)/2.
/// Blocks with fewer than two nodes are vacuously complete (1.0), which keeps
/// the greedy peeling loop well-defined at its shrink limit.
inline double block_density(const Graph& g, std::span<const NodeId> nodes) {
  const auto n = static_cast<long long>(nodes.size());
  if (n < 2) return 1.0;
  const long long pairs = n * (n - 1) / 2;
  return static_cast<double>(induced_edge_count(g, nodes)) /
         static_cast<double>(pairs);
}

/// Connecting density between two disjoint blocks: crossing edges over
/// |a|*|b|.
inline double cross_density(const Graph& g, std::span<const NodeId> a,
                            std::span<const NodeId> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("cross_density: empty block");
  std::vector<std::uint8_t> seen(g.node_count(), 0);
  for (NodeId v : a) seen[v] = 1;
  for (NodeId v : b)
    if (seen[v])
      throw std::invalid_argument("cross_density: blocks overlap at node '" +
                                  g.label(v) + "'");
  const auto pairs = static_cast<double>(a.size()) * static_cast<double>(b.size());
  return static_cast<double>(cross_edge_count(g, a, b)) / pairs;
}

namespace detail {

inline std::vector<int> component_labels(const Graph& g, int* component_count) {
  std::vector<int> comp(g.node_count(), -1);
  int next = 0;
  std::deque<NodeId> queue;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    queue.push_back(s);
    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop_front();
      for (NodeId u : g.neighbors(v)) {
        if (comp[u] < 0) {
          comp[u] = next;
          queue.push_back(u);
        }
      }
    }
    ++next;
  }
  *component_count = next;
  return comp;
}

}  // namespace detail

/// Induced subgraph on the largest connected component, re-indexed densely in
/// original index order. Size ties break toward the component containing the
/// smallest original index. Idempotent; the empty graph maps to itself.
inline Graph giant_component(const Graph& g) {
  if (g.node_count() == 0) return g;
  int ncomp = 0;
  const std::vector<int> comp = detail::component_labels(g, &ncomp);
  std::vector<long long> size(ncomp, 0);
  for (NodeId v = 0; v < g.node_count(); ++v) ++size[comp[v]];
  // components are numbered by smallest contained index, so the first
  // maximal one is also the tie-break winner
  int best = 0;
  for (int c = 1; c < ncomp; ++c)
    if (size[c] > size[best]) best = c;

  std::vector<std::string> labels;
  std::vector<NodeId> remap(g.node_count(), -1);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (comp[v] == best) {
      remap[v] = static_cast<NodeId>(labels.size());
      labels.push_back(g.label(v));
    }
  }
  std::vector<Edge> edges;
  for (const auto& [i, j] : g.edges())
    if (comp[i] == best && comp[j] == best)
      edges.emplace_back(remap[i], remap[j]);
  return Graph::from_index_edges(std::move(labels), edges);
}

/// Summary statistics of a connected graph.
struct GraphStats {
  long long nodes = 0;
  long long edges = 0;
  double density = 0.0;        // 2|E| / (|V|(|V|-1))
  double clustering = 0.0;     // mean local clustering over nodes of degree >= 2
  double avg_degree = 0.0;     // 2|E| / |V|
  double avg_distance = 0.0;   // mean shortest-path length over unordered pairs
};

/// Compute GraphStats. Expects a connected graph (apply giant_component
/// first); unreachable pairs are excluded from the distance mean.
///
/// The clustering coefficient averages local values over nodes of degree at
/// least two; degree-0/1 nodes have no defined local clustering and are left
/// out of the mean.
inline GraphStats graph_stats(const Graph& g) {
  GraphStats s;
  s.nodes = g.node_count();
  s.edges = static_cast<long long>(g.edge_count());
  if (s.nodes >= 2)
    s.density = 2.0 * static_cast<double>(s.edges) /
                (static_cast<double>(s.nodes) * static_cast<double>(s.nodes - 1));
  if (s.nodes >= 1)
    s.avg_degree = 2.0 * static_cast<double>(s.edges) / static_cast<double>(s.nodes);

  double cc_sum = 0.0;
  long long cc_nodes = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto& adj = g.neighbors(v);
    const auto k = static_cast<long long>(adj.size());
    if (k < 2) continue;
    long long wedges = 0;
    for (std::size_t x = 0; x < adj.size(); ++x)
      for (std::size_t y = x + 1; y < adj.size(); ++y)
        if (g.has_edge(adj[x], adj[y])) ++wedges;
    cc_sum += 2.0 * static_cast<double>(wedges) / static_cast<double>(k * (k - 1));
    ++cc_nodes;
  }
  if (cc_nodes > 0) s.clustering = cc_sum / static_cast<double>(cc_nodes);

  long long dist_sum = 0;
  long long dist_pairs = 0;
  std::vector<int> dist(g.node_count());
  std::deque<NodeId> queue;
  for (NodeId src = 0; src < g.node_count(); ++src) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    queue.assign(1, src);
    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop_front();
      for (NodeId u : g.neighbors(v)) {
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          queue.push_back(u);
        }
      }
    }
    for (NodeId v = src + 1; v < g.node_count(); ++v) {
      if (dist[v] > 0) {
        dist_sum += dist[v];
        ++dist_pairs;
      }
    }
  }
  if (dist_pairs > 0)
    s.avg_distance = static_cast<double>(dist_sum) / static_cast<double>(dist_pairs);
  return s;
}

}  // namespace fbm
