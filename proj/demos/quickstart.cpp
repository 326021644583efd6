// Minimal library walkthrough: parse a graph, inspect one partition, score
// the unlinked pairs, and print the top candidates.

#include <iostream>

#include "fbm/fbm.hpp"

int main() {
  const fbm::Graph g = fbm::datasets::builtin_graph("karate");
  std::cout << "karate: " << g.node_count() << " nodes, " << g.edge_count()
            << " edges\n";

  const fbm::Partition p = fbm::partition_once(g, /*threshold=*/1.0, /*seed=*/7);
  std::cout << "one partition at threshold 1.0: " << p.blocks.size() << " blocks\n";
  for (const auto& b : p.blocks)
    std::cout << "  " << (b.kind == fbm::BlockKind::community ? "community" : "residual ")
              << "  size " << b.size() << "  m=" << b.intra_edges << "\n";

  const fbm::ScoreTable scores =
      fbm::predict(g, /*threshold=*/1.0, /*samples=*/50, /*seed=*/7);
  auto rows = scores.entries();
  std::sort(rows.begin(), rows.end(),
            [](const auto& x, const auto& y) { return x.score > y.score; });
  std::cout << "top five candidate links:\n";
  for (std::size_t i = 0; i < 5 && i < rows.size(); ++i)
    std::cout << "  (" << g.label(rows[i].a) << ", " << g.label(rows[i].b)
              << ")  " << rows[i].score << "\n";
  return 0;
}
