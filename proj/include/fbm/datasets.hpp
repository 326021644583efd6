#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "fbm/graph.hpp"

namespace fbm::datasets {

/// Zachary's karate club friendship network (34 nodes, 78 edges), 1-based
/// node labels. Public-domain classic used throughout the tests and docs.
inline constexpr std::string_view kKarateEdges = R"(# karate club, 34 nodes / 78 edges
2 1
3 1
3 2
4 1
4 2
4 3
5 1
6 1
7 1
7 5
7 6
8 1
8 2
8 3
8 4
9 1
9 3
10 3
11 1
11 5
11 6
12 1
13 1
13 4
14 1
14 2
14 3
14 4
17 6
17 7
18 1
18 2
20 1
20 2
22 1
22 2
26 24
26 25
28 3
28 24
28 25
29 3
30 24
30 27
31 2
31 9
32 1
32 25
32 26
32 29
33 3
33 9
33 15
33 16
33 19
33 21
33 23
33 24
33 30
33 31
33 32
34 9
34 10
34 14
34 15
34 16
34 19
34 20
34 21
34 23
34 24
34 27
34 28
34 29
34 30
34 31
34 32
34 33
)";

/// Six-node ring; candidate pairs (1,3) and (3,6) probe the clique-formation
/// ordering.
inline constexpr std::string_view kRingSixEdges = R"(1 2
2 3
3 4
4 5
5 6
6 1
)";

/// Five-node net where adding (1,3) completes the triangle {1,2,3} and adding
/// (3,5) completes the four-clique {2,3,4,5}.
inline constexpr std::string_view kMechBEdges = R"(1 2
2 3
2 4
2 5
3 4
4 5
)";

/// Best-effort stand-in for the third mechanism net: adding (3,5) completes
/// two triangles, adding (1,3) completes one. The source description of this
/// net is internally inconsistent, so its ratio is reported but never
/// asserted.
inline constexpr std::string_view kMechCEdges = R"(1 2
1 5
2 3
2 4
2 5
3 4
4 5
)";

/// Synthetic demo: three dense groups sparsely interconnected, plus pendant
/// leaf nodes that no community should absorb.
inline constexpr std::string_view kThreeGroupsEdges = R"(# three 4..5-cliques, sparse bridges, pendant leaves
a1 a2
a1 a3
a1 a4
a1 a5
a2 a3
a2 a4
a2 a5
a3 a4
a3 a5
a4 a5
b1 b2
b1 b3
b1 b4
b2 b3
b2 b4
b3 b4
c1 c2
c1 c3
c1 c4
c2 c3
c2 c4
c3 c4
a1 b1
b2 c1
a2 c2
l1 a3
l2 b3
l3 c3
l4 a1
)";

struct BuiltinDataset {
  std::string_view name;
  std::string_view edges;
};

inline constexpr BuiltinDataset kBuiltins[] = {
    {"karate", kKarateEdges},
    {"ring6", kRingSixEdges},
    {"mech_b", kMechBEdges},
    {"mech_c", kMechCEdges},
    {"three_groups", kThreeGroupsEdges},
};

inline std::optional<std::string_view> builtin_edges(std::string_view name) {
  for (const auto& d : kBuiltins)
    if (d.name == name) return d.edges;
  return std::nullopt;
}

inline Graph builtin_graph(std::string_view name) {
  const auto edges = builtin_edges(name);
  if (!edges) throw std::invalid_argument("unknown builtin dataset: " + std::string(name));
  return parse_edge_list(*edges);
}

}  // namespace fbm::datasets
