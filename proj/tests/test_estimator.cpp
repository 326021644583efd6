#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fbm/datasets.hpp"
#include "fbm/estimator.hpp"
#include "fbm/graph.hpp"
#include "fbm/logspace.hpp"
#include "oracles.hpp"

using namespace fbm;

TEST_CASE("intra_terms closed form") {
  SECTION("worked values") {
    REQUIRE(intra_terms(3, 3).ratio() == Catch::Approx(4.0 / 5.0).epsilon(1e-12));
    REQUIRE(intra_terms(1, 1).ratio() == Catch::Approx(2.0 / 3.0).epsilon(1e-12));
    // the dense form at m = 0 degenerates to 1/2; residual blocks therefore
    // use the sparse form instead (see PairAccumulator)
    REQUIRE(intra_terms(6, 0).ratio() == Catch::Approx(0.5).epsilon(1e-12));
  }
  SECTION("ratio equals (n+1)/(2n-m+2) across random n, m") {
    Rng rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
      const long long n = 1 + static_cast<long long>(rng.uniform_index(500));
      const long long m = static_cast<long long>(rng.uniform_index(
          static_cast<std::size_t>(n) + 1));
      const double expected = static_cast<double>(n + 1) /
                              static_cast<double>(2 * n - m + 2);
      REQUIRE(intra_terms(n, m).ratio() ==
              Catch::Approx(expected).epsilon(1e-12));
    }
  }
  SECTION("numerator never exceeds denominator") {
    Rng rng(12);
    for (int trial = 0; trial < 500; ++trial) {
      const long long n = 1 + static_cast<long long>(rng.uniform_index(2000));
      const long long m = static_cast<long long>(rng.uniform_index(
          static_cast<std::size_t>(n) + 1));
      const PairTerms t = intra_terms(n, m);
      REQUIRE(t.log_numerator <= t.log_denominator);
      REQUIRE(std::isfinite(t.log_numerator));
      REQUIRE(std::isfinite(t.log_denominator));
    }
  }
  SECTION("strictly increasing in m at fixed n") {
    for (long long n : {1LL, 4LL, 40LL, 400LL}) {
      double prev = -1.0;
      for (long long m = 0; m <= n; ++m) {
        const double r = intra_terms(n, m).ratio();
        REQUIRE(r > prev);
        prev = r;
      }
    }
  }
  SECTION("preconditions") {
    REQUIRE_THROWS_AS(intra_terms(0, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(intra_terms(3, 4), std::invalid_argument);
    REQUIRE_THROWS_AS(intra_terms(3, -1), std::invalid_argument);
  }
}

TEST_CASE("inter_terms closed form") {
  SECTION("worked values") {
    REQUIRE(inter_terms(6, 0).ratio() == Catch::Approx(1.0 / 8.0).epsilon(1e-12));
    REQUIRE(inter_terms(6, 1).ratio() == Catch::Approx(2.0 / 9.0).epsilon(1e-12));
    for (long long n : {1LL, 5LL, 50LL})  // m = n couples at density one
      REQUIRE(inter_terms(n, n).ratio() == Catch::Approx(0.5).epsilon(1e-12));
  }
  SECTION("ratio equals (m+1)/(n+m+2) across random n, m") {
    Rng rng(13);
    for (int trial = 0; trial < 2000; ++trial) {
      const long long n = 1 + static_cast<long long>(rng.uniform_index(500));
      const long long m = static_cast<long long>(rng.uniform_index(
          static_cast<std::size_t>(n) + 1));
      const double expected =
          static_cast<double>(m + 1) / static_cast<double>(n + m + 2);
      REQUIRE(inter_terms(n, m).ratio() ==
              Catch::Approx(expected).epsilon(1e-12));
    }
  }
  SECTION("monotone in m and in n") {
    for (long long n : {2LL, 20LL, 200LL}) {
      REQUIRE(inter_terms(n, 1).ratio() > inter_terms(n, 0).ratio());
      REQUIRE(inter_terms(n + 1, 0).ratio() < inter_terms(n, 0).ratio());
    }
  }
  SECTION("preconditions") {
    REQUIRE_THROWS_AS(inter_terms(0, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(inter_terms(5, -1), std::invalid_argument);
  }
}

TEST_CASE("numerators match adaptive quadrature of the Beta integrals") {
  for (long long n = 1; n <= 30; ++n) {
    for (long long m = 0; m <= n; m += (n > 6 ? n / 3 : 1)) {
      const PairTerms t = intra_terms(n, m);
      const double numeric = oracles::intra_numerator_by_quadrature(n, m);
      REQUIRE(t.log_numerator ==
              Catch::Approx(std::log(numeric)).epsilon(1e-8));
    }
  }
}

TEST_CASE("log-space plumbing") {
  SECTION("log_add_exp handles the empty identity") {
    REQUIRE(log_add_exp(kNegInf, -1.5) == -1.5);
    REQUIRE(log_add_exp(-1.5, kNegInf) == -1.5);
  }
  SECTION("equal-weight samples average their ratios: 1/2 and 1/8 give 5/16") {
    const double den = -3.7;  // arbitrary shared log denominator
    const double num_a = den + std::log(0.5);
    const double num_b = den + std::log(0.125);
    const double score =
        std::exp(log_add_exp(num_a, num_b) - log_add_exp(den, den));
    REQUIRE(score == Catch::Approx(5.0 / 16.0).epsilon(1e-12));
  }
  SECTION("log_factorial agrees with lgamma beyond the table") {
    for (std::uint64_t k : {200000ULL, 1000000ULL})
      REQUIRE(log_factorial(k) ==
              Catch::Approx(std::lgamma(static_cast<double>(k) + 1.0))
                  .epsilon(1e-14));
  }
}

namespace {

// one designated block of the given nodes, everything else residual singletons
Partition manual_partition(const Graph& g, std::vector<NodeId> block_nodes,
                           BlockKind kind = BlockKind::community) {
  Partition p;
  p.block_of.assign(g.node_count(), -1);
  Block b;
  b.nodes = std::move(block_nodes);
  std::sort(b.nodes.begin(), b.nodes.end());
  b.intra_edges = induced_edge_count(g, b.nodes);
  b.pair_count = b.size() * (b.size() - 1) / 2;
  b.kind = kind;
  for (NodeId v : b.nodes) p.block_of[v] = 0;
  p.blocks.push_back(std::move(b));
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (p.block_of[v] >= 0) continue;
    p.block_of[v] = static_cast<int>(p.blocks.size());
    p.blocks.push_back({{v}, 0, 0, BlockKind::residual});
  }
  return p;
}

}  // namespace

TEST_CASE("PairAccumulator classifies pair contexts") {
  SECTION("pair inside a community block uses the dense form") {
    // path a-b-c as one block: n = 3 pairs, m = 2 edges; candidate (a,c)
    const Graph g = parse_edge_list("a b\nb c\n");
    PairAccumulator acc(g);
    acc.accumulate(manual_partition(g, {0, 1, 2}));
    const ScoreTable t = acc.finalize();
    REQUIRE(t.score(0, 2) ==
            Catch::Approx(intra_terms(3, 2).ratio()).epsilon(1e-12));
  }
  SECTION("pair inside a residual block uses the sparse form with m = 0") {
    const Graph g = parse_edge_list("a b\nc d\n");  // candidates include (a,c)
    Partition p;
    p.blocks.push_back({{0, 2}, 0, 1, BlockKind::residual});  // a with c
    p.blocks.push_back({{1}, 0, 0, BlockKind::residual});
    p.blocks.push_back({{3}, 0, 0, BlockKind::residual});
    p.block_of = {0, 1, 0, 2};
    PairAccumulator acc(g);
    acc.accumulate(p);
    REQUIRE(acc.finalize().score(0, 2) ==
            Catch::Approx(inter_terms(1, 0).ratio()).epsilon(1e-12));
  }
  SECTION("pair straddling blocks of sizes 2 and 3 with no crossing edges") {
    const Graph g = parse_edge_list("a b\nc d\nd e\nc e\n");
    Partition p;
    p.blocks.push_back({{0, 1}, 1, 1, BlockKind::community});
    p.blocks.push_back({{2, 3, 4}, 3, 3, BlockKind::community});
    p.block_of = {0, 0, 1, 1, 1};
    PairAccumulator acc(g);
    acc.accumulate(p);
    // n = 2*3 = 6 pair slots, m = 0 crossing edges: ratio 1/8
    REQUIRE(acc.finalize().score(0, 2) ==
            Catch::Approx(1.0 / 8.0).epsilon(1e-12));
  }
  SECTION("two identical samples leave the score unchanged") {
    const Graph g = parse_edge_list("a b\nb c\n");
    const Partition p = manual_partition(g, {0, 1, 2});
    PairAccumulator once(g), twice(g);
    once.accumulate(p);
    twice.accumulate(p);
    twice.accumulate(p);
    REQUIRE(twice.finalize().score(0, 2) ==
            Catch::Approx(once.finalize().score(0, 2)).epsilon(1e-15));
  }
  SECTION("finalize before any sample is an error") {
    const Graph g = parse_edge_list("a b\nb c\n");
    PairAccumulator acc(g);
    REQUIRE_THROWS_AS(acc.finalize(), std::logic_error);
  }
  SECTION("partition of a different graph is rejected") {
    const Graph g = parse_edge_list("a b\nb c\n");
    const Graph other = parse_edge_list("a b\n");
    PairAccumulator acc(g);
    REQUIRE_THROWS_AS(acc.accumulate(manual_partition(other, {0, 1})),
                      std::invalid_argument);
  }
}

TEST_CASE("finalize matches the exact-rational oracle on small graphs") {
  Rng rng(314);
  int checked_pairs = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const int nodes = 5 + static_cast<int>(rng.uniform_index(8));  // 5..12
    const long long max_edges = static_cast<long long>(nodes) * (nodes - 1) / 2;
    const long long edges = 2 + static_cast<long long>(rng.uniform_index(
                                    static_cast<std::size_t>(max_edges - 2)));
    const Graph g = oracles::random_graph(nodes, edges, rng);
    const int samples = 1 + static_cast<int>(rng.uniform_index(5));
    const auto parts = sample_partitions(g, 0.6 + 0.4 * rng.uniform01(),
                                         samples, rng.next());

    PairAccumulator acc(g);
    for (const auto& p : parts) acc.accumulate(p);
    if (acc.candidates().empty()) continue;
    const ScoreTable table = acc.finalize();
    const auto exact = oracles::exact_scores(g, parts);
    for (const auto& [pair, expected] : exact) {
      REQUIRE(table.score(pair.first, pair.second) ==
              Catch::Approx(expected).epsilon(1e-9));
      ++checked_pairs;
    }
  }
  REQUIRE(checked_pairs > 100);
}

TEST_CASE("predict") {
  SECTION("triangle has no candidate pairs") {
    const Graph g = parse_edge_list("1 2\n2 3\n3 1\n");
    const ScoreTable t = predict(g, 1.0, 5, 1);
    REQUIRE(t.empty());
  }
  SECTION("scores are probabilities and symmetric lookups agree") {
    const Graph g = datasets::builtin_graph("karate");
    const ScoreTable t = predict(g, 1.0, 25, 7);
    REQUIRE(t.size() == 561 - 78);
    for (const auto& e : t.entries()) {
      REQUIRE(e.score > 0.0);
      REQUIRE(e.score < 1.0);
      REQUIRE(t.score(e.b, e.a) == e.score);
    }
  }
  SECTION("deterministic, and identical for any worker count") {
    const Graph g = datasets::builtin_graph("karate");
    const ScoreTable serial = predict(g, 0.8, 20, 99, 1);
    const ScoreTable again = predict(g, 0.8, 20, 99, 1);
    const ScoreTable threaded = predict(g, 0.8, 20, 99, 8);
    REQUIRE(serial.entries() == again.entries());
    REQUIRE(serial.entries() == threaded.entries());
  }
  SECTION("against the rational oracle through the public pipeline") {
    const Graph g = parse_edge_list("1 2\n2 3\n3 4\n4 1\n1 3\n5 1\n");
    const int samples = 3;
    const std::uint64_t seed = 4242;
    const ScoreTable t = predict(g, 1.0, samples, seed);
    const auto parts = sample_partitions(g, 1.0, samples, seed);
    const auto exact = oracles::exact_scores(g, parts);
    REQUIRE_FALSE(exact.empty());
    for (const auto& [pair, expected] : exact)
      REQUIRE(t.score(pair.first, pair.second) ==
              Catch::Approx(expected).epsilon(1e-9));
  }
  SECTION("no numeric blowup on blocks with ten thousand pair slots") {
    // a 150-clique block has 11,175 internal pairs
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    for (int v = 0; v < 152; ++v) labels.push_back(std::to_string(v));
    for (NodeId i = 0; i < 150; ++i)
      for (NodeId j = i + 1; j < 150; ++j) edges.emplace_back(i, j);
    edges.emplace_back(150, 151);  // a detached pair supplies candidates
    const Graph g = Graph::from_index_edges(std::move(labels), edges);
    const ScoreTable t = predict(g, 1.0, 4, 5);
    REQUIRE_FALSE(t.empty());
    for (const auto& e : t.entries()) {
      REQUIRE(std::isfinite(e.score));
      REQUIRE(e.score > 0.0);
      REQUIRE(e.score < 1.0);
    }
  }
  SECTION("empty graph is rejected") {
    const Graph g;
    REQUIRE_THROWS_AS(predict(g, 1.0, 5, 1), std::invalid_argument);
  }
}

TEST_CASE("accumulator storage above the dense node limit") {
  // ring of 2,100 nodes: the pair cells move to the associative path
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  const NodeId n = PairAccumulator::kDenseNodeLimit + 100;
  for (NodeId v = 0; v < n; ++v) {
    labels.push_back(std::to_string(v));
    Edge e{v, (v + 1) % n};
    if (e.first > e.second) std::swap(e.first, e.second);
    edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  const Graph g = Graph::from_index_edges(std::move(labels), edges);

  const ScoreTable a = predict(g, 1.0, 2, 77, 1);
  const ScoreTable b = predict(g, 1.0, 2, 77, 4);
  REQUIRE(a.size() ==
          static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) - 1) / 2 -
              static_cast<std::size_t>(n));
  REQUIRE(a.entries() == b.entries());
  for (const auto& e : {a.score(0, 2), a.score(0, n / 2)}) {
    REQUIRE(std::isfinite(e));
    REQUIRE(e > 0.0);
  }
}
