#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "graphon/errors.hpp"
#include "graphon/rng.hpp"
#include "graphon/sampler.hpp"

using namespace graphon;

namespace {

SampledGraph from_dense(const std::vector<std::vector<int>>& adj) {
  SampledGraph G;
  G.n = static_cast<int>(adj.size());
  G.words = (G.n + 63) / 64;
  G.rows.assign(static_cast<std::size_t>(G.n) * G.words, 0);
  for (int i = 0; i < G.n; ++i)
    for (int j = 0; j < G.n; ++j)
      if (adj[i][j]) G.rows[static_cast<std::size_t>(i) * G.words + j / 64] |= 1ULL << (j % 64);
  return G;
}

std::vector<std::vector<int>> random_adjacency(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) a[i][j] = a[j][i] = coin(rng);
  return a;
}

// trace(A^k) with exact integer arithmetic.
long long trace_power(const std::vector<std::vector<int>>& a, int k) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<long long>> p(n, std::vector<long long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p[i][j] = a[i][j];
  for (int step = 1; step < k; ++step) {
    std::vector<std::vector<long long>> q(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        if (p[i][l])
          for (int j = 0; j < n; ++j) q[i][j] += p[i][l] * a[l][j];
    p.swap(q);
  }
  long long t = 0;
  for (int i = 0; i < n; ++i) t += p[i][i];
  return t;
}

}  // namespace

TEST_CASE("deterministic graphons give complete and empty graphs") {
  const auto full = sample_graph(BipodalGraphon::constant(1.0), 70, 1);
  CHECK(full.edge_count() == 70ULL * 69 / 2);
  CHECK(graph_densities(full, 2) == doctest::Approx(70.0 * 69 / (70 * 70)));
  const auto none = sample_graph(GridGraphon::constant(10, 0.0), 70, 1);
  CHECK(none.edge_count() == 0);
  CHECK(graph_densities(none, 2) == 0.0);
  CHECK(graph_densities(none, 3) == 0.0);
}

TEST_CASE("K4 densities") {
  const auto K4 = from_dense({{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}});
  CHECK(graph_densities(K4, 2) == 0.75);
  CHECK(graph_densities(K4, 3) == 0.375);
  CHECK(triangle_count(K4) == 4);
  CHECK_THROWS_AS(graph_densities(K4, 4), DomainError);
  CHECK_THROWS_AS(graph_densities(K4, 11), DomainError);
}

TEST_CASE("triangle and cycle densities equal adjacency traces") {
  for (int n : {5, 23, 50, 64, 65, 130}) {
    const auto adj = random_adjacency(n, 0.4, n);
    const auto G = from_dense(adj);
    const long long t3 = trace_power(adj, 3);
    CHECK(static_cast<long long>(triangle_count(G)) * 6 == t3);
    CHECK(triangle_count(G) == triangle_count(G, true));
    CHECK(std::abs(graph_densities(G, 3) - static_cast<double>(t3) / std::pow(n, 3)) <= 1e-15);
    if (n <= 65) {
      for (int k : {5, 7}) {
        const double ref = static_cast<double>(trace_power(adj, k)) / std::pow(n, k);
        CHECK(graph_densities(G, k) == doctest::Approx(ref).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("samples are symmetric, loopless and reproducible") {
  const BipodalGraphon g{0.2, 0.8, 0.3, 0.5};
  const auto A = sample_graph(g, 200, 42);
  const auto B = sample_graph(g, 200, 42);
  const auto C = sample_graph(g, 200, 43);
  CHECK(A.rows == B.rows);
  CHECK(A.rows != C.rows);
  for (int i = 0; i < A.n; ++i) {
    CHECK_FALSE(A.edge(i, i));
    for (int j = 0; j < i; ++j) CHECK(A.edge(i, j) == A.edge(j, i));
  }
  CHECK(A.seed == 42);
  CHECK_FALSE(A.source.empty());
}

TEST_CASE("counter streams are pure functions of their inputs") {
  const CounterRng r(5, 1);
  CHECK(r.bits(10) == CounterRng(5, 1).bits(10));
  CHECK(r.bits(10) != CounterRng(5, 2).bits(10));
  CHECK(r.bits(10) != r.bits(11));
  double mean = 0;
  for (int i = 0; i < 100000; ++i) mean += r.uniform(i);
  CHECK(mean / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("edge densities of the half graphon") {
  const auto rep = mc_check(BipodalGraphon::constant(0.5), 2000, 10, 7);
  CHECK(std::abs(rep.edge.z) <= 3.0);
  CHECK(std::abs(rep.triangle.z) <= 3.0);
  CHECK(rep.edge.graphon == 0.5);
  CHECK(rep.triangle.graphon == doctest::Approx(0.125));
  CHECK(rep.edge.expected == doctest::Approx(0.5 * (1 - 1.0 / 2000)));
  CHECK(rep.prng == kPrngName);
  const auto again = mc_check(BipodalGraphon::constant(0.5), 2000, 10, 7);
  CHECK(again.edge.mean == rep.edge.mean);
  CHECK(again.triangle.mean == rep.triangle.mean);
}

TEST_CASE("density estimates approach the graphon as n grows") {
  const BipodalGraphon g{0.24, 0.7498, 0.0193, 0.76};
  const double truth = cycle_density(g, 3);
  std::vector<double> err;
  for (int n : {250, 500, 1000, 2000}) {
    const auto rep = mc_check(g, n, 4, 11);
    err.push_back(std::abs(rep.triangle.mean - truth));
  }
  CHECK(err.back() < err.front());
}

TEST_CASE("edge list output") {
  const auto K3 = from_dense({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  SampledGraph G = K3;
  G.seed = 9;
  std::ostringstream os;
  write_edge_list(G, os);
  CHECK(os.str() == "# n=3 seed=9\n0 1\n1 2\n");
}
