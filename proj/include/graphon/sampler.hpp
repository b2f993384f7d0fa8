#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "graphon/bipodal.hpp"
#include "graphon/grid.hpp"

namespace graphon {

using GraphonSource = std::variant<BipodalGraphon, GridGraphon>;

// Simple graph as n bit rows; symmetric with an empty diagonal.
struct SampledGraph {
  int n = 0;
  int words = 0;  // 64-bit words per row
  std::vector<std::uint64_t> rows;
  std::uint64_t seed = 0;
  std::string source;

  bool edge(int i, int j) const {
    return (rows[static_cast<std::size_t>(i) * words + j / 64] >> (j % 64)) & 1ULL;
  }
  std::uint64_t edge_count() const;
};

// W-random graph: latents u_i ~ U[0,1) and independent edges with
// probability g(u_i, u_j). Every draw comes from CounterRng(seed, stream) at a
// fixed counter, so the result does not depend on the thread count.
SampledGraph sample_graph(const GraphonSource& source, int n, std::uint64_t seed);

// Homomorphism densities normalized by n^|V(K)|: k = 2 gives 2m/n^2, k = 3
// gives 6 T/n^3 (for loopless graphs every homomorphic triangle is injective)
// and odd 5 <= k <= 9 gives trace(A^k)/n^k.
double graph_densities(const SampledGraph& G, int k);

// Triangle count by the bitset kernel; serial=true uses the triple loop.
std::uint64_t triangle_count(const SampledGraph& G, bool serial = false);

struct DensityStats {
  double mean = 0.0;
  double stdev = 0.0;     // sample standard deviation over the reps
  double graphon = 0.0;   // density of the graphon itself
  double expected = 0.0;  // expectation at this n
  double z = 0.0;         // (mean - expected) / (stdev / sqrt(reps))
};

struct McReport {
  int n = 0;
  int reps = 0;
  std::uint64_t seed = 0;
  std::string prng;
  DensityStats edge;
  DensityStats triangle;
};

// Rep r samples with seed splitmix64(seed + r). The finite-n expectations are
// (1 - 1/n) eps for edges and (n-1)(n-2)/n^2 tau for triangles.
McReport mc_check(const GraphonSource& source, int n, int reps, std::uint64_t seed);

// Header "# n=<n> seed=<seed>", then one "u v" line per edge with u < v.
void write_edge_list(const SampledGraph& G, std::ostream& os);

}  // namespace graphon
