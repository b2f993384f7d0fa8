#include "graphon/sampler.hpp"

#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "graphon/errors.hpp"
#include "graphon/kernels.hpp"
#include "graphon/rng.hpp"

namespace graphon {

namespace {

constexpr std::uint64_t kLatentStream = 1;
constexpr std::uint64_t kEdgeStream = 2;

std::string describe(const GraphonSource& source) {
  if (const auto* g = std::get_if<BipodalGraphon>(&source)) {
    return fmt::format("bipodal a={:.17g} b={:.17g} c={:.17g} d={:.17g}", g->a, g->b, g->c, g->d);
  }
  return fmt::format("grid n={}", std::get<GridGraphon>(source).n);
}

}  // namespace

std::uint64_t SampledGraph::edge_count() const {
  std::uint64_t twice = 0;
  for (std::uint64_t w : rows) twice += static_cast<std::uint64_t>(std::popcount(w));
  return twice / 2;
}

SampledGraph sample_graph(const GraphonSource& source, int n, std::uint64_t seed) {
  if (n < 2) throw DomainError(fmt::format("sample size {} must be at least 2", n));
  if (const auto* g = std::get_if<BipodalGraphon>(&source)) validate(*g);
  if (const auto* W = std::get_if<GridGraphon>(&source)) validate(*W);

  SampledGraph G;
  G.n = n;
  G.words = (n + 63) / 64;
  G.seed = seed;
  G.source = describe(source);

  const CounterRng latent_rng(seed, kLatentStream);
  std::vector<double> u(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) u[i] = latent_rng.uniform(static_cast<std::uint64_t>(i));

  auto prob = [&](int i, int j) {
    if (const auto* g = std::get_if<BipodalGraphon>(&source)) return g->at(u[i], u[j]);
    const GridGraphon& W = std::get<GridGraphon>(source);
    const int bi = std::min(static_cast<int>(u[i] * W.n), W.n - 1);
    const int bj = std::min(static_cast<int>(u[j] * W.n), W.n - 1);
    return W(bi, bj);
  };

  // Upper triangle first, each row owned by one thread; then mirror.
  const std::size_t words = static_cast<std::size_t>(G.words);
  std::vector<std::uint64_t> upper(static_cast<std::size_t>(n) * words, 0);
  const CounterRng edge_rng(seed, kEdgeStream);
  const long nn = n;
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < nn; ++i) {
    std::uint64_t* row = upper.data() + i * words;
    for (long j = i + 1; j < nn; ++j) {
      const std::uint64_t counter = static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(nn) + j;
      if (edge_rng.uniform(counter) < prob(static_cast<int>(i), static_cast<int>(j))) {
        row[j / 64] |= 1ULL << (j % 64);
      }
    }
  }
  G.rows = upper;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < nn; ++i) {
    std::uint64_t* row = G.rows.data() + i * words;
    for (long j = 0; j < i; ++j) {
      if ((upper[j * words + i / 64] >> (i % 64)) & 1ULL) row[j / 64] |= 1ULL << (j % 64);
    }
  }
  return G;
}

std::uint64_t triangle_count(const SampledGraph& G, bool serial) {
  return serial ? kernels::serial::triangle_count(G.rows.data(), G.n, G.words)
                : kernels::omp::triangle_count(G.rows.data(), G.n, G.words);
}

double graph_densities(const SampledGraph& G, int k) {
  const double n = G.n;
  if (k == 2) return 2.0 * static_cast<double>(G.edge_count()) / (n * n);
  if (k == 3) return 6.0 * static_cast<double>(triangle_count(G)) / (n * n * n);
  if (k < 3 || k > 9 || k % 2 == 0) {
    throw DomainError(fmt::format("graph_densities supports k = 2 and odd k <= 9, got {}", k));
  }
  const std::size_t nn = static_cast<std::size_t>(G.n);
  std::vector<double> A(nn * nn, 0.0);
  for (int i = 0; i < G.n; ++i) {
    for (int j = 0; j < G.n; ++j) A[i * nn + j] = G.edge(i, j) ? 1.0 : 0.0;
  }
  // A^(k-1) then trace(A^(k-1) A) as an entrywise dot; each factor is scaled
  // by 1/n to keep the entries O(1).
  std::vector<double> scaled(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) scaled[i] = A[i] / n;
  std::vector<double> power = scaled;
  std::vector<double> next(A.size());
  for (int p = 2; p < k; ++p) {
    kernels::omp::matmul(power.data(), scaled.data(), next.data(), G.n);
    power.swap(next);
  }
  return kernels::omp::dot(power.data(), scaled.data(), G.n);
}

McReport mc_check(const GraphonSource& source, int n, int reps, std::uint64_t seed) {
  if (reps < 1) throw DomainError(fmt::format("reps={} must be at least 1", reps));
  if (n < 3) throw DomainError(fmt::format("mc_check needs n >= 3, got {}", n));
  McReport report;
  report.n = n;
  report.reps = reps;
  report.seed = seed;
  report.prng = kPrngName;
  if (const auto* g = std::get_if<BipodalGraphon>(&source)) {
    report.edge.graphon = edge_density(*g);
    report.triangle.graphon = cycle_density(*g, 3);
  } else {
    const GridDensities dens = grid_densities(std::get<GridGraphon>(source), 3);
    report.edge.graphon = dens.eps;
    report.triangle.graphon = dens.tau;
  }
  const double nd = n;
  report.edge.expected = (1.0 - 1.0 / nd) * report.edge.graphon;
  report.triangle.expected = (nd - 1.0) * (nd - 2.0) / (nd * nd) * report.triangle.graphon;

  std::vector<double> edges(static_cast<std::size_t>(reps));
  std::vector<double> triangles(static_cast<std::size_t>(reps));
  for (int r = 0; r < reps; ++r) {
    const SampledGraph G = sample_graph(source, n, splitmix64(seed + static_cast<std::uint64_t>(r)));
    edges[r] = graph_densities(G, 2);
    triangles[r] = graph_densities(G, 3);
  }
  auto summarize = [&](const std::vector<double>& x, DensityStats& s) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= reps;
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    s.mean = mean;
    s.stdev = reps > 1 ? std::sqrt(var / (reps - 1)) : 0.0;
    const double se = s.stdev / std::sqrt(static_cast<double>(reps));
    s.z = se > 0.0 ? (mean - s.expected) / se : (mean == s.expected ? 0.0 : INFINITY);
  };
  summarize(edges, report.edge);
  summarize(triangles, report.triangle);
  return report;
}

void write_edge_list(const SampledGraph& G, std::ostream& os) {
  os << "# n=" << G.n << " seed=" << G.seed << '\n';
  for (int i = 0; i < G.n; ++i) {
    for (int j = i + 1; j < G.n; ++j) {
      if (G.edge(i, j)) os << i << ' ' << j << '\n';
    }
  }
}

}  // namespace graphon
