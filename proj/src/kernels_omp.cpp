#include <bit>
#include <vector>

#include "graphon/kernels.hpp"
#include "graphon/scalar.hpp"

namespace graphon::kernels::omp {

void matmul(const double* a, const double* b, double* out, int n) {
  const long nn = n;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < nn; ++i) {
    double* row = out + i * nn;
    for (long j = 0; j < nn; ++j) row[j] = 0.0;
    for (long l = 0; l < nn; ++l) {
      const double s = a[i * nn + l];
      const double* brow = b + l * nn;
#pragma omp simd
      for (long j = 0; j < nn; ++j) row[j] += s * brow[j];
    }
  }
}

void matvec(const double* a, const double* x, double* out, int n) {
  const long nn = n;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < nn; ++i) {
    double acc = 0.0;
    for (long j = 0; j < nn; ++j) acc += a[i * nn + j] * x[j];
    out[i] = acc;
  }
}

namespace {

template <class RowFn>
double row_reduce(int n, RowFn&& row_value) {
  std::vector<double> rows(static_cast<std::size_t>(n), 0.0);
  const long nn = n;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < nn; ++i) rows[i] = row_value(i);
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

}  // namespace

double sum(const double* x, int n) {
  const long nn = n;
  return row_reduce(n, [&](long i) {
    double acc = 0.0;
    for (long j = 0; j < nn; ++j) acc += x[i * nn + j];
    return acc;
  });
}

double dot(const double* a, const double* b, int n) {
  const long nn = n;
  return row_reduce(n, [&](long i) {
    double acc = 0.0;
    for (long j = 0; j < nn; ++j) acc += a[i * nn + j] * b[i * nn + j];
    return acc;
  });
}

double entropy_sum(const double* w, int n) {
  const long nn = n;
  return row_reduce(n, [&](long i) {
    double acc = 0.0;
    for (long j = 0; j < nn; ++j) acc += entropy_h(w[i * nn + j]);
    return acc;
  });
}

std::uint64_t triangle_count(const std::uint64_t* rows, int n, int words) {
  std::uint64_t count = 0;
  const long nn = n;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : count)
  for (long i = 0; i < nn; ++i) {
    const std::uint64_t* ri = rows + i * words;
    for (long j = i + 1; j < nn; ++j) {
      if (!((ri[j / 64] >> (j % 64)) & 1ULL)) continue;
      const std::uint64_t* rj = rows + j * words;
      // common neighbours l > j
      const long first = (j + 1) / 64;
      std::uint64_t local = 0;
      for (long w = first; w < words; ++w) {
        std::uint64_t m = ri[w] & rj[w];
        if (w == first) m &= ~0ULL << ((j + 1) % 64);
        local += static_cast<std::uint64_t>(std::popcount(m));
      }
      count += local;
    }
  }
  return count;
}

}  // namespace graphon::kernels::omp
