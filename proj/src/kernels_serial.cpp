#include <vector>

#include "graphon/kernels.hpp"
#include "graphon/scalar.hpp"

namespace graphon::kernels::serial {

void matmul(const double* a, const double* b, double* out, int n) {
  const std::size_t nn = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < nn; ++i) {
    double* row = out + i * nn;
    for (std::size_t j = 0; j < nn; ++j) row[j] = 0.0;
    for (std::size_t l = 0; l < nn; ++l) {
      const double s = a[i * nn + l];
      const double* brow = b + l * nn;
      for (std::size_t j = 0; j < nn; ++j) row[j] += s * brow[j];
    }
  }
}

void matvec(const double* a, const double* x, double* out, int n) {
  const std::size_t nn = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < nn; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < nn; ++j) acc += a[i * nn + j] * x[j];
    out[i] = acc;
  }
}

double sum(const double* x, int n) {
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<double> rows(nn, 0.0);
  for (std::size_t i = 0; i < nn; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < nn; ++j) acc += x[i * nn + j];
    rows[i] = acc;
  }
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

double dot(const double* a, const double* b, int n) {
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<double> rows(nn, 0.0);
  for (std::size_t i = 0; i < nn; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < nn; ++j) acc += a[i * nn + j] * b[i * nn + j];
    rows[i] = acc;
  }
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

double entropy_sum(const double* w, int n) {
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<double> rows(nn, 0.0);
  for (std::size_t i = 0; i < nn; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < nn; ++j) acc += entropy_h(w[i * nn + j]);
    rows[i] = acc;
  }
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

std::uint64_t triangle_count(const std::uint64_t* rows, int n, int words) {
  auto edge = [&](int i, int j) {
    return (rows[static_cast<std::size_t>(i) * words + j / 64] >> (j % 64)) & 1ULL;
  };
  std::uint64_t count = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!edge(i, j)) continue;
      for (int l = j + 1; l < n; ++l) count += edge(j, l) & edge(i, l);
    }
  }
  return count;
}

}  // namespace graphon::kernels::serial
