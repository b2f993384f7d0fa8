#pragma once

#include <cstddef>
#include <cstdint>

// Dense n x n row-major kernels behind the grid oracle and the sampler. The
// omp namespace is the production path; serial is the reference it is tested
// against. Both reduce per row first and then sum the row partials in index
// order, so results do not depend on the thread count.
namespace graphon::kernels {

namespace serial {
void matmul(const double* a, const double* b, double* out, int n);
void matvec(const double* a, const double* x, double* out, int n);
double sum(const double* x, int n);
double dot(const double* a, const double* b, int n);
double entropy_sum(const double* w, int n);
// Triangles of a graph given as n bit rows of `words` 64-bit words each.
std::uint64_t triangle_count(const std::uint64_t* rows, int n, int words);
}  // namespace serial

namespace omp {
void matmul(const double* a, const double* b, double* out, int n);
void matvec(const double* a, const double* x, double* out, int n);
double sum(const double* x, int n);
double dot(const double* a, const double* b, int n);
double entropy_sum(const double* w, int n);
std::uint64_t triangle_count(const std::uint64_t* rows, int n, int words);
}  // namespace omp

}  // namespace graphon::kernels
