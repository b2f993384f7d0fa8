#include <bit>
#include <cstring>
#include <fstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "graphon/errors.hpp"
#include "graphon/grid.hpp"

namespace graphon {

namespace {

constexpr char kMagic[4] = {'G', 'R', 'P', 'H'};

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    std::memcpy(&v, bytes, sizeof(T));
    return v;
  }
}

template <class T>
void put(std::ostream& os, T v) {
  v = to_little(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw DomainError("grid file truncated");
  return to_little(v);
}

}  // namespace

void write_grid_binary(const GridGraphon& W, const std::string& path) {
  validate(W);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError(fmt::format("cannot open {} for writing", path));
  os.write(kMagic, 4);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(W.n));
  put<std::uint32_t>(os, 0);
  put<std::uint32_t>(os, 0);
  for (int i = 0; i < W.n; ++i) {
    for (int j = 0; j <= i; ++j) put<double>(os, W(i, j));
  }
  if (!os) throw DomainError(fmt::format("write to {} failed", path));
}

GridGraphon read_grid_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError(fmt::format("cannot open {}", path));
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) throw DomainError(fmt::format("{} is not a grid file", path));
  const auto n = get<std::uint32_t>(is);
  get<std::uint32_t>(is);
  get<std::uint32_t>(is);
  if (n < 2 || n > 100000) throw DomainError(fmt::format("{}: implausible grid size {}", path, n));
  GridGraphon W = GridGraphon::constant(static_cast<int>(n), 0.0);
  for (int i = 0; i < W.n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = get<double>(is);
      W(i, j) = v;
      W(j, i) = v;
    }
  }
  validate(W);
  return W;
}

std::string grid_to_json(const GridGraphon& W) {
  validate(W);
  if (W.n > 64) throw DomainError(fmt::format("JSON grids are limited to n <= 64, got {}", W.n));
  std::string out = fmt::format("{{\"n\": {}, \"values\": [", W.n);
  for (int i = 0; i < W.n; ++i) {
    out += i ? ",\n  [" : "\n  [";
    for (int j = 0; j < W.n; ++j) out += fmt::format("{}{:.17g}", j ? ", " : "", W(i, j));
    out += "]";
  }
  out += "\n]}\n";
  return out;
}

GridGraphon grid_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw DomainError(fmt::format("bad grid JSON: {}", ex.what()));
  }
  const int n = j.at("n").get<int>();
  const auto& rows = j.at("values");
  if (n < 2 || static_cast<int>(rows.size()) != n) throw DomainError("grid JSON: values do not match n");
  GridGraphon W = GridGraphon::constant(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw DomainError("grid JSON: ragged row");
    for (int k = 0; k < n; ++k) W(i, k) = rows[i][k].get<double>();
  }
  validate(W);
  return W;
}

}  // namespace graphon
