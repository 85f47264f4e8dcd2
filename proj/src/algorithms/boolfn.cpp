#include "qbn/algorithms.hpp"

#include <algorithm>
#include <bit>
#include <random>

namespace qbn::alg {

namespace {

// Fisher-Yates with raw engine draws; std::shuffle's draw sequence is
// implementation-defined, and these tables must be reproducible byte for byte.
void deterministic_shuffle(std::vector<std::size_t>& v, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(eng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

void check_nb(std::size_t nb) {
  if (nb == 0 || nb >= 63) {
    throw Error(ErrorKind::validation, "bit count must be in [1, 62], got " +
                                           std::to_string(nb));
  }
}

}  // namespace

BoolFn constant_fn(std::size_t nb, std::size_t value) {
  check_nb(nb);
  BoolFn f;
  f.nb = nb;
  f.table.assign(std::size_t{1} << nb, value);
  return f;
}

BoolFn parity_fn(std::size_t nb, std::size_t mask, std::size_t offset) {
  check_nb(nb);
  BoolFn f;
  f.nb = nb;
  f.table.resize(std::size_t{1} << nb);
  for (std::size_t x = 0; x < f.table.size(); ++x) {
    f.table[x] = (std::popcount(x & mask) + offset) % 2;
  }
  return f;
}

BoolFn random_balanced_fn(std::size_t nb, std::uint64_t seed) {
  check_nb(nb);
  BoolFn f;
  f.nb = nb;
  std::size_t n = std::size_t{1} << nb;
  f.table.resize(n);
  for (std::size_t x = 0; x < n; ++x) f.table[x] = x < n / 2 ? 0 : 1;
  deterministic_shuffle(f.table, seed);
  return f;
}

BoolFn simon_planted_fn(std::size_t nb, std::size_t period, std::uint64_t seed) {
  check_nb(nb);
  std::size_t n = std::size_t{1} << nb;
  if (period == 0 || period >= n) {
    throw Error(ErrorKind::validation,
                "period must be a nonzero " + std::to_string(nb) + "-bit value");
  }
  // One image value per {x, x ^ period} pair, assigned to pair representatives
  // (the smaller member) in increasing order from a shuffled value list.
  std::vector<std::size_t> values(n);
  for (std::size_t v = 0; v < n; ++v) values[v] = v;
  deterministic_shuffle(values, seed);

  BoolFn f;
  f.nb = nb;
  f.table.assign(n, 0);
  std::size_t next = 0;
  for (std::size_t x = 0; x < n; ++x) {
    if (x < (x ^ period)) {
      f.table[x] = f.table[x ^ period] = values[next++];
    }
  }
  return f;
}

bool is_constant(const BoolFn& f) {
  return std::all_of(f.table.begin(), f.table.end(),
                     [&](std::size_t v) { return v == f.table[0]; });
}

bool is_balanced(const BoolFn& f) {
  std::size_t ones = 0;
  for (std::size_t v : f.table) {
    if (v > 1) return false;
    ones += v;
  }
  return 2 * ones == f.table.size();
}

std::optional<std::size_t> simon_period_scan(const BoolFn& f) {
  std::size_t n = f.domain();
  if (f.table.size() != n || n < 2) return std::nullopt;
  // 2-to-1 check: every image value hit exactly twice.
  std::vector<std::size_t> count(n, 0);
  for (std::size_t v : f.table) {
    if (v >= n || ++count[v] > 2) return std::nullopt;
  }
  // A 2-to-1 periodic function has exactly one period: the xor of the two
  // preimages of any image value, e.g. of f(0).
  std::size_t period = 0;
  for (std::size_t x = 1; x < n; ++x) {
    if (f.table[x] == f.table[0]) {
      period = x;
      break;
    }
  }
  if (period == 0) return std::nullopt;
  for (std::size_t x = 0; x < n; ++x) {
    if (f.table[x] != f.table[x ^ period]) return std::nullopt;
  }
  return period;
}

}  // namespace qbn::alg
