#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "qbn/algorithms.hpp"

namespace qbn::alg {

namespace {

std::size_t require_period(const BoolFn& f) {
  if (f.table.size() != f.domain()) {
    throw Error(ErrorKind::validation,
                "truth table has " + std::to_string(f.table.size()) +
                    " entries, expected " + std::to_string(f.domain()));
  }
  auto period = simon_period_scan(f);
  if (!period) {
    throw Error(ErrorKind::promise_violation,
                "promise violated: f is not 2-to-1 with a period");
  }
  return *period;
}

// P(X') straight from the amplitude sum, without using the period:
// (1/4^nb) sum_Y' | sum_x (-1)^(x.X') [f(x) == Y'] |^2.
std::vector<double> generic_form(const BoolFn& f) {
  std::size_t n = f.domain();
  std::vector<double> dist(n, 0.0);
  for (std::size_t xp = 0; xp < n; ++xp) {
    for (std::size_t yp = 0; yp < n; ++yp) {
      long long s = 0;
      for (std::size_t x = 0; x < n; ++x) {
        if (f.table[x] == yp) s += (std::popcount(x & xp) % 2 == 0) ? 1 : -1;
      }
      double amp = static_cast<double>(s) / static_cast<double>(n);
      dist[xp] += amp * amp;
    }
  }
  return dist;
}

}  // namespace

std::vector<double> simon_distribution(const BoolFn& f) {
  std::size_t period = require_period(f);
  std::size_t n = f.domain();
  std::vector<double> exact(n);
  for (std::size_t xp = 0; xp < n; ++xp) {
    bool orthogonal = std::popcount(xp & period) % 2 == 0;
    exact[xp] = orthogonal ? 2.0 / static_cast<double>(n) : 0.0;
  }
  std::vector<double> generic = generic_form(f);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(exact[i] - generic[i]) > 1e-12) {
      throw Error(ErrorKind::logic,
                  "period form and amplitude sum disagree at X'=" +
                      std::to_string(i));
    }
  }
  return exact;
}

std::size_t simon_recover_period(std::size_t nb,
                                 const std::vector<std::size_t>& xs) {
  if (nb == 0 || nb >= 63) {
    throw Error(ErrorKind::validation, "bit count must be in [1, 62], got " +
                                           std::to_string(nb));
  }
  // Gaussian elimination over GF(2); rows are the constraints X'(i) . D = 0.
  // Pivot on the lowest set bit still unclaimed, scanning rows in input order.
  std::vector<std::size_t> rows(xs.begin(), xs.end());
  std::vector<std::size_t> pivot_of_bit(nb, Net::npos);
  std::size_t rank = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t v = rows[r];
    for (std::size_t bit = 0; bit < nb; ++bit) {
      if ((v >> bit & 1) && pivot_of_bit[bit] != Net::npos) {
        v ^= rows[pivot_of_bit[bit]];
      }
    }
    if (v == 0) continue;
    std::size_t bit = static_cast<std::size_t>(std::countr_zero(v));
    rows[r] = v;
    pivot_of_bit[bit] = r;
    ++rank;
  }
  if (rank == nb) {
    throw Error(ErrorKind::promise_violation,
                "the samples span the whole space; no nonzero period solves them");
  }
  if (rank + 1 < nb) {
    throw Error(ErrorKind::validation,
                "need more samples: rank " + std::to_string(rank) + " of " +
                    std::to_string(nb - 1));
  }
  // Exactly one free bit: set it, back-substitute through the pivots.
  std::size_t free_bit = 0;
  while (pivot_of_bit[free_bit] != Net::npos) ++free_bit;
  std::size_t period = std::size_t{1} << free_bit;
  // Eliminate from high pivots down so each substitution sees a settled tail.
  for (std::size_t bit = nb; bit-- > 0;) {
    if (pivot_of_bit[bit] == Net::npos) continue;
    std::size_t row = rows[pivot_of_bit[bit]];
    if (std::popcount(row & period) % 2 == 1) period ^= std::size_t{1} << bit;
  }
  return period;
}

}  // namespace qbn::alg
