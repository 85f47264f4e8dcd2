#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qbn/algorithms.hpp"

namespace qbn::alg {

namespace {

void require_boolean_outputs(const BoolFn& f) {
  if (f.table.size() != f.domain()) {
    throw Error(ErrorKind::validation,
                "truth table has " + std::to_string(f.table.size()) +
                    " entries, expected " + std::to_string(f.domain()));
  }
  for (std::size_t v : f.table) {
    if (v > 1) {
      throw Error(ErrorKind::validation,
                  "truth table must be {0,1}-valued, found " + std::to_string(v));
    }
  }
}

// P(X') = (1/4^nb) | sum_x (-1)^(x.X' + f(x)) |^2. The signed sum is integer
// arithmetic, so this route is exact.
std::vector<double> closed_form(const BoolFn& f) {
  std::size_t n = f.domain();
  std::vector<double> dist(n);
  for (std::size_t xp = 0; xp < n; ++xp) {
    long long s = 0;
    for (std::size_t x = 0; x < n; ++x) {
      s += ((std::popcount(x & xp) + f.table[x]) % 2 == 0) ? 1 : -1;
    }
    double amp = static_cast<double>(s) / static_cast<double>(n);
    dist[xp] = amp * amp;
  }
  return dist;
}

// Dense simulation of the usual circuit: target bit (most significant)
// prepared in |->, Hadamards around an xor oracle on the controls.
std::vector<double> circuit_form(const BoolFn& f) {
  std::size_t n = f.domain();
  auto psi = qsim::StateVector::basis(f.nb + 1, 0);
  qsim::pauli(psi, qsim::PauliAxis::x, f.nb);
  qsim::hadamard_bit(psi, f.nb);
  for (std::size_t b = 0; b < f.nb; ++b) qsim::hadamard_bit(psi, b);
  std::vector<std::uint64_t> table(f.table.begin(), f.table.end());
  qsim::xor_oracle(psi, f.nb, 1, table);
  for (std::size_t b = 0; b < f.nb; ++b) qsim::hadamard_bit(psi, b);
  qsim::hadamard_bit(psi, f.nb);
  qsim::pauli(psi, qsim::PauliAxis::x, f.nb);

  std::vector<double> dist(n);
  for (std::size_t xp = 0; xp < n; ++xp) {
    dist[xp] = std::norm(psi.a[xp]) + std::norm(psi.a[n + xp]);
  }
  return dist;
}

}  // namespace

std::vector<double> dj_distribution(const BoolFn& f) {
  require_boolean_outputs(f);
  std::vector<double> exact = closed_form(f);
  std::vector<double> simulated = circuit_form(f);
  for (std::size_t i = 0; i < exact.size(); ++i) {
    if (std::abs(exact[i] - simulated[i]) > 1e-12) {
      throw Error(ErrorKind::logic,
                  "circuit and closed-form distributions disagree at X'=" +
                      std::to_string(i));
    }
  }
  return exact;
}

DjVerdict dj_classify(const BoolFn& f) {
  require_boolean_outputs(f);
  if (!is_constant(f) && !is_balanced(f)) {
    throw Error(ErrorKind::promise_violation,
                "promise violated: f is neither constant nor balanced");
  }
  double p0 = dj_distribution(f)[0];
  if (std::abs(p0 - 1.0) <= 1e-9) return DjVerdict::constant;
  if (p0 <= 1e-9) return DjVerdict::balanced;
  throw Error(ErrorKind::promise_violation,
              "promise violated: P(X'=0) = " + fmt17(p0) +
                  " is neither 0 nor 1");
}

}  // namespace qbn::alg
