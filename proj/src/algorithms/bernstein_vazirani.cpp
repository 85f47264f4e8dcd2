#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qbn/algorithms.hpp"

namespace qbn::alg {

BvResult bv_run(std::size_t nb, std::size_t b) {
  if (nb == 0 || nb >= 63) {
    throw Error(ErrorKind::validation, "bit count must be in [1, 62], got " +
                                           std::to_string(nb));
  }
  std::size_t n = std::size_t{1} << nb;
  if (b >= n) {
    throw Error(ErrorKind::validation,
                "hidden vector " + std::to_string(b) + " needs more than " +
                    std::to_string(nb) + " bits");
  }

  BvResult result;

  // Plain route: sigma_x on every bit where b is set takes |0> to |b>.
  result.plain = qsim::StateVector::basis(nb, 0);
  for (std::size_t bit = 0; bit < nb; ++bit) {
    if (b >> bit & 1) qsim::pauli(result.plain, qsim::PauliAxis::x, bit);
  }

  // Obfuscated route: target bit (most significant) in |->, controls through
  // Hadamards around an oracle that xors the parity b.x into the target.
  result.obfuscated = qsim::StateVector::basis(nb + 1, 0);
  qsim::pauli(result.obfuscated, qsim::PauliAxis::x, nb);
  qsim::hadamard_bit(result.obfuscated, nb);
  for (std::size_t bit = 0; bit < nb; ++bit) qsim::hadamard_bit(result.obfuscated, bit);
  std::vector<std::uint64_t> parity(n);
  for (std::size_t x = 0; x < n; ++x) parity[x] = std::popcount(x & b) % 2;
  qsim::xor_oracle(result.obfuscated, nb, 1, parity);
  for (std::size_t bit = 0; bit < nb; ++bit) qsim::hadamard_bit(result.obfuscated, bit);

  // Read out the control register of the plain route, then require that both
  // routes put all their mass there. Anything else is a simulator bug.
  std::vector<double> probs = result.plain.probabilities();
  std::size_t best = 0;
  for (std::size_t x = 1; x < n; ++x) {
    if (probs[x] > probs[best]) best = x;
  }
  result.recovered = best;
  if (std::abs(probs[best] - 1.0) > 1e-12) {
    throw Error(ErrorKind::logic, "plain route is not a basis state");
  }
  double control_mass = std::norm(result.obfuscated.a[best]) +
                        std::norm(result.obfuscated.a[n + best]);
  if (std::abs(control_mass - 1.0) > 1e-12) {
    throw Error(ErrorKind::logic, "the two routes measured different vectors");
  }
  return result;
}

}  // namespace qbn::alg
