#include <cmath>

#include "qbn/qsim.hpp"

namespace qbn::qsim {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const complexd& v : a) s += std::norm(v);
  return std::sqrt(s);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) p[i] = std::norm(a[i]);
  return p;
}

StateVector StateVector::basis(std::size_t nb, std::size_t index) {
  StateVector psi;
  psi.nb = nb;
  psi.a.assign(std::size_t{1} << nb, complexd(0.0, 0.0));
  psi.a.at(index) = 1.0;
  return psi;
}

void hadamard_bit(StateVector& psi, std::size_t bit) {
  const std::size_t mask = std::size_t{1} << bit;
  for (std::size_t i = 0; i < psi.a.size(); ++i) {
    if (i & mask) continue;
    complexd lo = psi.a[i];
    complexd hi = psi.a[i | mask];
    psi.a[i] = (lo + hi) * kInvSqrt2;
    psi.a[i | mask] = (lo - hi) * kInvSqrt2;
  }
}

void hadamard_all(StateVector& psi) {
  for (std::size_t b = 0; b < psi.nb; ++b) hadamard_bit(psi, b);
}

void pauli(StateVector& psi, PauliAxis axis, std::size_t bit) {
  const std::size_t mask = std::size_t{1} << bit;
  for (std::size_t i = 0; i < psi.a.size(); ++i) {
    if (i & mask) continue;
    complexd lo = psi.a[i];
    complexd hi = psi.a[i | mask];
    switch (axis) {
      case PauliAxis::x:
        psi.a[i] = hi;
        psi.a[i | mask] = lo;
        break;
      case PauliAxis::y:
        psi.a[i] = complexd(0.0, -1.0) * hi;
        psi.a[i | mask] = complexd(0.0, 1.0) * lo;
        break;
      case PauliAxis::z:
        psi.a[i | mask] = -hi;
        break;
    }
  }
}

void cnot(StateVector& psi, std::size_t control, std::size_t target) {
  const std::size_t cm = std::size_t{1} << control;
  const std::size_t tm = std::size_t{1} << target;
  for (std::size_t i = 0; i < psi.a.size(); ++i)
    if ((i & cm) && !(i & tm)) std::swap(psi.a[i], psi.a[i | tm]);
}

void xor_oracle(StateVector& psi, std::size_t nc, std::size_t nt,
                const std::vector<std::uint64_t>& table) {
  const std::size_t ncontrols = std::size_t{1} << nc;
  if (table.size() != ncontrols)
    throw Error(ErrorKind::validation,
                "oracle table has " + std::to_string(table.size()) +
                    " entries, expected " + std::to_string(ncontrols));
  if (psi.nb != nc + nt)
    throw Error(ErrorKind::validation,
                "oracle expects " + std::to_string(nc + nt) + " bits, state has " +
                    std::to_string(psi.nb));
  std::vector<complexd> out(psi.a.size());
  const std::size_t tmask = (std::size_t{1} << nt) - 1;
  for (std::size_t i = 0; i < psi.a.size(); ++i) {
    std::size_t x = i & (ncontrols - 1);
    std::size_t y = i >> nc;
    std::size_t y2 = y ^ (table[x] & tmask);
    out[x | (y2 << nc)] = psi.a[i];
  }
  psi.a = std::move(out);
}

void reflect(StateVector& psi, const std::vector<complexd>& phi) {
  if (phi.size() != psi.a.size())
    throw Error(ErrorKind::validation, "reflection vector size mismatch");
  complexd overlap(0.0, 0.0);
  for (std::size_t i = 0; i < phi.size(); ++i)
    overlap += std::conj(phi[i]) * psi.a[i];
  for (std::size_t i = 0; i < phi.size(); ++i) psi.a[i] -= 2.0 * phi[i] * overlap;
}

void flip_sign(StateVector& psi, std::size_t index) { psi.a.at(index) = -psi.a.at(index); }

void negate(StateVector& psi) {
  for (complexd& v : psi.a) v = -v;
}

void apply_matrix(StateVector& psi, const AmplitudeMatrix& u) {
  if (static_cast<std::size_t>(u.rows()) != psi.a.size() || u.rows() != u.cols())
    throw Error(ErrorKind::validation, "matrix size mismatch");
  Eigen::Map<Eigen::VectorXcd> v(psi.a.data(), psi.a.size());
  Eigen::VectorXcd out = u * v;
  for (std::size_t i = 0; i < psi.a.size(); ++i) psi.a[i] = out(i);
}

}  // namespace qbn::qsim
