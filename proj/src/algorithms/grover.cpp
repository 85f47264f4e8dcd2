#include <cmath>
#include <string>
#include <vector>

#include "qbn/algorithms.hpp"

namespace qbn::alg {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_target(std::size_t nb, std::size_t j_targ) {
  if (nb == 0 || nb >= 30) {
    throw Error(ErrorKind::validation, "bit count must be in [1, 29], got " +
                                           std::to_string(nb));
  }
  if (j_targ >= (std::size_t{1} << nb)) {
    throw Error(ErrorKind::validation,
                "target state " + std::to_string(j_targ) + " needs more than " +
                    std::to_string(nb) + " bits");
  }
}

double real_coord(const qsim::StateVector& psi, const std::vector<complexd>& e) {
  complexd acc = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    acc += std::conj(e[i]) * psi.a[i];
  }
  return acc.real();
}

}  // namespace

std::size_t grover_optimal_r(std::size_t n) {
  if (n < 2) {
    throw Error(ErrorKind::validation, "search space must have at least 2 states");
  }
  double nd = static_cast<double>(n);
  double theta = std::asin(2.0 * std::sqrt(nd - 1.0) / nd);
  long long r = std::llround(kPi / (2.0 * theta) - 0.5);
  return r > 0 ? static_cast<std::size_t>(r) : 0;
}

GroverResult grover_run(std::size_t nb, std::size_t j_targ,
                        std::optional<std::size_t> r) {
  check_target(nb, j_targ);
  std::size_t n = std::size_t{1} << nb;
  double nd = static_cast<double>(n);

  GroverResult result;
  result.r = r.value_or(grover_optimal_r(n));
  result.theta = std::asin(2.0 * std::sqrt(nd - 1.0) / nd);

  std::vector<complexd> mu(n, complexd(1.0 / std::sqrt(nd), 0.0));
  std::vector<complexd> e1(n, complexd(1.0 / std::sqrt(nd - 1.0), 0.0));
  e1[j_targ] = 0.0;

  qsim::StateVector psi = qsim::StateVector::basis(nb, 0);
  qsim::hadamard_all(psi);

  auto record = [&](std::size_t k) {
    result.trajectory.push_back({psi.a[j_targ].real(), real_coord(psi, e1)});
    double half = (2.0 * static_cast<double>(k) + 1.0) * result.theta / 2.0;
    result.model.push_back({std::sin(half), std::cos(half)});
  };
  record(0);
  for (std::size_t k = 1; k <= result.r; ++k) {
    qsim::flip_sign(psi, j_targ);  // R_phi
    qsim::reflect(psi, mu);        // R_mu
    qsim::negate(psi);
    record(k);
  }

  result.success = std::norm(psi.a[j_targ]);
  result.final_state = std::move(psi);
  return result;
}

YounesResult younes_run(std::size_t nb, std::size_t j_targ,
                        std::optional<std::size_t> r) {
  check_target(nb, j_targ);
  std::size_t n = std::size_t{1} << nb;
  double nd = static_cast<double>(n);

  YounesResult result;
  result.r = r.value_or(grover_optimal_r(2 * n));
  result.theta = std::asin(std::sqrt(2.0 * nd - 1.0) / nd);

  // Extra bit is most significant: indices [0, n) have it clear.
  std::vector<complexd> mu_t(2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) mu_t[i] = 1.0 / std::sqrt(nd);
  std::vector<complexd> phi_t(2 * n, 0.0);
  phi_t[j_targ] = 1.0 / std::sqrt(2.0);
  phi_t[n + j_targ] = -1.0 / std::sqrt(2.0);
  // Unit vector completing span(mu~, phi~): (phi_not + phi/2, phi/2) scaled.
  std::vector<complexd> e1(2 * n, 0.0);
  double k1 = 1.0 / std::sqrt(nd - 0.5);
  for (std::size_t i = 0; i < n; ++i) e1[i] = k1;
  e1[j_targ] = 0.5 * k1;
  e1[n + j_targ] = 0.5 * k1;

  qsim::StateVector psi;
  psi.nb = nb + 1;
  psi.a = mu_t;

  auto record = [&](std::size_t k) {
    result.trajectory.push_back({real_coord(psi, phi_t), real_coord(psi, e1)});
    double half = (2.0 * static_cast<double>(k) + 1.0) * result.theta / 2.0;
    result.model.push_back({std::sin(half), std::cos(half)});
  };
  record(0);
  for (std::size_t k = 1; k <= result.r; ++k) {
    qsim::reflect(psi, phi_t);  // R_phi~
    qsim::reflect(psi, mu_t);   // R_mu~
    qsim::negate(psi);
    record(k);
  }

  complexd overlap = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    overlap += std::conj(phi_t[i]) * psi.a[i];
  }
  result.success = std::norm(overlap);
  result.kappa_success = std::norm(psi.a[j_targ]) + std::norm(psi.a[n + j_targ]);
  result.final_state = std::move(psi);
  return result;
}

}  // namespace qbn::alg
