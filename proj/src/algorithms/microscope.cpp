#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qbn/algorithms.hpp"
#include "qbn/embedding.hpp"

namespace qbn::alg {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::size_t checked_bit_count(std::size_t n) {
  if (n < 2 || (n & (n - 1)) != 0) {
    throw Error(ErrorKind::validation,
                "p must have power-of-two length >= 2, got " + std::to_string(n));
  }
  std::size_t nb = static_cast<std::size_t>(std::countr_zero(n));
  if (nb >= 20) {
    throw Error(ErrorKind::validation,
                "p with 2^" + std::to_string(nb) + " entries is beyond the dense simulator");
  }
  return nb;
}

}  // namespace

MicroscopeSetup microscope_setup(const std::vector<double>& p,
                                 std::optional<double> alpha,
                                 std::optional<std::size_t> r) {
  MicroscopeSetup s;
  s.nb = checked_bit_count(p.size());
  s.p = p;
  double sum_p = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0)) {
      throw Error(ErrorKind::validation, "p[" + std::to_string(i) +
                                             "] = " + fmt17(p[i]) +
                                             " is outside [0, 1]");
    }
    s.q.push_back(1.0 - p[i]);
    s.phi_p.push_back(std::sqrt(p[i]));
    s.phi_q.push_back(std::sqrt(1.0 - p[i]));
    sum_p += p[i];
  }
  double nd = static_cast<double>(p.size());
  s.norm_p = std::sqrt(sum_p);
  s.norm_q = std::sqrt(nd - sum_p);
  if (std::abs(s.norm_p * s.norm_p + s.norm_q * s.norm_q - nd) > 1e-9) {
    throw Error(ErrorKind::logic, "|phi_p|^2 + |phi_q|^2 drifted away from N");
  }
  if (s.norm_p == 0.0) {
    throw Error(ErrorKind::promise_violation,
                "nothing to magnify: P(y=0|x) is zero for every x");
  }

  s.theta = 2.0 * std::atan2(s.norm_p, s.norm_q);
  s.alpha = alpha.value_or(s.theta);
  if (!(s.alpha > 0.0 && s.alpha <= kPi)) {
    throw Error(ErrorKind::validation,
                "alpha must lie in (0, pi], got " + fmt17(s.alpha));
  }
  if (r) {
    s.r = *r;
  } else {
    long long steps = std::llround((kPi - s.theta) / (2.0 * s.alpha));
    s.r = steps > 0 ? static_cast<std::size_t>(steps) : 0;
  }
  return s;
}

MicroscopeResult microscope_run(const MicroscopeSetup& setup) {
  std::size_t n = setup.p.size();
  std::size_t dim = 2 * n;
  double nd = static_cast<double>(n);
  if (setup.r > 0 && setup.norm_q == 0.0) {
    throw Error(ErrorKind::validation,
                "P(y=1|x) is zero everywhere: the state starts at e0 and any "
                "rotation moves it away");
  }

  // U_net: Hadamard on the x register, then the D-matrix rotating the y bit.
  AmplitudeMatrix prep = AmplitudeMatrix::Zero(dim, dim);
  AmplitudeMatrix h = embedding::hadamard_matrix(setup.nb);
  prep.block(0, 0, n, n) = h;
  prep.block(n, n, n, n) = h;
  AmplitudeMatrix u_net = embedding::d_matrix(setup.p, setup.q) * prep;

  // Column 0 must be Psi = (phi_p, phi_q) / sqrt(N).
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(u_net(i, 0) - complexd(setup.phi_p[i] / std::sqrt(nd), 0.0)) > 1e-12 ||
        std::abs(u_net(n + i, 0) - complexd(setup.phi_q[i] / std::sqrt(nd), 0.0)) > 1e-12) {
      throw Error(ErrorKind::logic, "U_net |0> does not equal Psi");
    }
  }

  AmplitudeMatrix r0 = AmplitudeMatrix::Identity(dim, dim);
  r0(0, 0) = -1.0;
  AmplitudeMatrix r_psi = u_net * r0 * u_net.adjoint();

  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(dim);
  for (std::size_t i = 0; i < n; ++i) {
    e0(i) = setup.phi_p[i] / setup.norm_p;
    if (setup.norm_q > 0.0) e1(n + i) = setup.phi_q[i] / setup.norm_q;
  }

  // W: clockwise quarter turn then counter-clockwise alpha/2 inside
  // span(e0, e1); identity on the orthogonal complement.
  double sa = std::sin(setup.alpha / 2.0);
  double ca = std::cos(setup.alpha / 2.0);
  AmplitudeMatrix w = AmplitudeMatrix::Identity(dim, dim);
  w -= e0 * e0.adjoint() + e1 * e1.adjoint();
  w += (sa * e0 - ca * e1) * e0.adjoint() + (ca * e0 + sa * e1) * e1.adjoint();
  AmplitudeMatrix step = -(r_psi * (w * r_psi * w.adjoint()));

  MicroscopeResult result;
  qsim::StateVector psi;
  psi.nb = setup.nb + 1;
  psi.a.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) psi.a[i] = u_net(i, 0);

  auto coord = [&](const Eigen::VectorXcd& e) {
    complexd acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i) acc += std::conj(e(i)) * psi.a[i];
    return acc.real();
  };
  double prev_angle = 0.0;
  auto record = [&](std::size_t k) {
    double c0 = coord(e0);
    double c1 = coord(e1);
    result.trajectory.push_back({c0, c1});
    double a = setup.theta / 2.0 + static_cast<double>(k) * setup.alpha;
    result.model.push_back({std::sin(a), std::cos(a)});
    double angle = std::atan2(c0, c1);
    if (k > 0) {
      double inc = angle - prev_angle;
      while (inc <= -kPi) inc += 2.0 * kPi;
      while (inc > kPi) inc -= 2.0 * kPi;
      result.total_rotation += inc;
    }
    prev_angle = angle;
  };

  record(0);
  for (std::size_t k = 1; k <= setup.r; ++k) {
    qsim::apply_matrix(psi, step);
    record(k);
  }

  result.overlap_e0 = 0.0;
  complexd acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) acc += std::conj(e0(i)) * psi.a[i];
  result.overlap_e0 = std::norm(acc);
  result.final_state = std::move(psi);
  return result;
}

}  // namespace qbn::alg
