#include <algorithm>
#include <cmath>
#include <set>

#include "qbn/embedding.hpp"

namespace qbn::embedding {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_targets(const std::vector<std::size_t>& targets, std::size_t limit) {
  std::set<std::size_t> seen;
  for (std::size_t t : targets) {
    if (t >= limit)
      throw Error(ErrorKind::validation,
                  "target " + std::to_string(t) + " out of range (limit " +
                      std::to_string(limit) + ")");
    if (!seen.insert(t).second)
      throw Error(ErrorKind::validation,
                  "target " + std::to_string(t) + " listed twice");
  }
}

}  // namespace

UnitaryEmbedding embed_xor() {
  UnitaryEmbedding e;
  e.ny = 2;
  e.nsink = 2;
  e.nx = 4;
  e.nsrc = 1;
  e.matrix = AmplitudeMatrix::Zero(4, 4);
  for (std::size_t x1 = 0; x1 < 2; ++x1)
    for (std::size_t x2 = 0; x2 < 2; ++x2) {
      std::size_t y = x1 ^ x2;
      for (std::size_t sink = 0; sink < 2; ++sink) {
        double sign = (x1 & sink) ? -1.0 : 1.0;
        e.matrix(y + 2 * sink, x1 + 2 * x2) = sign * kInvSqrt2;
      }
    }
  return e;
}

ProbabilityMatrix pi_targ(const std::vector<std::size_t>& targets, std::size_t nb) {
  std::size_t n = std::size_t{1} << nb;
  check_targets(targets, n);
  ProbabilityMatrix m = ProbabilityMatrix::Zero(n, n);
  for (std::size_t t : targets) m(t, t) = 1.0;
  return m;
}

UnitaryEmbedding embed_deterministic_gate(DetGateMode mode,
                                          const std::vector<std::size_t>& targets,
                                          std::size_t nb) {
  std::size_t n = std::size_t{1} << nb;
  check_targets(targets, n);
  if ((mode == DetGateMode::and_like || mode == DetGateMode::or_like) &&
      targets.size() != 1)
    throw Error(ErrorKind::validation,
                "this gate form needs exactly one target, got " +
                    std::to_string(targets.size()));

  std::vector<bool> in_t(n, false);
  for (std::size_t t : targets) in_t[t] = true;

  UnitaryEmbedding e;
  e.ny = 2;
  e.nsink = n;
  e.nx = n;
  e.nsrc = 2;
  e.matrix = AmplitudeMatrix::Zero(2 * n, 2 * n);
  for (std::size_t x = 0; x < n; ++x) {
    // 2x2 block over (y, source) at sink == x; zero elsewhere
    double b[2][2];
    if (mode == DetGateMode::or_like) {
      // f maps the single target to 0 and everything else to 1
      if (in_t[x]) {
        b[0][0] = 1.0; b[0][1] = 0.0;
        b[1][0] = 0.0; b[1][1] = -1.0;
      } else {
        b[0][0] = 0.0; b[0][1] = 1.0;
        b[1][0] = 1.0; b[1][1] = 0.0;
      }
    } else {
      // f maps targets to 1, the rest to 0
      if (in_t[x]) {
        b[0][0] = 0.0; b[0][1] = -1.0;
        b[1][0] = 1.0; b[1][1] = 0.0;
      } else {
        b[0][0] = 1.0; b[0][1] = 0.0;
        b[1][0] = 0.0; b[1][1] = 1.0;
      }
    }
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t src = 0; src < 2; ++src)
        e.matrix(y + 2 * x, x + n * src) = b[y][src];
  }
  return e;
}

AmplitudeMatrix d_matrix(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size() || p.empty())
    throw Error(ErrorKind::validation, "p and q must be non-empty and equal length");
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] < 0.0 || p[i] > 1.0 || q[i] < 0.0 || q[i] > 1.0)
      throw Error(ErrorKind::validation,
                  "entry " + std::to_string(i) + " outside [0, 1]");
    if (std::abs(p[i] + q[i] - 1.0) > 1e-12)
      throw Error(ErrorKind::validation,
                  "p[" + std::to_string(i) + "] + q[" + std::to_string(i) +
                      "] = " + fmt17(p[i] + q[i]) + ", expected 1");
  }
  AmplitudeMatrix m = AmplitudeMatrix::Zero(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    double sp = std::sqrt(p[i]);
    double sq = std::sqrt(q[i]);
    m(i, i) = sp;
    m(i, i + n) = -sq;
    m(i + n, i) = sq;
    m(i + n, i + n) = sp;
  }
  return m;
}

QuasiDeterministicEmbedding embed_quasi_deterministic(
    const std::vector<std::size_t>& targets, std::size_t nb,
    const std::vector<BitNoise>& noise) {
  if (noise.size() != nb)
    throw Error(ErrorKind::validation,
                "need one noise entry per input bit: got " +
                    std::to_string(noise.size()) + " for " + std::to_string(nb) +
                    " bits");
  QuasiDeterministicEmbedding out;
  for (std::size_t bit = 0; bit < nb; ++bit) {
    const BitNoise& bn = noise[bit];
    if (bn.p01 < 0.0 || bn.p01 > 1.0 || bn.p10 < 0.0 || bn.p10 > 1.0)
      throw Error(ErrorKind::validation,
                  "noise for bit " + std::to_string(bit) + " outside [0, 1]");
    // P(t|x): column x = 0 is (1-p10, p10); column x = 1 is (p01, 1-p01).
    double pt[2][2] = {{1.0 - bn.p10, bn.p01}, {bn.p10, 1.0 - bn.p01}};
    UnitaryEmbedding e;
    e.ny = 2;
    e.nsink = 2;
    e.nx = 2;
    e.nsrc = 2;
    e.matrix = AmplitudeMatrix::Zero(4, 4);
    for (std::size_t x = 0; x < 2; ++x) {
      double s0 = std::sqrt(pt[0][x]);
      double s1 = std::sqrt(pt[1][x]);
      // rotation block over (t, source) at sink == x
      e.matrix(0 + 2 * x, x + 2 * 0) = s0;
      e.matrix(0 + 2 * x, x + 2 * 1) = -s1;
      e.matrix(1 + 2 * x, x + 2 * 0) = s1;
      e.matrix(1 + 2 * x, x + 2 * 1) = s0;
    }
    out.bit_noise.push_back(std::move(e));
  }
  out.gate = embed_deterministic_gate(DetGateMode::multi_target, targets, nb);
  return out;
}

ProbabilityMatrix composite_probability(const QuasiDeterministicEmbedding& e) {
  const std::size_t nb = e.bit_noise.size();
  const std::size_t n = std::size_t{1} << nb;
  std::vector<ProbabilityMatrix> bit_p;
  bit_p.reserve(nb);
  for (const UnitaryEmbedding& b : e.bit_noise) bit_p.push_back(recovered_probability(b));
  ProbabilityMatrix gate_p = recovered_probability(e.gate);

  ProbabilityMatrix out = ProbabilityMatrix::Zero(2, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t t = 0; t < n; ++t) {
      double w = 1.0;
      for (std::size_t bit = 0; bit < nb; ++bit)
        w *= bit_p[bit]((t >> bit) & 1, (x >> bit) & 1);
      out(0, x) += gate_p(0, t) * w;
      out(1, x) += gate_p(1, t) * w;
    }
  return out;
}

}  // namespace qbn::embedding
