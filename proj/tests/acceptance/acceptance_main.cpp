// Acceptance gate: every shipped guarantee, one pass/fail line each.
// Exit code 0 only when all criteria hold.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qbn/algorithms.hpp"
#include "qbn/embedding.hpp"
#include "qbn/inference.hpp"
#include "qbn/netcore.hpp"
#include "qbn/qsim.hpp"

using namespace qbn;

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(ErrorKind::logic, msg);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

double u01(std::mt19937_64& eng) { return (eng() >> 11) * 0x1.0p-53; }

std::string data_path(const std::string& name) {
  return std::string(QBN_DATA_DIR) + "/" + name;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- 1: random stochastic matrices embed into unitaries -----------------------

std::string check_matrix_embeddings() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 eng(20240817);
  const std::size_t ny_choices[] = {2, 3, 4};
  const std::size_t nx_choices[] = {2, 4, 8};
  double worst_unitarity = 0.0;
  double worst_recovery = 0.0;
  for (int i = 0; i < 200; ++i) {
    std::size_t ny = ny_choices[i % 3];
    std::size_t nx = nx_choices[(i / 3) % 3];
    ProbabilityMatrix p(ny, nx);
    for (std::size_t c = 0; c < nx; ++c) {
      double sum = 0.0;
      for (std::size_t r = 0; r < ny; ++r) {
        double v = u01(eng);
        // sparse columns every third matrix to exercise the completion
        if (i % 3 == 0 && v < 0.4 && r + 1 < ny) v = 0.0;
        p(r, c) = v;
        sum += v;
      }
      if (sum == 0.0) {
        p(0, c) = 1.0;
        sum = 1.0;
      }
      for (std::size_t r = 0; r < ny; ++r) p(r, c) /= sum;
    }
    embedding::UnitaryEmbedding e = embedding::embed_probability_matrix(p);
    double ue = embedding::unitarity_error(e.matrix);
    double re = (embedding::recovered_probability(e) - p).cwiseAbs().maxCoeff();
    worst_unitarity = std::max(worst_unitarity, ue);
    worst_recovery = std::max(worst_recovery, re);
  }
  double secs = elapsed_s(t0);
  require(worst_unitarity < 1e-10, "unitarity error " + sci(worst_unitarity));
  require(worst_recovery < 1e-12, "recovery error " + sci(worst_recovery));
  require(secs < 10.0, "took " + sci(secs) + " s, limit 10 s");
  return "200 matrices, worst unitarity " + sci(worst_unitarity) + ", worst recovery " +
         sci(worst_recovery) + ", " + sci(secs) + " s";
}

// --- 2: squared-magnitude fixed points -----------------------------------------

std::string check_has_fixed_points() {
  ProbabilityMatrix h = embedding::has_matrix(embedding::hadamard_matrix(1));
  double worst = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) worst = std::max(worst, std::abs(h(r, c) - 0.5));

  for (double theta : {0.3, 1.1, 2.0}) {
    AmplitudeMatrix rot(2, 2);
    double ct = std::cos(theta), st = std::sin(theta);
    rot << ct, -st, st, ct;
    ProbabilityMatrix got = embedding::has_matrix(rot);
    ProbabilityMatrix want(2, 2);
    want << ct * ct, st * st, st * st, ct * ct;
    worst = std::max(worst, (got - want).cwiseAbs().maxCoeff());
  }
  require(worst < 1e-15, "deviation " + sci(worst));
  return "uniform and rotation shadows exact to " + sci(worst);
}

// --- 3: lung net end to end ------------------------------------------------------

std::string check_lung_net() {
  auto t0 = std::chrono::steady_clock::now();
  CBNet lung = parse_net_file(data_path("lung.json"));
  embedding::EmbedResult res = embedding::embed_cbnet(lung);
  qsim::VerifyReport report = qsim::verify_net_embedding(lung, res.qbnet, res.leafmap);
  require(report.ok && report.entries == 256,
          "verification failed: " + sci(report.max_error) + " over " +
              std::to_string(report.entries) + " states");
  require(report.max_error < 1e-9, "max deviation " + sci(report.max_error));

  inference::JointTable joint = inference::exact_joint(lung);
  double t_classical = inference::marginal(joint, {"t"}).probs[1];
  require(std::abs(t_classical - 0.0104) < 1e-12,
          "classical P(t=1) = " + fmt17(t_classical));

  inference::JointTable folded =
      qsim::original_distribution(lung, res.qbnet, res.leafmap);
  double t_quantum = inference::marginal(folded, {"t"}).probs[1];
  require(std::abs(t_quantum - t_classical) < 1e-12,
          "quantum P(t=1) = " + fmt17(t_quantum));

  double secs = elapsed_s(t0);
  require(secs < 60.0, "took " + sci(secs) + " s, limit 60 s");
  return "joint deviation " + sci(report.max_error) + ", P(t=1) spot diff " +
         sci(std::abs(t_quantum - t_classical)) + ", " + sci(secs) + " s";
}

// --- 4: scattering net leaf amplitudes -----------------------------------------

std::string check_scattering_amplitudes() {
  CBNet net = parse_net_file(data_path("scattering.json"));
  embedding::EmbedResult res = embedding::embed_cbnet(net);
  qsim::LeafDistribution dist = qsim::leaf_distribution(res.qbnet);
  inference::JointTable joint = inference::exact_joint(net);

  std::vector<std::size_t> leaf_pos(joint.scope.size());
  for (std::size_t k = 0; k < joint.scope.size(); ++k) {
    const std::string& leaf = res.leafmap.leaf_for(joint.scope[k]);
    for (std::size_t i = 0; i < dist.scope.size(); ++i)
      if (dist.scope[i] == leaf) leaf_pos[k] = i;
  }

  // every nonzero leaf amplitude is the square root of the classical joint at
  // the assignment it encodes, and the per-assignment mass adds back up
  std::vector<double> acc(joint.probs.size(), 0.0);
  PackedShape shape{dist.dims};
  std::vector<std::size_t> digits;
  std::vector<std::size_t> odig(joint.scope.size());
  double worst_amp = 0.0;
  for (std::size_t idx = 0; idx < dist.amps.size(); ++idx) {
    complexd amp = dist.amps[idx];
    require(std::abs(amp.imag()) < 1e-12, "complex leaf amplitude");
    shape.unpack(idx, digits);
    for (std::size_t k = 0; k < joint.scope.size(); ++k)
      odig[k] = digits[leaf_pos[k]] % joint.dims[k];
    double p = joint.probs[pack_index(odig, joint.dims)];
    if (amp != complexd(0.0, 0.0))
      worst_amp = std::max(worst_amp, std::abs(amp.real() - std::sqrt(p)));
    acc[pack_index(odig, joint.dims)] += std::norm(amp);
  }
  double worst_mass = 0.0;
  for (std::size_t i = 0; i < acc.size(); ++i)
    worst_mass = std::max(worst_mass, std::abs(acc[i] - joint.probs[i]));
  require(worst_amp < 1e-12, "amplitude deviation " + sci(worst_amp));
  require(worst_mass < 1e-12, "mass deviation " + sci(worst_mass));
  return "amplitudes match sqrt of the joint to " + sci(worst_amp) + ", mass to " +
         sci(worst_mass);
}

// --- 5: Deutsch-Jozsa dichotomy ---------------------------------------------------

std::vector<double> dj_circuit(const alg::BoolFn& f) {
  std::size_t n = f.domain();
  qsim::StateVector psi = qsim::StateVector::basis(f.nb + 1, 0);
  qsim::pauli(psi, qsim::PauliAxis::x, f.nb);
  qsim::hadamard_bit(psi, f.nb);
  for (std::size_t b = 0; b < f.nb; ++b) qsim::hadamard_bit(psi, b);
  qsim::xor_oracle(psi, f.nb, 1,
                   std::vector<std::uint64_t>(f.table.begin(), f.table.end()));
  for (std::size_t b = 0; b < f.nb; ++b) qsim::hadamard_bit(psi, b);
  qsim::hadamard_bit(psi, f.nb);
  qsim::pauli(psi, qsim::PauliAxis::x, f.nb);
  std::vector<double> out(n, 0.0);
  for (std::size_t xp = 0; xp < n; ++xp)
    out[xp] = std::norm(psi.a[xp]) + std::norm(psi.a[n + xp]);
  return out;
}

std::string check_deutsch_jozsa() {
  std::size_t nb = 3;
  double worst_pair = 0.0;
  double worst_value = 0.0;
  auto run_one = [&](const alg::BoolFn& f, bool constant) {
    std::vector<double> closed = alg::dj_distribution(f);
    std::vector<double> circuit = dj_circuit(f);
    std::vector<double> net;
    {
      qsim::LeafDistribution dist = qsim::leaf_distribution(alg::dj_qbnet(f));
      inference::JointTable m =
          inference::marginal(qsim::as_joint_table(dist), {"Xp"});
      net = m.probs;
    }
    for (std::size_t i = 0; i < closed.size(); ++i) {
      worst_pair = std::max(worst_pair, std::abs(closed[i] - circuit[i]));
      worst_pair = std::max(worst_pair, std::abs(closed[i] - net[i]));
      worst_pair = std::max(worst_pair, std::abs(circuit[i] - net[i]));
    }
    double want = constant ? 1.0 : 0.0;
    worst_value = std::max(worst_value, std::abs(closed[0] - want));
  };
  run_one(alg::constant_fn(nb, 0), true);
  run_one(alg::constant_fn(nb, 1), true);
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    run_one(alg::random_balanced_fn(nb, seed), false);
  require(worst_value < 1e-12, "P(X'=0) off by " + sci(worst_value));
  require(worst_pair < 1e-12, "route disagreement " + sci(worst_pair));
  return "102 oracles, P(X'=0) exact to " + sci(worst_value) +
         ", three routes mutually within " + sci(worst_pair);
}

// --- 6: Simon periods -------------------------------------------------------------

std::string check_simon() {
  std::size_t nb = 3;
  std::size_t n = 8;
  double worst = 0.0;
  for (std::size_t period = 1; period < n; ++period)
    for (std::uint64_t seed : {1, 2, 3}) {
      alg::BoolFn f = alg::simon_planted_fn(nb, period, seed);
      std::vector<double> dist = alg::simon_distribution(f);
      std::vector<std::size_t> support;
      for (std::size_t xp = 0; xp < n; ++xp) {
        bool orth = std::popcount(xp & period) % 2 == 0;
        worst = std::max(worst, std::abs(dist[xp] - (orth ? 0.25 : 0.0)));
        if (dist[xp] > 0) support.push_back(xp);
      }
      require(alg::simon_recover_period(nb, support) == period,
              "solver missed period " + std::to_string(period));
    }
  require(worst < 1e-12, "distribution deviation " + sci(worst));
  return "21 planted instances, distribution exact to " + sci(worst) +
         ", all periods recovered";
}

// --- 7: Bernstein-Vazirani exactness ----------------------------------------------

std::string check_bernstein_vazirani() {
  std::size_t nb = 3, n = 8;
  double worst = 0.0;
  double s = 1.0 / std::sqrt(2.0);
  for (std::size_t b = 0; b < n; ++b) {
    alg::BvResult res = alg::bv_run(nb, b);
    require(res.recovered == b, "recovered " + std::to_string(res.recovered));
    for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(res.plain.a[i] - (i == b ? 1.0 : 0.0)));
    for (std::size_t i = 0; i < 2 * n; ++i) {
      complexd want = 0.0;
      if (i == b) want = s;
      if (i == n + b) want = -s;
      worst = std::max(worst, std::abs(res.obfuscated.a[i] - want));
    }
  }
  require(worst < 1e-12, "state deviation " + sci(worst));
  return "all 8 hidden vectors exact in both formulations, worst " + sci(worst);
}

// --- 8: Grover -----------------------------------------------------------------

std::string check_grover() {
  alg::GroverResult g4 = alg::grover_run(2, 3);
  require(g4.r == 1, "N=4 used r=" + std::to_string(g4.r));
  require(std::abs(g4.success - 1.0) < 1e-12, "N=4 success " + fmt17(g4.success));

  alg::GroverResult g1024 = alg::grover_run(10, 512);
  require(g1024.r == 25, "N=1024 used r=" + std::to_string(g1024.r));
  require(g1024.success >= 0.999, "N=1024 success " + fmt17(g1024.success));

  double worst_model = 0.0;
  double worst_single = 0.0;
  for (std::size_t nb : {2, 5, 10}) {
    std::size_t n = std::size_t{1} << nb;
    std::size_t j = n - 2;
    alg::GroverResult g = alg::grover_run(nb, j);
    for (std::size_t k = 0; k < g.trajectory.size(); ++k) {
      worst_model = std::max(worst_model, std::abs(g.trajectory[k][0] - g.model[k][0]));
      worst_model = std::max(worst_model, std::abs(g.trajectory[k][1] - g.model[k][1]));
    }
    // single-query form: iterate against the fixed state |0>, then relabel
    std::vector<complexd> mu(n, complexd(1.0 / std::sqrt(double(n)), 0.0));
    qsim::StateVector psi = qsim::StateVector::basis(nb, 0);
    qsim::hadamard_all(psi);
    for (std::size_t k = 0; k < g.r; ++k) {
      qsim::flip_sign(psi, 0);
      qsim::reflect(psi, mu);
      qsim::negate(psi);
    }
    std::swap(psi.a[0], psi.a[j]);
    for (std::size_t i = 0; i < n; ++i)
      worst_single = std::max(worst_single, std::abs(psi.a[i] - g.final_state.a[i]));
  }
  require(worst_model < 1e-10, "2D model deviation " + sci(worst_model));
  require(worst_single < 1e-10, "single-query deviation " + sci(worst_single));
  return "N=4 exact, N=1024 success " + fmt17(g1024.success) + ", model within " +
         sci(worst_model) + ", single-query within " + sci(worst_single);
}

// --- 9: the doubled-space search variant -------------------------------------------

std::string check_younes() {
  double worst = 0.0;
  for (std::size_t nb = 2; nb <= 6; ++nb) {
    std::size_t n = std::size_t{1} << nb;
    alg::YounesResult y = alg::younes_run(nb, n / 2);
    require(y.r == alg::grover_optimal_r(2 * n),
            "nb=" + std::to_string(nb) + " used r=" + std::to_string(y.r));
    double model = std::pow(std::sin((2.0 * y.r + 1.0) * y.theta / 2.0), 2);
    worst = std::max(worst, std::abs(y.success - model));
    for (std::size_t k = 0; k < y.trajectory.size(); ++k) {
      worst = std::max(worst, std::abs(y.trajectory[k][0] - y.model[k][0]));
      worst = std::max(worst, std::abs(y.trajectory[k][1] - y.model[k][1]));
    }
    require(y.kappa_success >= y.success - 1e-12, "control readout below the overlap");
  }
  require(worst < 1e-10, "model deviation " + sci(worst));
  return "nb 2..6 follow the doubled-space iteration rule, model within " + sci(worst);
}

// --- 10: probability magnification ---------------------------------------------

std::string check_microscope() {
  std::vector<double> p(32, 0.0);
  std::size_t j = 11;
  p[j] = 1.0;
  alg::MicroscopeSetup s = alg::microscope_setup(p);
  require(s.r == 4, "setup chose r=" + std::to_string(s.r));
  alg::MicroscopeResult m = alg::microscope_run(s);
  require(m.overlap_e0 >= 0.999, "overlap " + fmt17(m.overlap_e0));

  alg::GroverResult g = alg::grover_run(5, j, 4);
  require(g.trajectory.size() == m.trajectory.size(), "trajectory lengths differ");
  double worst = 0.0;
  for (std::size_t k = 0; k < g.trajectory.size(); ++k) {
    worst = std::max(worst, std::abs(m.trajectory[k][0] - g.trajectory[k][0]));
    worst = std::max(worst, std::abs(m.trajectory[k][1] - g.trajectory[k][1]));
  }
  require(worst < 1e-10, "trajectories differ by " + sci(worst));
  return "overlap " + fmt17(m.overlap_e0) + ", trajectory matches the search walk to " +
         sci(worst);
}

// --- 11: deterministic gate embeddings -------------------------------------------

void check_gate_blocks(embedding::DetGateMode mode, const std::vector<std::size_t>& targets,
                       std::size_t nb) {
  std::size_t n = std::size_t{1} << nb;
  std::vector<bool> in_t(n, false);
  for (std::size_t t : targets) in_t[t] = true;
  embedding::UnitaryEmbedding e = embedding::embed_deterministic_gate(mode, targets, nb);

  for (std::size_t x = 0; x < n; ++x) {
    double b[2][2];
    if (mode == embedding::DetGateMode::or_like) {
      if (in_t[x]) {
        b[0][0] = 1.0; b[0][1] = 0.0; b[1][0] = 0.0; b[1][1] = -1.0;
      } else {
        b[0][0] = 0.0; b[0][1] = 1.0; b[1][0] = 1.0; b[1][1] = 0.0;
      }
    } else {
      if (in_t[x]) {
        b[0][0] = 0.0; b[0][1] = -1.0; b[1][0] = 1.0; b[1][1] = 0.0;
      } else {
        b[0][0] = 1.0; b[0][1] = 0.0; b[1][0] = 0.0; b[1][1] = 1.0;
      }
    }
    for (std::size_t sink = 0; sink < n; ++sink)
      for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t src = 0; src < 2; ++src) {
          double want = sink == x ? b[y][src] : 0.0;
          require(e.matrix(y + 2 * sink, x + n * src) == complexd(want, 0.0),
                  "block mismatch at x=" + std::to_string(x));
        }
  }

  ProbabilityMatrix p = embedding::recovered_probability(e);
  for (std::size_t x = 0; x < n; ++x) {
    bool one = mode == embedding::DetGateMode::or_like ? !in_t[x] : in_t[x];
    require(p(1, x) == (one ? 1.0 : 0.0) && p(0, x) == (one ? 0.0 : 1.0),
            "shadow is not the truth table at x=" + std::to_string(x));
  }
}

std::string check_deterministic_gates() {
  std::size_t cases = 0;
  for (std::size_t nb : {2, 3}) {
    std::size_t n = std::size_t{1} << nb;
    for (std::size_t t = 0; t < n; ++t) {
      check_gate_blocks(embedding::DetGateMode::and_like, {t}, nb);
      check_gate_blocks(embedding::DetGateMode::or_like, {t}, nb);
      cases += 2;
    }
  }
  check_gate_blocks(embedding::DetGateMode::multi_target, {1, 4, 6}, 3);
  ++cases;
  return std::to_string(cases) + " gates equal their closed forms exactly";
}

// --- 12: noisy gates ------------------------------------------------------------

std::string check_noisy_gates() {
  std::vector<std::size_t> targets = {1, 2, 3};
  std::vector<embedding::BitNoise> noise = {{0.1, 0.1}, {0.1, 0.1}};
  embedding::QuasiDeterministicEmbedding e =
      embedding::embed_quasi_deterministic(targets, 2, noise);
  ProbabilityMatrix composed = embedding::composite_probability(e);

  // oracle straight from the definition: flip bits independently, apply OR
  ProbabilityMatrix want = ProbabilityMatrix::Zero(2, 4);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t t = 0; t < 4; ++t) {
      double w = 1.0;
      for (std::size_t bit = 0; bit < 2; ++bit) {
        bool xb = (x >> bit) & 1;
        bool tb = (t >> bit) & 1;
        double p1 = xb ? 1.0 - noise[bit].p01 : noise[bit].p10;
        w *= tb ? p1 : 1.0 - p1;
      }
      want(t == 0 ? 0 : 1, x) += w;
    }
  double worst = (composed - want).cwiseAbs().maxCoeff();
  require(worst < 1e-12, "composite deviation " + sci(worst));
  require(std::abs(composed(1, 3) - 0.99) < 1e-12,
          "P(y=1 | 1,1) = " + fmt17(composed(1, 3)));
  return "noisy-OR composite within " + sci(worst) + ", P(y=1|1,1) = " +
         fmt17(composed(1, 3));
}

// --- 13: sampling statistics ------------------------------------------------------

std::string check_sampling() {
  CBNet lung = parse_net_file(data_path("lung.json"));
  embedding::EmbedResult res = embedding::embed_cbnet(lung);

  inference::JointTable joint = inference::exact_joint(lung);
  double oracle = inference::marginal(joint, {"d"}).probs[1];
  require(std::abs(oracle - 0.4359706) < 1e-12, "oracle P(d=1) = " + fmt17(oracle));

  const std::size_t n = 100000;
  qsim::LeafSamples draws = qsim::sample_leaves(res.qbnet, n, kDefaultSeed);
  const std::string& leaf = res.leafmap.leaf_for("d");
  inference::JointTable est = qsim::estimate_conditional(draws, {leaf}, {});
  double p_hat = est.probs[1];
  double bound = 3.0 * std::sqrt(oracle * (1.0 - oracle) / double(n));
  require(std::abs(p_hat - oracle) <= bound,
          "estimate " + fmt17(p_hat) + " outside " + sci(bound));

  qsim::LeafSamples again = qsim::sample_leaves(res.qbnet, n, kDefaultSeed);
  require(draws.draws == again.draws, "rerun drew different samples");
  return "P(d=1) estimate " + fmt17(p_hat) + " vs oracle " + fmt17(oracle) +
         " (3 SE = " + sci(bound) + "), rerun identical";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<std::string()> check;
  };
  const std::vector<Criterion> criteria = {
      {"matrix embeddings", check_matrix_embeddings},
      {"squared-magnitude fixed points", check_has_fixed_points},
      {"lung net end to end", check_lung_net},
      {"scattering leaf amplitudes", check_scattering_amplitudes},
      {"constant-vs-balanced dichotomy", check_deutsch_jozsa},
      {"period finding", check_simon},
      {"hidden-vector recovery", check_bernstein_vazirani},
      {"search iteration", check_grover},
      {"doubled-space search variant", check_younes},
      {"probability magnification", check_microscope},
      {"deterministic gate embeddings", check_deterministic_gates},
      {"noisy gate composition", check_noisy_gates},
      {"sampling statistics", check_sampling},
  };

  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string verdict, detail;
    try {
      detail = criteria[i].check();
      verdict = "[PASS]";
      ++passed;
    } catch (const std::exception& e) {
      verdict = "[FAIL]";
      detail = e.what();
    }
    std::printf("%s %2zu %s: %s\n", verdict.c_str(), i + 1, criteria[i].name,
                detail.c_str());
  }
  std::printf("acceptance: %d of %zu criteria passed\n", passed, criteria.size());
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
