#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qbn/netcore.hpp"
#include "qbn/qsim.hpp"

namespace qbn::alg {

/// A function f: {0..2^nb - 1} -> naturals as a dense truth table. Scalar
/// boolean use keeps values in {0, 1}; the period-finding demo stores nb-bit
/// values.
struct BoolFn {
  std::size_t nb = 0;
  std::vector<std::size_t> table;

  std::size_t domain() const { return std::size_t{1} << nb; }
  std::size_t operator()(std::size_t x) const { return table[x]; }
};

BoolFn constant_fn(std::size_t nb, std::size_t value);

/// f(x) = (mask . x) xor offset, the bitwise dot product mod 2.
BoolFn parity_fn(std::size_t nb, std::size_t mask, std::size_t offset = 0);

/// A uniformly shuffled table with 2^(nb-1) zeros and as many ones.
/// Deterministic in the seed.
BoolFn random_balanced_fn(std::size_t nb, std::uint64_t seed);

/// A 2-to-1 function with f(x) = f(x xor period) for all x, image values
/// drawn without repetition from {0..2^nb - 1}. Deterministic in the seed.
BoolFn simon_planted_fn(std::size_t nb, std::size_t period, std::uint64_t seed);

bool is_constant(const BoolFn& f);
bool is_balanced(const BoolFn& f);

/// The unique nonzero period of a 2-to-1 periodic function, found by table
/// scan; nullopt when f is not of that form.
std::optional<std::size_t> simon_period_scan(const BoolFn& f);

// --- Deutsch-Jozsa -----------------------------------------------------------

/// Output distribution P(X') of the Deutsch-Jozsa circuit on f with both
/// registers prepared at zero:
///
///   P(X') = (1/4^nb) | sum_x (-1)^(x.X' + f(x)) |^2
///
/// Computed two ways (dense circuit simulation and the closed form above) and
/// cross-checked to 1e-12 before returning. f must be {0,1}-valued.
std::vector<double> dj_distribution(const BoolFn& f);

enum class DjVerdict { constant, balanced };

/// One-measurement classification: P(X'=0) is 1 for constant f and 0 for
/// balanced f. The promise is checked by table scan first; a function in
/// neither class throws Error(promise_violation).
DjVerdict dj_classify(const BoolFn& f);

/// The Deutsch-Jozsa computation as a quantum Bayesian net. Roots X, Y pinned
/// to zero; x, y their Hadamard-rotated images; a compound node c carrying
/// (x, y xor f(x)); selectors x', y'; and Hadamard-rotated leaves X', Y'.
/// The X' marginal of its leaf distribution equals dj_distribution(f).
QBNet dj_qbnet(const BoolFn& f);

// --- Simon -------------------------------------------------------------------

/// Output distribution P(X') for a 2-to-1 periodic f with period D:
/// P(X') = delta(X'.D, 0) / 2^(nb-1). The promise is validated by table scan
/// (Error(promise_violation) otherwise) and the closed form is cross-checked
/// against the generic amplitude sum to 1e-12.
std::vector<double> simon_distribution(const BoolFn& f);

/// Solve X'(i) . D = 0 over GF(2) for the period D. `xs` are observed X'
/// values (support vectors or measurement results). Gaussian elimination with
/// deterministic pivoting; requires rank exactly nb - 1. Lower rank throws
/// Error(validation) ("need more samples"), full rank means the inputs admit
/// no nonzero period and throws Error(promise_violation).
std::size_t simon_recover_period(std::size_t nb, const std::vector<std::size_t>& xs);

/// Simon's computation as a quantum Bayesian net: roots X, Y pinned to zero,
/// x the Hadamard image of X, compound c = (x, Y xor f(x)), selector x',
/// Hadamard leaf X' and selector leaf Y'. The X' marginal of its leaf
/// distribution equals simon_distribution(f).
QBNet simon_qbnet(const BoolFn& f);

// --- Bernstein-Vazirani ------------------------------------------------------

struct BvResult {
  std::size_t recovered = 0;       // control-register value measured at the end
  qsim::StateVector plain;         // nb bits: product of sigma_x^(b_i)
  qsim::StateVector obfuscated;    // nb+1 bits, target bit most significant
};

/// Both formulations of Bernstein-Vazirani on hidden vector b. The plain
/// route applies sigma_x to bit i wherever b_i = 1, taking |0> to |b>
/// exactly. The obfuscated route prepares the extra target bit in |->,
/// conjugates a parity oracle with Hadamards on the controls, and ends in
/// |-> (x) |b> exactly. Both are simulated and checked against each other.
BvResult bv_run(std::size_t nb, std::size_t b);

/// The two-node net X -> X' with amplitude delta(X', X xor b): the whole
/// algorithm as a Bayesian net. Its leaf distribution is a point mass at b.
QBNet bv_qbnet(std::size_t nb, std::size_t b);

// --- Grover ------------------------------------------------------------------

/// Iterations maximizing the success probability at the first peak:
/// round(pi / (2 theta) - 1/2) with sin(theta) = 2 sqrt(N-1) / N.
std::size_t grover_optimal_r(std::size_t n);

struct GroverResult {
  std::size_t r = 0;
  double theta = 0.0;
  double success = 0.0;            // |<target|final>|^2
  qsim::StateVector final_state;
  /// Coordinates (<target|psi>, <e1|psi>) after k iterations, k = 0..r, where
  /// e1 is the unit vector along the non-target directions.
  std::vector<std::array<double, 2>> trajectory;
  /// The rotation picture predicts (sin((2k+1) theta/2), cos((2k+1) theta/2)).
  std::vector<std::array<double, 2>> model;
};

/// Full 2^nb state-vector simulation of (-R_mu R_phi)^r applied to the
/// uniform state mu, with phi the basis state j_targ. Default r is
/// grover_optimal_r(2^nb).
GroverResult grover_run(std::size_t nb, std::size_t j_targ,
                        std::optional<std::size_t> r = std::nullopt);

/// Grover's computation as a Markov-chain net: a root pinned to zero, a
/// Hadamard node preparing the uniform state, then r nodes each carrying the
/// matrix of -R_mu R_phi. Its leaf distribution equals the circuit's output
/// probabilities.
QBNet grover_qbnet(std::size_t nb, std::size_t j_targ,
                   std::optional<std::size_t> r = std::nullopt);

// --- Younes-Miller variant ---------------------------------------------------

struct YounesResult {
  std::size_t r = 0;
  double theta = 0.0;
  double success = 0.0;        // |<phi~|final>|^2, the rotation-picture value
  double kappa_success = 0.0;  // P(control register = j_targ), >= success
  qsim::StateVector final_state;  // nb+1 bits, extra bit most significant
  std::vector<std::array<double, 2>> trajectory;
  std::vector<std::array<double, 2>> model;
};

/// The extra-qubit variant: iterate -R_mu~ R_phi~ on nb+1 bits starting from
/// mu~ = |0> (x) mu, with phi~ = |-> (x) phi. The rotation angle satisfies
/// sin(theta) = sqrt(2N-1) / N, which is Grover's angle with N replaced by
/// 2N, so the default r is grover_optimal_r(2N).
YounesResult younes_run(std::size_t nb, std::size_t j_targ,
                        std::optional<std::size_t> r = std::nullopt);

// --- Grover's Microscope -----------------------------------------------------

/// Derived quantities for magnifying the y = 0 branch of a voting net with
/// uniform prior: p_i = P(y=0 | x=i).
struct MicroscopeSetup {
  std::size_t nb = 0;
  std::vector<double> p, q;            // q_i = 1 - p_i
  std::vector<double> phi_p, phi_q;    // sqrt(p_i), sqrt(q_i)
  double norm_p = 0.0, norm_q = 0.0;   // |phi_p|, |phi_q|
  double theta = 0.0;                  // cos(theta/2) = |phi_q| / sqrt(N)
  double alpha = 0.0;                  // rotation per iteration, default theta
  std::size_t r = 0;                   // default round((pi - theta) / (2 alpha))
};

/// Validates p (power-of-two length, entries in [0,1]) and fills in the
/// angles and iteration count. |phi_p| = 0 throws Error(promise_violation)
/// ("nothing to magnify"). alpha, r override the defaults when given.
MicroscopeSetup microscope_setup(const std::vector<double>& p,
                                 std::optional<double> alpha = std::nullopt,
                                 std::optional<std::size_t> r = std::nullopt);

struct MicroscopeResult {
  qsim::StateVector final_state;   // nb+1 bits, y bit most significant
  double overlap_e0 = 0.0;         // |<e0|final>|^2
  double total_rotation = 0.0;     // accumulated angle, equals r * alpha
  std::vector<std::array<double, 2>> trajectory;  // (<e0|psi>, <e1|psi>)
  /// Predicted (sin(theta/2 + k alpha), cos(theta/2 + k alpha)).
  std::vector<std::array<double, 2>> model;
};

/// Full 2^(nb+1) simulation of (-R_Psi R_Psi'perp)^r U_net |0>, where U_net
/// is the voting-net unitary (a D-matrix after a Hadamard on the x register),
/// R_Psi = U_net R_0 U_net^dag, and R_Psi'perp = W R_Psi W^dag with W the
/// clockwise quarter turn followed by a counter-clockwise alpha/2 turn inside
/// span(e0, e1), extended as the identity on the orthogonal complement.
MicroscopeResult microscope_run(const MicroscopeSetup& setup);

// --- Voting net --------------------------------------------------------------

/// The classical voting net: nb independent uniform boolean roots x0..x{nb-1}
/// and one child y with P(y=0 | x) = p[x], where x packs little-endian (x0 is
/// the least significant bit). p must have power-of-two length.
CBNet voting_cbnet(const std::vector<double>& p);

}  // namespace qbn::alg
