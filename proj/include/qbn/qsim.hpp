#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qbn/embedding.hpp"
#include "qbn/inference.hpp"
#include "qbn/netcore.hpp"

namespace qbn::qsim {

/// Amplitudes over nb bits, index little-endian: bit 0 is the least
/// significant bit of the flat index.
struct StateVector {
  std::size_t nb = 0;
  std::vector<complexd> a;

  std::size_t size() const { return a.size(); }
  double norm() const;
  /// |amp|^2 per index.
  std::vector<double> probabilities() const;

  static StateVector basis(std::size_t nb, std::size_t index);
};

void hadamard_bit(StateVector& psi, std::size_t bit);
void hadamard_all(StateVector& psi);

enum class PauliAxis { x, y, z };
void pauli(StateVector& psi, PauliAxis axis, std::size_t bit);

void cnot(StateVector& psi, std::size_t control, std::size_t target);

/// |x>|y> -> |x>|y xor f(x)> with x = bits [0, nc) and y = bits [nc, nc+nt).
/// `table` maps each x to f(x) (nt-bit values).
void xor_oracle(StateVector& psi, std::size_t nc, std::size_t nt,
                const std::vector<std::uint64_t>& table);

/// psi -> psi - 2 phi <phi|psi>. `phi` must be unit length.
void reflect(StateVector& psi, const std::vector<complexd>& phi);

/// Sign flip of one basis amplitude (reflection about its complement).
void flip_sign(StateVector& psi, std::size_t index);

void negate(StateVector& psi);

/// Dense matrix application; the matrix must be square of the full size.
void apply_matrix(StateVector& psi, const AmplitudeMatrix& u);

/// The amplitude a QB net assigns to one full assignment (states in net node
/// order): the product over nodes of their payload entry.
complexd story_amplitude(const QBNet& net, const std::vector<std::size_t>& states);

/// Joint amplitudes over the leaf nodes: sum of story amplitudes over all
/// internal assignments. Scope is the leaves in topological order. Walks only
/// stories reachable through nonzero payload entries, so delta-heavy nets
/// (marginalizers, permutation gates) stay cheap. Throws Error(cap) when the
/// nonzero-story bound exceeds `cap_stories`.
struct LeafDistribution {
  std::vector<std::string> scope;
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;
  std::vector<complexd> amps;
  std::vector<double> probs;  // |amp|^2, sums to 1 within kStochasticTol
  std::size_t stories = 0;    // nonzero stories the walk visited

  std::size_t total() const;
};

LeafDistribution leaf_distribution(const QBNet& net,
                                   std::size_t cap_stories = kDefaultCapEntries);

/// View a leaf distribution as a probability table for the inference helpers.
inference::JointTable as_joint_table(const LeafDistribution& dist);

/// Check that the embedded net reproduces the classical net: marginalize the
/// leaf probabilities onto the retained leaves (summing the duplicates), read
/// each retained leaf's original value (its state modulo the original node
/// arity), and compare against the classical joint. `ok` iff the largest
/// absolute difference is below kVerifyTol.
struct VerifyReport {
  bool ok = false;
  double max_error = 0.0;
  std::size_t entries = 0;
};

VerifyReport verify_net_embedding(const CBNet& original, const QBNet& embedded,
                                  const embedding::LeafMap& map,
                                  std::size_t cap_stories = kDefaultCapEntries);

/// The embedded net's leaf distribution folded back onto the original nodes
/// through the leaf map: duplicate leaves summed out, each retained leaf's
/// state read modulo the original node's arity. Scope is the original net in
/// topological order, with the original state labels, so the table compares
/// elementwise against exact_joint(original).
inference::JointTable original_distribution(const CBNet& original, const QBNet& embedded,
                                            const embedding::LeafMap& map,
                                            std::size_t cap_stories = kDefaultCapEntries);

/// Draw leaf assignments from the exact leaf distribution by inverse CDF,
/// one independent substream per draw (same scheme as ancestral_sample).
struct LeafSamples {
  std::vector<std::string> scope;
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;
  std::vector<std::vector<std::size_t>> draws;
};

LeafSamples sample_leaves(const QBNet& net, std::size_t n_samples, std::uint64_t seed,
                          std::size_t cap_stories = kDefaultCapEntries);

/// Empirical conditional over the query leaves given fixed evidence leaves.
/// Throws Error(impossible_evidence) when no draw matches the evidence.
inference::JointTable estimate_conditional(const LeafSamples& samples,
                                           const std::vector<std::string>& query,
                                           const inference::Evidence& evidence);

}  // namespace qbn::qsim
