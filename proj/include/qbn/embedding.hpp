#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbn/netcore.hpp"

namespace qbn::embedding {

/// Unitary extension of a probability matrix P(y|x).
///
/// The matrix is square of side ny*nsink == nx*nsrc. Rows pack the visible
/// output y (least significant) with an ancilla sink state; columns pack the
/// visible input x (least significant) with an ancilla source state. Feeding
/// the fixed source state (0) and summing |.|^2 over the sink recovers P:
///
///   sum_sink |matrix(y + ny*sink, x + nx*0)|^2 == P(y|x)
struct UnitaryEmbedding {
  AmplitudeMatrix matrix;
  std::size_t ny = 1;
  std::size_t nsink = 1;
  std::size_t nx = 1;
  std::size_t nsrc = 1;

  static constexpr std::size_t source_fixed = 0;

  std::size_t dim() const { return ny * nsink; }
  complexd entry(std::size_t y, std::size_t sink, std::size_t x, std::size_t src) const {
    return matrix(y + ny * sink, x + nx * src);
  }
};

/// Entrywise squared magnitudes: the classical shadow of an amplitude matrix.
ProbabilityMatrix has_matrix(const AmplitudeMatrix& a);

/// 2^nb x 2^nb Hadamard matrix: entry (i, j) = (-1)^(i.j) / sqrt(2^nb) with
/// i.j the bitwise dot product. Column 0 is the uniform superposition, so
/// this is the canonical embedding of a uniform root.
AmplitudeMatrix hadamard_matrix(std::size_t nb);

/// Classical net with every amplitude payload replaced by its squared
/// magnitudes. Requires each |A|^2 column to sum to 1 within kStochasticTol;
/// throws Error(validation) naming the offending node otherwise.
CBNet has_net(const QBNet& net);

/// max |U^dag U - I| over all entries.
double unitarity_error(const AmplitudeMatrix& u);

/// Extend k orthonormal columns (n x k) to a full n x n unitary. Remaining
/// columns come from orthonormalizing the standard basis vectors in ascending
/// index order against everything accepted so far; residuals with norm below
/// 1e-9 are skipped. Throws Error(validation) with the largest Gram-matrix
/// deviation when the input columns are not orthonormal.
AmplitudeMatrix gram_schmidt_complete(const AmplitudeMatrix& columns);

/// Probability matrix the embedding actually encodes (sum over sinks at the
/// fixed source). Equals the embedded P up to kEmbeddingTol.
ProbabilityMatrix recovered_probability(const UnitaryEmbedding& e);

/// Embed a column-stochastic P(y|x) (ny x nx) into a unitary of side ny*nx.
/// The source-0 block is A(y, sink | x, 0) = sqrt(P(y|x)) * xi_x[sink] where
/// the xi_x are orthonormal sink-space vectors, one per input x; by default
/// xi_x = standard basis vector x. Pass `basis` (nx x nx, columns = xi_x) to
/// override. The other columns are completed with gram_schmidt_complete.
UnitaryEmbedding embed_probability_matrix(
    const ProbabilityMatrix& p,
    const std::optional<AmplitudeMatrix>& basis = std::nullopt);

/// Exclusive-or gate embedding: ny = 2, nsink = 2, inputs x1 (least
/// significant) and x2, one source. A(y, sink | x1 x2, 0) =
/// (-1)^(x1*sink) / sqrt(2) * delta(y, x1 xor x2). Unitary as a 4x4.
UnitaryEmbedding embed_xor();

/// Diagonal 0/1 projector onto a target set, as an ny x ny matrix with
/// diag entries [j in targets].
ProbabilityMatrix pi_targ(const std::vector<std::size_t>& targets, std::size_t nb);

enum class DetGateMode {
  and_like,      // targets = inputs mapped to 1; requires exactly one target
  or_like,       // targets = inputs mapped to 0; requires exactly one target
  multi_target,  // targets = inputs mapped to 1; any non-trivial set
};

/// Unitary embedding of the deterministic bit y = f(x) on nb input bits,
/// where f is described by its target set. Square of side 2^(nb+1): one
/// output bit plus nb sink bits (the copied input), nb input bits plus one
/// source bit. Uses closed-form 2x2 blocks per input instead of the generic
/// completion.
UnitaryEmbedding embed_deterministic_gate(DetGateMode mode,
                                          const std::vector<std::size_t>& targets,
                                          std::size_t nb);

/// 2N x 2N real rotation [[diag sqrt(p), -diag sqrt(q)], [diag sqrt(q),
/// diag sqrt(p)]]. Block index is the most significant bit of the row/column.
/// Requires p_i + q_i = 1 within 1e-12 and p_i, q_i in [0, 1].
AmplitudeMatrix d_matrix(const std::vector<double>& p, const std::vector<double>& q);

/// Independent flip noise on one bit: P(out=1|in=0) = p10, P(out=0|in=1) = p01.
struct BitNoise {
  double p01 = 0.0;
  double p10 = 0.0;
};

/// A noisy deterministic gate, factored as one small unitary per input bit
/// (the flip noise) followed by the exact gate. The composite classical
/// channel is the product of the pieces' recovered probabilities.
struct QuasiDeterministicEmbedding {
  std::vector<UnitaryEmbedding> bit_noise;  // one per input bit, bit order
  UnitaryEmbedding gate;
};

QuasiDeterministicEmbedding embed_quasi_deterministic(
    const std::vector<std::size_t>& targets, std::size_t nb,
    const std::vector<BitNoise>& noise);

/// P(y | x1..x_nb) of the noisy gate, composed from the embedded pieces'
/// squared magnitudes: rows y in {0,1}, columns packed input bits.
ProbabilityMatrix composite_probability(const QuasiDeterministicEmbedding& e);

/// Step one of the net embedding: give every node exclusive use of its
/// outputs. A node with k > 1 children is replaced by a compound node holding
/// k copies of itself (all forced equal) plus one marginalizer per child; a
/// childless node gets a terminal marginalizer so that every original value
/// survives to a leaf. With `lean`, nodes with exactly one child keep their
/// direct edge; otherwise those get a marginalizer too. The result is
/// observationally identical to the input: the joint over original node
/// values is unchanged.
CBNet add_marginalizers(const CBNet& net, bool lean = false);

/// Where each original node's value can be read off the embedded net: one
/// retained leaf per original node, plus the leaves that only repeat retained
/// values and are summed out when comparing distributions. The two groups
/// together are exactly the leaves of the embedded net.
struct LeafMap {
  std::vector<std::pair<std::string, std::string>> pairs;  // original -> leaf
  std::vector<std::string> summed_leaves;

  /// Leaf id for an original node; throws Error(validation) when absent.
  const std::string& leaf_for(const std::string& original) const;
};

struct EmbedResult {
  QBNet qbnet;
  LeafMap leafmap;
};

/// Full classical-to-quantum embedding: add_marginalizers, then replace every
/// non-marginalizer node by its unitary embedding with explicit ancilla
/// source roots (pinned to state 0) and ancilla sink leaves. Marginalizer
/// payloads carry over as delta amplitudes. Uniform roots over a power-of-two
/// state count embed as the Hadamard matrix; everything else goes through
/// embed_probability_matrix. Throws Error(cap) when a single embedding would
/// exceed cap_entries matrix entries.
EmbedResult embed_cbnet(const CBNet& net, bool lean = false,
                        std::size_t cap_entries = kDefaultCapEntries);

/// Serialize an embedding to JSON (row-major matrix of [re, im] pairs plus
/// the row/column packing sizes). parse_embedding inverts it exactly.
std::string serialize_embedding(const UnitaryEmbedding& e);
UnitaryEmbedding parse_embedding(const std::string& json_text);

/// Serialize a leaf map to JSON and back.
std::string serialize_leaf_map(const LeafMap& map);
LeafMap parse_leaf_map(const std::string& json_text);

}  // namespace qbn::embedding
