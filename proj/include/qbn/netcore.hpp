#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qbn {

using complexd = std::complex<double>;

/// Dense complex matrix of probability amplitudes. Rows index the node's own
/// packed state, columns index the packed parent state. Packing is always
/// little-endian in list order: the first listed component or parent is the
/// least significant digit.
using AmplitudeMatrix = Eigen::MatrixXcd;

/// Dense real matrix of probabilities, same index conventions.
using ProbabilityMatrix = Eigen::MatrixXd;

inline constexpr std::size_t kDefaultCapEntries = std::size_t{1} << 24;
inline constexpr double kStochasticTol = 1e-9;   // column sums of P or |A|^2
inline constexpr double kUnitarityTol = 1e-10;   // max |U^dag U - I|
inline constexpr double kEmbeddingTol = 1e-12;   // recovered P vs original P
inline constexpr double kVerifyTol = 1e-9;       // embedded net vs classical joint
inline constexpr std::uint64_t kDefaultSeed = 1234567891ULL;

/// Error categories. The CLI maps these onto process exit codes; library code
/// throws qbn::Error with the right kind and a human-readable message.
enum class ErrorKind {
  io,
  validation,
  cap,
  impossible_evidence,
  promise_violation,
  logic,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Finite set of named states for one node (or one component of a compound
/// node). State index == position in `labels`.
struct StateSpace {
  std::vector<std::string> labels;

  std::size_t size() const { return labels.size(); }
  bool operator==(const StateSpace&) const = default;

  /// {"0", "1"}
  static StateSpace boolean();
  /// {"0", "1", ..., "n-1"}
  static StateSpace indexed(std::size_t n);
  /// Index of `label`, or nullopt.
  std::optional<std::size_t> find(const std::string& label) const;
};

enum class NodeKind { ordinary, marginalizer, ancilla_source, ancilla_sink };

std::string to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(const std::string& s);

/// One node of a classical or quantum Bayesian net.
///
/// Exactly one of `cpt` (classical) / `amp` (quantum) is set, matching the
/// owning net's flavor. A node produced by fusing several original nodes
/// carries the factor state spaces in `components`; its own packed state index
/// runs little-endian over them (first component least significant) and its
/// state labels are the component labels joined with ','.
struct Node {
  std::string id;
  NodeKind kind = NodeKind::ordinary;
  std::vector<std::string> parents;
  StateSpace states;
  std::vector<StateSpace> components;  // empty unless compound
  std::optional<ProbabilityMatrix> cpt;
  std::optional<AmplitudeMatrix> amp;

  bool is_compound() const { return !components.empty(); }
};

enum class Flavor { cb, qb };

/// A Bayesian net: nodes in file order, each naming its parents by id.
struct Net {
  Flavor flavor = Flavor::cb;
  std::vector<Node> nodes;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Position of node `id` in `nodes`, or npos.
  std::size_t index_of(const std::string& id) const;
  const Node* find(const std::string& id) const;
  /// Throws Error(validation) when absent.
  const Node& at(const std::string& id) const;
  Node& at(const std::string& id);

  /// children[i] = positions of the nodes that list nodes[i] as a parent,
  /// in file order.
  std::vector<std::vector<std::size_t>> children_index() const;
};

using CBNet = Net;
using QBNet = Net;

/// A single joint assignment, states in net node order, with the weight the
/// net assigns to it (a probability for CB nets, an amplitude for QB nets).
struct Story {
  std::vector<std::size_t> states;
  complexd weight;
};

struct Diagnostic {
  std::string node_id;  // empty for net-level problems
  std::string message;
};

/// Outcome of validate(): diagnostics as data, one entry per problem found.
struct ValidationReport {
  std::vector<Diagnostic> issues;

  bool ok() const { return issues.empty(); }
  /// All diagnostics joined into one multi-line string.
  std::string str() const;
};

/// Structural and numerical checks: unique ids, parents resolve, acyclic,
/// payload present and of the right flavor and shape, columns stochastic
/// (sum P = 1 for CB, sum |A|^2 = 1 for QB, both within kStochasticTol),
/// compound state spaces consistent, marginalizer/ancilla shape rules.
ValidationReport validate(const Net& net);

/// Throws Error(validation) with the report text when validate() fails.
void require_valid(const Net& net);

/// Node ids in dependency order. Ties (nodes simultaneously ready) break
/// lexicographically, so the order is unique and stable. Throws
/// Error(validation) naming a member node when the graph has a cycle.
std::vector<std::string> topological_order(const Net& net);

/// Same order, as positions into net.nodes.
std::vector<std::size_t> topological_order_indices(const Net& net);

/// Parse a net from its JSON text form. Errors carry the node id / field that
/// failed. serialize_net() emits numbers with 17 significant digits, so
/// parse(serialize(net)) reproduces the net exactly and
/// serialize(parse(text)) is byte-identical for serializer output.
Net parse_net(const std::string& json_text);
Net parse_net_file(const std::string& path);
std::string serialize_net(const Net& net);
void write_net_file(const Net& net, const std::string& path);

// --- packed-index helpers used throughout -----------------------------------

/// Mixed-radix little-endian packing: digit 0 is least significant.
struct PackedShape {
  std::vector<std::size_t> dims;

  std::size_t total() const;
  std::size_t pack(const std::vector<std::size_t>& digits) const;
  void unpack(std::size_t index, std::vector<std::size_t>& digits) const;
  std::size_t digit(std::size_t index, std::size_t which) const;
};

/// Packed parent-column index for `assignment[parent]` given parent sizes.
std::size_t pack_index(const std::vector<std::size_t>& digits,
                       const std::vector<std::size_t>& dims);

/// Number of states of a node (rows of its payload).
std::size_t node_arity(const Node& node);

/// Sizes of a node's parents resolved against the net, in parent list order.
std::vector<std::size_t> parent_dims(const Net& net, const Node& node);

// --- number formatting --------------------------------------------------------

/// Shortest form with 17 significant digits (printf %.17g): enough to
/// round-trip any double exactly. All JSON and CSV emission uses this.
std::string fmt17(double v);

}  // namespace qbn
