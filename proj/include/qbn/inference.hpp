#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qbn/netcore.hpp"

namespace qbn::inference {

/// Dense table over a list of nodes. Entry order is little-endian in scope
/// order: the first scope node is the least significant digit of the flat
/// index, so it cycles fastest.
struct JointTable {
  std::vector<std::string> scope;
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;  // per scope node
  std::vector<double> probs;

  std::size_t total() const;
  std::size_t pack(const std::vector<std::size_t>& states) const;
  double sum() const;
  /// Position of `id` in scope, or throws Error(validation).
  std::size_t scope_index(const std::string& id) const;
};

/// Observed node states, by id.
using Evidence = std::vector<std::pair<std::string, std::size_t>>;

/// Brute-force joint distribution over every node, scope in topological
/// order. Throws Error(cap) when the table would exceed `cap_entries`.
JointTable exact_joint(const CBNet& net, std::size_t cap_entries = kDefaultCapEntries);

/// Sum out everything not in `keep`. The result scope preserves the order of
/// `keep` as given. Unknown ids throw Error(validation).
JointTable marginal(const JointTable& joint, const std::vector<std::string>& keep);

/// P(query | evidence) as a table over the query nodes. Throws
/// Error(impossible_evidence) when the evidence has zero probability.
JointTable conditional(const JointTable& joint, const std::vector<std::string>& query,
                       const Evidence& evidence);

/// Forward sampling: each story draws every node in topological order from
/// its column given the sampled parents. Story `i` uses an independent
/// substream derived from (seed, i), so runs are reproducible and any prefix
/// of a longer run matches a shorter one. Returned states are in net node
/// order; weight is the product of the chosen entries.
std::vector<Story> ancestral_sample(const CBNet& net, std::size_t n_stories,
                                    std::uint64_t seed);

/// Empirical conditional from sampled stories (rejection on evidence).
/// Throws Error(impossible_evidence) when no story matches the evidence.
JointTable estimate_conditional(const CBNet& net, const std::vector<Story>& stories,
                                const std::vector<std::string>& query,
                                const Evidence& evidence);

/// CSV with one row per assignment: one column per scope node carrying the
/// state label, then a final "probability" column, 17 significant digits.
/// Rows run in flat-index order (first scope node cycles fastest).
std::string to_csv(const JointTable& table);

// Deterministic substream split: engine seed for substream `i` of `seed`.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t i);

}  // namespace qbn::inference
