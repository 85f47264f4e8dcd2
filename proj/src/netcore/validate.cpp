#include <algorithm>
#include <cmath>
#include <set>

#include "qbn/netcore.hpp"

namespace qbn {

namespace {

// Delta payloads (marginalizers, ancillas, deterministic permutations) must
// have exactly one unit entry per column and zeros elsewhere.
bool is_delta_column(const Net& net, const Node& node, std::size_t col) {
  std::size_t units = 0;
  std::size_t rows = node.states.size();
  for (std::size_t r = 0; r < rows; ++r) {
    double mag = net.flavor == Flavor::cb ? (*node.cpt)(r, col)
                                          : std::abs((*node.amp)(r, col));
    if (std::abs(mag - 1.0) <= 1e-12) {
      ++units;
    } else if (std::abs(mag) > 1e-12) {
      return false;
    }
  }
  return units == 1;
}

bool payload_is_delta(const Net& net, const Node& node) {
  std::size_t cols = net.flavor == Flavor::cb ? (*node.cpt).cols() : (*node.amp).cols();
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_delta_column(net, node, c)) return false;
  return true;
}

}  // namespace

ValidationReport validate(const Net& net) {
  ValidationReport report;
  auto flag = [&](const std::string& id, std::string msg) {
    report.issues.push_back({id, std::move(msg)});
  };

  std::set<std::string> seen;
  for (const Node& node : net.nodes) {
    if (node.id.empty()) flag("", "node with empty id");
    if (!seen.insert(node.id).second) flag(node.id, "duplicate node id");
  }

  auto children = net.children_index();

  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    const Node& node = net.nodes[i];
    const std::string& id = node.id;

    if (node.states.size() == 0) {
      flag(id, "empty state space");
      continue;
    }

    bool parents_ok = true;
    std::set<std::string> parent_seen;
    for (const std::string& p : node.parents) {
      if (net.index_of(p) == Net::npos) {
        flag(id, "parent \"" + p + "\" does not exist");
        parents_ok = false;
      } else if (p == id) {
        flag(id, "lists itself as parent");
        parents_ok = false;
      }
      if (!parent_seen.insert(p).second) {
        flag(id, "parent \"" + p + "\" listed twice");
        parents_ok = false;
      }
    }

    if (!node.components.empty()) {
      std::size_t prod = 1;
      for (const StateSpace& c : node.components) prod *= c.size();
      if (prod != node.states.size()) {
        flag(id, "component sizes multiply to " + std::to_string(prod) +
                     ", state space has " + std::to_string(node.states.size()));
      }
    }

    bool has_cpt = node.cpt.has_value();
    bool has_amp = node.amp.has_value();
    if (net.flavor == Flavor::cb && (!has_cpt || has_amp)) {
      flag(id, "classical node needs a cpt and no amp");
      continue;
    }
    if (net.flavor == Flavor::qb && (!has_amp || has_cpt)) {
      flag(id, "quantum node needs an amp and no cpt");
      continue;
    }
    if (!parents_ok) continue;

    std::size_t rows = net.flavor == Flavor::cb ? (*node.cpt).rows() : (*node.amp).rows();
    std::size_t cols = net.flavor == Flavor::cb ? (*node.cpt).cols() : (*node.amp).cols();
    std::size_t want_cols = 1;
    for (std::size_t d : parent_dims(net, node)) want_cols *= d;
    if (rows != node.states.size() || cols != want_cols) {
      flag(id, "payload is " + std::to_string(rows) + "x" + std::to_string(cols) +
                   ", expected " + std::to_string(node.states.size()) + "x" +
                   std::to_string(want_cols));
      continue;
    }

    for (std::size_t c = 0; c < cols; ++c) {
      double sum = 0.0;
      for (std::size_t r = 0; r < rows; ++r) {
        if (net.flavor == Flavor::cb) {
          double v = (*node.cpt)(r, c);
          if (v < 0.0)
            flag(id, "negative probability " + fmt17(v) + " at row " +
                         std::to_string(r) + ", column " + std::to_string(c));
          sum += v;
        } else {
          sum += std::norm((*node.amp)(r, c));
        }
      }
      if (std::abs(sum - 1.0) > kStochasticTol) {
        flag(id, std::string(net.flavor == Flavor::cb
                                 ? "column " : "squared-magnitude column ") +
                     std::to_string(c) + " sums to " + fmt17(sum));
        break;
      }
    }

    switch (node.kind) {
      case NodeKind::ordinary:
        break;
      case NodeKind::marginalizer:
        if (node.parents.size() != 1)
          flag(id, "marginalizer needs exactly one parent");
        else if (children[i].size() > 1)
          flag(id, "marginalizer feeds more than one node");
        else if (!payload_is_delta(net, node))
          flag(id, "marginalizer payload is not a delta");
        break;
      case NodeKind::ancilla_source:
        if (!node.parents.empty())
          flag(id, "ancilla source must be a root");
        else if (!payload_is_delta(net, node))
          flag(id, "ancilla source payload is not a delta");
        break;
      case NodeKind::ancilla_sink:
        if (node.parents.size() != 1)
          flag(id, "ancilla sink needs exactly one parent");
        else if (!children[i].empty())
          flag(id, "ancilla sink must be a leaf");
        else if (!payload_is_delta(net, node))
          flag(id, "ancilla sink payload is not a delta");
        break;
    }
  }

  // Cycle check: peel in-degree-zero nodes; anything left sits on a cycle.
  std::vector<std::size_t> indeg(net.nodes.size(), 0);
  bool resolvable = true;
  for (const Node& node : net.nodes)
    for (const std::string& p : node.parents)
      if (net.index_of(p) == Net::npos) resolvable = false;
  if (resolvable) {
    for (std::size_t i = 0; i < net.nodes.size(); ++i)
      indeg[i] = net.nodes[i].parents.size();
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < net.nodes.size(); ++i)
      if (indeg[i] == 0) ready.push_back(i);
    std::size_t done = 0;
    while (!ready.empty()) {
      std::size_t i = ready.back();
      ready.pop_back();
      ++done;
      for (std::size_t c : children[i])
        if (--indeg[c] == 0) ready.push_back(c);
    }
    if (done != net.nodes.size()) {
      std::string member;
      for (std::size_t i = 0; i < net.nodes.size(); ++i)
        if (indeg[i] > 0 && (member.empty() || net.nodes[i].id < member))
          member = net.nodes[i].id;
      flag(member, "graph has a cycle through this node");
    }
  }

  return report;
}

void require_valid(const Net& net) {
  ValidationReport report = validate(net);
  if (!report.ok()) throw Error(ErrorKind::validation, report.str());
}

}  // namespace qbn
