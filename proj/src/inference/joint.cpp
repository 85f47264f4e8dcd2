#include <algorithm>
#include <sstream>

#include "qbn/inference.hpp"

namespace qbn::inference {

std::size_t JointTable::total() const {
  std::size_t t = 1;
  for (std::size_t d : dims) t *= d;
  return t;
}

std::size_t JointTable::pack(const std::vector<std::size_t>& states) const {
  return pack_index(states, dims);
}

double JointTable::sum() const {
  double s = 0.0;
  for (double p : probs) s += p;
  return s;
}

std::size_t JointTable::scope_index(const std::string& id) const {
  for (std::size_t i = 0; i < scope.size(); ++i)
    if (scope[i] == id) return i;
  throw Error(ErrorKind::validation, "\"" + id + "\" is not in the table scope");
}

JointTable exact_joint(const CBNet& net, std::size_t cap_entries) {
  require_valid(net);
  std::vector<std::size_t> order = topological_order_indices(net);

  JointTable table;
  std::size_t total = 1;
  for (std::size_t i : order) {
    const Node& node = net.nodes[i];
    std::size_t arity = node.states.size();
    if (total > cap_entries / arity)
      throw Error(ErrorKind::cap,
                  "joint table over " + std::to_string(net.nodes.size()) +
                      " nodes exceeds the cap of " + std::to_string(cap_entries) +
                      " entries");
    total *= arity;
    table.scope.push_back(node.id);
    table.dims.push_back(arity);
    table.labels.push_back(node.states.labels);
  }

  // scope position of every parent of every node in `order`
  std::vector<std::vector<std::size_t>> parent_pos(order.size());
  std::vector<std::vector<std::size_t>> parent_dim(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Node& node = net.nodes[order[k]];
    for (const std::string& p : node.parents) {
      std::size_t pos = 0;
      while (table.scope[pos] != p) ++pos;  // parents precede children
      parent_pos[k].push_back(pos);
      parent_dim[k].push_back(table.dims[pos]);
    }
  }

  table.probs.assign(total, 0.0);
  std::vector<std::size_t> digits(order.size(), 0);
  std::vector<std::size_t> pdig;
  for (std::size_t idx = 0; idx < total; ++idx) {
    double p = 1.0;
    for (std::size_t k = 0; k < order.size() && p != 0.0; ++k) {
      const Node& node = net.nodes[order[k]];
      pdig.clear();
      for (std::size_t pos : parent_pos[k]) pdig.push_back(digits[pos]);
      std::size_t col = pack_index(pdig, parent_dim[k]);
      p *= (*node.cpt)(digits[k], col);
    }
    table.probs[idx] = p;
    for (std::size_t k = 0; k < digits.size(); ++k) {
      if (++digits[k] < table.dims[k]) break;
      digits[k] = 0;
    }
  }
  return table;
}

JointTable marginal(const JointTable& joint, const std::vector<std::string>& keep) {
  std::vector<std::size_t> keep_pos;
  keep_pos.reserve(keep.size());
  for (const std::string& id : keep) keep_pos.push_back(joint.scope_index(id));

  JointTable out;
  for (std::size_t pos : keep_pos) {
    out.scope.push_back(joint.scope[pos]);
    out.dims.push_back(joint.dims[pos]);
    out.labels.push_back(joint.labels[pos]);
  }
  out.probs.assign(out.total(), 0.0);

  PackedShape in_shape{joint.dims};
  std::vector<std::size_t> digits;
  std::vector<std::size_t> kept(keep_pos.size());
  for (std::size_t idx = 0; idx < joint.probs.size(); ++idx) {
    in_shape.unpack(idx, digits);
    for (std::size_t k = 0; k < keep_pos.size(); ++k) kept[k] = digits[keep_pos[k]];
    out.probs[out.pack(kept)] += joint.probs[idx];
  }
  return out;
}

JointTable conditional(const JointTable& joint, const std::vector<std::string>& query,
                       const Evidence& evidence) {
  std::vector<std::size_t> ev_pos;
  for (const auto& [id, state] : evidence) {
    std::size_t pos = joint.scope_index(id);
    if (state >= joint.dims[pos])
      throw Error(ErrorKind::validation,
                  "evidence state " + std::to_string(state) + " out of range for \"" +
                      id + "\"");
    ev_pos.push_back(pos);
  }
  std::vector<std::size_t> query_pos;
  for (const std::string& id : query) query_pos.push_back(joint.scope_index(id));

  JointTable out;
  for (std::size_t pos : query_pos) {
    out.scope.push_back(joint.scope[pos]);
    out.dims.push_back(joint.dims[pos]);
    out.labels.push_back(joint.labels[pos]);
  }
  out.probs.assign(out.total(), 0.0);

  PackedShape in_shape{joint.dims};
  std::vector<std::size_t> digits;
  std::vector<std::size_t> kept(query_pos.size());
  double mass = 0.0;
  for (std::size_t idx = 0; idx < joint.probs.size(); ++idx) {
    in_shape.unpack(idx, digits);
    bool match = true;
    for (std::size_t k = 0; k < ev_pos.size() && match; ++k)
      match = digits[ev_pos[k]] == evidence[k].second;
    if (!match) continue;
    mass += joint.probs[idx];
    for (std::size_t k = 0; k < query_pos.size(); ++k) kept[k] = digits[query_pos[k]];
    out.probs[out.pack(kept)] += joint.probs[idx];
  }
  if (mass <= 0.0) {
    std::string desc;
    for (const auto& [id, state] : evidence) {
      if (!desc.empty()) desc += ", ";
      desc += id + "=" + std::to_string(state);
    }
    throw Error(ErrorKind::impossible_evidence,
                "evidence {" + desc + "} has zero probability");
  }
  for (double& p : out.probs) p /= mass;
  return out;
}

std::string to_csv(const JointTable& table) {
  std::ostringstream os;
  for (std::size_t i = 0; i < table.scope.size(); ++i) os << table.scope[i] << ',';
  os << "probability\n";
  PackedShape shape{table.dims};
  std::vector<std::size_t> digits;
  for (std::size_t idx = 0; idx < table.probs.size(); ++idx) {
    shape.unpack(idx, digits);
    for (std::size_t k = 0; k < digits.size(); ++k)
      os << table.labels[k][digits[k]] << ',';
    os << fmt17(table.probs[idx]) << '\n';
  }
  return os.str();
}

}  // namespace qbn::inference
