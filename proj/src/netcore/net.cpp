#include "qbn/netcore.hpp"

#include <cstdio>

namespace qbn {

StateSpace StateSpace::boolean() { return StateSpace{{"0", "1"}}; }

StateSpace StateSpace::indexed(std::size_t n) {
  StateSpace s;
  s.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.labels.push_back(std::to_string(i));
  return s;
}

std::optional<std::size_t> StateSpace::find(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  return std::nullopt;
}

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::ordinary: return "ordinary";
    case NodeKind::marginalizer: return "marginalizer";
    case NodeKind::ancilla_source: return "ancilla-source";
    case NodeKind::ancilla_sink: return "ancilla-sink";
  }
  return "ordinary";
}

std::optional<NodeKind> node_kind_from_string(const std::string& s) {
  if (s == "ordinary") return NodeKind::ordinary;
  if (s == "marginalizer") return NodeKind::marginalizer;
  if (s == "ancilla-source") return NodeKind::ancilla_source;
  if (s == "ancilla-sink") return NodeKind::ancilla_sink;
  return std::nullopt;
}

std::size_t Net::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) return i;
  return npos;
}

const Node* Net::find(const std::string& id) const {
  std::size_t i = index_of(id);
  return i == npos ? nullptr : &nodes[i];
}

const Node& Net::at(const std::string& id) const {
  const Node* n = find(id);
  if (!n) throw Error(ErrorKind::validation, "no node named \"" + id + "\"");
  return *n;
}

Node& Net::at(const std::string& id) {
  std::size_t i = index_of(id);
  if (i == npos) throw Error(ErrorKind::validation, "no node named \"" + id + "\"");
  return nodes[i];
}

std::vector<std::vector<std::size_t>> Net::children_index() const {
  std::vector<std::vector<std::size_t>> children(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (const std::string& p : nodes[i].parents) {
      std::size_t j = index_of(p);
      if (j != npos) children[j].push_back(i);
    }
  return children;
}

std::string ValidationReport::str() const {
  std::string out;
  for (const Diagnostic& d : issues) {
    if (!out.empty()) out += '\n';
    if (!d.node_id.empty()) out += "node \"" + d.node_id + "\": ";
    out += d.message;
  }
  return out;
}

std::size_t PackedShape::total() const {
  std::size_t t = 1;
  for (std::size_t d : dims) t *= d;
  return t;
}

std::size_t PackedShape::pack(const std::vector<std::size_t>& digits) const {
  return pack_index(digits, dims);
}

void PackedShape::unpack(std::size_t index, std::vector<std::size_t>& digits) const {
  digits.resize(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    digits[i] = index % dims[i];
    index /= dims[i];
  }
}

std::size_t PackedShape::digit(std::size_t index, std::size_t which) const {
  for (std::size_t i = 0; i < which; ++i) index /= dims[i];
  return index % dims[which];
}

std::size_t pack_index(const std::vector<std::size_t>& digits,
                       const std::vector<std::size_t>& dims) {
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    idx += digits[i] * stride;
    stride *= dims[i];
  }
  return idx;
}

std::size_t node_arity(const Node& node) { return node.states.size(); }

std::vector<std::size_t> parent_dims(const Net& net, const Node& node) {
  std::vector<std::size_t> dims;
  dims.reserve(node.parents.size());
  for (const std::string& p : node.parents) dims.push_back(net.at(p).states.size());
  return dims;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace qbn
