#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qbn/netcore.hpp"

namespace qbn {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::io, where.empty() ? what : where + ": " + what);
}

StateSpace parse_states(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "must be a non-empty array of strings");
  StateSpace s;
  for (const json& e : j) {
    if (!e.is_string()) fail(where, "must be a non-empty array of strings");
    s.labels.push_back(e.get<std::string>());
  }
  return s;
}

ProbabilityMatrix parse_cpt(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "cpt must be a non-empty array of rows");
  std::size_t rows = j.size();
  std::size_t cols = 0;
  ProbabilityMatrix m;
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.empty())
      fail(where, "cpt row " + std::to_string(r) + " must be a non-empty array");
    if (r == 0) {
      cols = row.size();
      m.resize(rows, cols);
    } else if (row.size() != cols) {
      fail(where, "cpt row " + std::to_string(r) + " has " +
                      std::to_string(row.size()) + " entries, expected " +
                      std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number())
        fail(where, "cpt entry at row " + std::to_string(r) + ", column " +
                        std::to_string(c) + " is not a number");
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

AmplitudeMatrix parse_amp(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "amp must be a non-empty array of rows");
  std::size_t rows = j.size();
  std::size_t cols = 0;
  AmplitudeMatrix m;
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.empty())
      fail(where, "amp row " + std::to_string(r) + " must be a non-empty array");
    if (r == 0) {
      cols = row.size();
      m.resize(rows, cols);
    } else if (row.size() != cols) {
      fail(where, "amp row " + std::to_string(r) + " has " +
                      std::to_string(row.size()) + " entries, expected " +
                      std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        fail(where, "amp entry at row " + std::to_string(r) + ", column " +
                        std::to_string(c) + " must be [re, im]");
      m(r, c) = complexd(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

std::string escape_json(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

void emit_string_array(std::ostringstream& os, const std::vector<std::string>& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << '"' << escape_json(v[i]) << '"';
  }
  os << ']';
}

}  // namespace

Net parse_net(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::io, std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("", "top level must be an object");
  if (!root.contains("flavor") || !root["flavor"].is_string())
    fail("", "\"flavor\" must be \"cb\" or \"qb\"");
  std::string flavor = root["flavor"].get<std::string>();
  Net net;
  if (flavor == "cb") {
    net.flavor = Flavor::cb;
  } else if (flavor == "qb") {
    net.flavor = Flavor::qb;
  } else {
    fail("", "\"flavor\" must be \"cb\" or \"qb\", got \"" + flavor + "\"");
  }
  if (!root.contains("nodes") || !root["nodes"].is_array())
    fail("", "\"nodes\" must be an array");

  for (std::size_t i = 0; i < root["nodes"].size(); ++i) {
    const json& jn = root["nodes"][i];
    std::string where = "node " + std::to_string(i);
    if (!jn.is_object()) fail(where, "must be an object");
    if (!jn.contains("id") || !jn["id"].is_string())
      fail(where, "\"id\" must be a string");
    Node node;
    node.id = jn["id"].get<std::string>();
    where = "node " + std::to_string(i) + " (\"" + node.id + "\")";

    if (jn.contains("kind")) {
      if (!jn["kind"].is_string()) fail(where, "\"kind\" must be a string");
      auto kind = node_kind_from_string(jn["kind"].get<std::string>());
      if (!kind)
        fail(where, "unknown kind \"" + jn["kind"].get<std::string>() + "\"");
      node.kind = *kind;
    }

    if (jn.contains("parents")) {
      if (!jn["parents"].is_array()) fail(where, "\"parents\" must be an array");
      for (const json& p : jn["parents"]) {
        if (!p.is_string()) fail(where, "\"parents\" entries must be strings");
        node.parents.push_back(p.get<std::string>());
      }
    }

    if (!jn.contains("states")) fail(where, "missing \"states\"");
    node.states = parse_states(jn["states"], where + ", \"states\"");

    if (jn.contains("components")) {
      if (!jn["components"].is_array())
        fail(where, "\"components\" must be an array of state arrays");
      for (const json& c : jn["components"])
        node.components.push_back(parse_states(c, where + ", \"components\""));
    }

    bool has_cpt = jn.contains("cpt");
    bool has_amp = jn.contains("amp");
    if (net.flavor == Flavor::cb) {
      if (!has_cpt || has_amp) fail(where, "classical node needs \"cpt\" and no \"amp\"");
      node.cpt = parse_cpt(jn["cpt"], where);
    } else {
      if (!has_amp || has_cpt) fail(where, "quantum node needs \"amp\" and no \"cpt\"");
      node.amp = parse_amp(jn["amp"], where);
    }
    net.nodes.push_back(std::move(node));
  }
  return net;
}

Net parse_net_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_net(ss.str());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::io)
      throw Error(ErrorKind::io, path + ": " + e.what());
    throw;
  }
}

std::string serialize_net(const Net& net) {
  std::ostringstream os;
  os << "{\n  \"flavor\": \"" << (net.flavor == Flavor::cb ? "cb" : "qb")
     << "\",\n  \"nodes\": [";
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    const Node& node = net.nodes[i];
    os << (i ? ",\n    {" : "\n    {");
    os << "\n      \"id\": \"" << escape_json(node.id) << "\",";
    os << "\n      \"kind\": \"" << to_string(node.kind) << "\",";
    os << "\n      \"parents\": ";
    emit_string_array(os, node.parents);
    os << ",\n      \"states\": ";
    emit_string_array(os, node.states.labels);
    if (!node.components.empty()) {
      os << ",\n      \"components\": [";
      for (std::size_t c = 0; c < node.components.size(); ++c) {
        if (c) os << ", ";
        emit_string_array(os, node.components[c].labels);
      }
      os << ']';
    }
    if (node.cpt) {
      os << ",\n      \"cpt\": [";
      for (Eigen::Index r = 0; r < node.cpt->rows(); ++r) {
        os << (r ? ",\n        [" : "\n        [");
        for (Eigen::Index c = 0; c < node.cpt->cols(); ++c) {
          if (c) os << ", ";
          os << fmt17((*node.cpt)(r, c));
        }
        os << ']';
      }
      os << "\n      ]";
    }
    if (node.amp) {
      os << ",\n      \"amp\": [";
      for (Eigen::Index r = 0; r < node.amp->rows(); ++r) {
        os << (r ? ",\n        [" : "\n        [");
        for (Eigen::Index c = 0; c < node.amp->cols(); ++c) {
          if (c) os << ", ";
          const complexd v = (*node.amp)(r, c);
          os << '[' << fmt17(v.real()) << ", " << fmt17(v.imag()) << ']';
        }
        os << ']';
      }
      os << "\n      ]";
    }
    os << "\n    }";
  }
  os << "\n  ]\n}\n";
  return os.str();
}

void write_net_file(const Net& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write file: " + path);
  out << serialize_net(net);
  if (!out) throw Error(ErrorKind::io, "write failed: " + path);
}

}  // namespace qbn
