#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

#include "qbn/embedding.hpp"

namespace qbn::embedding {

namespace {

std::string unique_id(const std::string& want, std::set<std::string>& used) {
  std::string id = want;
  while (!used.insert(id).second) id += "_";
  return id;
}

// Product state space over `components`, first component least significant,
// labels joined with ','.
StateSpace product_space(const std::vector<StateSpace>& components) {
  StateSpace out;
  std::size_t total = 1;
  for (const StateSpace& c : components) total *= c.size();
  out.labels.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    std::string label;
    std::size_t rest = i;
    for (const StateSpace& c : components) {
      if (!label.empty()) label += ',';
      label += c.labels[rest % c.size()];
      rest /= c.size();
    }
    out.labels.push_back(label);
  }
  return out;
}

ProbabilityMatrix identity_cpt(std::size_t n) {
  return ProbabilityMatrix::Identity(n, n);
}

}  // namespace

AmplitudeMatrix hadamard_matrix(std::size_t nb) {
  const std::size_t n = std::size_t{1} << nb;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  AmplitudeMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h(i, j) = (std::popcount(i & j) & 1) ? -scale : scale;
  return h;
}

CBNet add_marginalizers(const CBNet& net, bool lean) {
  require_valid(net);
  if (net.flavor != Flavor::cb)
    throw Error(ErrorKind::validation, "marginalizers are added to classical nets");

  auto children = net.children_index();
  std::set<std::string> used;
  for (const Node& node : net.nodes) used.insert(node.id);

  CBNet out;
  out.flavor = Flavor::cb;
  // child node id -> (old parent id, new parent id)
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> rewire;

  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    const Node& v = net.nodes[i];
    std::vector<std::size_t> kids = children[i];
    std::sort(kids.begin(), kids.end(), [&](std::size_t a, std::size_t b) {
      return net.nodes[a].id < net.nodes[b].id;
    });
    const std::size_t k = kids.size();
    const std::size_t n = v.states.size();

    if (k == 0) {
      out.nodes.push_back(v);
      Node m;
      m.id = unique_id(v.id + "_m0", used);
      m.kind = NodeKind::marginalizer;
      m.parents = {v.id};
      m.states = v.states;
      m.cpt = identity_cpt(n);
      out.nodes.push_back(std::move(m));
      continue;
    }

    if (k == 1) {
      out.nodes.push_back(v);
      if (lean) continue;
      Node m;
      m.id = unique_id(v.id + "_m0", used);
      m.kind = NodeKind::marginalizer;
      m.parents = {v.id};
      m.states = v.states;
      m.cpt = identity_cpt(n);
      rewire[net.nodes[kids[0]].id].push_back({v.id, m.id});
      out.nodes.push_back(std::move(m));
      continue;
    }

    // k children: fuse k forced-equal copies of v into one compound node and
    // give each child a private marginalizer reading its own copy.
    Node fused = v;
    fused.components.assign(k, v.states);
    fused.states = product_space(fused.components);
    std::size_t nk = fused.states.size();
    // row of (y, y, ..., y) = y * (1 + n + n^2 + ...)
    std::size_t rep_stride = 0;
    for (std::size_t c = 0, s = 1; c < k; ++c, s *= n) rep_stride += s;
    ProbabilityMatrix fused_cpt = ProbabilityMatrix::Zero(nk, v.cpt->cols());
    for (Eigen::Index col = 0; col < v.cpt->cols(); ++col)
      for (std::size_t y = 0; y < n; ++y)
        fused_cpt(y * rep_stride, col) = (*v.cpt)(y, col);
    fused.cpt = std::move(fused_cpt);
    out.nodes.push_back(std::move(fused));

    for (std::size_t j = 0; j < k; ++j) {
      Node m;
      m.id = unique_id(v.id + "_m" + std::to_string(j), used);
      m.kind = NodeKind::marginalizer;
      m.parents = {v.id};
      m.states = v.states;
      ProbabilityMatrix cpt = ProbabilityMatrix::Zero(n, nk);
      std::size_t stride = 1;
      for (std::size_t c = 0; c < j; ++c) stride *= n;
      for (std::size_t in = 0; in < nk; ++in) cpt((in / stride) % n, in) = 1.0;
      m.cpt = std::move(cpt);
      rewire[net.nodes[kids[j]].id].push_back({v.id, m.id});
      out.nodes.push_back(std::move(m));
    }
  }

  for (Node& node : out.nodes) {
    auto it = rewire.find(node.id);
    if (it == rewire.end()) continue;
    for (const auto& [from, to] : it->second)
      for (std::string& p : node.parents)
        if (p == from) p = to;
  }
  return out;
}

const std::string& LeafMap::leaf_for(const std::string& original) const {
  for (const auto& [orig, leaf] : pairs)
    if (orig == original) return leaf;
  throw Error(ErrorKind::validation,
              "\"" + original + "\" has no retained leaf");
}

EmbedResult embed_cbnet(const CBNet& net, bool lean, std::size_t cap_entries) {
  CBNet m = add_marginalizers(net, lean);

  std::set<std::string> used;
  for (const Node& node : m.nodes) used.insert(node.id);

  QBNet qb;
  qb.flavor = Flavor::qb;
  std::map<std::string, std::size_t> embedded_arity;
  std::map<std::string, StateSpace> embedded_space;
  // sink id -> (owner node id, parent position)
  std::map<std::string, std::pair<std::string, std::size_t>> sink_of;

  for (std::size_t mi : topological_order_indices(m)) {
    const Node& v = m.nodes[mi];

    if (v.kind == NodeKind::marginalizer) {
      // Copy, with columns stretched over the parent's embedded state space.
      // The parent's own value is its least significant digit group, so the
      // original column for an embedded column c is c mod (old columns).
      std::size_t old_cols = v.cpt->cols();
      std::size_t new_cols = embedded_arity.at(v.parents[0]);
      Node q;
      q.id = v.id;
      q.kind = NodeKind::marginalizer;
      q.parents = v.parents;
      q.states = v.states;
      AmplitudeMatrix amp = AmplitudeMatrix::Zero(v.states.size(), new_cols);
      for (std::size_t c = 0; c < new_cols; ++c)
        for (std::size_t r = 0; r < v.states.size(); ++r)
          amp(r, c) = (*v.cpt)(r, c % old_cols);
      q.amp = std::move(amp);
      qb.nodes.push_back(std::move(q));
      embedded_arity[v.id] = v.states.size();
      embedded_space[v.id] = v.states;
      continue;
    }

    const std::size_t ny = v.states.size();
    std::vector<std::size_t> ext_dims, orig_dims;
    for (const std::string& p : v.parents) {
      ext_dims.push_back(embedded_arity.at(p));
      orig_dims.push_back(m.at(p).states.size());
    }
    std::size_t nx_ext = 1;
    for (std::size_t d : ext_dims) nx_ext *= d;

    // conditional probabilities over the embedded parent values: only the
    // parents' own value digits matter
    ProbabilityMatrix p_ext(ny, nx_ext);
    std::vector<std::size_t> digits;
    PackedShape ext_shape{ext_dims};
    std::vector<std::size_t> odig(orig_dims.size());
    for (std::size_t c = 0; c < nx_ext; ++c) {
      ext_shape.unpack(c, digits);
      for (std::size_t i = 0; i < odig.size(); ++i) odig[i] = digits[i] % orig_dims[i];
      std::size_t col0 = pack_index(odig, orig_dims);
      for (std::size_t r = 0; r < ny; ++r) p_ext(r, c) = (*v.cpt)(r, col0);
    }

    std::vector<StateSpace> own_components =
        v.components.empty() ? std::vector<StateSpace>{v.states} : v.components;

    bool uniform_pow2_root = false;
    if (v.parents.empty() && ny >= 2 && std::has_single_bit(ny)) {
      double inv = 1.0 / static_cast<double>(ny);
      uniform_pow2_root = true;
      for (std::size_t r = 0; r < ny; ++r)
        if (std::abs(p_ext(r, 0) - inv) > 1e-12) uniform_pow2_root = false;
    }

    UnitaryEmbedding ue;
    if (uniform_pow2_root) {
      ue.matrix = hadamard_matrix(std::bit_width(ny) - 1);
      ue.ny = ny;
      ue.nsink = 1;
      ue.nx = 1;
      ue.nsrc = ny;
    } else {
      std::size_t dim = ny * nx_ext;
      if (dim > cap_entries / dim)
        throw Error(ErrorKind::cap, "embedding node \"" + v.id + "\" needs a " +
                                        std::to_string(dim) + "x" +
                                        std::to_string(dim) +
                                        " matrix, over the cap of " +
                                        std::to_string(cap_entries) + " entries");
      ue = embed_probability_matrix(p_ext);
    }

    // ancilla sources, one per own component, pinned to state 0
    std::vector<std::string> source_ids;
    for (std::size_t i = 0; i < own_components.size(); ++i) {
      Node src;
      src.id = unique_id(v.id + "_src" + std::to_string(i), used);
      src.kind = NodeKind::ancilla_source;
      src.states = own_components[i];
      AmplitudeMatrix amp = AmplitudeMatrix::Zero(src.states.size(), 1);
      amp(0, 0) = 1.0;
      src.amp = std::move(amp);
      source_ids.push_back(src.id);
      qb.nodes.push_back(std::move(src));
    }

    Node q;
    q.id = v.id;
    q.kind = NodeKind::ordinary;
    q.parents = v.parents;
    for (const std::string& s : source_ids) q.parents.push_back(s);
    q.components = own_components;
    if (ue.nsink > 1)
      for (std::size_t j = 0; j < v.parents.size(); ++j)
        q.components.push_back(embedded_space.at(v.parents[j]));
    if (q.components.size() == 1 && v.components.empty()) {
      q.components.clear();
      q.states = v.states;
    } else {
      q.states = product_space(q.components);
    }
    q.amp = ue.matrix;
    embedded_arity[v.id] = q.states.size();
    embedded_space[v.id] = q.states;
    qb.nodes.push_back(std::move(q));

    // ancilla sinks, one per principal parent, copying that digit
    if (ue.nsink > 1) {
      std::size_t stride = ny;
      for (std::size_t j = 0; j < v.parents.size(); ++j) {
        Node snk;
        snk.id = unique_id(v.id + "_snk" + std::to_string(j), used);
        snk.kind = NodeKind::ancilla_sink;
        snk.parents = {v.id};
        snk.states = embedded_space.at(v.parents[j]);
        std::size_t dj = ext_dims[j];
        std::size_t in_total = embedded_arity.at(v.id);
        AmplitudeMatrix amp = AmplitudeMatrix::Zero(dj, in_total);
        for (std::size_t in = 0; in < in_total; ++in)
          amp((in / stride) % dj, in) = 1.0;
        snk.amp = std::move(amp);
        sink_of[snk.id] = {v.id, j};
        qb.nodes.push_back(std::move(snk));
        stride *= dj;
      }
    }
  }

  // Leaves are exactly the terminal marginalizers plus the ancilla sinks.
  // Each original node's value shows up on at least one of them; keep the
  // lexicographically smallest copy and sum out the rest.
  auto qb_children = qb.children_index();
  std::map<std::string, std::string> retained;  // original -> leaf
  std::set<std::string> leaf_ids;
  for (std::size_t i = 0; i < qb.nodes.size(); ++i) {
    if (!qb_children[i].empty()) continue;
    const Node& leaf = qb.nodes[i];
    leaf_ids.insert(leaf.id);
    std::string original;
    if (leaf.kind == NodeKind::marginalizer) {
      original = leaf.parents[0];
    } else if (leaf.kind == NodeKind::ancilla_sink) {
      const auto& [owner, ppos] = sink_of.at(leaf.id);
      const std::string& pj = m.at(owner).parents[ppos];
      const Node& pnode = m.at(pj);
      original = pnode.kind == NodeKind::marginalizer ? pnode.parents[0] : pj;
    } else {
      throw Error(ErrorKind::logic, "unexpected leaf \"" + leaf.id + "\"");
    }
    auto it = retained.find(original);
    if (it == retained.end() || leaf.id < it->second) retained[original] = leaf.id;
  }

  LeafMap map;
  for (const Node& node : net.nodes) {
    auto it = retained.find(node.id);
    if (it == retained.end())
      throw Error(ErrorKind::logic,
                  "no leaf carries the value of \"" + node.id + "\"");
    map.pairs.push_back({node.id, it->second});
  }
  std::sort(map.pairs.begin(), map.pairs.end());
  std::set<std::string> kept;
  for (const auto& [orig, leaf] : map.pairs) kept.insert(leaf);
  for (const std::string& leaf : leaf_ids)
    if (!kept.count(leaf)) map.summed_leaves.push_back(leaf);

  return {std::move(qb), std::move(map)};
}

std::string serialize_leaf_map(const LeafMap& map) {
  std::string out = "{\n  \"pairs\": {";
  for (std::size_t i = 0; i < map.pairs.size(); ++i) {
    out += i ? ",\n    \"" : "\n    \"";
    out += map.pairs[i].first + "\": \"" + map.pairs[i].second + "\"";
  }
  out += "\n  },\n  \"summed\": [";
  for (std::size_t i = 0; i < map.summed_leaves.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + map.summed_leaves[i] + "\"";
  }
  out += "]\n}\n";
  return out;
}

LeafMap parse_leaf_map(const std::string& json_text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& err) {
    throw Error(ErrorKind::io, std::string("invalid JSON: ") + err.what());
  }
  if (!root.is_object() || !root.contains("pairs") || !root["pairs"].is_object() ||
      !root.contains("summed") || !root["summed"].is_array())
    throw Error(ErrorKind::io, "leaf map needs a \"pairs\" object and a \"summed\" array");
  LeafMap map;
  for (const auto& [key, value] : root["pairs"].items()) {
    if (!value.is_string())
      throw Error(ErrorKind::io, "leaf map pair \"" + key + "\" must name a leaf");
    map.pairs.push_back({key, value.get<std::string>()});
  }
  std::sort(map.pairs.begin(), map.pairs.end());
  for (const auto& s : root["summed"]) {
    if (!s.is_string()) throw Error(ErrorKind::io, "summed entries must be strings");
    map.summed_leaves.push_back(s.get<std::string>());
  }
  return map;
}

}  // namespace qbn::embedding
