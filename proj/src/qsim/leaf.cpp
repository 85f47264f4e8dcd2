#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "qbn/qsim.hpp"

namespace qbn::qsim {

namespace {

double next_u01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

struct NodePlan {
  std::size_t net_index = 0;
  std::vector<std::size_t> parent_topo_pos;
  std::vector<std::size_t> parent_dims;
  // nonzero row list per column; delta nodes have exactly one row per column
  std::vector<std::vector<std::size_t>> rows;
  std::size_t leaf_stride = 0;  // 0 when not a leaf
  std::size_t arity = 0;
};

struct Walker {
  const QBNet& net;
  std::vector<NodePlan> plan;
  std::vector<complexd> amps;
  std::size_t cap = 0;
  std::size_t stories = 0;
  std::vector<std::size_t> states;  // by topo position

  void run(std::size_t pos, std::size_t leaf_index, complexd amp) {
    if (pos == plan.size()) {
      if (++stories > cap)
        throw Error(ErrorKind::cap,
                    "more than " + std::to_string(cap) + " nonzero stories");
      amps[leaf_index] += amp;
      return;
    }
    const NodePlan& p = plan[pos];
    const Node& node = net.nodes[p.net_index];
    std::size_t col = 0;
    std::size_t stride = 1;
    for (std::size_t i = 0; i < p.parent_topo_pos.size(); ++i) {
      col += states[p.parent_topo_pos[i]] * stride;
      stride *= p.parent_dims[i];
    }
    for (std::size_t r : p.rows[col]) {
      states[pos] = r;
      run(pos + 1, leaf_index + r * p.leaf_stride, amp * (*node.amp)(r, col));
    }
  }
};

}  // namespace

std::size_t LeafDistribution::total() const {
  std::size_t t = 1;
  for (std::size_t d : dims) t *= d;
  return t;
}

complexd story_amplitude(const QBNet& net, const std::vector<std::size_t>& states) {
  if (states.size() != net.nodes.size())
    throw Error(ErrorKind::validation,
                "story has " + std::to_string(states.size()) + " states for " +
                    std::to_string(net.nodes.size()) + " nodes");
  complexd amp(1.0, 0.0);
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    const Node& node = net.nodes[i];
    if (!node.amp)
      throw Error(ErrorKind::validation, "node \"" + node.id + "\" has no amplitudes");
    std::vector<std::size_t> pdig;
    std::vector<std::size_t> pdim;
    for (const std::string& p : node.parents) {
      std::size_t j = net.index_of(p);
      pdig.push_back(states[j]);
      pdim.push_back(net.nodes[j].states.size());
    }
    amp *= (*node.amp)(states[i], pack_index(pdig, pdim));
  }
  return amp;
}

LeafDistribution leaf_distribution(const QBNet& net, std::size_t cap_stories) {
  require_valid(net);
  if (net.flavor != Flavor::qb)
    throw Error(ErrorKind::validation, "leaf distributions are over quantum nets");

  std::vector<std::size_t> order = topological_order_indices(net);
  std::vector<std::size_t> topo_pos(net.nodes.size());
  for (std::size_t k = 0; k < order.size(); ++k) topo_pos[order[k]] = k;
  auto children = net.children_index();

  LeafDistribution dist;
  Walker walker{net, {}, {}, cap_stories, 0, {}};
  walker.plan.resize(order.size());
  walker.states.assign(order.size(), 0);

  std::size_t leaf_stride = 1;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    const Node& node = net.nodes[i];
    NodePlan& p = walker.plan[k];
    p.net_index = i;
    p.arity = node.states.size();
    for (const std::string& par : node.parents) {
      std::size_t j = net.index_of(par);
      p.parent_topo_pos.push_back(topo_pos[j]);
      p.parent_dims.push_back(net.nodes[j].states.size());
    }
    p.rows.resize(node.amp->cols());
    for (Eigen::Index c = 0; c < node.amp->cols(); ++c)
      for (Eigen::Index r = 0; r < node.amp->rows(); ++r)
        if ((*node.amp)(r, c) != complexd(0.0, 0.0))
          p.rows[c].push_back(static_cast<std::size_t>(r));
    if (children[i].empty()) {
      p.leaf_stride = leaf_stride;
      if (node.states.size() > 0 && leaf_stride > cap_stories / node.states.size())
        throw Error(ErrorKind::cap, "leaf table exceeds the cap of " +
                                        std::to_string(cap_stories) + " entries");
      leaf_stride *= node.states.size();
      dist.scope.push_back(node.id);
      dist.dims.push_back(node.states.size());
      dist.labels.push_back(node.states.labels);
    }
  }

  walker.amps.assign(leaf_stride, complexd(0.0, 0.0));
  walker.run(0, 0, complexd(1.0, 0.0));
  dist.stories = walker.stories;

  double mass = 0.0;
  for (const complexd& a : walker.amps) mass += std::norm(a);
  if (mass <= 0.0)
    throw Error(ErrorKind::validation, "total leaf probability mass is zero");
  double scale = 1.0 / std::sqrt(mass);
  dist.amps = std::move(walker.amps);
  dist.probs.resize(dist.amps.size());
  for (std::size_t i = 0; i < dist.amps.size(); ++i) {
    dist.amps[i] *= scale;
    dist.probs[i] = std::norm(dist.amps[i]);
  }
  return dist;
}

inference::JointTable as_joint_table(const LeafDistribution& dist) {
  inference::JointTable t;
  t.scope = dist.scope;
  t.dims = dist.dims;
  t.labels = dist.labels;
  t.probs = dist.probs;
  return t;
}

inference::JointTable original_distribution(const CBNet& original, const QBNet& embedded,
                                            const embedding::LeafMap& map,
                                            std::size_t cap_stories) {
  LeafDistribution dist = leaf_distribution(embedded, cap_stories);

  std::set<std::string> covered(map.summed_leaves.begin(), map.summed_leaves.end());
  for (const auto& [orig, leaf] : map.pairs) covered.insert(leaf);
  for (const std::string& leaf : dist.scope)
    if (!covered.count(leaf))
      throw Error(ErrorKind::validation,
                  "leaf map does not cover leaf \"" + leaf + "\"");

  inference::JointTable out;
  for (const std::string& id : topological_order(original)) {
    const Node& node = original.at(id);
    out.scope.push_back(id);
    out.dims.push_back(node.states.size());
    out.labels.push_back(node.states.labels);
  }

  // retained leaf position and original arity, in scope order
  std::vector<std::size_t> leaf_pos(out.scope.size());
  for (std::size_t k = 0; k < out.scope.size(); ++k) {
    const std::string& leaf = map.leaf_for(out.scope[k]);
    std::size_t pos = Net::npos;
    for (std::size_t i = 0; i < dist.scope.size(); ++i)
      if (dist.scope[i] == leaf) pos = i;
    if (pos == Net::npos)
      throw Error(ErrorKind::validation,
                  "retained leaf \"" + leaf + "\" is not a leaf of the embedded net");
    leaf_pos[k] = pos;
  }

  out.probs.assign(out.total(), 0.0);
  PackedShape shape{dist.dims};
  std::vector<std::size_t> digits;
  std::vector<std::size_t> odig(out.scope.size());
  for (std::size_t idx = 0; idx < dist.probs.size(); ++idx) {
    if (dist.probs[idx] == 0.0) continue;
    shape.unpack(idx, digits);
    // a leaf over a wider embedded space carries the original value in its
    // least significant digit
    for (std::size_t k = 0; k < leaf_pos.size(); ++k)
      odig[k] = digits[leaf_pos[k]] % out.dims[k];
    out.probs[pack_index(odig, out.dims)] += dist.probs[idx];
  }
  return out;
}

VerifyReport verify_net_embedding(const CBNet& original, const QBNet& embedded,
                                  const embedding::LeafMap& map,
                                  std::size_t cap_stories) {
  inference::JointTable joint = inference::exact_joint(original, cap_stories);
  inference::JointTable acc = original_distribution(original, embedded, map, cap_stories);
  if (acc.scope != joint.scope)
    throw Error(ErrorKind::logic, "folded scope does not match the classical joint");

  VerifyReport report;
  report.entries = joint.probs.size();
  for (std::size_t i = 0; i < joint.probs.size(); ++i)
    report.max_error = std::max(report.max_error, std::abs(acc.probs[i] - joint.probs[i]));
  report.ok = report.max_error < kVerifyTol;
  return report;
}

LeafSamples sample_leaves(const QBNet& net, std::size_t n_samples, std::uint64_t seed,
                          std::size_t cap_stories) {
  LeafDistribution dist = leaf_distribution(net, cap_stories);
  std::vector<double> cdf(dist.probs.size());
  double cum = 0.0;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    cum += dist.probs[i];
    cdf[i] = cum;
  }

  LeafSamples out;
  out.scope = dist.scope;
  out.dims = dist.dims;
  out.labels = dist.labels;
  out.draws.reserve(n_samples);
  PackedShape shape{dist.dims};
  for (std::size_t s = 0; s < n_samples; ++s) {
    std::mt19937_64 eng(inference::substream_seed(seed, s));
    double u = next_u01(eng) * cum;
    std::size_t idx = static_cast<std::size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (idx >= dist.probs.size()) idx = dist.probs.size() - 1;
    std::vector<std::size_t> digits;
    shape.unpack(idx, digits);
    out.draws.push_back(std::move(digits));
  }
  return out;
}

inference::JointTable estimate_conditional(const LeafSamples& samples,
                                           const std::vector<std::string>& query,
                                           const inference::Evidence& evidence) {
  auto scope_index = [&](const std::string& id) {
    for (std::size_t i = 0; i < samples.scope.size(); ++i)
      if (samples.scope[i] == id) return i;
    throw Error(ErrorKind::validation, "\"" + id + "\" is not a sampled leaf");
  };

  inference::JointTable out;
  std::vector<std::size_t> query_pos;
  for (const std::string& id : query) {
    std::size_t pos = scope_index(id);
    query_pos.push_back(pos);
    out.scope.push_back(id);
    out.dims.push_back(samples.dims[pos]);
    out.labels.push_back(samples.labels[pos]);
  }
  std::vector<std::pair<std::size_t, std::size_t>> ev_pos;
  for (const auto& [id, state] : evidence) ev_pos.push_back({scope_index(id), state});

  out.probs.assign(out.total(), 0.0);
  std::size_t accepted = 0;
  std::vector<std::size_t> kept(query_pos.size());
  for (const auto& draw : samples.draws) {
    bool match = true;
    for (const auto& [pos, state] : ev_pos)
      if (draw[pos] != state) {
        match = false;
        break;
      }
    if (!match) continue;
    ++accepted;
    for (std::size_t k = 0; k < query_pos.size(); ++k) kept[k] = draw[query_pos[k]];
    out.probs[out.pack(kept)] += 1.0;
  }
  if (accepted == 0)
    throw Error(ErrorKind::impossible_evidence, "no sampled run matches the evidence");
  for (double& p : out.probs) p /= static_cast<double>(accepted);
  return out;
}

}  // namespace qbn::qsim
