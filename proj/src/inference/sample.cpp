#include <random>

#include "qbn/inference.hpp"

namespace qbn::inference {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Top 53 bits -> [0, 1). Avoids std::uniform_real_distribution, whose output
// is not pinned down by the standard; sampled bytes must be reproducible
// across platforms and compilers.
double next_u01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t i) {
  return splitmix64(seed ^ splitmix64(i + 0x9E3779B97F4A7C15ULL));
}

std::vector<Story> ancestral_sample(const CBNet& net, std::size_t n_stories,
                                    std::uint64_t seed) {
  require_valid(net);
  std::vector<std::size_t> order = topological_order_indices(net);

  std::vector<std::vector<std::size_t>> parent_idx(net.nodes.size());
  std::vector<std::vector<std::size_t>> parent_dim(net.nodes.size());
  for (std::size_t i : order) {
    const Node& node = net.nodes[i];
    for (const std::string& p : node.parents) {
      std::size_t j = net.index_of(p);
      parent_idx[i].push_back(j);
      parent_dim[i].push_back(net.nodes[j].states.size());
    }
  }

  std::vector<Story> stories;
  stories.reserve(n_stories);
  std::vector<std::size_t> states(net.nodes.size(), 0);
  std::vector<std::size_t> pdig;
  for (std::size_t s = 0; s < n_stories; ++s) {
    std::mt19937_64 eng(substream_seed(seed, s));
    double weight = 1.0;
    for (std::size_t i : order) {
      const Node& node = net.nodes[i];
      pdig.clear();
      for (std::size_t j : parent_idx[i]) pdig.push_back(states[j]);
      std::size_t col = pack_index(pdig, parent_dim[i]);
      double u = next_u01(eng);
      double cum = 0.0;
      std::size_t arity = node.states.size();
      std::size_t chosen = arity - 1;  // guard against rounding at u ~ 1
      for (std::size_t r = 0; r < arity; ++r) {
        cum += (*node.cpt)(r, col);
        if (u < cum) {
          chosen = r;
          break;
        }
      }
      states[i] = chosen;
      weight *= (*node.cpt)(chosen, col);
    }
    stories.push_back({states, complexd(weight, 0.0)});
  }
  return stories;
}

JointTable estimate_conditional(const CBNet& net, const std::vector<Story>& stories,
                                const std::vector<std::string>& query,
                                const Evidence& evidence) {
  JointTable out;
  std::vector<std::size_t> query_idx;
  for (const std::string& id : query) {
    std::size_t i = net.index_of(id);
    if (i == Net::npos)
      throw Error(ErrorKind::validation, "no node named \"" + id + "\"");
    query_idx.push_back(i);
    out.scope.push_back(id);
    out.dims.push_back(net.nodes[i].states.size());
    out.labels.push_back(net.nodes[i].states.labels);
  }
  std::vector<std::pair<std::size_t, std::size_t>> ev_idx;
  for (const auto& [id, state] : evidence) {
    std::size_t i = net.index_of(id);
    if (i == Net::npos)
      throw Error(ErrorKind::validation, "no node named \"" + id + "\"");
    ev_idx.push_back({i, state});
  }

  out.probs.assign(out.total(), 0.0);
  std::size_t accepted = 0;
  std::vector<std::size_t> kept(query_idx.size());
  for (const Story& story : stories) {
    bool match = true;
    for (const auto& [i, state] : ev_idx)
      if (story.states[i] != state) {
        match = false;
        break;
      }
    if (!match) continue;
    ++accepted;
    for (std::size_t k = 0; k < query_idx.size(); ++k)
      kept[k] = story.states[query_idx[k]];
    out.probs[out.pack(kept)] += 1.0;
  }
  if (accepted == 0)
    throw Error(ErrorKind::impossible_evidence,
                "no sampled story matches the evidence");
  for (double& p : out.probs) p /= static_cast<double>(accepted);
  return out;
}

}  // namespace qbn::inference
