#include <set>

#include "qbn/netcore.hpp"

namespace qbn {

std::vector<std::size_t> topological_order_indices(const Net& net) {
  std::vector<std::size_t> indeg(net.nodes.size(), 0);
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    for (const std::string& p : net.nodes[i].parents) {
      if (net.index_of(p) == Net::npos)
        throw Error(ErrorKind::validation, "node \"" + net.nodes[i].id +
                                               "\": parent \"" + p +
                                               "\" does not exist");
    }
    indeg[i] = net.nodes[i].parents.size();
  }

  auto children = net.children_index();

  // Kahn's algorithm; among simultaneously ready nodes the lexicographically
  // smallest id goes first, so the order is unique.
  std::set<std::pair<std::string, std::size_t>> ready;
  for (std::size_t i = 0; i < net.nodes.size(); ++i)
    if (indeg[i] == 0) ready.insert({net.nodes[i].id, i});

  std::vector<std::size_t> order;
  order.reserve(net.nodes.size());
  while (!ready.empty()) {
    auto it = ready.begin();
    std::size_t i = it->second;
    ready.erase(it);
    order.push_back(i);
    for (std::size_t c : children[i])
      if (--indeg[c] == 0) ready.insert({net.nodes[c].id, c});
  }

  if (order.size() != net.nodes.size()) {
    std::string member;
    for (std::size_t i = 0; i < net.nodes.size(); ++i)
      if (indeg[i] > 0 && (member.empty() || net.nodes[i].id < member))
        member = net.nodes[i].id;
    throw Error(ErrorKind::validation,
                "graph has a cycle through node \"" + member + "\"");
  }
  return order;
}

std::vector<std::string> topological_order(const Net& net) {
  std::vector<std::string> ids;
  for (std::size_t i : topological_order_indices(net)) ids.push_back(net.nodes[i].id);
  return ids;
}

}  // namespace qbn
