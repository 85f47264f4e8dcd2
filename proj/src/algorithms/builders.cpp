#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qbn/algorithms.hpp"
#include "qbn/embedding.hpp"

namespace qbn::alg {

namespace {

// Product state space, first component least significant, labels joined with
// ',' (the same convention the net embedding uses for compound nodes).
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

Node pinned_root(const std::string& id, std::size_t n_states) {
  Node node;
  node.id = id;
  node.states = StateSpace::indexed(n_states);
  node.amp = AmplitudeMatrix::Zero(n_states, 1);
  (*node.amp)(0, 0) = 1.0;
  return node;
}

Node matrix_node(const std::string& id, const std::string& parent,
                 const AmplitudeMatrix& amp) {
  Node node;
  node.id = id;
  node.parents = {parent};
  node.states = StateSpace::indexed(static_cast<std::size_t>(amp.rows()));
  node.amp = amp;
  return node;
}

// Delta node selecting one component digit of a compound parent.
Node selector(const std::string& id, const Node& parent, std::size_t component) {
  std::size_t before = 1;
  for (std::size_t k = 0; k < component; ++k) before *= parent.components[k].size();
  std::size_t mine = parent.components[component].size();

  Node node;
  node.id = id;
  node.kind = NodeKind::marginalizer;
  node.parents = {parent.id};
  node.states = parent.components[component];
  AmplitudeMatrix amp = AmplitudeMatrix::Zero(mine, parent.states.size());
  for (std::size_t c = 0; c < parent.states.size(); ++c) {
    amp((c / before) % mine, c) = 1.0;
  }
  node.amp = std::move(amp);
  return node;
}

void check_bits(std::size_t nb, std::size_t limit) {
  if (nb == 0 || nb >= limit) {
    throw Error(ErrorKind::validation,
                "bit count must be in [1, " + std::to_string(limit - 1) +
                    "], got " + std::to_string(nb));
  }
}

// amp(out, in) = (-1)^(out * (1 - in)) / sqrt(2): the preparation that turns
// a bit pinned at 0 into |-> and at 1 into |+>.
AmplitudeMatrix minus_prep() {
  AmplitudeMatrix m(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  m << s, s, -s, s;
  return m;
}

// amp(out, in) = (-1)^((1 - out) * in) / sqrt(2): the closing rotation on the
// target bit, the transpose of minus_prep().
AmplitudeMatrix minus_close() {
  AmplitudeMatrix m(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  m << s, -s, s, s;
  return m;
}

}  // namespace

QBNet dj_qbnet(const BoolFn& f) {
  check_bits(f.nb, 20);
  std::size_t n = f.domain();
  if (f.table.size() != n) {
    throw Error(ErrorKind::validation, "truth table size does not match nb");
  }
  for (std::size_t v : f.table) {
    if (v > 1) {
      throw Error(ErrorKind::validation, "truth table must be {0,1}-valued");
    }
  }

  QBNet net;
  net.flavor = Flavor::qb;
  net.nodes.push_back(pinned_root("X", n));
  net.nodes.push_back(pinned_root("Y", 2));
  net.nodes.push_back(matrix_node("x", "X", embedding::hadamard_matrix(f.nb)));
  net.nodes.push_back(matrix_node("y", "Y", minus_prep()));

  // c = (c_x, c_y) with c_x = x and c_y = y xor f(x); parents pack x as the
  // least significant digit of the column, c_x as that of the row.
  Node c;
  c.id = "c";
  c.parents = {"x", "y"};
  c.components = {StateSpace::indexed(n), StateSpace::boolean()};
  c.states = product_space(c.components);
  AmplitudeMatrix amp = AmplitudeMatrix::Zero(2 * n, 2 * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      amp(x + n * (y ^ f.table[x]), x + n * y) = 1.0;
    }
  }
  c.amp = std::move(amp);
  Node sel_x = selector("xp", c, 0);
  Node sel_y = selector("yp", c, 1);
  net.nodes.push_back(std::move(c));
  net.nodes.push_back(std::move(sel_x));
  net.nodes.push_back(std::move(sel_y));
  net.nodes.push_back(matrix_node("Xp", "xp", embedding::hadamard_matrix(f.nb)));
  net.nodes.push_back(matrix_node("Yp", "yp", minus_close()));

  require_valid(net);
  return net;
}

QBNet simon_qbnet(const BoolFn& f) {
  check_bits(f.nb, 20);
  std::size_t n = f.domain();
  if (f.table.size() != n) {
    throw Error(ErrorKind::validation, "truth table size does not match nb");
  }
  for (std::size_t v : f.table) {
    if (v >= n) {
      throw Error(ErrorKind::validation,
                  "truth table values must fit in nb bits");
    }
  }

  QBNet net;
  net.flavor = Flavor::qb;
  net.nodes.push_back(pinned_root("X", n));
  net.nodes.push_back(pinned_root("Y", n));
  net.nodes.push_back(matrix_node("x", "X", embedding::hadamard_matrix(f.nb)));

  Node c;
  c.id = "c";
  c.parents = {"x", "Y"};
  c.components = {StateSpace::indexed(n), StateSpace::indexed(n)};
  c.states = product_space(c.components);
  AmplitudeMatrix amp = AmplitudeMatrix::Zero(n * n, n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t yy = 0; yy < n; ++yy) {
      amp(x + n * (yy ^ f.table[x]), x + n * yy) = 1.0;
    }
  }
  c.amp = std::move(amp);
  Node sel_x = selector("xp", c, 0);
  Node sel_y = selector("Yp", c, 1);
  net.nodes.push_back(std::move(c));
  net.nodes.push_back(std::move(sel_x));
  net.nodes.push_back(matrix_node("Xp", "xp", embedding::hadamard_matrix(f.nb)));
  net.nodes.push_back(std::move(sel_y));

  require_valid(net);
  return net;
}

QBNet bv_qbnet(std::size_t nb, std::size_t b) {
  check_bits(nb, 20);
  std::size_t n = std::size_t{1} << nb;
  if (b >= n) {
    throw Error(ErrorKind::validation,
                "hidden vector " + std::to_string(b) + " needs more than " +
                    std::to_string(nb) + " bits");
  }
  QBNet net;
  net.flavor = Flavor::qb;
  net.nodes.push_back(pinned_root("X", n));
  AmplitudeMatrix amp = AmplitudeMatrix::Zero(n, n);
  for (std::size_t x = 0; x < n; ++x) amp(x ^ b, x) = 1.0;
  net.nodes.push_back(matrix_node("Xp", "X", amp));
  require_valid(net);
  return net;
}

QBNet grover_qbnet(std::size_t nb, std::size_t j_targ,
                   std::optional<std::size_t> r) {
  check_bits(nb, 20);
  std::size_t n = std::size_t{1} << nb;
  if (j_targ >= n) {
    throw Error(ErrorKind::validation,
                "target state " + std::to_string(j_targ) + " needs more than " +
                    std::to_string(nb) + " bits");
  }
  std::size_t steps = r.value_or(grover_optimal_r(n));

  QBNet net;
  net.flavor = Flavor::qb;
  net.nodes.push_back(pinned_root("X0", n));
  // The table pins the root at zero, so the uniform start state needs one
  // explicit Hadamard node before the iterations.
  net.nodes.push_back(matrix_node("Xp", "X0", embedding::hadamard_matrix(nb)));

  double nd = static_cast<double>(n);
  Eigen::VectorXcd mu = Eigen::VectorXcd::Constant(n, complexd(1.0 / std::sqrt(nd), 0.0));
  AmplitudeMatrix r_mu = AmplitudeMatrix::Identity(n, n) - 2.0 * mu * mu.adjoint();
  AmplitudeMatrix r_phi = AmplitudeMatrix::Identity(n, n);
  r_phi(j_targ, j_targ) = -1.0;
  AmplitudeMatrix iteration = -(r_mu * r_phi);

  std::string prev = "Xp";
  for (std::size_t k = 1; k <= steps; ++k) {
    std::string id = "X" + std::to_string(k);
    net.nodes.push_back(matrix_node(id, prev, iteration));
    prev = id;
  }

  require_valid(net);
  return net;
}

CBNet voting_cbnet(const std::vector<double>& p) {
  std::size_t n = p.size();
  if (n < 2 || (n & (n - 1)) != 0) {
    throw Error(ErrorKind::validation,
                "p must have power-of-two length >= 2, got " + std::to_string(n));
  }
  std::size_t nb = static_cast<std::size_t>(std::countr_zero(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0)) {
      throw Error(ErrorKind::validation, "p[" + std::to_string(i) +
                                             "] = " + fmt17(p[i]) +
                                             " is outside [0, 1]");
    }
  }

  CBNet net;
  net.flavor = Flavor::cb;
  std::vector<std::string> parents;
  for (std::size_t i = 0; i < nb; ++i) {
    Node x;
    x.id = "x" + std::to_string(i);
    x.states = StateSpace::boolean();
    ProbabilityMatrix cpt(2, 1);
    cpt << 0.5, 0.5;
    x.cpt = std::move(cpt);
    parents.push_back(x.id);
    net.nodes.push_back(std::move(x));
  }

  Node y;
  y.id = "y";
  y.parents = parents;  // x0 least significant, matching the p index packing
  y.states = StateSpace::boolean();
  ProbabilityMatrix cpt(2, n);
  for (std::size_t col = 0; col < n; ++col) {
    cpt(0, col) = p[col];
    cpt(1, col) = 1.0 - p[col];
  }
  y.cpt = std::move(cpt);
  net.nodes.push_back(std::move(y));

  require_valid(net);
  return net;
}

}  // namespace qbn::alg
