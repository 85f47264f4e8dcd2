#include <string>
#include <vector>

#include "doctest.h"
#include "qbn/netcore.hpp"

using namespace qbn;

namespace {

Node make_cb_node(std::string id, std::vector<std::string> parents,
                  std::size_t nstates, ProbabilityMatrix cpt) {
  Node n;
  n.id = std::move(id);
  n.parents = std::move(parents);
  n.states = StateSpace::indexed(nstates);
  n.cpt = std::move(cpt);
  return n;
}

ProbabilityMatrix coin(double p1) {
  ProbabilityMatrix m(2, 1);
  m << 1.0 - p1, p1;
  return m;
}

CBNet chain_net() {
  // a -> b with a lopsided coin and a noisy copy.
  CBNet net;
  net.flavor = Flavor::cb;
  net.nodes.push_back(make_cb_node("a", {}, 2, coin(0.3)));
  ProbabilityMatrix b(2, 2);
  b << 0.9, 0.2, 0.1, 0.8;
  net.nodes.push_back(make_cb_node("b", {"a"}, 2, b));
  return net;
}

bool nets_equal(const Net& lhs, const Net& rhs) {
  if (lhs.flavor != rhs.flavor || lhs.nodes.size() != rhs.nodes.size()) return false;
  for (std::size_t i = 0; i < lhs.nodes.size(); ++i) {
    const Node& a = lhs.nodes[i];
    const Node& b = rhs.nodes[i];
    if (a.id != b.id || a.kind != b.kind || a.parents != b.parents) return false;
    if (a.states.labels != b.states.labels) return false;
    if (a.components.size() != b.components.size()) return false;
    for (std::size_t c = 0; c < a.components.size(); ++c)
      if (a.components[c].labels != b.components[c].labels) return false;
    if (a.cpt.has_value() != b.cpt.has_value()) return false;
    if (a.cpt && (a.cpt->rows() != b.cpt->rows() || a.cpt->cols() != b.cpt->cols() ||
                  *a.cpt != *b.cpt))
      return false;
    if (a.amp.has_value() != b.amp.has_value()) return false;
    if (a.amp && (a.amp->rows() != b.amp->rows() || a.amp->cols() != b.amp->cols() ||
                  *a.amp != *b.amp))
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("state spaces") {
  StateSpace b = StateSpace::boolean();
  CHECK(b.size() == 2);
  CHECK(b.labels[1] == "1");
  CHECK(*b.find("0") == 0);
  CHECK(!b.find("2"));
  StateSpace four = StateSpace::indexed(4);
  CHECK(four.labels == std::vector<std::string>{"0", "1", "2", "3"});
}

TEST_CASE("packed indexing is little-endian in list order") {
  PackedShape shape{{2, 3, 2}};
  CHECK(shape.total() == 12);
  CHECK(shape.pack({1, 0, 0}) == 1);
  CHECK(shape.pack({0, 1, 0}) == 2);
  CHECK(shape.pack({0, 0, 1}) == 6);
  CHECK(shape.pack({1, 2, 1}) == 11);
  std::vector<std::size_t> digits;
  for (std::size_t i = 0; i < shape.total(); ++i) {
    shape.unpack(i, digits);
    CHECK(shape.pack(digits) == i);
    for (std::size_t d = 0; d < 3; ++d) CHECK(shape.digit(i, d) == digits[d]);
  }
}

TEST_CASE("validate accepts a correct net") {
  CBNet net = chain_net();
  ValidationReport report = validate(net);
  CHECK(report.ok());
  CHECK(report.str().empty());
}

TEST_CASE("validate flags structural problems") {
  SUBCASE("duplicate id") {
    CBNet net = chain_net();
    net.nodes.push_back(make_cb_node("a", {}, 2, coin(0.5)));
    ValidationReport r = validate(net);
    REQUIRE(!r.ok());
    CHECK(r.str().find("duplicate") != std::string::npos);
  }
  SUBCASE("missing parent") {
    CBNet net = chain_net();
    net.nodes[1].parents = {"zz"};
    ValidationReport r = validate(net);
    REQUIRE(!r.ok());
    CHECK(r.str().find("zz") != std::string::npos);
  }
  SUBCASE("column sum off") {
    CBNet net = chain_net();
    (*net.nodes[0].cpt)(0, 0) = 0.8;
    ValidationReport r = validate(net);
    REQUIRE(!r.ok());
    CHECK(r.str().find("sums to") != std::string::npos);
  }
  SUBCASE("negative probability") {
    CBNet net = chain_net();
    (*net.nodes[0].cpt)(0, 0) = -0.3;
    (*net.nodes[0].cpt)(1, 0) = 1.3;
    ValidationReport r = validate(net);
    REQUIRE(!r.ok());
    CHECK(r.str().find("negative") != std::string::npos);
  }
  SUBCASE("payload shape mismatch") {
    CBNet net = chain_net();
    net.nodes[1].cpt = coin(0.5);  // 2x1 but parent needs 2 columns
    ValidationReport r = validate(net);
    REQUIRE(!r.ok());
    CHECK(r.str().find("expected") != std::string::npos);
  }
  SUBCASE("flavor mismatch") {
    CBNet net = chain_net();
    net.nodes[0].amp = AmplitudeMatrix::Identity(2, 2);
    ValidationReport r = validate(net);
    CHECK(!r.ok());
  }
  SUBCASE("cycle") {
    CBNet net = chain_net();
    ProbabilityMatrix a(2, 2);
    a << 0.7, 0.3, 0.3, 0.7;
    net.nodes[0].parents = {"b"};
    net.nodes[0].cpt = a;
    ValidationReport r = validate(net);
    REQUIRE(!r.ok());
    CHECK(r.str().find("cycle") != std::string::npos);
  }
  SUBCASE("marginalizer arity") {
    CBNet net = chain_net();
    net.nodes[1].kind = NodeKind::marginalizer;
    // b's payload is not a delta
    ValidationReport r = validate(net);
    REQUIRE(!r.ok());
    CHECK(r.str().find("delta") != std::string::npos);
  }
}

TEST_CASE("quantum columns must have unit squared magnitude") {
  QBNet net;
  net.flavor = Flavor::qb;
  Node n;
  n.id = "q";
  n.states = StateSpace::boolean();
  AmplitudeMatrix a(2, 1);
  a(0, 0) = complexd(0.6, 0.0);
  a(1, 0) = complexd(0.0, 0.8);
  n.amp = a;
  net.nodes.push_back(n);
  CHECK(validate(net).ok());
  (*net.nodes[0].amp)(1, 0) = complexd(0.0, 0.7);
  CHECK(!validate(net).ok());
}

TEST_CASE("topological order breaks ties lexicographically") {
  CBNet net;
  net.flavor = Flavor::cb;
  ProbabilityMatrix pair_cpt(2, 4);
  pair_cpt << 1, 0, 0, 1, 0, 1, 1, 0;
  net.nodes.push_back(make_cb_node("z", {}, 2, coin(0.5)));
  net.nodes.push_back(make_cb_node("m", {"z", "a"}, 2, pair_cpt));
  net.nodes.push_back(make_cb_node("a", {}, 2, coin(0.5)));
  ProbabilityMatrix copy2(2, 2);
  copy2 << 1, 0, 0, 1;
  net.nodes.push_back(make_cb_node("k", {"m"}, 2, copy2));
  auto order = topological_order(net);
  CHECK(order == std::vector<std::string>{"a", "z", "m", "k"});
}

TEST_CASE("topological order reports a cycle member") {
  CBNet net = chain_net();
  ProbabilityMatrix a(2, 2);
  a << 0.7, 0.3, 0.3, 0.7;
  net.nodes[0].parents = {"b"};
  net.nodes[0].cpt = a;
  CHECK_THROWS_WITH_AS(topological_order(net),
                       doctest::Contains("cycle"), Error);
}

TEST_CASE("serialize then parse is the identity") {
  CBNet net = chain_net();
  // values that need all 17 digits
  (*net.nodes[0].cpt)(0, 0) = 0.1 + 0.2;
  (*net.nodes[0].cpt)(1, 0) = 1.0 - (0.1 + 0.2);
  std::string text = serialize_net(net);
  Net back = parse_net(text);
  CHECK(nets_equal(net, back));
  CHECK(serialize_net(back) == text);
}

TEST_CASE("quantum nets round-trip with complex entries") {
  QBNet net;
  net.flavor = Flavor::qb;
  Node n;
  n.id = "q";
  n.states = StateSpace::boolean();
  n.components = {StateSpace::boolean()};
  AmplitudeMatrix a(2, 1);
  a(0, 0) = complexd(1.0 / 3.0, 2.0 / 3.0);
  a(1, 0) = complexd(-2.0 / 3.0, 0.0);
  n.amp = a;
  net.nodes.push_back(n);
  std::string text = serialize_net(net);
  Net back = parse_net(text);
  CHECK(nets_equal(net, back));
  CHECK(serialize_net(back) == text);
}

TEST_CASE("bundled example nets parse and validate") {
  for (const char* name : {"/lung.json", "/scattering.json"}) {
    Net net = parse_net_file(std::string(QBN_DATA_DIR) + name);
    CHECK(net.flavor == Flavor::cb);
    CHECK(validate(net).ok());
    std::string text = serialize_net(net);
    Net back = parse_net(text);
    CHECK(nets_equal(net, back));
    CHECK(serialize_net(back) == text);
  }
  Net lung = parse_net_file(std::string(QBN_DATA_DIR) + "/lung.json");
  CHECK(lung.nodes.size() == 8);
  CHECK(topological_order(lung) ==
        std::vector<std::string>{"a", "s", "b", "l", "t", "e", "d", "x"});
}

TEST_CASE("parse errors carry location") {
  CHECK_THROWS_WITH_AS(parse_net("{"), doctest::Contains("invalid JSON"), Error);
  CHECK_THROWS_WITH_AS(parse_net(R"({"flavor": "xx", "nodes": []})"),
                       doctest::Contains("flavor"), Error);
  // second cpt row too short
  std::string bad = R"({"flavor": "cb", "nodes": [
    {"id": "e", "parents": [], "states": ["0", "1"],
     "cpt": [[0.5, 0.5], [0.5]]}]})";
  CHECK_THROWS_WITH_AS(parse_net(bad), doctest::Contains("row 1"), Error);
  CHECK_THROWS_WITH_AS(parse_net(bad), doctest::Contains("\"e\""), Error);
  std::string bad_amp = R"({"flavor": "qb", "nodes": [
    {"id": "q", "parents": [], "states": ["0", "1"],
     "amp": [[0.6], [0.8]]}]})";
  CHECK_THROWS_WITH_AS(parse_net(bad_amp), doctest::Contains("[re, im]"), Error);
}

TEST_CASE("error kinds survive the throw") {
  try {
    parse_net("not json");
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
  try {
    CBNet net = chain_net();
    net.at("zz");
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::validation);
  }
}

TEST_CASE("fmt17 round-trips doubles") {
  for (double v : {0.1, 1.0 / 3.0, 0.1 + 0.2, 1e-300, 123456789.123456789, 0.0, 1.0}) {
    CHECK(std::stod(fmt17(v)) == v);
  }
  CHECK(fmt17(1.0) == "1");
  CHECK(fmt17(0.5) == "0.5");
}
