// Python bindings: the library's main operations behind a JSON-string API.
// Nets travel as JSON text (the same format the CLI reads and writes);
// tables and results come back as plain dicts and lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <bit>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbn/algorithms.hpp"
#include "qbn/embedding.hpp"
#include "qbn/inference.hpp"
#include "qbn/netcore.hpp"
#include "qbn/qsim.hpp"

namespace py = pybind11;
using namespace qbn;

namespace {

std::size_t cap_entries(int cap_bits) {
  if (cap_bits < 1 || cap_bits > 62)
    throw Error(ErrorKind::validation, "cap_bits must be in [1, 62]");
  return std::size_t{1} << cap_bits;
}

py::dict table_dict(const inference::JointTable& t) {
  py::dict d;
  d["scope"] = t.scope;
  d["dims"] = t.dims;
  d["labels"] = t.labels;
  d["probs"] = t.probs;
  return d;
}

py::dict validate_net(const std::string& net_json) {
  Net net = parse_net(net_json);
  ValidationReport report = validate(net);
  std::vector<std::string> issues;
  for (const auto& issue : report.issues)
    issues.push_back(issue.node_id.empty() ? issue.message
                                           : issue.node_id + ": " + issue.message);
  py::dict d;
  d["ok"] = report.ok();
  d["issues"] = issues;
  return d;
}

py::dict embed(const std::string& net_json, bool lean, int cap_bits) {
  CBNet net = parse_net(net_json);
  if (net.flavor != Flavor::cb)
    throw Error(ErrorKind::validation, "embed expects a classical net");
  embedding::EmbedResult res = embedding::embed_cbnet(net, lean, cap_entries(cap_bits));
  py::dict d;
  d["net"] = serialize_net(res.qbnet);
  d["map"] = embedding::serialize_leaf_map(res.leafmap);
  d["nodes_before"] = net.nodes.size();
  d["nodes_after"] = res.qbnet.nodes.size();
  d["retained"] = res.leafmap.pairs.size();
  d["summed"] = res.leafmap.summed_leaves.size();
  return d;
}

py::dict infer(const std::string& net_json, const std::vector<std::string>& query,
               const inference::Evidence& evidence, const std::string& engine,
               int cap_bits) {
  Net net = parse_net(net_json);
  std::size_t cap = cap_entries(cap_bits);
  inference::JointTable joint;
  if (net.flavor == Flavor::qb) {
    if (engine != "quantum")
      throw Error(ErrorKind::validation,
                  "a quantum net only supports engine=\"quantum\"");
    joint = qsim::as_joint_table(qsim::leaf_distribution(net, cap));
  } else if (engine == "classical") {
    joint = inference::exact_joint(net, cap);
  } else if (engine == "quantum") {
    embedding::EmbedResult res = embedding::embed_cbnet(net, false, cap);
    joint = qsim::original_distribution(net, res.qbnet, res.leafmap, cap);
  } else {
    throw Error(ErrorKind::validation, "engine must be \"classical\" or \"quantum\"");
  }
  return table_dict(inference::conditional(joint, query, evidence));
}

py::dict sample(const std::string& net_json, std::size_t n, std::uint64_t seed,
                const std::vector<std::string>& query,
                const inference::Evidence& evidence, int cap_bits) {
  Net net = parse_net(net_json);
  py::dict d;
  if (net.flavor == Flavor::qb) {
    qsim::LeafSamples draws = qsim::sample_leaves(net, n, seed, cap_entries(cap_bits));
    d = table_dict(qsim::estimate_conditional(draws, query, evidence));
  } else {
    std::vector<Story> stories = inference::ancestral_sample(net, n, seed);
    d = table_dict(inference::estimate_conditional(net, stories, query, evidence));
  }
  d["samples"] = n;
  d["seed"] = seed;
  return d;
}

py::dict verify(const std::string& net_json, bool lean, int cap_bits) {
  CBNet net = parse_net(net_json);
  if (net.flavor != Flavor::cb)
    throw Error(ErrorKind::validation, "verify expects a classical net");
  std::size_t cap = cap_entries(cap_bits);
  embedding::EmbedResult res = embedding::embed_cbnet(net, lean, cap);
  qsim::VerifyReport report =
      qsim::verify_net_embedding(net, res.qbnet, res.leafmap, cap);
  py::dict d;
  d["ok"] = report.ok;
  d["max_error"] = report.max_error;
  d["entries"] = report.entries;
  return d;
}

alg::BoolFn fn_from_table(const std::vector<std::size_t>& table) {
  if (table.empty() || !std::has_single_bit(table.size()))
    throw Error(ErrorKind::validation, "table length must be a power of two");
  alg::BoolFn f;
  f.nb = std::bit_width(table.size()) - 1;
  f.table = table;
  return f;
}

py::dict deutsch_jozsa(const std::vector<std::size_t>& table) {
  alg::BoolFn f = fn_from_table(table);
  alg::DjVerdict verdict = alg::dj_classify(f);
  py::dict d;
  d["verdict"] = verdict == alg::DjVerdict::constant ? "constant" : "balanced";
  d["distribution"] = alg::dj_distribution(f);
  return d;
}

py::dict simon(std::size_t nb, std::size_t period, std::uint64_t seed) {
  alg::BoolFn f = alg::simon_planted_fn(nb, period, seed);
  std::vector<double> dist = alg::simon_distribution(f);
  std::vector<std::size_t> support;
  for (std::size_t xp = 0; xp < dist.size(); ++xp)
    if (dist[xp] > 0) support.push_back(xp);
  py::dict d;
  d["distribution"] = dist;
  d["support"] = support;
  d["recovered"] = alg::simon_recover_period(nb, support);
  return d;
}

py::dict bernstein_vazirani(std::size_t nb, std::size_t b) {
  alg::BvResult res = alg::bv_run(nb, b);
  py::dict d;
  d["recovered"] = res.recovered;
  return d;
}

py::dict grover(std::size_t nb, std::size_t target, std::optional<std::size_t> r) {
  alg::GroverResult g = alg::grover_run(nb, target, r);
  py::dict d;
  d["r"] = g.r;
  d["theta"] = g.theta;
  d["success"] = g.success;
  return d;
}

py::dict younes(std::size_t nb, std::size_t target, std::optional<std::size_t> r) {
  alg::YounesResult y = alg::younes_run(nb, target, r);
  py::dict d;
  d["r"] = y.r;
  d["theta"] = y.theta;
  d["success"] = y.success;
  d["kappa_success"] = y.kappa_success;
  return d;
}

py::dict microscope(const std::vector<double>& p, std::optional<double> alpha,
                    std::optional<std::size_t> r) {
  alg::MicroscopeSetup s = alg::microscope_setup(p, alpha, r);
  alg::MicroscopeResult m = alg::microscope_run(s);
  py::dict d;
  d["r"] = s.r;
  d["theta"] = s.theta;
  d["alpha"] = s.alpha;
  d["overlap_e0"] = m.overlap_e0;
  d["total_rotation"] = m.total_rotation;
  return d;
}

}  // namespace

PYBIND11_MODULE(_qbnets, m) {
  m.doc() = "Quantum Bayesian nets: embed classical nets, simulate, verify, sample";

  py::register_exception<Error>(m, "QbnError");

  m.def("validate", &validate_net, py::arg("net_json"),
        "Structural and numerical checks; returns {ok, issues}.");
  m.def("embed", &embed, py::arg("net_json"), py::arg("lean") = false,
        py::arg("cap_bits") = 24,
        "Embed a classical net into a quantum net; returns the quantum net and "
        "leaf map as JSON strings plus node and leaf counts.");
  m.def("infer", &infer, py::arg("net_json"),
        py::arg("query") = std::vector<std::string>{},
        py::arg("evidence") = inference::Evidence{}, py::arg("engine") = "classical",
        py::arg("cap_bits") = 24,
        "P(query | evidence) as {scope, dims, labels, probs}. engine=\"quantum\" "
        "routes a classical net through its embedding; quantum nets are read "
        "from their leaf distribution.");
  m.def("sample", &sample, py::arg("net_json"), py::arg("n"), py::arg("seed") = 0,
        py::arg("query") = std::vector<std::string>{},
        py::arg("evidence") = inference::Evidence{}, py::arg("cap_bits") = 24,
        "Empirical P(query | evidence) from n deterministic-seeded draws.");
  m.def("verify", &verify, py::arg("net_json"), py::arg("lean") = false,
        py::arg("cap_bits") = 24,
        "Embed a classical net and check the embedded net reproduces its joint; "
        "returns {ok, max_error, entries}.");

  m.def("deutsch_jozsa", &deutsch_jozsa, py::arg("table"),
        "Classify a {0,1} truth table as constant or balanced and return the "
        "output distribution.");
  m.def("simon", &simon, py::arg("nb"), py::arg("period"), py::arg("seed") = 1,
        "Plant a 2-to-1 periodic function, return its output distribution, "
        "support, and the period recovered from the support.");
  m.def("bernstein_vazirani", &bernstein_vazirani, py::arg("nb"), py::arg("b"),
        "Recover a hidden parity vector in one query.");
  m.def("grover", &grover, py::arg("nb"), py::arg("target"),
        py::arg("r") = std::nullopt,
        "Amplitude-amplification search; returns {r, theta, success}.");
  m.def("younes", &younes, py::arg("nb"), py::arg("target"),
        py::arg("r") = std::nullopt,
        "The doubled-space search variant; returns {r, theta, success, "
        "kappa_success}.");
  m.def("microscope", &microscope, py::arg("p"), py::arg("alpha") = std::nullopt,
        py::arg("r") = std::nullopt,
        "Magnify the y=0 branch of a voting net with branch probabilities p; "
        "returns the iteration plan and final overlap.");
}
