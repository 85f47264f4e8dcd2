#include "commands.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qbn/algorithms.hpp"
#include "qbn/embedding.hpp"
#include "qbn/inference.hpp"
#include "qbn/netcore.hpp"
#include "qbn/qsim.hpp"

namespace qbn::cli {

namespace {

// --- small utilities ---------------------------------------------------------

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write \"" + path + "\"");
  out << text;
  if (!out) throw Error(ErrorKind::io, "write to \"" + path + "\" failed");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::size_t a = item.find_first_not_of(" \t");
    std::size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    parts.push_back(item.substr(a, b - a + 1));
  }
  return parts;
}

std::size_t parse_size(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Error(ErrorKind::validation, "cannot parse " + what + " \"" + text + "\"");
  }
}

std::vector<std::string> parse_query(const std::string& expr) { return split_list(expr); }

// "node=state" pairs; state may be a label or a numeric index.
inference::Evidence parse_evidence(const Net& net, const std::string& expr) {
  inference::Evidence ev;
  for (const std::string& item : split_list(expr)) {
    std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::validation,
                  "evidence \"" + item + "\" is not of the form node=state");
    std::string id = item.substr(0, eq);
    std::string state = item.substr(eq + 1);
    const Node& node = net.at(id);
    std::optional<std::size_t> idx = node.states.find(state);
    if (!idx) {
      std::size_t v = parse_size(state, "state of \"" + id + "\"");
      if (v >= node.states.size())
        throw Error(ErrorKind::validation, "node \"" + id + "\" has no state " + state);
      idx = v;
    }
    ev.push_back({id, *idx});
  }
  return ev;
}

// --- output helpers ----------------------------------------------------------

std::string jesc(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  return out;
}

std::string evidence_text(const Net& net, const inference::Evidence& ev) {
  std::string out;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (i) out += ", ";
    out += ev[i].first + "=" + net.at(ev[i].first).states.labels[ev[i].second];
  }
  return out;
}

void print_table(const inference::JointTable& t) {
  PackedShape shape{t.dims};
  std::vector<std::size_t> digits;
  for (std::size_t idx = 0; idx < t.probs.size(); ++idx) {
    shape.unpack(idx, digits);
    std::string row;
    for (std::size_t k = 0; k < t.scope.size(); ++k) {
      if (k) row += ", ";
      row += t.scope[k] + "=" + t.labels[k][digits[k]];
    }
    std::cout << "  " << row << "  " << fmt17(t.probs[idx]) << "\n";
  }
}

std::string table_json(const inference::JointTable& t) {
  std::string out = "{\"scope\": [";
  for (std::size_t i = 0; i < t.scope.size(); ++i) {
    if (i) out += ", ";
    out += jesc(t.scope[i]);
  }
  out += "], \"dims\": [";
  for (std::size_t i = 0; i < t.dims.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(t.dims[i]);
  }
  out += "], \"labels\": [";
  for (std::size_t i = 0; i < t.labels.size(); ++i) {
    if (i) out += ", ";
    out += "[";
    for (std::size_t j = 0; j < t.labels[i].size(); ++j) {
      if (j) out += ", ";
      out += jesc(t.labels[i][j]);
    }
    out += "]";
  }
  out += "], \"probs\": [";
  for (std::size_t i = 0; i < t.probs.size(); ++i) {
    if (i) out += ", ";
    out += fmt17(t.probs[i]);
  }
  out += "]}";
  return out;
}

std::string evidence_json(const inference::Evidence& ev) {
  std::string out = "[";
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (i) out += ", ";
    out += "{\"node\": " + jesc(ev[i].first) +
           ", \"state\": " + std::to_string(ev[i].second) + "}";
  }
  out += "]";
  return out;
}

std::string doubles_json(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt17(v[i]);
  }
  out += "]";
  return out;
}

std::string trajectory_json(const std::vector<std::array<double, 2>>& t) {
  std::string out = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += "[" + fmt17(t[i][0]) + ", " + fmt17(t[i][1]) + "]";
  }
  out += "]";
  return out;
}

// --- sampling from a demo distribution ---------------------------------------

// Sparse counts (index -> hits), inverse CDF with one substream per draw.
std::vector<std::pair<std::size_t, std::size_t>> sample_counts(
    const std::vector<double>& probs, std::size_t n, std::uint64_t seed) {
  std::vector<double> cdf(probs.size());
  double cum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    cdf[i] = cum;
  }
  std::vector<std::size_t> hits(probs.size(), 0);
  for (std::size_t s = 0; s < n; ++s) {
    std::mt19937_64 eng(inference::substream_seed(seed, s));
    double u = (eng() >> 11) * 0x1.0p-53 * cum;
    std::size_t idx = static_cast<std::size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (idx >= probs.size()) idx = probs.size() - 1;
    ++hits[idx];
  }
  std::vector<std::pair<std::size_t, std::size_t>> counts;
  for (std::size_t i = 0; i < hits.size(); ++i)
    if (hits[i]) counts.push_back({i, hits[i]});
  return counts;
}

std::string counts_json(const std::vector<std::pair<std::size_t, std::size_t>>& counts) {
  std::string out = "[";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ", ";
    out += "[" + std::to_string(counts[i].first) + ", " +
           std::to_string(counts[i].second) + "]";
  }
  out += "]";
  return out;
}

void warn_bins(std::size_t samples, std::size_t bins) {
  if (samples > 0 && samples < bins)
    std::cerr << "warning: " << samples << " samples for " << bins
              << " bins; the one-data-point-per-bin heuristic suggests at least "
              << bins << "\n";
}

// Appended to a demo's stdout when sampling was requested.
void print_sampling(const std::vector<std::pair<std::size_t, std::size_t>>& counts,
                    std::size_t samples, std::uint64_t seed) {
  std::cout << "samples: " << samples << " (seed " << seed << ")\n";
  std::size_t best = 0;
  std::size_t best_hits = 0;
  for (const auto& [idx, hits] : counts)
    if (hits > best_hits) {
      best = idx;
      best_hits = hits;
    }
  std::cout << "most sampled outcome: " << best << " (frequency "
            << fmt17(static_cast<double>(best_hits) / static_cast<double>(samples))
            << ")\n";
}

// CSV over a distribution: index, probability, then sampled counts when given.
std::string distribution_csv(const std::vector<double>& probs,
                             const std::vector<std::pair<std::size_t, std::size_t>>& counts,
                             std::size_t samples) {
  std::vector<std::size_t> hits(probs.size(), 0);
  for (const auto& [idx, c] : counts) hits[idx] = c;
  std::string out = samples ? "x,probability,count,frequency\n" : "x,probability\n";
  for (std::size_t i = 0; i < probs.size(); ++i) {
    out += std::to_string(i) + "," + fmt17(probs[i]);
    if (samples) {
      out += "," + std::to_string(hits[i]) + "," +
             fmt17(static_cast<double>(hits[i]) / static_cast<double>(samples));
    }
    out += "\n";
  }
  return out;
}

std::string trajectory_csv(const std::vector<std::array<double, 2>>& traj,
                           const std::vector<std::array<double, 2>>& model) {
  std::string out = "k,target_coord,rest_coord,model_target,model_rest\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out += std::to_string(k) + "," + fmt17(traj[k][0]) + "," + fmt17(traj[k][1]) + "," +
           fmt17(model[k][0]) + "," + fmt17(model[k][1]) + "\n";
  }
  return out;
}

// --- net routes shared by demos ----------------------------------------------

std::vector<double> leaf_marginal(const QBNet& net, const std::string& leaf,
                                  std::size_t cap) {
  qsim::LeafDistribution dist = qsim::leaf_distribution(net, cap);
  inference::JointTable m = inference::marginal(qsim::as_joint_table(dist), {leaf});
  return m.probs;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::logic, "distribution sizes disagree");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

// --- embed ---------------------------------------------------------------------

void cmd_embed(const GlobalOpts& g, const std::string& net_in, const std::string& net_out,
               std::string map_out, bool lean) {
  Net net = parse_net_file(net_in);
  if (net.flavor != Flavor::cb)
    throw Error(ErrorKind::validation, "embed expects a classical net");

  embedding::EmbedResult res = embedding::embed_cbnet(net, lean, g.cap_entries());
  write_net_file(res.qbnet, net_out);

  if (map_out.empty()) {
    map_out = net_out;
    const std::string suffix = ".json";
    if (map_out.size() > suffix.size() &&
        map_out.compare(map_out.size() - suffix.size(), suffix.size(), suffix) == 0)
      map_out.resize(map_out.size() - suffix.size());
    map_out += ".map.json";
  }
  write_text(map_out, embedding::serialize_leaf_map(res.leafmap));

  auto children = res.qbnet.children_index();
  std::size_t leaves = 0;
  std::size_t bits = 0;
  for (std::size_t i = 0; i < res.qbnet.nodes.size(); ++i) {
    if (!children[i].empty()) continue;
    ++leaves;
    std::size_t arity = res.qbnet.nodes[i].states.size();
    if (arity > 1) bits += std::bit_width(arity - 1);
  }
  std::cout << "embedded " << net_in << ": " << net.nodes.size() << " nodes -> "
            << res.qbnet.nodes.size() << " nodes\n";
  std::cout << "leaves: " << res.leafmap.pairs.size() << " retained + "
            << res.leafmap.summed_leaves.size() << " summed, " << bits
            << " packed leaf bits\n";
  std::cout << "wrote " << net_out << "\n";
  std::cout << "wrote " << map_out << "\n";
  if (leaves != res.leafmap.pairs.size() + res.leafmap.summed_leaves.size())
    throw Error(ErrorKind::logic, "leaf map does not cover the embedded leaves");
}

// --- infer -----------------------------------------------------------------------

void cmd_infer(const GlobalOpts& g, const std::string& net_path, const std::string& query,
               const std::string& evidence, std::string engine, bool compare, bool lean) {
  if (compare) engine = "both";
  if (engine != "classical" && engine != "quantum" && engine != "both")
    throw Error(ErrorKind::validation,
                "engine must be classical, quantum, or both; got \"" + engine + "\"");

  Net net = parse_net_file(net_path);
  std::vector<std::string> q = parse_query(query);
  inference::Evidence ev = parse_evidence(net, evidence);

  std::optional<inference::JointTable> classical;
  std::optional<inference::JointTable> quantum;

  if (net.flavor == Flavor::qb) {
    // An already-quantum net has only the leaf-distribution route.
    if (engine != "quantum")
      throw Error(ErrorKind::validation,
                  "the classical engine needs a classical net; \"" + net_path +
                      "\" is quantum (use --engine quantum)");
    inference::JointTable joint =
        qsim::as_joint_table(qsim::leaf_distribution(net, g.cap_entries()));
    quantum = inference::conditional(joint, q, ev);
  } else {
    if (engine == "classical" || engine == "both") {
      inference::JointTable joint = inference::exact_joint(net, g.cap_entries());
      classical = inference::conditional(joint, q, ev);
    }
    if (engine == "quantum" || engine == "both") {
      embedding::EmbedResult res = embedding::embed_cbnet(net, lean, g.cap_entries());
      inference::JointTable joint =
          qsim::original_distribution(net, res.qbnet, res.leafmap, g.cap_entries());
      quantum = inference::conditional(joint, q, ev);
    }
  }

  const inference::JointTable& table = classical ? *classical : *quantum;
  double deviation = 0.0;
  if (classical && quantum) deviation = max_abs_diff(classical->probs, quantum->probs);

  std::cout << "engine: " << engine << "\n";
  if (q.empty()) {
    std::cout << "1.0\n";
  } else {
    std::cout << "P(" << join_ids(q);
    if (!ev.empty()) std::cout << " | " << evidence_text(net, ev);
    std::cout << ")\n";
    print_table(table);
  }
  if (classical && quantum)
    std::cout << "max deviation between engines: " << fmt17(deviation) << "\n";

  if (!g.json_path.empty()) {
    std::string json = "{\"command\": \"infer\", \"net\": " + jesc(net_path) +
                       ", \"engine\": " + jesc(engine) + ", \"query\": [";
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (i) json += ", ";
      json += jesc(q[i]);
    }
    json += "], \"evidence\": " + evidence_json(ev) +
            ", \"table\": " + table_json(table);
    if (classical && quantum)
      json += ", \"table_quantum\": " + table_json(*quantum) +
              ", \"deviation\": " + fmt17(deviation);
    json += "}\n";
    write_text(g.json_path, json);
  }
  if (!g.csv_path.empty()) write_text(g.csv_path, inference::to_csv(table));
}

// --- sample ----------------------------------------------------------------------

void cmd_sample(const GlobalOpts& g, const std::string& net_path, std::size_t samples,
                const std::string& query, const std::string& evidence) {
  Net net = parse_net_file(net_path);
  std::vector<std::string> q = parse_query(query);
  inference::Evidence ev = parse_evidence(net, evidence);

  inference::JointTable table;
  if (net.flavor == Flavor::cb) {
    std::vector<Story> stories = inference::ancestral_sample(net, samples, g.seed);
    table = inference::estimate_conditional(net, stories, q, ev);
  } else {
    qsim::LeafSamples draws = qsim::sample_leaves(net, samples, g.seed, g.cap_entries());
    table = qsim::estimate_conditional(draws, q, ev);
  }
  warn_bins(samples, table.total());

  std::cout << "samples: " << samples << " (seed " << g.seed << ")\n";
  if (q.empty()) {
    std::cout << "1.0\n";
  } else {
    std::cout << "estimated P(" << join_ids(q);
    if (!ev.empty()) std::cout << " | " << evidence_text(net, ev);
    std::cout << ")\n";
    print_table(table);
  }

  if (!g.json_path.empty()) {
    std::string json = "{\"command\": \"sample\", \"net\": " + jesc(net_path) +
                       ", \"samples\": " + std::to_string(samples) +
                       ", \"seed\": " + std::to_string(g.seed) + ", \"query\": [";
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (i) json += ", ";
      json += jesc(q[i]);
    }
    json += "], \"evidence\": " + evidence_json(ev) +
            ", \"table\": " + table_json(table) + "}\n";
    write_text(g.json_path, json);
  }
  if (!g.csv_path.empty()) write_text(g.csv_path, inference::to_csv(table));
}

// --- verify ----------------------------------------------------------------------

void cmd_verify(const GlobalOpts& g, const std::string& net_path,
                const std::string& embedded_path, const std::string& map_path, bool lean) {
  if (embedded_path.empty() != map_path.empty())
    throw Error(ErrorKind::validation, "give both --embedded and --map, or neither");

  Net net = parse_net_file(net_path);
  if (net.flavor != Flavor::cb)
    throw Error(ErrorKind::validation, "verify expects a classical net");

  qsim::VerifyReport report;
  if (embedded_path.empty()) {
    embedding::EmbedResult res = embedding::embed_cbnet(net, lean, g.cap_entries());
    report = qsim::verify_net_embedding(net, res.qbnet, res.leafmap, g.cap_entries());
  } else {
    Net qb = parse_net_file(embedded_path);
    embedding::LeafMap map = embedding::parse_leaf_map(read_text(map_path));
    report = qsim::verify_net_embedding(net, qb, map, g.cap_entries());
  }

  std::cout << "verify: " << (report.ok ? "OK" : "FAILED") << "\n";
  std::cout << "max deviation: " << fmt17(report.max_error) << " over "
            << report.entries << " joint states\n";

  if (!g.json_path.empty()) {
    std::string json = "{\"command\": \"verify\", \"net\": " + jesc(net_path) +
                       ", \"ok\": " + (report.ok ? "true" : "false") +
                       ", \"max_error\": " + fmt17(report.max_error) +
                       ", \"entries\": " + std::to_string(report.entries) + "}\n";
    write_text(g.json_path, json);
  }
  if (!report.ok)
    throw Error(ErrorKind::validation,
                "embedding does not reproduce the classical joint (max deviation " +
                    fmt17(report.max_error) + ")");
}

// --- demos -----------------------------------------------------------------------

namespace {

alg::BoolFn parse_fn(const std::string& oracle, std::size_t nb, std::uint64_t seed) {
  if (oracle.empty() || oracle == "balanced") return alg::random_balanced_fn(nb, seed);
  if (oracle == "constant0") return alg::constant_fn(nb, 0);
  if (oracle == "constant1") return alg::constant_fn(nb, 1);
  if (oracle.rfind("parity:", 0) == 0)
    return alg::parity_fn(nb, parse_size(oracle.substr(7), "parity mask"));
  if (oracle.rfind("table:", 0) == 0) {
    alg::BoolFn f;
    f.nb = nb;
    for (const std::string& v : split_list(oracle.substr(6)))
      f.table.push_back(parse_size(v, "table value"));
    if (f.table.size() != f.domain())
      throw Error(ErrorKind::validation,
                  "table has " + std::to_string(f.table.size()) + " entries for nb=" +
                      std::to_string(nb));
    return f;
  }
  throw Error(ErrorKind::validation,
              "unknown oracle \"" + oracle +
                  "\" (use constant0, constant1, parity:<mask>, balanced, or table:<v,...>)");
}

void demo_dj(const GlobalOpts& g, const DemoOpts& d) {
  alg::BoolFn f = parse_fn(d.fn, d.nb, g.seed);
  std::string fn_name = d.fn.empty() ? "balanced" : d.fn;
  std::vector<double> dist = alg::dj_distribution(f);
  alg::DjVerdict verdict = alg::dj_classify(f);

  std::cout << "demo: deutsch-jozsa\n";
  std::cout << "nb: " << f.nb << "\n";
  std::cout << "f: " << fn_name << "\n";
  std::cout << "classification: "
            << (verdict == alg::DjVerdict::constant ? "constant" : "balanced") << "\n";
  std::cout << "P(X'=0): " << fmt17(dist[0]) << "\n";

  double net_dev = -1.0;
  if (f.nb <= 6) {
    net_dev = max_abs_diff(leaf_marginal(alg::dj_qbnet(f), "Xp", g.cap_entries()), dist);
    std::cout << "net route max deviation: " << fmt17(net_dev) << "\n";
  }
  std::cout << "distribution (nonzero):\n";
  for (std::size_t i = 0; i < dist.size(); ++i)
    if (dist[i] > 0) std::cout << "  X'=" << i << "  " << fmt17(dist[i]) << "\n";

  std::vector<std::pair<std::size_t, std::size_t>> counts;
  if (d.samples) {
    warn_bins(d.samples, dist.size());
    counts = sample_counts(dist, d.samples, g.seed);
    print_sampling(counts, d.samples, g.seed);
  }

  if (!g.json_path.empty()) {
    std::string json = "{\"command\": \"demo\", \"name\": \"dj\", \"nb\": " +
                       std::to_string(f.nb) + ", \"f\": " + jesc(fn_name) +
                       ", \"seed\": " + std::to_string(g.seed) +
                       ", \"classification\": " +
                       jesc(verdict == alg::DjVerdict::constant ? "constant" : "balanced") +
                       ", \"p_zero\": " + fmt17(dist[0]) +
                       ", \"distribution\": " + doubles_json(dist);
    if (net_dev >= 0) json += ", \"net_deviation\": " + fmt17(net_dev);
    if (d.samples)
      json += ", \"samples\": " + std::to_string(d.samples) +
              ", \"counts\": " + counts_json(counts);
    json += "}\n";
    write_text(g.json_path, json);
  }
  if (!g.csv_path.empty())
    write_text(g.csv_path, distribution_csv(dist, counts, d.samples));
}

void demo_simon(const GlobalOpts& g, const DemoOpts& d) {
  std::size_t period = d.period.value_or(1);
  alg::BoolFn f = alg::simon_planted_fn(d.nb, period, g.seed);
  std::vector<double> dist = alg::simon_distribution(f);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < dist.size(); ++i)
    if (dist[i] > 0) support.push_back(i);
  std::size_t recovered = alg::simon_recover_period(d.nb, support);

  std::cout << "demo: simon\n";
  std::cout << "nb: " << d.nb << "\n";
  std::cout << "planted period: " << period << "\n";
  std::cout << "recovered period: " << recovered << "\n";
  std::cout << "support size: " << support.size() << "\n";

  double net_dev = -1.0;
  if (d.nb <= 6) {
    net_dev = max_abs_diff(leaf_marginal(alg::simon_qbnet(f), "Xp", g.cap_entries()), dist);
    std::cout << "net route max deviation: " << fmt17(net_dev) << "\n";
  }
  std::cout << "distribution (nonzero):\n";
  for (std::size_t i : support) std::cout << "  X'=" << i << "  " << fmt17(dist[i]) << "\n";

  std::vector<std::pair<std::size_t, std::size_t>> counts;
  if (d.samples) {
    warn_bins(d.samples, dist.size());
    counts = sample_counts(dist, d.samples, g.seed);
    print_sampling(counts, d.samples, g.seed);
  }

  if (!g.json_path.empty()) {
    std::string json = "{\"command\": \"demo\", \"name\": \"simon\", \"nb\": " +
                       std::to_string(d.nb) + ", \"seed\": " + std::to_string(g.seed) +
                       ", \"planted_period\": " + std::to_string(period) +
                       ", \"recovered_period\": " + std::to_string(recovered) +
                       ", \"distribution\": " + doubles_json(dist);
    if (net_dev >= 0) json += ", \"net_deviation\": " + fmt17(net_dev);
    if (d.samples)
      json += ", \"samples\": " + std::to_string(d.samples) +
              ", \"counts\": " + counts_json(counts);
    json += "}\n";
    write_text(g.json_path, json);
  }
  if (!g.csv_path.empty())
    write_text(g.csv_path, distribution_csv(dist, counts, d.samples));
}

void demo_bv(const GlobalOpts& g, const DemoOpts& d) {
  std::size_t n = std::size_t{1} << d.nb;
  std::size_t b = d.b.value_or(g.seed % n);
  alg::BvResult res = alg::bv_run(d.nb, b);

  std::cout << "demo: bernstein-vazirani\n";
  std::cout << "nb: " << d.nb << "\n";
  std::cout << "hidden b: " << b << "\n";
  std::cout << "recovered b: " << res.recovered << "\n";
  std::cout << "match: " << (res.recovered == b ? "yes" : "no") << "\n";

  bool net_point_mass = false;
  if (d.nb <= 16) {
    std::vector<double> probs = leaf_marginal(alg::bv_qbnet(d.nb, b), "Xp", g.cap_entries());
    net_point_mass = probs[b] == 1.0;
    std::cout << "net route point mass at b: " << (net_point_mass ? "yes" : "no") << "\n";
  }

  if (!g.json_path.empty()) {
    std::string json = "{\"command\": \"demo\", \"name\": \"bv\", \"nb\": " +
                       std::to_string(d.nb) + ", \"b\": " + std::to_string(b) +
                       ", \"recovered\": " + std::to_string(res.recovered);
    if (d.nb <= 16)
      json += std::string(", \"net_point_mass\": ") + (net_point_mass ? "true" : "false");
    json += "}\n";
    write_text(g.json_path, json);
  }
  if (!g.csv_path.empty()) {
    std::vector<double> probs = res.plain.probabilities();
    write_text(g.csv_path, distribution_csv(probs, {}, 0));
  }
}

void demo_grover(const GlobalOpts& g, const DemoOpts& d) {
  std::size_t n = std::size_t{1} << d.nb;
  std::size_t target = d.target.value_or(n - 1);
  alg::GroverResult res = alg::grover_run(d.nb, target, d.r);
  double model_success = res.model.back()[0] * res.model.back()[0];
  double traj_dev = 0.0;
  for (std::size_t k = 0; k < res.trajectory.size(); ++k) {
    traj_dev = std::max(traj_dev, std::abs(res.trajectory[k][0] - res.model[k][0]));
    traj_dev = std::max(traj_dev, std::abs(res.trajectory[k][1] - res.model[k][1]));
  }

  std::cout << "demo: grover\n";
  std::cout << "nb: " << d.nb << " (N = " << n << ")\n";
  std::cout << "target: " << target << "\n";
  std::cout << "theta: " << fmt17(res.theta) << "\n";
  std::cout << "r: " << res.r << "\n";
  std::cout << "success probability: " << fmt17(res.success) << "\n";
  std::cout << "rotation-model prediction: " << fmt17(model_success) << "\n";
  std::cout << "2D model deviation: " << fmt17(traj_dev) << "\n";

  double net_dev = -1.0;
  if (d.nb <= 4) {
    QBNet net = alg::grover_qbnet(d.nb, target, d.r);
    std::string leaf = res.r == 0 ? "Xp" : "X" + std::to_string(res.r);
    net_dev = max_abs_diff(leaf_marginal(net, leaf, g.cap_entries()),
                           res.final_state.probabilities());
    std::cout << "net route max deviation: " << fmt17(net_dev) << "\n";
  }

  std::vector<std::pair<std::size_t, std::size_t>> counts;
  if (d.samples) {
    std::vector<double> probs = res.final_state.probabilities();
    warn_bins(d.samples, probs.size());
    counts = sample_counts(probs, d.samples, g.seed);
    print_sampling(counts, d.samples, g.seed);
  }

  if (!g.json_path.empty()) {
    std::string json = "{\"command\": \"demo\", \"name\": \"grover\", \"nb\": " +
                       std::to_string(d.nb) + ", \"target\": " + std::to_string(target) +
                       ", \"theta\": " + fmt17(res.theta) +
                       ", \"r\": " + std::to_string(res.r) +
                       ", \"success\": " + fmt17(res.success) +
                       ", \"model_success\": " + fmt17(model_success) +
                       ", \"trajectory\": " + trajectory_json(res.trajectory) +
                       ", \"model\": " + trajectory_json(res.model);
    if (net_dev >= 0) json += ", \"net_deviation\": " + fmt17(net_dev);
    if (d.samples)
      json += ", \"samples\": " + std::to_string(d.samples) +
              ", \"counts\": " + counts_json(counts);
    json += "}\n";
    write_text(g.json_path, json);
  }
  if (!g.csv_path.empty())
    write_text(g.csv_path, trajectory_csv(res.trajectory, res.model));
}

void demo_younes(const GlobalOpts& g, const DemoOpts& d) {
  std::size_t n = std::size_t{1} << d.nb;
  std::size_t target = d.target.value_or(n - 1);
  alg::YounesResult res = alg::younes_run(d.nb, target, d.r);
  double traj_dev = 0.0;
  for (std::size_t k = 0; k < res.trajectory.size(); ++k) {
    traj_dev = std::max(traj_dev, std::abs(res.trajectory[k][0] - res.model[k][0]));
    traj_dev = std::max(traj_dev, std::abs(res.trajectory[k][1] - res.model[k][1]));
  }

  std::cout << "demo: younes\n";
  std::cout << "nb: " << d.nb << " (N = " << n << ", doubled space " << 2 * n << ")\n";
  std::cout << "target: " << target << "\n";
  std::cout << "theta: " << fmt17(res.theta) << "\n";
  std::cout << "r: " << res.r << "\n";
  std::cout << "success probability (rotation picture): " << fmt17(res.success) << "\n";
  std::cout << "P(control register = target): " << fmt17(res.kappa_success) << "\n";
  std::cout << "2D model deviation: " << fmt17(traj_dev) << "\n";

  std::vector<std::pair<std::size_t, std::size_t>> counts;
  if (d.samples) {
    std::vector<double> probs = res.final_state.probabilities();
    warn_bins(d.samples, probs.size());
    counts = sample_counts(probs, d.samples, g.seed);
    print_sampling(counts, d.samples, g.seed);
  }

  if (!g.json_path.empty()) {
    std::string json = "{\"command\": \"demo\", \"name\": \"younes\", \"nb\": " +
                       std::to_string(d.nb) + ", \"target\": " + std::to_string(target) +
                       ", \"theta\": " + fmt17(res.theta) +
                       ", \"r\": " + std::to_string(res.r) +
                       ", \"success\": " + fmt17(res.success) +
                       ", \"kappa_success\": " + fmt17(res.kappa_success) +
                       ", \"trajectory\": " + trajectory_json(res.trajectory) +
                       ", \"model\": " + trajectory_json(res.model);
    if (d.samples)
      json += ", \"samples\": " + std::to_string(d.samples) +
              ", \"counts\": " + counts_json(counts);
    json += "}\n";
    write_text(g.json_path, json);
  }
  if (!g.csv_path.empty())
    write_text(g.csv_path, trajectory_csv(res.trajectory, res.model));
}

void demo_microscope(const GlobalOpts& g, const DemoOpts& d) {
  std::vector<double> p;
  std::string p_desc;
  if (!d.p_list.empty()) {
    for (const std::string& v : split_list(d.p_list)) {
      try {
        p.push_back(std::stod(v));
      } catch (const std::exception&) {
        throw Error(ErrorKind::validation, "cannot parse p entry \"" + v + "\"");
      }
    }
    p_desc = "explicit (" + std::to_string(p.size()) + " entries)";
  } else {
    std::size_t n = std::size_t{1} << d.nb;
    std::size_t target = d.target.value_or(n - 1);
    if (target >= n)
      throw Error(ErrorKind::validation, "target " + std::to_string(target) +
                                             " is outside 0.." + std::to_string(n - 1));
    p.assign(n, 0.0);
    p[target] = 1.0;
    p_desc = "AND-like, target " + std::to_string(target);
  }

  alg::MicroscopeSetup setup = alg::microscope_setup(p, d.alpha, d.r);
  alg::MicroscopeResult res = alg::microscope_run(setup);
  double traj_dev = 0.0;
  for (std::size_t k = 0; k < res.trajectory.size(); ++k) {
    traj_dev = std::max(traj_dev, std::abs(res.trajectory[k][0] - res.model[k][0]));
    traj_dev = std::max(traj_dev, std::abs(res.trajectory[k][1] - res.model[k][1]));
  }

  std::cout << "demo: microscope\n";
  std::cout << "nb: " << setup.nb << " (N = " << (std::size_t{1} << setup.nb) << ")\n";
  std::cout << "p: " << p_desc << "\n";
  std::cout << "theta: " << fmt17(setup.theta) << "\n";
  std::cout << "alpha: " << fmt17(setup.alpha) << "\n";
  std::cout << "r: " << setup.r << "\n";
  std::cout << "overlap with e0: " << fmt17(res.overlap_e0) << "\n";
  std::cout << "total rotation: " << fmt17(res.total_rotation) << " (r * alpha = "
            << fmt17(static_cast<double>(setup.r) * setup.alpha) << ")\n";
  std::cout << "2D model deviation: " << fmt17(traj_dev) << "\n";

  std::vector<std::pair<std::size_t, std::size_t>> counts;
  if (d.samples) {
    std::vector<double> probs = res.final_state.probabilities();
    warn_bins(d.samples, probs.size());
    counts = sample_counts(probs, d.samples, g.seed);
    print_sampling(counts, d.samples, g.seed);
  }

  if (!g.json_path.empty()) {
    std::string json = "{\"command\": \"demo\", \"name\": \"microscope\", \"nb\": " +
                       std::to_string(setup.nb) + ", \"p\": " + doubles_json(setup.p) +
                       ", \"theta\": " + fmt17(setup.theta) +
                       ", \"alpha\": " + fmt17(setup.alpha) +
                       ", \"r\": " + std::to_string(setup.r) +
                       ", \"overlap_e0\": " + fmt17(res.overlap_e0) +
                       ", \"total_rotation\": " + fmt17(res.total_rotation) +
                       ", \"trajectory\": " + trajectory_json(res.trajectory) +
                       ", \"model\": " + trajectory_json(res.model);
    if (d.samples)
      json += ", \"samples\": " + std::to_string(d.samples) +
              ", \"counts\": " + counts_json(counts);
    json += "}\n";
    write_text(g.json_path, json);
  }
  if (!g.csv_path.empty())
    write_text(g.csv_path, trajectory_csv(res.trajectory, res.model));
}

}  // namespace

void cmd_demo(const GlobalOpts& g, const DemoOpts& d) {
  if (d.name == "dj") return demo_dj(g, d);
  if (d.name == "simon") return demo_simon(g, d);
  if (d.name == "bv") return demo_bv(g, d);
  if (d.name == "grover") return demo_grover(g, d);
  if (d.name == "younes") return demo_younes(g, d);
  if (d.name == "microscope") return demo_microscope(g, d);
  throw Error(ErrorKind::validation, "unknown demo \"" + d.name + "\"");
}

}  // namespace qbn::cli
