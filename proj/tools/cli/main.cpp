#include <cstddef>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "qbn/netcore.hpp"

namespace {

int exit_code(qbn::ErrorKind kind) {
  switch (kind) {
    case qbn::ErrorKind::validation: return 2;
    case qbn::ErrorKind::cap: return 3;
    case qbn::ErrorKind::impossible_evidence: return 4;
    case qbn::ErrorKind::promise_violation: return 5;
    case qbn::ErrorKind::io:
    case qbn::ErrorKind::logic: return 1;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  qbn::cli::GlobalOpts g;
  g.seed = qbn::kDefaultSeed;

  CLI::App app{"classical and quantum Bayesian nets: embed, infer, sample, verify, demo"};
  app.require_subcommand(1);
  app.add_option("--seed", g.seed, "RNG seed for sampling and generated oracles")
      ->capture_default_str();
  app.add_option("--cap", g.cap_bits,
                 "cap dense tables and story walks at 2^<bits> entries")
      ->check(CLI::Range(1, 62))
      ->capture_default_str();

  // embed
  std::string net_in, net_out, map_out;
  bool embed_lean = false;
  CLI::App* embed = app.add_subcommand(
      "embed", "embed a classical net as a quantum net plus a leaf map");
  embed->fallthrough();
  embed->add_option("input", net_in, "classical net (JSON)")->required();
  embed->add_option("output", net_out, "embedded quantum net to write")->required();
  embed->add_option("--map", map_out,
                    "leaf map path (default: output with a .map.json suffix)");
  embed->add_flag("--lean", embed_lean, "skip marginalizers for single-child nodes");
  embed->callback([&] { qbn::cli::cmd_embed(g, net_in, net_out, map_out, embed_lean); });

  // infer
  std::string infer_net, infer_query, infer_evidence, infer_engine = "classical";
  bool infer_compare = false, infer_lean = false;
  CLI::App* infer = app.add_subcommand("infer", "exact conditional probabilities");
  infer->fallthrough();
  infer->add_option("net", infer_net, "net file (classical or quantum)")->required();
  infer->add_option("--query", infer_query, "comma-separated node ids");
  infer->add_option("--evidence", infer_evidence, "comma-separated node=state pairs");
  infer->add_option("--engine", infer_engine, "classical, quantum, or both")
      ->capture_default_str();
  infer->add_flag("--compare", infer_compare,
                  "run both engines and print their max deviation");
  infer->add_flag("--lean", infer_lean, "lean embedding for the quantum engine");
  infer->add_option("--json", g.json_path, "write the result as JSON");
  infer->add_option("--csv", g.csv_path, "write the table as CSV");
  infer->callback([&] {
    qbn::cli::cmd_infer(g, infer_net, infer_query, infer_evidence, infer_engine,
                        infer_compare, infer_lean);
  });

  // sample
  std::string sample_net, sample_query, sample_evidence;
  std::size_t sample_n = 0;
  CLI::App* sample = app.add_subcommand(
      "sample", "estimate conditional probabilities from seeded samples");
  sample->fallthrough();
  sample->add_option("net", sample_net, "net file (classical or quantum)")->required();
  sample->add_option("--samples", sample_n, "number of samples")
      ->required()
      ->check(CLI::PositiveNumber);
  sample->add_option("--query", sample_query, "comma-separated node ids");
  sample->add_option("--evidence", sample_evidence, "comma-separated node=state pairs");
  sample->add_option("--json", g.json_path, "write the result as JSON");
  sample->add_option("--csv", g.csv_path, "write the table as CSV");
  sample->callback([&] {
    qbn::cli::cmd_sample(g, sample_net, sample_n, sample_query, sample_evidence);
  });

  // verify
  std::string verify_net, verify_embedded, verify_map;
  bool verify_lean = false;
  CLI::App* verify = app.add_subcommand(
      "verify", "check that an embedding reproduces the classical joint");
  verify->fallthrough();
  verify->add_option("net", verify_net, "classical net file")->required();
  verify->add_option("--embedded", verify_embedded,
                     "embedded net to check (default: embed in memory)");
  verify->add_option("--map", verify_map, "leaf map for --embedded");
  verify->add_flag("--lean", verify_lean, "lean embedding when embedding in memory");
  verify->add_option("--json", g.json_path, "write the report as JSON");
  verify->callback([&] {
    qbn::cli::cmd_verify(g, verify_net, verify_embedded, verify_map, verify_lean);
  });

  // demo
  qbn::cli::DemoOpts d;
  CLI::App* demo = app.add_subcommand("demo", "oracle-algorithm demonstrations");
  demo->require_subcommand(1);
  demo->fallthrough();

  std::size_t opt_period = 0, opt_b = 0, opt_target = 0, opt_r = 0;
  double opt_alpha = 0.0;

  auto add_common = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--samples", d.samples, "draw this many measurements");
    sub->add_option("--json", g.json_path, "write the result as JSON");
    sub->add_option("--csv", g.csv_path, "write the distribution or trajectory as CSV");
  };

  CLI::App* dj = demo->add_subcommand("dj", "constant-vs-balanced classification");
  d.nb = 3;
  dj->add_option("--nb", d.nb, "input bits")->check(CLI::Range(1, 10));
  dj->add_option("--f", d.fn,
                 "oracle: constant0, constant1, parity:<mask>, balanced, table:<v,...>");
  add_common(dj);
  dj->callback([&] {
    d.name = "dj";
    qbn::cli::cmd_demo(g, d);
  });

  CLI::App* simon = demo->add_subcommand("simon", "period finding");
  simon->add_option("--nb", d.nb, "input bits")->check(CLI::Range(1, 10));
  CLI::Option* period_opt = simon->add_option("--period", opt_period, "planted period");
  add_common(simon);
  simon->callback([&] {
    d.name = "simon";
    if (period_opt->count()) d.period = opt_period;
    qbn::cli::cmd_demo(g, d);
  });

  CLI::App* bv = demo->add_subcommand("bv", "hidden dot-product vector recovery");
  bv->add_option("--nb", d.nb, "input bits")->check(CLI::Range(1, 20));
  CLI::Option* b_opt = bv->add_option("--b", opt_b, "hidden vector (default: seed mod 2^nb)");
  add_common(bv);
  bv->callback([&] {
    d.name = "bv";
    if (b_opt->count()) d.b = opt_b;
    qbn::cli::cmd_demo(g, d);
  });

  CLI::App* grover = demo->add_subcommand("grover", "amplitude amplification search");
  grover->add_option("--nb", d.nb, "search-space bits")->check(CLI::Range(1, 20));
  CLI::Option* g_target = grover->add_option("--target", opt_target, "marked state");
  CLI::Option* g_r = grover->add_option("--r", opt_r, "iteration count override");
  add_common(grover);
  grover->callback([&] {
    d.name = "grover";
    if (g_target->count()) d.target = opt_target;
    if (g_r->count()) d.r = opt_r;
    qbn::cli::cmd_demo(g, d);
  });

  CLI::App* younes = demo->add_subcommand("younes", "extra-qubit search variant");
  younes->add_option("--nb", d.nb, "search-space bits")->check(CLI::Range(1, 20));
  CLI::Option* y_target = younes->add_option("--target", opt_target, "marked state");
  CLI::Option* y_r = younes->add_option("--r", opt_r, "iteration count override");
  add_common(younes);
  younes->callback([&] {
    d.name = "younes";
    if (y_target->count()) d.target = opt_target;
    if (y_r->count()) d.r = opt_r;
    qbn::cli::cmd_demo(g, d);
  });

  CLI::App* mic = demo->add_subcommand("microscope", "small-probability magnification");
  std::size_t mic_nb = 5;  // the documented magnification example size
  mic->add_option("--nb", mic_nb, "voting-net input bits")->check(CLI::Range(1, 8));
  CLI::Option* m_target = mic->add_option("--target", opt_target, "AND-like target input");
  mic->add_option("--p", d.p_list, "explicit comma-separated P(y=0|x) vector");
  CLI::Option* m_alpha = mic->add_option("--alpha", opt_alpha, "rotation per iteration");
  CLI::Option* m_r = mic->add_option("--r", opt_r, "iteration count override");
  add_common(mic);
  mic->callback([&] {
    d.name = "microscope";
    d.nb = mic_nb;
    if (m_target->count()) d.target = opt_target;
    if (m_alpha->count()) d.alpha = opt_alpha;
    if (m_r->count()) d.r = opt_r;
    qbn::cli::cmd_demo(g, d);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const qbn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 0;
}
