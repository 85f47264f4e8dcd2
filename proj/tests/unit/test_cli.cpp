#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

// End-to-end checks of the command-line binary: exit codes, output shapes,
// and byte-identical reruns. Each case shells out to the built executable.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(QBN_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
    res.output.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string data_path(const std::string& name) {
  return std::string(QBN_DATA_DIR) + "/" + name;
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/qbn_cli_test_") + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("embed writes the net and the leaf map") {
  std::string out = temp_path("lung.qb.json");
  RunResult r = run("embed " + data_path("lung.json") + " " + out);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "8 nodes -> 36 nodes"));
  CHECK(contains(r.output, "8 retained + 2 summed"));
  CHECK(contains(read_file(out), "\"flavor\": \"qb\""));
  CHECK(contains(read_file(temp_path("lung.qb.map.json")), "\"pairs\""));

  // Invalid input: a CPT column that does not sum to one.
  std::string bad = temp_path("bad.json");
  std::ofstream(bad) << "{\"flavor\":\"cb\",\"nodes\":[{\"id\":\"a\",\"states\":"
                        "[\"0\",\"1\"],\"parents\":[],\"cpt\":[[0.5],[0.4]]}]}";
  CHECK(run("embed " + bad + " " + temp_path("bad.qb.json")).exit_code == 2);

  // Cap exceeded.
  CHECK(run("--cap 2 embed " + data_path("lung.json") + " " +
            temp_path("capped.json")).exit_code == 3);
}

TEST_CASE("infer agrees across engines and reports deviations") {
  RunResult both = run("infer " + data_path("lung.json") + " --query d --engine both");
  CHECK(both.exit_code == 0);
  CHECK(contains(both.output, "P(d)"));
  CHECK(contains(both.output, "max deviation between engines:"));

  RunResult cond =
      run("infer " + data_path("lung.json") + " --query d --evidence a=1 --compare");
  CHECK(cond.exit_code == 0);
  CHECK(contains(cond.output, "P(d | a=1)"));

  // Empty query prints the trivial normalization.
  RunResult trivial = run("infer " + data_path("lung.json") + " --evidence a=1");
  CHECK(trivial.exit_code == 0);
  CHECK(contains(trivial.output, "1.0"));

  // Labels work as evidence values too (lung states are named "0"/"1").
  RunResult label = run("infer " + data_path("lung.json") + " --query d --evidence a=0");
  CHECK(label.exit_code == 0);

  // Unknown node: validation.
  CHECK(run("infer " + data_path("lung.json") + " --query nosuch").exit_code == 2);
  // Unknown engine: validation.
  CHECK(run("infer " + data_path("lung.json") + " --query d --engine hybrid").exit_code ==
        2);
  // Missing file: io.
  CHECK(run("infer /tmp/qbn_cli_no_such_file.json --query d").exit_code == 1);
}

TEST_CASE("infer detects impossible evidence") {
  std::string det = temp_path("det.json");
  std::ofstream(det) << "{\"flavor\":\"cb\",\"nodes\":[{\"id\":\"a\",\"states\":"
                        "[\"0\",\"1\"],\"parents\":[],\"cpt\":[[1.0],[0.0]]}]}";
  RunResult r = run("infer " + det + " --query a --evidence a=1");
  CHECK(r.exit_code == 4);
  CHECK(contains(r.output, "zero probability"));
}

TEST_CASE("sample estimates converge and rerun byte-identically") {
  std::string csv1 = temp_path("s1.csv");
  std::string csv2 = temp_path("s2.csv");
  RunResult r1 = run("sample " + data_path("lung.json") +
                     " --samples 20000 --query d --csv " + csv1);
  CHECK(r1.exit_code == 0);
  CHECK(contains(r1.output, "samples: 20000 (seed 1234567891)"));
  RunResult r2 = run("sample " + data_path("lung.json") +
                     " --samples 20000 --query d --csv " + csv2);
  CHECK(r2.exit_code == 0);
  CHECK(r1.output == r2.output);
  CHECK(read_file(csv1) == read_file(csv2));

  // A different seed gives different draws.
  RunResult r3 =
      run("sample " + data_path("lung.json") + " --samples 20000 --query d --seed 7");
  CHECK(r3.exit_code == 0);
  CHECK(r3.output != r1.output);

  // Too few samples for the query's bins: a heuristic warning, still exit 0.
  RunResult warn =
      run("sample " + data_path("lung.json") + " --samples 2 --query d,s,b");
  CHECK(warn.exit_code == 0);
  CHECK(contains(warn.output, "one-data-point-per-bin"));

  // Evidence that no draw matches: impossible evidence.
  std::string det = temp_path("det2.json");
  std::ofstream(det) << "{\"flavor\":\"cb\",\"nodes\":[{\"id\":\"a\",\"states\":"
                        "[\"0\",\"1\"],\"parents\":[],\"cpt\":[[1.0],[0.0]]}]}";
  CHECK(run("sample " + det + " --samples 50 --query a --evidence a=1").exit_code == 4);
}

TEST_CASE("sample works on an embedded quantum net") {
  std::string qb = temp_path("lung_s.qb.json");
  CHECK(run("embed " + data_path("lung.json") + " " + qb).exit_code == 0);
  RunResult r = run("sample " + qb + " --samples 5000 --query d_m0");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "d_m0"));
}

TEST_CASE("verify reports the embedding error") {
  RunResult r = run("verify " + data_path("lung.json") + " --json " + temp_path("v.json"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "verify: OK"));
  CHECK(contains(r.output, "over 256 joint states"));
  CHECK(contains(read_file(temp_path("v.json")), "\"ok\": true"));

  // The artifacts written by embed verify too.
  std::string qb = temp_path("lung_v.qb.json");
  std::string map = temp_path("lung_v.map.json");
  CHECK(run("embed " + data_path("lung.json") + " " + qb + " --map " + map).exit_code == 0);
  RunResult art = run("verify " + data_path("lung.json") + " --embedded " + qb +
                      " --map " + map);
  CHECK(art.exit_code == 0);
  CHECK(contains(art.output, "verify: OK"));

  // Mismatched artifacts: scattering's map against lung's net.
  CHECK(run("verify " + data_path("lung.json") + " --embedded " + qb).exit_code == 2);
}

TEST_CASE("demo dj classifies and exits 5 on a promise violation") {
  RunResult constant = run("demo dj --nb 3 --f constant1");
  CHECK(constant.exit_code == 0);
  CHECK(contains(constant.output, "classification: constant"));
  CHECK(contains(constant.output, "P(X'=0): 1"));

  RunResult balanced = run("demo dj --nb 3 --f parity:5");
  CHECK(balanced.exit_code == 0);
  CHECK(contains(balanced.output, "classification: balanced"));
  CHECK(contains(balanced.output, "P(X'=0): 0"));

  RunResult broken = run("demo dj --nb 2 --f table:1,1,1,0");
  CHECK(broken.exit_code == 5);
  CHECK(contains(broken.output, "promise violated"));
}

TEST_CASE("demo simon recovers the planted period") {
  RunResult r = run("demo simon --nb 3 --period 5");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "recovered period: 5"));
  CHECK(contains(r.output, "support size: 4"));
}

TEST_CASE("demo bv recovers the hidden vector") {
  RunResult r = run("demo bv --nb 3 --b 6");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "recovered b: 6"));
  CHECK(contains(r.output, "match: yes"));
  CHECK(contains(r.output, "net route point mass at b: yes"));
}

TEST_CASE("demo grover reports the documented large-case numbers") {
  RunResult r = run("demo grover --nb 10");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "r: 25"));
  CHECK(contains(r.output, "success probability: 0.999"));
}

TEST_CASE("demo younes and microscope share the documented angle") {
  RunResult y = run("demo younes --nb 4");
  CHECK(y.exit_code == 0);
  CHECK(contains(y.output, "r: 4"));
  CHECK(contains(y.output, "theta: 0.3554212016902"));

  RunResult m = run("demo microscope");
  CHECK(m.exit_code == 0);
  CHECK(contains(m.output, "r: 4"));
  CHECK(contains(m.output, "theta: 0.3554212016902"));
  CHECK(contains(m.output, "overlap with e0: 0.999"));

  RunResult all_zero = run("demo microscope --p 0,0,0,0");
  CHECK(all_zero.exit_code == 5);
  CHECK(contains(all_zero.output, "nothing to magnify"));
}

TEST_CASE("demo artifacts rerun byte-identically") {
  std::string j1 = temp_path("g1.json");
  std::string j2 = temp_path("g2.json");
  std::string c1 = temp_path("g1.csv");
  std::string c2 = temp_path("g2.csv");
  RunResult r1 =
      run("demo grover --nb 5 --samples 1000 --json " + j1 + " --csv " + c1);
  RunResult r2 =
      run("demo grover --nb 5 --samples 1000 --json " + j2 + " --csv " + c2);
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(r1.output == r2.output);
  CHECK(read_file(j1) == read_file(j2));
  CHECK(read_file(c1) == read_file(c2));
  CHECK(contains(read_file(j1), "\"counts\": "));
  CHECK(contains(read_file(c1), "k,target_coord,rest_coord,model_target,model_rest"));

  // Sampling fewer draws than bins triggers the heuristic warning.
  RunResult warn = run("demo grover --nb 5 --samples 10");
  CHECK(warn.exit_code == 0);
  CHECK(contains(warn.output, "one-data-point-per-bin"));
}

TEST_CASE("unknown subcommands and bad flags exit 2") {
  CHECK(run("nosuch").exit_code == 2);
  CHECK(run("demo nosuch").exit_code == 2);
  CHECK(run("demo grover --nb 99").exit_code == 2);
  CHECK(run("sample " + data_path("lung.json") + " --samples 0 --query d").exit_code == 2);
}
