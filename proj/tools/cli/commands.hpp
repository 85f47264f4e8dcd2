#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qbn::cli {

/// Flags shared by every subcommand. cap_bits bounds dense tables and story
/// walks at 2^cap_bits entries.
struct GlobalOpts {
  std::uint64_t seed = 0;  // main() seeds this with the library default
  std::size_t cap_bits = 24;
  std::string json_path;  // write machine-readable output here when nonempty
  std::string csv_path;   // write the main table as CSV here when nonempty

  std::size_t cap_entries() const { return std::size_t{1} << cap_bits; }
};

void cmd_embed(const GlobalOpts& g, const std::string& net_in, const std::string& net_out,
               std::string map_out, bool lean);

void cmd_infer(const GlobalOpts& g, const std::string& net_path, const std::string& query,
               const std::string& evidence, std::string engine, bool compare, bool lean);

void cmd_sample(const GlobalOpts& g, const std::string& net_path, std::size_t samples,
                const std::string& query, const std::string& evidence);

void cmd_verify(const GlobalOpts& g, const std::string& net_path,
                const std::string& embedded_path, const std::string& map_path, bool lean);

struct DemoOpts {
  std::string name;  // dj | simon | bv | grover | younes | microscope
  std::size_t nb = 3;
  std::string fn;                     // dj oracle: constant0|constant1|parity:<mask>|balanced|table:<v0,v1,...>
  std::optional<std::size_t> period;  // simon plant; defaults to 1
  std::optional<std::size_t> b;       // bv hidden vector; defaults to the seed mod 2^nb
  std::optional<std::size_t> target;  // grover/younes/microscope j_targ; defaults to 2^nb - 1
  std::optional<std::size_t> r;       // iteration override
  std::optional<double> alpha;        // microscope rotation per step
  std::string p_list;                 // microscope explicit p vector, comma separated
  std::size_t samples = 0;            // draw this many measurements from the result
};

void cmd_demo(const GlobalOpts& g, const DemoOpts& d);

}  // namespace qbn::cli
