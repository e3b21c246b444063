#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "hill/criteria.hpp"
#include "hill/potential.hpp"

namespace hill {

enum ExitCode : int { exit_ok = 0, exit_config = 1, exit_numerical = 2, exit_verify = 3 };

struct RunConfig {
  std::filesystem::path potential;  // potential JSON; required except for verify
  int alpha = 0;
  int N = 64;
  std::optional<Window> window;  // command-specific default when absent
  int m = 2;
  std::optional<int> s;  // overrides the potential document
  std::optional<double> epsilon;
  std::filesystem::path out_dir = ".";
  bool gnuplot = false;
};

// optional "smoothness": {"s": 0, "jump": {"re": 1, "im": 0}} in the potential JSON
struct PotentialDocument {
  PotentialSpec spec;
  std::optional<int> s;
  std::optional<JumpMeta> jump;
};
PotentialDocument load_potential_document(const std::filesystem::path& path);

// "LO:HI"
Window parse_window(const std::string& text);

// independent of out_dir and of the potential's file name
std::string config_hash(const RunConfig& cfg, const PotentialSpec* spec,
                        const std::string& command);

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_criteria(const RunConfig& cfg, std::ostream& out, std::ostream& err);
// potential empty: acceptance suite only
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace hill
