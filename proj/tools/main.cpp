// hillspec: spectra, basis criteria and the acceptance suite for Hill operators.
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hill/cli.hpp"
#include "hill/errors.hpp"

namespace {

struct Flags {
  std::string config;
  int alpha = 0;
  int trunc = 64;
  std::string window;
  int order = 2;
  std::optional<int> smooth;
  std::optional<double> epsilon;
  std::string out = ".";
  bool gnuplot = false;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "potential JSON document");
  cmd->add_option("--alpha", f.alpha, "0 periodic, 1 antiperiodic")->check(CLI::IsMember({0, 1}));
  cmd->add_option("--trunc", f.trunc, "Galerkin truncation N (|k| <= N)");
  cmd->add_option("--window", f.window, "pair index window LO:HI, HI <= N/4");
  cmd->add_option("--order", f.order, "series order m (0..4)");
  cmd->add_option("--smooth", f.smooth, "smoothness class s");
  cmd->add_option("--epsilon", f.epsilon, "lower-bound constant; self-calibrated when absent");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_flag("--gnuplot-compatible", f.gnuplot, "numeric columns first, commented header");
}

hill::RunConfig to_config(const Flags& f) {
  hill::RunConfig c;
  c.potential = f.config;
  c.alpha = f.alpha;
  c.N = f.trunc;
  if (!f.window.empty()) c.window = hill::parse_window(f.window);
  c.m = f.order;
  c.s = f.smooth;
  c.epsilon = f.epsilon;
  c.out_dir = f.out;
  c.gnuplot = f.gnuplot;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hill operator spectra and Riesz-basis criteria"};
  app.require_subcommand(1);
  Flags flags;
  auto* spectrum = app.add_subcommand("spectrum", "paired spectrum, oracle pairs, agreement");
  auto* criteria = app.add_subcommand("criteria", "basis criteria reports and series table");
  auto* verify = app.add_subcommand("verify", "acceptance suite");
  for (auto* c : {spectrum, criteria, verify}) add_flags(c, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? hill::exit_ok : hill::exit_config;
  }

  hill::RunConfig cfg;
  try {
    cfg = to_config(flags);
  } catch (const hill::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return hill::exit_config;
  }
  if (spectrum->parsed()) return hill::cmd_spectrum(cfg, std::cout, std::cerr);
  if (criteria->parsed()) return hill::cmd_criteria(cfg, std::cout, std::cerr);
  return hill::cmd_verify(cfg, std::cout, std::cerr);
}
