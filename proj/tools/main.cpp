// wag: equilibrium solver and seeded Monte Carlo verifier for the two-camp
// offensive-speech game with whataboutism rebuttals.

#include <CLI11.hpp>

#include <cstdint>
#include <string>

#include "wag/commands.hpp"
#include "wag/model.hpp"

namespace {

// "camp,m" -> StateId
wag::StateId parse_state(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw wag::ValidationError("state: expected 'camp,m', got '" + text + "'");
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw wag::ValidationError("state: expected integers 'camp,m', got '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equilibrium solver and Monte Carlo verifier for the two-camp "
               "offensive-speech game"};
  app.require_subcommand(1);

  std::string config, out_dir = "out", format = "both", profile_path, state_text;
  std::string dump_episodes, trace_dir;
  std::uint64_t episodes = 1000000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0, grid_points = 64;
  double delta = 1e-3;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config, "input JSON file")->required();
    cmd->add_option("--out", out_dir, "output directory (default: out)");
    cmd->add_option("--format", format, "json, csv or both (default: both)");
  };

  CLI::App* solve = app.add_subcommand("solve", "closed-form solution report");
  add_common(solve);

  CLI::App* enumerate = app.add_subcommand("enumerate", "every equilibrium profile "
                                                        "plus stability verdicts");
  add_common(enumerate);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo verification of "
                                                      "the analytic quantities");
  add_common(simulate);
  simulate->add_option("--seed", seed, "master RNG seed (required)")
      ->each([&](const std::string&) { seed_given = true; });
  simulate->add_option("--episodes", episodes, "episodes per estimand (floor 1e4)");
  simulate->add_option("--profile", profile_path,
                       "play this profile file instead of the stable equilibrium");
  simulate->add_option("--state", state_text, "restrict to one state, 'camp,m'");
  simulate->add_option("--threads", threads, "worker count; 1 = serial reference, "
                                             "0 = all cores (default)");
  simulate->add_option("--dump-episodes", dump_episodes,
                       "also write one CSV row per episode to this path");

  CLI::App* sweep = app.add_subcommand("sweep", "one-axis parameter sweep "
                                                "(--config is the sweep spec)");
  add_common(sweep);
  sweep->add_option("--threads", threads, "worker count for sweep points");

  CLI::App* stability = app.add_subcommand("stability", "contraction test for every "
                                                        "equilibrium profile");
  add_common(stability);
  stability->add_option("--delta", delta, "perturbation window (default 1e-3)");
  stability->add_option("--points", grid_points, "grid points per window (default 64)");
  stability->add_option("--trace-dir", trace_dir,
                        "write per-level iteration traces to this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? wag::kExitOk : wag::kExitValidation;
  }

  try {
    const wag::OutputFormat fmt = wag::format_from_name(format);
    if (solve->parsed())
      return wag::cmd_solve({config, out_dir, fmt});
    if (enumerate->parsed())
      return wag::cmd_enumerate({config, out_dir, fmt});
    if (simulate->parsed()) {
      wag::SimulateOptions opt;
      opt.config = config;
      opt.out_dir = out_dir;
      opt.format = fmt;
      if (seed_given) opt.seed = seed;
      opt.episodes = episodes;
      opt.profile_path = profile_path;
      if (!state_text.empty()) opt.state = parse_state(state_text);
      opt.threads = threads;
      opt.dump_episodes = dump_episodes;
      return wag::cmd_simulate(opt);
    }
    if (sweep->parsed()) {
      wag::SweepOptions opt;
      opt.config = config;
      opt.out_dir = out_dir;
      opt.format = fmt;
      opt.threads = threads;
      return wag::cmd_sweep(opt);
    }
    if (stability->parsed()) {
      wag::StabilityOptions opt;
      opt.config = config;
      opt.out_dir = out_dir;
      opt.format = fmt;
      opt.delta = delta;
      opt.grid_points = grid_points;
      opt.trace_dir = trace_dir;
      return wag::cmd_stability(opt);
    }
  } catch (const wag::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return wag::kExitValidation;
  }
  return wag::kExitValidation;
}
