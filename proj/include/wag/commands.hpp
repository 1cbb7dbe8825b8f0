#pragma once
// Command layer behind the CLI binary. Each command reads inputs, writes its
// report files under an output directory, and returns a process exit code:
// 0 success, 2 invalid input, 3 statistical check failed, 4 I/O failure.

#include <cstdint>
#include <optional>
#include <string>

#include "wag/model.hpp"

namespace wag {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitStatistical = 3;
inline constexpr int kExitIo = 4;

enum class OutputFormat { json, csv, both };
OutputFormat format_from_name(const std::string& name);

struct SolveOptions {
  std::string config;
  std::string out_dir = "out";
  OutputFormat format = OutputFormat::both;
};

struct EnumerateOptions {
  std::string config;
  std::string out_dir = "out";
  OutputFormat format = OutputFormat::both;
};

struct SimulateOptions {
  std::string config;
  std::string out_dir = "out";
  OutputFormat format = OutputFormat::both;
  std::optional<std::uint64_t> seed;  // mandatory; absence is a validation error
  std::uint64_t episodes = 1000000;   // floor 1e4
  std::string profile_path;           // empty = stable profile of the config
  std::optional<StateId> state;       // restrict to one state
  int threads = 0;                    // 0 = all available, 1 = serial reference
  std::string dump_episodes;          // optional per-episode CSV path
};

struct SweepOptions {
  std::string config;  // sweep spec file
  std::string out_dir = "out";
  OutputFormat format = OutputFormat::both;
  int threads = 0;
};

struct StabilityOptions {
  std::string config;
  std::string out_dir = "out";
  OutputFormat format = OutputFormat::both;
  double delta = 1e-3;
  int grid_points = 64;
  std::string trace_dir;  // when set, per-level iteration traces land here
};

int cmd_solve(const SolveOptions& opt);
int cmd_enumerate(const EnumerateOptions& opt);
int cmd_simulate(const SimulateOptions& opt);
int cmd_sweep(const SweepOptions& opt);
int cmd_stability(const StabilityOptions& opt);

}  // namespace wag
