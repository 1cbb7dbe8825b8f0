#pragma once
// Parameter sweeps over one axis with per-point closed-form solves, tidy long
// CSV output, and monotonicity checks on the stable profile.

#include <string>
#include <vector>

#include "wag/io.hpp"
#include "wag/model.hpp"

namespace wag {

enum class SweepAxis { lambda, k_polarization, g_scalar, b_scalar };

struct SweepSpec {
  SweepAxis axis = SweepAxis::lambda;
  std::vector<double> values;  // sorted ascending before evaluation
  ModelParams base;
  std::vector<std::string> outputs;  // empty = all quantities
};

struct SweepRow {
  double axis_value = 0.0;
  int m = 0;
  std::string quantity;
  double value = 0.0;
};

struct SkippedPoint {
  double axis_value = 0.0;
  std::string reason;
};

struct SweepResult {
  std::vector<SweepRow> rows;        // sorted by (axis value, m, quantity order)
  std::vector<SkippedPoint> skipped; // points whose scaled parameters were invalid
  std::vector<std::string> violations;  // monotonicity breaches, empty when clean
};

const char* axis_name(SweepAxis axis);
SweepAxis axis_from_name(const std::string& name);  // ValidationError on unknown

SweepSpec sweep_spec_from_json(const json& j);

// Evaluates every axis value (concurrently; results keyed by index), then
// checks that x_stable and whataboutism_frequency move weakly in the
// direction the closed forms dictate for the axis.
SweepResult run_sweep(const SweepSpec& spec, int threads);

std::string sweep_csv(const SweepResult& result, SweepAxis axis);
json sweep_report_json(const SweepResult& result);

}  // namespace wag
