#include "wag/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "wag/analytic.hpp"

namespace wag {

const char* axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::lambda: return "lambda";
    case SweepAxis::k_polarization: return "k_polarization";
    case SweepAxis::g_scalar: return "g_scalar";
    case SweepAxis::b_scalar: return "b_scalar";
  }
  return "?";
}

SweepAxis axis_from_name(const std::string& name) {
  if (name == "lambda") return SweepAxis::lambda;
  if (name == "k_polarization") return SweepAxis::k_polarization;
  if (name == "g_scalar") return SweepAxis::g_scalar;
  if (name == "b_scalar") return SweepAxis::b_scalar;
  throw ValidationError("axis: unknown sweep axis '" + name + "'");
}

SweepSpec sweep_spec_from_json(const json& j) {
  SweepSpec spec;
  if (!j.contains("axis")) throw ValidationError("axis: missing");
  spec.axis = axis_from_name(j.at("axis").get<std::string>());
  if (!j.contains("values") || !j.at("values").is_array() || j.at("values").empty())
    throw ValidationError("values: need a non-empty array");
  spec.values = j.at("values").get<std::vector<double>>();
  if (!j.contains("base")) throw ValidationError("base: missing");
  spec.base = params_from_json(j.at("base"));
  if (j.contains("outputs"))
    spec.outputs = j.at("outputs").get<std::vector<std::string>>();
  return spec;
}

namespace {

const std::vector<std::string> kAllQuantities = {
    "c",     "theta", "x_benchmark",           "x_stable",
    "cutoff_stable", "alpha", "mu",            "whataboutism_frequency"};

ModelParams apply_axis(const ModelParams& base, SweepAxis axis, double value) {
  ModelParams p = base;
  p.cbar.reset();  // swept copies are counterfactuals; the cost bound no longer binds
  switch (axis) {
    case SweepAxis::lambda:
      p.lambda = value;
      break;
    case SweepAxis::k_polarization:
      for (double& v : p.g) v *= value;
      for (double& v : p.b) v *= value;
      break;
    case SweepAxis::g_scalar:
      for (double& v : p.g) v *= value;
      break;
    case SweepAxis::b_scalar:
      for (double& v : p.b) v *= value;
      break;
  }
  return p;
}

struct PointSolution {
  bool valid = false;
  std::string reason;
  std::map<std::string, std::vector<double>> quantities;  // name -> per-m values
};

PointSolution solve_point(const ModelParams& base, SweepAxis axis, double value) {
  PointSolution pt;
  ModelParams p = apply_axis(base, axis, value);
  try {
    validate(p);
  } catch (const ValidationError& e) {
    pt.reason = e.what();
    return pt;
  }
  const DerivedQuantities d = derive(p);
  const BenchmarkSolution bench = solve_benchmark(p);
  const EquilibriumProfile stable = pspe_profile(p, d.M);
  const WhataboutismStats stats = whataboutism_stats(p, stable);
  pt.valid = true;
  pt.quantities["c"] = d.c;
  pt.quantities["theta"] = d.theta;
  pt.quantities["x_benchmark"] = bench.abstain;
  pt.quantities["x_stable"] = stable.abstain;
  pt.quantities["cutoff_stable"] = stable.cutoff;
  pt.quantities["alpha"] = stats.alpha;
  pt.quantities["mu"] = stats.mu;
  pt.quantities["whataboutism_frequency"] = stats.frequency;
  return pt;
}

// Direction of x_stable along each ascending axis; frequency moves opposite.
int x_direction(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::lambda:
    case SweepAxis::b_scalar:
      return +1;
    case SweepAxis::k_polarization:
    case SweepAxis::g_scalar:
      return -1;
  }
  return 0;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, int threads) {
  SweepResult result;
  std::vector<double> values = spec.values;
  std::sort(values.begin(), values.end());

  std::vector<PointSolution> points(values.size());
  const std::int64_t n = static_cast<std::int64_t>(values.size());
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : 1) if (threads != 1)
  for (std::int64_t i = 0; i < n; ++i)
    points[i] = solve_point(spec.base, spec.axis, values[i]);

  const std::vector<std::string>& wanted =
      spec.outputs.empty() ? kAllQuantities : spec.outputs;
  for (const std::string& q : wanted)
    if (std::find(kAllQuantities.begin(), kAllQuantities.end(), q) ==
        kAllQuantities.end())
      throw ValidationError("outputs: unknown quantity '" + q + "'");

  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!points[i].valid) {
      result.skipped.push_back({values[i], points[i].reason});
      continue;
    }
    for (int m = 1; m <= spec.base.n; ++m)
      for (const std::string& q : wanted)
        result.rows.push_back({values[i], m, q, points[i].quantities.at(q)[m - 1]});
  }

  // weak monotonicity between consecutive valid points, tiny slack for rounding
  const double slack = 1e-12;
  const int dir_x = x_direction(spec.axis);
  std::size_t prev = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!points[i].valid) continue;
    if (prev < values.size()) {
      for (int m = 1; m <= spec.base.n; ++m) {
        const double x0 = points[prev].quantities.at("x_stable")[m - 1];
        const double x1 = points[i].quantities.at("x_stable")[m - 1];
        const double f0 = points[prev].quantities.at("whataboutism_frequency")[m - 1];
        const double f1 = points[i].quantities.at("whataboutism_frequency")[m - 1];
        if (dir_x * (x1 - x0) < -slack) {
          std::ostringstream msg;
          msg << "x_stable not " << (dir_x > 0 ? "nondecreasing" : "nonincreasing")
              << " on " << axis_name(spec.axis) << " at m=" << m << ": f("
              << values[prev] << ")=" << x0 << " -> f(" << values[i] << ")=" << x1;
          result.violations.push_back(msg.str());
        }
        if (-dir_x * (f1 - f0) < -slack) {
          std::ostringstream msg;
          msg << "whataboutism_frequency not "
              << (dir_x > 0 ? "nonincreasing" : "nondecreasing") << " on "
              << axis_name(spec.axis) << " at m=" << m << ": f(" << values[prev]
              << ")=" << f0 << " -> f(" << values[i] << ")=" << f1;
          result.violations.push_back(msg.str());
        }
      }
    }
    prev = i;
  }
  return result;
}

std::string sweep_csv(const SweepResult& result, SweepAxis axis) {
  std::ostringstream out;
  out << "axis,axis_value,m,quantity,value\n";
  for (const auto& row : result.rows)
    out << axis_name(axis) << ',' << format_real(row.axis_value) << ',' << row.m << ','
        << row.quantity << ',' << format_real(row.value) << '\n';
  return out.str();
}

json sweep_report_json(const SweepResult& result) {
  json skipped = json::array();
  for (const auto& s : result.skipped)
    skipped.push_back({{"axis_value", s.axis_value}, {"reason", s.reason}});
  return json{{"skipped", skipped},
              {"violations", result.violations},
              {"rows", result.rows.size()}};
}

}  // namespace wag
