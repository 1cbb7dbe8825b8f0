#include "wag/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "wag/analytic.hpp"

namespace wag {

double self_map(const ModelParams& p, int m, double x) {
  const double c = p.lambda_b(m) / (2.0 * p.g_at(m) - 1.0);
  return c * phi(p, m, x);
}

IterationTrace iterate(const ModelParams& p, int m, double x0, double tol,
                       std::uint64_t max_iter) {
  if (!(x0 >= 0.0 && x0 < 1.0))
    throw RangeViolation("x0: start of the iteration must lie in [0, 1)");
  IterationTrace tr;
  tr.iterates.push_back(x0);
  double x = x0;
  for (std::uint64_t it = 0; it < max_iter; ++it) {
    const double fx = self_map(p, m, x);
    if (std::abs(fx - x) <= tol) {
      tr.iterates.push_back(fx);
      tr.converged = true;
      tr.limit = fx;
      tr.residual = std::abs(self_map(p, m, fx) - fx);
      return tr;
    }
    x = fx;
    tr.iterates.push_back(x);
  }
  tr.converged = false;  // budget exhausted; partial trace, no exception
  tr.residual = std::abs(self_map(p, m, x) - x);
  return tr;
}

namespace {

struct MarginScan {
  double margin = 0.0;
  bool expanding = false;
  double worst_point = 0.0;  // perturbation with the largest chord ratio
};

// Chord ratios |f(x') - f(anchor)| / |x' - anchor| over a two-sided geometric
// grid inside (anchor - delta, anchor + delta), clipped to [0, 1). Geometric
// spacing reaches within delta*2^-(points/2) of the anchor, so an expansion
// region touching the anchor cannot slip between grid points.
template <typename F>
MarginScan scan_chord_ratios(F&& f, double anchor, double delta, int points) {
  MarginScan scan;
  const double f_anchor = f(anchor);
  const int per_side = std::max(1, points / 2);
  for (int side = -1; side <= 1; side += 2) {
    for (int j = 0; j < per_side; ++j) {
      const double off = delta * std::ldexp(1.0, -(j + 1));
      const double x = anchor + side * off;
      if (!(x >= 0.0 && x < 1.0) || x == anchor) continue;
      const double ratio = std::abs(f(x) - f_anchor) / std::abs(x - anchor);
      if (ratio > scan.margin) {
        scan.margin = ratio;
        scan.worst_point = x;
      }
      if (ratio >= 1.0) scan.expanding = true;
    }
  }
  return scan;
}

}  // namespace

StabilityReport check_stability(const ModelParams& p, const EquilibriumProfile& prof,
                                double delta, int grid_points) {
  const DerivedQuantities d = derive(p);
  StabilityReport rep;
  rep.stable = true;
  for (int m = 1; m <= p.n; ++m) {
    const double c = d.c[m - 1];
    const double theta = d.theta[m - 1];
    const double lb = p.lambda_b(m);
    const double x = prof.abstain_at(m);

    StabilityRow row;
    row.m = m;
    row.fixed_points.push_back(0.0);
    if (theta > 0.0) row.fixed_points.push_back(c * theta);
    row.stable_point = std::max(0.0, c * theta);
    row.derivative = c * (1.0 + lb) * lb / ((lb + x) * (lb + x));

    // The definition asks for contraction on *some* neighborhood, so the
    // window at an interior anchor shrinks below the distance to 0, where the
    // chord ratio of any fixed-point anchor degenerates to exactly 1.
    const double dx = x > 0.0 ? std::min(delta, x) : delta;
    const MarginScan self = scan_chord_ratios(
        [&](double t) { return self_map(p, m, t); }, x, dx, grid_points);
    row.contraction_margin = self.margin;

    const double z = x / c;  // conjugate coordinates: x = c*z
    const double dz = z > 0.0 ? std::min(delta, z) : delta;
    const MarginScan conj = scan_chord_ratios(
        [&](double t) { return phi(p, m, c * t); }, z, dz, grid_points);
    row.conjugate_margin = conj.margin;

    if (self.expanding || conj.expanding) {
      rep.stable = false;
      if (!rep.witness) {
        const MarginScan& w = self.expanding ? self : conj;
        rep.witness = PerturbationWitness{m, self.expanding ? x : z, w.worst_point,
                                          w.margin};
      }
    }
    rep.per_m.push_back(std::move(row));
  }
  return rep;
}

RecursionTrace benchmark_recursion(const ModelParams& p, int m, double v0, int steps) {
  const double g = p.g_at(m);
  if (!(v0 >= 0.0 && v0 <= g))
    throw RangeViolation("v0: start of the stage recursion must lie in [0, g]");
  const double slope = 2.0 * g - 1.0;
  const double vstar = benchmark_cutoff(p.lambda, g, p.b_at(m));
  RecursionTrace tr;
  tr.values.push_back(v0);
  double v = v0;
  for (int k = 0; k < steps; ++k) {
    v += slope * (v - vstar);  // = 2g*v - lambda*b*g, exact at v == vstar
    tr.values.push_back(v);
    if (v < 0.0 || v > g) {
      tr.exited = true;
      tr.direction = v > g ? 1 : -1;
      break;
    }
  }
  return tr;
}

}  // namespace wag
