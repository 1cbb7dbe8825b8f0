#pragma once
// Dynamic layer: the per-level self-map x -> c_m*phi_m(x) whose fixed points
// are the candidate abstain shares, a stability test for whole profiles, and
// the divergent stage recursion of the no-rebuttal benchmark.

#include <cstdint>
#include <optional>
#include <vector>

#include "wag/model.hpp"

namespace wag {

struct IterationTrace {
  std::vector<double> iterates;  // starts with x0, one entry per step after
  bool converged = false;
  std::optional<double> limit;
  double residual = 0.0;  // |x - F(x)| at the exit point
};

struct StabilityRow {
  int m = 0;
  std::vector<double> fixed_points;  // of the self-map: {0} and c*theta when positive
  double stable_point = 0.0;         // max{0, c*theta}
  double contraction_margin = 0.0;   // sup chord ratio of the self-map at the anchor
  double conjugate_margin = 0.0;     // same for the conjugate map z -> phi(c*z)
  double derivative = 0.0;           // |d/dx c*phi| at the anchor (diagnostic)
};

struct PerturbationWitness {
  int m = 0;
  double x = 0.0;        // anchor (the profile's abstain share at level m)
  double x_prime = 0.0;  // perturbation whose image moves away
  double ratio = 0.0;    // expansion factor, >= 1
};

struct StabilityReport {
  bool stable = false;
  std::vector<StabilityRow> per_m;
  std::optional<PerturbationWitness> witness;  // present iff unstable
};

struct RecursionTrace {
  std::vector<double> values;  // starts with v0; truncated at first exit
  bool exited = false;
  int direction = 0;  // +1 escaped above g, -1 escaped below 0
};

// F(x) = c_m * phi_m(x).
double self_map(const ModelParams& params, int m, double x);

// Iterate F from x0 until |F(x) - x| <= tol. Hitting max_iter is reported in
// the trace (converged = false), never thrown.
IterationTrace iterate(const ModelParams& params, int m, double x0, double tol = 1e-12,
                       std::uint64_t max_iter = 1000000);

// Chord-ratio contraction test around every level's abstain share. The window
// delta shrinks to min(delta, x_m) at interior anchors (the definition only
// demands some neighborhood) and the grid is geometric so expanding
// perturbations arbitrarily close to an unstable anchor are found. The test
// is run in both conjugate forms and the verdicts must agree.
StabilityReport check_stability(const ModelParams& params, const EquilibriumProfile& profile,
                                double delta = 1e-3, int grid_points = 64);

// Forward stage recursion of the no-rebuttal game, centered on its stationary
// cutoff: v' = v + (2g-1)*(v - vstar). Starting exactly at vstar stays fixed;
// anything else walks monotonically out of [0, g] and the trace is truncated
// at the first exit.
RecursionTrace benchmark_recursion(const ModelParams& params, int m, double v0,
                                   int steps);

}  // namespace wag
