#pragma once
// Game primitives: the parameter set of the two-camp offensive-speech game,
// its validation, and the derived per-level quantities (c_m, theta_m, M) the
// equilibrium analysis is written in.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wag {

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};
struct OrderingViolation : ValidationError {
  explicit OrderingViolation(const std::string& what) : ValidationError(what) {}
};
struct RangeViolation : ValidationError {
  explicit RangeViolation(const std::string& what) : ValidationError(what) {}
};
struct MicrofoundationMismatch : ValidationError {
  explicit MicrofoundationMismatch(const std::string& what) : ValidationError(what) {}
};
struct CbarTooSmall : ValidationError {
  explicit CbarTooSmall(const std::string& what) : ValidationError(what) {}
};

// Two symmetric camps, n sensitivity levels per camp. In a level-m state the
// speaker's benefit from offending is uniform on [0, g[m-1]] and the rival
// camp condemns an offense with probability lambda*b[m-1]. Arrays are indexed
// by m-1; m itself is 1-based everywhere in the interface.
struct ModelParams {
  int n = 0;
  double lambda = 0.0;        // condemnation-rate scale, in (0, 1/2)
  std::vector<double> g;      // strictly decreasing in m, each in (1, 2)
  std::vector<double> b;      // strictly increasing in m, each in (1, 2)
  std::optional<double> cbar; // cost bound behind lambda; lambda = 1/(2*cbar)

  double g_at(int m) const { return g[static_cast<size_t>(m) - 1]; }
  double b_at(int m) const { return b[static_cast<size_t>(m) - 1]; }
  double lambda_b(int m) const { return lambda * b_at(m); }
};

// A state of the episode game: which camp speaks first, at which level.
struct StateId {
  int camp = 1;  // 1 or 2
  int m = 1;     // sensitivity level, 1-based
  StateId mirror() const { return {3 - camp, m}; }
  bool operator==(const StateId&) const = default;
};

struct DerivedQuantities {
  std::vector<double> c;      // lambda*b_m/(2*g_m - 1), each in (0, 1)
  std::vector<double> theta;  // lambda*b_m - 2*g_m + 2, strictly increasing, < 1
  int M = 0;                  // lowest m with theta_m > 0; n+1 when none
  std::vector<int> near_zero_theta;  // levels with |theta| < 1e-12 (diagnostic)
};

// One play profile: per-level cutoff on the speaker's valuation and the
// induced abstain share x_m = cutoff_m / g_m. Levels below mstar never see
// condemnation from the own camp (cutoff 0).
struct EquilibriumProfile {
  int mstar = 1;
  std::vector<double> cutoff;
  std::vector<double> abstain;
  bool equilibrium = false;  // true when produced by the equilibrium solver
  std::vector<std::pair<StateId, StateId>> rebuttal_target;

  double cutoff_at(int m) const { return cutoff[static_cast<size_t>(m) - 1]; }
  double abstain_at(int m) const { return abstain[static_cast<size_t>(m) - 1]; }
};

// Throws OrderingViolation / RangeViolation / MicrofoundationMismatch;
// returns its argument untouched so call sites can chain.
const ModelParams& validate(const ModelParams& params);

// Requires validated params.
DerivedQuantities derive(const ModelParams& params);

// phi_m(z) = (lambda*b_m*z + z) / (lambda*b_m + z); increasing, concave,
// phi(0) = 0, asymptote 1 + lambda*b_m from below.
double phi(const ModelParams& params, int m, double z);

// lambda implied by the condemnation-cost bound: 1/(2*cbar).
double lambda_from_cbar(double cbar, double b_max);

}  // namespace wag
