#pragma once
// Closed-form layer: the no-rebuttal benchmark, the family of equilibrium
// profiles indexed by the breakdown threshold m*, and the whataboutism
// statistics (alpha, mu, frequency) attached to a profile.

#include <utility>
#include <vector>

#include "wag/model.hpp"

namespace wag {

struct InvalidThreshold : ValidationError {
  explicit InvalidThreshold(const std::string& what) : ValidationError(what) {}
};
struct ScaleOutOfRange : ValidationError {
  explicit ScaleOutOfRange(const std::string& what) : ValidationError(what) {}
};

// Cutoff equilibrium of the game without rebuttals.
struct BenchmarkSolution {
  std::vector<double> cutoff;   // lambda*g_m*b_m/(2*g_m - 1)
  std::vector<double> abstain;  // cutoff/g = c_m
};

struct PspeFamily {
  std::vector<EquilibriumProfile> profiles;  // mstar = M, ..., n+1 in order
  int stable_index = 0;                      // position of the mstar = M profile
};

struct WhataboutismStats {
  std::vector<double> alpha;      // share of episodes ended by the rival camp
  std::vector<double> mu;         // failure rate of the best rebuttal
  std::vector<double> frequency;  // chance a state pair ends in mutual rebuke
};

enum class Sign { negative = -1, zero = 0, positive = 1 };

// Stationary cutoff of the no-rebuttal stage recursion; shared between the
// solver and the divergence demo so both see bit-identical values.
inline double benchmark_cutoff(double lambda, double g, double b) {
  return lambda * g * b / (2.0 * g - 1.0);
}

BenchmarkSolution solve_benchmark(const ModelParams& params);

// Profile with breakdown threshold mstar in {M, ..., n+1}: levels below mstar
// play cutoff 0, levels at or above play x_m = c_m*theta_m.
EquilibriumProfile pspe_profile(const ModelParams& params, int mstar);

// All admissible thresholds, ordered; profiles are pointwise decreasing in
// abstain as mstar grows.
PspeFamily enumerate_pspe(const ModelParams& params);

// Probability the episode started at `state` is ended by the rival camp:
// (1 - x)*(lambda*b/2) / (lambda*b/2 + x/2). Identically 1 - phi_m(x).
double alpha_closed_form(const ModelParams& params, const EquilibriumProfile& profile,
                         StateId state);

// Best rebuttal available from `state`: minimal 1 - alpha over rival states
// of sensitivity >= m, together with the minimizing state. Ties resolve to
// the least sensitive minimizer, i.e. the equal-sensitivity mirror state.
std::pair<double, StateId> mu_and_target(const ModelParams& params,
                                         const EquilibriumProfile& profile, StateId state);

// Chance that both states of a level-m pair end in a successful rebuke at the
// stable profile: min{1, (1 - theta_m)^2}.
double whataboutism_frequency(const ModelParams& params, int m);

// Single-level specialization used for quick parameter exploration; nonzero
// exactly when theta = lambda*b - 2*g + 2 is positive.
double two_state_cutoff(double g, double b, double lambda);

// alpha/mu/frequency per level for a given profile (frequency uses the stable
// closed form, which coincides with alpha^2 at every equilibrium profile).
WhataboutismStats whataboutism_stats(const ModelParams& params,
                                     const EquilibriumProfile& profile);

// Counterfactual scaling g -> k*g, b -> k*b. Drops cbar: scaling is a thought
// experiment on tastes, not on the condemnation-cost microfoundation.
ModelParams scale_params(const ModelParams& params, double k);

// Central finite differences of (x_m, frequency_m) at scale k, step h*k.
// First sign is negative and second positive at k = 1 for every m >= M;
// both are zero below M where the profile is pinned at breakdown.
std::pair<Sign, Sign> polarization_response(const ModelParams& params, int m, double k,
                                            double h = 1e-5);

}  // namespace wag
