#pragma once
// Seeded Monte Carlo verifier. Episodes are independent and keyed by episode
// index, batches aggregate integer counts only, so every estimate is
// bit-identical whatever the worker count. The serial batch runner is the
// reference implementation; the OpenMP runner must match it exactly.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wag/model.hpp"
#include "wag/rng.hpp"

namespace wag {

struct SimulationError : std::runtime_error {
  explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};
// An episode outlived the hard cap on stage count; statistically impossible
// under valid parameters, so it signals a broken profile rather than bad luck.
struct SafetyCapExceeded : SimulationError {
  explicit SafetyCapExceeded(const std::string& what) : SimulationError(what) {}
};

inline constexpr std::int64_t kEpisodeStageCap = 1000000000;

enum class Terminator { same, rival };

struct EpisodeRecord {
  StateId state;
  bool stage1_offended = false;
  std::int64_t length = 1;  // moves played, terminating move included
  Terminator terminator_camp = Terminator::same;
  bool own_camp_all_supported = false;
};

// Length histogram resolution: lengths 1..kLengthBins, longer in the tail.
inline constexpr int kLengthBins = 64;

struct BatchCounts {
  std::uint64_t episodes = 0;
  std::uint64_t stage1_offended = 0;
  std::uint64_t rival_terminated = 0;
  std::uint64_t own_all_supported = 0;
  std::uint64_t total_length = 0;
  std::array<std::uint64_t, kLengthBins> length_hist{};
  std::uint64_t length_tail = 0;

  BatchCounts& operator+=(const BatchCounts& o);
};

struct EstimateReport {
  std::string quantity;
  int camp = 0;  // 0 when the estimand is camp-symmetric
  int m = 0;
  std::uint64_t n_episodes = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double analytic = 0.0;
  double z_score = 0.0;
};

// One play of the episode game from `state` under `profile`. Draw order per
// episode: stage-1 valuation; then per stage a camp coin, then that mover's
// condemnation draw. First refusal to support ends the episode.
EpisodeRecord run_episode(const ModelParams& params, const EquilibriumProfile& profile,
                          StateId state, SplitMix64& rng);

// Reference batch runner: plain loop, one substream per episode index.
BatchCounts run_batch_serial(const ModelParams& params, const EquilibriumProfile& profile,
                             StateId state, std::uint64_t n, std::uint64_t key);

// OpenMP batch runner; bit-identical to the serial one for every thread count.
BatchCounts run_batch_openmp(const ModelParams& params, const EquilibriumProfile& profile,
                             StateId state, std::uint64_t n, std::uint64_t key,
                             int threads);

// threads <= 1 selects the serial reference, otherwise the OpenMP runner
// (threads == 0 means "all available").
BatchCounts run_batch(const ModelParams& params, const EquilibriumProfile& profile,
                      StateId state, std::uint64_t n, std::uint64_t key, int threads);

// Fraction of episodes ended by the rival camp vs. the closed form.
EstimateReport estimate_alpha(const ModelParams& params, const EquilibriumProfile& profile,
                              StateId state, std::uint64_t n, std::uint64_t seed,
                              int threads);

// One rebuttal attempt from `state`: play a fresh episode at the state picked
// by mu_and_target; the rebuke succeeds when that episode's opening speaker
// offends and their camp supports to the end.
bool sample_rebuttal(const ModelParams& params, const EquilibriumProfile& profile,
                     StateId state, SplitMix64& rng);

// Failure rate of sampled rebuttals vs. mu.
EstimateReport estimate_rebuttal_failure(const ModelParams& params,
                                         const EquilibriumProfile& profile, StateId state,
                                         std::uint64_t n, std::uint64_t seed, int threads);

// Expected payoff of speaking out at valuation v: per trial the immediate
// successor is realized (camp coin folded in) and a rival condemnation
// triggers one sampled rebuttal; payoff is v minus the 0/1 cost indicator.
EstimateReport estimate_payoff(const ModelParams& params, const EquilibriumProfile& profile,
                               StateId state, double v, std::uint64_t n,
                               std::uint64_t seed, int threads);

// Payoff at the profile's own cutoff (analytically zero at an equilibrium).
// Below the breakdown threshold there is no interior cutoff; the payoff at
// v = 0 is reported instead and is identically zero.
EstimateReport estimate_marginal_payoff(const ModelParams& params,
                                        const EquilibriumProfile& profile, StateId state,
                                        std::uint64_t n, std::uint64_t seed, int threads);

// Fraction of paired level-m episodes (one per camp) in which both end with a
// successful rebuke by the rival.
EstimateReport estimate_whataboutism_frequency(const ModelParams& params,
                                               const EquilibriumProfile& profile, int m,
                                               std::uint64_t n_pairs, std::uint64_t seed,
                                               int threads);

// Every estimator over every state of the profile, in a fixed order:
// alpha and rebuttal failure per state, pair frequency and marginal payoff
// per level. This is what the simulate command reports.
std::vector<EstimateReport> run_all_estimators(const ModelParams& params,
                                               const EquilibriumProfile& profile,
                                               std::uint64_t n, std::uint64_t seed,
                                               int threads);

}  // namespace wag
