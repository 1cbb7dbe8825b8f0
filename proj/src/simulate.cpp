#include "wag/simulate.hpp"

#include <omp.h>

#include <cmath>
#include <exception>

#include "wag/analytic.hpp"

namespace wag {

BatchCounts& BatchCounts::operator+=(const BatchCounts& o) {
  episodes += o.episodes;
  stage1_offended += o.stage1_offended;
  rival_terminated += o.rival_terminated;
  own_all_supported += o.own_all_supported;
  total_length += o.total_length;
  for (int j = 0; j < kLengthBins; ++j) length_hist[j] += o.length_hist[j];
  length_tail += o.length_tail;
  return *this;
}

EpisodeRecord run_episode(const ModelParams& p, const EquilibriumProfile& prof,
                          StateId s, SplitMix64& rng) {
  const double g = p.g_at(s.m);
  const double lb = p.lambda_b(s.m);
  const double vstar = prof.cutoff_at(s.m);

  EpisodeRecord ep;
  ep.state = s;
  // the opening speaker offends iff the drawn valuation clears the cutoff
  if (g * rng.u01() < vstar) return ep;  // refusal: length 1, ended by own camp
  ep.stage1_offended = true;
  for (;;) {
    if (ep.length >= kEpisodeStageCap)
      throw SafetyCapExceeded("episode stage cap hit at camp " + std::to_string(s.camp) +
                              ", m " + std::to_string(s.m));
    ++ep.length;
    if (rng.u01() < 0.5) {  // rival camp moves
      if (rng.u01() < lb) {
        ep.terminator_camp = Terminator::rival;
        ep.own_camp_all_supported = true;
        return ep;
      }
    } else {  // own camp moves with a fresh valuation
      if (g * rng.u01() < vstar) {
        ep.terminator_camp = Terminator::same;
        return ep;
      }
    }
  }
}

namespace {

void accumulate(BatchCounts& counts, const EpisodeRecord& ep) {
  ++counts.episodes;
  if (ep.stage1_offended) ++counts.stage1_offended;
  if (ep.terminator_camp == Terminator::rival) ++counts.rival_terminated;
  if (ep.own_camp_all_supported) ++counts.own_all_supported;
  counts.total_length += static_cast<std::uint64_t>(ep.length);
  if (ep.length <= kLengthBins)
    ++counts.length_hist[ep.length - 1];
  else
    ++counts.length_tail;
}

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

// 0/1 kernels (rebuttal success, payoff cost, pair events) share this batch
// loop; the sum of indicators is the only state, so scheduling cannot change
// the result.
template <typename Kernel>
std::uint64_t count_batch(std::uint64_t n, std::uint64_t key, int threads,
                          Kernel&& kernel) {
  if (threads == 1) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      SplitMix64 rng = substream(key, i);
      hits += kernel(i, rng);
    }
    return hits;
  }
  std::uint64_t hits = 0;
  std::exception_ptr err;
  const std::int64_t sn = static_cast<std::int64_t>(n);
#pragma omp parallel num_threads(resolve_threads(threads))
  {
    std::uint64_t local = 0;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < sn; ++i) {
      try {
        SplitMix64 rng = substream(key, static_cast<std::uint64_t>(i));
        local += kernel(static_cast<std::uint64_t>(i), rng);
      } catch (...) {
#pragma omp critical(count_batch_err)
        if (!err) err = std::current_exception();
      }
    }
#pragma omp critical(count_batch_sum)
    hits += local;
  }
  if (err) std::rethrow_exception(err);
  return hits;
}

double binomial_se(double p_hat, std::uint64_t n) {
  return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
}

// z against the analytic value; a degenerate (zero-variance) estimate either
// matches exactly or is flagged with a sentinel that any tolerance rejects.
double z_against(double estimate, double analytic, double se) {
  if (se > 0.0) return (estimate - analytic) / se;
  if (estimate == analytic) return 0.0;
  return std::copysign(1e300, estimate - analytic);
}

EstimateReport probability_report(std::string quantity, int camp, int m,
                                  std::uint64_t n, std::uint64_t hits, double analytic) {
  EstimateReport rep;
  rep.quantity = std::move(quantity);
  rep.camp = camp;
  rep.m = m;
  rep.n_episodes = n;
  rep.estimate = static_cast<double>(hits) / static_cast<double>(n);
  rep.std_error = binomial_se(rep.estimate, n);
  rep.analytic = analytic;
  rep.z_score = z_against(rep.estimate, analytic, rep.std_error);
  return rep;
}

}  // namespace

BatchCounts run_batch_serial(const ModelParams& p, const EquilibriumProfile& prof,
                             StateId s, std::uint64_t n, std::uint64_t key) {
  BatchCounts counts;
  for (std::uint64_t i = 0; i < n; ++i) {
    SplitMix64 rng = substream(key, i);
    accumulate(counts, run_episode(p, prof, s, rng));
  }
  return counts;
}

BatchCounts run_batch_openmp(const ModelParams& p, const EquilibriumProfile& prof,
                             StateId s, std::uint64_t n, std::uint64_t key,
                             int threads) {
  BatchCounts counts;
  std::exception_ptr err;
  const std::int64_t sn = static_cast<std::int64_t>(n);
#pragma omp parallel num_threads(resolve_threads(threads))
  {
    BatchCounts local;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < sn; ++i) {
      try {
        SplitMix64 rng = substream(key, static_cast<std::uint64_t>(i));
        accumulate(local, run_episode(p, prof, s, rng));
      } catch (...) {
#pragma omp critical(run_batch_err)
        if (!err) err = std::current_exception();
      }
    }
#pragma omp critical(run_batch_sum)
    counts += local;
  }
  if (err) std::rethrow_exception(err);
  return counts;
}

BatchCounts run_batch(const ModelParams& p, const EquilibriumProfile& prof, StateId s,
                      std::uint64_t n, std::uint64_t key, int threads) {
  if (threads == 1) return run_batch_serial(p, prof, s, n, key);
  return run_batch_openmp(p, prof, s, n, key, threads);
}

EstimateReport estimate_alpha(const ModelParams& p, const EquilibriumProfile& prof,
                              StateId s, std::uint64_t n, std::uint64_t seed,
                              int threads) {
  const std::uint64_t key = stream_key(seed, "alpha", s.camp, s.m);
  const BatchCounts counts = run_batch(p, prof, s, n, key, threads);
  return probability_report("alpha", s.camp, s.m, n, counts.rival_terminated,
                            alpha_closed_form(p, prof, s));
}

bool sample_rebuttal(const ModelParams& p, const EquilibriumProfile& prof, StateId s,
                     SplitMix64& rng) {
  const StateId target = mu_and_target(p, prof, s).second;
  const EpisodeRecord ep = run_episode(p, prof, target, rng);
  return ep.stage1_offended && ep.own_camp_all_supported;
}

EstimateReport estimate_rebuttal_failure(const ModelParams& p,
                                         const EquilibriumProfile& prof, StateId s,
                                         std::uint64_t n, std::uint64_t seed,
                                         int threads) {
  const auto [mu, target] = mu_and_target(p, prof, s);
  const std::uint64_t key = stream_key(seed, "rebuttal", s.camp, s.m);
  const std::uint64_t failures =
      count_batch(n, key, threads, [&](std::uint64_t, SplitMix64& rng) -> std::uint64_t {
        const EpisodeRecord ep = run_episode(p, prof, target, rng);
        return (ep.stage1_offended && ep.own_camp_all_supported) ? 0 : 1;
      });
  return probability_report("rebuttal_failure", s.camp, s.m, n, failures, mu);
}

EstimateReport estimate_payoff(const ModelParams& p, const EquilibriumProfile& prof,
                               StateId s, double v, std::uint64_t n, std::uint64_t seed,
                               int threads) {
  const double g = p.g_at(s.m);
  const double lb = p.lambda_b(s.m);
  const double vstar = prof.cutoff_at(s.m);
  const double mu = mu_and_target(p, prof, s).first;
  const std::uint64_t key = stream_key(seed, "payoff", s.camp, s.m);
  // cost is 1 when the immediate successor is an own-camp condemner, or a
  // rival condemner whose triggered rebuttal attempt fails
  const std::uint64_t costs =
      count_batch(n, key, threads, [&](std::uint64_t, SplitMix64& rng) -> std::uint64_t {
        if (rng.u01() < 0.5) {  // rival successor
          if (rng.u01() < lb) return sample_rebuttal(p, prof, s, rng) ? 0 : 1;
          return 0;
        }
        return g * rng.u01() < vstar ? 1 : 0;  // own-camp successor
      });
  const double cost_rate = static_cast<double>(costs) / static_cast<double>(n);
  EstimateReport rep;
  rep.quantity = "payoff";
  rep.camp = s.camp;
  rep.m = s.m;
  rep.n_episodes = n;
  rep.estimate = v - cost_rate;
  rep.std_error = binomial_se(cost_rate, n);
  rep.analytic = v - 0.5 * prof.abstain_at(s.m) - 0.5 * lb * mu;
  rep.z_score = z_against(rep.estimate, rep.analytic, rep.std_error);
  return rep;
}

EstimateReport estimate_marginal_payoff(const ModelParams& p,
                                        const EquilibriumProfile& prof, StateId s,
                                        std::uint64_t n, std::uint64_t seed,
                                        int threads) {
  const bool interior = prof.cutoff_at(s.m) > 0.0;
  const double v = interior ? prof.cutoff_at(s.m) : 0.0;
  EstimateReport rep = estimate_payoff(p, prof, s, v, n, seed, threads);
  rep.quantity = interior ? "marginal_payoff" : "marginal_payoff_at_floor";
  if (prof.equilibrium) {
    // indifference (or, below the threshold, an empty cost event) is exact
    rep.analytic = 0.0;
    rep.z_score = z_against(rep.estimate, 0.0, rep.std_error);
  }
  return rep;
}

EstimateReport estimate_whataboutism_frequency(const ModelParams& p,
                                               const EquilibriumProfile& prof, int m,
                                               std::uint64_t n_pairs, std::uint64_t seed,
                                               int threads) {
  const std::uint64_t key_a = stream_key(seed, "pair_frequency", 1, m);
  const std::uint64_t key_b = stream_key(seed, "pair_frequency", 2, m);
  const std::uint64_t both =
      count_batch(n_pairs, key_a, threads, [&](std::uint64_t i, SplitMix64& rng_a) -> std::uint64_t {
        SplitMix64 rng_b = substream(key_b, i);
        const EpisodeRecord a = run_episode(p, prof, StateId{1, m}, rng_a);
        if (!(a.stage1_offended && a.own_camp_all_supported)) return 0;
        const EpisodeRecord b = run_episode(p, prof, StateId{2, m}, rng_b);
        return (b.stage1_offended && b.own_camp_all_supported) ? 1 : 0;
      });
  // alpha_1 * alpha_2; equals min{1, (1-theta)^2} at every equilibrium profile
  const double analytic = alpha_closed_form(p, prof, StateId{1, m}) *
                          alpha_closed_form(p, prof, StateId{2, m});
  return probability_report("whataboutism_frequency", 0, m, n_pairs, both, analytic);
}

std::vector<EstimateReport> run_all_estimators(const ModelParams& p,
                                               const EquilibriumProfile& prof,
                                               std::uint64_t n, std::uint64_t seed,
                                               int threads) {
  std::vector<EstimateReport> reports;
  for (int camp = 1; camp <= 2; ++camp)
    for (int m = 1; m <= p.n; ++m)
      reports.push_back(estimate_alpha(p, prof, StateId{camp, m}, n, seed, threads));
  for (int camp = 1; camp <= 2; ++camp)
    for (int m = 1; m <= p.n; ++m)
      reports.push_back(
          estimate_rebuttal_failure(p, prof, StateId{camp, m}, n, seed, threads));
  for (int m = 1; m <= p.n; ++m)
    reports.push_back(estimate_whataboutism_frequency(p, prof, m, n, seed, threads));
  for (int m = 1; m <= p.n; ++m)
    reports.push_back(
        estimate_marginal_payoff(p, prof, StateId{1, m}, n, seed, threads));
  return reports;
}

}  // namespace wag
