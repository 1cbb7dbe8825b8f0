#include "wag/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wag {

BenchmarkSolution solve_benchmark(const ModelParams& p) {
  BenchmarkSolution s;
  s.cutoff.resize(p.g.size());
  s.abstain.resize(p.g.size());
  for (int m = 1; m <= p.n; ++m) {
    s.cutoff[m - 1] = benchmark_cutoff(p.lambda, p.g_at(m), p.b_at(m));
    s.abstain[m - 1] = s.cutoff[m - 1] / p.g_at(m);
  }
  return s;
}

EquilibriumProfile pspe_profile(const ModelParams& p, int mstar) {
  const DerivedQuantities d = derive(p);
  if (mstar < d.M || mstar > p.n + 1)
    throw InvalidThreshold("mstar: admissible thresholds are " + std::to_string(d.M) +
                           " .. " + std::to_string(p.n + 1) + ", got " +
                           std::to_string(mstar));
  EquilibriumProfile prof;
  prof.mstar = mstar;
  prof.equilibrium = true;
  prof.cutoff.assign(p.g.size(), 0.0);
  prof.abstain.assign(p.g.size(), 0.0);
  for (int m = mstar; m <= p.n; ++m) {
    const double x = d.c[m - 1] * d.theta[m - 1];
    prof.abstain[m - 1] = x;
    prof.cutoff[m - 1] = x * p.g_at(m);
  }
  for (int camp = 1; camp <= 2; ++camp)
    for (int m = 1; m <= p.n; ++m)
      prof.rebuttal_target.push_back({StateId{camp, m}, StateId{3 - camp, m}});
  return prof;
}

PspeFamily enumerate_pspe(const ModelParams& p) {
  const DerivedQuantities d = derive(p);
  PspeFamily fam;
  for (int mstar = d.M; mstar <= p.n + 1; ++mstar)
    fam.profiles.push_back(pspe_profile(p, mstar));
  fam.stable_index = 0;
  return fam;
}

double alpha_closed_form(const ModelParams& p, const EquilibriumProfile& prof,
                         StateId s) {
  const double x = prof.abstain_at(s.m);
  const double lb = p.lambda_b(s.m);
  return (1.0 - x) * (0.5 * lb) / (0.5 * lb + 0.5 * x);
}

std::pair<double, StateId> mu_and_target(const ModelParams& p,
                                         const EquilibriumProfile& prof, StateId s) {
  double best = std::numeric_limits<double>::infinity();
  int best_m = s.m;
  for (int mp = s.m; mp <= p.n; ++mp) {
    const double failure = phi(p, mp, prof.abstain_at(mp));
    if (failure < best) {  // strict: ties keep the least sensitive level
      best = failure;
      best_m = mp;
    }
  }
  return {best, StateId{3 - s.camp, best_m}};
}

double whataboutism_frequency(const ModelParams& p, int m) {
  const DerivedQuantities d = derive(p);
  const double one_minus_theta = 1.0 - d.theta[m - 1];
  return std::min(1.0, one_minus_theta * one_minus_theta);
}

double two_state_cutoff(double g, double b, double lambda) {
  const double theta = lambda * b - 2.0 * g + 2.0;
  if (!(theta > 0.0)) return 0.0;
  return benchmark_cutoff(lambda, g, b) * theta;
}

WhataboutismStats whataboutism_stats(const ModelParams& p,
                                     const EquilibriumProfile& prof) {
  WhataboutismStats st;
  st.alpha.resize(p.g.size());
  st.mu.resize(p.g.size());
  st.frequency.resize(p.g.size());
  for (int m = 1; m <= p.n; ++m) {
    st.alpha[m - 1] = alpha_closed_form(p, prof, StateId{1, m});
    st.mu[m - 1] = mu_and_target(p, prof, StateId{1, m}).first;
    st.frequency[m - 1] = whataboutism_frequency(p, m);
  }
  return st;
}

ModelParams scale_params(const ModelParams& p, double k) {
  ModelParams q = p;
  q.cbar.reset();
  for (double& v : q.g) v *= k;
  for (double& v : q.b) v *= k;
  return q;
}

namespace {

// Stable-profile abstain share for one level, whatever the level's regime.
double stable_abstain_level(const ModelParams& p, int m) {
  const DerivedQuantities d = derive(p);
  return std::max(0.0, d.c[m - 1] * d.theta[m - 1]);
}

Sign sign_of(double v) {
  if (v > 0.0) return Sign::positive;
  if (v < 0.0) return Sign::negative;
  return Sign::zero;
}

}  // namespace

std::pair<Sign, Sign> polarization_response(const ModelParams& p, int m, double k,
                                            double h) {
  const double step = h * k;
  ModelParams lo, hi;
  try {
    lo = scale_params(p, k - step);
    hi = scale_params(p, k + step);
    validate(lo);
    validate(hi);
  } catch (const ValidationError& e) {
    throw ScaleOutOfRange("scale k=" + std::to_string(k) +
                          ": scaled parameters invalid (" + e.what() + ")");
  }
  const double x_lo = stable_abstain_level(lo, m);
  const double x_hi = stable_abstain_level(hi, m);
  const double f_lo = whataboutism_frequency(lo, m);
  const double f_hi = whataboutism_frequency(hi, m);
  const double dx = (x_hi - x_lo) / (2.0 * step);
  const double df = (f_hi - f_lo) / (2.0 * step);
  return {sign_of(dx), sign_of(df)};
}

}  // namespace wag
