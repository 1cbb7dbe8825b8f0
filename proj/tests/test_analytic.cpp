#include <doctest.h>

#include <cmath>
#include <random>

#include "testutil.hpp"
#include "wag/analytic.hpp"

using namespace wag;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// Fixed point of v = lambda*b/2 + v/(2g), iterated; contraction rate 1/(2g).
double benchmark_cutoff_oracle(double lambda, double g, double b) {
  double v = 0.5;
  for (int i = 0; i < 400; ++i) v = 0.5 * lambda * b + 0.5 * v / g;
  return v;
}

}  // namespace

TEST_CASE("benchmark: exact single-level set and reference values") {
  ModelParams p;
  p.n = 1;
  p.lambda = 0.25;
  p.g = {1.5};
  p.b = {1.5};
  const BenchmarkSolution s = solve_benchmark(validate(p));
  CHECK(s.cutoff[0] == 0.28125);
  CHECK(s.abstain[0] == 0.1875);
  CHECK(rel_err(s.cutoff[0], benchmark_cutoff_oracle(0.25, 1.5, 1.5)) <= 1e-12);

  const ModelParams ref = testutil::reference_params();
  const BenchmarkSolution sr = solve_benchmark(ref);
  CHECK(rel_err(sr.abstain[1], 0.475 / 1.4) <= 1e-12);
  CHECK(rel_err(sr.abstain[1], 0.3392857142857143) <= 1e-12);
  // benchmark abstain coincides with c_m
  const DerivedQuantities d = derive(ref);
  CHECK(rel_err(sr.abstain[0], d.c[0]) <= 1e-12);
  CHECK(rel_err(sr.abstain[1], d.c[1]) <= 1e-12);
}

TEST_CASE("benchmark: vanishing lambda and interiority across random sets") {
  ModelParams p;
  p.n = 1;
  p.lambda = 1e-9;
  p.g = {1.5};
  p.b = {1.5};
  const BenchmarkSolution s = solve_benchmark(p);
  CHECK(s.cutoff[0] < 1e-8);
  CHECK(s.abstain[0] < 1e-8);
  CHECK(s.cutoff[0] > 0.0);

  std::mt19937_64 rng(0xBE7C4A5EULL);
  for (int trial = 0; trial < 100; ++trial) {
    const ModelParams q = testutil::random_params(rng);
    const BenchmarkSolution sq = solve_benchmark(q);
    for (int m = 0; m < q.n; ++m) {
      CHECK(sq.abstain[m] > 0.0);
      CHECK(sq.abstain[m] < 1.0);
      CHECK(rel_err(sq.cutoff[m], benchmark_cutoff_oracle(q.lambda, q.g[m], q.b[m])) <=
            1e-12);
    }
  }
}

TEST_CASE("equilibrium profile: frozen reference values and threshold gating") {
  const ModelParams ref = testutil::reference_params();

  const EquilibriumProfile stable = pspe_profile(ref, 2);
  CHECK(stable.mstar == 2);
  CHECK(stable.abstain[0] == 0.0);
  CHECK(stable.cutoff[0] == 0.0);
  CHECK(rel_err(stable.abstain[1], 0.025446428571428573) <= 1e-12);
  CHECK(rel_err(stable.cutoff[1], 0.030535714285714287) <= 1e-12);
  CHECK(stable.equilibrium);

  // independent oracle: iterate x -> c*phi(x) from 0.5
  const double lb = 0.25 * 1.9, c2 = lb / 1.4;
  double x = 0.5;
  for (int i = 0; i < 2000; ++i) x = c2 * ((lb * x + x) / (lb + x));
  CHECK(rel_err(stable.abstain[1], x) <= 1e-12);

  const EquilibriumProfile breakdown = pspe_profile(ref, 3);
  CHECK(breakdown.abstain[0] == 0.0);
  CHECK(breakdown.abstain[1] == 0.0);

  CHECK_THROWS_AS(pspe_profile(ref, 1), InvalidThreshold);
  CHECK_THROWS_AS(pspe_profile(ref, 4), InvalidThreshold);

  // every state is paired with its equal-sensitivity mirror
  for (const auto& [from, to] : stable.rebuttal_target) {
    CHECK(to.camp == 3 - from.camp);
    CHECK(to.m == from.m);
  }
  CHECK(stable.rebuttal_target.size() == 4);
}

TEST_CASE("profile family: size, stable index, volume ordering") {
  const PspeFamily fam = enumerate_pspe(testutil::reference_params());
  REQUIRE(fam.profiles.size() == 2);
  CHECK(fam.profiles[0].mstar == 2);
  CHECK(fam.profiles[1].mstar == 3);
  CHECK(fam.profiles[fam.stable_index].mstar == 2);

  const PspeFamily broke = enumerate_pspe(testutil::breakdown_params());
  REQUIRE(broke.profiles.size() == 1);
  CHECK(broke.profiles[0].mstar == 3);
  CHECK(broke.stable_index == 0);

  ModelParams one;
  one.n = 1;
  one.lambda = 0.25;
  one.g = {1.05};
  one.b = {1.5};
  CHECK(enumerate_pspe(validate(one)).profiles.size() == 2);

  // across random sets: family size n+2-M, abstain pointwise antitone in mstar
  std::mt19937_64 rng(0x5EEDFA11ULL);
  for (int trial = 0; trial < 100; ++trial) {
    const ModelParams q = testutil::random_params_interior(rng);
    const DerivedQuantities d = derive(q);
    const PspeFamily f = enumerate_pspe(q);
    CHECK(static_cast<int>(f.profiles.size()) == q.n + 2 - d.M);
    for (size_t i = 1; i < f.profiles.size(); ++i)
      for (int m = 0; m < q.n; ++m)
        CHECK(f.profiles[i].abstain[m] <= f.profiles[i - 1].abstain[m]);
  }
}

TEST_CASE("alpha: boundary profiles and the frozen reference value") {
  const ModelParams ref = testutil::reference_params();
  EquilibriumProfile prof = pspe_profile(ref, 3);  // all-zero abstain
  CHECK(alpha_closed_form(ref, prof, {1, 1}) == 1.0);
  CHECK(alpha_closed_form(ref, prof, {2, 2}) == 1.0);

  const EquilibriumProfile stable = pspe_profile(ref, 2);
  CHECK(rel_err(alpha_closed_form(ref, stable, {1, 2}), 0.925) <= 1e-12);
  CHECK(alpha_closed_form(ref, stable, {1, 2}) ==
        alpha_closed_form(ref, stable, {2, 2}));

  prof.equilibrium = false;  // arbitrary non-equilibrium profile is legal input
  prof.abstain = {1.0, 0.3};
  prof.cutoff = {1.8, 0.36};
  CHECK(alpha_closed_form(ref, prof, {1, 1}) == 0.0);

  // identity alpha = 1 - phi(x) holds for any abstain level
  for (double x : {0.0, 0.01, 0.1, 0.37, 0.9}) {
    prof.abstain = {x, x};
    prof.cutoff = {x * 1.8, x * 1.2};
    for (int m = 1; m <= 2; ++m)
      CHECK(std::abs(alpha_closed_form(ref, prof, {1, m}) - (1.0 - phi(ref, m, x))) <=
            1e-15);
  }
}

TEST_CASE("best rebuttal: frozen values, tie-break, exhaustive-min oracle") {
  const ModelParams ref = testutil::reference_params();
  const EquilibriumProfile stable = pspe_profile(ref, 2);

  auto [mu2, tgt2] = mu_and_target(ref, stable, {1, 2});
  CHECK(rel_err(mu2, 0.075) <= 1e-12);
  CHECK(tgt2.camp == 2);
  CHECK(tgt2.m == 2);

  auto [mu1, tgt1] = mu_and_target(ref, stable, {1, 1});
  CHECK(mu1 == 0.0);
  CHECK(tgt1.camp == 2);
  CHECK(tgt1.m == 1);

  // all-zero profile: rebuttal always succeeds, mirror selected everywhere
  const EquilibriumProfile zero = pspe_profile(ref, 3);
  for (int camp = 1; camp <= 2; ++camp)
    for (int m = 1; m <= 2; ++m) {
      auto [mu, tgt] = mu_and_target(ref, zero, {camp, m});
      CHECK(mu == 0.0);
      CHECK(tgt.camp == 3 - camp);
      CHECK(tgt.m == m);
    }

  // oracle: exhaustive minimum of 1 - alpha over eligible rival states
  std::mt19937_64 rng2(0x137F00DULL);
  for (int trial = 0; trial < 100; ++trial) {
    const ModelParams q = testutil::random_params(rng2);
    std::uniform_real_distribution<double> ux(0.0, 0.9);
    EquilibriumProfile prof;
    prof.mstar = q.n + 1;
    prof.equilibrium = false;
    prof.abstain.resize(q.n);
    prof.cutoff.resize(q.n);
    for (int m = 0; m < q.n; ++m) {
      prof.abstain[m] = ux(rng2);
      prof.cutoff[m] = prof.abstain[m] * q.g[m];
    }
    for (int m = 1; m <= q.n; ++m) {
      auto [mu, tgt] = mu_and_target(q, prof, {1, m});
      double best = 2.0;
      int best_m = -1;
      for (int mp = m; mp <= q.n; ++mp) {
        const double fail = 1.0 - alpha_closed_form(q, prof, {2, mp});
        if (fail < best - 1e-15) {
          best = fail;
          best_m = mp;
        }
      }
      CHECK(std::abs(mu - best) <= 1e-12);
      CHECK(tgt.m == best_m);
      CHECK(tgt.camp == 2);
    }
  }
}

TEST_CASE("whataboutism frequency: frozen value, breakdown clamp, near-one theta") {
  const ModelParams ref = testutil::reference_params();
  CHECK(rel_err(whataboutism_frequency(ref, 2), 0.855625) <= 1e-12);
  CHECK(whataboutism_frequency(ref, 1) == 1.0);  // theta_1 < 0 clamps at 1

  // oracle: square of alpha at the stable profile
  const EquilibriumProfile stable = pspe_profile(ref, 2);
  const double a = alpha_closed_form(ref, stable, {1, 2});
  CHECK(rel_err(whataboutism_frequency(ref, 2), a * a) <= 1e-12);

  ModelParams hot;  // theta close to 1: frequency close to 0
  hot.n = 1;
  hot.lambda = 0.49;
  hot.g = {1.005};
  hot.b = {1.99};
  validate(hot);
  CHECK(whataboutism_frequency(hot, 1) > 0.0);
  CHECK(whataboutism_frequency(hot, 1) < 0.01);
}

TEST_CASE("single-level cutoff: frozen value, boundary, root oracle") {
  CHECK(rel_err(two_state_cutoff(1.2, 1.9, 0.25), 0.030535714285714284) <= 1e-12);
  // matches the stable cutoff of the full reference solve at m=2
  const EquilibriumProfile stable = pspe_profile(testutil::reference_params(), 2);
  CHECK(rel_err(two_state_cutoff(1.2, 1.9, 0.25), stable.cutoff[1]) <= 1e-12);

  CHECK(two_state_cutoff(1.1875, 1.5, 0.25) == 0.0);  // theta exactly zero
  CHECK(two_state_cutoff(1.9, 1.1, 0.25) == 0.0);     // theta negative

  // indifference-equation oracle: the positive root of
  //   v - v/(2g) - (lambda*b/2)*(v + lambda*b*v)/(v + lambda*b*g)
  std::mt19937_64 rng2(0xC0FFEE11ULL);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int positive_cases = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const double g = 1.01 + 0.98 * u01(rng2);
    const double b = 1.01 + 0.98 * u01(rng2);
    const double lambda = 0.02 + 0.46 * u01(rng2);
    const double theta = lambda * b - 2.0 * g + 2.0;
    const double v = two_state_cutoff(g, b, lambda);
    CHECK((v > 0.0) == (g < 1.0 + 0.5 * b * lambda));  // same predicate
    if (theta > 1e-3) {
      ++positive_cases;
      const double lb = lambda * b;
      auto f = [&](double t) {
        return t - t / (2.0 * g) - 0.5 * lb * (t + lb * t) / (t + lb * g);
      };
      const double root = testutil::bisect(f, 1e-9, g);
      CHECK(std::abs(v - root) <= 1e-9);
    }
  }
  CHECK(positive_cases > 20);
}

TEST_CASE("stats bundle matches the per-level closed forms") {
  const ModelParams ref = testutil::reference_params();
  const EquilibriumProfile stable = pspe_profile(ref, 2);
  const WhataboutismStats st = whataboutism_stats(ref, stable);
  REQUIRE(st.alpha.size() == 2);
  CHECK(st.alpha[1] == alpha_closed_form(ref, stable, {1, 2}));
  CHECK(st.mu[1] == mu_and_target(ref, stable, {1, 2}).first);
  CHECK(st.frequency[0] == 1.0);
  CHECK(rel_err(st.frequency[1], 0.855625) <= 1e-12);
  CHECK(st.mu[0] == 0.0);
}

TEST_CASE("counterfactual scaling and polarization signs") {
  const ModelParams ref = testutil::reference_params();

  const ModelParams q = scale_params(ref, 1.01);
  CHECK(!q.cbar);  // scaling is about tastes, not the cost microfoundation
  CHECK(q.g[1] == 1.2 * 1.01);
  const EquilibriumProfile scaled = pspe_profile(validate(q), 2);
  CHECK(rel_err(scaled.abstain[1], 0.018782347261235944) <= 1e-12);
  CHECK(scaled.abstain[1] < 0.025446428571428573);  // polarization cuts abstention

  // in-test recomputation of the scaled closed form
  const double lam = 0.25, gs = 1.2 * 1.01, bs = 1.9 * 1.01;
  const double th = lam * bs - 2.0 * gs + 2.0;
  const double cs = lam * bs / (2.0 * gs - 1.0);
  CHECK(rel_err(scaled.abstain[1], cs * th) <= 1e-12);

  const auto [sx, sf] = polarization_response(ref, 2, 1.0);
  CHECK(sx == Sign::negative);
  CHECK(sf == Sign::positive);

  const auto [zx, zf] = polarization_response(ref, 1, 1.0);
  CHECK(zx == Sign::zero);
  CHECK(zf == Sign::zero);

  CHECK_THROWS_AS(polarization_response(ref, 2, 1.2), ScaleOutOfRange);
}

TEST_CASE("equilibrium identities across random parameter sets") {
  std::mt19937_64 rng(0x1DEA15D5ULL);
  for (int trial = 0; trial < 100; ++trial) {
    const ModelParams q = testutil::random_params_interior(rng);
    const DerivedQuantities d = derive(q);
    const BenchmarkSolution bench = solve_benchmark(q);
    const PspeFamily fam = enumerate_pspe(q);
    for (const EquilibriumProfile& prof : fam.profiles) {
      for (int m = prof.mstar; m <= q.n; ++m) {
        const double x = prof.abstain[m - 1];
        // fixed-point identity and the theta characterization
        CHECK(std::abs(d.c[m - 1] * phi(q, m, x) - x) <= 1e-12);
        CHECK(std::abs(phi(q, m, x) - d.theta[m - 1]) <= 1e-12);
        // stable abstain = benchmark abstain shrunk by theta
        CHECK(rel_err(x, bench.abstain[m - 1] * d.theta[m - 1]) <= 1e-12);
        CHECK(x < bench.abstain[m - 1]);
      }
      // abstention never decreases with sensitivity
      for (int m = 1; m < q.n; ++m)
        CHECK(prof.abstain[m - 1] <= prof.abstain[m] + 1e-15);
    }
  }
}

TEST_CASE("local responses of the stable abstain share at fixed level") {
  std::mt19937_64 rng(0xFEEDBEEFULL);
  const double eps = 1e-6;
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const ModelParams q = testutil::random_params_interior(rng);
    const DerivedQuantities d = derive(q);
    for (int m = d.M; m <= q.n; ++m) {
      const double base = pspe_profile(q, d.M).abstain[m - 1];

      ModelParams up = q;
      up.lambda += eps;
      CHECK(pspe_profile(validate(up), derive(up).M).abstain[m - 1] > base);

      up = q;
      up.b[m - 1] += eps;
      CHECK(pspe_profile(validate(up), derive(up).M).abstain[m - 1] > base);

      up = q;
      up.g[m - 1] += eps;
      CHECK(pspe_profile(validate(up), derive(up).M).abstain[m - 1] < base);
      ++checked;
    }
  }
  CHECK(checked > 30);
}
