#pragma once
// Shared test helpers: the frozen reference parameter set, seeded random
// parameter generators, and small numeric oracles (quadrature, bisection,
// chi-squared tail) kept independent of the library's own formulas.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "wag/model.hpp"

namespace testutil {

// Reference set used across the suites: n=2, lambda=1/4, g=(1.8,1.2),
// b=(1.1,1.9), cbar=2. Level 1 breaks down (theta<0), level 2 is interior.
inline wag::ModelParams reference_params() {
  wag::ModelParams p;
  p.n = 2;
  p.lambda = 0.25;
  p.g = {1.8, 1.2};
  p.b = {1.1, 1.9};
  p.cbar = 2.0;
  return p;
}

inline wag::ModelParams breakdown_params() {  // every theta negative
  wag::ModelParams p;
  p.n = 2;
  p.lambda = 0.25;
  p.g = {1.9, 1.8};
  p.b = {1.05, 1.1};
  return p;
}

// Any valid parameter set; |theta| is kept away from 0 so fixed-point
// iterations contract at a usable rate.
inline wag::ModelParams random_params(std::mt19937_64& rng, int n_min = 1, int n_max = 4,
                                      double theta_margin = 0.01) {
  std::uniform_int_distribution<int> pick_n(n_min, n_max);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (;;) {
    wag::ModelParams p;
    p.n = pick_n(rng);
    p.lambda = 0.02 + 0.46 * u01(rng);
    std::vector<double> g(p.n), b(p.n);
    for (double& v : g) v = 1.0 + 0.98 * u01(rng) + 0.005;
    for (double& v : b) v = 1.0 + 0.98 * u01(rng) + 0.005;
    std::sort(g.begin(), g.end(), std::greater<>());
    std::sort(b.begin(), b.end());
    p.g = g;
    p.b = b;
    bool ok = true;
    for (int i = 0; i + 1 < p.n; ++i)
      if (g[i] - g[i + 1] < 1e-4 || b[i + 1] - b[i] < 1e-4) ok = false;
    for (int i = 0; i < p.n && ok; ++i) {
      const double theta = p.lambda * p.b[i] - 2.0 * p.g[i] + 2.0;
      if (std::abs(theta) < theta_margin) ok = false;
    }
    if (ok) return p;
  }
}

// Valid set with theta_n > 0 guaranteed (so at least two equilibrium
// profiles exist) and margins wide enough to scale by 1 +- 1e-5.
inline wag::ModelParams random_params_interior(std::mt19937_64& rng, int n_min = 1,
                                               int n_max = 4) {
  std::uniform_int_distribution<int> pick_n(n_min, n_max);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (;;) {
    wag::ModelParams p;
    p.n = pick_n(rng);
    p.lambda = 0.10 + 0.35 * u01(rng);
    std::vector<double> b(p.n);
    for (double& v : b) v = 1.10 + 0.85 * u01(rng);
    std::sort(b.begin(), b.end());
    p.b = b;
    // smallest g first: theta_n = lambda*b_n - 2(g_n - 1) stays positive
    const double bn = b[p.n - 1];
    const double gn = 1.01 + (0.05 + 0.85 * u01(rng)) * (p.lambda * bn / 2.0 - 0.012);
    if (!(gn > 1.005 && gn < 1.97)) continue;
    std::vector<double> g(p.n);
    g[p.n - 1] = gn;
    for (int i = 0; i + 1 < p.n; ++i) g[i] = gn + (1.97 - gn) * u01(rng);
    std::sort(g.begin(), g.end(), std::greater<>());
    p.g = g;
    bool ok = p.lambda * bn - 2.0 * gn + 2.0 > 1e-3;
    for (int i = 0; i + 1 < p.n; ++i)
      if (g[i] - g[i + 1] < 1e-4) ok = false;
    for (int i = 0; i + 1 < p.n; ++i)
      if (b[i + 1] - b[i] < 1e-4) ok = false;
    for (int i = 0; i < p.n && ok; ++i) {
      const double theta = p.lambda * p.b[i] - 2.0 * p.g[i] + 2.0;
      if (std::abs(theta) < 1e-3) ok = false;  // keep the M boundary crisp
    }
    if (ok) return p;
  }
}

// Composite Simpson on [a, b].
template <typename F>
double simpson(F&& f, double a, double b, int intervals) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Root of f on [lo, hi] with a sign change; plain bisection.
template <typename F>
double bisect(F&& f, double lo, double hi, int iters = 200) {
  double flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if ((flo < 0.0) == (fmid < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Regularized upper incomplete gamma Q(a, x); series for x < a+1, continued
// fraction otherwise. Good to ~1e-12, plenty for test p-values.
inline double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) return 1.0;
  if (x == 0.0) return 1.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    double term = 1.0 / a, sum = term;
    for (int n = 1; n < 500; ++n) {
      term *= x / (a + n);
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - lg);
  }
  double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - lg) * h;
}

// p-value of a chi-squared statistic with df degrees of freedom.
inline double chi_squared_pvalue(double stat, int df) {
  return gamma_q(0.5 * df, 0.5 * stat);
}

}  // namespace testutil
