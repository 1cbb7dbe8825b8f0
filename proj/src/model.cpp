#include "wag/model.hpp"

#include <cmath>

namespace wag {

const ModelParams& validate(const ModelParams& p) {
  if (p.n < 1) throw RangeViolation("n: must be a positive integer");
  if (static_cast<int>(p.g.size()) != p.n)
    throw ValidationError("g: expected " + std::to_string(p.n) + " entries, got " +
                          std::to_string(p.g.size()));
  if (static_cast<int>(p.b.size()) != p.n)
    throw ValidationError("b: expected " + std::to_string(p.n) + " entries, got " +
                          std::to_string(p.b.size()));
  if (!(p.lambda > 0.0 && p.lambda < 0.5))
    throw RangeViolation("lambda: must lie strictly inside (0, 1/2)");
  for (int m = 1; m <= p.n; ++m) {
    if (!(p.g_at(m) > 1.0 && p.g_at(m) < 2.0))
      throw RangeViolation("g[" + std::to_string(m) + "]: must lie strictly inside (1, 2)");
    if (!(p.b_at(m) > 1.0 && p.b_at(m) < 2.0))
      throw RangeViolation("b[" + std::to_string(m) + "]: must lie strictly inside (1, 2)");
  }
  for (int m = 1; m < p.n; ++m) {
    if (!(p.g_at(m) > p.g_at(m + 1)))
      throw OrderingViolation("g: must be strictly decreasing in m (g[" +
                              std::to_string(m) + "] <= g[" + std::to_string(m + 1) + "])");
    if (!(p.b_at(m) < p.b_at(m + 1)))
      throw OrderingViolation("b: must be strictly increasing in m (b[" +
                              std::to_string(m) + "] >= b[" + std::to_string(m + 1) + "])");
  }
  // follows from the bounds above, but the product is load-bearing downstream
  for (int m = 1; m <= p.n; ++m)
    if (!(p.lambda_b(m) < 1.0))
      throw RangeViolation("lambda*b[" + std::to_string(m) + "]: must stay below 1");
  if (p.cbar) {
    if (!(*p.cbar > p.b_at(p.n)))
      throw MicrofoundationMismatch("cbar: must exceed b[n]");
    const double implied = 1.0 / (2.0 * *p.cbar);
    if (std::abs(p.lambda - implied) > 1e-12 * implied)
      throw MicrofoundationMismatch("cbar: lambda != 1/(2*cbar) beyond 1e-12 relative");
  }
  return p;
}

DerivedQuantities derive(const ModelParams& p) {
  DerivedQuantities d;
  d.c.resize(p.g.size());
  d.theta.resize(p.g.size());
  d.M = p.n + 1;
  for (int m = 1; m <= p.n; ++m) {
    const double lb = p.lambda_b(m);
    d.c[m - 1] = lb / (2.0 * p.g_at(m) - 1.0);
    d.theta[m - 1] = lb - 2.0 * p.g_at(m) + 2.0;
    if (std::abs(d.theta[m - 1]) < 1e-12) d.near_zero_theta.push_back(m);
  }
  for (int m = 1; m <= p.n; ++m) {
    if (d.theta[m - 1] > 0.0) {  // strict: an exact zero stays out of M
      d.M = m;
      break;
    }
  }
  return d;
}

double phi(const ModelParams& p, int m, double z) {
  const double lb = p.lambda_b(m);
  return (lb * z + z) / (lb + z);
}

double lambda_from_cbar(double cbar, double b_max) {
  if (!(cbar > b_max))
    throw CbarTooSmall("cbar: must exceed the largest disutility bound b[n]");
  return 1.0 / (2.0 * cbar);
}

}  // namespace wag
