#include "magskin/skin_depth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "magskin/errors.hpp"

namespace magskin
{

double skin_depth_numeric(const DecayTrace &trace)
{
  if (!trace.sampler)
  {
    throw DomainError("skin_depth_numeric: no sampler");
  }
  if (!(trace.length_scale > 0.0))
  {
    throw DomainError("skin_depth_numeric: length scale must be > 0");
  }
  const double s0 = trace.sampler(0.0);
  if (!(s0 > 0.0))
  {
    throw DomainError("skin_depth_numeric: field vanishes at the surface");
  }
  const double max_depth = trace.max_depth > 0.0 ? trace.max_depth : 10.0 * trace.length_scale;
  const double target = s0 * std::exp(-1.0);
  auto f = [&](double h) { return trace.sampler(h) - target; };

  const double step = trace.length_scale / 50.0;
  double lo = 0.0;
  double hi = 0.0;
  bool found = false;
  for (int i = 1;; ++i)
  {
    const double h = std::min(i * step, max_depth);
    const double v = f(h);
    if (v == 0.0)
    {
      return h;
    }
    if (v < 0.0)
    {
      lo = h == max_depth ? (i - 1) * step : h - step;
      hi = h;
      found = true;
      break;
    }
    if (h >= max_depth)
    {
      break;
    }
  }
  if (!found)
  {
    throw NoRootError("skin_depth_numeric: modulus stays above 1/e of its surface value up to depth " +
                      std::to_string(max_depth));
  }

  // Plain bisection down to adjacent doubles; f(lo) > 0 >= f(hi) throughout.
  for (int it = 0; it < 200; ++it)
  {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
    {
      break;
    }
    const double v = f(mid);
    if (v == 0.0)
    {
      return mid;
    }
    (v > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double skin_depth_asymptotic(const DerivedParams &dp, double mean_curvature)
{
  const double lp = dp.ell_phi();
  return lp * (1.0 + mean_curvature * lp);
}

SkinDepthReport comparison_report(const DerivedParams &dp, const Surface &s)
{
  const double H = s.mean_curvature();
  SkinDepthReport r;
  const double decay = dp.lambda.real() / dp.eps_small;
  DecayTrace plane;
  plane.sampler = [decay](double h) { return std::exp(-decay * h); };
  plane.length_scale = dp.ell_phi();
  r.numeric = skin_depth_numeric(plane);
  r.asymptotic = skin_depth_asymptotic(dp, H);
  r.classical = dp.ell;
  const double kappa = 2.0 * H;
  r.eddy2d = dp.ell * (1.0 + 0.5 * kappa * dp.ell);
  // ell scales like mu^{-1/2}: ell(mu_plus, sigma_minus) = ell * sqrt(mu_r).
  const double ell0 = dp.ell * std::sqrt(dp.mu_r);
  r.high_conductivity = ell0 * (1.0 + H * ell0);
  return r;
}

}  // namespace magskin
