#include "magskin/quadrature.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "magskin/errors.hpp"

namespace magskin
{

double gauss_panels(const std::function<double(double)> &f, double a, double b, int panels)
{
  using rule = boost::math::quadrature::gauss<double, 40>;
  const double w = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p)
  {
    const double lo = a + p * w;
    const double hi = (p + 1 == panels) ? b : lo + w;
    sum += rule::integrate(f, lo, hi);
  }
  return sum;
}

QuadratureResult integrate_stable(const std::function<double(double)> &f, double a, double b,
                                  double rel_tol, int max_panels)
{
  QuadratureResult r;
  if (a == b)
  {
    r.panels = 1;
    return r;
  }
  double prev = gauss_panels(f, a, b, 1);
  for (int panels = 2; panels <= max_panels; panels *= 2)
  {
    const double cur = gauss_panels(f, a, b, panels);
    const double change = std::abs(cur - prev);
    if (change <= rel_tol * std::abs(cur) || change <= std::numeric_limits<double>::min())
    {
      r.value = cur;
      r.panels = panels;
      r.relative_change = cur != 0.0 ? change / std::abs(cur) : 0.0;
      return r;
    }
    prev = cur;
  }
  throw CheckFailed("integrate_stable: no agreement to " + std::to_string(rel_tol) + " with " +
                    std::to_string(max_panels) + " panels");
}

}  // namespace magskin
