#pragma once

#include <functional>

namespace magskin
{

struct QuadratureResult
{
  double value = 0.0;
  int panels = 0;
  double relative_change = 0.0;
};

// 40-point Gauss-Legendre on `panels` equal sub-intervals of [a, b].
double gauss_panels(const std::function<double(double)> &f, double a, double b, int panels);

// Doubles the panel count until two successive results agree to rel_tol.
// Throws CheckFailed when max_panels is reached first.
QuadratureResult integrate_stable(const std::function<double(double)> &f, double a, double b,
                                  double rel_tol = 1e-12, int max_panels = 4096);

}  // namespace magskin
