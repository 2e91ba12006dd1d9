#pragma once

#include <string>
#include <vector>

#include "magskin/reference_solver.hpp"

namespace magskin
{

struct ConvergenceFit
{
  std::vector<double> x;
  std::vector<double> error;
  double slope = 0.0;
  double intercept = 0.0;  // log(error) = intercept + slope log(x)
  double r_squared = 0.0;
  // local_slopes[i] is the slope between points i and i+1 (sorted by x).
  std::vector<double> local_slopes;
  bool conclusive = false;  // >= 4 points over >= 2 decades with r^2 >= 0.98
  bool rejected = false;
  std::string diagnostic;
};

// Least-squares fit of log(error) against log(x); points are sorted by x first.
// Throws DomainError for fewer than two points or non-positive data.
ConvergenceFit fit_power_law(std::vector<double> x, std::vector<double> error);

// Pairwise slopes log(e_i/e_{i-1}) / log(x_i/x_{i-1}) in the given order; NaN for i = 0.
std::vector<double> local_slopes(const std::vector<double> &x, const std::vector<double> &error);

enum class StudyKind
{
  Ibc,
  TruncatedExpansion
};

const char *to_string(StudyKind kind);

struct StudyPoint
{
  int mode = 0;
  double eps = 0.0;
  double mu_r = 0.0;
  ErrorNorms error;
};

// Shell error of the IBC (order k) or truncated expansion (order m) against the exact
// solution, for one mode over the eps list (in the given order).
std::vector<StudyPoint> study_points(const CylinderBenchmark &base, StudyKind kind, int order,
                                     const std::vector<double> &eps_list);

// Benchmark `base` with mu_minus = mu_plus / eps^2.
CylinderBenchmark with_eps(const CylinderBenchmark &base, double eps);

struct StudyFits
{
  ConvergenceFit e;
  ConvergenceFit h;
  ConvergenceFit total;
};

// Fits error_E, error_H and their sum against eps. A fit whose errors do not decrease
// strictly with eps is marked rejected with a diagnostic.
StudyFits fit_study(const std::vector<StudyPoint> &points);

StudyFits convergence_study(const CylinderBenchmark &base, StudyKind kind, int order,
                            const std::vector<double> &eps_list);

// n log-spaced values from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, int n);

}  // namespace magskin
