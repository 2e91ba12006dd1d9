#include "magskin/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "magskin/errors.hpp"

namespace magskin
{

std::vector<double> local_slopes(const std::vector<double> &x, const std::vector<double> &error)
{
  std::vector<double> out(x.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 1; i < x.size(); ++i)
  {
    out[i] = std::log(error[i] / error[i - 1]) / std::log(x[i] / x[i - 1]);
  }
  return out;
}

ConvergenceFit fit_power_law(std::vector<double> x, std::vector<double> error)
{
  if (x.size() != error.size() || x.size() < 2)
  {
    throw DomainError("fit_power_law: need at least two (x, error) pairs");
  }
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  ConvergenceFit fit;
  for (std::size_t i : order)
  {
    if (!(x[i] > 0.0) || !(error[i] > 0.0))
    {
      throw DomainError("fit_power_law: x and error must be positive");
    }
    fit.x.push_back(x[i]);
    fit.error.push_back(error[i]);
  }

  const std::size_t n = fit.x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    mx += std::log(fit.x[i]);
    my += std::log(fit.error[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    const double dx = std::log(fit.x[i]) - mx;
    const double dy = std::log(fit.error[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0)
  {
    throw DomainError("fit_power_law: all x values coincide");
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;

  const auto ls = local_slopes(fit.x, fit.error);
  fit.local_slopes.assign(ls.begin() + 1, ls.end());

  const double decades = std::log10(fit.x.back() / fit.x.front());
  fit.conclusive = n >= 4 && decades >= 2.0 - 1e-9 && fit.r_squared >= 0.98;
  return fit;
}

const char *to_string(StudyKind kind)
{
  return kind == StudyKind::Ibc ? "ibc" : "expansion";
}

CylinderBenchmark with_eps(const CylinderBenchmark &base, double eps)
{
  CylinderBenchmark b = base;
  b.cfg = base.cfg.with_eps(eps);
  return b;
}

std::vector<StudyPoint> study_points(const CylinderBenchmark &base, StudyKind kind, int order,
                                     const std::vector<double> &eps_list)
{
  std::vector<StudyPoint> points;
  points.reserve(eps_list.size());
  for (double eps : eps_list)
  {
    const CylinderBenchmark b = with_eps(base, eps);
    const ModalSolution exact = solve_exact(b);
    const ModalSolution model =
        kind == StudyKind::Ibc ? solve_ibc(b, order) : truncated_expansion(b, order);
    StudyPoint p;
    p.mode = b.mode;
    p.eps = eps;
    p.mu_r = b.cfg.mu_minus / b.cfg.mu_plus;
    p.error = shell_l2_error(exact, model);
    points.push_back(p);
  }
  return points;
}

namespace
{

ConvergenceFit fit_checked(const std::vector<double> &eps, const std::vector<double> &err,
                           const char *label)
{
  ConvergenceFit fit = fit_power_law(eps, err);
  for (std::size_t i = 1; i < fit.x.size(); ++i)
  {
    if (!(fit.error[i] > fit.error[i - 1]))
    {
      std::ostringstream msg;
      msg.precision(17);
      msg << label << " error does not decrease with eps: " << fit.error[i - 1] << " at eps "
          << fit.x[i - 1] << " vs " << fit.error[i] << " at eps " << fit.x[i];
      fit.rejected = true;
      fit.conclusive = false;
      fit.diagnostic = msg.str();
      break;
    }
  }
  return fit;
}

}  // namespace

StudyFits fit_study(const std::vector<StudyPoint> &points)
{
  std::vector<double> eps, e, h, t;
  for (const StudyPoint &p : points)
  {
    eps.push_back(p.eps);
    e.push_back(p.error.e);
    h.push_back(p.error.h);
    t.push_back(p.error.total());
  }
  return {fit_checked(eps, e, "E"), fit_checked(eps, h, "H"), fit_checked(eps, t, "E+H")};
}

StudyFits convergence_study(const CylinderBenchmark &base, StudyKind kind, int order,
                            const std::vector<double> &eps_list)
{
  return fit_study(study_points(base, kind, order, eps_list));
}

std::vector<double> log_space(double lo, double hi, int n)
{
  if (n < 1 || !(lo > 0.0) || !(hi > 0.0))
  {
    throw DomainError("log_space: need n >= 1 and positive bounds");
  }
  std::vector<double> out(n);
  if (n == 1)
  {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; i < n; ++i)
  {
    out[i] = i == n - 1 ? hi : std::pow(10.0, a + (b - a) * i / (n - 1));
  }
  return out;
}

}  // namespace magskin
