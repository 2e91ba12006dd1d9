#include "magskin/ibc.hpp"

#include <cmath>
#include <string>

#include "magskin/errors.hpp"

namespace magskin
{

namespace
{

constexpr cplx I{0.0, 1.0};

}  // namespace

TangentVector ImpedanceOperator::apply(const Surface &s, const TangentVector &v) const
{
  TangentVector out = scalar_part * v;
  if (curvature_part != cplx(0.0, 0.0))
  {
    out += curvature_part * mean_minus_curvature(s, v);
  }
  return out;
}

ImpedanceOperator impedance_operator(int k, const PhysicalConfig &cfg)
{
  if (k < 0 || k > 2)
  {
    throw UnsupportedError("impedance_operator: order " + std::to_string(k) + " not in {0, 1, 2}");
  }
  cfg.validate();
  ImpedanceOperator op;
  op.order = k;
  if (k == 0)
  {
    return op;
  }
  const double ratio = cfg.sigma_minus / cfg.omega;
  // (1/sqrt mu-) (eps0^2 + (sigma-/omega)^2)^{1/4} exp(i/2 arctan(sigma- / (omega eps0)))
  const double modulus = std::sqrt(std::hypot(cfg.eps0, ratio) / cfg.mu_minus);
  op.scalar_part = std::polar(modulus, 0.5 * std::atan2(ratio, cfg.eps0));
  if (k == 2)
  {
    op.curvature_part = 1.0 / (I * cfg.omega * cfg.mu_minus);
  }
  return op;
}

double consistency_with_lambda(const ImpedanceOperator &op, const PhysicalConfig &cfg)
{
  const DerivedParams dp = derive_params(cfg);
  const cplx rhs = -dp.eps_small * dp.lambda / (I * cfg.omega * cfg.mu_plus);
  return std::abs(op.scalar_part - rhs) / std::abs(op.scalar_part);
}

double leontovich_gap(const PhysicalConfig &cfg)
{
  const cplx d1 = impedance_operator(1, cfg).scalar_part;
  const cplx lf = leontovich_factor(cfg);
  return std::abs(1.0 / d1 - lf) / std::abs(lf);
}

std::vector<LeontovichRow> leontovich_limit_check(const PhysicalConfig &base,
                                                  const std::vector<double> &sigma_minus_values)
{
  std::vector<LeontovichRow> rows;
  rows.reserve(sigma_minus_values.size());
  for (double sigma : sigma_minus_values)
  {
    PhysicalConfig cfg = base;
    cfg.sigma_minus = sigma;
    LeontovichRow row;
    row.sigma_minus = sigma;
    row.delta_minus = derive_params(cfg).delta_minus;
    row.gap = leontovich_gap(cfg);
    row.outside_regime = row.delta_minus >= 1.0;
    rows.push_back(row);
  }
  return rows;
}

RobinCoefficient robin_coefficient(int k, int mode, const Surface &s, const PhysicalConfig &cfg)
{
  const ImpedanceOperator op = impedance_operator(k, cfg);
  // The TM field is axial: the second principal direction.
  const double kappa_axial = s.principal_curvatures()[1];
  const cplx bracket = op.scalar_part + op.curvature_part * (s.mean_curvature() - kappa_axial);
  RobinCoefficient out;
  out.mode = mode;
  out.gamma = static_cast<double>(kRobinSign) * I * cfg.omega * cfg.mu_plus * bracket;
  return out;
}

}  // namespace magskin
