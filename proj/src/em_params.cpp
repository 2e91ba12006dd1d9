#include "magskin/em_params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "magskin/errors.hpp"

namespace magskin
{

namespace
{

void require_positive(const char *name, double v)
{
  if (!(v > 0.0) || !std::isfinite(v))
  {
    throw InvalidParameter(name, "must be finite and > 0, got " + std::to_string(v));
  }
}

}  // namespace

void PhysicalConfig::validate() const
{
  require_positive("omega", omega);
  require_positive("eps0", eps0);
  require_positive("mu_plus", mu_plus);
  require_positive("mu_minus", mu_minus);
  require_positive("sigma_plus", sigma_plus);
  require_positive("sigma_minus", sigma_minus);
}

PhysicalConfig PhysicalConfig::with_eps(double eps) const
{
  require_positive("eps", eps);
  PhysicalConfig out = *this;
  out.mu_minus = mu_plus / (eps * eps);
  return out;
}

double phi(double delta)
{
  if (!(delta > 0.0) || !std::isfinite(delta))
  {
    throw DomainError("phi: delta must be finite and > 0");
  }
  const double d2 = delta * delta;
  const double half_theta = 0.5 * std::atan2(1.0, d2);
  // (1 + delta^4)^{1/4} = sqrt(hypot(1, delta^2)) avoids overflow of delta^4.
  return 1.0 / (std::numbers::sqrt2 * std::sqrt(std::hypot(1.0, d2)) * std::sin(half_theta));
}

double classical_skin_depth(double omega, double mu, double sigma)
{
  return std::sqrt(2.0 / (omega * mu * sigma));
}

cplx leontovich_factor(const PhysicalConfig &cfg)
{
  cfg.validate();
  return std::polar(std::sqrt(cfg.mu_minus * cfg.omega / cfg.sigma_minus), -std::numbers::pi / 4.0);
}

DerivedParams derive_params(const PhysicalConfig &cfg)
{
  cfg.validate();
  DerivedParams dp;
  dp.mu_r = cfg.mu_minus / cfg.mu_plus;
  dp.eps_small = 1.0 / std::sqrt(dp.mu_r);
  dp.delta_plus = std::sqrt(cfg.omega * cfg.eps0 / cfg.sigma_plus);
  dp.delta_minus = std::sqrt(cfg.omega * cfg.eps0 / cfg.sigma_minus);
  dp.kappa_plus = cfg.omega * std::sqrt(cfg.eps0 * cfg.mu_plus);

  const double dm2 = dp.delta_minus * dp.delta_minus;
  const double dp2 = dp.delta_plus * dp.delta_plus;
  dp.theta = std::atan2(1.0, dm2);

  // kappa_plus (1 + delta^-4)^{1/4} exp(i (theta - pi) / 2), with the phase written as
  // -i exp(i theta / 2) so the real part keeps full relative accuracy for small theta.
  const double modulus = dp.kappa_plus * std::sqrt(std::hypot(1.0, 1.0 / dm2));
  dp.lambda = modulus * cplx(std::sin(0.5 * dp.theta), -std::cos(0.5 * dp.theta));

  dp.alpha_plus = cplx(1.0, 1.0 / dp2);
  dp.alpha_minus = cplx(1.0, 1.0 / dm2);
  dp.ell = classical_skin_depth(cfg.omega, cfg.mu_minus, cfg.sigma_minus);
  dp.phi_value = phi(dp.delta_minus);
  return dp;
}

}  // namespace magskin
