#pragma once

#include <complex>

namespace magskin
{

using cplx = std::complex<double>;

// Material and frequency data, all SI.
struct PhysicalConfig
{
  double omega = 1.0;        // rad/s
  double eps0 = 1.0;         // F/m
  double mu_plus = 1.0;      // H/m, exterior region
  double mu_minus = 1.0;     // H/m, conductor
  double sigma_plus = 1.0;   // S/m
  double sigma_minus = 1.0;  // S/m

  // Throws InvalidParameter naming the first non-positive (or non-finite) field.
  void validate() const;

  // Same config with mu_minus = mu_plus / eps^2.
  PhysicalConfig with_eps(double eps) const;
};

struct DerivedParams
{
  double mu_r = 1.0;
  double eps_small = 1.0;
  double delta_plus = 0.0;
  double delta_minus = 0.0;
  double kappa_plus = 0.0;  // 1/m
  double theta = 0.0;
  cplx lambda{};            // carries the 1/m of kappa_plus
  cplx alpha_plus{};
  cplx alpha_minus{};
  double ell = 0.0;         // m
  double phi_value = 0.0;

  // Decay rate in unstretched depth: lambda * sqrt(mu_r) = lambda / eps.
  cplx physical_decay_rate() const { return lambda / eps_small; }

  // ell * phi, the leading-order skin depth.
  double ell_phi() const { return ell * phi_value; }
};

DerivedParams derive_params(const PhysicalConfig &cfg);

// (1/sqrt 2) (1 + delta^4)^{-1/4} / sin(arctan(delta^-2) / 2).
double phi(double delta);

// sqrt(2 / (omega mu sigma)).
double classical_skin_depth(double omega, double mu, double sigma);

// sqrt(mu_minus omega / sigma_minus) exp(-i pi/4), in ohms.
cplx leontovich_factor(const PhysicalConfig &cfg);

}  // namespace magskin
