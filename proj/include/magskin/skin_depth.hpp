#pragma once

#include <functional>

#include "magskin/em_params.hpp"
#include "magskin/surface_geometry.hpp"

namespace magskin
{

//
// Field modulus along the inward normal at a fixed surface point. length_scale sets the
// scan step (length_scale / 50); max_depth defaults to 10 length scales when left at 0.
//
struct DecayTrace
{
  std::function<double(double)> sampler;
  double length_scale = 0.0;
  double max_depth = 0.0;
};

// Smallest h > 0 with sampler(h) = sampler(0) / e. Throws NoRootError when the modulus
// stays above the threshold up to max_depth, DomainError when sampler(0) <= 0.
double skin_depth_numeric(const DecayTrace &trace);

// ell phi (1 + H ell phi).
double skin_depth_asymptotic(const DerivedParams &dp, double mean_curvature);

struct SkinDepthReport
{
  double numeric = 0.0;
  double asymptotic = 0.0;
  double classical = 0.0;
  double eddy2d = 0.0;             // ell (1 + kappa ell / 2) with kappa = 2H
  double high_conductivity = 0.0;  // ell0 (1 + H ell0), ell0 = ell at mu_minus = mu_plus
};

// All closed-form entries; numeric is filled from the leading-order profile
// |E0| exp(-Re(lambda) y3 / eps), whose root is exactly ell phi.
SkinDepthReport comparison_report(const DerivedParams &dp, const Surface &s);

}  // namespace magskin
