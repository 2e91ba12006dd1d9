#pragma once

#include <complex>
#include <vector>

#include "magskin/em_params.hpp"
#include "magskin/surface_geometry.hpp"

namespace magskin
{

// Sign relating the impedance condition to the Robin form u' + gamma u = 0 for TM
// cylinder modes (E axial, normal pointing into the conductor). Fixed by the
// calibration run described in README.md.
inline constexpr int kRobinSign = +1;

// D_k: scalar_part * v + curvature_part * (H - C) v.
struct ImpedanceOperator
{
  int order = 0;
  cplx scalar_part{};
  cplx curvature_part{};

  TangentVector apply(const Surface &s, const TangentVector &v) const;
};

// k in {0, 1, 2}; anything else throws UnsupportedError.
ImpedanceOperator impedance_operator(int k, const PhysicalConfig &cfg);

// |scalar_part - (-eps lambda / (i omega mu_plus))| / |scalar_part|.
double consistency_with_lambda(const ImpedanceOperator &op, const PhysicalConfig &cfg);

// |1/scalar_part(D1) - leontovich_factor| / |leontovich_factor|.
double leontovich_gap(const PhysicalConfig &cfg);

struct LeontovichRow
{
  double sigma_minus = 0.0;
  double delta_minus = 0.0;
  double gap = 0.0;
  bool outside_regime = false;  // delta_minus >= 1
};

std::vector<LeontovichRow> leontovich_limit_check(const PhysicalConfig &base,
                                                  const std::vector<double> &sigma_minus_values);

struct RobinCoefficient
{
  int mode = 0;
  cplx gamma{};
};

// gamma = kRobinSign i omega mu_plus (scalar_part + curvature_part (H - kappa_E)) where
// kappa_E is the principal curvature along the axial field direction (0 on the cylinder).
RobinCoefficient robin_coefficient(int k, int mode, const Surface &s, const PhysicalConfig &cfg);

}  // namespace magskin
