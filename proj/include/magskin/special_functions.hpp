#pragma once

#include <complex>

namespace magskin::special
{

using cplx = std::complex<double>;

enum class Scaling
{
  Unscaled,
  ExpScaled
};

//
// Result of a cylinder-function evaluation at integer order m and complex argument z.
//
// When scaling == ExpScaled the true value is value * exp(exponent) (the derivative
// shares the exponent). The exponent carries the exponential growth that would overflow
// a double: |Im z| for J_m, i z for H_m^(1), plus a real shift when the order alone
// pushes the magnitude outside the representable range.
//
struct BesselEval
{
  int order = 0;
  cplx argument{};
  cplx value{};
  cplx derivative{};
  Scaling scaling = Scaling::Unscaled;
  cplx exponent{};

  // May overflow or underflow when scaling == ExpScaled.
  cplx unscaled_value() const;
  cplx unscaled_derivative() const;

  // log|f(z)|, always finite for a nonzero value.
  double log_abs_value() const;
};

// Bessel function of the first kind J_m(z) and its derivative. Any complex z.
BesselEval bessel_j(int m, cplx z);

// Hankel function of the first kind H_m^(1)(z) and its derivative.
// Requires z != 0 and Re z >= 0 or Im z > 0 (the principal sheet away from the cut).
BesselEval bessel_h1(int m, cplx z);

// Y_m(z) = (H_m^(1)(z) - J_m(z)) / i, assembled in scaled form. Loses relative accuracy
// wherever H^(1) is exponentially small against J (large positive Im z).
BesselEval bessel_y(int m, cplx z);

// f(a)/f(b) for values (or derivatives) of two evaluations, computed without forming the
// unscaled numbers.
cplx value_ratio(const BesselEval &num, const BesselEval &den);
cplx derivative_value_ratio(const BesselEval &num, const BesselEval &den);

// Ascending power series for J_m(z); meant for small |z| (no scaling, may underflow).
cplx bessel_j_series(int m, cplx z);

}  // namespace magskin::special
