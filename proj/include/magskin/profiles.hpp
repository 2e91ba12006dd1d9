#pragma once

#include <array>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "magskin/surface_geometry.hpp"

namespace magskin
{

using cplx = std::complex<double>;

// Surface coordinates (arc length along the principal directions).
using SurfacePoint = std::array<double, 2>;

//
// Single-harmonic traces on the interface: E0(y) = E0 exp(i k.y), likewise E1. On the
// sphere only k = 0 is accepted (pointwise data, no surface variation).
//
struct TraceData
{
  TangentVector E0;
  TangentVector E1;
  std::array<double, 2> wavevector{0.0, 0.0};

  cplx harmonic(const SurfacePoint &y) const;
  // div_S E0 at y.
  cplx surface_divergence_E0(const SurfacePoint &y) const;
};

// sum_p c_p Y^p exp(-lambda Y).
struct ExpPolynomial
{
  std::vector<cplx> coeffs;

  cplx eval(cplx lambda, double Y) const;
  ExpPolynomial d3(cplx lambda) const;
  ExpPolynomial &operator+=(const ExpPolynomial &o);
  ExpPolynomial &operator*=(cplx s);
};

//
// Boundary-layer profile W_j = (tangential part, normal part) in the stretched depth
// Y3 >= 0, with surface dependence exp(i k.y). Y3-derivatives are exact.
//
class ProfileTerm
{
public:
  ProfileTerm(int order, cplx decay_rate, std::array<double, 2> wavevector);

  int order() const { return order_; }
  cplx decay_rate() const { return lambda_; }
  const std::array<double, 2> &wavevector() const { return k_; }

  ExpPolynomial &tangential_poly(int component) { return tangential_[component]; }
  const ExpPolynomial &tangential_poly(int component) const { return tangential_[component]; }
  ExpPolynomial &normal_poly() { return normal_; }
  const ExpPolynomial &normal_poly() const { return normal_; }

  TangentVector tangential(const SurfacePoint &y, double Y3) const;
  cplx normal(const SurfacePoint &y, double Y3) const;

  ProfileTerm d3() const;
  // Surface gradient of the normal part, D_a e.
  TangentVector normal_gradient(const SurfacePoint &y, double Y3) const;
  // div_S of the tangential part.
  cplx tangential_divergence(const SurfacePoint &y, double Y3) const;

  ProfileTerm &operator+=(const ProfileTerm &o);
  ProfileTerm &operator*=(cplx s);

private:
  int order_;
  cplx lambda_;
  std::array<double, 2> k_;
  std::array<ExpPolynomial, 2> tangential_;
  ExpPolynomial normal_;
};

void check_trace(const Surface &s, const TraceData &tr);

// W0 = (E0 exp(-lambda Y3), 0).
ProfileTerm make_W0(const TraceData &tr, cplx lambda);
// W1 = ([E1 + Y3 (H - C) E0] exp(-lambda Y3), lambda^-1 div_S E0 exp(-lambda Y3)).
ProfileTerm make_W1(const Surface &s, const TraceData &tr, cplx lambda);

// Throw DomainError for Y3 < 0.
TangentVector eval_W0(const TraceData &tr, cplx lambda, const SurfacePoint &y, double Y3);
cplx eval_fke1(const TraceData &tr, cplx lambda, const SurfacePoint &y, double Y3);
TangentVector eval_W1(const Surface &s, const TraceData &tr, cplx lambda, const SurfacePoint &y,
                      double Y3);

struct OperatorValue
{
  TangentVector surface;
  cplx transverse{};
};

// L^1_a(W) = -2 b_a^b d3 W_b + d3 D_a e + b_b^b d3 W_a,
// L^1_3(W) = gamma_a^a(d3 W) + b_b^b d3 e with gamma_a^a(V) = div_S V - b_a^a v.
OperatorValue apply_L1(const Surface &s, const ProfileTerm &w, const SurfacePoint &y, double Y3);

// B^0(W_{n+1}) + B^1(W_n) at Y3 = 0, i.e. d3 W_{n+1} - D_a e_n.
TangentVector apply_B(const ProfileTerm &next, const ProfileTerm *current, const SurfacePoint &y);

// 1 + 2 y3 H + 2 eps Re<E0, E1> / |E0|^2. Throws DomainError when E0(y) = 0.
double modulus_expansion_g(const Surface &s, const TraceData &tr, const SurfacePoint &y, double y3,
                           double eps);

// |W0 + eps W1|^2 measured with the shifted metric at depth y3 (plus |eps e1|^2), divided
// by |E0|^2 exp(-2 Re(lambda) y3 / eps).
double full_modulus_ratio(const Surface &s, const TraceData &tr, cplx lambda, const SurfacePoint &y,
                          double y3, double eps);

// Field modulus |W_(eps)|(y, y3) in physical depth, including the cut-off chi(y3).
// first_order = false keeps only W0.
double field_modulus(const Surface &s, const TraceData &tr, cplx lambda, const SurfacePoint &y,
                     double y3, double eps, double h0, bool first_order);

// C^2 cut-off: 1 on [0, h0/2], 0 on [h0, inf).
double cutoff(double y3, double h0);

}  // namespace magskin
