#include "magskin/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "magskin/errors.hpp"

namespace magskin
{

namespace
{

constexpr cplx I{0.0, 1.0};

void check_depth(double Y3)
{
  if (!(Y3 >= 0.0))
  {
    throw DomainError("profile: stretched depth Y3 must be >= 0, got " + std::to_string(Y3));
  }
}

ExpPolynomial constant_poly(cplx c) { return ExpPolynomial{{c}}; }

}  // namespace

cplx TraceData::harmonic(const SurfacePoint &y) const
{
  return std::exp(I * (wavevector[0] * y[0] + wavevector[1] * y[1]));
}

cplx TraceData::surface_divergence_E0(const SurfacePoint &y) const
{
  return I * (wavevector[0] * E0.c1 + wavevector[1] * E0.c2) * harmonic(y);
}

cplx ExpPolynomial::eval(cplx lambda, double Y) const
{
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
  {
    acc = acc * Y + *it;
  }
  return acc * std::exp(-lambda * Y);
}

ExpPolynomial ExpPolynomial::d3(cplx lambda) const
{
  // d/dY [Y^p e^{-lambda Y}] = p Y^{p-1} e^{-lambda Y} - lambda Y^p e^{-lambda Y}
  ExpPolynomial out;
  out.coeffs.assign(coeffs.size(), 0.0);
  for (std::size_t p = 0; p < coeffs.size(); ++p)
  {
    out.coeffs[p] -= lambda * coeffs[p];
    if (p > 0)
    {
      out.coeffs[p - 1] += static_cast<double>(p) * coeffs[p];
    }
  }
  return out;
}

ExpPolynomial &ExpPolynomial::operator+=(const ExpPolynomial &o)
{
  if (o.coeffs.size() > coeffs.size())
  {
    coeffs.resize(o.coeffs.size(), 0.0);
  }
  for (std::size_t p = 0; p < o.coeffs.size(); ++p)
  {
    coeffs[p] += o.coeffs[p];
  }
  return *this;
}

ExpPolynomial &ExpPolynomial::operator*=(cplx s)
{
  for (auto &c : coeffs)
  {
    c *= s;
  }
  return *this;
}

ProfileTerm::ProfileTerm(int order, cplx decay_rate, std::array<double, 2> wavevector)
  : order_(order), lambda_(decay_rate), k_(wavevector)
{
}

TangentVector ProfileTerm::tangential(const SurfacePoint &y, double Y3) const
{
  check_depth(Y3);
  const cplx h = std::exp(I * (k_[0] * y[0] + k_[1] * y[1]));
  return {h * tangential_[0].eval(lambda_, Y3), h * tangential_[1].eval(lambda_, Y3)};
}

cplx ProfileTerm::normal(const SurfacePoint &y, double Y3) const
{
  check_depth(Y3);
  const cplx h = std::exp(I * (k_[0] * y[0] + k_[1] * y[1]));
  return h * normal_.eval(lambda_, Y3);
}

ProfileTerm ProfileTerm::d3() const
{
  ProfileTerm out(order_, lambda_, k_);
  out.tangential_[0] = tangential_[0].d3(lambda_);
  out.tangential_[1] = tangential_[1].d3(lambda_);
  out.normal_ = normal_.d3(lambda_);
  return out;
}

TangentVector ProfileTerm::normal_gradient(const SurfacePoint &y, double Y3) const
{
  const cplx e = normal(y, Y3);
  return {I * k_[0] * e, I * k_[1] * e};
}

cplx ProfileTerm::tangential_divergence(const SurfacePoint &y, double Y3) const
{
  const TangentVector w = tangential(y, Y3);
  return I * (k_[0] * w.c1 + k_[1] * w.c2);
}

ProfileTerm &ProfileTerm::operator+=(const ProfileTerm &o)
{
  if (o.lambda_ != lambda_ || o.k_ != k_)
  {
    throw DomainError("profile: cannot add terms with different decay rate or wavevector");
  }
  tangential_[0] += o.tangential_[0];
  tangential_[1] += o.tangential_[1];
  normal_ += o.normal_;
  return *this;
}

ProfileTerm &ProfileTerm::operator*=(cplx s)
{
  tangential_[0] *= s;
  tangential_[1] *= s;
  normal_ *= s;
  return *this;
}

void check_trace(const Surface &s, const TraceData &tr)
{
  if (s.kind() == SurfaceKind::Sphere && (tr.wavevector[0] != 0.0 || tr.wavevector[1] != 0.0))
  {
    throw UnsupportedError("profile: sphere traces must have zero wavevector");
  }
}

ProfileTerm make_W0(const TraceData &tr, cplx lambda)
{
  ProfileTerm w(0, lambda, tr.wavevector);
  w.tangential_poly(0) = constant_poly(tr.E0.c1);
  w.tangential_poly(1) = constant_poly(tr.E0.c2);
  w.normal_poly() = constant_poly(0.0);
  return w;
}

ProfileTerm make_W1(const Surface &s, const TraceData &tr, cplx lambda)
{
  check_trace(s, tr);
  const TangentVector c = mean_minus_curvature(s, tr.E0);
  ProfileTerm w(1, lambda, tr.wavevector);
  w.tangential_poly(0) = ExpPolynomial{{tr.E1.c1, c.c1}};
  w.tangential_poly(1) = ExpPolynomial{{tr.E1.c2, c.c2}};
  const cplx div = I * (tr.wavevector[0] * tr.E0.c1 + tr.wavevector[1] * tr.E0.c2);
  w.normal_poly() = constant_poly(div / lambda);
  return w;
}

TangentVector eval_W0(const TraceData &tr, cplx lambda, const SurfacePoint &y, double Y3)
{
  check_depth(Y3);
  return std::exp(-lambda * Y3) * tr.harmonic(y) * tr.E0;
}

cplx eval_fke1(const TraceData &tr, cplx lambda, const SurfacePoint &y, double Y3)
{
  check_depth(Y3);
  return tr.surface_divergence_E0(y) / lambda * std::exp(-lambda * Y3);
}

TangentVector eval_W1(const Surface &s, const TraceData &tr, cplx lambda, const SurfacePoint &y,
                      double Y3)
{
  check_depth(Y3);
  check_trace(s, tr);
  const TangentVector v = tr.E1 + cplx(Y3) * mean_minus_curvature(s, tr.E0);
  return std::exp(-lambda * Y3) * tr.harmonic(y) * v;
}

OperatorValue apply_L1(const Surface &s, const ProfileTerm &w, const SurfacePoint &y, double Y3)
{
  const ProfileTerm dw = w.d3();
  const TangentVector dW = dw.tangential(y, Y3);
  const TangentVector dDe = dw.normal_gradient(y, Y3);
  const cplx de = dw.normal(y, Y3);
  const double trace_b = 2.0 * s.mean_curvature();

  OperatorValue out;
  out.surface = cplx(-2.0) * curvature_apply(s, dW) + dDe + cplx(trace_b) * dW;
  const cplx gamma_trace = dw.tangential_divergence(y, Y3) - trace_b * de;
  out.transverse = gamma_trace + trace_b * de;
  return out;
}

TangentVector apply_B(const ProfileTerm &next, const ProfileTerm *current, const SurfacePoint &y)
{
  TangentVector out = next.d3().tangential(y, 0.0);
  if (current != nullptr)
  {
    out -= current->normal_gradient(y, 0.0);
  }
  return out;
}

double modulus_expansion_g(const Surface &s, const TraceData &tr, const SurfacePoint &y, double y3,
                           double eps)
{
  const double e0 = tr.E0.norm_sq();
  if (!(e0 > 0.0))
  {
    throw DomainError("modulus expansion: degenerate trace, E0 vanishes at the surface point");
  }
  (void)y;  // single-harmonic traces: the common factor exp(i k.y) cancels
  const double cross = std::real(tr.E0.c1 * std::conj(tr.E1.c1) + tr.E0.c2 * std::conj(tr.E1.c2));
  return 1.0 + 2.0 * y3 * s.mean_curvature() + 2.0 * eps * cross / e0;
}

double full_modulus_ratio(const Surface &s, const TraceData &tr, cplx lambda, const SurfacePoint &y,
                          double y3, double eps)
{
  const double e0 = tr.E0.norm_sq();
  if (!(e0 > 0.0))
  {
    throw DomainError("modulus expansion: degenerate trace, E0 vanishes at the surface point");
  }
  const double Y3 = y3 / eps;
  const TangentVector w = eval_W0(tr, lambda, y, Y3) + cplx(eps) * eval_W1(s, tr, lambda, y, Y3);
  const cplx e = eps * eval_fke1(tr, lambda, y, Y3);
  const Eigen::Matrix2d a = shifted_inverse_metric(s, y3).exact;
  const double mod2 = a(0, 0) * std::norm(w.c1) + a(1, 1) * std::norm(w.c2) + std::norm(e);
  return mod2 / (e0 * std::exp(-2.0 * lambda.real() * Y3));
}

double field_modulus(const Surface &s, const TraceData &tr, cplx lambda, const SurfacePoint &y,
                     double y3, double eps, double h0, bool first_order)
{
  const double chi = cutoff(y3, h0);
  if (chi == 0.0)
  {
    return 0.0;
  }
  const double Y3 = y3 / eps;
  TangentVector w = eval_W0(tr, lambda, y, Y3);
  cplx e = 0.0;
  if (first_order)
  {
    w += cplx(eps) * eval_W1(s, tr, lambda, y, Y3);
    e = eps * eval_fke1(tr, lambda, y, Y3);
  }
  double a11 = 1.0;
  double a22 = 1.0;
  if (s.kind() != SurfaceKind::Plane)
  {
    const Eigen::Matrix2d a = shifted_inverse_metric(s, y3).exact;
    a11 = a(0, 0);
    a22 = a(1, 1);
  }
  return chi * std::sqrt(a11 * std::norm(w.c1) + a22 * std::norm(w.c2) + std::norm(e));
}

double cutoff(double y3, double h0)
{
  if (y3 <= 0.5 * h0)
  {
    return 1.0;
  }
  if (y3 >= h0)
  {
    return 0.0;
  }
  const double t = (y3 - 0.5 * h0) / (0.5 * h0);
  return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

}  // namespace magskin
