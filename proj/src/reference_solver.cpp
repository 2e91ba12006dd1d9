#include "magskin/reference_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "magskin/errors.hpp"
#include "magskin/ibc.hpp"
#include "magskin/profiles.hpp"
#include "magskin/quadrature.hpp"
#include "magskin/skin_depth.hpp"
#include "magskin/special_functions.hpp"

namespace magskin
{

namespace
{

constexpr cplx I{0.0, 1.0};
constexpr double kResidualTolerance = 1e-10;
constexpr double kConditionWarning = 1e12;

struct LinearSolve
{
  Eigen::VectorXcd x;
  double condition_number = 0.0;
};

// Row-equilibrated LU solve; the condition number refers to the equilibrated matrix.
LinearSolve solve_system(Eigen::MatrixXcd A, Eigen::VectorXcd rhs)
{
  for (Eigen::Index i = 0; i < A.rows(); ++i)
  {
    const double s = A.row(i).cwiseAbs().maxCoeff();
    if (s > 0.0)
    {
      A.row(i) /= s;
      rhs(i) /= s;
    }
  }
  LinearSolve out;
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  const auto &sv = svd.singularValues();
  out.condition_number = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                 : std::numeric_limits<double>::infinity();
  if (!std::isfinite(out.condition_number))
  {
    throw CheckFailed("reference solver: singular modal system");
  }
  out.x = A.partialPivLu().solve(rhs);
  return out;
}

double rel(cplx residual, double local, double scale)
{
  const double denom = std::max(local, scale);
  if (denom == 0.0)
  {
    return std::abs(residual) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::abs(residual) / denom;
}

void enforce_residuals(ModalSolution &s)
{
  const ConditionResiduals r = check_conditions(s);
  s.max_residual = r.max();
  if (!(s.max_residual <= kResidualTolerance))
  {
    std::ostringstream msg;
    msg << "reference solver (" << to_string(s.kind()) << ", mode " << s.benchmark().mode
        << "): condition residual " << s.max_residual << " exceeds " << kResidualTolerance
        << " (condition number " << s.condition_number << ")";
    throw CheckFailed(msg.str());
  }
}

cplx robin_gamma(int k, const CylinderBenchmark &b)
{
  return robin_coefficient(k, b.mode, b.surface(), b.cfg).gamma;
}

double physical_ell_phi(const CylinderBenchmark &b)
{
  const DerivedParams dp = derive_params(b.cfg);
  return dp.eps_small / dp.lambda.real();
}

}  // namespace

void CylinderBenchmark::validate() const
{
  cfg.validate();
  if (!(r_in > 0.0) || !std::isfinite(r_in))
  {
    throw InvalidParameter("r_in", "must be finite and > 0");
  }
  if (!(r_source > r_in))
  {
    throw InvalidParameter("r_source", "must lie strictly between r_in and r_out");
  }
  if (!(r_out > r_source) || !std::isfinite(r_out))
  {
    throw InvalidParameter("r_out", "must be finite and > r_source");
  }
  if (mode < 0 || mode > 200)
  {
    throw InvalidParameter("mode", "must be in [0, 200]");
  }
  if (geometry == BenchmarkGeometry::PlaneLayer && mode != 0)
  {
    throw InvalidParameter("mode", "the plane layer supports normal incidence (mode 0) only");
  }
  if (!std::isfinite(source_amplitude.real()) || !std::isfinite(source_amplitude.imag()))
  {
    throw InvalidParameter("source_amplitude", "must be finite");
  }
}

Surface CylinderBenchmark::surface() const
{
  return geometry == BenchmarkGeometry::Cylinder ? Surface::cylinder(r_in) : Surface::plane();
}

bool CylinderBenchmark::same_shell_problem(const CylinderBenchmark &o) const
{
  return geometry == o.geometry && r_in == o.r_in && r_out == o.r_out && r_source == o.r_source &&
         mode == o.mode && source_amplitude == o.source_amplitude && cfg.omega == o.cfg.omega &&
         cfg.eps0 == o.cfg.eps0 && cfg.mu_plus == o.cfg.mu_plus &&
         cfg.mu_minus == o.cfg.mu_minus && cfg.sigma_plus == o.cfg.sigma_plus &&
         cfg.sigma_minus == o.cfg.sigma_minus;
}

CylinderBenchmark default_benchmark(double eps, int mode)
{
  CylinderBenchmark b;
  b.mode = mode;
  b.cfg.omega = 1.0;
  b.cfg.eps0 = 1.0;
  b.cfg.mu_plus = 1.0;
  b.cfg.sigma_minus = 1.0;
  b.cfg.sigma_plus = 0.01;
  b.cfg = b.cfg.with_eps(eps);
  return b;
}

const char *to_string(SolutionKind kind)
{
  switch (kind)
  {
    case SolutionKind::Exact:
      return "exact";
    case SolutionKind::Ibc:
      return "ibc";
    case SolutionKind::ExpansionTerm:
      return "expansion-term";
    case SolutionKind::TruncatedExpansion:
      return "truncated-expansion";
  }
  return "unknown";
}

ModalSolution::ModalSolution(SolutionKind kind, int index, const CylinderBenchmark &b)
  : kind_(kind), index_(index), bench_(b)
{
  bench_.validate();
  const DerivedParams dp = derive_params(b.cfg);
  kp_ = dp.kappa_plus * std::sqrt(dp.alpha_plus);
  km_ = dp.kappa_plus * std::sqrt(dp.alpha_minus) * std::sqrt(dp.mu_r);
  if (b.geometry == BenchmarkGeometry::Cylinder)
  {
    const auto j0 = special::bessel_j(b.mode, kp_ * b.r_out);
    j_ref_exponent_ = j0.exponent;
    j_ref_norm_ = std::abs(j0.value) + std::abs(j0.derivative);
    const auto h0 = special::bessel_h1(b.mode, kp_ * b.r_in);
    h_ref_exponent_ = h0.exponent;
    h_ref_norm_ = std::abs(h0.value) + std::abs(h0.derivative);
  }
}

FieldSample ModalSolution::basis_j(double r) const
{
  if (bench_.geometry == BenchmarkGeometry::PlaneLayer)
  {
    const cplx v = std::exp(I * kp_ * (r - bench_.r_in));
    return {v, I * kp_ * v};
  }
  const auto e = special::bessel_j(bench_.mode, kp_ * r);
  const cplx f = std::exp(e.exponent - j_ref_exponent_) / j_ref_norm_;
  return {e.value * f, kp_ * e.derivative * f};
}

FieldSample ModalSolution::basis_h(double r) const
{
  if (bench_.geometry == BenchmarkGeometry::PlaneLayer)
  {
    const cplx v = std::exp(-I * kp_ * (r - bench_.r_in));
    return {v, -I * kp_ * v};
  }
  const auto e = special::bessel_h1(bench_.mode, kp_ * r);
  const cplx f = std::exp(e.exponent - h_ref_exponent_) / h_ref_norm_;
  return {e.value * f, kp_ * e.derivative * f};
}

FieldSample ModalSolution::basis_conductor(double r) const
{
  if (bench_.geometry == BenchmarkGeometry::PlaneLayer)
  {
    const cplx v = std::exp(-I * km_ * (r - bench_.r_in));
    return {v, -I * km_ * v};
  }
  const auto num = special::bessel_j(bench_.mode, km_ * r);
  const auto den = special::bessel_j(bench_.mode, km_ * bench_.r_in);
  return {special::value_ratio(num, den), km_ * special::derivative_value_ratio(num, den)};
}

FieldSample ModalSolution::shell_field(double r, bool outer_side) const
{
  const bool outer = r > bench_.r_source || (r == bench_.r_source && outer_side);
  const cplx a = outer ? shell.outer_j : shell.inner_j;
  const cplx b = outer ? shell.outer_h : shell.inner_h;
  const FieldSample p = basis_j(r);
  const FieldSample q = basis_h(r);
  return {a * p.value + b * q.value, a * p.derivative + b * q.derivative};
}

FieldSample ModalSolution::conductor_field(double r) const
{
  if (!has_conductor)
  {
    throw DomainError("modal solution: no conductor field for this solution kind");
  }
  if (r > bench_.r_in)
  {
    throw DomainError("modal solution: conductor field requested outside the conductor");
  }
  const FieldSample phi = basis_conductor(r);
  return {conductor * phi.value, conductor * phi.derivative};
}

FieldSample ModalSolution::field(double r) const
{
  return r < bench_.r_in ? conductor_field(r) : shell_field(r);
}

double ConditionResiduals::max() const
{
  return std::max({interface_value, interface_flux, inner_boundary, source_continuity, source_jump,
                   outer_boundary});
}

ConditionResiduals check_conditions(const ModalSolution &s)
{
  const CylinderBenchmark &b = s.benchmark();
  const FieldSample in = s.shell_field(b.r_in);
  const FieldSample lo = s.shell_field(b.r_source, false);
  const FieldSample hi = s.shell_field(b.r_source, true);
  const FieldSample out = s.shell_field(b.r_out);
  const double scale = std::max({std::abs(in.value), std::abs(lo.value), std::abs(out.value),
                                 std::abs(in.derivative), std::abs(lo.derivative),
                                 std::abs(hi.derivative)});

  ConditionResiduals r;
  const cplx jump = (s.kind() == SolutionKind::ExpansionTerm && s.index() > 0) ? cplx(0.0)
                                                                                : b.source_amplitude;
  r.source_continuity = rel(hi.value - lo.value, std::abs(hi.value) + std::abs(lo.value), scale);
  r.source_jump = rel(hi.derivative - lo.derivative - jump,
                      std::abs(hi.derivative) + std::abs(lo.derivative) + std::abs(jump), scale);
  r.outer_boundary = rel(out.derivative, 0.0, scale);

  if (s.kind() == SolutionKind::Exact)
  {
    const double eps2 = 1.0 / derive_params(b.cfg).mu_r;
    const FieldSample c = s.conductor_field(b.r_in);
    r.interface_value = rel(in.value - c.value, std::abs(in.value) + std::abs(c.value), scale);
    r.interface_flux = rel(in.derivative - eps2 * c.derivative,
                           std::abs(in.derivative) + eps2 * std::abs(c.derivative), scale);
  }
  else
  {
    const cplx g = s.inner_gamma;
    if (std::abs(g) > 1.0)
    {
      // Same scaled form the solver imposes: (1/gamma) u' + u = datum / gamma.
      const cplx d = in.derivative / g;
      const cplx q = s.inner_datum / g;
      r.inner_boundary = rel(d + in.value - q, std::abs(d) + std::abs(in.value) + std::abs(q), scale);
    }
    else
    {
      r.inner_boundary = rel(in.derivative + g * in.value - s.inner_datum,
                             std::abs(in.derivative) + std::abs(g * in.value) + std::abs(s.inner_datum),
                             scale);
    }
  }
  return r;
}

ModalSolution solve_exact(const CylinderBenchmark &b)
{
  ModalSolution s(SolutionKind::Exact, 0, b);
  const double eps2 = 1.0 / derive_params(b.cfg).mu_r;
  const FieldSample phi = s.basis_conductor(b.r_in);
  const FieldSample pr = s.basis_j(b.r_in), qr = s.basis_h(b.r_in);
  const FieldSample ps = s.basis_j(b.r_source), qs = s.basis_h(b.r_source);
  const FieldSample po = s.basis_j(b.r_out), qo = s.basis_h(b.r_out);

  // unknowns: conductor, inner_j, inner_h, outer_j, outer_h
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(5, 5);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(5);
  A.row(0) << -phi.value, pr.value, qr.value, 0.0, 0.0;
  A.row(1) << -eps2 * phi.derivative, pr.derivative, qr.derivative, 0.0, 0.0;
  A.row(2) << 0.0, ps.value, qs.value, -ps.value, -qs.value;
  A.row(3) << 0.0, -ps.derivative, -qs.derivative, ps.derivative, qs.derivative;
  A.row(4) << 0.0, 0.0, 0.0, po.derivative, qo.derivative;
  rhs(3) = b.source_amplitude;

  const LinearSolve ls = solve_system(A, rhs);
  s.conductor = ls.x(0);
  s.shell = {ls.x(1), ls.x(2), ls.x(3), ls.x(4)};
  s.has_conductor = true;
  s.condition_number = ls.condition_number;
  s.near_singular = ls.condition_number > kConditionWarning;
  enforce_residuals(s);
  return s;
}

namespace
{

// Shell-only problem with u'(r_in) + gamma u(r_in) = datum.
ModalSolution solve_shell(ModalSolution s, cplx gamma, cplx datum, cplx jump)
{
  const CylinderBenchmark &b = s.benchmark();
  const FieldSample pr = s.basis_j(b.r_in), qr = s.basis_h(b.r_in);
  const FieldSample ps = s.basis_j(b.r_source), qs = s.basis_h(b.r_source);
  const FieldSample po = s.basis_j(b.r_out), qo = s.basis_h(b.r_out);

  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(4, 4);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(4);
  if (std::abs(gamma) > 1.0)
  {
    // (1/gamma) u' + u = datum / gamma stays bounded as gamma grows.
    A.row(0) << pr.derivative / gamma + pr.value, qr.derivative / gamma + qr.value, 0.0, 0.0;
    rhs(0) = datum / gamma;
  }
  else
  {
    A.row(0) << pr.derivative + gamma * pr.value, qr.derivative + gamma * qr.value, 0.0, 0.0;
    rhs(0) = datum;
  }
  A.row(1) << ps.value, qs.value, -ps.value, -qs.value;
  A.row(2) << -ps.derivative, -qs.derivative, ps.derivative, qs.derivative;
  A.row(3) << 0.0, 0.0, po.derivative, qo.derivative;
  rhs(2) = jump;

  const LinearSolve ls = solve_system(A, rhs);
  s.shell = {ls.x(0), ls.x(1), ls.x(2), ls.x(3)};
  s.inner_gamma = gamma;
  s.inner_datum = datum;
  s.condition_number = ls.condition_number;
  s.near_singular = ls.condition_number > kConditionWarning;
  enforce_residuals(s);
  return s;
}

}  // namespace

ModalSolution solve_ibc(const CylinderBenchmark &b, int k)
{
  b.validate();
  const cplx gamma = robin_gamma(k, b);
  return solve_shell(ModalSolution(SolutionKind::Ibc, k, b), gamma, 0.0, b.source_amplitude);
}

ModalSolution solve_robin(const CylinderBenchmark &b, cplx gamma)
{
  b.validate();
  return solve_shell(ModalSolution(SolutionKind::Ibc, -1, b), gamma, 0.0, b.source_amplitude);
}

cplx expansion_datum(const CylinderBenchmark &b, int j, const std::vector<ModalSolution> &previous)
{
  if (j < 0 || j > 2)
  {
    throw UnsupportedError("expansion term " + std::to_string(j) + " not in {0, 1, 2}");
  }
  if (j == 0)
  {
    return 0.0;
  }
  if (static_cast<int>(previous.size()) < j)
  {
    throw DomainError("expansion term " + std::to_string(j) + " needs the previous terms");
  }
  const DerivedParams dp = derive_params(b.cfg);
  const Surface surf = b.surface();
  TraceData tr;
  if (b.geometry == BenchmarkGeometry::Cylinder)
  {
    tr.wavevector = {static_cast<double>(b.mode) / b.r_in, 0.0};
  }
  // Axial TM field: the trace lives in the second (axial) frame slot.
  tr.E0 = {0.0, previous[0].shell_field(b.r_in).value};
  const SurfacePoint y{0.0, 0.0};
  const ProfileTerm w0 = make_W0(tr, dp.lambda);
  TangentVector datum;
  if (j == 1)
  {
    datum = apply_B(w0, nullptr, y);
  }
  else
  {
    tr.E1 = {0.0, previous[1].shell_field(b.r_in).value};
    datum = apply_B(make_W1(surf, tr, dp.lambda), &w0, y);
  }
  // curl E x n = -u' e_z for E = u e_z with n = -e_r.
  return -datum.c2;
}

std::vector<ModalSolution> solve_expansion_terms(const CylinderBenchmark &b, int j)
{
  b.validate();
  std::vector<ModalSolution> terms;
  for (int n = 0; n <= j; ++n)
  {
    const cplx datum = expansion_datum(b, n, terms);
    const cplx jump = n == 0 ? b.source_amplitude : cplx(0.0);
    terms.push_back(solve_shell(ModalSolution(SolutionKind::ExpansionTerm, n, b), 0.0, datum, jump));
  }
  return terms;
}

ModalSolution solve_expansion_term(const CylinderBenchmark &b, int j)
{
  return solve_expansion_terms(b, j).back();
}

ModalSolution truncated_expansion(const CylinderBenchmark &b, int m)
{
  const std::vector<ModalSolution> terms = solve_expansion_terms(b, m);
  const double eps = derive_params(b.cfg).eps_small;
  ModalSolution s(SolutionKind::TruncatedExpansion, m, b);
  double w = 1.0;
  for (const ModalSolution &t : terms)
  {
    s.shell.inner_j += w * t.shell.inner_j;
    s.shell.inner_h += w * t.shell.inner_h;
    s.shell.outer_j += w * t.shell.outer_j;
    s.shell.outer_h += w * t.shell.outer_h;
    s.inner_datum += w * t.inner_datum;
    s.condition_number = std::max(s.condition_number, t.condition_number);
    w *= eps;
  }
  enforce_residuals(s);
  return s;
}

namespace
{

ErrorNorms shell_norms(const ModalSolution &ref, const ShellCoefficients &c)
{
  const CylinderBenchmark &b = ref.benchmark();
  const bool cyl = b.geometry == BenchmarkGeometry::Cylinder;
  const double m = b.mode;
  const double mu_omega = std::abs(b.cfg.omega * b.cfg.mu_plus);

  auto sample = [&](double r, bool outer) -> FieldSample {
    const FieldSample p = ref.basis_j(r);
    const FieldSample q = ref.basis_h(r);
    const cplx a = outer ? c.outer_j : c.inner_j;
    const cplx h = outer ? c.outer_h : c.inner_h;
    return {a * p.value + h * q.value, a * p.derivative + h * q.derivative};
  };
  ErrorNorms out;
  for (int side = 0; side < 2; ++side)
  {
    const bool outer = side == 1;
    const double lo = outer ? b.r_source : b.r_in;
    const double hi = outer ? b.r_out : b.r_source;
    auto fe = [&](double r) {
      const FieldSample u = sample(r, outer);
      return std::norm(u.value) * (cyl ? r : 1.0);
    };
    auto fh = [&](double r) {
      const FieldSample u = sample(r, outer);
      const double angular = cyl ? std::norm(u.value) * (m / r) * (m / r) : 0.0;
      return (std::norm(u.derivative) + angular) * (cyl ? r : 1.0);
    };
    out.e += integrate_stable(fe, lo, hi).value;
    out.h += integrate_stable(fh, lo, hi).value;
  }
  out.e = std::sqrt(out.e);
  out.h = std::sqrt(out.h) / mu_omega;
  return out;
}

}  // namespace

ErrorNorms shell_l2_error(const ModalSolution &a, const ModalSolution &b)
{
  if (!a.benchmark().same_shell_problem(b.benchmark()))
  {
    throw DomainError("shell_l2_error: solutions belong to different benchmarks");
  }
  // Subtract coefficients on the shared basis, so the integrand is a smooth function
  // rather than a pointwise cancellation.
  ShellCoefficients d;
  d.inner_j = a.shell.inner_j - b.shell.inner_j;
  d.inner_h = a.shell.inner_h - b.shell.inner_h;
  d.outer_j = a.shell.outer_j - b.shell.outer_j;
  d.outer_h = a.shell.outer_h - b.shell.outer_h;
  return shell_norms(a, d);
}

ErrorNorms shell_l2_norm(const ModalSolution &a) { return shell_norms(a, a.shell); }

double conductor_l2_norm(const ModalSolution &exact)
{
  if (!exact.has_conductor)
  {
    throw DomainError("conductor_l2_norm: solution has no conductor field");
  }
  const CylinderBenchmark &b = exact.benchmark();
  if (b.geometry == BenchmarkGeometry::PlaneLayer)
  {
    // int_0^inf |c|^2 exp(-2 Im(k-) d) dd
    return std::abs(exact.conductor) / std::sqrt(2.0 * exact.conductor_wavenumber().imag());
  }
  auto f = [&](double r) { return std::norm(exact.conductor_field(r).value) * r; };
  // Panels widen geometrically away from the interface, where the field lives.
  const double lp = physical_ell_phi(b);
  double total = 0.0;
  double hi = b.r_in;
  double width = 0.5 * lp;
  while (hi > 0.0)
  {
    const double lo = std::max(0.0, hi - width);
    total += integrate_stable(f, lo, hi).value;
    hi = lo;
    width *= 2.0;
  }
  return std::sqrt(total);
}

double exact_skin_depth(const ModalSolution &exact)
{
  if (!exact.has_conductor)
  {
    throw DomainError("exact_skin_depth: solution has no conductor field");
  }
  const CylinderBenchmark &b = exact.benchmark();
  DecayTrace trace;
  trace.length_scale = physical_ell_phi(b);
  trace.max_depth = 10.0 * trace.length_scale;
  if (b.geometry == BenchmarkGeometry::Cylinder)
  {
    trace.max_depth = std::min(trace.max_depth, b.r_in);
  }
  trace.sampler = [&exact, r_in = b.r_in](double h) {
    return std::abs(exact.conductor_field(r_in - h).value);
  };
  return skin_depth_numeric(trace);
}

}  // namespace magskin
