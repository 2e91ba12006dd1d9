#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "magskin/convergence.hpp"
#include "magskin/em_params.hpp"
#include "magskin/ibc.hpp"
#include "magskin/profiles.hpp"
#include "magskin/reference_solver.hpp"
#include "magskin/skin_depth.hpp"
#include "magskin/special_functions.hpp"
#include "magskin/surface_geometry.hpp"

using namespace magskin;

namespace
{

struct Outcome
{
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char *name, const std::function<Outcome()> &body)
{
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try
  {
    o = body();
  }
  catch (const std::exception &e)
  {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  failures += o.pass ? 0 : 1;
  std::printf("%s criterion %2d: %s | %s | %.2f s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
double size(const TangentVector &a) { return std::sqrt(a.norm_sq()); }
double dist(const TangentVector &a, const TangentVector &b) { return std::sqrt((a - b).norm_sq()); }

std::string fmt(const char *f, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// slope within tol of the target and the fit conclusive (>= 4 points, >= 2 decades, r^2 >= 0.98)
bool rate_ok(const ConvergenceFit &f, double target, double tol)
{
  return f.conclusive && !f.rejected && std::abs(f.slope - target) <= tol;
}

std::string describe(const ConvergenceFit &f)
{
  std::ostringstream s;
  s.precision(4);
  s << "slope " << f.slope << " r2 " << f.r_squared;
  if (f.rejected)
  {
    s << " rejected: " << f.diagnostic;
  }
  return s.str();
}

Outcome identity_suite()
{
  const std::vector<double> grid = log_space(1e-3, 1e3, 10);
  double worst_lambda = 0.0, worst_depth = 0.0;
  int n = 0;
  for (double omega : grid)
  {
    for (double sigma : grid)
    {
      for (double mu_plus : grid)
      {
        for (double mu_minus : grid)
        {
          PhysicalConfig c;
          c.omega = omega;
          c.sigma_minus = sigma;
          c.mu_plus = mu_plus;
          c.mu_minus = mu_minus;
          const DerivedParams dp = derive_params(c);
          worst_lambda = std::max(worst_lambda, rel_err(-dp.lambda * dp.lambda,
                                                        dp.kappa_plus * dp.kappa_plus * dp.alpha_minus));
          const double depth = dp.eps_small / dp.lambda.real();
          worst_depth = std::max(worst_depth, std::abs(depth - dp.ell_phi()) / dp.ell_phi());
          ++n;
        }
      }
    }
  }
  return {worst_lambda <= 1e-12 && worst_depth <= 1e-12,
          std::to_string(n) + " points, max rel err lambda^2 " + fmt("%.2e", worst_lambda) + ", eps/Re(lambda) " +
              fmt("%.2e", worst_depth)};
}

Outcome phi_limits()
{
  const double low = std::abs(phi(1e-4) - 1.0);
  const double high = std::abs(phi(1e4) / (std::numbers::sqrt2 * 1e4) - 1.0);
  const std::vector<double> small = log_space(1e-3, 1e-1, 5), large = log_space(1e1, 1e3, 5);
  std::vector<double> rs, rl;
  for (double d : small)
  {
    rs.push_back(std::abs(phi(d) - 1.0));
  }
  for (double d : large)
  {
    rl.push_back(std::abs(phi(d) / (std::numbers::sqrt2 * d) - 1.0));
  }
  const ConvergenceFit fs = fit_power_law(small, rs), fl = fit_power_law(large, rl);
  const bool pass = low <= 1e-6 && high <= 1e-6 && std::abs(fs.slope - 2.0) <= 0.1 && std::abs(fl.slope + 4.0) <= 0.1;
  return {pass, "|phi(1e-4)-1| " + fmt("%.2e", low) + ", |phi(1e4)/(sqrt2 1e4)-1| " + fmt("%.2e", high) +
                    ", slopes " + fmt("%.4f", fs.slope) + " / " + fmt("%.4f", fl.slope)};
}

Outcome profile_residuals()
{
  const DerivedParams dp = derive_params(PhysicalConfig{});
  const cplx lam = dp.lambda;
  const Surface cyl = Surface::cylinder(1.0);
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> yd(0.0, 8.0), sd(-2.0, 2.0), kd(-3.0, 3.0);
  double worst0 = 0.0, worst1 = 0.0;
  for (int i = 0; i < 100; ++i)
  {
    TraceData tr;
    tr.E0 = {cplx(nd(rng), nd(rng)), cplx(nd(rng), nd(rng))};
    tr.E1 = {cplx(nd(rng), nd(rng)), cplx(nd(rng), nd(rng))};
    tr.wavevector = {kd(rng), kd(rng)};
    const SurfacePoint y{sd(rng), sd(rng)};
    const double Y = yd(rng);
    const ProfileTerm w0 = make_W0(tr, lam);
    const TangentVector r0 = w0.d3().d3().tangential(y, Y) - lam * lam * w0.tangential(y, Y);
    worst0 = std::max(worst0, size(r0) / (std::abs(lam * lam) * size(w0.tangential(y, Y))));
    const ProfileTerm w1 = make_W1(cyl, tr, lam);
    const TangentVector lhs = w1.d3().d3().tangential(y, Y) - lam * lam * w1.tangential(y, Y);
    const TangentVector rhs = apply_L1(cyl, w0, y, Y).surface;
    worst1 = std::max(worst1, dist(lhs, rhs) / (size(lhs) + size(rhs)));
  }
  return {worst0 <= 1e-10 && worst1 <= 1e-10,
          "100 points, max rel residual W0 " + fmt("%.2e", worst0) + ", W1 " + fmt("%.2e", worst1)};
}

Outcome umbilic()
{
  std::mt19937_64 rng(77);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> rd(0.1, 10.0);
  int exact = 0;
  for (int i = 0; i < 100; ++i)
  {
    PhysicalConfig c;
    c.mu_minus = 1e4;
    c.sigma_minus = rd(rng);
    const Surface s = Surface::sphere(rd(rng));
    const TangentVector v{cplx(nd(rng), nd(rng)), cplx(nd(rng), nd(rng))};
    const TangentVector a = impedance_operator(2, c).apply(s, v);
    const TangentVector b = impedance_operator(1, c).apply(s, v);
    exact += (a.c1 == b.c1 && a.c2 == b.c2) ? 1 : 0;
  }
  return {exact == 100, std::to_string(exact) + "/100 bitwise identical"};
}

Outcome plane_skin_depth()
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ld(-3.0, 3.0);
  const Surface plane = Surface::plane();
  TraceData tr;
  tr.E0 = {0.0, 1.0};
  double worst = 0.0;
  for (int i = 0; i < 20; ++i)
  {
    PhysicalConfig c;
    c.omega = std::pow(10.0, ld(rng));
    c.sigma_minus = std::pow(10.0, ld(rng));
    c.mu_minus = std::pow(10.0, 2.0 + std::abs(ld(rng)));
    const DerivedParams dp = derive_params(c);
    DecayTrace t;
    t.length_scale = dp.ell_phi();
    t.sampler = [&](double h) {
      return field_modulus(plane, tr, dp.lambda, {0.0, 0.0}, h, dp.eps_small, INFINITY, false);
    };
    worst = std::max(worst, std::abs(skin_depth_numeric(t) / dp.ell_phi() - 1.0));
  }
  return {worst <= 1e-8, "20 points, max rel err " + fmt("%.2e", worst)};
}

Outcome curvature_rate()
{
  const std::vector<double> mu_r{1e2, 1e3, 1e4, 1e5, 1e6};
  std::vector<double> residual;
  bool longer = true;
  for (double m : mu_r)
  {
    const CylinderBenchmark b = default_benchmark(1.0 / std::sqrt(m), 0);
    const DerivedParams dp = derive_params(b.cfg);
    const double L = exact_skin_depth(solve_exact(b));
    const double lp = dp.ell_phi();
    residual.push_back(std::abs(L - skin_depth_asymptotic(dp, b.surface().mean_curvature())) / lp);
    longer = longer && L > lp;
  }
  const ConvergenceFit f = fit_power_law(mu_r, residual);
  return {f.r_squared >= 0.98 && std::abs(f.slope + 1.0) <= 0.2 && longer,
          "|L - lphi(1+H lphi)|/lphi vs mu_r: " + describe(f) + (longer ? ", L > lphi" : ", L <= lphi somewhere")};
}

Outcome ibc_rates()
{
  const std::vector<double> eps = log_space(1e-3, 1e-1, 5);
  const double tol[] = {0.2, 0.2, 0.3};
  bool pass = true;
  std::ostringstream s;
  s.precision(4);
  for (int k = 0; k <= 2; ++k)
  {
    double lo = 1e9, hi = -1e9, r2 = 1.0;
    for (int m = 0; m <= 2; ++m)
    {
      const StudyFits f = convergence_study(default_benchmark(0.1, m), StudyKind::Ibc, k, eps);
      for (const ConvergenceFit *fit : {&f.e, &f.h})
      {
        pass = pass && rate_ok(*fit, k + 1.0, tol[k]);
        lo = std::min(lo, fit->slope);
        hi = std::max(hi, fit->slope);
        r2 = std::min(r2, fit->r_squared);
      }
    }
    s << (k ? "; " : "") << "k=" << k << " E/H slopes [" << lo << ", " << hi << "] min r2 " << r2;
  }
  return {pass, s.str()};
}

Outcome expansion_rates()
{
  const std::vector<double> eps = log_space(1e-3, 1e-1, 5);
  bool pass = true;
  std::ostringstream s;
  s.precision(4);
  for (int order = 0; order <= 1; ++order)
  {
    double lo = 1e9, hi = -1e9, r2 = 1.0;
    for (int m = 0; m <= 2; ++m)
    {
      const StudyFits f = convergence_study(default_benchmark(0.1, m), StudyKind::TruncatedExpansion, order, eps);
      for (const ConvergenceFit *fit : {&f.e, &f.h})
      {
        pass = pass && rate_ok(*fit, order + 1.0, 0.2);
        lo = std::min(lo, fit->slope);
        hi = std::max(hi, fit->slope);
        r2 = std::min(r2, fit->r_squared);
      }
    }
    s << (order ? "; " : "") << "m=" << order << " E/H slopes [" << lo << ", " << hi << "] min r2 " << r2;
  }
  return {pass, s.str()};
}

Outcome conductor_norm()
{
  const std::vector<double> eps = log_space(1e-3, 1e-1, 5);
  std::vector<double> norms;
  for (double e : eps)
  {
    norms.push_back(conductor_l2_norm(solve_exact(default_benchmark(e, 0))));
  }
  const ConvergenceFit f = fit_power_law(eps, norms);
  return {std::abs(f.slope - 0.5) <= 0.1, "||E-|| vs eps: " + describe(f)};
}

Outcome leontovich()
{
  const PhysicalConfig base;
  const std::vector<double> delta = log_space(1e-4, 1e-1, 7);
  std::vector<double> sigma;
  for (double d : delta)
  {
    sigma.push_back(base.omega * base.eps0 / (d * d));
  }
  std::vector<double> x, gap;
  for (const LeontovichRow &r : leontovich_limit_check(base, sigma))
  {
    x.push_back(r.delta_minus);
    gap.push_back(r.gap);
  }
  const ConvergenceFit f = fit_power_law(x, gap);
  return {f.r_squared >= 0.98 && std::abs(f.slope - 2.0) <= 0.1, "gap vs delta_minus: " + describe(f)};
}

Outcome special_health()
{
  using namespace magskin::special;
  std::mt19937_64 rng(314);
  std::uniform_int_distribution<int> md(0, 200), md1(1, 199);
  auto random_z = [&](double max_arg) {
    std::uniform_real_distribution<double> lr(std::log(1e-2), std::log(1e3)), ar(-max_arg, max_arg);
    return std::polar(std::exp(lr(rng)), ar(rng));
  };
  double wron = 0.0;
  for (int i = 0; i < 400; ++i)
  {
    const int m = md(rng);
    const cplx z = random_z(std::numbers::pi / 2);
    const BesselEval j = bessel_j(m, z);
    // W(J, Y) = W(J, H1) / i above the axis and -W(J, H2) / i below, H2(z) = conj H1(conj z)
    cplx w;
    cplx expected;
    if (z.imag() >= 0.0)
    {
      const BesselEval h = bessel_h1(m, z);
      w = (j.value * h.derivative - j.derivative * h.value) * std::exp(j.exponent + h.exponent);
      expected = cplx(0.0, 2.0) / (std::numbers::pi * z);
    }
    else
    {
      const BesselEval h = bessel_h1(m, std::conj(z));
      w = (j.value * std::conj(h.derivative) - j.derivative * std::conj(h.value)) *
          std::exp(j.exponent + std::conj(h.exponent));
      expected = cplx(0.0, -2.0) / (std::numbers::pi * z);
    }
    wron = std::max(wron, rel_err(w, expected));
  }
  double recur = 0.0, deriv = 0.0;
  for (int i = 0; i < 400; ++i)
  {
    const int m = md1(rng);
    const cplx z = random_z(std::numbers::pi);
    const BesselEval a = bessel_j(m - 1, z), b = bessel_j(m, z), c = bessel_j(m + 1, z);
    const cplx ra = a.value * std::exp(a.exponent - b.exponent);
    const cplx rc = c.value * std::exp(c.exponent - b.exponent);
    recur = std::max(recur, std::abs(ra + rc - (2.0 * m / z) * b.value) / (std::abs(ra) + std::abs(rc)));
    deriv = std::max(deriv, std::abs(b.derivative - 0.5 * (ra - rc)) /
                                (std::abs(ra) + std::abs(rc) + std::abs(b.derivative)));
  }
  int bad = 0, total = 0;
  for (double im : {-1000.0, -300.0, -31.0, 31.0, 100.0, 300.0, 1000.0})
  {
    for (double re : {0.0, 1.0, 50.0, 700.0})
    {
      for (int m : {0, 1, 17, 200})
      {
        const cplx z(re, im);
        const BesselEval j = bessel_j(m, z);
        bool ok = std::isfinite(std::abs(j.value)) && std::isfinite(std::abs(j.derivative)) &&
                  std::isfinite(j.log_abs_value()) && j.scaling == Scaling::ExpScaled;
        if (re > 0.0 || im > 0.0)
        {
          const BesselEval h = bessel_h1(m, z);
          ok = ok && std::isfinite(std::abs(h.value)) && std::isfinite(std::abs(h.derivative)) &&
               std::isfinite(h.log_abs_value());
        }
        bad += ok ? 0 : 1;
        ++total;
      }
    }
  }
  return {wron <= 1e-10 && recur <= 1e-9 && deriv <= 1e-9 && bad == 0,
          "Wronskian " + fmt("%.2e", wron) + ", recurrence " + fmt("%.2e", recur) + ", derivative " +
              fmt("%.2e", deriv) + ", scaled finite " + std::to_string(total - bad) + "/" + std::to_string(total)};
}

}  // namespace

int main()
{
  criterion(1, "identity suite", identity_suite);
  criterion(2, "phi limits", phi_limits);
  criterion(3, "profile ODE residuals", profile_residuals);
  criterion(4, "umbilic degeneracy", umbilic);
  criterion(5, "plane skin depth", plane_skin_depth);
  criterion(6, "curvature correction rate", curvature_rate);
  criterion(7, "IBC convergence rates", ibc_rates);
  criterion(8, "truncated expansion rates", expansion_rates);
  criterion(9, "conductor norm scaling", conductor_norm);
  criterion(10, "Leontovich limit", leontovich);
  criterion(11, "special-function health", special_health);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
