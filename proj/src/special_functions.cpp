#include "magskin/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "magskin/errors.hpp"

namespace magskin::special
{

namespace
{

constexpr double kBig = 1e250;
constexpr double kRescale = 1e-250;
const double kLogRescale = std::log(kRescale);

// Beyond this |Im z| results are always returned exponent-scaled.
constexpr double kScaleImagThreshold = 30.0;
// Unscaled results must keep log|f| inside this window.
constexpr double kLogRange = 650.0;

// Hankel asymptotic expansion is used for |z| at or above this radius.
constexpr double kAsymptoticRadius = 20.0;
// Inside the asymptotic radius, H^(1) comes from J + iY only while Im z stays below this.
constexpr double kNeumannImagLimit = 3.0;

constexpr cplx I{0.0, 1.0};

double mag(cplx c) { return std::abs(c.real()) + std::abs(c.imag()); }

// f_{m-1}, f_m, f_{m+1} sharing one complex exponent.
struct Triple
{
  cplx prev, cur, next;
  cplx exponent;
};

int miller_start(double order, double az)
{
  const double top = std::max(order, az);
  return static_cast<int>(std::ceil(top + 20.0 + 15.0 * std::cbrt(top)));
}

BesselEval package(int m, cplx z, cplx val, cplx deriv, cplx exponent, cplx natural_exponent)
{
  BesselEval out;
  out.order = m;
  out.argument = z;

  // Normalise the mantissa so that exp(exponent) alone carries the magnitude.
  const double ref = mag(val) > 0.0 ? mag(val) : mag(deriv);
  if (ref > 0.0)
  {
    val /= ref;
    deriv /= ref;
    exponent += std::log(ref);
  }
  const bool scaled =
      std::abs(z.imag()) > kScaleImagThreshold || std::abs(exponent.real()) > kLogRange;
  if (!scaled)
  {
    const cplx f = std::exp(exponent);
    out.value = val * f;
    out.derivative = deriv * f;
    out.scaling = Scaling::Unscaled;
    out.exponent = 0.0;
    return out;
  }
  // Keep the canonical exponent (natural growth plus a real shift); the leftover phase
  // goes into the mantissa.
  const cplx shift = exponent - natural_exponent;
  const cplx phase = std::exp(I * shift.imag());
  out.value = val * phase;
  out.derivative = deriv * phase;
  out.scaling = Scaling::ExpScaled;
  out.exponent = natural_exponent + shift.real();
  return out;
}

BesselEval finalize(int m, cplx z, const Triple &t, cplx natural_exponent)
{
  const cplx deriv = (m == 0) ? -t.next : 0.5 * (t.prev - t.next);
  return package(m, z, t.cur, deriv, t.exponent, natural_exponent);
}

// ca * a + cb * b for two evaluations at the same order and argument, formed on the
// exponent of the larger term.
BesselEval combine(cplx ca, const BesselEval &a, cplx cb, const BesselEval &b, cplx natural)
{
  const cplx ref = (a.log_abs_value() >= b.log_abs_value()) ? a.exponent : b.exponent;
  const cplx fa = ca * std::exp(a.exponent - ref);
  const cplx fb = cb * std::exp(b.exponent - ref);
  return package(a.order, a.argument, fa * a.value + fb * b.value,
                 fa * a.derivative + fb * b.derivative, ref, natural);
}

cplx series_sum(int n, cplx q)
{
  cplx sum = 1.0;
  cplx term = 1.0;
  for (int k = 1; k < 400; ++k)
  {
    term *= q / (static_cast<double>(k) * static_cast<double>(n + k));
    sum += term;
    if (mag(term) <= 1e-17 * mag(sum))
    {
      break;
    }
  }
  return sum;
}

// Ascending series with the common factor (z/2)^m / m! moved into the exponent.
Triple j_series_triple(int m, cplx z)
{
  const cplx half = 0.5 * z;
  const cplx q = -half * half;
  Triple t;
  t.cur = series_sum(m, q);
  t.next = half / static_cast<double>(m + 1) * series_sum(m + 1, q);
  t.prev = (m >= 1) ? (static_cast<double>(m) / half) * series_sum(m - 1, q) : -t.next;
  t.exponent = static_cast<double>(m) * std::log(half) - std::lgamma(static_cast<double>(m) + 1.0);
  return t;
}

// Backward (Miller) recurrence normalised with the generating-function identity
//   exp(c z) = J_0 + 2 sum_{n>=1} c^n J_n,   c = -i (Im z >= 0) or +i (Im z < 0),
// whose left side grows like the J_n themselves, so the sum never cancels.
Triple j_miller_triple(int m, cplx z)
{
  const int start = miller_start(m + 1.0, std::abs(z));
  const cplx c = (z.imag() >= 0.0) ? -I : I;
  const cplx powc[4] = {1.0, c, c * c, c * c * c};

  cplx f_above = 0.0;
  cplx f = 1.0;
  cplx sum = 2.0 * powc[start % 4] * f;
  int count = 0;

  cplx prev = 0.0, cur = 0.0, next = 0.0;
  int cnt_prev = 0, cnt_cur = 0, cnt_next = 0;

  for (int n = start; n >= 1; --n)
  {
    const cplx f_below = (2.0 * n / z) * f - f_above;
    f_above = f;
    f = f_below;
    const int idx = n - 1;
    if (mag(f) > kBig)
    {
      f *= kRescale;
      f_above *= kRescale;
      sum *= kRescale;
      ++count;
    }
    sum += (idx == 0 ? 1.0 : 2.0) * powc[idx % 4] * f;
    if (idx == m + 1)
    {
      next = f;
      cnt_next = count;
    }
    else if (idx == m)
    {
      cur = f;
      cnt_cur = count;
    }
    else if (idx == m - 1)
    {
      prev = f;
      cnt_prev = count;
    }
  }

  Triple t;
  t.cur = cur;
  t.next = next * std::pow(kRescale, cnt_cur - cnt_next);
  t.prev = (m >= 1) ? prev * std::pow(kRescale, cnt_cur - cnt_prev) : -t.next;
  t.exponent = kLogRescale * static_cast<double>(count - cnt_cur) + c * z - std::log(sum);
  return t;
}

// J_0 .. J_n unscaled, for moderate |Im z|; high orders may underflow to zero.
std::vector<cplx> j_array(int n, cplx z)
{
  const int start = miller_start(n, std::abs(z));
  const cplx c = (z.imag() >= 0.0) ? -I : I;
  const cplx powc[4] = {1.0, c, c * c, c * c * c};
  std::vector<cplx> f(start + 2, 0.0);
  f[start] = 1.0;
  cplx sum = 2.0 * powc[start % 4];
  for (int k = start; k >= 1; --k)
  {
    f[k - 1] = (2.0 * k / z) * f[k] - f[k + 1];
    if (mag(f[k - 1]) > kBig)
    {
      for (int j = k - 1; j <= start; ++j)
      {
        f[j] *= kRescale;
      }
      sum *= kRescale;
    }
    sum += (k - 1 == 0 ? 1.0 : 2.0) * powc[(k - 1) % 4] * f[k - 1];
  }
  const cplx norm = std::exp(c * z) / sum;
  std::vector<cplx> out(n + 1);
  for (int k = 0; k <= n; ++k)
  {
    out[k] = f[k] * norm;
  }
  return out;
}

// Forward recurrence H_{n+1} = (2n/z) H_n - H_{n-1} from H_0, H_1 (stable for the
// Hankel family), with the shared exponent `base`.
Triple h_forward(int m, cplx z, cplx h0, cplx h1, cplx base)
{
  Triple t;
  if (m == 0)
  {
    t.prev = -h1;
    t.cur = h0;
    t.next = h1;
    t.exponent = base;
    return t;
  }
  std::vector<cplx> vals(m + 2);
  std::vector<int> cnt(m + 2, 0);
  vals[0] = h0;
  vals[1] = h1;
  int count = 0;
  for (int n = 1; n <= m; ++n)
  {
    cplx nxt = (2.0 * n / z) * vals[n] - vals[n - 1];
    if (mag(nxt) > kBig)
    {
      nxt *= kRescale;
      vals[n] *= kRescale;
      cnt[n] = count + 1;
      ++count;
    }
    vals[n + 1] = nxt;
    cnt[n + 1] = count;
  }
  t.cur = vals[m];
  t.prev = vals[m - 1] * std::pow(kRescale, cnt[m] - cnt[m - 1]);
  t.next = vals[m + 1] * std::pow(kRescale, cnt[m] - cnt[m + 1]);
  t.exponent = base - kLogRescale * static_cast<double>(cnt[m]);
  return t;
}

// H_nu^(1)(z) exp(-iz) from the Hankel expansion, nu in {0, 1}.
cplx hankel_asymptotic_scaled(int nu, cplx z)
{
  const double mu = 4.0 * nu * nu;
  cplx sum = 1.0;
  cplx term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k)
  {
    const double odd = 2.0 * k - 1.0;
    const cplx next = term * I * (mu - odd * odd) / (8.0 * k * z);
    const double size = mag(next);
    if (size > last)
    {
      break;
    }
    term = next;
    sum += term;
    last = size;
    if (size <= 1e-17 * mag(sum))
    {
      break;
    }
  }
  const double phase = -(nu * std::numbers::pi / 2.0 + std::numbers::pi / 4.0);
  return std::sqrt(2.0 / (std::numbers::pi * z)) * std::exp(I * phase) * sum;
}

// K_nu(w) exp(w) for Re w > 0 by the trapezoidal rule on
//   K_nu(w) = int_0^inf exp(-w cosh t) cosh(nu t) dt,
// which converges geometrically for this analytic, doubly-exponentially decaying integrand.
cplx k_scaled_trapezoid(int nu, cplx w)
{
  const double half_pi = std::numbers::pi / 2.0;
  const double strip = std::max(0.9 * (half_pi - std::abs(std::arg(w))), 0.02);
  const double h = 2.0 * std::numbers::pi * strip / 42.0;
  const double t_max = std::acosh(1.0 + 45.0 / w.real());
  cplx sum = 0.5;
  for (int n = 1; n * h <= t_max; ++n)
  {
    const double t = n * h;
    const double s = std::sinh(0.5 * t);
    sum += std::exp(-w * (2.0 * s * s)) * std::cosh(nu * t);
  }
  return h * sum;
}

Triple h1_triple(int m, cplx z)
{
  const double az = std::abs(z);
  if (az >= kAsymptoticRadius)
  {
    return h_forward(m, z, hankel_asymptotic_scaled(0, z), hankel_asymptotic_scaled(1, z), I * z);
  }
  if (z.imag() > kNeumannImagLimit)
  {
    const cplx w = -I * z;
    const cplx pref = 2.0 / (std::numbers::pi * I);
    const cplx h0 = pref * k_scaled_trapezoid(0, w);
    const cplx h1 = pref * std::exp(-I * std::numbers::pi / 2.0) * k_scaled_trapezoid(1, w);
    return h_forward(m, z, h0, h1, I * z);
  }

  // Neumann series for Y_0 and its derivative from a Miller array of J_n.
  const int n = static_cast<int>(std::ceil(az)) + 40;
  const std::vector<cplx> j = j_array(n + 1, z);
  const cplx log_term = std::log(0.5 * z) + std::numbers::egamma;
  cplx series = 0.0;
  cplx dseries = 0.0;
  for (int k = 1; 2 * k + 1 <= n + 1; ++k)
  {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    series += sign * j[2 * k] / static_cast<double>(k);
    dseries += sign * (j[2 * k - 1] - j[2 * k + 1]) / (2.0 * k);
  }
  const double two_pi = 2.0 / std::numbers::pi;
  const double four_pi = 4.0 / std::numbers::pi;
  const cplx y0 = two_pi * log_term * j[0] - four_pi * series;
  const cplx dy0 = two_pi * (j[0] / z - log_term * j[1]) - four_pi * dseries;
  const cplx y1 = -dy0;
  return h_forward(m, z, j[0] + I * y0, j[1] + I * y1, 0.0);
}

void check_order(int m)
{
  if (m < 0)
  {
    throw DomainError("bessel: order must be non-negative, got " + std::to_string(m));
  }
}

}  // namespace

cplx BesselEval::unscaled_value() const { return value * std::exp(exponent); }

cplx BesselEval::unscaled_derivative() const { return derivative * std::exp(exponent); }

double BesselEval::log_abs_value() const { return std::log(std::abs(value)) + exponent.real(); }

BesselEval bessel_j(int m, cplx z)
{
  check_order(m);
  if (z == cplx(0.0, 0.0))
  {
    BesselEval out;
    out.order = m;
    out.value = (m == 0) ? 1.0 : 0.0;
    out.derivative = (m == 1) ? 0.5 : 0.0;
    return out;
  }
  const Triple t = (std::abs(z) <= 2.0) ? j_series_triple(m, z) : j_miller_triple(m, z);
  return finalize(m, z, t, std::abs(z.imag()));
}

BesselEval bessel_h1(int m, cplx z)
{
  check_order(m);
  if (z == cplx(0.0, 0.0))
  {
    throw DomainError("bessel_h1: pole at z = 0");
  }
  if (z.real() < 0.0 && z.imag() <= 0.0)
  {
    throw DomainError("bessel_h1: argument outside Re z >= 0 or Im z > 0");
  }
  if (z.imag() >= 0.0)
  {
    return finalize(m, z, h1_triple(m, z), I * z);
  }
  // Forward recurrence is unstable below the real axis (H^(2) contaminates), so use
  // H_m^(1)(z) = conj(H_m^(2)(w)) with w = conj(z) and H^(2) = 2J - H^(1).
  const cplx w = std::conj(z);
  const BesselEval jw = bessel_j(m, w);
  const BesselEval hw = finalize(m, w, h1_triple(m, w), I * w);
  BesselEval out = combine(2.0, jw, -1.0, hw, -I * w);
  out.argument = z;
  out.value = std::conj(out.value);
  out.derivative = std::conj(out.derivative);
  out.exponent = std::conj(out.exponent);
  return out;
}

BesselEval bessel_y(int m, cplx z)
{
  const BesselEval j = bessel_j(m, z);
  const BesselEval h = bessel_h1(m, z);
  return combine(-I, h, I, j, std::abs(z.imag()));
}

cplx value_ratio(const BesselEval &num, const BesselEval &den)
{
  return num.value / den.value * std::exp(num.exponent - den.exponent);
}

cplx derivative_value_ratio(const BesselEval &num, const BesselEval &den)
{
  return num.derivative / den.value * std::exp(num.exponent - den.exponent);
}

cplx bessel_j_series(int m, cplx z)
{
  check_order(m);
  const cplx half = 0.5 * z;
  const cplx pref = std::exp(static_cast<double>(m) * std::log(half) - std::lgamma(m + 1.0));
  return pref * series_sum(m, -half * half);
}

}  // namespace magskin::special
