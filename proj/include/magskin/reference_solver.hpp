#pragma once

#include <complex>
#include <vector>

#include "magskin/em_params.hpp"
#include "magskin/surface_geometry.hpp"

namespace magskin
{

using cplx = std::complex<double>;

enum class BenchmarkGeometry
{
  Cylinder,   // per-mode TM problem, r is the radius
  PlaneLayer  // normal incidence on a half-space conductor r < r_in, r is the coordinate
};

//
// Conductor r < r_in, lossy shell r_in < r < r_out with a current sheet at r_source
// producing the jump u'(r_source+) - u'(r_source-) = source_amplitude, and u'(r_out) = 0.
//
struct CylinderBenchmark
{
  BenchmarkGeometry geometry = BenchmarkGeometry::Cylinder;
  double r_in = 1.0;
  double r_out = 2.0;
  double r_source = 1.5;
  int mode = 0;
  PhysicalConfig cfg;
  cplx source_amplitude{1.0, 0.0};

  // Throws InvalidParameter.
  void validate() const;
  Surface surface() const;
  bool same_shell_problem(const CylinderBenchmark &o) const;
};

// r_in = 1, r_out = 2, r_source = 1.5, omega = eps0 = mu_plus = sigma_minus = 1
// (kappa_plus = delta_minus = 1), sigma_plus = 0.01 (delta_plus = 10), mu_minus = 1/eps^2.
CylinderBenchmark default_benchmark(double eps, int mode);

enum class SolutionKind
{
  Exact,
  Ibc,
  ExpansionTerm,
  TruncatedExpansion
};

const char *to_string(SolutionKind kind);

// Shell field a J_m(k+ r) + b H_m(k+ r) (normalised) on each side of the source ring.
struct ShellCoefficients
{
  cplx inner_j{}, inner_h{};
  cplx outer_j{}, outer_h{};
};

struct FieldSample
{
  cplx value{};
  cplx derivative{};
};

class ModalSolution
{
public:
  ModalSolution(SolutionKind kind, int index, const CylinderBenchmark &b);

  SolutionKind kind() const { return kind_; }
  int index() const { return index_; }
  const CylinderBenchmark &benchmark() const { return bench_; }

  cplx shell_wavenumber() const { return kp_; }
  cplx conductor_wavenumber() const { return km_; }

  ShellCoefficients shell;
  cplx conductor{};  // multiplies J_m(k- r) / J_m(k- r_in); Exact only
  bool has_conductor = false;
  // Inner boundary for shell-only problems: u'(r_in) + inner_gamma u(r_in) = inner_datum.
  cplx inner_gamma{};
  cplx inner_datum{};
  double condition_number = 0.0;
  bool near_singular = false;  // condition number above 1e12
  double max_residual = 0.0;

  // Shell field; at r = r_source the outer_side flag picks the one-sided limit.
  FieldSample shell_field(double r, bool outer_side = false) const;
  // Conductor field for r <= r_in (Exact only).
  FieldSample conductor_field(double r) const;
  // Dispatches on r.
  FieldSample field(double r) const;

  // Normalised shell basis at r: J-type (scaled at r_out) and H-type (scaled at r_in).
  FieldSample basis_j(double r) const;
  FieldSample basis_h(double r) const;
  // Normalised conductor solution, equal to 1 at r_in.
  FieldSample basis_conductor(double r) const;

private:
  SolutionKind kind_;
  int index_;
  CylinderBenchmark bench_;
  cplx kp_;
  cplx km_;
  cplx j_ref_exponent_{};
  double j_ref_norm_ = 1.0;
  cplx h_ref_exponent_{};
  double h_ref_norm_ = 1.0;
};

// 5x5 transmission system. Throws CheckFailed when a condition residual exceeds 1e-10.
ModalSolution solve_exact(const CylinderBenchmark &b);

// Shell problem with u'(r_in) + gamma_k u(r_in) = 0, k in {0, 1, 2}.
ModalSolution solve_ibc(const CylinderBenchmark &b, int k);

// Shell problem with an arbitrary Robin coefficient (used for the sign calibration).
ModalSolution solve_robin(const CylinderBenchmark &b, cplx gamma);

// Terms u_0 .. u_j of the expansion (Neumann data from the boundary-layer operator B).
std::vector<ModalSolution> solve_expansion_terms(const CylinderBenchmark &b, int j);
ModalSolution solve_expansion_term(const CylinderBenchmark &b, int j);

// sum_{j <= m} eps^j u_j.
ModalSolution truncated_expansion(const CylinderBenchmark &b, int m);

// The Neumann datum u_j'(r_in) of term j given the previous terms.
cplx expansion_datum(const CylinderBenchmark &b, int j, const std::vector<ModalSolution> &previous);

struct ConditionResiduals
{
  double interface_value = 0.0;       // Exact: u+ = u-
  double interface_flux = 0.0;        // Exact: u+' = eps^2 u-'
  double inner_boundary = 0.0;        // IBC / expansion terms: Robin or Neumann at r_in
  double source_continuity = 0.0;
  double source_jump = 0.0;
  double outer_boundary = 0.0;

  double max() const;
};

// Relative residuals by direct substitution of the coefficients; each condition is
// measured against the size of its own terms or the overall field scale, whichever is larger.
ConditionResiduals check_conditions(const ModalSolution &s);

struct ErrorNorms
{
  double e = 0.0;  // sqrt(int |du|^2 w dr)
  double h = 0.0;  // curl part divided by |omega mu_plus|
  double total() const { return e + h; }
};

// Shell weighted L2 distance (weight r on the cylinder, 1 on the plane layer).
ErrorNorms shell_l2_error(const ModalSolution &a, const ModalSolution &b);
ErrorNorms shell_l2_norm(const ModalSolution &a);

// sqrt(int_0^{r_in} |u-|^2 r dr) for an exact cylinder solution.
double conductor_l2_norm(const ModalSolution &exact);

// Skin depth of the exact conductor field along the inward normal.
double exact_skin_depth(const ModalSolution &exact);

}  // namespace magskin
