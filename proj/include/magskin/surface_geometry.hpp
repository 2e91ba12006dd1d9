#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

namespace magskin
{

using cplx = std::complex<double>;

enum class SurfaceKind
{
  Plane,
  Cylinder,
  Sphere
};

const char *to_string(SurfaceKind kind);

//
// Canonical interface. The unit normal points into the conductor, and principal
// curvatures are positive when the conductor is convex. The orthonormal principal frame
// is (azimuthal, axial) on the cylinder and any fixed tangent pair on the sphere.
//
class Surface
{
public:
  static Surface plane();
  static Surface cylinder(double radius);
  static Surface sphere(double radius);

  SurfaceKind kind() const { return kind_; }

  // Infinite for the plane.
  double radius() const { return radius_; }

  std::array<double, 2> principal_curvatures() const;
  double mean_curvature() const;
  Eigen::Matrix2d curvature_matrix() const;

  // Depth range [0, R/2) on which shifted quantities are evaluated.
  double tubular_radius() const;

private:
  Surface(SurfaceKind kind, double radius) : kind_(kind), radius_(radius) {}

  SurfaceKind kind_;
  double radius_;
};

// Components in the orthonormal principal frame.
struct TangentVector
{
  cplx c1{};
  cplx c2{};

  double norm_sq() const { return std::norm(c1) + std::norm(c2); }

  TangentVector &operator+=(const TangentVector &o)
  {
    c1 += o.c1;
    c2 += o.c2;
    return *this;
  }
  TangentVector &operator-=(const TangentVector &o)
  {
    c1 -= o.c1;
    c2 -= o.c2;
    return *this;
  }
  TangentVector &operator*=(cplx s)
  {
    c1 *= s;
    c2 *= s;
    return *this;
  }
};

inline TangentVector operator+(TangentVector a, const TangentVector &b) { return a += b; }
inline TangentVector operator-(TangentVector a, const TangentVector &b) { return a -= b; }
inline TangentVector operator*(cplx s, TangentVector v) { return v *= s; }
inline TangentVector operator*(TangentVector v, cplx s) { return v *= s; }

// (C v)_a = b_a^b v_b.
TangentVector curvature_apply(const Surface &s, const TangentVector &v);

// (H - C) v.
TangentVector mean_minus_curvature(const Surface &s, const TangentVector &v);

struct ShiftedInverseMetric
{
  Eigen::Matrix2d exact;
  Eigen::Matrix2d first_order;  // a^{ab} + 2 b^{ab} h
};

// Metric of the parallel surface at depth h into the conductor: diag((1 - k_i h)^2).
Eigen::Matrix2d shifted_metric(const Surface &s, double h);

// Throws DomainError outside [0, tubular_radius).
ShiftedInverseMetric shifted_inverse_metric(const Surface &s, double h);

}  // namespace magskin
