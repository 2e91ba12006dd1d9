#include "magskin/surface_geometry.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "magskin/errors.hpp"

namespace magskin
{

const char *to_string(SurfaceKind kind)
{
  switch (kind)
  {
    case SurfaceKind::Plane:
      return "plane";
    case SurfaceKind::Cylinder:
      return "cylinder";
    case SurfaceKind::Sphere:
      return "sphere";
  }
  return "unknown";
}

Surface Surface::plane() { return Surface(SurfaceKind::Plane, std::numeric_limits<double>::infinity()); }

Surface Surface::cylinder(double radius)
{
  if (!(radius > 0.0) || !std::isfinite(radius))
  {
    throw InvalidParameter("radius", "must be finite and > 0");
  }
  return Surface(SurfaceKind::Cylinder, radius);
}

Surface Surface::sphere(double radius)
{
  if (!(radius > 0.0) || !std::isfinite(radius))
  {
    throw InvalidParameter("radius", "must be finite and > 0");
  }
  return Surface(SurfaceKind::Sphere, radius);
}

std::array<double, 2> Surface::principal_curvatures() const
{
  switch (kind_)
  {
    case SurfaceKind::Plane:
      return {0.0, 0.0};
    case SurfaceKind::Cylinder:
      return {1.0 / radius_, 0.0};
    case SurfaceKind::Sphere:
      return {1.0 / radius_, 1.0 / radius_};
  }
  return {0.0, 0.0};
}

double Surface::mean_curvature() const
{
  const auto k = principal_curvatures();
  return 0.5 * (k[0] + k[1]);
}

Eigen::Matrix2d Surface::curvature_matrix() const
{
  const auto k = principal_curvatures();
  Eigen::Matrix2d b = Eigen::Matrix2d::Zero();
  b(0, 0) = k[0];
  b(1, 1) = k[1];
  return b;
}

double Surface::tubular_radius() const { return 0.5 * radius_; }

TangentVector curvature_apply(const Surface &s, const TangentVector &v)
{
  const auto k = s.principal_curvatures();
  return {k[0] * v.c1, k[1] * v.c2};
}

TangentVector mean_minus_curvature(const Surface &s, const TangentVector &v)
{
  const auto k = s.principal_curvatures();
  const double h = s.mean_curvature();
  return {(h - k[0]) * v.c1, (h - k[1]) * v.c2};
}

Eigen::Matrix2d shifted_metric(const Surface &s, double h)
{
  const auto k = s.principal_curvatures();
  Eigen::Matrix2d a = Eigen::Matrix2d::Zero();
  a(0, 0) = (1.0 - k[0] * h) * (1.0 - k[0] * h);
  a(1, 1) = (1.0 - k[1] * h) * (1.0 - k[1] * h);
  return a;
}

ShiftedInverseMetric shifted_inverse_metric(const Surface &s, double h)
{
  if (!(h >= 0.0) || !(h < s.tubular_radius()))
  {
    throw DomainError("shifted_inverse_metric: depth " + std::to_string(h) +
                      " outside the tubular neighborhood");
  }
  const auto k = s.principal_curvatures();
  ShiftedInverseMetric out;
  out.exact = Eigen::Matrix2d::Zero();
  out.first_order = Eigen::Matrix2d::Zero();
  for (int i = 0; i < 2; ++i)
  {
    const double f = 1.0 - k[i] * h;
    out.exact(i, i) = 1.0 / (f * f);
    out.first_order(i, i) = 1.0 + 2.0 * k[i] * h;
  }
  return out;
}

}  // namespace magskin
