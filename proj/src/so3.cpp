#include "cosserat/so3.hpp"

#include <algorithm>
#include <cmath>

namespace cosserat::so3 {

namespace {

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

} // namespace

UnitQuaternion UnitQuaternion::normalized(const Vec4& raw) {
  const double n = raw.norm();
  if (n == 0.0)
    throw DomainError("cannot normalize the zero quaternion");
  return UnitQuaternion{raw / n};
}

double inner(const UnitQuaternion& p, const UnitQuaternion& q) {
  return p.coeffs.dot(q.coeffs);
}

UnitQuaternion quat_multiply(const UnitQuaternion& p, const UnitQuaternion& q) {
  const Vec4& a = p.coeffs;
  const Vec4& b = q.coeffs;
  Vec4 r;
  r[0] = a[3] * b[0] - a[2] * b[1] + a[1] * b[2] + a[0] * b[3];
  r[1] = a[2] * b[0] + a[3] * b[1] - a[0] * b[2] + a[1] * b[3];
  r[2] = -a[1] * b[0] + a[0] * b[1] + a[3] * b[2] + a[2] * b[3];
  r[3] = -a[0] * b[0] - a[1] * b[1] - a[2] * b[2] + a[3] * b[3];
  return UnitQuaternion::normalized(r);
}

RotationMatrix quat_to_matrix(const UnitQuaternion& p) {
  const double p0 = p[0], p1 = p[1], p2 = p[2], p3 = p[3];
  RotationMatrix R;
  R(0, 0) = p0 * p0 - p1 * p1 - p2 * p2 + p3 * p3;
  R(0, 1) = 2.0 * (p0 * p1 - p2 * p3);
  R(0, 2) = 2.0 * (p0 * p2 + p1 * p3);
  R(1, 0) = 2.0 * (p0 * p1 + p2 * p3);
  R(1, 1) = -p0 * p0 + p1 * p1 - p2 * p2 + p3 * p3;
  R(1, 2) = 2.0 * (p1 * p2 - p0 * p3);
  R(2, 0) = 2.0 * (p0 * p2 - p1 * p3);
  R(2, 1) = 2.0 * (p0 * p3 + p1 * p2);
  R(2, 2) = -p0 * p0 - p1 * p1 + p2 * p2 + p3 * p3;
  return R;
}

UnitQuaternion exp_map(const UnitQuaternion& p, const Vec4& v) {
  const double t = v.norm();
  double c, sc; // cos(t) and sin(t)/t
  if (t < 1e-8) {
    const double t2 = t * t;
    c = 1.0 - 0.5 * t2;
    sc = 1.0 - t2 / 6.0;
  } else {
    c = std::cos(t);
    sc = std::sin(t) / t;
  }
  return UnitQuaternion::normalized(c * p.coeffs + sc * v);
}

UnitQuaternion exp_map(const UnitQuaternion& p, const TangentVector4& v) {
  return exp_map(p, v.coeffs);
}

TangentVector4 log_map(const UnitQuaternion& p, const UnitQuaternion& q) {
  const double x = clamp_unit(inner(p, q));
  if (x <= -1.0 + 1e-12)
    throw AntipodalPointsError("log_map: antipodal points");
  const double theta = std::acos(x);
  const Vec4 w = q.coeffs - x * p.coeffs; // tangential part, norm sin(theta)
  double scale;
  if (theta < 1e-8) {
    scale = 1.0 + theta * theta / 6.0;
  } else {
    scale = theta / std::sin(theta);
  }
  return TangentVector4{scale * w, p};
}

double dist_sphere(const UnitQuaternion& p, const UnitQuaternion& q) {
  return std::acos(clamp_unit(inner(p, q)));
}

double dist_so3(const UnitQuaternion& p, const UnitQuaternion& q) {
  return 2.0 * std::acos(clamp_unit(std::abs(inner(p, q))));
}

AlphaDerivatives alpha_derivatives(double x) {
  const AlphaJet j = alpha_jet(x);
  return {j.a1, j.a2};
}

AlphaJet alpha_jet(double x) {
  if (std::abs(x) > 1.0 + 1e-12)
    throw DomainError("alpha derivatives need |x| <= 1");
  x = clamp_unit(x);
  AlphaJet j;
  if (x >= 1.0 - kAlphaSeriesSwitch) {
    // Series about x = 1; the closed forms cancel catastrophically here.
    const double t = x - 1.0;
    j.a1 = -2.0 + t * (2.0 / 3.0 + t * (-4.0 / 15.0 + t * (4.0 / 35.0 - t * 16.0 / 315.0)));
    j.a2 = 2.0 / 3.0 + t * (-8.0 / 15.0 + t * (12.0 / 35.0 - t * 64.0 / 315.0));
    j.a3 = -8.0 / 15.0 + t * (24.0 / 35.0 - t * 64.0 / 105.0);
    j.a4 = 24.0 / 35.0 - t * 128.0 / 105.0;
    return j;
  }
  const double a = std::acos(x);
  const double s2 = 1.0 - x * x;
  const double s = std::sqrt(s2);
  const double s3 = s2 * s;
  const double s4 = s2 * s2;
  const double s5 = s4 * s;
  const double s7 = s5 * s2;
  j.a1 = -2.0 * a / s;
  j.a2 = 2.0 / s2 - 2.0 * x * a / s3;
  j.a3 = 6.0 * x / s4 - 2.0 * a / s3 - 6.0 * a * x * x / s5;
  j.a4 = 8.0 / s4 + 30.0 * x * x / (s4 * s2) - 18.0 * a * x / s5 -
         30.0 * a * x * x * x / s7;
  return j;
}

TangentVector4 grad_dist_sq(const UnitQuaternion& p, const UnitQuaternion& q) {
  const double x = inner(p, q);
  if (std::abs(x) < kCutLocusGuard)
    throw CutLocusError("grad_dist_sq at the cut locus");
  const double sgn = x >= 0.0 ? 1.0 : -1.0;
  const double a1 = alpha_jet(std::abs(x)).a1;
  const Vec4 pq = p.coeffs - x * q.coeffs; // P_q p
  return TangentVector4{4.0 * sgn * a1 * pq, q};
}

Mat4 hess_dist_sq(const UnitQuaternion& p, const UnitQuaternion& q) {
  const double x = inner(p, q);
  if (std::abs(x) < kCutLocusGuard)
    throw CutLocusError("hess_dist_sq at the cut locus");
  const double sgn = x >= 0.0 ? 1.0 : -1.0;
  const AlphaJet j = alpha_jet(std::abs(x));
  const Vec4 pq = p.coeffs - x * q.coeffs;
  Mat4 H = 4.0 * j.a2 * (pq * pq.transpose());
  H.noalias() -= (4.0 * sgn * j.a1 * x) *
                 (Mat4::Identity() - q.coeffs * q.coeffs.transpose());
  return H;
}

Mat4 tangent_projector(const UnitQuaternion& q) {
  return Mat4::Identity() - q.coeffs * q.coeffs.transpose();
}

Mat4 normal_projector(const UnitQuaternion& q) {
  return q.coeffs * q.coeffs.transpose();
}

TangentBasis tangent_basis(const UnitQuaternion& q) {
  const double q0 = q[0], q1 = q[1], q2 = q[2], q3 = q[3];
  TangentBasis b;
  b.base = q;
  b.columns.col(0) = Vec4(q3, q2, -q1, -q0);
  b.columns.col(1) = Vec4(-q2, q3, q0, -q1);
  b.columns.col(2) = Vec4(q1, -q0, q3, -q2);
  return b;
}

Vec4 weingarten(const UnitQuaternion& x, const Vec4& z, const Vec4& v) {
  return -(x.coeffs.dot(v)) * z;
}

UnitQuaternion canonicalize_sign(const UnitQuaternion& q,
                                 const UnitQuaternion& reference) {
  const double x = inner(q, reference);
  if (std::abs(x) <= 1e-10)
    throw AmbiguousSignError("sign canonicalization is ambiguous");
  return x >= 0.0 ? q : -q;
}

} // namespace cosserat::so3
