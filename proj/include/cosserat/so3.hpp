#ifndef COSSERAT_SO3_HPP
#define COSSERAT_SO3_HPP

// Quaternion coordinates for SO(3): algebra, metric, exponential map,
// projectors, tangent bases, and first/second derivatives of the squared
// SO(3) distance.  Rotations are stored as unit quaternions
// p = (p0,p1,p2,p3) with the scalar part last, so that the identity is
// e = (0,0,0,1).  The covering map rotation_from(p) is two-to-one:
// +p and -p describe the same rotation.

#include <Eigen/Dense>

#include "cosserat/errors.hpp"

namespace cosserat::so3 {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using RotationMatrix = Eigen::Matrix3d;

/// A point on the unit sphere S^3 in R^4, representing a rotation.
struct UnitQuaternion {
  Vec4 coeffs{0.0, 0.0, 0.0, 1.0};

  static UnitQuaternion identity() { return {}; }

  /// Builds a unit quaternion from an arbitrary nonzero 4-vector.
  static UnitQuaternion normalized(const Vec4& raw);

  double operator[](int i) const { return coeffs[i]; }
  UnitQuaternion operator-() const { return UnitQuaternion{-coeffs}; }

  double norm_defect() const { return std::abs(coeffs.norm() - 1.0); }
};

/// A vector in the tangent space of S^3 at `base` (orthogonal to it).
struct TangentVector4 {
  Vec4 coeffs = Vec4::Zero();
  UnitQuaternion base;
};

/// Orthonormal basis of the tangent space at a quaternion, stored as the
/// columns of a 4x3 matrix.  The columns are the right translations of the
/// imaginary units i, j, k; the third column generates the drill rotation,
/// which leaves the third column of quat_to_matrix(q) fixed.
struct TangentBasis {
  Eigen::Matrix<double, 4, 3> columns;
  UnitQuaternion base;
};

/// First and second derivative of alpha(x) = arccos(x)^2.
struct AlphaDerivatives {
  double first = 0.0;
  double second = 0.0;
};

/// alpha derivatives up to fourth order; used when differentiating
/// through code that itself consumes alpha' and alpha''.
struct AlphaJet {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double a4 = 0.0;
};

double inner(const UnitQuaternion& p, const UnitQuaternion& q);

/// Hamilton product in (vector, scalar) component order.
UnitQuaternion quat_multiply(const UnitQuaternion& p, const UnitQuaternion& q);

/// The covering homomorphism onto SO(3).
RotationMatrix quat_to_matrix(const UnitQuaternion& p);

/// exp_p(v) = cos|v| p + sin|v|/|v| v, with a series guard for small |v|.
UnitQuaternion exp_map(const UnitQuaternion& p, const Vec4& v);
UnitQuaternion exp_map(const UnitQuaternion& p, const TangentVector4& v);

/// Inverse of exp_map; throws AntipodalPointsError when <p,q> <= -1 + 1e-12.
TangentVector4 log_map(const UnitQuaternion& p, const UnitQuaternion& q);

/// Great-circle distance on S^3, in [0, pi].
double dist_sphere(const UnitQuaternion& p, const UnitQuaternion& q);

/// Geodesic distance of the two rotations represented by p and q; equals
/// the rotation angle of rotation_from(p)^T rotation_from(q), in [0, pi].
/// Invariant under sign flips of either argument.
double dist_so3(const UnitQuaternion& p, const UnitQuaternion& q);

/// Derivatives of arccos^2 with the series branch near x = 1.  Throws
/// DomainError for |x| > 1 + 1e-12.
AlphaDerivatives alpha_derivatives(double x);
AlphaJet alpha_jet(double x);

/// Switch point between the closed forms and the series expansions.
inline constexpr double kAlphaSeriesSwitch = 1e-5;

/// Inner products closer to zero than this are treated as the cut locus.
inline constexpr double kCutLocusGuard = 1e-10;

/// Riemannian gradient of dist_so3(p, .)^2 at q, as a tangent vector at q.
/// Throws CutLocusError when |<p,q>| < 1e-10.
TangentVector4 grad_dist_sq(const UnitQuaternion& p, const UnitQuaternion& q);

/// Riemannian Hessian of dist_so3(p, .)^2 at q as a symmetric 4x4 matrix
/// with q in its kernel.  Same cut-locus guard as grad_dist_sq.
Mat4 hess_dist_sq(const UnitQuaternion& p, const UnitQuaternion& q);

/// P_q = I - q q^T, the orthogonal projection onto T_q S^3.
Mat4 tangent_projector(const UnitQuaternion& q);

/// q q^T, the projection onto the normal line.
Mat4 normal_projector(const UnitQuaternion& q);

/// Orthonormal tangent basis depending smoothly (linearly) on q.
TangentBasis tangent_basis(const UnitQuaternion& q);

/// Weingarten map of S^3: A_x(z, v) = -<x,v> z for tangent z and normal v.
Vec4 weingarten(const UnitQuaternion& x, const Vec4& z, const Vec4& v);

/// Returns q or -q, whichever has nonnegative inner product with the
/// reference.  Throws AmbiguousSignError when |<q,ref>| <= 1e-10.
UnitQuaternion canonicalize_sign(const UnitQuaternion& q,
                                 const UnitQuaternion& reference);

} // namespace cosserat::so3

#endif
