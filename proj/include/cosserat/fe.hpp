#ifndef COSSERAT_FE_HPP
#define COSSERAT_FE_HPP

// Geodesic interpolation on SO(3) in quaternion coordinates: reference
// elements, Lagrange shape functions, Riemannian-Newton evaluation of the
// weighted center of mass, and spatial derivatives obtained from the
// stationarity condition via the implicit function theorem.

#include <Eigen/Dense>

#include <vector>

#include "cosserat/errors.hpp"
#include "cosserat/so3.hpp"

namespace cosserat::fe {

using Eigen::Vector2d;
using so3::UnitQuaternion;

struct ReferenceElement {
  enum class Kind { Triangle, Quadrilateral };

  Kind kind = Kind::Quadrilateral;
  int order = 1;
  std::vector<Vector2d> nodes;

  int node_count() const { return static_cast<int>(nodes.size()); }
  bool contains(const Vector2d& xi, double tol = 1e-10) const;

  /// Shared immutable instances for order 1 and 2.
  static const ReferenceElement& get(Kind kind, int order);
};

struct ShapeValues {
  Eigen::VectorXd values;                          // m
  Eigen::Matrix<double, Eigen::Dynamic, 2> gradients; // m x 2
};

/// Lagrange shape functions and reference gradients at xi.  Throws
/// OutsideElementError when xi lies outside the element by more than 1e-10.
ShapeValues shape_functions(const ReferenceElement& elem, const Vector2d& xi);

/// 1d Lagrange basis on [0,1] used along element edges; order 1 or 2,
/// node order (0, 1, midpoint).
Eigen::VectorXd edge_shape_functions(int order, double t);

struct QuadratureRule {
  std::vector<Vector2d> points;
  std::vector<double> weights; // sum to the reference element measure
};

/// Gauss rules: tensor 2x2 / 3x3 on quadrilaterals for orders 1 / 2,
/// 3-point / 6-point rules on triangles.
const QuadratureRule& element_quadrature(ReferenceElement::Kind kind, int order);

struct EdgeQuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
};
const EdgeQuadratureRule& edge_quadrature(int order);

/// Nodal rotation values of one element, stored on a single sheet of the
/// double cover.
struct GfeValues {
  std::vector<UnitQuaternion> coefficients;

  /// Flips signs so that every coefficient has nonnegative inner product
  /// with the normalized componentwise mean direction.
  void canonicalize();

  /// Well-posedness proxy: all pairwise sphere distances below pi/2.
  bool well_posed() const;
};

struct InterpolationJet {
  UnitQuaternion value;
  Eigen::Matrix<double, 4, 2> spatial_derivative; // columns in T_value
};

inline constexpr double kNewtonTolerance = 1e-12;
inline constexpr int kNewtonMaxIterations = 100;

/// Weighted Riemannian center of mass of the coefficients, the stationary
/// point of sum_i w_i dist_so3(R_i, .)^2, computed by a Riemannian Newton
/// iteration started from the normalized coefficient average.
UnitQuaternion interpolate_weighted(const std::vector<UnitQuaternion>& coefficients,
                                    const Eigen::VectorXd& weights);

/// Geodesic interpolation of the element values at xi.
UnitQuaternion interpolate(const ReferenceElement& elem, const GfeValues& vals,
                           const Vector2d& xi);

/// Value plus reference-coordinate derivative, solving the symmetric
/// 3x3 tangent systems H dq = -dPhi/dxi.  Throws SingularHessianError if
/// the reduced Hessian has condition number above 1e12.
InterpolationJet interpolate_jet(const ReferenceElement& elem, const GfeValues& vals,
                                 const Vector2d& xi);

/// True iff interpolating the left-translated values equals the
/// left-translated interpolant at xi, to 1e-9 in the SO(3) metric.
bool equivariance_check(const ReferenceElement& elem, const GfeValues& vals,
                        const UnitQuaternion& r, const Vector2d& xi);

} // namespace cosserat::fe

#endif
