#include "cosserat/fe.hpp"

#include <cmath>

namespace cosserat::fe {

namespace {

// 1d quadratic Lagrange basis on {0, 1/2, 1}.
inline double q0(double t) { return (2 * t - 1) * (t - 1); }
inline double q1(double t) { return 4 * t * (1 - t); }
inline double q2(double t) { return t * (2 * t - 1); }
inline double dq0(double t) { return 4 * t - 3; }
inline double dq1(double t) { return 4 - 8 * t; }
inline double dq2(double t) { return 4 * t - 1; }

ReferenceElement make_reference(ReferenceElement::Kind kind, int order) {
  ReferenceElement e;
  e.kind = kind;
  e.order = order;
  using K = ReferenceElement::Kind;
  if (kind == K::Quadrilateral) {
    e.nodes = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    if (order == 2) {
      e.nodes.insert(e.nodes.end(),
                     {{0.5, 0}, {1, 0.5}, {0.5, 1}, {0, 0.5}, {0.5, 0.5}});
    }
  } else {
    e.nodes = {{0, 0}, {1, 0}, {0, 1}};
    if (order == 2)
      e.nodes.insert(e.nodes.end(), {{0.5, 0}, {0.5, 0.5}, {0, 0.5}});
  }
  return e;
}

struct NewtonState {
  UnitQuaternion q;
  Eigen::Matrix3d reduced_hessian;
  Eigen::Matrix<double, 4, 3> basis;
};

NewtonState newton_minimize(const std::vector<UnitQuaternion>& coeffs,
                            const Eigen::VectorXd& weights) {
  const int m = static_cast<int>(coeffs.size());
  so3::Vec4 mean = so3::Vec4::Zero();
  for (const UnitQuaternion& c : coeffs)
    mean += c.coeffs;
  UnitQuaternion q = UnitQuaternion::normalized(mean);

  for (int it = 0; it < kNewtonMaxIterations; ++it) {
    so3::Vec4 g = so3::Vec4::Zero();
    so3::Mat4 H = so3::Mat4::Zero();
    for (int i = 0; i < m; ++i) {
      if (weights[i] == 0.0)
        continue;
      g += weights[i] * so3::grad_dist_sq(coeffs[i], q).coeffs;
      H += weights[i] * so3::hess_dist_sq(coeffs[i], q);
    }
    const so3::TangentBasis B = so3::tangent_basis(q);
    const Eigen::Vector3d g3 = B.columns.transpose() * g;
    const Eigen::Matrix3d H3 = B.columns.transpose() * H * B.columns;
    if (g3.norm() <= kNewtonTolerance)
      return {q, H3, B.columns};
    const Eigen::Vector3d s3 = H3.partialPivLu().solve(-g3);
    q = so3::exp_map(q, so3::Vec4(B.columns * s3));
  }
  throw NewtonDivergenceError("geodesic interpolation: Newton did not converge");
}

} // namespace

bool ReferenceElement::contains(const Vector2d& xi, double tol) const {
  if (kind == Kind::Quadrilateral)
    return xi[0] >= -tol && xi[0] <= 1 + tol && xi[1] >= -tol && xi[1] <= 1 + tol;
  return xi[0] >= -tol && xi[1] >= -tol && xi[0] + xi[1] <= 1 + tol;
}

const ReferenceElement& ReferenceElement::get(Kind kind, int order) {
  if (order != 1 && order != 2)
    throw DomainError("reference elements exist for orders 1 and 2");
  static const ReferenceElement q1e = make_reference(Kind::Quadrilateral, 1);
  static const ReferenceElement q2e = make_reference(Kind::Quadrilateral, 2);
  static const ReferenceElement t1e = make_reference(Kind::Triangle, 1);
  static const ReferenceElement t2e = make_reference(Kind::Triangle, 2);
  if (kind == Kind::Quadrilateral)
    return order == 1 ? q1e : q2e;
  return order == 1 ? t1e : t2e;
}

ShapeValues shape_functions(const ReferenceElement& elem, const Vector2d& xi) {
  if (!elem.contains(xi))
    throw OutsideElementError("evaluation point outside the reference element");
  const int m = elem.node_count();
  ShapeValues out;
  out.values.resize(m);
  out.gradients.resize(m, 2);
  const double s = xi[0], t = xi[1];
  using K = ReferenceElement::Kind;
  if (elem.kind == K::Quadrilateral && elem.order == 1) {
    out.values << (1 - s) * (1 - t), s * (1 - t), s * t, (1 - s) * t;
    out.gradients << -(1 - t), -(1 - s), (1 - t), -s, t, s, -t, (1 - s);
  } else if (elem.kind == K::Quadrilateral && elem.order == 2) {
    // Tensor indices (i,j) of the local nodes in the order of
    // ReferenceElement::nodes: corners, edge midpoints, center.
    static constexpr int ij[9][2] = {{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 0},
                                     {2, 1}, {1, 2}, {0, 1}, {1, 1}};
    const double L[3] = {q0(s), q1(s), q2(s)};
    const double dL[3] = {dq0(s), dq1(s), dq2(s)};
    const double M[3] = {q0(t), q1(t), q2(t)};
    const double dM[3] = {dq0(t), dq1(t), dq2(t)};
    for (int n = 0; n < 9; ++n) {
      const int i = ij[n][0], j = ij[n][1];
      out.values[n] = L[i] * M[j];
      out.gradients(n, 0) = dL[i] * M[j];
      out.gradients(n, 1) = L[i] * dM[j];
    }
  } else if (elem.kind == K::Triangle && elem.order == 1) {
    out.values << 1 - s - t, s, t;
    out.gradients << -1, -1, 1, 0, 0, 1;
  } else {
    const double b0 = 1 - s - t, b1 = s, b2 = t;
    out.values.resize(6);
    out.values << b0 * (2 * b0 - 1), b1 * (2 * b1 - 1), b2 * (2 * b2 - 1),
        4 * b0 * b1, 4 * b1 * b2, 4 * b2 * b0;
    // Gradients via the barycentric gradients (-1,-1), (1,0), (0,1).
    out.gradients.resize(6, 2);
    out.gradients.row(0) = (4 * b0 - 1) * Eigen::RowVector2d(-1, -1);
    out.gradients.row(1) = (4 * b1 - 1) * Eigen::RowVector2d(1, 0);
    out.gradients.row(2) = (4 * b2 - 1) * Eigen::RowVector2d(0, 1);
    out.gradients.row(3) =
        4 * (b1 * Eigen::RowVector2d(-1, -1) + b0 * Eigen::RowVector2d(1, 0));
    out.gradients.row(4) =
        4 * (b2 * Eigen::RowVector2d(1, 0) + b1 * Eigen::RowVector2d(0, 1));
    out.gradients.row(5) =
        4 * (b0 * Eigen::RowVector2d(0, 1) + b2 * Eigen::RowVector2d(-1, -1));
  }
  return out;
}

Eigen::VectorXd edge_shape_functions(int order, double t) {
  if (order == 1) {
    Eigen::VectorXd v(2);
    v << 1 - t, t;
    return v;
  }
  Eigen::VectorXd v(3);
  v << q0(t), q2(t), q1(t);
  return v;
}

namespace {

QuadratureRule tensor_gauss(int n) {
  // Gauss-Legendre on [0,1].
  std::vector<double> x, w;
  if (n == 2) {
    const double d = 0.5 / std::sqrt(3.0);
    x = {0.5 - d, 0.5 + d};
    w = {0.5, 0.5};
  } else {
    const double d = 0.5 * std::sqrt(0.6);
    x = {0.5 - d, 0.5, 0.5 + d};
    w = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  }
  QuadratureRule rule;
  for (size_t j = 0; j < x.size(); ++j)
    for (size_t i = 0; i < x.size(); ++i) {
      rule.points.emplace_back(x[i], x[j]);
      rule.weights.push_back(w[i] * w[j]);
    }
  return rule;
}

QuadratureRule triangle_rule(int order) {
  QuadratureRule rule;
  if (order == 1) {
    rule.points = {{1.0 / 6, 1.0 / 6}, {2.0 / 3, 1.0 / 6}, {1.0 / 6, 2.0 / 3}};
    rule.weights = {1.0 / 6, 1.0 / 6, 1.0 / 6};
  } else {
    // 6-point degree-4 rule; weights sum to the triangle area 1/2.
    const double a = 0.445948490915965, wa = 0.223381589678011 / 2.0;
    const double b = 0.091576213509771, wb = 0.109951743655322 / 2.0;
    rule.points = {{a, a}, {1 - 2 * a, a}, {a, 1 - 2 * a},
                   {b, b}, {1 - 2 * b, b}, {b, 1 - 2 * b}};
    rule.weights = {wa, wa, wa, wb, wb, wb};
  }
  return rule;
}

} // namespace

const QuadratureRule& element_quadrature(ReferenceElement::Kind kind, int order) {
  static const QuadratureRule g2 = tensor_gauss(2);
  static const QuadratureRule g3 = tensor_gauss(3);
  static const QuadratureRule t1 = triangle_rule(1);
  static const QuadratureRule t2 = triangle_rule(2);
  if (kind == ReferenceElement::Kind::Quadrilateral)
    return order == 1 ? g2 : g3;
  return order == 1 ? t1 : t2;
}

const EdgeQuadratureRule& edge_quadrature(int order) {
  static const EdgeQuadratureRule e2{{0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)},
                                     {0.5, 0.5}};
  static const EdgeQuadratureRule e3{
      {0.5 - 0.5 * std::sqrt(0.6), 0.5, 0.5 + 0.5 * std::sqrt(0.6)},
      {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0}};
  return order == 1 ? e2 : e3;
}

void GfeValues::canonicalize() {
  if (coefficients.empty())
    return;
  // Greedy alignment against the first value, then against the mean.
  for (size_t i = 1; i < coefficients.size(); ++i)
    if (so3::inner(coefficients[i], coefficients[0]) < 0.0)
      coefficients[i] = -coefficients[i];
  so3::Vec4 mean = so3::Vec4::Zero();
  for (const UnitQuaternion& c : coefficients)
    mean += c.coeffs;
  const UnitQuaternion ref = UnitQuaternion::normalized(mean);
  for (UnitQuaternion& c : coefficients)
    c = so3::canonicalize_sign(c, ref);
}

bool GfeValues::well_posed() const {
  for (size_t i = 0; i < coefficients.size(); ++i)
    for (size_t j = i + 1; j < coefficients.size(); ++j)
      if (so3::dist_sphere(coefficients[i], coefficients[j]) >= M_PI / 2.0)
        return false;
  return true;
}

UnitQuaternion interpolate_weighted(const std::vector<UnitQuaternion>& coefficients,
                                    const Eigen::VectorXd& weights) {
  return newton_minimize(coefficients, weights).q;
}

UnitQuaternion interpolate(const ReferenceElement& elem, const GfeValues& vals,
                           const Vector2d& xi) {
  const ShapeValues shp = shape_functions(elem, xi);
  return interpolate_weighted(vals.coefficients, shp.values);
}

InterpolationJet interpolate_jet(const ReferenceElement& elem, const GfeValues& vals,
                                 const Vector2d& xi) {
  const ShapeValues shp = shape_functions(elem, xi);
  const NewtonState state = newton_minimize(vals.coefficients, shp.values);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(state.reduced_hessian);
  const double lo = eig.eigenvalues().cwiseAbs().minCoeff();
  const double hi = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (lo == 0.0 || hi / lo > 1e12)
    throw SingularHessianError("interpolation jet: reduced Hessian nearly singular");

  InterpolationJet jet;
  jet.value = state.q;
  const int m = static_cast<int>(vals.coefficients.size());
  for (int k = 0; k < 2; ++k) {
    so3::Vec4 rhs = so3::Vec4::Zero();
    for (int i = 0; i < m; ++i) {
      if (shp.gradients(i, k) == 0.0)
        continue;
      rhs -= shp.gradients(i, k) *
             so3::grad_dist_sq(vals.coefficients[i], state.q).coeffs;
    }
    const Eigen::Vector3d rhs3 = state.basis.transpose() * rhs;
    const Eigen::Vector3d y =
        eig.eigenvectors() *
        (eig.eigenvalues().cwiseInverse().asDiagonal() * (eig.eigenvectors().transpose() * rhs3));
    jet.spatial_derivative.col(k) = state.basis * y;
  }
  return jet;
}

bool equivariance_check(const ReferenceElement& elem, const GfeValues& vals,
                        const UnitQuaternion& r, const Vector2d& xi) {
  GfeValues rotated;
  rotated.coefficients.reserve(vals.coefficients.size());
  for (const UnitQuaternion& c : vals.coefficients)
    rotated.coefficients.push_back(so3::quat_multiply(r, c));
  const UnitQuaternion lhs = interpolate(elem, rotated, xi);
  const UnitQuaternion rhs = so3::quat_multiply(r, interpolate(elem, vals, xi));
  return so3::dist_so3(lhs, rhs) <= 1e-9;
}

} // namespace cosserat::fe
