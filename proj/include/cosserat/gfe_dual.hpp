#ifndef COSSERAT_GFE_DUAL_HPP
#define COSSERAT_GFE_DUAL_HPP

// Differentiation of the geodesic interpolation through its Newton solve.
// The value is converged in plain doubles; derivatives with respect to
// the nodal quaternion coefficients come from implicit differentiation of
// the stationarity condition at the converged point, carried as
// second-order duals: the solution map is seeded with its exact first
// derivative and pushed through a single Newton step, whose derivative
// vanishes at the fixed point, so value, gradient and Hessian are exact.

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "cosserat/autodiff.hpp"
#include "cosserat/fe.hpp"

namespace cosserat::fe {

/// Interpolated quaternion and its reference-coordinate derivatives as
/// second-order duals in the 4m stacked coefficient coordinates.
struct DualJet {
  std::array<ad::Dual2, 4> value;
  std::array<std::array<ad::Dual2, 4>, 2> derivative;
  int n_xi = 0;
};

class DualJetEvaluator {
public:
  /// m = coefficient count; the dual dimension is 4m.
  explicit DualJetEvaluator(int m);

  int coefficient_count() const { return m_; }
  int dual_dimension() const { return 4 * m_; }

  /// Coefficients must be sign-canonicalized so all mutual inner products
  /// are positive.  weight_gradients supplies n_xi columns (0, 1 or 2).
  void evaluate(const std::vector<UnitQuaternion>& coefficients,
                const Eigen::VectorXd& weights,
                const Eigen::Matrix<double, Eigen::Dynamic, 2>& weight_gradients,
                int n_xi, DualJet& out);

private:
  using D = ad::Dual2;

  void assemble(const std::vector<UnitQuaternion>& coefficients,
                const Eigen::VectorXd& weights,
                const Eigen::Matrix<double, Eigen::Dynamic, 2>* weight_gradients,
                int n_xi);
  void reduce_and_factor();            // K = B^T H B, cofactors, 1/det
  void solve_reduced(const D in[4], D out3[3]); // out3 = K^{-1} B^T in
  void apply_basis(const D y[3], D out4[4]);    // out4 = B y

  int m_;
  // Current дual point and per-pass scratch, all of dimension 4m.
  std::array<D, 4> q_;
  std::array<D, 4> g_;
  std::array<D, 10> H_; // packed symmetric 4x4
  std::array<std::array<D, 4>, 2> rhs_;
  D xs_, hs_, bs_, gamma_, t1_, t2_;
  std::array<D, 4> P_, v_, u_;
  std::array<D, 12> HB_; // H B, column-major 4x3
  std::array<D, 6> K_;   // packed symmetric 3x3
  std::array<D, 6> cof_; // cofactors of K
  D det_, invdet_;
  std::array<D, 3> y3_;
  std::array<D, 4> s4_;
  D unorm_, cexp_, sexp_;
};

} // namespace cosserat::fe

#endif
