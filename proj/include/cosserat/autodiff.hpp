#ifndef COSSERAT_AUTODIFF_HPP
#define COSSERAT_AUTODIFF_HPP

// Forward-mode automatic differentiation carrying a dense gradient and a
// packed symmetric Hessian through scalar arithmetic.  Dual2 has a runtime
// dimension; DualN is the fixed-size variant used in inner loops.  Only
// the upper triangle of the Hessian is stored, so symmetry is exact.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <vector>

#include "cosserat/errors.hpp"
#include "cosserat/so3.hpp"

namespace cosserat::ad {

/// Value and first two derivatives of a scalar function at a point;
/// the glue for chain rules through externally supplied functions.
struct Univariate {
  double f0 = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
};

inline Univariate sqrt_rules(double x) {
  if (x <= 0.0)
    throw DomainError("sqrt of a nonpositive dual value");
  const double r = std::sqrt(x);
  return {r, 0.5 / r, -0.25 / (r * x)};
}

inline Univariate sin_rules(double x) { return {std::sin(x), std::cos(x), -std::sin(x)}; }
inline Univariate cos_rules(double x) { return {std::cos(x), -std::sin(x), -std::cos(x)}; }
inline Univariate exp_rules(double x) {
  const double e = std::exp(x);
  return {e, e, e};
}
inline Univariate log_rules(double x) {
  if (x <= 0.0)
    throw DomainError("log of a nonpositive dual value");
  return {std::log(x), 1.0 / x, -1.0 / (x * x)};
}
inline Univariate pow_rules(double x, double e) {
  if (x < 0.0)
    throw DomainError("pow with negative base");
  if (x == 0.0 && e < 2.0)
    throw DomainError("pow underflow in derivatives at zero base");
  return {std::pow(x, e), e * std::pow(x, e - 1.0), e * (e - 1.0) * std::pow(x, e - 2.0)};
}
inline Univariate recip_rules(double x) {
  if (x == 0.0)
    throw DomainError("division by a zero dual value");
  const double r = 1.0 / x;
  return {r, -r * r, 2.0 * r * r * r};
}
/// alpha(x) = arccos(x)^2 with the series-stabilized derivatives.
inline Univariate acos_sq_rules(double x) {
  const so3::AlphaJet j = so3::alpha_jet(x);
  const double a = std::acos(std::clamp(x, -1.0, 1.0));
  return {a * a, j.a1, j.a2};
}
inline Univariate abs_rules(double x) {
  if (x == 0.0)
    throw DomainError("abs is not differentiable at zero");
  return {std::abs(x), x > 0.0 ? 1.0 : -1.0, 0.0};
}

inline int packed_size(int dim) { return dim * (dim + 1) / 2; }
/// Index of entry (i,j), i <= j, in the packed upper triangle.
inline int packed_index(int i, int j) { return j * (j + 1) / 2 + i; }

/// Second-order dual number with runtime dimension.
class Dual2 {
public:
  Dual2() = default;
  explicit Dual2(int dim)
      : g_(Eigen::VectorXd::Zero(dim)), h_(Eigen::VectorXd::Zero(packed_size(dim))) {}
  Dual2(int dim, double value) : Dual2(dim) { v_ = value; }

  /// Seeds for the coordinates of `values`: seed i carries gradient e_i
  /// and a zero Hessian.
  static std::vector<Dual2> lift(const Eigen::VectorXd& values);

  int dim() const { return static_cast<int>(g_.size()); }
  double value() const { return v_; }
  double& value() { return v_; }
  const Eigen::VectorXd& grad() const { return g_; }
  Eigen::VectorXd& grad() { return g_; }
  const Eigen::VectorXd& packed_hess() const { return h_; }
  Eigen::VectorXd& packed_hess() { return h_; }
  double hess(int i, int j) const {
    return i <= j ? h_[packed_index(i, j)] : h_[packed_index(j, i)];
  }
  Eigen::MatrixXd hessian_matrix() const;

  void set_zero() {
    v_ = 0.0;
    g_.setZero();
    h_.setZero();
  }
  void set_constant(double value) {
    set_zero();
    v_ = value;
  }
  void set_seed(int index, double value) {
    set_zero();
    v_ = value;
    g_[index] = 1.0;
  }

  // In-place kernels; `this` must be distinct from the arguments.
  void assign(const Dual2& a);
  void mul(const Dual2& a, const Dual2& b);     // this = a*b
  void add_mul(const Dual2& a, const Dual2& b); // this += a*b
  void sub_mul(const Dual2& a, const Dual2& b); // this -= a*b
  void axpy(double c, const Dual2& a);          // this += c*a
  void scale(double c);
  void add_scalar(double c) { v_ += c; }
  void negate();
  void chain_from(const Univariate& f, const Dual2& x); // this = f(x)

  Dual2& operator+=(const Dual2& rhs);
  Dual2& operator-=(const Dual2& rhs);
  Dual2& operator+=(double rhs) {
    v_ += rhs;
    return *this;
  }
  Dual2& operator-=(double rhs) {
    v_ -= rhs;
    return *this;
  }
  Dual2& operator*=(double rhs) {
    scale(rhs);
    return *this;
  }

private:
  double v_ = 0.0;
  Eigen::VectorXd g_;
  Eigen::VectorXd h_;
};

Dual2 operator+(const Dual2& a, const Dual2& b);
Dual2 operator-(const Dual2& a, const Dual2& b);
Dual2 operator*(const Dual2& a, const Dual2& b);
Dual2 operator/(const Dual2& a, const Dual2& b);
Dual2 operator-(const Dual2& a);
Dual2 operator+(const Dual2& a, double b);
Dual2 operator+(double a, const Dual2& b);
Dual2 operator-(const Dual2& a, double b);
Dual2 operator-(double a, const Dual2& b);
Dual2 operator*(const Dual2& a, double b);
Dual2 operator*(double a, const Dual2& b);
Dual2 operator/(const Dual2& a, double b);
Dual2 operator/(double a, const Dual2& b);

Dual2 chain(const Univariate& f, const Dual2& x);
Dual2 sqrt(const Dual2& x);
Dual2 sin(const Dual2& x);
Dual2 cos(const Dual2& x);
Dual2 exp(const Dual2& x);
Dual2 log(const Dual2& x);
Dual2 pow(const Dual2& x, double e);
Dual2 acos_sq(const Dual2& x);
Dual2 abs(const Dual2& x);

/// Fixed-dimension second-order dual number.  Stack storage, so ordinary
/// operator expressions cost no allocations; preferred inside energy
/// density evaluations where the dimension is known at compile time.
template <int N>
class DualN {
public:
  static constexpr int kDim = N;
  static constexpr int kPacked = N * (N + 1) / 2;

  DualN() { set_zero(); }
  explicit DualN(double value) {
    set_zero();
    v_ = value;
  }
  static DualN seed(int index, double value) {
    DualN d(value);
    d.g_[index] = 1.0;
    return d;
  }

  double value() const { return v_; }
  double& value() { return v_; }
  double grad(int i) const { return g_[i]; }
  double& grad(int i) { return g_[i]; }
  double hess(int i, int j) const {
    return i <= j ? h_[packed_index(i, j)] : h_[packed_index(j, i)];
  }
  double& packed_hess(int k) { return h_[k]; }
  double packed_hess(int k) const { return h_[k]; }

  void set_zero() {
    v_ = 0.0;
    g_.fill(0.0);
    h_.fill(0.0);
  }

  DualN& operator+=(const DualN& r) {
    v_ += r.v_;
    for (int i = 0; i < N; ++i)
      g_[i] += r.g_[i];
    for (int k = 0; k < kPacked; ++k)
      h_[k] += r.h_[k];
    return *this;
  }
  DualN& operator-=(const DualN& r) {
    v_ -= r.v_;
    for (int i = 0; i < N; ++i)
      g_[i] -= r.g_[i];
    for (int k = 0; k < kPacked; ++k)
      h_[k] -= r.h_[k];
    return *this;
  }
  DualN& operator*=(double c) {
    v_ *= c;
    for (int i = 0; i < N; ++i)
      g_[i] *= c;
    for (int k = 0; k < kPacked; ++k)
      h_[k] *= c;
    return *this;
  }
  DualN& operator+=(double c) {
    v_ += c;
    return *this;
  }
  DualN& operator-=(double c) {
    v_ -= c;
    return *this;
  }

  friend DualN operator+(DualN a, const DualN& b) { return a += b; }
  friend DualN operator-(DualN a, const DualN& b) { return a -= b; }
  friend DualN operator+(DualN a, double b) { return a += b; }
  friend DualN operator+(double a, DualN b) { return b += a; }
  friend DualN operator-(DualN a, double b) { return a -= b; }
  friend DualN operator-(double a, const DualN& b) {
    DualN r = -b;
    r.v_ += a;
    return r;
  }
  friend DualN operator*(DualN a, double b) { return a *= b; }
  friend DualN operator*(double a, DualN b) { return b *= a; }
  friend DualN operator/(DualN a, double b) { return a *= (1.0 / b); }

  DualN operator-() const {
    DualN r;
    r.v_ = -v_;
    for (int i = 0; i < N; ++i)
      r.g_[i] = -g_[i];
    for (int k = 0; k < kPacked; ++k)
      r.h_[k] = -h_[k];
    return r;
  }

  friend DualN operator*(const DualN& a, const DualN& b) {
    DualN r;
    r.v_ = a.v_ * b.v_;
    for (int i = 0; i < N; ++i)
      r.g_[i] = a.v_ * b.g_[i] + b.v_ * a.g_[i];
    int k = 0;
    for (int j = 0; j < N; ++j) {
      const double agj = a.g_[j], bgj = b.g_[j];
      for (int i = 0; i <= j; ++i, ++k)
        r.h_[k] = a.v_ * b.h_[k] + b.v_ * a.h_[k] + a.g_[i] * bgj + b.g_[i] * agj;
    }
    return r;
  }

  friend DualN operator/(const DualN& a, const DualN& b) {
    return a * chain(recip_rules(b.value()), b);
  }
  friend DualN operator/(double a, const DualN& b) {
    DualN r = chain(recip_rules(b.value()), b);
    return r *= a;
  }

  friend DualN chain(const Univariate& f, const DualN& x) {
    DualN r;
    r.v_ = f.f0;
    for (int i = 0; i < N; ++i)
      r.g_[i] = f.f1 * x.g_[i];
    int k = 0;
    for (int j = 0; j < N; ++j) {
      const double xgj = x.g_[j];
      for (int i = 0; i <= j; ++i, ++k)
        r.h_[k] = f.f1 * x.h_[k] + f.f2 * x.g_[i] * xgj;
    }
    return r;
  }

  friend DualN sqrt(const DualN& x) { return chain(sqrt_rules(x.value()), x); }
  friend DualN sin(const DualN& x) { return chain(sin_rules(x.value()), x); }
  friend DualN cos(const DualN& x) { return chain(cos_rules(x.value()), x); }
  friend DualN exp(const DualN& x) { return chain(exp_rules(x.value()), x); }
  friend DualN log(const DualN& x) { return chain(log_rules(x.value()), x); }
  friend DualN pow(const DualN& x, double e) { return chain(pow_rules(x.value(), e), x); }
  friend DualN acos_sq(const DualN& x) { return chain(acos_sq_rules(x.value()), x); }
  friend DualN abs(const DualN& x) { return chain(abs_rules(x.value()), x); }

private:
  double v_ = 0.0;
  std::array<double, N> g_;
  std::array<double, kPacked> h_;
};

} // namespace cosserat::ad

#endif
