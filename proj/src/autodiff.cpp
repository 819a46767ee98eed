#include "cosserat/autodiff.hpp"

namespace cosserat::ad {

std::vector<Dual2> Dual2::lift(const Eigen::VectorXd& values) {
  const int d = static_cast<int>(values.size());
  if (d < 1)
    throw DomainError("lift needs at least one coordinate");
  std::vector<Dual2> seeds;
  seeds.reserve(d);
  for (int i = 0; i < d; ++i) {
    Dual2 s(d);
    s.set_seed(i, values[i]);
    seeds.push_back(std::move(s));
  }
  return seeds;
}

Eigen::MatrixXd Dual2::hessian_matrix() const {
  const int d = dim();
  Eigen::MatrixXd H(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i <= j; ++i)
      H(i, j) = H(j, i) = h_[packed_index(i, j)];
  return H;
}

void Dual2::assign(const Dual2& a) {
  v_ = a.v_;
  g_ = a.g_;
  h_ = a.h_;
}

void Dual2::mul(const Dual2& a, const Dual2& b) {
  v_ = a.v_ * b.v_;
  g_ = a.v_ * b.g_ + b.v_ * a.g_;
  h_ = a.v_ * b.h_ + b.v_ * a.h_;
  const int d = dim();
  const double* ag = a.g_.data();
  const double* bg = b.g_.data();
  double* h = h_.data();
  for (int j = 0; j < d; ++j) {
    const double agj = ag[j], bgj = bg[j];
    double* hj = h + packed_index(0, j);
    for (int i = 0; i <= j; ++i)
      hj[i] += ag[i] * bgj + bg[i] * agj;
  }
}

void Dual2::add_mul(const Dual2& a, const Dual2& b) {
  v_ += a.v_ * b.v_;
  g_.noalias() += a.v_ * b.g_;
  g_.noalias() += b.v_ * a.g_;
  h_.noalias() += a.v_ * b.h_;
  h_.noalias() += b.v_ * a.h_;
  const int d = dim();
  const double* ag = a.g_.data();
  const double* bg = b.g_.data();
  double* h = h_.data();
  for (int j = 0; j < d; ++j) {
    const double agj = ag[j], bgj = bg[j];
    double* hj = h + packed_index(0, j);
    for (int i = 0; i <= j; ++i)
      hj[i] += ag[i] * bgj + bg[i] * agj;
  }
}

void Dual2::sub_mul(const Dual2& a, const Dual2& b) {
  v_ -= a.v_ * b.v_;
  g_.noalias() -= a.v_ * b.g_;
  g_.noalias() -= b.v_ * a.g_;
  h_.noalias() -= a.v_ * b.h_;
  h_.noalias() -= b.v_ * a.h_;
  const int d = dim();
  const double* ag = a.g_.data();
  const double* bg = b.g_.data();
  double* h = h_.data();
  for (int j = 0; j < d; ++j) {
    const double agj = ag[j], bgj = bg[j];
    double* hj = h + packed_index(0, j);
    for (int i = 0; i <= j; ++i)
      hj[i] -= ag[i] * bgj + bg[i] * agj;
  }
}

void Dual2::axpy(double c, const Dual2& a) {
  v_ += c * a.v_;
  g_.noalias() += c * a.g_;
  h_.noalias() += c * a.h_;
}

void Dual2::scale(double c) {
  v_ *= c;
  g_ *= c;
  h_ *= c;
}

void Dual2::negate() {
  v_ = -v_;
  g_ = -g_;
  h_ = -h_;
}

void Dual2::chain_from(const Univariate& f, const Dual2& x) {
  v_ = f.f0;
  g_ = f.f1 * x.g_;
  h_ = f.f1 * x.h_;
  const int d = dim();
  const double* xg = x.g_.data();
  double* h = h_.data();
  for (int j = 0; j < d; ++j) {
    const double c = f.f2 * xg[j];
    double* hj = h + packed_index(0, j);
    for (int i = 0; i <= j; ++i)
      hj[i] += c * xg[i];
  }
}

Dual2& Dual2::operator+=(const Dual2& rhs) {
  v_ += rhs.v_;
  g_ += rhs.g_;
  h_ += rhs.h_;
  return *this;
}

Dual2& Dual2::operator-=(const Dual2& rhs) {
  v_ -= rhs.v_;
  g_ -= rhs.g_;
  h_ -= rhs.h_;
  return *this;
}

Dual2 operator+(const Dual2& a, const Dual2& b) {
  Dual2 r = a;
  r += b;
  return r;
}

Dual2 operator-(const Dual2& a, const Dual2& b) {
  Dual2 r = a;
  r -= b;
  return r;
}

Dual2 operator*(const Dual2& a, const Dual2& b) {
  Dual2 r(a.dim());
  r.mul(a, b);
  return r;
}

Dual2 operator/(const Dual2& a, const Dual2& b) {
  Dual2 inv(b.dim());
  inv.chain_from(recip_rules(b.value()), b);
  Dual2 r(a.dim());
  r.mul(a, inv);
  return r;
}

Dual2 operator-(const Dual2& a) {
  Dual2 r = a;
  r.negate();
  return r;
}

Dual2 operator+(const Dual2& a, double b) {
  Dual2 r = a;
  r += b;
  return r;
}
Dual2 operator+(double a, const Dual2& b) { return b + a; }
Dual2 operator-(const Dual2& a, double b) {
  Dual2 r = a;
  r -= b;
  return r;
}
Dual2 operator-(double a, const Dual2& b) {
  Dual2 r = -b;
  r += a;
  return r;
}
Dual2 operator*(const Dual2& a, double b) {
  Dual2 r = a;
  r.scale(b);
  return r;
}
Dual2 operator*(double a, const Dual2& b) { return b * a; }
Dual2 operator/(const Dual2& a, double b) { return a * (1.0 / b); }
Dual2 operator/(double a, const Dual2& b) {
  Dual2 r(b.dim());
  r.chain_from(recip_rules(b.value()), b);
  r.scale(a);
  return r;
}

Dual2 chain(const Univariate& f, const Dual2& x) {
  Dual2 r(x.dim());
  r.chain_from(f, x);
  return r;
}

Dual2 sqrt(const Dual2& x) { return chain(sqrt_rules(x.value()), x); }
Dual2 sin(const Dual2& x) { return chain(sin_rules(x.value()), x); }
Dual2 cos(const Dual2& x) { return chain(cos_rules(x.value()), x); }
Dual2 exp(const Dual2& x) { return chain(exp_rules(x.value()), x); }
Dual2 log(const Dual2& x) { return chain(log_rules(x.value()), x); }
Dual2 pow(const Dual2& x, double e) { return chain(pow_rules(x.value(), e), x); }
Dual2 acos_sq(const Dual2& x) { return chain(acos_sq_rules(x.value()), x); }
Dual2 abs(const Dual2& x) { return chain(abs_rules(x.value()), x); }

} // namespace cosserat::ad
