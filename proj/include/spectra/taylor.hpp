#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace spectra {

// Truncated Taylor expansion f(x0 + t) = sum_k c[k] t^k, k <= order.
// Arithmetic keeps the smaller of the operand orders, so derivative
// information is never silently invented.
class Taylor {
 public:
  static constexpr int kMaxOrder = 4;

  Taylor() = default;
  explicit Taylor(int order) : order_(std::clamp(order, 0, kMaxOrder)) {}

  static Taylor constant(double v, int order) {
    Taylor t(order);
    t.c_[0] = v;
    return t;
  }
  // The identity map t -> x0 + t.
  static Taylor variable(double x0, int order) {
    Taylor t(order);
    t.c_[0] = x0;
    if (t.order_ >= 1) t.c_[1] = 1.0;
    return t;
  }

  int order() const { return order_; }
  double operator[](std::size_t k) const { return c_[k]; }
  double& operator[](std::size_t k) { return c_[k]; }

  double value() const { return c_[0]; }
  // k-th derivative at x0.
  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c_[static_cast<std::size_t>(k)] * f;
  }

  Taylor truncated(int order) const {
    Taylor t(std::min(order, order_));
    for (int k = 0; k <= t.order_; ++k) t.c_[k] = c_[k];
    return t;
  }

  // d/dt, one order lost.
  Taylor differentiated() const {
    Taylor t(std::max(order_ - 1, 0));
    for (int k = 0; k < order_; ++k) t.c_[k] = (k + 1) * c_[k + 1];
    if (order_ == 0) t.c_[0] = 0.0;
    return t;
  }

  // Series of g(x0 + s t), i.e. coefficients scaled by s^k.
  Taylor stretched(double s) const {
    Taylor t = *this;
    double p = 1.0;
    for (int k = 0; k <= order_; ++k) {
      t.c_[k] *= p;
      p *= s;
    }
    return t;
  }

  Taylor& operator*=(double s) {
    for (int k = 0; k <= order_; ++k) c_[k] *= s;
    return *this;
  }
  Taylor& operator+=(double s) {
    c_[0] += s;
    return *this;
  }

  friend Taylor operator+(const Taylor& a, const Taylor& b) {
    Taylor t(std::min(a.order_, b.order_));
    for (int k = 0; k <= t.order_; ++k) t.c_[k] = a.c_[k] + b.c_[k];
    return t;
  }
  friend Taylor operator-(const Taylor& a, const Taylor& b) {
    Taylor t(std::min(a.order_, b.order_));
    for (int k = 0; k <= t.order_; ++k) t.c_[k] = a.c_[k] - b.c_[k];
    return t;
  }
  friend Taylor operator-(const Taylor& a) {
    Taylor t = a;
    t *= -1.0;
    return t;
  }
  friend Taylor operator*(const Taylor& a, double s) {
    Taylor t = a;
    t *= s;
    return t;
  }
  friend Taylor operator*(double s, const Taylor& a) { return a * s; }
  friend Taylor operator+(const Taylor& a, double s) {
    Taylor t = a;
    t += s;
    return t;
  }
  friend Taylor operator*(const Taylor& a, const Taylor& b) {
    Taylor t(std::min(a.order_, b.order_));
    for (int k = 0; k <= t.order_; ++k) {
      double s = 0.0;
      for (int i = 0; i <= k; ++i) s += a.c_[i] * b.c_[k - i];
      t.c_[k] = s;
    }
    return t;
  }
  // Requires b.value() != 0.
  friend Taylor operator/(const Taylor& a, const Taylor& b) {
    Taylor t(std::min(a.order_, b.order_));
    for (int k = 0; k <= t.order_; ++k) {
      double s = a.c_[k];
      for (int i = 1; i <= k; ++i) s -= b.c_[i] * t.c_[k - i];
      t.c_[k] = s / b.c_[0];
    }
    return t;
  }

  // exp of a series, exact recurrence k c_k = sum_j j p_j c_{k-j}.
  friend Taylor exp(const Taylor& p) {
    Taylor t(p.order_);
    t.c_[0] = std::exp(p.c_[0]);
    for (int k = 1; k <= t.order_; ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += j * p.c_[j] * t.c_[k - j];
      t.c_[k] = s / k;
    }
    return t;
  }

 private:
  int order_ = 0;
  std::array<double, kMaxOrder + 1> c_{};
};

}  // namespace spectra
