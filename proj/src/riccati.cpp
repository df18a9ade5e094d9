#include "spectra/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "spectra/error.hpp"
#include "spectra/specfun.hpp"

namespace spectra {
namespace {

constexpr double kZeroThreshold = 1e-13;

// 1F1(c, b; s) expanded about s0 = x^2 in powers of t, with s = (x + t)^2.
Taylor kummer_in_x(double c, double b, double x, int order) {
  const double s0 = x * x;
  Taylor delta(order);  // s - s0 = 2 x t + t^2
  if (order >= 1) delta[1] = 2.0 * x;
  if (order >= 2) delta[2] = 1.0;

  Taylor result = Taylor::constant(specfun::kummer_1f1(c, b, s0), order);
  Taylor power = Taylor::constant(1.0, order);
  double factorial = 1.0;
  for (int k = 1; k <= order; ++k) {
    power = power * delta;
    factorial *= k;
    const double dk = specfun::kummer_1f1_derivative(c, b, s0, k);
    result = result + power * (dk / factorial);
  }
  return result;
}

Taylor normalized(Taylor t) {
  double scale = std::abs(t[0]);
  if (t.order() >= 1) scale += std::abs(t[1]);
  if (scale > 0.0 && std::isfinite(scale)) t *= 1.0 / scale;
  return t;
}

// psi(x) = e^{-x^2/2} [M((1-2e)/4, 1/2; x^2) + k x M((3-2e)/4, 3/2; x^2)],
// which equals e^{x^2/2} u(x) with u the Kummer combination at -x^2 after
// the Kummer transformation of both terms. The Gaussian prefactor's value at
// the expansion point is dropped.
class OscillatorSource final : public SolutionSource {
 public:
  explicit OscillatorSource(const FactorizationConfig& config)
      : even_a_((1.0 - 2.0 * config.eps) / 4.0),
        odd_a_((3.0 - 2.0 * config.eps) / 4.0),
        slope_(oscillator_slope(config)) {}

  Taylor psi(double x, int order) const override {
    Taylor w = kummer_in_x(even_a_, 0.5, x, order);
    if (slope_ != 0.0) {
      w = w + slope_ * (Taylor::variable(x, order) *
                        kummer_in_x(odd_a_, 1.5, x, order));
    }
    Taylor exponent(order);  // -(x + t)^2 / 2 + x^2 / 2
    if (order >= 1) exponent[1] = -x;
    if (order >= 2) exponent[2] = -0.5;
    return normalized(exp(exponent) * w);
  }

  std::pair<double, double> domain() const override {
    const double inf = std::numeric_limits<double>::infinity();
    return {-inf, inf};
  }

 private:
  double even_a_;
  double odd_a_;
  double slope_;
};

// RK4 samples of (psi, psi') with running renormalization; log_scale[i] is
// the log of the factor divided out of node i.
class NumericSource final : public SolutionSource {
 public:
  NumericSource(double x0, double h, std::vector<double> psi,
                std::vector<double> dpsi, std::vector<double> log_scale,
                std::vector<double> excess)
      : x0_(x0),
        h_(h),
        psi_(std::move(psi)),
        dpsi_(std::move(dpsi)),
        log_scale_(std::move(log_scale)),
        excess_(std::move(excess)) {}

  Taylor psi(double x, int order) const override {
    const auto n = static_cast<int>(psi_.size());
    const double lo = x0_;
    const double hi = x0_ + (n - 1) * h_;
    if (x < lo - 1e-12 || x > hi + 1e-12) {
      throw Error(ErrorKind::out_of_range,
                  "numeric Riccati solution evaluated outside its grid", x);
    }
    int i = static_cast<int>(std::floor((x - lo) / h_));
    i = std::clamp(i, 0, n - 2);
    const double rescale = std::exp(log_scale_[i + 1] - log_scale_[i]);

    const double f0 = psi_[i];
    const double d0 = h_ * dpsi_[i];
    const double s0 = h_ * h_ * 2.0 * excess_[i] * psi_[i];
    const double f1 = rescale * psi_[i + 1];
    const double d1 = rescale * h_ * dpsi_[i + 1];
    const double s1 = rescale * h_ * h_ * 2.0 * excess_[i + 1] * psi_[i + 1];

    // Quintic Hermite interpolant on tau in [0, 1].
    const double df = f1 - f0;
    const double a[6] = {
        f0,
        d0,
        0.5 * s0,
        10.0 * df - 6.0 * d0 - 4.0 * d1 - 0.5 * (3.0 * s0 - s1),
        -15.0 * df + 8.0 * d0 + 7.0 * d1 + 0.5 * (3.0 * s0 - 2.0 * s1),
        6.0 * df - 3.0 * (d0 + d1) - 0.5 * (s0 - s1),
    };

    const double tau = (x - (lo + i * h_)) / h_;
    Taylor out(order);
    double inv_h_power = 1.0;
    for (int k = 0; k <= out.order(); ++k) {
      // k-th tau-derivative of the quintic over k!, at tau.
      double sum = 0.0;
      for (int j = 5; j >= k; --j) {
        double binom = 1.0;
        for (int m = 0; m < k; ++m) binom = binom * (j - m) / (m + 1);
        sum = sum * tau + binom * a[j];
      }
      out[k] = sum * inv_h_power;
      inv_h_power /= h_;
    }
    return normalized(out);
  }

  std::pair<double, double> domain() const override {
    return {x0_, x0_ + (static_cast<double>(psi_.size()) - 1) * h_};
  }

 private:
  double x0_;
  double h_;
  std::vector<double> psi_;
  std::vector<double> dpsi_;
  std::vector<double> log_scale_;
  std::vector<double> excess_;  // V(x_i) - eps
};

double golden_min_abs(const std::function<double(double)>& f, double a,
                      double b, double* f_at_min) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = std::abs(f(c));
  double fd = std::abs(f(d));
  for (int it = 0; it < 60; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = std::abs(f(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = std::abs(f(d));
    }
  }
  const double xm = 0.5 * (a + b);
  *f_at_min = f(xm);
  return xm;
}

double bisect_sign_change(const std::function<double(double)>& f, double a,
                          double b) {
  double fa = f(a);
  while (b - a > 1e-10) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

RiccatiSolution::RiccatiSolution(double eps, RiccatiBackend backend,
                                 std::shared_ptr<const SolutionSource> source,
                                 PotentialFn base,
                                 std::optional<FactorizationConfig> config)
    : eps_(eps),
      backend_(backend),
      source_(std::move(source)),
      base_(std::move(base)),
      config_(config) {}

double RiccatiSolution::normalized_psi(double x) const {
  const Taylor p = source_->psi(x, 1);
  const double scale = std::abs(p[0]) + std::abs(p[1]);
  return scale > 0.0 ? p[0] / scale : 0.0;
}

Taylor RiccatiSolution::alpha(double x, int order) const {
  order = std::clamp(order, 0, Taylor::kMaxOrder - 1);
  const Taylor p = source_->psi(x, order + 1);
  if (!(std::abs(p[0]) >= kZeroThreshold * (std::abs(p[0]) + std::abs(p[1])))) {
    throw Error(ErrorKind::singularity,
                "Riccati solution has a pole (psi vanishes)", x);
  }
  return p.differentiated() / p.truncated(order);
}

AlphaValue RiccatiSolution::evaluate(double x) const {
  const Taylor a = alpha(x, 1);
  return {a[0], a[1]};
}

RiccatiSolution RiccatiSolution::with_energy_label(double eps) const {
  RiccatiSolution copy = *this;
  copy.eps_ = eps;
  return copy;
}

double oscillator_slope(const FactorizationConfig& config) {
  if (config.nu == 0.0) return 0.0;
  return 2.0 * config.nu * specfun::gamma_ratio(config.eps);
}

RiccatiSolution oscillator_solution(const FactorizationConfig& config) {
  if (!(config.eps < kOscillatorGroundEnergy) || !std::isfinite(config.eps)) {
    throw Error(ErrorKind::domain,
                "oscillator factorization energy must satisfy eps < 1/2");
  }
  if (!std::isfinite(config.nu)) {
    throw Error(ErrorKind::domain, "nu must be finite");
  }
  return RiccatiSolution(config.eps, RiccatiBackend::analytic_oscillator,
                         std::make_shared<OscillatorSource>(config),
                         oscillator_potential, config);
}

AlphaValue alpha_oscillator(double x, const FactorizationConfig& config) {
  return oscillator_solution(config).evaluate(x);
}

NodelessCertificate nodeless_scan(const std::function<double(double)>& f,
                                  double x_lo, double x_hi, int n) {
  if (n < 101 || !(x_lo < x_hi)) {
    throw Error(ErrorKind::invalid_argument,
                "nodeless scan needs n >= 101 and x_lo < x_hi");
  }
  NodelessCertificate cert{x_lo, x_hi, n, true, std::nullopt};
  const double h = (x_hi - x_lo) / (n - 1);
  std::vector<double> xs(n);
  std::vector<double> vs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = x_lo + i * h;
    vs[i] = f(xs[i]);
  }

  std::optional<double> first;
  auto consider = [&](double z) {
    if (!first || z < *first) first = z;
  };

  for (int i = 0; i < n; ++i) {
    if (vs[i] == 0.0) {
      consider(xs[i]);
      break;
    }
    if (i + 1 < n && vs[i + 1] != 0.0 && (vs[i] < 0.0) != (vs[i + 1] < 0.0)) {
      consider(bisect_sign_change(f, xs[i], xs[i + 1]));
      break;
    }
  }

  // A pair of zeros inside one cell leaves no sign change on the grid; look
  // for it around local minima of |f|.
  for (int i = 0; i < n; ++i) {
    if (first && xs[i] > *first) break;
    const double here = std::abs(vs[i]);
    const bool left_ok = i == 0 || here <= std::abs(vs[i - 1]);
    const bool right_ok = i == n - 1 || here <= std::abs(vs[i + 1]);
    if (!left_ok || !right_ok) continue;
    const double a = xs[std::max(i - 1, 0)];
    const double b = xs[std::min(i + 1, n - 1)];
    double fm = 0.0;
    const double xm = golden_min_abs(f, a, b, &fm);
    if (vs[i] != 0.0 && fm != 0.0 && (fm < 0.0) != (vs[i] < 0.0)) {
      const double lo = std::min(xs[i], xm);
      const double hi = std::max(xs[i], xm);
      consider(bisect_sign_change(f, lo, hi));
    } else if (fm == 0.0) {
      consider(xm);
    }
  }

  if (first) {
    cert.nodeless = false;
    cert.zero = first;
  }
  return cert;
}

NodelessCertificate nodeless_scan(const FactorizationConfig& config,
                                  double x_lo, double x_hi, int n) {
  const RiccatiSolution sol = oscillator_solution(config);
  return nodeless_scan([&](double x) { return sol.normalized_psi(x); }, x_lo,
                       x_hi, n);
}

RiccatiSolution alpha_numeric(const PotentialFn& potential, double eps,
                              double psi0_slope, const Grid& grid,
                              const NumericOptions& options) {
  grid.validate();
  const double half = grid.x_max;
  if (std::abs(grid.x_min + grid.x_max) > 1e-12 * std::max(1.0, half)) {
    throw Error(ErrorKind::invalid_argument,
                "numeric Riccati backend needs a grid symmetric about 0");
  }
  if (!(options.max_step > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "max_step must be positive");
  }
  const double step = std::min(options.max_step, grid.spacing());
  const int m = static_cast<int>(std::ceil(half / step - 1e-9));
  const double h = half / m;
  const int n = 2 * m + 1;

  std::vector<double> psi(n), dpsi(n), log_scale(n, 0.0), excess(n);
  for (int i = 0; i < n; ++i) {
    const double x = -half + i * h;
    const double v = potential(x);
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::invalid_argument,
                  "potential is not finite on the grid", x);
    }
    excess[i] = v - eps;
  }

  auto sweep = [&](int direction) {
    double y = 1.0;
    double dy = psi0_slope;
    double log_offset = 0.0;
    const double hs = direction * h;
    int i = m;
    psi[i] = y;
    dpsi[i] = dy;
    for (int k = 0; k < m; ++k) {
      const double x = -half + i * h;
      const double vmid = 2.0 * (potential(x + 0.5 * hs) - eps);
      const double v0 = 2.0 * excess[i];
      const double v1 = 2.0 * excess[i + direction];
      const double k1y = dy;
      const double k1d = v0 * y;
      const double k2y = dy + 0.5 * hs * k1d;
      const double k2d = vmid * (y + 0.5 * hs * k1y);
      const double k3y = dy + 0.5 * hs * k2d;
      const double k3d = vmid * (y + 0.5 * hs * k2y);
      const double k4y = dy + hs * k3d;
      const double k4d = v1 * (y + hs * k3y);
      y += hs / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
      dy += hs / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
      const double mag = std::abs(y) + std::abs(dy);
      if (mag > 1e100 || (mag < 1e-100 && mag > 0.0)) {
        y /= mag;
        dy /= mag;
        log_offset += std::log(mag);
      }
      i += direction;
      psi[i] = y;
      dpsi[i] = dy;
      log_scale[i] = log_offset;
    }
  };
  sweep(+1);
  sweep(-1);

  if (options.require_nodeless) {
    for (int i = 0; i + 1 < n; ++i) {
      if (psi[i] == 0.0 || (psi[i] < 0.0) != (psi[i + 1] < 0.0)) {
        const double x = -half + i * h;
        throw Error(ErrorKind::singularity,
                    "numeric solution psi changes sign; alpha has a pole", x);
      }
    }
  }

  auto source = std::make_shared<NumericSource>(
      -half, h, std::move(psi), std::move(dpsi), std::move(log_scale),
      std::move(excess));
  return RiccatiSolution(eps, RiccatiBackend::numeric, std::move(source),
                         potential);
}

double riccati_residual(const RiccatiSolution& sol, double x) {
  const AlphaValue a = sol.evaluate(x);
  return a.alpha_prime + a.alpha * a.alpha -
         2.0 * (sol.base_potential()(x) - sol.eps());
}

}  // namespace spectra
