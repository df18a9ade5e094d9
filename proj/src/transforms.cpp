#include "spectra/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "spectra/error.hpp"

namespace spectra {
namespace {

constexpr double kDegeneracyGuard = 1e-9;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// psi_hat = W(psi1, psi2) / psi1 solves the Schroedinger equation on
// V1 = V - alpha1' at energy e2.
class ChainedSource final : public SolutionSource {
 public:
  ChainedSource(RiccatiSolution at_e1, RiccatiSolution at_e2)
      : e1_(std::move(at_e1)), e2_(std::move(at_e2)) {}

  Taylor psi(double x, int order) const override {
    const Taylor p1 = e1_.psi(x, order + 1);
    const Taylor p2 = e2_.psi(x, order + 1);
    if (p1[0] == 0.0) {
      throw Error(ErrorKind::singularity,
                  "chained solution undefined where psi(e1) vanishes", x);
    }
    const Taylor w = p1.differentiated() * p2.truncated(order) -
                     p1.truncated(order) * p2.differentiated();
    Taylor out = w / p1.truncated(order);
    double scale = std::abs(out[0]);
    if (out.order() >= 1) scale += std::abs(out[1]);
    if (scale > 0.0 && std::isfinite(scale)) out *= 1.0 / scale;
    return out;
  }

  std::pair<double, double> domain() const override {
    const auto [a1, b1] = e1_.domain();
    const auto [a2, b2] = e2_.domain();
    return {std::max(a1, a2), std::min(b1, b2)};
  }

 private:
  RiccatiSolution e1_;
  RiccatiSolution e2_;
};

// Wronskian psi1' psi2 - psi1 psi2' with each psi scaled to unit
// |psi| + |psi'|. Same sign as the true Wronskian.
double normalized_wronskian(const RiccatiSolution& a, const RiccatiSolution& b,
                            double x) {
  const Taylor p1 = a.psi(x, 1);
  const Taylor p2 = b.psi(x, 1);
  const double s1 = std::abs(p1[0]) + std::abs(p1[1]);
  const double s2 = std::abs(p2[0]) + std::abs(p2[1]);
  return (p1[1] * p2[0] - p1[0] * p2[1]) / (s1 * s2);
}

std::pair<double, double> scan_interval(const CertificationOptions& cert,
                                        std::pair<double, double> domain,
                                        double scale) {
  return {std::max(cert.x_lo / scale, domain.first),
          std::min(cert.x_hi / scale, domain.second)};
}

// V0 - alpha' at y, base coordinate.
double first_order_value(const RiccatiSolution& sol, double y) {
  return sol.base_potential()(y) - sol.alpha(y, 1)[1];
}

// V0 + d/dy [2 (e1 - e2) psi1 psi2 / W] at y, base coordinate.
double second_order_value(const RiccatiSolution& a, const RiccatiSolution& b,
                          double y) {
  const Taylor p1 = a.psi(y, 2);
  const Taylor p2 = b.psi(y, 2);
  const Taylor w = p1.differentiated() * p2.truncated(1) -
                   p1.truncated(1) * p2.differentiated();
  if (w[0] == 0.0) {
    throw Error(ErrorKind::singular_potential,
                "Wronskian vanishes; second-order potential is singular", y);
  }
  const Taylor g = 2.0 * (a.eps() - b.eps()) * (p1.truncated(1) * p2.truncated(1)) / w;
  return a.base_potential()(y) + g[1];
}

void check_scan(const NodelessCertificate& c, double scale, ErrorKind kind,
                const std::string& what) {
  if (!c.nodeless) {
    throw Error(kind, what + " has a zero", *c.zero * scale);
  }
}

void precheck_nu(const TransformSpec& spec) {
  if (!(std::abs(spec.f1.nu) < 1.0)) {
    throw Error(ErrorKind::singular_potential,
                "parameter domain violated: |nu1| < 1 required");
  }
  if (spec.two_step() && !(std::abs(spec.f2->nu) > 1.0)) {
    throw Error(ErrorKind::singular_potential,
                "parameter domain violated: |nu2| > 1 required");
  }
}

GeneratedPotential build_oscillator(const TransformSpec& spec,
                                    const CertificationOptions& cert) {
  spec.validate();
  const double q = spec.total_scale();
  const double e = 1.0 / (q * q);
  const RiccatiSolution s1 = oscillator_solution(spec.f1);
  std::vector<NodelessCertificate> certs;
  PotentialFn base_eval;

  if (!spec.two_step()) {
    const auto [lo, hi] = scan_interval(cert, s1.domain(), q);
    certs.push_back(nodeless_scan(
        [&](double y) { return s1.normalized_psi(y); }, lo, hi, cert.points));
    check_scan(certs.back(), q, ErrorKind::singular_potential,
               "Schroedinger solution u(x) at eps1");
    base_eval = [s1](double y) { return first_order_value(s1, y); };
  } else {
    const RiccatiSolution s2 = oscillator_solution(*spec.f2);
    const auto [lo, hi] = scan_interval(cert, s1.domain(), q);
    certs.push_back(nodeless_scan(
        [&](double y) { return normalized_wronskian(s1, s2, y); }, lo, hi,
        cert.points));
    check_scan(certs.back(), q, ErrorKind::singular_potential,
               "denominator alpha(x, eps1) - alpha(x, eps2)");
    base_eval = [s1, s2](double y) { return second_order_value(s1, s2, y); };
  }
  precheck_nu(spec);

  PotentialFn eval;
  if (q == 1.0) {
    eval = std::move(base_eval);
  } else {
    eval = [base_eval = std::move(base_eval), q, e](double x) {
      return e * base_eval(x / q);
    };
  }
  return GeneratedPotential(spec, std::move(eval), {cert.x_lo, cert.x_hi},
                            std::move(certs));
}

// alpha of the base-coordinate solution re-expressed in x = Q y:
// Q^-1 alpha(x / Q), expanded about x.
Taylor dilated_alpha(const RiccatiSolution& sol, double x, double q, int order) {
  return sol.alpha(x / q, order).stretched(1.0 / q) * (1.0 / q);
}

Taylor oscillator_series(double z, int order) {
  Taylor v(order);
  v[0] = 0.5 * z * z;
  if (order >= 1) v[1] = z;
  if (order >= 2) v[2] = 0.5;
  return v;
}

}  // namespace

ScalingParam::ScalingParam(double q) : q_(q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw Error(ErrorKind::invalid_argument,
                "scaling parameter q must be finite and positive");
  }
}

ScalingParam ScalingParam::from_lambda(double lambda) {
  return ScalingParam(std::exp(-lambda));
}

std::string to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::first_order: return "first-order";
    case TransformKind::second_order: return "second-order";
    case TransformKind::scaled_first: return "scaled-first";
    case TransformKind::scaled_second: return "scaled-second";
  }
  return "unknown";
}

std::optional<TransformKind> parse_transform_kind(const std::string& name) {
  std::string n = name;
  std::replace(n.begin(), n.end(), '_', '-');
  for (auto k : {TransformKind::first_order, TransformKind::second_order,
                 TransformKind::scaled_first, TransformKind::scaled_second}) {
    if (n == to_string(k)) return k;
  }
  return std::nullopt;
}

TransformSpec TransformSpec::first_order(FactorizationConfig f1) {
  return TransformSpec{TransformKind::first_order, f1, std::nullopt,
                       std::nullopt, std::nullopt};
}
TransformSpec TransformSpec::second_order(FactorizationConfig f1,
                                          FactorizationConfig f2) {
  return TransformSpec{TransformKind::second_order, f1, f2, std::nullopt,
                       std::nullopt};
}
TransformSpec TransformSpec::scaled_first(FactorizationConfig f1,
                                          ScalingParam s1) {
  return TransformSpec{TransformKind::scaled_first, f1, std::nullopt, s1,
                       std::nullopt};
}
TransformSpec TransformSpec::scaled_second(FactorizationConfig f1,
                                           ScalingParam s1,
                                           FactorizationConfig f2,
                                           ScalingParam s2) {
  return TransformSpec{TransformKind::scaled_second, f1, f2, s1, s2};
}

double TransformSpec::total_scale() const {
  switch (kind) {
    case TransformKind::first_order:
    case TransformKind::second_order:
      return 1.0;
    case TransformKind::scaled_first:
      return s1 ? s1->q() : 1.0;
    case TransformKind::scaled_second:
      return (s1 ? s1->q() : 1.0) * (s2 ? s2->q() : 1.0);
  }
  return 1.0;
}

void TransformSpec::validate() const {
  auto check_config = [](const FactorizationConfig& f, const char* name) {
    if (!std::isfinite(f.eps) || !std::isfinite(f.nu)) {
      throw Error(ErrorKind::invalid_argument,
                  std::string(name) + ": eps and nu must be finite");
    }
    if (!(f.eps < kOscillatorGroundEnergy)) {
      throw Error(ErrorKind::invalid_argument,
                  std::string(name) + ": eps must lie below E0 = 1/2");
    }
  };
  check_config(f1, "f1");
  if (two_step()) {
    if (!f2) throw Error(ErrorKind::invalid_argument, "f2 is required");
    check_config(*f2, "f2");
    if (std::abs(f1.eps - f2->eps) <= kDegeneracyGuard) {
      throw Error(ErrorKind::degenerate_energies,
                  "eps1 and eps2 must differ by more than 1e-9");
    }
    if (!(f2->eps < f1.eps)) {
      throw Error(ErrorKind::ordering_violation,
                  "two-step constructions require eps2 < eps1 < 1/2");
    }
  }
  if (kind == TransformKind::scaled_first && !s1) {
    throw Error(ErrorKind::invalid_argument, "scaled-first requires q1");
  }
  if (kind == TransformKind::scaled_second && (!s1 || !s2)) {
    throw Error(ErrorKind::invalid_argument, "scaled-second requires q1 and q2");
  }
}

GeneratedPotential::GeneratedPotential(
    std::optional<TransformSpec> spec, PotentialFn evaluator,
    std::pair<double, double> certified_domain,
    std::vector<NodelessCertificate> certificates)
    : spec_(std::move(spec)),
      evaluator_(std::move(evaluator)),
      domain_(certified_domain),
      certificates_(std::move(certificates)) {}

double GeneratedPotential::operator()(double x) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(x));
  if (x < domain_.first - slack || x > domain_.second + slack) {
    throw Error(ErrorKind::out_of_range,
                "potential evaluated outside its certified domain", x);
  }
  return evaluator_(x);
}

PotentialFn GeneratedPotential::as_function() const {
  return [self = *this](double x) { return self(x); };
}

std::string SpectrumLevel::label() const {
  if (origin == LevelOrigin::created) {
    return "created(eps" + std::to_string(index) + ")";
  }
  return "inherited(" + std::to_string(index) + ")";
}

std::vector<double> SpectrumPrediction::values() const {
  std::vector<double> out;
  out.reserve(levels.size());
  for (const auto& l : levels) out.push_back(l.value);
  return out;
}

int SpectrumPrediction::created_count() const {
  return static_cast<int>(std::count_if(
      levels.begin(), levels.end(),
      [](const SpectrumLevel& l) { return l.origin == LevelOrigin::created; }));
}

RiccatiSolution chain_alpha(const RiccatiSolution& at_e1,
                            const RiccatiSolution& at_e2,
                            const CertificationOptions& cert) {
  if (std::abs(at_e1.eps() - at_e2.eps()) <= kDegeneracyGuard) {
    throw Error(ErrorKind::degenerate_energies,
                "chaining needs |eps1 - eps2| > 1e-9");
  }
  auto source = std::make_shared<ChainedSource>(at_e1, at_e2);
  const auto [lo, hi] = scan_interval(cert, source->domain(), 1.0);
  const NodelessCertificate c = nodeless_scan(
      [&](double x) { return normalized_wronskian(at_e1, at_e2, x); }, lo, hi,
      cert.points);
  check_scan(c, 1.0, ErrorKind::denominator_zero,
             "denominator alpha(x, eps1) - alpha(x, eps2)");

  PotentialFn v1 = [at_e1](double x) { return first_order_value(at_e1, x); };
  return RiccatiSolution(at_e2.eps(), RiccatiBackend::chained, std::move(source),
                         std::move(v1));
}

GeneratedPotential first_order_potential(const RiccatiSolution& sol,
                                         const CertificationOptions& cert) {
  const auto [lo, hi] = scan_interval(cert, sol.domain(), 1.0);
  std::vector<NodelessCertificate> certs{nodeless_scan(
      [&](double y) { return sol.normalized_psi(y); }, lo, hi, cert.points)};
  check_scan(certs.back(), 1.0, ErrorKind::singular_potential,
             "Schroedinger solution psi");
  return GeneratedPotential(
      std::nullopt, [sol](double y) { return first_order_value(sol, y); },
      {lo, hi}, std::move(certs));
}

GeneratedPotential second_order_potential(const RiccatiSolution& at_e1,
                                          const RiccatiSolution& at_e2,
                                          const CertificationOptions& cert) {
  if (std::abs(at_e1.eps() - at_e2.eps()) <= kDegeneracyGuard) {
    throw Error(ErrorKind::degenerate_energies,
                "second order needs |eps1 - eps2| > 1e-9");
  }
  const auto [a1, b1] = at_e1.domain();
  const auto [a2, b2] = at_e2.domain();
  const auto [lo, hi] =
      scan_interval(cert, {std::max(a1, a2), std::min(b1, b2)}, 1.0);
  std::vector<NodelessCertificate> certs{nodeless_scan(
      [&](double y) { return normalized_wronskian(at_e1, at_e2, y); }, lo, hi,
      cert.points)};
  check_scan(certs.back(), 1.0, ErrorKind::singular_potential,
             "denominator alpha(x, eps1) - alpha(x, eps2)");
  return GeneratedPotential(
      std::nullopt,
      [at_e1, at_e2](double y) { return second_order_value(at_e1, at_e2, y); },
      {lo, hi}, std::move(certs));
}

GeneratedPotential first_order_potential(const FactorizationConfig& f1,
                                         const CertificationOptions& cert) {
  return build_oscillator(TransformSpec::first_order(f1), cert);
}

GeneratedPotential second_order_potential(const FactorizationConfig& f1,
                                          const FactorizationConfig& f2,
                                          const CertificationOptions& cert) {
  return build_oscillator(TransformSpec::second_order(f1, f2), cert);
}

GeneratedPotential scaled_first_potential(const FactorizationConfig& f1,
                                          const ScalingParam& s1,
                                          const CertificationOptions& cert) {
  return build_oscillator(TransformSpec::scaled_first(f1, s1), cert);
}

GeneratedPotential scaled_second_potential(const FactorizationConfig& f1,
                                           const ScalingParam& s1,
                                           const FactorizationConfig& f2,
                                           const ScalingParam& s2,
                                           const CertificationOptions& cert) {
  return build_oscillator(TransformSpec::scaled_second(f1, s1, f2, s2), cert);
}

GeneratedPotential build_potential(const TransformSpec& spec,
                                   const CertificationOptions& cert) {
  return build_oscillator(spec, cert);
}

SpectrumPrediction predict_spectrum(const TransformSpec& spec, int n_max) {
  spec.validate();
  const double scale = spec.energy_scale();
  SpectrumPrediction out;
  out.levels.push_back({scale * spec.f1.eps, LevelOrigin::created, 1, scale});
  if (spec.two_step()) {
    out.levels.push_back({scale * spec.f2->eps, LevelOrigin::created, 2, scale});
  }
  for (int n = 0; n < n_max; ++n) {
    out.levels.push_back(
        {scale * (n + kOscillatorGroundEnergy), LevelOrigin::inherited, n, scale});
  }
  std::sort(out.levels.begin(), out.levels.end(),
            [](const SpectrumLevel& a, const SpectrumLevel& b) {
              return a.value < b.value;
            });
  return out;
}

GroundStateFunction ground_state_fn(const TransformSpec& spec, const Grid& grid) {
  spec.validate();
  grid.validate();
  if (spec.two_step()) {
    throw Error(ErrorKind::invalid_argument,
                "ground states are constructed for one-step transforms only");
  }
  const double q = spec.total_scale();
  const RiccatiSolution sol = oscillator_solution(spec.f1);
  const int n = grid.n_points;
  const double h = grid.spacing();

  std::vector<double> alpha(n);
  for (int i = 0; i < n; ++i) {
    alpha[i] = sol.alpha(grid.x(i) / q, 0)[0] / q;
  }
  // Cumulative trapezoid from the node closest to 0; the base point only
  // changes the normalization constant.
  int origin = static_cast<int>(std::lround(-grid.x_min / h));
  origin = std::clamp(origin, 0, n - 1);
  std::vector<double> log_psi(n, 0.0);
  for (int i = origin + 1; i < n; ++i) {
    log_psi[i] = log_psi[i - 1] - 0.5 * h * (alpha[i - 1] + alpha[i]);
  }
  for (int i = origin - 1; i >= 0; --i) {
    log_psi[i] = log_psi[i + 1] + 0.5 * h * (alpha[i] + alpha[i + 1]);
  }
  const double peak = *std::max_element(log_psi.begin(), log_psi.end());
  GroundStateFunction out{grid, std::vector<double>(n), spec.f1.eps / (q * q)};
  double norm2 = 0.0;
  for (int i = 0; i < n; ++i) {
    out.samples[i] = std::exp(log_psi[i] - peak);
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    norm2 += w * out.samples[i] * out.samples[i];
  }
  const double inv = 1.0 / std::sqrt(norm2 * h);
  for (double& s : out.samples) s *= inv;
  return out;
}

double f_diagnostic(double x, const FactorizationConfig& f1,
                    const ScalingParam& s1) {
  const double q = s1.q();
  const RiccatiSolution sol = oscillator_solution(f1);
  // q^2 alpha1'(x) = alpha'(x / q)
  const double scaled_alpha_prime = sol.alpha(x / q, 1)[1];
  return scaled_alpha_prime + q * q * oscillator_potential(x) -
         oscillator_potential(x / q);
}

TestFunction gaussian_test_function(double center, double width) {
  return [center, width](double y) {
    Taylor expo(Taylor::kMaxOrder);
    const double d = y - center;
    const double w2 = width * width;
    expo[0] = -0.5 * d * d / w2;
    expo[1] = -d / w2;
    expo[2] = -0.5 / w2;
    return exp(expo);
  };
}

double intertwining_residual(const TransformSpec& spec,
                             const TestFunction& test_fn,
                             const std::vector<double>& probes) {
  spec.validate();
  const GeneratedPotential potential = build_potential(spec);
  const double q = spec.total_scale();
  const double c = 1.0 / (q * q);
  const double dilation = 1.0 / std::sqrt(q);
  const int order = spec.two_step() ? 4 : 3;

  const RiccatiSolution s1 = oscillator_solution(spec.f1);
  std::optional<RiccatiSolution> s2;
  if (spec.two_step()) {
    s2 = chain_alpha(s1, oscillator_solution(*spec.f2));
  }

  double worst = 0.0;
  for (double x : probes) {
    const double z = x / q;
    const Taylor b1 = dilated_alpha(s1, x, q, order - 1);
    std::optional<Taylor> b2;
    if (s2) b2 = dilated_alpha(*s2, x, q, order - 2);
    auto intertwiner = [&](const Taylor& f) {
      Taylor chi = (b1 * f - f.differentiated()) * kInvSqrt2;
      if (b2) chi = (*b2 * chi - chi.differentiated()) * kInvSqrt2;
      return chi;
    };

    const Taylor phi = test_fn(z).truncated(order);
    if (phi.order() < order) {
      throw Error(ErrorKind::invalid_argument,
                  "test function must provide derivatives up to order " +
                      std::to_string(order));
    }
    const Taylor chi = intertwiner(phi.stretched(1.0 / q) * dilation);
    const double lhs = -chi[2] + potential(x) * chi[0];

    const Taylor h0_phi = phi.differentiated().differentiated() * -0.5 +
                          oscillator_series(z, order) * phi;
    const Taylor rhs_chi = intertwiner(h0_phi.stretched(1.0 / q) * dilation);
    worst = std::max(worst, std::abs(lhs - c * rhs_chi[0]));
  }
  return worst;
}

double factorization_residual(const TransformSpec& spec,
                              const TestFunction& test_fn,
                              const std::vector<double>& probes) {
  spec.validate();
  if (spec.two_step()) {
    throw Error(ErrorKind::invalid_argument,
                "factorization identities are checked for one-step transforms");
  }
  const GeneratedPotential potential = build_potential(spec);
  const double q = spec.total_scale();
  const double eps = spec.f1.eps;
  const RiccatiSolution sol = oscillator_solution(spec.f1);

  double worst = 0.0;
  for (double x : probes) {
    // H0 phi = A A+ phi + eps phi in the base coordinate.
    {
      const double z = x / q;
      const Taylor phi = test_fn(z).truncated(2);
      const Taylor a = sol.alpha(z, 1);
      const Taylor up = (a * phi - phi.differentiated()) * kInvSqrt2;
      const Taylor down = (up.differentiated() + a.truncated(0) * up) * kInvSqrt2;
      const double h0 = -phi[2] + oscillator_potential(z) * phi[0];
      worst = std::max(worst, std::abs(h0 - (down[0] + eps * phi[0])));
    }
    // H~1 psi = A+ A psi + q^-2 eps psi in x.
    {
      const Taylor psi = test_fn(x).truncated(2);
      const Taylor a = dilated_alpha(sol, x, q, 1);
      const Taylor down = (psi.differentiated() + a.truncated(1) * psi) * kInvSqrt2;
      const Taylor up = (a.truncated(0) * down - down.differentiated()) * kInvSqrt2;
      const double h1 = -psi[2] + potential(x) * psi[0];
      worst = std::max(worst, std::abs(h1 - (up[0] + eps / (q * q) * psi[0])));
    }
  }
  return worst;
}

int count_local_minima(const PotentialFn& potential, const Grid& grid) {
  grid.validate();
  std::vector<double> v(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) v[i] = potential(grid.x(i));
  int count = 0;
  for (int i = 1; i + 1 < grid.n_points; ++i) {
    if (v[i] < v[i - 1] && v[i] < v[i + 1]) ++count;
  }
  return count;
}

}  // namespace spectra
