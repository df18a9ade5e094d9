#include "spectra/app/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>

#include "spectra/app/oracles.hpp"
#include "spectra/eigensolver.hpp"
#include "spectra/error.hpp"
#include "spectra/riccati.hpp"
#include "spectra/transforms.hpp"

namespace spectra::acceptance {
namespace {

std::string printf_string(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof buffer, format, args);
  va_end(args);
  return buffer;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

// Collects named bounds of the form measured <= limit.
class Checks {
 public:
  void check(const std::string& name, double measured, double limit) {
    const bool ok = measured <= limit;
    pass_ = pass_ && ok;
    append(printf_string("%s %.2e<=%.0e%s", name.c_str(), measured, limit,
                         ok ? "" : " FAIL"));
  }
  void require(const std::string& name, bool ok) {
    pass_ = pass_ && ok;
    append(name + (ok ? " ok" : " FAIL"));
  }
  void fail(const std::string& what) {
    pass_ = false;
    append(what);
  }

  CriterionResult result(int id, std::string title) const {
    return {id, std::move(title), pass_, detail_};
  }

 private:
  void append(const std::string& s) {
    if (!detail_.empty()) detail_ += "; ";
    detail_ += s;
  }

  bool pass_ = true;
  std::string detail_;
};

CriterionResult guarded(int id, const std::string& title,
                        const std::function<CriterionResult()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    return {id, title, false, "unexpected error: " + e.reason()};
  } catch (const std::exception& e) {
    return {id, title, false, std::string("unexpected exception: ") + e.what()};
  }
}

// Verifies the spectrum of a spec and records per-level checks.
VerificationReport check_spectrum(Checks& checks, const std::string& name,
                                  const TransformSpec& spec, int n_max,
                                  double tol, const Grid& grid = Grid{}) {
  const GeneratedPotential potential = build_potential(spec);
  const SpectrumPrediction predicted = predict_spectrum(spec, n_max);
  VerificationReport report =
      verify_spectrum(predicted, potential.as_function(), grid, tol);
  double worst = 0.0;
  double bound = tol;
  for (std::size_t i = 0; i < report.abs_errors.size(); ++i) {
    if (report.abs_errors[i] / report.level_tolerances[i] > worst / bound) {
      worst = report.abs_errors[i];
      bound = report.level_tolerances[i];
    }
  }
  checks.check(name + " FD error", worst, bound);
  if (!report.pass) checks.fail(name + " verification failed");
  return report;
}

double max_asymmetry(const PotentialFn& v, double half_width) {
  double worst = 0.0;
  for (double x : linspace(0.0, half_width, 601)) {
    worst = std::max(worst, std::abs(v(x) - v(-x)));
  }
  return worst;
}

}  // namespace

CriterionResult baseline_oscillator() {
  const std::string title = "FD eigensolver reproduces the oscillator spectrum";
  return guarded(1, title, [&] {
    Checks checks;
    const auto op = discretize(oscillator_potential, Grid{});
    const auto levels = lowest_eigenvalues(op, 5);
    double worst = 0.0;
    for (int n = 0; n < 5; ++n) {
      worst = std::max(worst, std::abs(levels[n] - (n + 0.5)));
    }
    checks.check("max |E_n - (n+1/2)|", worst, 2e-3);
    return checks.result(1, title);
  });
}

CriterionResult first_order_ground_state() {
  const std::string title = "first-order transform adds a ground state at eps1";
  return guarded(2, title, [&] {
    Checks checks;
    check_spectrum(checks, "eps1=-1 nu1=0.5",
                   TransformSpec::first_order({-1.0, 0.5}), 4, 2e-3);
    const GeneratedPotential v = first_order_potential(FactorizationConfig{-0.5, 0.0});
    double worst = 0.0;
    for (double x : linspace(-6.0, 6.0, 1201)) {
      worst = std::max(worst, std::abs(v(x) - (0.5 * x * x - 1.0)));
    }
    checks.check("|V1 - (x^2/2 - 1)|", worst, 1e-10);
    return checks.result(2, title);
  });
}

CriterionResult half_energy_reduction() {
  const std::string title = "alpha at eps=-1/2 matches the erf closed form";
  return guarded(3, title, [&] {
    Checks checks;
    for (double nu : {0.3, -0.7}) {
      double worst = 0.0;
      for (double x : linspace(-5.0, 5.0, 1001)) {
        const double a = alpha_oscillator(x, {-0.5, nu}).alpha;
        worst = std::max(worst, std::abs(a - oracles::alpha_half_reduction(x, nu)));
      }
      checks.check(printf_string("nu=%g", nu), worst, 1e-8);
    }
    return checks.result(3, title);
  });
}

CriterionResult moving_first_excited() {
  const std::string title = "second-order: only the first excited level moves";
  return guarded(4, title, [&] {
    Checks checks;
    const Grid fine{-10.0, 10.0, 4001};
    std::vector<std::vector<double>> runs;
    for (double e1 : {0.4, -0.4, 0.0}) {
      const auto spec = TransformSpec::second_order({e1, 0.0}, {-0.5, 10000.0});
      const auto report = check_spectrum(checks, printf_string("eps1=%g", e1),
                                         spec, 3, 2e-3, fine);
      checks.check(printf_string("eps1=%g second level", e1),
                   std::abs(report.computed[1] - e1), 2e-3);
      runs.push_back(report.computed);
    }
    double drift = 0.0;
    for (const auto& run : runs) {
      for (int i : {0, 2, 3, 4}) drift = std::max(drift, std::abs(run[i] - runs[0][i]));
    }
    checks.check("fixed-level drift", drift, 2e-3);
    return checks.result(4, title);
  });
}

CriterionResult fixed_ground_scaling() {
  const std::string title = "scaled first-order keeps the ground level at -1/2";
  return guarded(5, title, [&] {
    Checks checks;
    for (double q : {1.0 / std::sqrt(2.0), 1.0, std::sqrt(2.0)}) {
      const auto spec = TransformSpec::scaled_first({-q * q / 2.0, 0.0}, ScalingParam(q));
      const double tol = default_tolerance(spec.energy_scale());
      const auto report =
          check_spectrum(checks, printf_string("q1=%.4f", q), spec, 4, tol);
      checks.check(printf_string("q1=%.4f ground", q),
                   std::abs(report.computed[0] + 0.5), tol);
      if (q < 1.0) {
        const int minima =
            count_local_minima(build_potential(spec).as_function(), Grid{});
        checks.require(printf_string("double well (%d minima)", minima), minima == 2);
      }
    }
    return checks.result(5, title);
  });
}

CriterionResult fixed_first_excited_scaling() {
  const std::string title = "scaled second-order keeps the first excited level";
  return guarded(6, title, [&] {
    Checks checks;
    std::vector<double> second;
    for (double q : {std::sqrt(2.0), 1.0}) {
      const auto spec = TransformSpec::scaled_second(
          {-q * q / 2.0, 0.0}, ScalingParam(q), {-1.5, 1.1}, ScalingParam(1.0));
      const auto report =
          check_spectrum(checks, printf_string("q1=%.4f", q), spec, 3, 2e-3);
      second.push_back(report.computed[1]);
    }
    checks.check("second-level shift", std::abs(second[0] - second[1]), 2e-3);
    return checks.result(6, title);
  });
}

CriterionResult fixed_two_lowest_scaling() {
  const std::string title = "scaled second-order keeps the two lowest levels";
  return guarded(7, title, [&] {
    Checks checks;
    std::vector<std::vector<double>> runs;
    for (double q : {1.2, 1.0}) {
      const auto spec = TransformSpec::scaled_second(
          {q * q / 4.0, 0.0}, ScalingParam(q), {-q * q / 2.0, 10000.0},
          ScalingParam(1.0));
      runs.push_back(
          check_spectrum(checks, printf_string("q1=%.1f", q), spec, 2, 2e-3).computed);
    }
    const double shift = std::max(std::abs(runs[0][0] - runs[1][0]),
                                  std::abs(runs[0][1] - runs[1][1]));
    checks.check("lowest-two shift", shift, 2e-3);
    return checks.result(7, title);
  });
}

CriterionResult property_suites() {
  const std::string title = "property suites";
  return guarded(8, title, [&] {
    Checks checks;
    const auto probes = linspace(-6.0, 6.0, 201);

    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> eps_dist(-3.0, 0.45);
    std::uniform_real_distribution<double> nu_dist(-0.99, 0.99);
    double riccati = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto sol = oscillator_solution({eps_dist(rng), nu_dist(rng)});
      for (double x : probes) riccati = std::max(riccati, std::abs(riccati_residual(sol, x)));
    }
    checks.check("Riccati residual", riccati, 1e-8);

    double scaled = 0.0;
    for (double q : {1.0 / std::sqrt(2.0), std::sqrt(2.0)}) {
      for (FactorizationConfig f : {FactorizationConfig{-1.0, 0.3},
                                    FactorizationConfig{0.2, -0.5}}) {
        for (double x : probes) {
          const auto base = alpha_oscillator(x / q, f);
          const double a1 = base.alpha / q;
          const double a1p = base.alpha_prime / (q * q);
          const double y = x / q;
          scaled = std::max(scaled, std::abs(q * q * a1p + q * q * a1 * a1 -
                                             2.0 * (0.5 * y * y - f.eps)));
        }
      }
    }
    checks.check("scaled Riccati identity", scaled, 1e-8);

    double reduction = 0.0;
    {
      const FactorizationConfig f1{-1.0, 0.5};
      const FactorizationConfig f2{-1.5, 1.1};
      const auto v1 = first_order_potential(f1);
      const auto v1s = scaled_first_potential(f1, ScalingParam(1.0));
      const auto v2 = second_order_potential(f1, f2);
      const auto v2s = scaled_second_potential(f1, ScalingParam(1.0), f2, ScalingParam(1.0));
      for (double x : probes) {
        reduction = std::max(reduction, std::abs(v1(x) - v1s(x)));
        reduction = std::max(reduction, std::abs(v2(x) - v2s(x)));
      }
    }
    checks.check("q=1 reductions", reduction, 1e-12);

    double swap = 0.0;
    {
      const auto s1 = oscillator_solution({0.4, 0.0});
      const auto s2 = oscillator_solution({-0.5, 10000.0});
      const auto forward = second_order_potential(s1, s2);
      const auto backward = second_order_potential(s2, s1);
      for (double x : probes) swap = std::max(swap, std::abs(forward(x) - backward(x)));
    }
    checks.check("swap symmetry", swap, 1e-12);

    double intertwining = 0.0;
    const auto gauss = gaussian_test_function(0.0, 1.0);
    const auto inner = linspace(-4.0, 4.0, 50);
    for (const auto& spec :
         {TransformSpec::first_order({-0.5, 0.0}),
          TransformSpec::scaled_first({-1.0, 0.0}, ScalingParam(std::sqrt(2.0)))}) {
      intertwining = std::max(intertwining, intertwining_residual(spec, gauss, inner));
      intertwining = std::max(intertwining, factorization_residual(spec, gauss, inner));
    }
    checks.check("intertwining residual", intertwining, 1e-8);

    double asymmetry = 0.0;
    for (double eps : {-2.0, -0.5, 0.3}) {
      asymmetry = std::max(
          asymmetry, max_asymmetry(first_order_potential(FactorizationConfig{eps, 0.0}).as_function(), 6.0));
      for (double q : {1.0 / std::sqrt(2.0), std::sqrt(2.0)}) {
        asymmetry = std::max(
            asymmetry,
            max_asymmetry(scaled_first_potential({eps, 0.0}, ScalingParam(q)).as_function(), 6.0));
      }
    }
    checks.check("nu=0 evenness", asymmetry, 1e-10);

    double agreement = 0.0;
    for (FactorizationConfig f : {FactorizationConfig{-0.5, 0.0}, FactorizationConfig{-1.5, 0.0},
                                  FactorizationConfig{-1.0, 0.4}}) {
      const auto numeric = alpha_numeric(oscillator_potential, f.eps,
                                         oscillator_slope(f), Grid::symmetric(10.0, 2001));
      for (double x : linspace(-5.0, 5.0, 1001)) {
        agreement = std::max(agreement, std::abs(numeric.evaluate(x).alpha -
                                                 alpha_oscillator(x, f).alpha));
      }
    }
    checks.check("backend agreement", agreement, 1e-6);
    return checks.result(8, title);
  });
}

std::vector<CriterionResult> run_library_criteria() {
  return {baseline_oscillator(),        first_order_ground_state(),
          half_energy_reduction(),      moving_first_excited(),
          fixed_ground_scaling(),       fixed_first_excited_scaling(),
          fixed_two_lowest_scaling(),   property_suites()};
}

}  // namespace spectra::acceptance
