#pragma once

#include <Eigen/Core>
#include <functional>
#include <memory>

namespace turnband {

struct QuadratureConfig {
  int nodes = 64;          ///< Gauss-Legendre panel size; error estimate pairs n with 2n
  int max_panels = 1024;
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  double tail_cutoff = 0;  ///< semi-infinite truncation radius; 0 selects it from the envelope

  void check() const;
};

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Nodes and weights for an n-point rule; tables are built once per n and
/// shared immutably afterwards.
std::shared_ptr<const GaussLegendreRule> gauss_legendre_nodes(int n);

struct QuadratureResult {
  double value = 0;
  double err_estimate = 0;
  int panels = 0;
};

using ScalarFunction = std::function<double(double)>;

/// Adaptive panel subdivision on [a, b]. Throws ConvergenceError when
/// max_panels is reached before err_estimate <= max(abs_tol, rel_tol |value|).
QuadratureResult integrate(const ScalarFunction& f, double a, double b,
                           const QuadratureConfig& cfg = {});

/// Normalization constant 2 Gamma(d/2) / (sqrt(pi) Gamma((d-1)/2)) of the
/// turning bands operator, evaluated through the exact ratio recurrence.
double turning_bands_constant(int d);

/// (c_d / x) \int_0^x f(u) (1 - u^2/x^2)^{(d-3)/2} du, evaluated after the
/// substitution u = x sin(s) so that the integrand c_d f(x sin s) cos^{d-2}(s)
/// is regular on [0, pi/2] for every d >= 2.
double integrate_tb(const ScalarFunction& f, double x, int d, const QuadratureConfig& cfg = {});

/// \int_0^\infty f(r) dr for an integrand bounded by envelope(r).
///
/// The cutoff R is cfg.tail_cutoff when positive, otherwise the first
/// doubling of 1 with envelope(R) <= abs_tol / 10 (ConvergenceError when no
/// such R below 1e12 exists, which flags non-integrable input). With
/// oscillation == 0 the remaining tail is integrated after r = R / v;
/// with oscillation > 0 (the angular frequency of the integrand) the tail
/// is dropped and [0, R] is split into blocks of a few periods.
double integrate_semi_infinite(const ScalarFunction& f, const ScalarFunction& envelope,
                               double oscillation, const QuadratureConfig& cfg = {});

}  // namespace turnband
