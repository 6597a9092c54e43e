#include "turnband/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "turnband/errors.hpp"

namespace turnband {

namespace {

struct Panel {
  double a;
  double b;
  double value;
  double err;
};

struct PanelOrder {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    if (lhs.err != rhs.err) return lhs.err < rhs.err;
    return lhs.a > rhs.a;
  }
};

double apply_rule(const GaussLegendreRule& rule, const ScalarFunction& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights(i) * f(mid + half * rule.nodes(i));
  }
  return half * sum;
}

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes(i) = -x;
    rule.nodes(n - 1 - i) = x;
    rule.weights(i) = w;
    rule.weights(n - 1 - i) = w;
  }
  if (n % 2 == 1) rule.nodes(m - 1) = 0.0;
  return rule;
}

}  // namespace

void QuadratureConfig::check() const {
  if (nodes < 2) throw DomainError("quadrature: nodes must be >= 2");
  if (max_panels < 1) throw DomainError("quadrature: max_panels must be >= 1");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("quadrature: tolerances must be > 0");
  if (tail_cutoff < 0.0) throw DomainError("quadrature: tail_cutoff must be >= 0");
}

std::shared_ptr<const GaussLegendreRule> gauss_legendre_nodes(int n) {
  if (n < 2) throw DomainError("gauss_legendre_nodes: n must be >= 2");
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const GaussLegendreRule>(build_rule(n));
  return slot;
}

QuadratureResult integrate(const ScalarFunction& f, double a, double b, const QuadratureConfig& cfg) {
  cfg.check();
  if (!(a <= b)) throw DomainError("integrate: requires a <= b");
  if (a == b) return {0.0, 0.0, 0};

  const auto coarse = gauss_legendre_nodes(cfg.nodes);
  const auto fine = gauss_legendre_nodes(2 * cfg.nodes);
  auto make_panel = [&](double lo, double hi) {
    const double v_fine = apply_rule(*fine, f, lo, hi);
    const double v_coarse = apply_rule(*coarse, f, lo, hi);
    if (!std::isfinite(v_fine)) {
      throw DomainError("integrate: integrand is not finite on the interval");
    }
    return Panel{lo, hi, v_fine, std::fabs(v_fine - v_coarse)};
  };

  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
  queue.push(make_panel(a, b));
  double value = queue.top().value;
  double err = queue.top().err;
  int panels = 1;

  while (err > std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(value))) {
    if (panels >= cfg.max_panels) {
      std::ostringstream msg;
      msg << "integrate: panel budget " << cfg.max_panels << " exhausted on [" << a << ", " << b
          << "], error estimate " << err;
      throw ConvergenceError(msg.str(), value);
    }
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = make_panel(worst.a, mid);
    const Panel right = make_panel(mid, worst.b);
    queue.push(left);
    queue.push(right);
    ++panels;
    value += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
  }
  if (panels > 1) {
    value = 0.0;
    err = 0.0;
    while (!queue.empty()) {
      value += queue.top().value;
      err += queue.top().err;
      queue.pop();
    }
  }
  return {value, err, panels};
}

double turning_bands_constant(int d) {
  if (d < 2) throw DomainError("turning bands: target dimension must be >= 2");
  // c_d = (d - 1) alpha_d with alpha_1 = 1, alpha_2 = 2/pi, alpha_{d+2} = alpha_d d/(d+1).
  double alpha = (d % 2 == 1) ? 1.0 : 2.0 / std::numbers::pi;
  for (int k = (d % 2 == 1) ? 1 : 2; k + 2 <= d; k += 2) alpha *= static_cast<double>(k) / (k + 1);
  return (d - 1) * alpha;
}

double integrate_tb(const ScalarFunction& f, double x, int d, const QuadratureConfig& cfg) {
  if (d <= 1) throw DomainError("integrate_tb: target dimension must be >= 2");
  if (!(x > 0.0)) throw DomainError("integrate_tb: x must be > 0 (x = 0 is the caller's limit)");
  const double c = turning_bands_constant(d);
  const int power = d - 2;
  auto integrand = [&](double s) {
    const double cs = std::cos(s);
    double w = 1.0;
    for (int i = 0; i < power; ++i) w *= cs;
    return f(x * std::sin(s)) * w;
  };
  return c * integrate(integrand, 0.0, 0.5 * std::numbers::pi, cfg).value;
}

double integrate_semi_infinite(const ScalarFunction& f, const ScalarFunction& envelope,
                               double oscillation, const QuadratureConfig& cfg) {
  cfg.check();
  if (oscillation < 0.0) throw DomainError("integrate_semi_infinite: negative oscillation rate");
  double cutoff = cfg.tail_cutoff;
  if (cutoff == 0.0) {
    const double threshold = 0.1 * cfg.abs_tol;
    cutoff = 1.0;
    while (envelope(cutoff) > threshold) {
      cutoff *= 2.0;
      if (cutoff > 1e12) {
        throw ConvergenceError("integrate_semi_infinite: envelope does not decay below " +
                               std::to_string(threshold) + "; integrand is not integrable");
      }
    }
  }

  if (oscillation == 0.0) {
    const double head = integrate(f, 0.0, cutoff, cfg).value;
    auto mapped = [&](double v) {
      if (v == 0.0) return 0.0;
      return f(cutoff / v) * cutoff / (v * v);
    };
    return head + integrate(mapped, 0.0, 1.0, cfg).value;
  }

  const double block = 8.0 * std::numbers::pi / oscillation;
  double total = 0.0;
  for (double lo = 0.0; lo < cutoff; lo += block) {
    total += integrate(f, lo, std::min(lo + block, cutoff), cfg).value;
  }
  return total;
}

}  // namespace turnband
