#include "finsler/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace finsler {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 4th-order embedded weights.
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

}  // namespace

Vec OdeSolution::sample(double t) const {
  if (nodes.empty()) throw std::runtime_error("OdeSolution::sample: empty solution");
  if (nodes.size() == 1) return nodes.front().y;
  const double ta = nodes.front().t, tb = nodes.back().t;
  const bool fwd = tb >= ta;
  if ((fwd && (t < ta || t > tb)) || (!fwd && (t > ta || t < tb)))
    throw std::out_of_range("OdeSolution::sample: time outside the computed span");

  // Locate the step interval containing t.
  std::size_t lo = 0, hi = nodes.size() - 1;
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if ((nodes[mid].t <= t) == fwd)
      lo = mid;
    else
      hi = mid;
  }
  const OdeNode& n0 = nodes[lo];
  const OdeNode& n1 = nodes[hi];
  const double h = n1.t - n0.t;
  if (h == 0.0) return n0.y;
  const double s = (t - n0.t) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  return h00 * n0.y + (h10 * h) * n0.f + h01 * n1.y + (h11 * h) * n1.f;
}

OdeSolution integrate_dp45(const OdeRhs& rhs, double t0, const Vec& y0, double t1,
                           const OdeOptions& options, const OdeGuard& guard) {
  const int n = static_cast<int>(y0.size());
  const double dir = t1 >= t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);

  OdeSolution sol;
  Vec y = y0;
  double t = t0;
  Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), y5(n), err(n);
  rhs(t, y, k1);
  sol.nodes.push_back({t, y, k1});

  if (span == 0.0) {
    sol.reached_end = true;
    return sol;
  }

  double h = options.initial_step > 0.0 ? options.initial_step : span / 100.0;
  h = std::min(h, span) * dir;

  auto scaled_err = [&](const Vec& ya, const Vec& yb, const Vec& e) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
      double sc = options.abs_tol +
                  options.rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
      m = std::max(m, std::abs(e[i]) / sc);
    }
    return m;
  };

  while ((t - t1) * dir < 0.0) {
    if (std::abs(h) < options.min_step)
      throw std::runtime_error("integrate_dp45: step size underflow");
    if (sol.stats.steps + sol.stats.rejected > options.max_steps)
      throw std::runtime_error("integrate_dp45: step budget exceeded");
    if ((t + h - t1) * dir > 0.0) h = t1 - t;

    ytmp = y + h * (a21 * k1);
    rhs(t + c2 * h, ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h, ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h, ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h, ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, ytmp, k6);
    y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + h, y5, k7);  // FSAL
    err = y5 - (y + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));

    const double em = scaled_err(y, y5, err);
    if (em <= 1.0) {
      // Accepted. Guard check: retreat toward the boundary on failure.
      if (guard && !guard(t + h, y5)) {
        if (std::abs(h) < 16.0 * options.min_step) {
          sol.stopped_by_guard = true;
          return sol;
        }
        h *= 0.5;
        ++sol.stats.rejected;
        continue;
      }
      t += h;
      y = y5;
      k1 = k7;
      sol.nodes.push_back({t, y, k1});
      ++sol.stats.steps;
      sol.stats.max_error_estimate = std::max(sol.stats.max_error_estimate, em);
      const double grow = em == 0.0 ? 5.0 : 0.9 * std::pow(em, -0.2);
      h *= std::clamp(grow, 0.2, 5.0);
      if (std::abs(h) > span) h = span * dir;
    } else {
      ++sol.stats.rejected;
      h *= std::clamp(0.9 * std::pow(em, -0.2), 0.1, 0.9);
    }
  }
  sol.reached_end = true;
  return sol;
}

}  // namespace finsler
