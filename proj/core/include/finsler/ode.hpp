#pragma once

#include <functional>

#include "finsler/geometry.hpp"

namespace finsler {

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double initial_step = 0.0;  // 0 -> heuristic
  double min_step = 1e-14;
  long max_steps = 2000000;
};

using OdeRhs = std::function<void(double t, const Vec& y, Vec& dydt)>;
/// Returns false when the state has left the admissible domain.
using OdeGuard = std::function<bool(double t, const Vec& y)>;

/// One accepted node: time, state and derivative (for Hermite interpolation).
struct OdeNode {
  double t;
  Vec y;
  Vec f;
};

struct OdeStats {
  long steps = 0;
  long rejected = 0;
  double max_error_estimate = 0.0;  // max accepted scaled error
};

struct OdeSolution {
  std::vector<OdeNode> nodes;
  bool reached_end = false;
  bool stopped_by_guard = false;
  OdeStats stats;

  double t_begin() const { return nodes.front().t; }
  double t_end() const { return nodes.back().t; }
  /// Cubic Hermite dense output on the accepted steps.
  Vec sample(double t) const;
};

/// Adaptive Dormand-Prince 5(4) with FSAL and PI-free standard step control.
/// Throws std::runtime_error on step-size underflow or step budget overrun.
OdeSolution integrate_dp45(const OdeRhs& rhs, double t0, const Vec& y0, double t1,
                           const OdeOptions& options = {}, const OdeGuard& guard = nullptr);

}  // namespace finsler
