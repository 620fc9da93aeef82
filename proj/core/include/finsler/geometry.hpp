#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace finsler {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Evaluation site (x, y) on the slit tangent bundle: a chart point x with a
/// nonzero anchor direction y.
struct PointedVector {
  Vec x;
  Vec y;

  PointedVector() = default;
  PointedVector(Vec x_, Vec y_) : x(std::move(x_)), y(std::move(y_)) {
    if (x.size() != y.size())
      throw std::invalid_argument("PointedVector: x and y dimensions differ");
  }
  int dim() const { return static_cast<int>(x.size()); }
  bool anchored() const { return y.size() > 0 && y.lpNorm<Eigen::Infinity>() > 0.0; }
};

/// Axis-aligned chart domain.
struct ChartBox {
  Vec lo;
  Vec hi;

  static ChartBox cube(int n, double half_width) {
    ChartBox b;
    b.lo = Vec::Constant(n, -half_width);
    b.hi = Vec::Constant(n, half_width);
    return b;
  }

  int dim() const { return static_cast<int>(lo.size()); }

  bool contains(const Vec& x, double margin = 0.0) const {
    for (int i = 0; i < x.size(); ++i)
      if (x[i] < lo[i] + margin || x[i] > hi[i] - margin) return false;
    return true;
  }

  /// Distance from x to the nearest face (negative outside).
  double boundary_margin(const Vec& x) const {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < x.size(); ++i) {
      m = std::min(m, x[i] - lo[i]);
      m = std::min(m, hi[i] - x[i]);
    }
    return m;
  }

  Vec extent() const { return hi - lo; }
};

}  // namespace finsler
