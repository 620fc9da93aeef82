#include "finsler/model.hpp"

#include <cmath>
#include <stdexcept>

namespace finsler {

namespace {

TaylorScalar dot_yy(const std::vector<TaylorScalar>& y) {
  TaylorScalar s = y[0] * y[0];
  for (std::size_t i = 1; i < y.size(); ++i) s += y[i] * y[i];
  return s;
}

TaylorScalar dot_xx(const std::vector<TaylorScalar>& x) {
  TaylorScalar s = x[0] * x[0];
  for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * x[i];
  return s;
}

}  // namespace

FinslerModel make_euclidean(int n) {
  FinslerModel m;
  m.name = "euclidean" + std::to_string(n);
  m.n = n;
  m.chart = ChartBox::cube(n, 8.0);
  m.f2 = [](const std::vector<TaylorScalar>&, const std::vector<TaylorScalar>& y) {
    return dot_yy(y);
  };
  m.info.is_riemannian = true;
  m.info.is_x_independent = true;
  m.info.is_flat_expected = true;
  m.info.constant_curvature = 0.0;
  m.a_matrix = [n](const Vec&) { return Mat::Identity(n, n); };
  return m;
}

FinslerModel make_s2_stereographic() {
  // Round sphere, projection from the north pole; the chart origin is the
  // south pole, the equator is the unit circle, a_ij = 4/(1+|x|^2)^2 delta_ij.
  FinslerModel m;
  m.name = "s2-stereographic";
  m.n = 2;
  m.chart = ChartBox::cube(2, 4.0);
  m.f2 = [](const std::vector<TaylorScalar>& x, const std::vector<TaylorScalar>& y) {
    TaylorScalar r2 = dot_xx(x);
    TaylorScalar denom = (1.0 + r2) * (1.0 + r2);
    return 4.0 * dot_yy(y) / denom;
  };
  m.info.is_riemannian = true;
  m.info.constant_curvature = 1.0;
  m.a_matrix = [](const Vec& x) {
    double c = 4.0 / std::pow(1.0 + x.squaredNorm(), 2);
    return Mat(c * Mat::Identity(2, 2));
  };
  return m;
}

FinslerModel make_s2_polar() {
  // Round sphere in colatitude/longitude coordinates, a = diag(1, sin^2 x1).
  FinslerModel m;
  m.name = "s2-polar";
  m.n = 2;
  m.chart.lo = Vec(2);
  m.chart.hi = Vec(2);
  m.chart.lo << 0.3, -1.2;
  m.chart.hi << M_PI - 0.3, 1.2;
  m.f2 = [](const std::vector<TaylorScalar>& x, const std::vector<TaylorScalar>& y) {
    TaylorScalar s = sin(x[0]);
    return y[0] * y[0] + s * s * y[1] * y[1];
  };
  m.info.is_riemannian = true;
  m.info.constant_curvature = 1.0;
  m.a_matrix = [](const Vec& x) {
    Mat a = Mat::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = std::pow(std::sin(x[0]), 2);
    return a;
  };
  return m;
}

FinslerModel make_hyperbolic_disk() {
  // Poincare disk, a_ij = 4/(1-|x|^2)^2 delta_ij, curvature -1.
  FinslerModel m;
  m.name = "hyperbolic-disk";
  m.n = 2;
  m.chart = ChartBox::cube(2, 0.6);
  m.f2 = [](const std::vector<TaylorScalar>& x, const std::vector<TaylorScalar>& y) {
    TaylorScalar r2 = dot_xx(x);
    TaylorScalar denom = (1.0 - r2) * (1.0 - r2);
    return 4.0 * dot_yy(y) / denom;
  };
  m.info.is_riemannian = true;
  m.info.constant_curvature = -1.0;
  m.a_matrix = [](const Vec& x) {
    double c = 4.0 / std::pow(1.0 - x.squaredNorm(), 2);
    return Mat(c * Mat::Identity(2, 2));
  };
  return m;
}

FinslerModel make_flat_torus() {
  FinslerModel m = make_euclidean(2);
  m.name = "flat-torus";
  m.chart = ChartBox::cube(2, 3.0);
  return m;
}

FinslerModel make_minkowski_quartic(int n) {
  FinslerModel m;
  m.name = n == 2 ? "minkowski-quartic" : "minkowski-quartic" + std::to_string(n);
  m.n = n;
  m.chart = ChartBox::cube(n, 8.0);
  m.f2 = [](const std::vector<TaylorScalar>&, const std::vector<TaylorScalar>& y) {
    TaylorScalar q = pow_int(y[0], 4);
    for (std::size_t i = 1; i < y.size(); ++i) q += pow_int(y[i], 4);
    return sqrt(q);
  };
  m.info.is_x_independent = true;
  m.info.is_flat_expected = true;
  // g degenerates toward the coordinate axes; sample well away from them.
  m.info.sampling_min_metric_eig = 1e-3;
  return m;
}

FinslerModel make_randers_flat(Mat a, Vec b) {
  const int n = static_cast<int>(b.size());
  FinslerModel m;
  m.name = "randers-flat";
  m.n = n;
  m.chart = ChartBox::cube(n, 8.0);
  m.f2 = [a, b](const std::vector<TaylorScalar>&, const std::vector<TaylorScalar>& y) {
    TaylorScalar quad = TaylorScalar::constant(0.0, y[0].space());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        if (a(i, j) != 0.0) quad += a(i, j) * (y[i] * y[j]);
    TaylorScalar drift = TaylorScalar::constant(0.0, y[0].space());
    for (int i = 0; i < b.size(); ++i)
      if (b[i] != 0.0) drift += b[i] * y[i];
    TaylorScalar f = sqrt(quad) + drift;
    return f * f;
  };
  m.info.is_x_independent = true;
  m.info.is_flat_expected = true;
  return m;
}

FinslerModel make_randers_flat() {
  Vec b(2);
  b << 0.5, 0.0;
  return make_randers_flat(Mat::Identity(2, 2), b);
}

FinslerModel make_randers_curved() {
  // Hyperbolic base metric with a constant drift form b = 0.2 dx1 on a disk
  // chart; |b|_a < 1 throughout, non-Berwald (y-dependent coefficients).
  FinslerModel m;
  m.name = "randers-curved";
  m.n = 2;
  m.chart = ChartBox::cube(2, 0.6);
  m.f2 = [](const std::vector<TaylorScalar>& x, const std::vector<TaylorScalar>& y) {
    TaylorScalar r2 = dot_xx(x);
    TaylorScalar denom = (1.0 - r2) * (1.0 - r2);
    TaylorScalar quad = 4.0 * dot_yy(y) / denom;
    TaylorScalar f = sqrt(quad) + 0.2 * y[0];
    return f * f;
  };
  return m;
}

const std::vector<std::string>& builtin_model_names() {
  static const std::vector<std::string> names = {
      "euclidean2",        "euclidean3",   "s2-stereographic",
      "s2-polar",          "hyperbolic-disk", "flat-torus",
      "minkowski-quartic", "minkowski-quartic3", "randers-flat",
      "randers-curved"};
  return names;
}

FinslerModel make_builtin(const std::string& name) {
  if (name == "euclidean2") return make_euclidean(2);
  if (name == "euclidean3") return make_euclidean(3);
  if (name == "s2-stereographic") return make_s2_stereographic();
  if (name == "s2-polar") return make_s2_polar();
  if (name == "hyperbolic-disk") return make_hyperbolic_disk();
  if (name == "flat-torus") return make_flat_torus();
  if (name == "minkowski-quartic") return make_minkowski_quartic(2);
  if (name == "minkowski-quartic3") return make_minkowski_quartic(3);
  if (name == "randers-flat") return make_randers_flat();
  if (name == "randers-curved") return make_randers_curved();
  throw std::invalid_argument("unknown built-in model: " + name);
}

// --- Operations ---------------------------------------------------------

namespace {

void check_site(const FinslerModel& model, const PointedVector& site) {
  if (site.dim() != model.n)
    throw std::invalid_argument("site dimension does not match model");
  if (!model.chart.contains(site.x))
    throw std::domain_error("site lies outside the chart of " + model.name);
  if (!site.anchored()) throw std::domain_error("anchor direction y must be nonzero");
}

}  // namespace

double eval_F2_raw(const FinslerModel& model, const PointedVector& site) {
  return eval_program(model.f2, site);
}

double eval_F(const FinslerModel& model, const PointedVector& site) {
  check_site(model, site);
  double f2 = eval_F2_raw(model, site);
  if (!(f2 > 0.0))
    throw std::domain_error("F^2 is not positive at the site (model " + model.name + ")");
  return std::sqrt(f2);
}

double eval_F(const FinslerModel& model, const Vec& x, const Vec& y) {
  return eval_F(model, PointedVector(x, y));
}

Mat metric_matrix_raw(const FinslerModel& model, const PointedVector& site) {
  const int n = model.n;
  TaylorScalar jet = eval_jet(model.f2, site, JetOrders{0, 2});
  Mat g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      MultiIndex ay(n, 0);
      ay[i] += 1;
      ay[j] += 1;
      double val = 0.5 * jet.partial(MultiIndex(n, 0), ay);
      g(i, j) = val;
      g(j, i) = val;
    }
  }
  return g;
}

MetricValue metric_tensor(const FinslerModel& model, const PointedVector& site) {
  check_site(model, site);
  Mat g = metric_matrix_raw(model, site);
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  const double floor = 1e-8 * std::max(1.0, g.trace());
  if (es.eigenvalues().minCoeff() <= floor)
    throw std::domain_error("metric tensor is not positive definite at the site (model " +
                            model.name + ")");
  MetricValue mv;
  mv.g = std::move(g);
  mv.g_inv = mv.g.inverse();
  mv.site = site;
  return mv;
}

double check_homogeneity(const FinslerModel& model,
                         const std::vector<PointedVector>& sites,
                         const std::vector<double>& factors) {
  double worst = 0.0;
  for (const auto& site : sites) {
    double f2 = eval_F2_raw(model, site);
    double f = std::sqrt(std::max(0.0, f2));
    for (double t : factors) {
      if (!(t > 0.0)) throw std::invalid_argument("homogeneity factors must be positive");
      PointedVector scaled(site.x, t * site.y);
      double ft = std::sqrt(std::max(0.0, eval_F2_raw(model, scaled)));
      worst = std::max(worst, std::abs(ft - t * f));
    }
  }
  return worst;
}

double check_strong_convexity(const FinslerModel& model,
                              const std::vector<PointedVector>& sites) {
  double min_eig = std::numeric_limits<double>::infinity();
  for (const auto& site : sites) {
    Mat g = metric_matrix_raw(model, site);
    Eigen::SelfAdjointEigenSolver<Mat> es(g);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  return min_eig;
}

PointedVector sample_site(const FinslerModel& model, Rng& rng, bool normalize,
                          double margin_fraction) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    Vec x = rng.point_in(model.chart, margin_fraction);
    Vec y = rng.direction(model.n);
    PointedVector site(x, y);
    Mat g = metric_matrix_raw(model, site);
    Eigen::SelfAdjointEigenSolver<Mat> es(g);
    if (es.eigenvalues().minCoeff() < model.info.sampling_min_metric_eig) continue;
    if (normalize) {
      double f = std::sqrt(eval_F2_raw(model, site));
      site.y /= f;
    }
    return site;
  }
  throw std::runtime_error("sample_site: could not draw an admissible site for " +
                           model.name);
}

std::vector<PointedVector> sample_sites(const FinslerModel& model, Rng& rng,
                                        int count, bool normalize) {
  std::vector<PointedVector> sites;
  sites.reserve(count);
  for (int i = 0; i < count; ++i) sites.push_back(sample_site(model, rng, normalize));
  return sites;
}

}  // namespace finsler
