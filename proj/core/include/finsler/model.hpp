#pragma once

#include <optional>
#include <string>

#include "finsler/jets.hpp"
#include "finsler/rng.hpp"

namespace finsler {

/// Known-answer metadata attached to a model.
struct ModelInfo {
  bool is_riemannian = false;
  /// F does not depend on the base point (a Minkowski norm on the chart).
  bool is_x_independent = false;
  bool is_flat_expected = false;
  /// Constant sectional curvature, when the model has one in closed form.
  std::optional<double> constant_curvature;
  /// Site sampling rejects anchors whose metric falls below this eigenvalue
  /// floor (kept above the global 1e-8 policy where derivatives degenerate,
  /// e.g. near the coordinate axes of the quartic norm).
  double sampling_min_metric_eig = 1e-8;
};

/// A concrete Finsler space: chart domain, squared Finsler function as a jet
/// program, and metadata. Immutable after construction; evaluations are pure.
struct FinslerModel {
  std::string name;
  int n = 0;
  ChartBox chart;
  ScalarProgram f2;
  ModelInfo info;
  /// For Riemannian models: the defining matrix a_ij(x). Null otherwise.
  std::function<Mat(const Vec&)> a_matrix;
};

/// Metric tensor value at a site, with its inverse.
struct MetricValue {
  Mat g;
  Mat g_inv;
  PointedVector site;
};

// Built-in model families.
FinslerModel make_euclidean(int n);
FinslerModel make_s2_stereographic();
FinslerModel make_s2_polar();
FinslerModel make_hyperbolic_disk();
FinslerModel make_flat_torus();
FinslerModel make_minkowski_quartic(int n);
/// Randers norm F = sqrt(y^T a y) + b.y with constant a, b (Minkowski type).
FinslerModel make_randers_flat(Mat a, Vec b);
FinslerModel make_randers_flat();  // a = I, b = (0.5, 0)
/// Randers metric on a disk chart: hyperbolic base a_ij, constant drift b.
FinslerModel make_randers_curved();

const std::vector<std::string>& builtin_model_names();
FinslerModel make_builtin(const std::string& name);

/// JSON descriptor ingestion: {"family": ..., "dim": ..., "params": {...},
/// "chart": {"lo": [...], "hi": [...]}}. Throws std::invalid_argument with a
/// schema message on malformed input.
FinslerModel model_from_json(const std::string& json_text);
FinslerModel model_from_json_file(const std::string& path);

// --- Operations ---------------------------------------------------------

/// F(x, y) = sqrt(F^2). Throws std::domain_error off-chart or at y = 0.
double eval_F(const FinslerModel& model, const PointedVector& site);
double eval_F(const FinslerModel& model, const Vec& x, const Vec& y);

/// F^2 without the site checks (used by hot loops that already validated).
double eval_F2_raw(const FinslerModel& model, const PointedVector& site);

/// g_ij = 1/2 d^2 F^2 / dy_i dy_j with inverse; throws std::domain_error when
/// the result is not positive definite (not a Finsler metric at that site).
MetricValue metric_tensor(const FinslerModel& model, const PointedVector& site);

/// g without the positive-definiteness gate (for convexity scans).
Mat metric_matrix_raw(const FinslerModel& model, const PointedVector& site);

/// max |F(x, t y) - t F(x, y)| over the supplied sites and factors.
double check_homogeneity(const FinslerModel& model,
                         const std::vector<PointedVector>& sites,
                         const std::vector<double>& factors);

/// min eigenvalue of g over the supplied sites (> 0 certifies the sample).
double check_strong_convexity(const FinslerModel& model,
                              const std::vector<PointedVector>& sites);

/// Seeded site sampler honoring the chart margin and the per-model metric
/// eigenvalue floor; y is normalized to F(x, y) = 1 when requested.
PointedVector sample_site(const FinslerModel& model, Rng& rng,
                          bool normalize = true, double margin_fraction = 0.15);

std::vector<PointedVector> sample_sites(const FinslerModel& model, Rng& rng,
                                        int count, bool normalize = true);

}  // namespace finsler
