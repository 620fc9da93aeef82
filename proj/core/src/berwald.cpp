#include "finsler/berwald.hpp"

#include <cmath>
#include <stdexcept>

namespace finsler {

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double Tensor4::max_abs() const {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

namespace {

JetOrders orders_for(TowerDepth depth) {
  switch (depth) {
    case TowerDepth::Spray:
      return {1, 2};
    case TowerDepth::Nonlinear:
      return {1, 3};
    case TowerDepth::BerwaldCoeffs:
      return {1, 4};
    case TowerDepth::Full:
    default:
      return {2, 5};
  }
}

/// Gauss-Jordan inversion of an n x n matrix of jets, pivoting on the
/// constant terms. Valid because g is invertible at the site and the
/// off-constant parts are nilpotent.
std::vector<TaylorScalar> jet_matrix_inverse(std::vector<TaylorScalar> a, int n) {
  const auto space = a[0].space();
  std::vector<TaylorScalar> inv(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      inv[i * n + j] = TaylorScalar::constant(i == j ? 1.0 : 0.0, space);

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col].value()) > std::abs(a[pivot * n + col].value()))
        pivot = r;
    if (std::abs(a[pivot * n + col].value()) < 1e-14)
      throw std::domain_error("metric tensor is numerically singular at the site");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a[pivot * n + j], a[col * n + j]);
        std::swap(inv[pivot * n + j], inv[col * n + j]);
      }
    }
    TaylorScalar pinv = 1.0 / a[col * n + col];
    for (int j = 0; j < n; ++j) {
      a[col * n + j] = a[col * n + j] * pinv;
      inv[col * n + j] = inv[col * n + j] * pinv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      TaylorScalar factor = a[r * n + col];
      if (factor.value() == 0.0) {
        bool zero = true;
        for (double c : factor.coefficients())
          if (c != 0.0) {
            zero = false;
            break;
          }
        if (zero) continue;
      }
      for (int j = 0; j < n; ++j) {
        a[r * n + j] -= factor * a[col * n + j];
        inv[r * n + j] -= factor * inv[col * n + j];
      }
    }
  }
  return inv;
}

double part(const TaylorScalar& jet, int n, std::initializer_list<int> xv,
            std::initializer_list<int> yv) {
  MultiIndex ax(n, 0), ay(n, 0);
  for (int i : xv) ++ax[i];
  for (int i : yv) ++ay[i];
  return jet.partial(ax, ay);
}

void check_site(const FinslerModel& model, const PointedVector& site) {
  if (site.dim() != model.n)
    throw std::invalid_argument("site dimension does not match model");
  if (!model.chart.contains(site.x))
    throw std::domain_error("site lies outside the chart of " + model.name);
  if (!site.anchored()) throw std::domain_error("anchor direction y must be nonzero");
}

}  // namespace

ConnectionData connection_data(const FinslerModel& model, const PointedVector& site,
                               TowerDepth depth) {
  check_site(model, site);
  const int n = model.n;
  auto space = JetSpace::get(n, orders_for(depth));
  SeededSite seeded = seed_site(site, space);
  TaylorScalar f2 = model.f2(seeded.x, seeded.y);

  // g_ij = 1/2 d2 F^2 / dy_i dy_j as jets.
  std::vector<TaylorScalar> gjet(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    TaylorScalar di = f2.derivative_y(i);
    for (int j = i; j < n; ++j) {
      TaylorScalar gij = 0.5 * di.derivative_y(j);
      gjet[i * n + j] = gij;
      if (j != i) gjet[j * n + i] = gij;
    }
  }

  ConnectionData cd;
  cd.site = site;
  cd.depth = depth;
  cd.g = Mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cd.g(i, j) = gjet[i * n + j].value();
  {
    Eigen::SelfAdjointEigenSolver<Mat> es(cd.g);
    if (es.eigenvalues().minCoeff() <= 1e-12 * std::max(1.0, cd.g.trace()))
      throw std::domain_error("metric tensor is not positive definite at the site (model " +
                              model.name + ")");
  }

  std::vector<TaylorScalar> ginv = jet_matrix_inverse(gjet, n);
  cd.g_inv = Mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cd.g_inv(i, j) = ginv[i * n + j].value();

  // E_l = y^k d2F^2/dy^l dx^k - dF^2/dx^l.
  std::vector<TaylorScalar> spray(n);
  {
    std::vector<TaylorScalar> e(n);
    for (int l = 0; l < n; ++l) {
      TaylorScalar dl = f2.derivative_y(l);
      TaylorScalar acc = seeded.y[0] * dl.derivative_x(0);
      for (int k = 1; k < n; ++k) acc += seeded.y[k] * dl.derivative_x(k);
      e[l] = acc - f2.derivative_x(l);
    }
    for (int i = 0; i < n; ++i) {
      TaylorScalar acc = ginv[i * n + 0] * e[0];
      for (int l = 1; l < n; ++l) acc += ginv[i * n + l] * e[l];
      spray[i] = 0.25 * acc;
    }
  }

  cd.G = Vec(n);
  for (int i = 0; i < n; ++i) cd.G[i] = spray[i].value();
  if (depth == TowerDepth::Spray) return cd;

  cd.N = Mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cd.N(i, j) = part(spray[i], n, {}, {j});
  if (depth == TowerDepth::Nonlinear) return cd;

  cd.Gamma = Tensor3(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        double v = part(spray[i], n, {}, {j, k});
        cd.Gamma(i, j, k) = v;
        cd.Gamma(i, k, j) = v;
      }
  if (depth == TowerDepth::BerwaldCoeffs) return cd;

  cd.B = Tensor4(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k)
        for (int l = k; l < n; ++l) {
          double v = part(spray[i], n, {}, {j, k, l});
          cd.B(i, j, k, l) = v;
          cd.B(i, j, l, k) = v;
          cd.B(i, k, j, l) = v;
          cd.B(i, k, l, j) = v;
          cd.B(i, l, j, k) = v;
          cd.B(i, l, k, j) = v;
        }

  // delta_k Gamma^i_lj = dGamma/dx^k - N^m_k B^i_ljm.
  Tensor4 delta_gamma(n);  // (k; i, l, j)
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        for (int j = l; j < n; ++j) {
          double v = part(spray[i], n, {k}, {l, j});
          for (int m = 0; m < n; ++m) v -= cd.N(m, k) * cd.B(i, l, j, m);
          delta_gamma(k, i, l, j) = v;
          delta_gamma(k, i, j, l) = v;
        }

  cd.H = Tensor4(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = delta_gamma(k, i, l, j) - delta_gamma(l, i, k, j);
          for (int m = 0; m < n; ++m)
            v += cd.Gamma(m, l, j) * cd.Gamma(i, k, m) -
                 cd.Gamma(m, k, j) * cd.Gamma(i, l, m);
          cd.H(i, j, k, l) = v;
        }

  // R^i_jk = delta_j N^i_k - delta_k N^i_j with delta_j N^i_k =
  // dN^i_k/dx^j - N^m_j Gamma^i_km.
  cd.R_nl = Tensor3(n);
  auto delta_N = [&](int j, int i, int k) {
    double v = part(spray[i], n, {j}, {k});
    for (int m = 0; m < n; ++m) v -= cd.N(m, j) * cd.Gamma(i, k, m);
    return v;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) cd.R_nl(i, j, k) = delta_N(j, i, k) - delta_N(k, i, j);

  return cd;
}

Vec spray_coefficients(const FinslerModel& model, const PointedVector& site) {
  return connection_data(model, site, TowerDepth::Spray).G;
}

Mat nonlinear_connection(const FinslerModel& model, const PointedVector& site) {
  return connection_data(model, site, TowerDepth::Nonlinear).N;
}

Tensor3 berwald_coefficients(const FinslerModel& model, const PointedVector& site) {
  return connection_data(model, site, TowerDepth::BerwaldCoeffs).Gamma;
}

Tensor4 berwald_curvature(const FinslerModel& model, const PointedVector& site) {
  return connection_data(model, site, TowerDepth::Full).B;
}

Tensor4 affine_curvature(const FinslerModel& model, const PointedVector& site) {
  return connection_data(model, site, TowerDepth::Full).H;
}

Tensor3 nonlinear_curvature(const FinslerModel& model, const PointedVector& site) {
  return connection_data(model, site, TowerDepth::Full).R_nl;
}

Vec vertical_component(const ConnectionData& cd, const TangentOfTM& xi) {
  return xi.dy + cd.N * xi.dx;
}

double gbar(const ConnectionData& cd, const TangentOfTM& xi, const TangentOfTM& eta) {
  Vec vxi = vertical_component(cd, xi);
  Vec veta = vertical_component(cd, eta);
  return xi.dx.dot(cd.g * eta.dx) + vxi.dot(cd.g * veta);
}

double gbar(const FinslerModel& model, const PointedVector& site, const TangentOfTM& xi,
            const TangentOfTM& eta) {
  return gbar(connection_data(model, site, TowerDepth::Nonlinear), xi, eta);
}

Vec curvature_operator(const ConnectionData& cd, const TangentOfTM& z1,
                       const TangentOfTM& z2, const Vec& v) {
  const int n = cd.g.rows();
  Vec a1 = z1.dx, a2 = z2.dx;
  Vec v1 = vertical_component(cd, z1), v2 = vertical_component(cd, z2);
  Vec out = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          acc += cd.H(i, j, k, l) * v[j] * a1[k] * a2[l];
          acc += cd.B(i, j, k, l) * v[j] * (v1[k] * a2[l] - v2[k] * a1[l]);
        }
    out[i] = acc;
  }
  return out;
}

FlatnessReport flatness_test(const FinslerModel& model, std::uint64_t seed, int k_sites) {
  if (k_sites < 1) throw std::invalid_argument("flatness_test: k_sites must be >= 1");
  Rng rng(seed);
  FlatnessReport report;
  report.sites = k_sites;
  for (int s = 0; s < k_sites; ++s) {
    PointedVector site = sample_site(model, rng, /*normalize=*/true);
    ConnectionData cd = connection_data(model, site, TowerDepth::Full);
    report.max_residual = std::max({report.max_residual, cd.B.max_abs(), cd.H.max_abs()});
  }
  report.flat = report.max_residual < report.tolerance;
  return report;
}

}  // namespace finsler
