#pragma once

#include "finsler/model.hpp"

namespace finsler {

/// Flat-stored rank-3 tensor with value access T(i,j,k).
struct Tensor3 {
  int n = 0;
  std::vector<double> v;
  Tensor3() = default;
  explicit Tensor3(int dim) : n(dim), v(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}
  double& operator()(int i, int j, int k) { return v[(static_cast<std::size_t>(i) * n + j) * n + k]; }
  double operator()(int i, int j, int k) const { return v[(static_cast<std::size_t>(i) * n + j) * n + k]; }
  double max_abs() const;
};

/// Flat-stored rank-4 tensor with value access T(i,j,k,l).
struct Tensor4 {
  int n = 0;
  std::vector<double> v;
  Tensor4() = default;
  explicit Tensor4(int dim)
      : n(dim), v(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}
  double& operator()(int i, int j, int k, int l) {
    return v[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
  }
  double operator()(int i, int j, int k, int l) const {
    return v[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
  }
  double max_abs() const;
};

/// How much of the tower to compute (deeper tiers need higher jet orders).
enum class TowerDepth { Spray, Nonlinear, BerwaldCoeffs, Full };

/// The connection/curvature tower at one site:
///   G^i        spray coefficients,
///   N^i_j      = dG^i/dy^j             (nonlinear connection),
///   Gamma^i_jk = d2 G^i/dy^j dy^k      (Berwald coefficients),
///   B^i_jkl    = d3 G^i/dy^j dy^k dy^l (Berwald curvature),
///   H^i_jkl    affine curvature, antisymmetric in (k, l), with the
///              convention fixed so the round sphere reports +1,
///   R_nl^i_jk  = delta_j N^i_k - delta_k N^i_j (curvature of the nonlinear
///              connection; equals y^m H^i_mjk).
/// Tensors beyond the requested depth are left empty.
struct ConnectionData {
  PointedVector site;
  Mat g;
  Mat g_inv;
  Vec G;
  Mat N;
  Tensor3 Gamma;
  Tensor4 B;
  Tensor4 H;
  Tensor3 R_nl;
  TowerDepth depth = TowerDepth::Spray;
};

ConnectionData connection_data(const FinslerModel& model, const PointedVector& site,
                               TowerDepth depth = TowerDepth::Full);

/// G^i = 1/4 g^il (y^k d2F^2/dy^l dx^k - dF^2/dx^l); geodesics solve
/// x'' + 2G(x, x') = 0.
Vec spray_coefficients(const FinslerModel& model, const PointedVector& site);
Mat nonlinear_connection(const FinslerModel& model, const PointedVector& site);
Tensor3 berwald_coefficients(const FinslerModel& model, const PointedVector& site);
Tensor4 berwald_curvature(const FinslerModel& model, const PointedVector& site);
Tensor4 affine_curvature(const FinslerModel& model, const PointedVector& site);
Tensor3 nonlinear_curvature(const FinslerModel& model, const PointedVector& site);

/// A tangent vector to TM at the site (x, y), in induced coordinates.
struct TangentOfTM {
  PointedVector base;
  Vec dx;
  Vec dy;
};

/// Horizontal part (xi_x, -N xi_x) and vertical lift component xi_y + N xi_x
/// of a tangent vector of TM, given the tower at its base site.
Vec vertical_component(const ConnectionData& cd, const TangentOfTM& xi);

/// Sasaki-type metric on TM: gbar(xi, eta) = g(j xi, j eta) + g(V xi, V eta).
double gbar(const ConnectionData& cd, const TangentOfTM& xi, const TangentOfTM& eta);
double gbar(const FinslerModel& model, const PointedVector& site,
            const TangentOfTM& xi, const TangentOfTM& eta);

/// Curvature operator of the Berwald derivative on single vectors:
/// R(xi, eta)v = H(j xi, j eta)v + B(V xi, j eta)v - B(V eta, j xi)v.
Vec curvature_operator(const ConnectionData& cd, const TangentOfTM& z1,
                       const TangentOfTM& z2, const Vec& v);

/// Flatness probe: max |B| and |H| over K seeded sites with F(y) = 1.
struct FlatnessReport {
  bool flat = false;
  double max_residual = 0.0;
  int sites = 0;
  double tolerance = 1e-7;
};
FlatnessReport flatness_test(const FinslerModel& model, std::uint64_t seed, int k_sites);

}  // namespace finsler
