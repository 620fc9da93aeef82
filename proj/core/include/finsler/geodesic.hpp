#pragma once

#include <iosfwd>

#include "finsler/berwald.hpp"
#include "finsler/ode.hpp"

namespace finsler {

struct GeodesicOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
};

struct TrajectoryState {
  Vec x;
  Vec v;
};

/// A solved geodesic x'' + 2G(x, x') = 0 with dense output. F(x, x') is a
/// first integral; its drift bounds the integration quality.
struct Trajectory {
  int n = 0;
  OdeSolution ode;  // state [x; v]
  bool truncated_at_boundary = false;

  double t_begin() const { return ode.t_begin(); }
  double t_end() const { return ode.t_end(); }
  TrajectoryState state_at(double t) const;
  TrajectoryState initial_state() const;
  TrajectoryState final_state() const;
};

Trajectory geodesic_ivp(const FinslerModel& model, const Vec& p, const Vec& v,
                        double t_end, const GeodesicOptions& options = {});

/// max |F(x(t), x'(t)) - F(p, v)| over dense samples of the realized span.
double f_drift(const FinslerModel& model, const Trajectory& traj, int samples = 200);

/// exp_p(v) = c(1); exp_p(0) = p. Throws std::runtime_error when the geodesic
/// leaves the chart before t = 1.
Vec exp_map(const FinslerModel& model, const Vec& p, const Vec& v,
            const GeodesicOptions& options = {});

/// Berwald-parallel field X along a geodesic: X' + Gamma(c, c')(c', X) = 0,
/// integrated jointly with the geodesic state.
struct TransportedField {
  int n = 0;
  OdeSolution coupled;  // state [x; v; X]
  bool truncated_at_boundary = false;
  TrajectoryState geodesic_at(double t) const;
  Vec field_at(double t) const;
};
TransportedField parallel_transport(const FinslerModel& model, const Trajectory& along,
                                    const Vec& w0, const GeodesicOptions& options = {});

/// Jacobi field along a geodesic via the affine curvature:
/// with K = D_c J,  J' = K - Gamma(c')(J),  K' = H(c', c')J - Gamma(c')(K).
/// Initial data are J(0) and the covariant derivative D_cJ(0).
struct JacobiField {
  int n = 0;
  OdeSolution coupled;  // state [x; v; J; K]
  bool truncated_at_boundary = false;
  TrajectoryState geodesic_at(double t) const;
  Vec J_at(double t) const;
  Vec DJ_at(double t) const;
};
JacobiField jacobi_field(const FinslerModel& model, const Trajectory& along,
                         const Vec& J0, const Vec& DJ0,
                         const GeodesicOptions& options = {});

/// (exp_p)_* at v applied to w, computed as J(1) of the Jacobi field with
/// J(0) = 0, D_cJ(0) = w along c(t) = exp_p(t v).
struct TangentAtPoint {
  Vec x;
  Vec vec;
};
TangentAtPoint dexp(const FinslerModel& model, const Vec& p, const Vec& v, const Vec& w,
                    const GeodesicOptions& options = {});

/// Finsler length of a polyline: sum of adaptive quadratures of
/// F(p + s d, d) over the segments.
double curve_length(const FinslerModel& model, const std::vector<Vec>& polyline,
                    double tol = 1e-10);

/// Length of a solved geodesic over its realized span.
double trajectory_length(const FinslerModel& model, const Trajectory& traj,
                         double tol = 1e-10);

/// CSV export: t, x..., v..., F_drift (17 significant digits).
void write_trajectory_csv(const FinslerModel& model, const Trajectory& traj,
                          std::ostream& out, int samples = 200);

}  // namespace finsler
