#include "finsler/jets.hpp"

#include <cmath>
#include <stdexcept>

namespace finsler {

SeededSite seed_site(const PointedVector& site,
                     const std::shared_ptr<const JetSpace>& space) {
  const int n = site.dim();
  if (n != space->dim())
    throw std::invalid_argument("seed_site: site dimension does not match space");
  SeededSite s;
  s.x.reserve(n);
  s.y.reserve(n);
  for (int i = 0; i < n; ++i) {
    s.x.push_back(TaylorScalar::x_variable(site.x[i], i, space));
    s.y.push_back(TaylorScalar::y_variable(site.y[i], i, space));
  }
  return s;
}

double eval_program(const ScalarProgram& program, const PointedVector& site) {
  auto space = JetSpace::get(site.dim(), JetOrders{0, 0});
  SeededSite s = seed_site(site, space);
  return program(s.x, s.y).value();
}

TaylorScalar eval_jet(const ScalarProgram& program, const PointedVector& site,
                      JetOrders orders) {
  auto space = JetSpace::get(site.dim(), orders);
  SeededSite s = seed_site(site, space);
  return program(s.x, s.y);
}

double partial(const ScalarProgram& program, const PointedVector& site,
               const MultiIndex& ax, const MultiIndex& ay, JetOrders max_orders) {
  const int ox = order_of(ax);
  const int oy = order_of(ay);
  if (ox > max_orders.x || oy > max_orders.y)
    throw std::domain_error("partial: requested order exceeds the configured truncation");
  // Directional seeding: the jet carries exactly the orders this request needs.
  TaylorScalar jet = eval_jet(program, site, JetOrders{ox, oy});
  return jet.partial(ax, ay);
}

namespace {

struct FdRequest {
  const ScalarProgram& program;
  const ChartBox* chart;
};

// Recursive nested differentiation: strip one derivative level, apply a
// Richardson-combined central difference in that variable.
double fd_rec(const FdRequest& req, PointedVector site, MultiIndex ax,
              MultiIndex ay, double step) {
  int var = -1;
  bool is_x = true;
  for (std::size_t i = 0; i < ax.size(); ++i)
    if (ax[i] > 0) {
      var = static_cast<int>(i);
      break;
    }
  if (var < 0) {
    for (std::size_t i = 0; i < ay.size(); ++i)
      if (ay[i] > 0) {
        var = static_cast<int>(i);
        is_x = false;
        break;
      }
  }
  if (var < 0) return eval_program(req.program, site);

  if (is_x)
    --ax[var];
  else
    --ay[var];

  auto shifted = [&](double h) {
    PointedVector s = site;
    if (is_x)
      s.x[var] += h;
    else
      s.y[var] += h;
    return fd_rec(req, std::move(s), ax, ay, step);
  };

  auto central = [&](double h) { return (shifted(h) - shifted(-h)) / (2.0 * h); };

  // One Richardson level: error drops from O(h^2) to O(h^4).
  const double d_h = central(step);
  const double d_h2 = central(step / 2.0);
  return (4.0 * d_h2 - d_h) / 3.0;
}

}  // namespace

double fd_partial(const ScalarProgram& program, const PointedVector& site,
                  const MultiIndex& ax, const MultiIndex& ay, double step,
                  const ChartBox* chart) {
  if (!(step > 0.0)) throw std::invalid_argument("fd_partial: step must be positive");
  if (step < 1e-12) throw std::invalid_argument("fd_partial: step underflow");
  if (chart) {
    // The x-stencil reaches order_of(ax) * step in each x coordinate.
    const double reach = order_of(ax) * step;
    Vec probe = site.x;
    for (int i = 0; i < probe.size(); ++i) {
      Vec lo = site.x, hi = site.x;
      lo[i] -= reach;
      hi[i] += reach;
      if (!chart->contains(lo) || !chart->contains(hi))
        throw std::domain_error("fd_partial: stencil leaves the chart domain");
    }
  }
  return fd_rec(FdRequest{program, chart}, site, ax, ay, step);
}

}  // namespace finsler
