#pragma once

#include <functional>
#include <optional>

#include "finsler/geometry.hpp"
#include "finsler/taylor.hpp"

namespace finsler {

/// A smooth scalar program (x, y) -> value, evaluable on jets. Every model's
/// squared Finsler function is one of these.
using ScalarProgram = std::function<TaylorScalar(
    const std::vector<TaylorScalar>& x, const std::vector<TaylorScalar>& y)>;

/// Seeds the coordinate jets for a site in the given space.
struct SeededSite {
  std::vector<TaylorScalar> x;
  std::vector<TaylorScalar> y;
};
SeededSite seed_site(const PointedVector& site, const std::shared_ptr<const JetSpace>& space);

/// Evaluates the program at the site with plain (order-0) arithmetic.
double eval_program(const ScalarProgram& program, const PointedVector& site);

/// Evaluates the full jet of the program at the site.
TaylorScalar eval_jet(const ScalarProgram& program, const PointedVector& site,
                      JetOrders orders);

/// Exact mixed partial d^ax_x d^ay_y program(x, y) via truncated Taylor
/// arithmetic, seeding exactly the orders the request needs.
/// Throws std::domain_error when the requested order exceeds max_orders or
/// the program is undefined at the site.
double partial(const ScalarProgram& program, const PointedVector& site,
               const MultiIndex& ax, const MultiIndex& ay,
               JetOrders max_orders = JetOrders{});

/// Central finite differences with one Richardson combination per
/// differentiation level (steps h and h/2, accuracy O(h^4) per level).
/// Independent of the Taylor path; serves as its cross-validation oracle.
/// `chart`, when given, guards the x-stencil against leaving the domain.
double fd_partial(const ScalarProgram& program, const PointedVector& site,
                  const MultiIndex& ax, const MultiIndex& ay, double step,
                  const ChartBox* chart = nullptr);

}  // namespace finsler
