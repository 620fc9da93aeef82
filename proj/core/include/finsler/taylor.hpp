#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "finsler/multi_index.hpp"

namespace finsler {

/// Truncation orders of a jet: monomials with x-degree > x or y-degree > y
/// are dropped. The defaults cover the full connection/curvature tower.
struct JetOrders {
  int x = 2;
  int y = 5;
};

/// Shared immutable description of one truncated jet algebra: the monomial
/// basis for (dim, orders) plus the precomputed multiplication table.
/// Instances are interned; TaylorScalars hold a pointer to theirs.
class JetSpace {
 public:
  static std::shared_ptr<const JetSpace> get(int dim, JetOrders orders);

  int dim() const { return dim_; }
  JetOrders orders() const { return orders_; }
  int size() const { return static_cast<int>(monomials_.size()); }
  const std::vector<MonomialKey>& monomials() const { return monomials_; }

  /// Basis index of a monomial key, or -1 if truncated away.
  int index_of(MonomialKey key) const;

  /// prod_table()[i * size() + j] is the basis index of monomial i * j,
  /// or -1 when the product falls outside the truncation.
  const std::vector<std::int32_t>& prod_table() const { return prod_table_; }

  /// Total nilpotency degree bound for the non-constant part.
  int max_total_degree() const { return orders_.x + orders_.y; }

 private:
  JetSpace(int dim, JetOrders orders);
  int dim_;
  JetOrders orders_;
  std::vector<MonomialKey> monomials_;  // sorted ascending, key 0 first
  std::vector<std::int32_t> prod_table_;
};

/// A scalar together with its partial derivatives at a base point, stored as
/// a truncated multivariate Taylor expansion over a JetSpace. Arithmetic is
/// closed and exact on polynomial data up to the truncation orders; analytic
/// functions are composed through their univariate Taylor coefficients.
/// Immutable value semantics; safe to share across threads.
class TaylorScalar {
 public:
  TaylorScalar() = default;

  static TaylorScalar constant(double c, std::shared_ptr<const JetSpace> space);
  /// base + (the x_i coordinate increment) as a jet.
  static TaylorScalar x_variable(double base, int i, std::shared_ptr<const JetSpace> space);
  static TaylorScalar y_variable(double base, int i, std::shared_ptr<const JetSpace> space);

  const std::shared_ptr<const JetSpace>& space() const { return space_; }
  bool valid() const { return space_ != nullptr; }

  /// Value of the underlying program at the base point.
  double value() const { return coeff_.empty() ? 0.0 : coeff_[0]; }

  /// Raw Taylor coefficient of the given monomial (0 if truncated away).
  double coefficient(MonomialKey key) const;
  double coefficient(const MultiIndex& ax, const MultiIndex& ay) const;

  /// Partial derivative = coefficient times the multi-index factorials.
  double partial(const MultiIndex& ax, const MultiIndex& ay) const;

  /// Derivative with respect to one variable, as a jet in the same space
  /// (the top-order information is lost, as expected of truncation).
  TaylorScalar derivative_x(int i) const;
  TaylorScalar derivative_y(int i) const;

  TaylorScalar operator-() const;
  TaylorScalar& operator+=(const TaylorScalar& o);
  TaylorScalar& operator-=(const TaylorScalar& o);
  TaylorScalar& operator+=(double c);
  TaylorScalar& operator-=(double c);
  TaylorScalar& operator*=(double c);

  friend TaylorScalar operator+(TaylorScalar a, const TaylorScalar& b) { return a += b; }
  friend TaylorScalar operator-(TaylorScalar a, const TaylorScalar& b) { return a -= b; }
  friend TaylorScalar operator+(TaylorScalar a, double c) { return a += c; }
  friend TaylorScalar operator+(double c, TaylorScalar a) { return a += c; }
  friend TaylorScalar operator-(TaylorScalar a, double c) { return a -= c; }
  friend TaylorScalar operator-(double c, const TaylorScalar& a) { return (-a) += c; }
  friend TaylorScalar operator*(TaylorScalar a, double c) { return a *= c; }
  friend TaylorScalar operator*(double c, TaylorScalar a) { return a *= c; }
  friend TaylorScalar operator*(const TaylorScalar& a, const TaylorScalar& b);
  friend TaylorScalar operator/(const TaylorScalar& a, const TaylorScalar& b);
  friend TaylorScalar operator/(TaylorScalar a, double c) { return a *= (1.0 / c); }
  friend TaylorScalar operator/(double c, const TaylorScalar& b);

  friend TaylorScalar sqrt(const TaylorScalar& u);
  friend TaylorScalar exp(const TaylorScalar& u);
  friend TaylorScalar log(const TaylorScalar& u);
  friend TaylorScalar sin(const TaylorScalar& u);
  friend TaylorScalar cos(const TaylorScalar& u);
  /// Real exponent; requires a positive base value.
  friend TaylorScalar pow(const TaylorScalar& u, double p);
  /// Integer exponent via repeated multiplication (exact on polynomials).
  friend TaylorScalar pow_int(const TaylorScalar& u, int m);

  const std::vector<double>& coefficients() const { return coeff_; }

 private:
  TaylorScalar(std::shared_ptr<const JetSpace> space, std::vector<double> coeff)
      : space_(std::move(space)), coeff_(std::move(coeff)) {}

  /// Composes an analytic function given its scaled derivatives
  /// c_k = f^(k)(value)/k! for k = 0..max_total_degree.
  static TaylorScalar compose(const TaylorScalar& u, std::span<const double> c);

  static void check_same_space(const TaylorScalar& a, const TaylorScalar& b);

  std::shared_ptr<const JetSpace> space_;
  std::vector<double> coeff_;
};

}  // namespace finsler
