#include "finsler/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace finsler {

namespace {

struct SpaceKey {
  int dim, kx, ky;
  bool operator<(const SpaceKey& o) const {
    return std::tie(dim, kx, ky) < std::tie(o.dim, o.kx, o.ky);
  }
};

std::mutex g_space_mutex;
std::map<SpaceKey, std::shared_ptr<const JetSpace>>& space_cache() {
  static std::map<SpaceKey, std::shared_ptr<const JetSpace>> cache;
  return cache;
}

void enumerate_block(int dim, int max_order, int base_nibble,
                     std::vector<MonomialKey>& out) {
  // All exponent vectors of length dim with total degree <= max_order.
  std::vector<int> expo(dim, 0);
  std::vector<MonomialKey> keys;
  // Iterative odometer with degree cap.
  while (true) {
    MonomialKey k = 0;
    for (int i = 0; i < dim; ++i)
      k += static_cast<MonomialKey>(expo[i]) << (4 * (base_nibble + i));
    keys.push_back(k);
    int pos = 0;
    while (pos < dim) {
      ++expo[pos];
      int total = 0;
      for (int v : expo) total += v;
      if (total <= max_order) break;
      expo[pos] = 0;
      ++pos;
    }
    if (pos == dim) break;
  }
  out = std::move(keys);
}

}  // namespace

JetSpace::JetSpace(int dim, JetOrders orders) : dim_(dim), orders_(orders) {
  if (dim < 1 || dim > kMaxDim)
    throw std::invalid_argument("JetSpace: dimension must be in [1, 8]");
  if (orders.x < 0 || orders.y < 0 || orders.x + orders.y > 12)
    throw std::invalid_argument("JetSpace: unsupported truncation orders");

  std::vector<MonomialKey> xs, ys;
  enumerate_block(dim, orders.x, 0, xs);
  enumerate_block(dim, orders.y, 8, ys);
  monomials_.reserve(xs.size() * ys.size());
  for (MonomialKey kx : xs)
    for (MonomialKey ky : ys) monomials_.push_back(kx + ky);
  std::sort(monomials_.begin(), monomials_.end());

  const int m = size();
  prod_table_.assign(static_cast<std::size_t>(m) * m, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      MonomialKey k = monomials_[i] + monomials_[j];
      if (x_degree(k) > orders_.x || y_degree(k) > orders_.y) continue;
      prod_table_[static_cast<std::size_t>(i) * m + j] = index_of(k);
    }
  }
}

int JetSpace::index_of(MonomialKey key) const {
  auto it = std::lower_bound(monomials_.begin(), monomials_.end(), key);
  if (it == monomials_.end() || *it != key) return -1;
  return static_cast<int>(it - monomials_.begin());
}

std::shared_ptr<const JetSpace> JetSpace::get(int dim, JetOrders orders) {
  SpaceKey key{dim, orders.x, orders.y};
  std::lock_guard<std::mutex> lock(g_space_mutex);
  auto& cache = space_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto space = std::shared_ptr<const JetSpace>(new JetSpace(dim, orders));
  cache.emplace(key, space);
  return space;
}

TaylorScalar TaylorScalar::constant(double c, std::shared_ptr<const JetSpace> space) {
  std::vector<double> coeff(space->size(), 0.0);
  coeff[0] = c;
  return TaylorScalar(std::move(space), std::move(coeff));
}

TaylorScalar TaylorScalar::x_variable(double base, int i,
                                      std::shared_ptr<const JetSpace> space) {
  if (i < 0 || i >= space->dim())
    throw std::out_of_range("TaylorScalar: x variable index");
  std::vector<double> coeff(space->size(), 0.0);
  coeff[0] = base;
  int idx = space->index_of(x_monomial(i));
  if (idx >= 0) coeff[idx] = 1.0;
  return TaylorScalar(std::move(space), std::move(coeff));
}

TaylorScalar TaylorScalar::y_variable(double base, int i,
                                      std::shared_ptr<const JetSpace> space) {
  if (i < 0 || i >= space->dim())
    throw std::out_of_range("TaylorScalar: y variable index");
  std::vector<double> coeff(space->size(), 0.0);
  coeff[0] = base;
  int idx = space->index_of(y_monomial(i));
  if (idx >= 0) coeff[idx] = 1.0;
  return TaylorScalar(std::move(space), std::move(coeff));
}

void TaylorScalar::check_same_space(const TaylorScalar& a, const TaylorScalar& b) {
  if (!a.space_ || !b.space_ || a.space_.get() != b.space_.get())
    throw std::invalid_argument("TaylorScalar: operands from different jet spaces");
}

double TaylorScalar::coefficient(MonomialKey key) const {
  int idx = space_->index_of(key);
  return idx < 0 ? 0.0 : coeff_[idx];
}

double TaylorScalar::coefficient(const MultiIndex& ax, const MultiIndex& ay) const {
  return coefficient(pack_key(ax, ay));
}

double TaylorScalar::partial(const MultiIndex& ax, const MultiIndex& ay) const {
  if (order_of(ax) > space_->orders().x || order_of(ay) > space_->orders().y)
    throw std::domain_error("TaylorScalar::partial: order exceeds jet truncation");
  return coefficient(ax, ay) * factorial_of(ax) * factorial_of(ay);
}

TaylorScalar TaylorScalar::derivative_x(int i) const {
  TaylorScalar out = constant(0.0, space_);
  const auto& mons = space_->monomials();
  for (int j = 0; j < space_->size(); ++j) {
    if (coeff_[j] == 0.0) continue;
    int e = x_exponent(mons[j], i);
    if (e == 0) continue;
    int tgt = space_->index_of(mons[j] - x_monomial(i));
    out.coeff_[tgt] += e * coeff_[j];
  }
  return out;
}

TaylorScalar TaylorScalar::derivative_y(int i) const {
  TaylorScalar out = constant(0.0, space_);
  const auto& mons = space_->monomials();
  for (int j = 0; j < space_->size(); ++j) {
    if (coeff_[j] == 0.0) continue;
    int e = y_exponent(mons[j], i);
    if (e == 0) continue;
    int tgt = space_->index_of(mons[j] - y_monomial(i));
    out.coeff_[tgt] += e * coeff_[j];
  }
  return out;
}

TaylorScalar TaylorScalar::operator-() const {
  TaylorScalar out = *this;
  for (double& c : out.coeff_) c = -c;
  return out;
}

TaylorScalar& TaylorScalar::operator+=(const TaylorScalar& o) {
  check_same_space(*this, o);
  for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += o.coeff_[i];
  return *this;
}

TaylorScalar& TaylorScalar::operator-=(const TaylorScalar& o) {
  check_same_space(*this, o);
  for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= o.coeff_[i];
  return *this;
}

TaylorScalar& TaylorScalar::operator+=(double c) {
  coeff_[0] += c;
  return *this;
}

TaylorScalar& TaylorScalar::operator-=(double c) {
  coeff_[0] -= c;
  return *this;
}

TaylorScalar& TaylorScalar::operator*=(double c) {
  for (double& v : coeff_) v *= c;
  return *this;
}

TaylorScalar operator*(const TaylorScalar& a, const TaylorScalar& b) {
  TaylorScalar::check_same_space(a, b);
  const JetSpace& sp = *a.space_;
  const int m = sp.size();
  const auto& table = sp.prod_table();
  std::vector<double> out(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double ai = a.coeff_[i];
    if (ai == 0.0) continue;
    const std::int32_t* row = table.data() + static_cast<std::size_t>(i) * m;
    for (int j = 0; j < m; ++j) {
      const double bj = b.coeff_[j];
      if (bj == 0.0) continue;
      const std::int32_t tgt = row[j];
      if (tgt >= 0) out[tgt] += ai * bj;
    }
  }
  return TaylorScalar(a.space_, std::move(out));
}

TaylorScalar TaylorScalar::compose(const TaylorScalar& u, std::span<const double> c) {
  // Horner evaluation of sum c_k * uhat^k where uhat is the nilpotent part.
  TaylorScalar uhat = u;
  uhat.coeff_[0] = 0.0;
  const int d = u.space_->max_total_degree();
  TaylorScalar r = constant(c[d], u.space_);
  for (int k = d - 1; k >= 0; --k) {
    r = r * uhat;
    r.coeff_[0] += c[k];
  }
  return r;
}

TaylorScalar operator/(const TaylorScalar& a, const TaylorScalar& b) {
  return a * (1.0 / b);
}

TaylorScalar operator/(double c, const TaylorScalar& b) {
  const double b0 = b.value();
  if (b0 == 0.0) throw std::domain_error("TaylorScalar: division by zero value");
  const int d = b.space_->max_total_degree();
  std::vector<double> coeffs(d + 1);
  coeffs[0] = 1.0 / b0;
  for (int k = 1; k <= d; ++k) coeffs[k] = -coeffs[k - 1] / b0;
  TaylorScalar r = TaylorScalar::compose(b, coeffs);
  return r *= c;
}

TaylorScalar sqrt(const TaylorScalar& u) {
  const double u0 = u.value();
  if (u0 <= 0.0) throw std::domain_error("TaylorScalar: sqrt of non-positive value");
  const int d = u.space_->max_total_degree();
  std::vector<double> c(d + 1);
  c[0] = std::sqrt(u0);
  for (int k = 1; k <= d; ++k) c[k] = c[k - 1] * (1.5 - k) / (k * u0);
  return TaylorScalar::compose(u, c);
}

TaylorScalar pow(const TaylorScalar& u, double p) {
  const double u0 = u.value();
  if (u0 <= 0.0) throw std::domain_error("TaylorScalar: pow of non-positive value");
  const int d = u.space_->max_total_degree();
  std::vector<double> c(d + 1);
  c[0] = std::pow(u0, p);
  for (int k = 1; k <= d; ++k) c[k] = c[k - 1] * (p - k + 1) / (k * u0);
  return TaylorScalar::compose(u, c);
}

TaylorScalar pow_int(const TaylorScalar& u, int m) {
  if (m < 0) return 1.0 / pow_int(u, -m);
  TaylorScalar r = TaylorScalar::constant(1.0, u.space());
  TaylorScalar base = u;
  int e = m;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return r;
}

TaylorScalar exp(const TaylorScalar& u) {
  const int d = u.space_->max_total_degree();
  std::vector<double> c(d + 1);
  c[0] = std::exp(u.value());
  for (int k = 1; k <= d; ++k) c[k] = c[k - 1] / k;
  return TaylorScalar::compose(u, c);
}

TaylorScalar log(const TaylorScalar& u) {
  const double u0 = u.value();
  if (u0 <= 0.0) throw std::domain_error("TaylorScalar: log of non-positive value");
  const int d = u.space_->max_total_degree();
  std::vector<double> c(d + 1);
  c[0] = std::log(u0);
  if (d >= 1) c[1] = 1.0 / u0;
  for (int k = 2; k <= d; ++k) c[k] = -c[k - 1] * (k - 1) / (k * u0);
  return TaylorScalar::compose(u, c);
}

TaylorScalar sin(const TaylorScalar& u) {
  const double u0 = u.value();
  const int d = u.space_->max_total_degree();
  const double cyc[4] = {std::sin(u0), std::cos(u0), -std::sin(u0), -std::cos(u0)};
  std::vector<double> c(d + 1);
  double kfact = 1.0;
  for (int k = 0; k <= d; ++k) {
    if (k > 0) kfact *= k;
    c[k] = cyc[k % 4] / kfact;
  }
  return TaylorScalar::compose(u, c);
}

TaylorScalar cos(const TaylorScalar& u) {
  const double u0 = u.value();
  const int d = u.space_->max_total_degree();
  const double cyc[4] = {std::cos(u0), -std::sin(u0), -std::cos(u0), std::sin(u0)};
  std::vector<double> c(d + 1);
  double kfact = 1.0;
  for (int k = 0; k <= d; ++k) {
    if (k > 0) kfact *= k;
    c[k] = cyc[k % 4] / kfact;
  }
  return TaylorScalar::compose(u, c);
}

}  // namespace finsler
