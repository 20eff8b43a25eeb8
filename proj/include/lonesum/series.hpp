#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lonesum/count.hpp"

namespace lonesum {

using Rational = boost::multiprecision::cpp_rational;

/// Truncated power series in one variable with exact rational coefficients;
/// c[i] is the ordinary coefficient of x^i for 0 <= i <= order.
class UniSeries {
public:
  explicit UniSeries(std::size_t order) : c_(order + 1, Rational(0)) {}

  static UniSeries constant(std::size_t order, const Rational& v) {
    UniSeries s(order);
    s.c_[0] = v;
    return s;
  }
  static UniSeries x(std::size_t order) {
    UniSeries s(order);
    if (order >= 1) s.c_[1] = 1;
    return s;
  }
  /// e^{a x}
  static UniSeries exp_linear(std::size_t order, const Rational& a) {
    UniSeries s(order);
    Rational term = 1;
    for (std::size_t i = 0; i <= order; ++i) {
      s.c_[i] = term;
      term = term * a / Rational(i + 1);
    }
    return s;
  }

  std::size_t order() const noexcept { return c_.size() - 1; }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  Rational& operator[](std::size_t i) { return c_[i]; }

  /// Lowest index with a nonzero coefficient; order()+1 for the zero series.
  std::size_t valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return i;
    return c_.size();
  }

  /// n! times the coefficient of x^n.
  Rational egf(std::size_t n) const { return c_.at(n) * Rational(factorial(n)); }
  BigInt egf_integer(std::size_t n) const {
    const Rational v = egf(n);
    if (boost::multiprecision::denominator(v) != 1) throw domain_error("EGF coefficient is not an integer");
    return boost::multiprecision::numerator(v);
  }

  UniSeries& operator+=(const UniSeries& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  UniSeries& operator-=(const UniSeries& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  UniSeries& operator*=(const Rational& k) {
    for (auto& v : c_) v *= k;
    return *this;
  }
  friend UniSeries operator+(UniSeries a, const UniSeries& b) { return a += b; }
  friend UniSeries operator-(UniSeries a, const UniSeries& b) { return a -= b; }
  friend UniSeries operator*(UniSeries a, const Rational& k) { return a *= k; }
  friend UniSeries operator-(UniSeries a) { return a *= Rational(-1); }

  friend UniSeries operator*(const UniSeries& a, const UniSeries& b) {
    a.check(b);
    UniSeries r(a.order());
    const std::size_t va = a.valuation(), vb = b.valuation();
    for (std::size_t i = va; i <= a.order(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t k = vb; i + k <= a.order(); ++k)
        if (b.c_[k] != 0) r.c_[i + k] += a.c_[i] * b.c_[k];
    }
    return r;
  }

  UniSeries reciprocal() const {
    if (c_[0] == 0) throw domain_error("reciprocal of a series with zero constant term");
    UniSeries r(order());
    for (std::size_t n = 0; n <= order(); ++n) {
      Rational acc = n == 0 ? Rational(1) : Rational(0);
      for (std::size_t k = 1; k <= n; ++k) acc -= c_[k] * r.c_[n - k];
      r.c_[n] = acc / c_[0];
    }
    return r;
  }

  /// exp(s) for a series with zero constant term.
  UniSeries exp() const {
    if (c_[0] != 0) throw domain_error("exp requires a zero constant term");
    UniSeries result = constant(order(), 1), power = constant(order(), 1);
    for (std::size_t k = 1; k <= order(); ++k) {
      power = power * *this * Rational(1, k);
      if (power.valuation() > order()) break;
      result += power;
    }
    return result;
  }

  /// s^e, stopping early once the valuation passes the truncation order.
  UniSeries pow(std::size_t e) const {
    UniSeries r = constant(order(), 1);
    for (std::size_t k = 0; k < e; ++k) {
      r = r * *this;
      if (r.valuation() > order()) break;
    }
    return r;
  }

  friend bool operator==(const UniSeries&, const UniSeries&) = default;

private:
  void check(const UniSeries& o) const {
    if (o.order() != order()) throw domain_error("series truncation orders differ");
  }
  std::vector<Rational> c_;
};

/// Truncated bivariate power series; c(i, j) is the ordinary coefficient of
/// x^i y^j for i <= order_x, j <= order_y.
class BiSeries {
public:
  BiSeries(std::size_t order_x, std::size_t order_y)
      : nx_(order_x), ny_(order_y), c_((order_x + 1) * (order_y + 1), Rational(0)) {}

  static BiSeries constant(std::size_t nx, std::size_t ny, const Rational& v) {
    BiSeries s(nx, ny);
    s.at(0, 0) = v;
    return s;
  }
  static BiSeries x(std::size_t nx, std::size_t ny) {
    BiSeries s(nx, ny);
    if (nx >= 1) s.at(1, 0) = 1;
    return s;
  }
  static BiSeries y(std::size_t nx, std::size_t ny) {
    BiSeries s(nx, ny);
    if (ny >= 1) s.at(0, 1) = 1;
    return s;
  }
  /// e^{a x + b y}
  static BiSeries exp_linear(std::size_t nx, std::size_t ny, const Rational& a, const Rational& b) {
    const UniSeries ex = UniSeries::exp_linear(nx, a), ey = UniSeries::exp_linear(ny, b);
    BiSeries s(nx, ny);
    for (std::size_t i = 0; i <= nx; ++i)
      for (std::size_t j = 0; j <= ny; ++j) s.at(i, j) = ex[i] * ey[j];
    return s;
  }

  std::size_t order_x() const noexcept { return nx_; }
  std::size_t order_y() const noexcept { return ny_; }
  const Rational& at(std::size_t i, std::size_t j) const { return c_[i * (ny_ + 1) + j]; }
  Rational& at(std::size_t i, std::size_t j) { return c_[i * (ny_ + 1) + j]; }

  /// i! j! times the coefficient of x^i y^j.
  Rational egf(std::size_t i, std::size_t j) const {
    if (i > nx_ || j > ny_) throw domain_error("coefficient beyond truncation order");
    return at(i, j) * Rational(factorial(i) * factorial(j));
  }
  BigInt egf_integer(std::size_t i, std::size_t j) const {
    const Rational v = egf(i, j);
    if (boost::multiprecision::denominator(v) != 1) throw domain_error("EGF coefficient is not an integer");
    return boost::multiprecision::numerator(v);
  }

  BiSeries& operator+=(const BiSeries& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  BiSeries& operator-=(const BiSeries& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  BiSeries& operator*=(const Rational& k) {
    for (auto& v : c_) v *= k;
    return *this;
  }
  friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
  friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
  friend BiSeries operator*(BiSeries a, const Rational& k) { return a *= k; }
  friend BiSeries operator-(BiSeries a) { return a *= Rational(-1); }

  friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
    a.check(b);
    BiSeries r(a.nx_, a.ny_);
    for (std::size_t i = 0; i <= a.nx_; ++i)
      for (std::size_t j = 0; j <= a.ny_; ++j) {
        const Rational& u = a.at(i, j);
        if (u == 0) continue;
        for (std::size_t k = 0; i + k <= a.nx_; ++k)
          for (std::size_t l = 0; j + l <= a.ny_; ++l) {
            const Rational& v = b.at(k, l);
            if (v != 0) r.at(i + k, j + l) += u * v;
          }
      }
    return r;
  }

  BiSeries reciprocal() const {
    const Rational& c0 = at(0, 0);
    if (c0 == 0) throw domain_error("reciprocal of a series with zero constant term");
    BiSeries r(nx_, ny_);
    for (std::size_t i = 0; i <= nx_; ++i)
      for (std::size_t j = 0; j <= ny_; ++j) {
        Rational acc = (i == 0 && j == 0) ? Rational(1) : Rational(0);
        for (std::size_t a = 0; a <= i; ++a)
          for (std::size_t b = 0; b <= j; ++b) {
            if (a == 0 && b == 0) continue;
            const Rational& v = at(a, b);
            if (v != 0) acc -= v * r.at(i - a, j - b);
          }
        r.at(i, j) = acc / c0;
      }
    return r;
  }

  /// exp(s) for a series with zero constant term.
  BiSeries exp() const {
    if (at(0, 0) != 0) throw domain_error("exp requires a zero constant term");
    BiSeries result = constant(nx_, ny_, 1), power = constant(nx_, ny_, 1);
    for (std::size_t k = 1; k <= nx_ + ny_; ++k) {
      power = power * *this * Rational(1, k);
      result += power;
    }
    return result;
  }

  /// Substitutes y := x, truncated at `order` (which may not exceed either
  /// bivariate order).
  UniSeries diagonal(std::size_t order) const {
    if (order > nx_ || order > ny_) throw domain_error("diagonal order exceeds truncation");
    UniSeries s(order);
    for (std::size_t i = 0; i <= order; ++i)
      for (std::size_t j = 0; i + j <= order; ++j) s[i + j] += at(i, j);
    return s;
  }

  friend bool operator==(const BiSeries&, const BiSeries&) = default;

private:
  void check(const BiSeries& o) const {
    if (o.nx_ != nx_ || o.ny_ != ny_) throw domain_error("series truncation orders differ");
  }
  std::size_t nx_, ny_;
  std::vector<Rational> c_;
};

constexpr std::size_t default_series_order = 8;

/// F_q(x, y) = 1 - e^x - e^y + (1 - x - y - (q-2)xy + x e^{(q-2)y} + y e^{(q-2)x}) e^{x+y},
/// the exponential generating function of the block-filling counts f_q(r, s).
inline BiSeries F_q_series(int q, std::size_t nx, std::size_t ny) {
  if (q < 2) throw domain_error("alphabet size must be at least 2");
  const Rational k = q - 2;
  const BiSeries one = BiSeries::constant(nx, ny, 1);
  const BiSeries x = BiSeries::x(nx, ny), y = BiSeries::y(nx, ny);
  BiSeries inner = one - x - y - x * y * k + x * BiSeries::exp_linear(nx, ny, 0, k) +
                   y * BiSeries::exp_linear(nx, ny, k, 0);
  return one - BiSeries::exp_linear(nx, ny, 1, 0) - BiSeries::exp_linear(nx, ny, 0, 1) +
         inner * BiSeries::exp_linear(nx, ny, 1, 1);
}

/// e^{x+y} / (1 - F_q(x, y)); the EGF coefficient at (m, n) counts q-ary
/// lonesum m x n matrices.
inline BiSeries lonesum_egf(int q, std::size_t nx = default_series_order, std::size_t ny = default_series_order) {
  const BiSeries denom = BiSeries::constant(nx, ny, 1) - F_q_series(q, nx, ny);
  return BiSeries::exp_linear(nx, ny, 1, 1) * denom.reciprocal();
}

/// e^{x+y} / (e^x + e^y - e^{x+y}); EGF coefficients are B_m^{(-n)}.
inline BiSeries kaneko_egf(std::size_t nx = default_series_order, std::size_t ny = default_series_order) {
  const BiSeries exy = BiSeries::exp_linear(nx, ny, 1, 1);
  const BiSeries denom = BiSeries::exp_linear(nx, ny, 1, 0) + BiSeries::exp_linear(nx, ny, 0, 1) - exy;
  return exy * denom.reciprocal();
}

/// (1 + (q-2)x) e^{2x} / (1 - F_q(x, x)); EGF coefficients count symmetric
/// q-ary lonesum matrices.
inline UniSeries symmetric_egf(int q, std::size_t order = default_series_order) {
  const UniSeries fqq = F_q_series(q, order, order).diagonal(order);
  const UniSeries num = (UniSeries::constant(order, 1) + UniSeries::x(order) * Rational(q - 2)) *
                        UniSeries::exp_linear(order, 2);
  return num * (UniSeries::constant(order, 1) - fqq).reciprocal();
}

/// sum_n B_n^{(-k)}(q) x^n / n!, the counts of q-ary lonesum n x k matrices
/// for fixed k, assembled from the four-way expansion of F_q^l:
///   sum_{l3<=k; l1,l2,l4>=0} l3! C(k,l3) multinom(l1,l2,l3,l4)
///     (1-e^x)^{l1} (-1+e^x-x e^x)^{l2} x^{l4} e^{(l3+l4+1)x}
///     (-1-(q-2)x+e^{(q-2)x})^{l3} (l2+l3+(q-1)l4+1)^{k-l3}.
/// The trailing +1 in the last base is the e^y of the numerator e^{x+y};
/// without it the binary k = 1 series would be e^{2x} - e^x instead of e^{2x}.
/// The three bracketed factors have valuations 1, 2 and 2, so only terms with
/// l1 + 2 l2 + 2 l3 + l4 <= order contribute.
inline UniSeries fixed_index_series(int q, std::size_t k, std::size_t order = default_series_order) {
  if (q < 2) throw domain_error("alphabet size must be at least 2");
  const UniSeries one = UniSeries::constant(order, 1);
  const UniSeries x = UniSeries::x(order);
  const UniSeries ex = UniSeries::exp_linear(order, 1);
  const UniSeries base1 = one - ex;
  const UniSeries base2 = ex - one - x * ex;
  const UniSeries base3 = UniSeries::exp_linear(order, q - 2) - one - x * Rational(q - 2);

  auto powers = [&](const UniSeries& b, std::size_t count) {
    std::vector<UniSeries> p{one};
    for (std::size_t e = 1; e <= count; ++e) p.push_back(p.back() * b);
    return p;
  };
  const auto p1 = powers(base1, order);
  const auto p2 = powers(base2, order / 2);
  const auto p3 = powers(base3, order / 2);
  const auto px = powers(x, order);

  UniSeries total(order);
  for (std::size_t l3 = 0; l3 <= k && 2 * l3 <= order; ++l3)
    for (std::size_t l2 = 0; 2 * (l2 + l3) <= order; ++l2)
      for (std::size_t l1 = 0; l1 + 2 * (l2 + l3) <= order; ++l1)
        for (std::size_t l4 = 0; l1 + l4 + 2 * (l2 + l3) <= order; ++l4) {
          const std::size_t parts[] = {l1, l2, l3, l4};
          const BigInt base = BigInt(l2 + l3 + 1) + BigInt(q - 1) * BigInt(l4);
          const BigInt scalar = factorial(l3) * binomial(k, l3) * multinomial(parts) * ipow(base, k - l3);
          UniSeries term = p1[l1] * p2[l2] * p3[l3] * px[l4] * UniSeries::exp_linear(order, l3 + l4 + 1);
          total += term * Rational(scalar);
        }
  return total;
}

}  // namespace lonesum
