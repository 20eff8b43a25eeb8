#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lonesum/core.hpp"

namespace lonesum {

using BigCount = boost::multiprecision::cpp_int;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

// Triangle of S(n, k), grown on demand; the mutex keeps concurrent readers
// from observing a half-grown table.
class StirlingTable {
public:
  BigCount get(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::lock_guard lock(mutex_);
    while (rows_.size() <= n) grow();
    return rows_[n][k];
  }

private:
  void grow() {
    const std::size_t n = rows_.size();
    std::vector<BigCount> row(n + 1, 0);
    if (n == 0) {
      row[0] = 1;
    } else {
      const auto& prev = rows_[n - 1];
      for (std::size_t k = 1; k <= n; ++k) row[k] = (k < n ? BigCount(k) * prev[k] : BigCount(0)) + prev[k - 1];
    }
    rows_.push_back(std::move(row));
  }

  std::mutex mutex_;
  std::vector<std::vector<BigCount>> rows_;
};

inline StirlingTable& stirling_table() {
  static StirlingTable table;
  return table;
}

}  // namespace detail

/// Stirling number of the second kind, S(0, 0) = 1.
inline BigCount stirling2(std::size_t n, std::size_t k) { return detail::stirling_table().get(n, k); }

inline BigCount factorial(std::size_t n) {
  BigCount r = 1;
  for (std::size_t k = 2; k <= n; ++k) r *= k;
  return r;
}

inline BigCount binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigCount r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline BigCount multinomial(std::span<const std::size_t> parts) {
  BigCount r = 1;
  std::size_t total = 0;
  for (std::size_t p : parts) {
    total += p;
    r *= binomial(total, p);
  }
  return r;
}

inline BigInt ipow(BigInt base, std::size_t exp) {
  BigInt r = 1;
  while (exp) {
    if (exp & 1) r *= base;
    base *= base;
    exp >>= 1;
  }
  return r;
}

/// B_m^{(-n)} as the signed sum over l of (-1)^{l+m} l! S(m,l) (l+1)^n.
inline BigCount poly_bernoulli_inclusion_exclusion(std::size_t m, std::size_t n) {
  BigInt total = 0;
  for (std::size_t l = 0; l <= m; ++l) {
    BigInt term = factorial(l) * stirling2(m, l) * ipow(BigInt(l + 1), n);
    if ((l + m) % 2) total -= term;
    else total += term;
  }
  return total;
}

/// Number of binary lonesum m x n matrices with j+1 stairs: (j!)^2 S(m+1,j+1) S(n+1,j+1).
inline BigCount stairs_count(std::size_t m, std::size_t n, std::size_t j) {
  const BigCount f = factorial(j);
  return f * f * stirling2(m + 1, j + 1) * stirling2(n + 1, j + 1);
}

/// B_m^{(-n)} summed over stair counts.
inline BigCount poly_bernoulli_stirling_pair(std::size_t m, std::size_t n) {
  BigCount total = 0;
  for (std::size_t j = 0; j <= std::min(m, n); ++j) total += stairs_count(m, n, j);
  return total;
}

inline BigCount poly_bernoulli(std::size_t m, std::size_t n) { return poly_bernoulli_stirling_pair(m, n); }

using Composition = std::vector<std::size_t>;

/// Visits every (l_0, ..., l_j) with l_0 >= 0, l_i >= 1 (i >= 1) and sum l,
/// in lexicographic order.
template <class Visitor>
void for_each_composition(std::size_t l, std::size_t j, Visitor&& visit) {
  Composition c(j + 1, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
    if (pos == j) {
      c[pos] = left;
      if (j == 0 || left >= 1) visit(static_cast<const Composition&>(c));
      return;
    }
    const std::size_t min_here = pos == 0 ? 0 : 1;
    const std::size_t reserve = j - pos;  // parts after this one each need at least 1
    if (left < min_here + reserve) return;
    for (std::size_t v = min_here; v + reserve <= left; ++v) {
      c[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, l);
}

inline std::vector<Composition> compositions(std::size_t l, std::size_t j) {
  std::vector<Composition> out;
  for_each_composition(l, j, [&](const Composition& c) { out.push_back(c); });
  return out;
}

/// Number of admissible fillings of an r x s block with symbols 0..q-2:
/// 1 + (q-2)rs + r((q-1)^s - (q-2)s - 1) + s((q-1)^r - (q-2)r - 1).
inline BigCount f_q(int q, std::size_t r, std::size_t s) {
  if (q < 2) throw domain_error("alphabet size must be at least 2");
  const BigInt qm1 = q - 1, qm2 = q - 2;
  const BigInt R = r, S = s;
  return 1 + qm2 * R * S + R * (ipow(qm1, s) - qm2 * S - 1) + S * (ipow(qm1, r) - qm2 * R - 1);
}

/// Number of q-ary strongly lonesum m x n matrices (m, n >= 0; empty
/// dimensions count as a single matrix).
///
/// Evaluated through the ordered-block recurrence
///   H[a][b] = sum_{r,s>=1} C(a,r) C(b,s) f_q(r,s) H[a-r][b-s],  H[0][0] = 1,
///   count   = sum_{m_0,n_0} C(m,m_0) C(n,n_0) H[m-m_0][n-n_0],
/// which regroups the composition-pair double sum by its first block.
inline BigCount count_lonesum(int q, std::size_t m, std::size_t n) {
  if (q < 2) throw domain_error("alphabet size must be at least 2");
  std::vector<std::vector<BigCount>> f(m + 1, std::vector<BigCount>(n + 1, 0));
  for (std::size_t r = 1; r <= m; ++r)
    for (std::size_t s = 1; s <= n; ++s) f[r][s] = f_q(q, r, s);

  std::vector<std::vector<BigCount>> h(m + 1, std::vector<BigCount>(n + 1, 0));
  h[0][0] = 1;
  for (std::size_t a = 1; a <= m; ++a)
    for (std::size_t b = 1; b <= n; ++b) {
      BigCount acc = 0;
      for (std::size_t r = 1; r <= a; ++r)
        for (std::size_t s = 1; s <= b; ++s)
          if (h[a - r][b - s] != 0) acc += binomial(a, r) * binomial(b, s) * f[r][s] * h[a - r][b - s];
      h[a][b] = acc;
    }

  BigCount total = 0;
  for (std::size_t m0 = 0; m0 <= m; ++m0)
    for (std::size_t n0 = 0; n0 <= n; ++n0)
      if (h[m - m0][n - n0] != 0) total += binomial(m, m0) * binomial(n, n0) * h[m - m0][n - n0];
  return total;
}

/// The same count, evaluated literally as
///   1 + sum_j sum_{(m_i) in S_m^j, (n_i) in S_n^j} multinom(m) multinom(n) prod_i f_q(m_i, n_{j+1-i}).
/// Cost grows like C(m+n, m); intended for cross-checking at small sizes.
inline BigCount count_lonesum_by_compositions(int q, std::size_t m, std::size_t n) {
  if (q < 2) throw domain_error("alphabet size must be at least 2");
  std::map<std::pair<std::size_t, std::size_t>, BigCount> f_memo;
  auto f = [&](std::size_t r, std::size_t s) -> const BigCount& {
    auto [it, fresh] = f_memo.try_emplace({r, s});
    if (fresh) it->second = f_q(q, r, s);
    return it->second;
  };
  BigCount total = 1;
  for (std::size_t j = 1; j <= std::min(m, n); ++j) {
    const auto cm = compositions(m, j);
    const auto cn = compositions(n, j);
    std::vector<BigCount> mm, mn;
    for (const auto& c : cm) mm.push_back(multinomial(c));
    for (const auto& c : cn) mn.push_back(multinomial(c));
    for (std::size_t x = 0; x < cm.size(); ++x)
      for (std::size_t y = 0; y < cn.size(); ++y) {
        BigCount term = mm[x] * mn[y];
        for (std::size_t i = 1; i <= j; ++i) term *= f(cm[x][i], cn[y][j + 1 - i]);
        total += term;
      }
  }
  return total;
}

/// Number of q-ary symmetric strongly lonesum n x n matrices:
///   1 + sum_j sum_{(n_i) in S_n^j} multinom(n) prod_{i<=j/2} f_q(n_{2i-1}, n_{2i})
///         * (1 + (q-2)(n - sum_{i<=2 floor(j/2)} n_i)).
inline BigCount count_symmetric_lonesum(int q, std::size_t n) {
  if (q < 2) throw domain_error("alphabet size must be at least 2");
  BigCount total = 1;
  for (std::size_t j = 1; j <= n; ++j)
    for_each_composition(n, j, [&](const Composition& c) {
      BigCount term = multinomial(c);
      std::size_t paired = c[0];
      for (std::size_t i = 1; i <= j / 2; ++i) {
        term *= f_q(q, c[2 * i - 1], c[2 * i]);
        paired += c[2 * i - 1] + c[2 * i];
      }
      term *= 1 + BigInt(q - 2) * BigInt(n - paired);
      total += term;
    });
  return total;
}

}  // namespace lonesum
