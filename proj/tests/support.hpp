#pragma once

// Test-side ground truth. Everything here is written independently of the
// library's oracle module: plain odometer enumeration and std::map grouping.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "lonesum/core.hpp"

namespace testing_support {

using lonesum::QMatrix;
using lonesum::Symbol;

// Calls f(entries) for every q-ary vector of length `cells`, odometer order.
template <class F>
void for_each_filling(int q, std::size_t cells, F&& f) {
  std::vector<Symbol> e(cells, 0);
  while (true) {
    f(static_cast<const std::vector<Symbol>&>(e));
    std::size_t k = cells;
    while (k > 0) {
      --k;
      if (++e[k] < q) break;
      e[k] = 0;
      if (k == 0) return;
    }
    if (cells == 0) return;
  }
}

template <class F>
void for_each_matrix(int q, std::size_t m, std::size_t n, F&& f) {
  for_each_filling(q, m * n, [&](const std::vector<Symbol>& e) { f(QMatrix(q, m, n, e)); });
}

using Sums = std::pair<std::vector<long long>, std::vector<long long>>;

inline Sums raw_sums(const QMatrix& a) {
  Sums s{std::vector<long long>(a.rows(), 0), std::vector<long long>(a.cols(), 0)};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      s.first[i] += a(i, j);
      s.second[j] += a(i, j);
    }
  return s;
}

using Histograms = std::vector<std::vector<int>>;

inline Histograms raw_histograms(const QMatrix& a) {
  Histograms h(a.rows() + a.cols(), std::vector<int>(static_cast<std::size_t>(a.q()), 0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      ++h[i][static_cast<std::size_t>(a(i, j))];
      ++h[a.rows() + j][static_cast<std::size_t>(a(i, j))];
    }
  return h;
}

// For every matrix (by entries): is it alone in its margin class?
inline std::map<std::vector<Symbol>, bool> margin_singletons(int q, std::size_t m, std::size_t n) {
  std::map<Sums, int> sizes;
  for_each_matrix(q, m, n, [&](const QMatrix& a) { ++sizes[raw_sums(a)]; });
  std::map<std::vector<Symbol>, bool> out;
  for_each_matrix(q, m, n, [&](const QMatrix& a) { out[a.entries()] = sizes[raw_sums(a)] == 1; });
  return out;
}

inline std::map<std::vector<Symbol>, bool> profile_singletons(int q, std::size_t m, std::size_t n) {
  std::map<Histograms, int> sizes;
  for_each_matrix(q, m, n, [&](const QMatrix& a) { ++sizes[raw_histograms(a)]; });
  std::map<std::vector<Symbol>, bool> out;
  for_each_matrix(q, m, n, [&](const QMatrix& a) { out[a.entries()] = sizes[raw_histograms(a)] == 1; });
  return out;
}

inline std::uint64_t count_true(const std::map<std::vector<Symbol>, bool>& m) {
  std::uint64_t c = 0;
  for (const auto& [k, v] : m) c += v;
  return c;
}

inline QMatrix random_matrix(std::mt19937_64& rng, int q, std::size_t m, std::size_t n) {
  std::uniform_int_distribution<Symbol> d(0, q - 1);
  std::vector<Symbol> e(m * n);
  for (auto& x : e) x = d(rng);
  return {q, m, n, std::move(e)};
}

inline std::vector<std::size_t> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// The five allowed 2x2 shapes, matched literally against all four row/column
// swaps: (q-1 q-1 / c d), (q-1 b / q-1 d), (q-1 b / c 0), (a b / 0 0), (a 0 / c 0).
inline bool shape_allowed(int q, Symbol a, Symbol b, Symbol c, Symbol d) {
  const Symbol t = q - 1;
  const Symbol orient[4][4] = {{a, b, c, d}, {b, a, d, c}, {c, d, a, b}, {d, c, b, a}};
  for (const auto& o : orient) {
    const Symbol w = o[0], x = o[1], y = o[2], z = o[3];
    if (w == t && x == t) return true;
    if (w == t && y == t) return true;
    if (w == t && z == 0) return true;
    if (y == 0 && z == 0) return true;
    if (x == 0 && z == 0) return true;
  }
  return false;
}

inline bool all_2x2_allowed(const QMatrix& a) {
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t i2 = i1 + 1; i2 < a.rows(); ++i2)
      for (std::size_t j1 = 0; j1 < a.cols(); ++j1)
        for (std::size_t j2 = j1 + 1; j2 < a.cols(); ++j2)
          if (!shape_allowed(a.q(), a(i1, j1), a(i1, j2), a(i2, j1), a(i2, j2))) return false;
  return true;
}

// Strongly lonesum matrix: a random monotone (q-1)-stair with a few middle
// symbols sprinkled just outside it, kept only if every 2x2 passes the
// literal shape test, then scrambled by random row and column permutations.
inline QMatrix random_lonesum(std::mt19937_64& rng, int q, std::size_t m, std::size_t n) {
  std::uniform_int_distribution<std::size_t> cut(0, n), coin(0, m + n);
  std::uniform_int_distribution<Symbol> mid(q > 2 ? 1 : 0, q > 2 ? q - 2 : 0);
  while (true) {
    std::vector<std::size_t> stair(m);
    for (auto& s : stair) s = cut(rng);
    std::sort(stair.rbegin(), stair.rend());
    std::vector<Symbol> e(m * n, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j < stair[i]) e[i * n + j] = q - 1;
        else if (q > 2 && coin(rng) == 0) e[i * n + j] = mid(rng);
    QMatrix base(q, m, n, std::move(e));
    if (!all_2x2_allowed(base)) continue;
    return lonesum::permute(base, random_permutation(rng, m), random_permutation(rng, n));
  }
}

}  // namespace testing_support
