#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <vector>

#include "lonesum/count.hpp"
#include "lonesum/strong.hpp"

namespace lonesum {

// Binary lonesum m x n matrices <-> permutations sigma of {0..m+n-1} with
// -n <= sigma(i) - i <= m.
//
// Indices are zero-based throughout. The permutation matrix P has a rook at
// (i, sigma(i)). Its first n rows carry the column partition C of M, its last
// m rows (read after a 180 degree rotation, with m and n exchanged) carry the
// row partition R.

/// C_1..C_k (column indices) and R_1..R_k (row indices); C_0 and R_0 are the
/// complements. Parts are kept sorted.
struct TuplePair {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::size_t>> col_parts;
  std::vector<std::vector<std::size_t>> row_parts;

  std::size_t k() const noexcept { return col_parts.size(); }
  friend bool operator==(const TuplePair&, const TuplePair&) = default;
};

struct BoundedPermutation {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<std::size_t> image;  // image[i] = sigma(i)

  friend bool operator==(const BoundedPermutation&, const BoundedPermutation&) = default;
};

inline bool satisfies_displacement(std::size_t m, std::size_t n, const std::vector<std::size_t>& image) {
  if (image.size() != m + n || !is_permutation_of(image, m + n)) return false;
  for (std::size_t i = 0; i < image.size(); ++i) {
    const long long d = static_cast<long long>(image[i]) - static_cast<long long>(i);
    if (d < -static_cast<long long>(n) || d > static_cast<long long>(m)) return false;
  }
  return true;
}

namespace detail {

// Labels each index with the position (1-based) of its line sum among the
// distinct nonzero sums in ascending order; zero lines get label 0.
inline std::vector<std::vector<std::size_t>> parts_by_ascending_sum(const std::vector<long long>& sums) {
  std::set<long long> distinct;
  for (long long s : sums)
    if (s != 0) distinct.insert(s);
  const std::vector<long long> levels(distinct.begin(), distinct.end());
  std::vector<std::vector<std::size_t>> parts(levels.size());
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (sums[i] == 0) continue;
    const auto pos = std::lower_bound(levels.begin(), levels.end(), sums[i]) - levels.begin();
    parts[static_cast<std::size_t>(pos)].push_back(i);
  }
  return parts;
}

// Label of each element of {0..size-1}: a for members of part a (1-based),
// 0 for the complement.
inline std::vector<std::size_t> labels_of(const std::vector<std::vector<std::size_t>>& parts, std::size_t size) {
  std::vector<std::size_t> label(size, 0);
  std::vector<bool> seen(size, false);
  for (std::size_t a = 0; a < parts.size(); ++a) {
    if (parts[a].empty()) throw domain_error("tuple parts must be nonempty");
    for (std::size_t x : parts[a]) {
      if (x >= size) throw domain_error("tuple part index out of range");
      if (seen[x]) throw domain_error("tuple parts overlap");
      seen[x] = true;
      label[x] = a + 1;
    }
  }
  return label;
}

// One half of the rook placement. `count` lines (the side whose partition is
// given by `label`, values 0..k) occupy rows 0..count-1 of a board whose
// other side has `other` lines. Chain links and the part-0 head are forced;
// the k heads of parts 1..k go to `head_cols` in part order. Returns the
// column of each of the `count` rows.
inline std::vector<std::size_t> place_chains(const std::vector<std::size_t>& label, std::size_t other,
                                             const std::vector<std::size_t>& head_cols) {
  const std::size_t count = label.size();
  std::vector<std::size_t> col(count);
  std::vector<long long> last(head_cols.size() + 1, -1);  // last seen member of each part
  for (std::size_t r = 0; r < count; ++r) {
    const std::size_t a = label[r];
    if (last[a] >= 0)
      col[r] = static_cast<std::size_t>(last[a]) + other + 1;
    else
      col[r] = a == 0 ? other : head_cols[a - 1];
    last[a] = static_cast<long long>(r);
  }
  return col;
}

// Chain links and the part-0 head of the side described by `label` sit in
// columns >= other of their own (rotated) frame. Mapped back they occupy
// columns in [0, label.size()) of the opposite frame; the remaining columns
// there, ascending, receive the heads of the opposite side.
inline std::vector<std::size_t> free_head_columns(const std::vector<std::size_t>& label, std::size_t other) {
  const std::size_t count = label.size(), total = count + other;
  std::vector<bool> used(count, false);
  std::vector<long long> last;
  for (std::size_t r = 0; r < count; ++r) {
    const std::size_t a = label[r];
    if (a >= last.size()) last.resize(a + 1, -1);
    if (last[a] >= 0)
      used[total - 1 - (static_cast<std::size_t>(last[a]) + other + 1)] = true;
    else if (a == 0)
      used[total - 1 - other] = true;
    last[a] = static_cast<long long>(r);
  }
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < count; ++c)
    if (!used[c]) out.push_back(c);
  return out;
}

// Inverse of place_chains: reads labels back from the columns of `count`
// rows on a board whose other side has `other` lines.
inline std::vector<std::size_t> read_chains(const std::vector<std::size_t>& col, std::size_t other, std::size_t& k) {
  const std::size_t count = col.size();
  std::vector<std::size_t> heads;
  for (std::size_t r = 0; r < count; ++r)
    if (col[r] < other) heads.push_back(r);
  std::sort(heads.begin(), heads.end(), [&](std::size_t a, std::size_t b) { return col[a] < col[b]; });
  k = heads.size();
  std::vector<std::size_t> label(count, 0);
  for (std::size_t a = 0; a < heads.size(); ++a) label[heads[a]] = a + 1;
  for (std::size_t r = 0; r < count; ++r) {
    if (col[r] <= other) continue;
    const std::size_t prev = col[r] - other - 1;
    if (prev >= r) throw domain_error("rook chain points forward; displacement bound violated");
    label[r] = label[prev];
  }
  return label;
}

}  // namespace detail

/// Groups columns (rows) by their distinct nonzero sums, ascending, so that
/// M[j][i] = 1 iff C(i) + R(j) > k.
inline TuplePair matrix_to_tuples(const QMatrix& m) {
  if (m.q() != 2) throw domain_error("the permutation correspondence is defined for binary matrices");
  if (!is_strong_lonesum(m)) throw not_lonesum_error("matrix is not lonesum");
  const MarginProfile p = margins(m);
  TuplePair t{m.rows(), m.cols(), detail::parts_by_ascending_sum(p.col_sums),
              detail::parts_by_ascending_sum(p.row_sums)};
  if (t.col_parts.size() != t.row_parts.size())
    throw not_lonesum_error("distinct row and column sum counts differ");
  return t;
}

inline QMatrix tuples_to_matrix(const TuplePair& t, std::size_t rows, std::size_t cols) {
  if (t.col_parts.size() != t.row_parts.size()) throw domain_error("C and R tuples differ in length");
  const auto c = detail::labels_of(t.col_parts, cols);
  const auto r = detail::labels_of(t.row_parts, rows);
  const std::size_t k = t.k();
  std::vector<Symbol> e(rows * cols, 0);
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t i = 0; i < cols; ++i) e[j * cols + i] = c[i] + r[j] > k ? 1 : 0;
  return {2, rows, cols, std::move(e)};
}

inline BoundedPermutation tuples_to_permutation(const TuplePair& t) {
  const std::size_t m = t.rows, n = t.cols, total = m + n;
  const auto c_label = detail::labels_of(t.col_parts, n);
  const auto r_label = detail::labels_of(t.row_parts, m);
  if (t.col_parts.size() != t.row_parts.size()) throw domain_error("C and R tuples differ in length");

  // Top n rows: C heads go to the columns in [0, m) left free by the
  // R-side chains. Bottom m rows, rotated: R heads go to the rotated columns
  // in [0, n) left free by the C-side chains.
  const auto c_heads = detail::free_head_columns(r_label, n);
  const auto r_heads = detail::free_head_columns(c_label, m);
  const auto top = detail::place_chains(c_label, m, c_heads);
  const auto bottom = detail::place_chains(r_label, n, r_heads);

  BoundedPermutation s{m, n, std::vector<std::size_t>(total)};
  for (std::size_t r = 0; r < n; ++r) s.image[r] = top[r];
  for (std::size_t r = 0; r < m; ++r) s.image[total - 1 - r] = total - 1 - bottom[r];
  if (!satisfies_displacement(m, n, s.image)) throw domain_error("rook placement failed to produce a bounded permutation");
  return s;
}

inline TuplePair permutation_to_tuples(const BoundedPermutation& s) {
  const std::size_t m = s.m, n = s.n, total = m + n;
  if (!satisfies_displacement(m, n, s.image))
    throw domain_error("permutation violates the displacement bound -n <= sigma(i) - i <= m");
  std::vector<std::size_t> top(s.image.begin(), s.image.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<std::size_t> bottom(m);
  for (std::size_t r = 0; r < m; ++r) bottom[r] = total - 1 - s.image[total - 1 - r];
  std::size_t kc = 0, kr = 0;
  const auto c_label = detail::read_chains(top, m, kc);
  const auto r_label = detail::read_chains(bottom, n, kr);
  if (kc != kr) throw domain_error("inconsistent head counts");
  TuplePair t{m, n, std::vector<std::vector<std::size_t>>(kc), std::vector<std::vector<std::size_t>>(kr)};
  for (std::size_t i = 0; i < n; ++i)
    if (c_label[i]) t.col_parts[c_label[i] - 1].push_back(i);
  for (std::size_t j = 0; j < m; ++j)
    if (r_label[j]) t.row_parts[r_label[j] - 1].push_back(j);
  return t;
}

inline BoundedPermutation matrix_to_permutation(const QMatrix& m) { return tuples_to_permutation(matrix_to_tuples(m)); }

inline QMatrix permutation_to_matrix(const BoundedPermutation& s) {
  if (s.m == 0 || s.n == 0) throw domain_error("matrix dimensions must be positive");
  return tuples_to_matrix(permutation_to_tuples(s), s.m, s.n);
}

constexpr std::size_t default_permutation_limit = 10;

/// All permutations of {0..m+n-1} meeting the displacement bound, found by
/// filtering every permutation.
inline std::vector<BoundedPermutation> bounded_permutations(std::size_t m, std::size_t n,
                                                            std::size_t limit = default_permutation_limit) {
  if (m + n > limit) throw limit_error("m + n exceeds the brute-force permutation limit");
  std::vector<std::size_t> p(m + n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::vector<BoundedPermutation> out;
  do {
    if (satisfies_displacement(m, n, p)) out.push_back({m, n, p});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline BigCount count_bounded_permutations(std::size_t m, std::size_t n, std::size_t limit = default_permutation_limit) {
  if (m + n > limit) throw limit_error("m + n exceeds the brute-force permutation limit");
  std::vector<std::size_t> p(m + n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  BigCount count = 0;
  do {
    if (satisfies_displacement(m, n, p)) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

}  // namespace lonesum
