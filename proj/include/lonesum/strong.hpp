#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "lonesum/core.hpp"

namespace lonesum {

/// True when ((a, b), (c, d)) is, up to row/column swaps, one of the five
/// shapes that a strongly lonesum q-ary matrix may contain:
///   (q-1 q-1 / c d), (q-1 b / q-1 d), (q-1 b / c 0), (a b / 0 0), (a 0 / c 0).
inline bool allowed_2x2(int q, Symbol a, Symbol b, Symbol c, Symbol d) {
  if (q < 2) throw domain_error("alphabet size must be at least 2");
  for (Symbol e : {a, b, c, d})
    if (e < 0 || e >= q) throw domain_error("2x2 entry outside alphabet");
  const Symbol hi = q - 2;
  const bool diagonal_trade = std::min(a, d) >= 1 && std::max(b, c) <= hi;
  const bool anti_trade = std::min(b, c) >= 1 && std::max(a, d) <= hi;
  return !diagonal_trade && !anti_trade;
}

struct ForbiddenWitness {
  std::size_t row1, row2, col1, col2;
  std::array<Symbol, 4> entries;  // (row1,col1), (row1,col2), (row2,col1), (row2,col2)

  friend bool operator==(const ForbiddenWitness&, const ForbiddenWitness&) = default;
};

struct StrongVerdict {
  std::optional<ForbiddenWitness> witness;

  bool lonesum() const noexcept { return !witness.has_value(); }
  explicit operator bool() const noexcept { return lonesum(); }
};

/// Exhaustive scan in (row1, row2, col1, col2) lexicographic order; returns
/// the first disallowed 2x2 submatrix.
inline std::optional<ForbiddenWitness> find_forbidden_2x2(const QMatrix& m) {
  for (std::size_t i1 = 0; i1 < m.rows(); ++i1)
    for (std::size_t i2 = i1 + 1; i2 < m.rows(); ++i2)
      for (std::size_t j1 = 0; j1 < m.cols(); ++j1)
        for (std::size_t j2 = j1 + 1; j2 < m.cols(); ++j2) {
          const Symbol a = m(i1, j1), b = m(i1, j2), c = m(i2, j1), d = m(i2, j2);
          if (!allowed_2x2(m.q(), a, b, c, d)) return ForbiddenWitness{i1, i2, j1, j2, {a, b, c, d}};
        }
  return std::nullopt;
}

inline StrongVerdict is_strong_lonesum(const QMatrix& m) {
  if (standard_form(m)) return {};
  return {find_forbidden_2x2(m)};
}

struct PartitionPair {
  std::vector<std::vector<std::size_t>> row_parts;  // A_0, ..., A_j
  std::vector<std::vector<std::size_t>> col_parts;  // B_0, ..., B_j

  std::size_t stairs() const noexcept { return row_parts.size(); }
  friend bool operator==(const PartitionPair&, const PartitionPair&) = default;
};

/// One block A_i x B_{j+1-i}: the only region where symbols 0..q-2 other
/// than forced zeros can appear. `values` is row-major over rows x cols.
struct Block {
  std::size_t index;  // i in 1..j
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::vector<Symbol> values;

  Symbol value(std::size_t r, std::size_t c) const { return values[r * cols.size() + c]; }
};

struct BlockDecomposition {
  int q;
  std::size_t rows;
  std::size_t cols;
  PartitionPair parts;
  std::vector<Block> blocks;

  /// Rebuilds the matrix: q-1 on A_i x (B_0 u ... u B_{j-i}), block values
  /// inside blocks, 0 elsewhere.
  QMatrix reassemble() const {
    std::vector<Symbol> e(rows * cols, 0);
    const std::size_t j = parts.row_parts.size() - 1;
    for (std::size_t i = 0; i <= j; ++i)
      for (std::size_t h = 0; h + i <= j; ++h)
        for (std::size_t r : parts.row_parts[i])
          for (std::size_t c : parts.col_parts[h]) e[r * cols + c] = q - 1;
    for (const Block& b : blocks)
      for (std::size_t r = 0; r < b.rows.size(); ++r)
        for (std::size_t c = 0; c < b.cols.size(); ++c) e[b.rows[r] * cols + b.cols[c]] = b.value(r, c);
    return {q, rows, cols, std::move(e)};
  }
};

/// Recovers the stair partition pair of the (q-1)-pattern and the block
/// contents. A_0 holds the all-(q-1) rows and B_0 the all-(q-1) columns;
/// A_1..A_j are the remaining rows grouped by count of q-1, descending, and
/// likewise B_1..B_j.
inline BlockDecomposition block_decomposition(const QMatrix& m) {
  if (!is_strong_lonesum(m)) throw not_lonesum_error("block decomposition requires a strongly lonesum matrix");
  const Symbol top = m.q() - 1;

  auto group = [](std::size_t count, std::size_t full, auto full_count_of) {
    std::vector<std::size_t> cnt(count);
    std::set<std::size_t, std::greater<>> levels;
    for (std::size_t k = 0; k < count; ++k) {
      cnt[k] = full_count_of(k);
      if (cnt[k] != full) levels.insert(cnt[k]);
    }
    std::vector<std::vector<std::size_t>> parts(levels.size() + 1);
    std::vector<std::size_t> level_vals(levels.begin(), levels.end());
    for (std::size_t k = 0; k < count; ++k) {
      if (cnt[k] == full) {
        parts[0].push_back(k);
        continue;
      }
      auto it = std::find(level_vals.begin(), level_vals.end(), cnt[k]);
      parts[1 + static_cast<std::size_t>(it - level_vals.begin())].push_back(k);
    }
    return parts;
  };

  PartitionPair pp;
  pp.row_parts = group(m.rows(), m.cols(), [&](std::size_t i) {
    auto r = m.row(i);
    return static_cast<std::size_t>(std::count(r.begin(), r.end(), top));
  });
  pp.col_parts = group(m.cols(), m.rows(), [&](std::size_t c) {
    auto v = m.col(c);
    return static_cast<std::size_t>(std::count(v.begin(), v.end(), top));
  });
  if (pp.row_parts.size() != pp.col_parts.size())
    throw not_lonesum_error("row and column stair counts disagree");

  BlockDecomposition out{m.q(), m.rows(), m.cols(), pp, {}};
  const std::size_t j = pp.row_parts.size() - 1;
  for (std::size_t i = 1; i <= j; ++i) {
    Block b{i, pp.row_parts[i], pp.col_parts[j + 1 - i], {}};
    for (std::size_t r : b.rows)
      for (std::size_t c : b.cols) b.values.push_back(m(r, c));
    out.blocks.push_back(std::move(b));
  }
  if (out.reassemble() != m) throw not_lonesum_error("matrix does not follow the stair/block layout");
  return out;
}

/// Entry-bounded transportation feasibility: a matrix with entries in
/// [0, cap] and the given margins exists iff the totals agree and, with row
/// sums sorted descending, sum_{i<=k} r_i <= sum_j min(c_j, cap * k) for all k.
inline bool margins_feasible(long long cap, const std::vector<long long>& row_sums,
                             const std::vector<long long>& col_sums) {
  for (long long v : row_sums)
    if (v < 0) return false;
  for (long long v : col_sums)
    if (v < 0) return false;
  if (std::accumulate(row_sums.begin(), row_sums.end(), 0LL) != std::accumulate(col_sums.begin(), col_sums.end(), 0LL))
    return false;
  std::vector<long long> r = row_sums;
  std::sort(r.begin(), r.end(), std::greater<>());
  long long prefix = 0;
  for (std::size_t k = 1; k <= r.size(); ++k) {
    prefix += r[k - 1];
    long long capacity = 0;
    for (long long c : col_sums) capacity += std::min(c, cap * static_cast<long long>(k));
    if (prefix > capacity) return false;
  }
  for (long long c : col_sums)
    if (c > cap * static_cast<long long>(r.size())) return false;
  return true;
}

enum class ReconstructStatus { unique, ambiguous, infeasible };

struct Reconstruction {
  ReconstructStatus status;
  std::optional<QMatrix> matrix;
};

/// Greedy stair fill in standard-form order (rows and columns by
/// descending sum), then verify: the candidate is returned only if it has
/// the requested margins and is strongly lonesum, in which case it is the
/// unique realization. Otherwise the margins are either infeasible or
/// realized by at least two matrices.
inline Reconstruction reconstruct_strong(int q, const MarginProfile& target, std::size_t rows, std::size_t cols) {
  if (q < 2) throw domain_error("alphabet size must be at least 2");
  if (rows == 0 || cols == 0) throw domain_error("dimensions must be positive");
  if (target.row_sums.size() != rows || target.col_sums.size() != cols)
    throw domain_error("margin lengths do not match the requested dimensions");
  for (long long v : target.row_sums)
    if (v < 0) throw domain_error("negative row sum");
  for (long long v : target.col_sums)
    if (v < 0) throw domain_error("negative column sum");

  const long long cap = q - 1;
  if (!margins_feasible(cap, target.row_sums, target.col_sums)) return {ReconstructStatus::infeasible, std::nullopt};

  auto by_sum_desc = [](const std::vector<long long>& sums) {
    Permutation p(sums.size());
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::stable_sort(p.begin(), p.end(), [&](std::size_t a, std::size_t b) { return sums[a] > sums[b]; });
    return p;
  };
  const Permutation rp = by_sum_desc(target.row_sums);
  const Permutation cp = by_sum_desc(target.col_sums);

  std::vector<long long> demand = target.col_sums;
  std::vector<Symbol> e(rows * cols, 0);
  for (std::size_t i : rp) {
    long long left = target.row_sums[i];
    for (std::size_t c : cp) {
      const long long v = std::min({cap, left, demand[c]});
      e[i * cols + c] = static_cast<Symbol>(v);
      left -= v;
      demand[c] -= v;
    }
  }
  QMatrix candidate(q, rows, cols, std::move(e));
  if (margins(candidate) == target && is_strong_lonesum(candidate))
    return {ReconstructStatus::unique, std::move(candidate)};
  return {ReconstructStatus::ambiguous, std::nullopt};
}

}  // namespace lonesum
