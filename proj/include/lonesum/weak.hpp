#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lonesum/core.hpp"

namespace lonesum {

struct Cell {
  std::size_t row;
  std::size_t col;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// An ab-path: distinct cells, consecutive cells share a row or a column, no
/// three consecutive cells share a row or a column, and the values alternate
/// a, b, a, ...
struct PathSeq {
  std::vector<Cell> cells;
  Symbol a = 0;
  Symbol b = 0;
};

/// A path of even length whose extension by its first two cells is still a
/// path; swapping a and b along it preserves every row and column structure.
struct CycleSeq {
  std::vector<Cell> cells;
  Symbol a = 0;
  Symbol b = 0;

  std::size_t length() const noexcept { return cells.size(); }
};

namespace detail {

inline bool path_conditions(const QMatrix& m, const std::vector<Cell>& cells, Symbol a, Symbol b) {
  if (a == b) return false;
  for (std::size_t l = 0; l < cells.size(); ++l) {
    if (cells[l].row >= m.rows() || cells[l].col >= m.cols()) return false;
    if (m(cells[l].row, cells[l].col) != (l % 2 == 0 ? a : b)) return false;
  }
  for (std::size_t l = 0; l + 1 < cells.size(); ++l)
    if (cells[l].row != cells[l + 1].row && cells[l].col != cells[l + 1].col) return false;
  for (std::size_t l = 0; l + 2 < cells.size(); ++l) {
    const bool same_row = cells[l].row == cells[l + 1].row && cells[l + 1].row == cells[l + 2].row;
    const bool same_col = cells[l].col == cells[l + 1].col && cells[l + 1].col == cells[l + 2].col;
    if (same_row || same_col) return false;
  }
  return true;
}

}  // namespace detail

inline bool is_path(const QMatrix& m, const PathSeq& p) {
  for (std::size_t x = 0; x < p.cells.size(); ++x)
    for (std::size_t y = x + 1; y < p.cells.size(); ++y)
      if (p.cells[x] == p.cells[y]) return false;
  return detail::path_conditions(m, p.cells, p.a, p.b);
}

inline bool is_cycle(const QMatrix& m, const CycleSeq& c) {
  if (c.cells.size() < 2 || c.cells.size() % 2) return false;
  if (!is_path(m, {c.cells, c.a, c.b})) return false;
  std::vector<Cell> extended = c.cells;
  extended.push_back(c.cells[0]);
  extended.push_back(c.cells[1]);
  return detail::path_conditions(m, extended, c.a, c.b);
}

/// Exchanges a and b on the cells of the cycle.
inline QMatrix apply_cycle_swap(const QMatrix& m, const CycleSeq& c) {
  std::vector<Symbol> e = m.entries();
  for (const Cell& x : c.cells) {
    Symbol& v = e[x.row * m.cols() + x.col];
    v = v == c.a ? c.b : c.a;
  }
  return {m.q(), m.rows(), m.cols(), std::move(e)};
}

namespace detail {

// Alternating cycles for a symbol pair (a, b) are exactly the directed
// cycles of the bipartite graph on rows and columns in which an a-cell (i, j)
// is the arc row i -> column j and a b-cell is the arc column j -> row i.
// Vertices 0..m-1 are rows, m..m+n-1 columns.
struct PairGraph {
  std::size_t m, n;
  std::vector<std::vector<std::size_t>> out;

  PairGraph(const QMatrix& mat, Symbol a, Symbol b) : m(mat.rows()), n(mat.cols()), out(m + n) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (mat(i, j) == a) out[i].push_back(m + j);
        if (mat(i, j) == b) out[m + j].push_back(i);
      }
  }

  // Vertex cycle starting and ending at a row vertex -> cell sequence
  // starting with the a-cell leaving that row.
  CycleSeq to_cells(std::vector<std::size_t> verts, Symbol a, Symbol b) const {
    if (verts.front() >= m) std::rotate(verts.begin(), verts.begin() + 1, verts.end());
    CycleSeq c{{}, a, b};
    for (std::size_t k = 0; k < verts.size(); ++k) {
      const std::size_t u = verts[k], v = verts[(k + 1) % verts.size()];
      c.cells.push_back(u < m ? Cell{u, v - m} : Cell{v, u - m});
    }
    return c;
  }

  std::optional<std::vector<std::size_t>> any_cycle() const {
    std::vector<int> state(m + n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<std::size_t> stack;
    std::optional<std::vector<std::size_t>> found;
    std::function<bool(std::size_t)> dfs = [&](std::size_t u) {
      state[u] = 1;
      stack.push_back(u);
      for (std::size_t v : out[u]) {
        if (state[v] == 1) {
          auto it = std::find(stack.begin(), stack.end(), v);
          found = std::vector<std::size_t>(it, stack.end());
          return true;
        }
        if (state[v] == 0 && dfs(v)) return true;
      }
      stack.pop_back();
      state[u] = 2;
      return false;
    };
    for (std::size_t s = 0; s < m + n; ++s)
      if (state[s] == 0 && dfs(s)) return found;
    return std::nullopt;
  }

  // Simple cycles whose smallest vertex is `s`, searched exhaustively; the
  // first with at least `min_verts` vertices is returned.
  std::optional<std::vector<std::size_t>> long_cycle(std::size_t min_verts) const {
    std::vector<bool> on(m + n, false);
    std::vector<std::size_t> path;
    std::optional<std::vector<std::size_t>> found;
    std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t s, std::size_t u) {
      for (std::size_t v : out[u]) {
        if (v == s && path.size() >= min_verts) {
          found = path;
          return true;
        }
        if (v <= s || on[v]) continue;
        on[v] = true;
        path.push_back(v);
        if (dfs(s, v)) return true;
        path.pop_back();
        on[v] = false;
      }
      return false;
    };
    for (std::size_t s = 0; s < m; ++s) {
      path.assign(1, s);
      on[s] = true;
      if (dfs(s, s)) return found;
      on[s] = false;
    }
    return std::nullopt;
  }
};

}  // namespace detail

/// Finds an ab-cycle with at least `min_cells` cells, trying symbol pairs
/// (a, b) with a < b in lexicographic order. With the default minimum any
/// cycle is accepted and the search is linear per pair; a larger minimum
/// switches to exhaustive simple-cycle enumeration (desk-scale matrices only).
/// The returned cycle visits each row and column at most once.
inline std::optional<CycleSeq> find_cycle(const QMatrix& m, std::size_t min_cells = 4) {
  for (Symbol a = 0; a < m.q(); ++a)
    for (Symbol b = a + 1; b < m.q(); ++b) {
      detail::PairGraph g(m, a, b);
      auto verts = min_cells <= 4 ? g.any_cycle() : g.long_cycle(min_cells);
      if (verts) return g.to_cells(std::move(*verts), a, b);
    }
  return std::nullopt;
}

enum class WeakStatus { unique, witness, budget_exceeded };

struct WeakVerdict {
  WeakStatus status;
  std::optional<QMatrix> witness;
  std::uint64_t nodes = 0;
};

constexpr std::uint64_t default_search_budget = 100'000'000;

namespace detail {

// Backtracking over cells in row-major order. Each row draws from its fixed
// symbol multiset; a column may only receive a symbol it still demands.
// Values are tried in ascending order, so solutions appear in lexicographic
// order and the first one different from `original` is the least witness.
class ProfileSearch {
public:
  ProfileSearch(const QMatrix& original, std::uint64_t budget)
      : orig_(original), budget_(budget), q_(static_cast<std::size_t>(original.q())),
        m_(original.rows()), n_(original.cols()), profile_(structure_profile(original)),
        demand_(profile_.col_structs), cells_(m_ * n_, 0) {
    rows_below_with_.assign(m_ + 1, std::vector<std::size_t>(q_, 0));
    for (std::size_t i = m_; i-- > 0;)
      for (std::size_t v = 0; v < q_; ++v) rows_below_with_[i][v] = rows_below_with_[i + 1][v] + (profile_.row_structs[i][v] > 0);
  }

  WeakVerdict run() {
    row_left_ = profile_.row_structs[0];
    const bool found = place(0, 0);
    if (exceeded_) return {WeakStatus::budget_exceeded, std::nullopt, nodes_};
    if (found) return {WeakStatus::witness, QMatrix(orig_.q(), m_, n_, cells_), nodes_};
    return {WeakStatus::unique, std::nullopt, nodes_};
  }

private:
  bool row_can_finish(std::size_t j) const {
    for (std::size_t v = 0; v < q_; ++v) {
      if (!row_left_[v]) continue;
      std::size_t room = 0;
      for (std::size_t c = j; c < n_; ++c) room += demand_[c][v] > 0;
      if (room < row_left_[v]) return false;
    }
    return true;
  }

  bool columns_can_finish(std::size_t next_row) const {
    for (std::size_t c = 0; c < n_; ++c)
      for (std::size_t v = 0; v < q_; ++v)
        if (demand_[c][v] > rows_below_with_[next_row][v]) return false;
    return true;
  }

  bool place(std::size_t i, std::size_t j) {
    if (j == n_) {
      if (!columns_can_finish(i + 1)) return false;
      if (i + 1 == m_) return cells_ != orig_.entries();
      auto saved = row_left_;
      row_left_ = profile_.row_structs[i + 1];
      const bool r = place(i + 1, 0);
      row_left_ = std::move(saved);
      return r;
    }
    for (std::size_t v = 0; v < q_; ++v) {
      if (!row_left_[v] || !demand_[j][v]) continue;
      if (++nodes_ > budget_) {
        exceeded_ = true;
        return false;
      }
      --row_left_[v];
      --demand_[j][v];
      cells_[i * n_ + j] = static_cast<Symbol>(v);
      bool r = row_can_finish(j + 1) && place(i, j + 1);
      ++row_left_[v];
      ++demand_[j][v];
      if (r) return true;
      if (exceeded_) return false;
    }
    return false;
  }

  const QMatrix& orig_;
  std::uint64_t budget_;
  std::size_t q_, m_, n_;
  StructureProfile profile_;
  std::vector<StructureVector> demand_;
  std::vector<std::vector<std::size_t>> rows_below_with_;
  StructureVector row_left_;
  std::vector<Symbol> cells_;
  std::uint64_t nodes_ = 0;
  bool exceeded_ = false;
};

}  // namespace detail

/// Searches for another matrix with the same row and column structure
/// vectors. `unique` means the exhaustive search found none; `witness`
/// carries the lexicographically least alternative; `budget_exceeded` means
/// the node limit was hit before the search finished.
inline WeakVerdict is_weak_lonesum(const QMatrix& m, std::uint64_t budget = default_search_budget) {
  return detail::ProfileSearch(m, budget).run();
}

/// The 5-ary n x n matrix with 0 on the diagonal, 1 on the superdiagonal and
/// at (n, 1), 3 strictly above the superdiagonal, 4 in column 1 for rows
/// 2..n-1, and 2 elsewhere below the diagonal. Swapping 0 and 1 preserves its
/// structure vectors.
inline QMatrix forbidden_family(std::size_t n) {
  if (n < 3) throw domain_error("forbidden family is defined for n >= 3");
  std::vector<Symbol> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Symbol v;
      if (j == i) v = 0;
      else if (j == i + 1 || (i == n - 1 && j == 0)) v = 1;
      else if (j >= i + 2) v = 3;
      else if (j == 0) v = 4;
      else v = 2;
      e[i * n + j] = v;
    }
  return {5, n, n, std::move(e)};
}

enum class Minimality { minimal, not_minimal, budget_exceeded };

/// A matrix is a minimal forbidden matrix when it is not weak lonesum but
/// every submatrix obtained by deleting one row or one column is. Deleting
/// more only shrinks the profile classes, so maximal proper submatrices
/// suffice. The budget applies to each individual search.
inline Minimality is_minimal_forbidden(const QMatrix& m, std::uint64_t budget = default_search_budget) {
  const WeakVerdict self = is_weak_lonesum(m, budget);
  if (self.status == WeakStatus::budget_exceeded) return Minimality::budget_exceeded;
  if (self.status == WeakStatus::unique) return Minimality::not_minimal;

  auto all_but = [](std::size_t count, std::size_t skip) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < count; ++k)
      if (k != skip) idx.push_back(k);
    return idx;
  };
  std::vector<std::size_t> all_rows = all_but(m.rows(), m.rows()), all_cols = all_but(m.cols(), m.cols());
  bool exceeded = false;
  auto check = [&](const QMatrix& sub) {
    const WeakVerdict v = is_weak_lonesum(sub, budget);
    if (v.status == WeakStatus::budget_exceeded) exceeded = true;
    return v.status != WeakStatus::witness;
  };
  if (m.rows() > 1)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!check(m.submatrix(all_but(m.rows(), r), all_cols))) return Minimality::not_minimal;
  if (m.cols() > 1)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!check(m.submatrix(all_rows, all_but(m.cols(), c)))) return Minimality::not_minimal;
  return exceeded ? Minimality::budget_exceeded : Minimality::minimal;
}

struct SubmatrixHandle {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  friend bool operator==(const SubmatrixHandle&, const SubmatrixHandle&) = default;
};

namespace detail {

template <class Visit>
bool for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
    if (pos == k) return visit(static_cast<const std::vector<std::size_t>&>(idx));
    for (std::size_t x = from; x + (k - pos) <= n; ++x) {
      idx[pos] = x;
      if (rec(pos + 1, x + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

}  // namespace detail

/// First 2x2, then 2x3, then 3x2 submatrix (rows and columns in increasing
/// index order) that is not weak lonesum.
inline std::optional<SubmatrixHandle> small_forbidden_scan(const QMatrix& m) {
  std::optional<SubmatrixHandle> hit;
  const std::pair<std::size_t, std::size_t> shapes[] = {{2, 2}, {2, 3}, {3, 2}};
  for (auto [h, w] : shapes) {
    if (h > m.rows() || w > m.cols()) continue;
    const bool found = detail::for_each_subset(m.rows(), h, [&](const std::vector<std::size_t>& rs) {
      return detail::for_each_subset(m.cols(), w, [&](const std::vector<std::size_t>& cs) {
        if (is_weak_lonesum(m.submatrix(rs, cs)).status != WeakStatus::witness) return false;
        hit = SubmatrixHandle{rs, cs};
        return true;
      });
    });
    if (found) return hit;
  }
  return std::nullopt;
}

/// A matrix together with a trade: cells whose values move from `from` to
/// `to` in an alternative filling with the same structure vectors.
struct TradeMatrix {
  struct Move {
    Cell cell;
    Symbol from;
    Symbol to;
  };
  QMatrix base;
  std::vector<Move> moves;

  QMatrix alternative() const {
    std::vector<Symbol> e = base.entries();
    for (const Move& mv : moves) e[mv.cell.row * base.cols() + mv.cell.col] = mv.to;
    return {base.q(), base.rows(), base.cols(), std::move(e)};
  }

  /// The alternative matrix, annotated with the trade back to `base`.
  TradeMatrix inverse() const {
    TradeMatrix t{alternative(), {}};
    for (const Move& mv : moves) t.moves.push_back({mv.cell, mv.to, mv.from});
    return t;
  }
};

/// Parses rows of whitespace-separated entries where "a_b" marks an entry
/// with value a that becomes b in the alternative filling.
inline TradeMatrix parse_trade_matrix(int q, const std::vector<std::string>& rows) {
  std::vector<std::vector<Symbol>> vals;
  std::vector<TradeMatrix::Move> moves;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::istringstream in(rows[i]);
    std::vector<Symbol> r;
    std::string tok;
    while (in >> tok) {
      const auto us = tok.find('_');
      const Symbol v = std::stoi(tok.substr(0, us));
      if (us != std::string::npos) moves.push_back({{i, r.size()}, v, std::stoi(tok.substr(us + 1))});
      r.push_back(v);
    }
    vals.push_back(std::move(r));
  }
  return {QMatrix(q, vals), std::move(moves)};
}

/// The 6 x 6 ternary forbidden matrix T with its alternative filling.
inline TradeMatrix ternary_forbidden_T() {
  return parse_trade_matrix(3, {
                                   "0_1 1_2 2_0 0   0   0",
                                   "1   1   0_1 0   0   1_0",
                                   "1   1   1_2 2_0 0_1 1",
                                   "1   2_1 2   2   1_2 1",
                                   "1_2 2   2   2   2_0 0_1",
                                   "2_0 2   2   0_2 0   0",
                               });
}

/// The 6 x 9 ternary forbidden matrix T' with its alternative filling.
inline TradeMatrix ternary_forbidden_T_prime() {
  return parse_trade_matrix(3, {
                                   "1   0_1 1_2 2_0 2   0   0   0   0",
                                   "1   1   1   0_2 2_1 0   0   0   1_0",
                                   "1   1   1   2   1_2 2_0 0_1 0   1",
                                   "1   1   2_1 2   2   2   1_0 0_2 1",
                                   "1_2 1   2   2   2   2   0   2_0 0_1",
                                   "2_1 1_0 2   2   2   0_2 0   0   0",
                               });
}

}  // namespace lonesum
