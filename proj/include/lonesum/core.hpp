#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lonesum {

/// Raised when a matrix (or an argument to an operation) violates its
/// documented domain: out-of-range symbols, bad dimensions, invalid
/// permutations.
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Raised by operations whose precondition is "M is lonesum".
class not_lonesum_error : public domain_error {
public:
  using domain_error::domain_error;
};

/// Raised when an exhaustive computation would exceed its configured size
/// limit; the computation is refused rather than approximated.
class limit_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised by the matrix text parser.
class parse_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using Symbol = int;
using Permutation = std::vector<std::size_t>;

/// Dense m x n matrix over the alphabet {0, ..., q-1}.
///
/// Values are immutable once constructed; every transformation returns a new
/// matrix, so instances can be shared freely between threads.
class QMatrix {
public:
  QMatrix(int q, std::size_t rows, std::size_t cols, std::vector<Symbol> entries)
      : q_(q), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (q < 2) throw domain_error("alphabet size must be at least 2");
    if (rows == 0 || cols == 0) throw domain_error("matrix must have at least one row and one column");
    if (entries_.size() != rows * cols) throw domain_error("entry count does not match dimensions");
    for (Symbol e : entries_)
      if (e < 0 || e >= q) throw domain_error("entry " + std::to_string(e) + " outside alphabet 0.." + std::to_string(q - 1));
  }

  QMatrix(int q, const std::vector<std::vector<Symbol>>& rows)
      : QMatrix(q, rows.size(), rows.empty() ? 0 : rows.front().size(), flatten(rows)) {}

  int q() const noexcept { return q_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Symbol operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Symbol at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw domain_error("matrix index out of range");
    return (*this)(i, j);
  }

  std::span<const Symbol> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
  std::vector<Symbol> col(std::size_t j) const {
    std::vector<Symbol> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }
  const std::vector<Symbol>& entries() const noexcept { return entries_; }

  QMatrix transposed() const {
    std::vector<Symbol> out(entries_.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[j * rows_ + i] = (*this)(i, j);
    return {q_, cols_, rows_, std::move(out)};
  }

  /// Keeps the listed rows and columns, in the order given.
  QMatrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
    std::vector<Symbol> out;
    out.reserve(row_idx.size() * col_idx.size());
    for (std::size_t i : row_idx)
      for (std::size_t j : col_idx) out.push_back(at(i, j));
    return {q_, row_idx.size(), col_idx.size(), std::move(out)};
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

private:
  static std::vector<Symbol> flatten(const std::vector<std::vector<Symbol>>& rows) {
    std::vector<Symbol> out;
    for (const auto& r : rows) {
      if (r.size() != rows.front().size()) throw domain_error("ragged matrix rows");
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }

  int q_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Symbol> entries_;
};

struct MarginProfile {
  std::vector<long long> row_sums;
  std::vector<long long> col_sums;

  friend bool operator==(const MarginProfile&, const MarginProfile&) = default;
};

using StructureVector = std::vector<std::size_t>;

struct StructureProfile {
  std::vector<StructureVector> row_structs;
  std::vector<StructureVector> col_structs;

  friend bool operator==(const StructureProfile&, const StructureProfile&) = default;
};

/// Histogram of symbol multiplicities in `v`: result[s] is the number of
/// entries equal to s.
inline StructureVector structure_vector(std::span<const Symbol> v, int q) {
  if (q < 2) throw domain_error("alphabet size must be at least 2");
  StructureVector out(static_cast<std::size_t>(q), 0);
  for (Symbol s : v) {
    if (s < 0 || s >= q) throw domain_error("symbol " + std::to_string(s) + " outside alphabet");
    ++out[static_cast<std::size_t>(s)];
  }
  return out;
}

inline MarginProfile margins(const QMatrix& m) {
  MarginProfile p{std::vector<long long>(m.rows(), 0), std::vector<long long>(m.cols(), 0)};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      p.row_sums[i] += m(i, j);
      p.col_sums[j] += m(i, j);
    }
  return p;
}

inline StructureProfile structure_profile(const QMatrix& m) {
  const auto q = static_cast<std::size_t>(m.q());
  StructureProfile p{std::vector<StructureVector>(m.rows(), StructureVector(q, 0)),
                     std::vector<StructureVector>(m.cols(), StructureVector(q, 0))};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto s = static_cast<std::size_t>(m(i, j));
      ++p.row_structs[i][s];
      ++p.col_structs[j][s];
    }
  return p;
}

inline bool is_permutation_of(const Permutation& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t x : p) {
    if (x >= n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

inline Permutation inverse_permutation(const Permutation& p) {
  Permutation inv(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) inv[p[k]] = k;
  return inv;
}

/// Entry (i, j) of the result is m(row_perm[i], col_perm[j]): row_perm lists,
/// for each output row, the source row it is taken from.
inline QMatrix permute(const QMatrix& m, const Permutation& row_perm, const Permutation& col_perm) {
  if (!is_permutation_of(row_perm, m.rows())) throw domain_error("invalid row permutation");
  if (!is_permutation_of(col_perm, m.cols())) throw domain_error("invalid column permutation");
  return m.submatrix(row_perm, col_perm);
}

/// Exchanges every occurrence of symbols a and b.
inline QMatrix swap_values(const QMatrix& m, Symbol a, Symbol b) {
  if (a < 0 || a >= m.q() || b < 0 || b >= m.q()) throw domain_error("swap symbol outside alphabet");
  std::vector<Symbol> out = m.entries();
  for (Symbol& e : out) {
    if (e == a)
      e = b;
    else if (e == b)
      e = a;
  }
  return {m.q(), m.rows(), m.cols(), std::move(out)};
}

/// Checks the standard-form monotonicity: every entry is at least as large
/// as its right and lower neighbours.
inline bool is_monotone(const QMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j + 1 < m.cols() && m(i, j) < m(i, j + 1)) return false;
      if (i + 1 < m.rows() && m(i, j) < m(i + 1, j)) return false;
    }
  return true;
}

namespace detail {

// Within a pair of rows (top, bottom) a column is "falling" when top >= 1 and
// bottom <= q-2, and "rising" when top <= q-2 and bottom >= 1. A forbidden
// 2x2 submatrix on these rows is exactly a falling column paired with a
// different rising column.
inline std::optional<std::pair<std::size_t, std::size_t>>
forbidden_column_pair(const QMatrix& m, std::size_t top, std::size_t bottom) {
  const Symbol hi = m.q() - 2;
  std::optional<std::size_t> falling, rising, both;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const Symbol a = m(top, j), c = m(bottom, j);
    const bool f = a >= 1 && c <= hi;
    const bool r = a <= hi && c >= 1;
    if (f && r) {
      if (falling) return std::pair{*falling, j};
      if (rising) return std::pair{*rising, j};
      if (both) return std::pair{*both, j};
      both = j;
    } else if (f) {
      if (rising) return std::pair{*rising, j};
      if (both) return std::pair{*both, j};
      if (!falling) falling = j;
    } else if (r) {
      if (falling) return std::pair{*falling, j};
      if (both) return std::pair{*both, j};
      if (!rising) rising = j;
    }
  }
  return std::nullopt;
}

}  // namespace detail

struct StandardForm {
  Permutation row_perm;
  Permutation col_perm;
  QMatrix canon;
};

/// Rows and columns are ordered by (count of q-1 descending, sum descending,
/// original index). Returns nullopt when the sorted matrix is not monotone or
/// still contains a forbidden 2x2 pattern, i.e. when `m` is not strongly
/// lonesum.
inline std::optional<StandardForm> standard_form(const QMatrix& m) {
  const Symbol top = m.q() - 1;
  auto order = [top](std::size_t count, auto line_of) {
    std::vector<std::pair<long long, long long>> key(count);
    for (std::size_t k = 0; k < count; ++k) {
      long long full = 0, sum = 0;
      for (Symbol s : line_of(k)) {
        full += s == top;
        sum += s;
      }
      key[k] = {full, sum};
    }
    Permutation p(count);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::stable_sort(p.begin(), p.end(), [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
    return p;
  };
  Permutation rp = order(m.rows(), [&](std::size_t i) {
    auto r = m.row(i);
    return std::vector<Symbol>(r.begin(), r.end());
  });
  Permutation cp = order(m.cols(), [&](std::size_t j) { return m.col(j); });
  QMatrix canon = permute(m, rp, cp);
  if (!is_monotone(canon)) return std::nullopt;
  for (std::size_t a = 0; a < canon.rows(); ++a)
    for (std::size_t b = a + 1; b < canon.rows(); ++b)
      if (detail::forbidden_column_pair(canon, a, b)) return std::nullopt;
  return StandardForm{std::move(rp), std::move(cp), std::move(canon)};
}

// Text format: "q m n" on the first line, then m lines of n entries.

inline QMatrix read_matrix(std::istream& in) {
  long long q = 0, m = 0, n = 0;
  if (!(in >> q >> m >> n)) throw parse_error("expected header 'q m n'");
  if (q < 2 || m < 1 || n < 1) throw parse_error("header values out of range (need q>=2, m>=1, n>=1)");
  if (m * n > (1LL << 24)) throw parse_error("matrix too large");
  std::vector<Symbol> entries;
  entries.reserve(static_cast<std::size_t>(m * n));
  for (long long k = 0; k < m * n; ++k) {
    long long e = 0;
    if (!(in >> e)) throw parse_error("expected " + std::to_string(m * n) + " entries, got " + std::to_string(k));
    if (e < 0 || e >= q) throw parse_error("entry " + std::to_string(e) + " outside alphabet 0.." + std::to_string(q - 1));
    entries.push_back(static_cast<Symbol>(e));
  }
  std::string trailing;
  if (in >> trailing) throw parse_error("unexpected trailing token '" + trailing + "'");
  return {static_cast<int>(q), static_cast<std::size_t>(m), static_cast<std::size_t>(n), std::move(entries)};
}

inline QMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

inline void write_matrix(std::ostream& out, const QMatrix& m) {
  out << m.q() << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
}

inline std::string format_matrix(const QMatrix& m) {
  std::ostringstream out;
  write_matrix(out, m);
  return out.str();
}

inline std::ostream& operator<<(std::ostream& out, const QMatrix& m) {
  write_matrix(out, m);
  return out;
}

}  // namespace lonesum
