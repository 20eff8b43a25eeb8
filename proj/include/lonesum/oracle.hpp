#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "lonesum/count.hpp"
#include "lonesum/strong.hpp"
#include "lonesum/weak.hpp"

namespace lonesum {

// Brute force: enumerate every matrix, group by margins or structure
// vectors, count the singleton classes.

constexpr std::uint64_t default_enumeration_limit = std::uint64_t{1} << 24;

struct EnumerationReport {
  int q = 2;
  std::size_t m = 0;
  std::size_t n = 0;
  BigCount total = 0;
  BigCount lonesum = 0;
  std::vector<QMatrix> mismatches;  // matrices where the criterion under test disagrees
};

namespace detail {

// Number of matrices q^cells, or nullopt once it exceeds `limit`.
inline std::optional<std::uint64_t> space_size(int q, std::size_t cells, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (std::size_t c = 0; c < cells; ++c) {
    total *= static_cast<std::uint64_t>(q);
    if (total > limit) return std::nullopt;
  }
  return total;
}

inline std::uint64_t checked_space(int q, std::size_t cells, std::uint64_t limit) {
  if (q < 2) throw domain_error("alphabet size must be at least 2");
  auto s = space_size(q, cells, limit);
  if (!s) throw limit_error("enumeration space exceeds the configured limit");
  return *s;
}

// Matrix number `index` in base-q digit order, last cell least significant.
inline std::vector<Symbol> decode(std::uint64_t index, int q, std::size_t cells) {
  std::vector<Symbol> e(cells);
  for (std::size_t c = cells; c-- > 0;) {
    e[c] = static_cast<Symbol>(index % static_cast<std::uint64_t>(q));
    index /= static_cast<std::uint64_t>(q);
  }
  return e;
}

inline std::string margin_key(const QMatrix& m) {
  const MarginProfile p = margins(m);
  std::string key;
  auto put = [&](long long v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); };
  for (long long v : p.row_sums) put(v);
  for (long long v : p.col_sums) put(v);
  return key;
}

inline std::string profile_key(const QMatrix& m) {
  const StructureProfile p = structure_profile(m);
  std::string key;
  auto put = [&](const StructureVector& s) {
    for (std::size_t v : s) key.push_back(static_cast<char>(v));
  };
  for (const auto& s : p.row_structs) put(s);
  for (const auto& s : p.col_structs) put(s);
  return key;
}

using KeyFn = std::string (*)(const QMatrix&);

inline unsigned worker_count(std::uint64_t total) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(hw, std::max<std::uint64_t>(1, total / 4096)));
}

// Class sizes keyed by profile. Each worker takes a contiguous index range
// and counts into its own map; merging is a sum, so the result does not
// depend on the number of workers.
inline std::unordered_map<std::string, std::uint64_t> class_sizes(int q, std::size_t m, std::size_t n,
                                                                  std::uint64_t total, KeyFn key,
                                                                  unsigned workers = 0) {
  if (workers == 0) workers = worker_count(total);
  std::vector<std::unordered_map<std::string, std::uint64_t>> partial(workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w)
    threads.emplace_back([&, w] {
      const std::uint64_t lo = total * w / workers, hi = total * (w + 1) / workers;
      for (std::uint64_t idx = lo; idx < hi; ++idx) ++partial[w][key(QMatrix(q, m, n, decode(idx, q, m * n)))];
    });
  for (auto& t : threads) t.join();
  auto merged = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w)
    for (auto& [k, c] : partial[w]) merged[k] += c;
  return merged;
}

inline BigCount singleton_classes(const std::unordered_map<std::string, std::uint64_t>& sizes) {
  std::uint64_t singles = 0;
  for (const auto& [k, c] : sizes) singles += c == 1;
  return singles;
}

inline std::vector<QMatrix> class_of(const QMatrix& m, std::uint64_t limit, KeyFn key) {
  const std::uint64_t total = checked_space(m.q(), m.rows() * m.cols(), limit);
  const std::string target = key(m);
  std::vector<QMatrix> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    QMatrix c(m.q(), m.rows(), m.cols(), decode(idx, m.q(), m.rows() * m.cols()));
    if (key(c) == target) out.push_back(std::move(c));
  }
  return out;
}

// Compares singleton-class membership with `criterion`, matrix by matrix.
inline EnumerationReport report(int q, std::size_t m, std::size_t n, std::uint64_t limit, KeyFn key,
                                const std::function<bool(const QMatrix&)>& criterion) {
  const std::uint64_t total = checked_space(q, m * n, limit);
  const auto sizes = class_sizes(q, m, n, total, key);
  EnumerationReport r{q, m, n, total, singleton_classes(sizes), {}};
  if (criterion)
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      QMatrix c(q, m, n, decode(idx, q, m * n));
      if ((sizes.at(key(c)) == 1) != criterion(c)) r.mismatches.push_back(std::move(c));
    }
  return r;
}

}  // namespace detail

/// Number of q-ary m x n matrices alone in their margin class.
inline BigCount oracle_count_strong(int q, std::size_t m, std::size_t n,
                                    std::uint64_t limit = default_enumeration_limit) {
  const std::uint64_t total = detail::checked_space(q, m * n, limit);
  return detail::singleton_classes(detail::class_sizes(q, m, n, total, detail::margin_key));
}

/// Number of q-ary m x n matrices alone in their structure-vector class.
inline BigCount oracle_count_weak(int q, std::size_t m, std::size_t n, std::uint64_t limit = default_enumeration_limit) {
  const std::uint64_t total = detail::checked_space(q, m * n, limit);
  return detail::singleton_classes(detail::class_sizes(q, m, n, total, detail::profile_key));
}

/// Number of symmetric q-ary n x n matrices passing the strong lonesum
/// criterion, enumerated through their upper triangles.
inline BigCount oracle_count_symmetric(int q, std::size_t n, std::uint64_t limit = default_enumeration_limit) {
  const std::size_t cells = n * (n + 1) / 2;
  const std::uint64_t total = detail::checked_space(q, cells, limit);
  BigCount count = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const auto upper = detail::decode(idx, q, cells);
    std::vector<Symbol> e(n * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) e[i * n + j] = e[j * n + i] = upper[k++];
    if (is_strong_lonesum(QMatrix(q, n, n, std::move(e)))) ++count;
  }
  return count;
}

/// All matrices with the margins of `m`, including `m`, in enumeration order.
inline std::vector<QMatrix> margin_class(const QMatrix& m, std::uint64_t limit = default_enumeration_limit) {
  return detail::class_of(m, limit, detail::margin_key);
}

/// All matrices with the structure vectors of `m`, including `m`.
inline std::vector<QMatrix> profile_class(const QMatrix& m, std::uint64_t limit = default_enumeration_limit) {
  return detail::class_of(m, limit, detail::profile_key);
}

/// Strong enumeration, checked against is_strong_lonesum.
inline EnumerationReport oracle_report_strong(int q, std::size_t m, std::size_t n,
                                              std::uint64_t limit = default_enumeration_limit) {
  return detail::report(q, m, n, limit, detail::margin_key,
                        [](const QMatrix& c) { return is_strong_lonesum(c).lonesum(); });
}

/// Weak enumeration, checked against is_weak_lonesum; a search that runs out
/// of budget raises limit_error.
inline EnumerationReport oracle_report_weak(int q, std::size_t m, std::size_t n,
                                            std::uint64_t limit = default_enumeration_limit,
                                            std::uint64_t budget = default_search_budget) {
  return detail::report(q, m, n, limit, detail::profile_key, [budget](const QMatrix& c) {
    const WeakVerdict v = is_weak_lonesum(c, budget);
    if (v.status == WeakStatus::budget_exceeded) throw limit_error("weak search budget exceeded");
    return v.status == WeakStatus::unique;
  });
}

}  // namespace lonesum
