#pragma once

// JSON payloads shared by the command-line tool and its tests. Every payload
// has the fields "verdict", "certificate" and "count"; counts are decimal
// strings so arbitrary precision survives the trip through JSON.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lonesum/lonesum.hpp"

namespace lonesum::report {

using json = nlohmann::ordered_json;

inline json rows_of(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    rows.push_back(std::vector<Symbol>(r.begin(), r.end()));
  }
  return rows;
}

inline json matrix_json(const QMatrix& m) {
  return {{"q", m.q()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows_of(m)}};
}

inline json payload(std::string verdict, json certificate = nullptr, json count = nullptr) {
  return {{"verdict", std::move(verdict)}, {"certificate", std::move(certificate)}, {"count", std::move(count)}};
}

inline json weak_payload(const QMatrix& m, std::uint64_t budget) {
  const WeakVerdict v = is_weak_lonesum(m, budget);
  switch (v.status) {
    case WeakStatus::unique:
      return payload("lonesum", {{"kind", "none"}, {"nodes", v.nodes}});
    case WeakStatus::witness:
      return payload("not_lonesum", {{"kind", "alternative"}, {"nodes", v.nodes}, {"matrix", matrix_json(*v.witness)}});
    case WeakStatus::budget_exceeded:
      break;
  }
  return payload("budget_exceeded", {{"kind", "none"}, {"nodes", v.nodes}});
}

inline json check_payload(const QMatrix& m, bool weak, std::uint64_t budget) {
  if (weak) return weak_payload(m, budget);
  const StrongVerdict v = is_strong_lonesum(m);
  if (v.lonesum()) return payload("lonesum");
  const ForbiddenWitness& w = *v.witness;
  return payload("not_lonesum", {{"kind", "forbidden_2x2"},
                                 {"rows", {w.row1, w.row2}},
                                 {"cols", {w.col1, w.col2}},
                                 {"entries", {{w.entries[0], w.entries[1]}, {w.entries[2], w.entries[3]}}}});
}

inline json reconstruct_payload(int q, const MarginProfile& target) {
  const Reconstruction r = reconstruct_strong(q, target, target.row_sums.size(), target.col_sums.size());
  switch (r.status) {
    case ReconstructStatus::unique:
      return payload("unique", {{"kind", "matrix"}, {"matrix", matrix_json(*r.matrix)}});
    case ReconstructStatus::ambiguous:
      return payload("ambiguous");
    case ReconstructStatus::infeasible:
      break;
  }
  return payload("infeasible");
}

inline json count_payload(int q, std::size_t m, std::size_t n) {
  return payload("ok", nullptr, count_lonesum(q, m, n).str());
}

inline json symmetric_count_payload(int q, std::size_t n) {
  return payload("ok", nullptr, count_symmetric_lonesum(q, n).str());
}

inline json stairs_payload(std::size_t m, std::size_t n, std::size_t j) {
  return payload("ok", nullptr, stairs_count(m, n, j).str());
}

/// EGF coefficients (n! m! times the series coefficient) as decimal strings.
inline json series_payload(int q, std::size_t order) {
  const BiSeries s = lonesum_egf(q, order, order);
  json coeffs = json::array();
  for (std::size_t i = 0; i <= order; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j <= order; ++j) row.push_back(s.egf(i, j).str());
    coeffs.push_back(std::move(row));
  }
  return payload("ok", {{"kind", "bivariate_egf"}, {"order", order}, {"coefficients", std::move(coeffs)}});
}

inline json univariate_payload(const char* kind, const UniSeries& s) {
  json coeffs = json::array();
  for (std::size_t i = 0; i <= s.order(); ++i) coeffs.push_back(s.egf(i).str());
  return payload("ok", {{"kind", kind}, {"order", s.order()}, {"coefficients", std::move(coeffs)}});
}

inline json symmetric_series_payload(int q, std::size_t order) {
  return univariate_payload("symmetric_egf", symmetric_egf(q, order));
}

inline json fixed_index_payload(int q, std::size_t k, std::size_t order) {
  json p = univariate_payload("fixed_index_egf", fixed_index_series(q, k, order));
  p["certificate"]["k"] = k;
  return p;
}

inline json permutation_json(const BoundedPermutation& s) {
  return {{"kind", "permutation"}, {"m", s.m}, {"n", s.n}, {"image", s.image}};
}

inline json to_permutation_payload(const QMatrix& m) {
  return payload("ok", permutation_json(matrix_to_permutation(m)));
}

inline json from_permutation_payload(const BoundedPermutation& s) {
  return payload("ok", {{"kind", "matrix"}, {"matrix", matrix_json(permutation_to_matrix(s))}});
}

inline json weak_search_payload(const QMatrix& m, std::uint64_t budget) {
  json p = weak_payload(m, budget);
  if (auto c = find_cycle(m)) {
    json cells = json::array();
    for (const Cell& x : c->cells) cells.push_back({x.row, x.col});
    p["certificate"]["cycle"] = {{"a", c->a}, {"b", c->b}, {"cells", std::move(cells)}};
  }
  return p;
}

inline json enumeration_json(const EnumerationReport& r) {
  json mism = json::array();
  for (const QMatrix& m : r.mismatches) mism.push_back(rows_of(m));
  return {{"kind", "enumeration"}, {"q", r.q}, {"m", r.m}, {"n", r.n}, {"total", r.total.str()},
          {"lonesum", r.lonesum.str()}, {"mismatches", std::move(mism)}};
}

inline json oracle_payload(int q, std::size_t m, std::size_t n, bool weak, std::uint64_t limit, std::uint64_t budget) {
  const EnumerationReport r = weak ? oracle_report_weak(q, m, n, limit, budget) : oracle_report_strong(q, m, n, limit);
  return payload(r.mismatches.empty() ? "ok" : "mismatch", enumeration_json(r), r.lonesum.str());
}

inline json oracle_symmetric_payload(int q, std::size_t n, std::uint64_t limit) {
  return payload("ok", nullptr, oracle_count_symmetric(q, n, limit).str());
}

}  // namespace lonesum::report
