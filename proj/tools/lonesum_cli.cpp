// lonesum: command-line front end for the lonesum library.
//
// Exit codes: 0 lonesum / unique / ok, 1 not lonesum / ambiguous / oracle
// mismatch, 2 search budget exceeded, 3 infeasible margins, 4 enumeration or
// brute-force limit refused, 5 argument outside an operation's domain,
// 64 usage error, 65 unparseable input, 66 unreadable input file.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lonesum/report.hpp"

namespace {

using lonesum::report::json;

enum Exit : int {
  ok = 0,
  negative = 1,
  budget = 2,
  infeasible = 3,
  limit = 4,
  domain = 5,
  usage = 64,
  data = 65,
  no_input = 66,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

lonesum::QMatrix load(const std::string& path) {
  if (path == "-") return lonesum::read_matrix(std::cin);
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return lonesum::read_matrix(in);
}

std::vector<long long> parse_csv(const std::string& text, const char* what) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    long long v;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad integer in ") + what + ": '" + tok + "'");
    }
    if (used != tok.size()) throw UsageError(std::string("bad integer in ") + what + ": '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(what) + " must not be empty");
  return out;
}

std::uint64_t default_budget() {
  const char* env = std::getenv("LONESUM_BUDGET");
  if (!env) return lonesum::default_search_budget;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("LONESUM_BUDGET is not a node count: ") + env);
}

int exit_for(const std::string& verdict) {
  if (verdict == "lonesum" || verdict == "unique" || verdict == "ok") return ok;
  if (verdict == "budget_exceeded") return budget;
  if (verdict == "infeasible") return infeasible;
  return negative;
}

void print_text(const json& p) {
  const json& cert = p["certificate"];
  std::cout << p["verdict"].get<std::string>() << '\n';
  if (!p["count"].is_null()) std::cout << p["count"].get<std::string>() << '\n';
  if (cert.is_null()) return;
  const std::string kind = cert.value("kind", "");
  auto print_matrix = [](const json& m) {
    std::cout << m["q"] << ' ' << m["rows"] << ' ' << m["cols"] << '\n';
    for (const auto& row : m["entries"]) {
      for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "") << row[j];
      std::cout << '\n';
    }
  };
  if (kind == "forbidden_2x2") {
    std::cout << "rows " << cert["rows"][0] << ' ' << cert["rows"][1] << " cols " << cert["cols"][0] << ' '
              << cert["cols"][1] << '\n';
    for (const auto& row : cert["entries"]) std::cout << row[0] << ' ' << row[1] << '\n';
  } else if (kind == "matrix" || kind == "alternative") {
    print_matrix(cert["matrix"]);
  } else if (kind == "permutation") {
    const auto& img = cert["image"];
    for (std::size_t i = 0; i < img.size(); ++i) std::cout << (i ? " " : "") << img[i];
    std::cout << '\n';
  } else if (kind == "enumeration") {
    std::cout << "total " << cert["total"].get<std::string>() << " lonesum " << cert["lonesum"].get<std::string>()
              << " mismatches " << cert["mismatches"].size() << '\n';
  } else if (cert.contains("coefficients")) {
    for (const auto& c : cert["coefficients"]) {
      if (c.is_array()) {
        for (std::size_t j = 0; j < c.size(); ++j) std::cout << (j ? " " : "") << c[j].get<std::string>();
        std::cout << '\n';
      } else {
        std::cout << c.get<std::string>() << '\n';
      }
    }
  }
  if (cert.contains("nodes")) std::cout << "nodes " << cert["nodes"] << '\n';
  if (cert.contains("cycle")) {
    std::cout << "cycle " << cert["cycle"]["a"] << cert["cycle"]["b"];
    for (const auto& c : cert["cycle"]["cells"]) std::cout << " (" << c[0] << ',' << c[1] << ')';
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lonesum matrices and poly-Bernoulli numbers"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Print a JSON payload");

  std::string file = "-";
  bool weak = false;
  std::optional<std::uint64_t> budget_flag;
  int q = 2;
  std::size_t m = 0, n = 0, order = lonesum::default_series_order;
  std::optional<std::size_t> stairs, fixed_index;
  bool symmetric = false;
  std::string rows_csv, cols_csv, perm_csv;
  std::uint64_t enum_limit = lonesum::default_enumeration_limit;

  auto* check = app.add_subcommand("check", "Decide whether a matrix is lonesum");
  check->add_option("file", file, "Matrix file, '-' for stdin");
  check->add_flag("--weak", weak, "Decide weak (structure vector) lonesumness");
  check->add_option("--budget", budget_flag, "Node limit for the weak search");

  auto* recon = app.add_subcommand("reconstruct", "Rebuild a strongly lonesum matrix from its margins");
  recon->add_option("--q", q)->required()->check(CLI::Range(2, 1 << 20));
  recon->add_option("--rows", rows_csv, "Row sums, comma separated")->required();
  recon->add_option("--cols", cols_csv, "Column sums, comma separated")->required();

  auto* count = app.add_subcommand("count", "Count strongly lonesum matrices");
  count->add_option("--q", q)->check(CLI::Range(2, 1 << 20));
  count->add_option("--m", m);
  count->add_option("--n", n)->required();
  count->add_flag("--symmetric", symmetric, "Count symmetric n x n matrices");
  count->add_option("--stairs", stairs, "Binary matrices with exactly j+1 stairs");

  auto* series = app.add_subcommand("series", "Exponential generating function coefficients");
  series->add_option("--q", q)->check(CLI::Range(2, 1 << 20));
  series->add_option("--order", order)->check(CLI::Range(0, 64));
  series->add_option("--fixed-index", fixed_index, "Series in n for fixed column count k");
  series->add_flag("--symmetric", symmetric);

  auto* bij = app.add_subcommand("bijection", "Binary lonesum matrices and bounded permutations");
  bij->require_subcommand(1);
  auto* to_perm = bij->add_subcommand("to-perm", "Matrix to permutation");
  to_perm->add_option("file", file, "Matrix file, '-' for stdin");
  auto* from_perm = bij->add_subcommand("from-perm", "Permutation (zero-based images) to matrix");
  from_perm->add_option("--m", m)->required();
  from_perm->add_option("--n", n)->required();
  from_perm->add_option("--perm", perm_csv, "sigma(0),...,sigma(m+n-1)")->required();

  auto* weak_search = app.add_subcommand("weak-search", "Search for a matrix with the same structure vectors");
  weak_search->add_option("file", file, "Matrix file, '-' for stdin");
  weak_search->add_option("--budget", budget_flag, "Node limit");

  auto* oracle = app.add_subcommand("oracle", "Brute-force enumeration");
  oracle->add_option("--q", q)->check(CLI::Range(2, 1 << 20));
  oracle->add_option("--m", m);
  oracle->add_option("--n", n)->required();
  oracle->add_flag("--weak", weak, "Group by structure vectors");
  oracle->add_flag("--symmetric", symmetric, "Symmetric n x n matrices");
  oracle->add_option("--limit", enum_limit, "Largest enumeration space accepted");
  oracle->add_option("--budget", budget_flag, "Node limit for the weak search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  const auto start = std::chrono::steady_clock::now();
  json p;
  try {
    const std::uint64_t budget = budget_flag ? *budget_flag : default_budget();
    namespace r = lonesum::report;
    if (*check) {
      p = r::check_payload(load(file), weak, budget);
    } else if (*recon) {
      p = r::reconstruct_payload(q, {parse_csv(rows_csv, "--rows"), parse_csv(cols_csv, "--cols")});
    } else if (*count) {
      if (symmetric) {
        p = r::symmetric_count_payload(q, n);
      } else {
        if (count->count("--m") == 0) throw UsageError("--m is required unless --symmetric is given");
        if (stairs) {
          if (q != 2) throw UsageError("--stairs counts binary matrices; use --q 2");
          p = r::stairs_payload(m, n, *stairs);
        } else {
          p = r::count_payload(q, m, n);
        }
      }
    } else if (*series) {
      if (fixed_index && symmetric) throw UsageError("--fixed-index and --symmetric are exclusive");
      if (fixed_index) p = r::fixed_index_payload(q, *fixed_index, order);
      else if (symmetric) p = r::symmetric_series_payload(q, order);
      else p = r::series_payload(q, order);
    } else if (*bij) {
      if (*to_perm) {
        p = r::to_permutation_payload(load(file));
      } else {
        std::vector<std::size_t> image;
        for (long long v : parse_csv(perm_csv, "--perm")) {
          if (v < 0) throw lonesum::domain_error("permutation images must be non-negative");
          image.push_back(static_cast<std::size_t>(v));
        }
        p = r::from_permutation_payload({m, n, image});
      }
    } else if (*weak_search) {
      p = r::weak_search_payload(load(file), budget);
    } else if (*oracle) {
      if (symmetric) {
        if (weak) throw UsageError("--weak and --symmetric are exclusive");
        p = r::oracle_symmetric_payload(q, n, enum_limit);
      } else {
        if (oracle->count("--m") == 0) throw UsageError("--m is required unless --symmetric is given");
        p = r::oracle_payload(q, m, n, weak, enum_limit, budget);
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return no_input;
  } catch (const lonesum::parse_error& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return data;
  } catch (const lonesum::limit_error& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return limit;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return domain;
  }

  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (as_json) {
    p["elapsed_ms"] = elapsed;
    std::cout << p.dump() << '\n';
  } else {
    print_text(p);
  }
  return exit_for(p["verdict"].get<std::string>());
}
