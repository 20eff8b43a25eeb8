#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "lonesum/report.hpp"

using namespace lonesum;
using report::json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell; `prefix` may set environment variables or
// pipe into stdin.
Outcome run(const std::string& args, const std::string& prefix = "") {
  const std::string cmd = prefix + " '" LONESUM_CLI "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  Outcome r;
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json run_json(const std::string& args, int expected_code, const std::string& prefix = "") {
  const Outcome r = run("--json " + args, prefix);
  EXPECT_EQ(r.code, expected_code) << args;
  json p = json::parse(r.out);
  EXPECT_TRUE(p.contains("elapsed_ms"));
  EXPECT_TRUE(p["elapsed_ms"].is_number());
  p.erase("elapsed_ms");
  return p;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("lonesum_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

QMatrix identity2() { return QMatrix(2, {{1, 0}, {0, 1}}); }

}  // namespace

TEST(Cli, CheckStrong) {
  const QMatrix strong(3, {{0, 1, 0}, {1, 2, 1}, {0, 1, 0}});
  const std::string f = write_temp("strong.txt", format_matrix(strong));
  EXPECT_EQ(run("check " + f).code, 0);
  EXPECT_EQ(run_json("check " + f, 0), report::check_payload(strong, false, default_search_budget));

  const std::string g = write_temp("identity.txt", format_matrix(identity2()));
  const Outcome r = run("check " + g);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("not_lonesum"), std::string::npos);
  EXPECT_NE(r.out.find("rows 0 1 cols 0 1"), std::string::npos);
  const json p = run_json("check " + g, 1);
  EXPECT_EQ(p, report::check_payload(identity2(), false, default_search_budget));
  EXPECT_EQ(p["certificate"]["kind"], "forbidden_2x2");
}

TEST(Cli, CheckWeakAndBudget) {
  const QMatrix weak(3, {{0, 1, 0}, {1, 2, 1}, {0, 1, 1}});
  const std::string f = write_temp("weak.txt", format_matrix(weak));
  EXPECT_EQ(run("check " + f).code, 1);
  EXPECT_EQ(run_json("check --weak " + f, 0), report::check_payload(weak, true, default_search_budget));

  const std::string t = write_temp("T.txt", format_matrix(ternary_forbidden_T().base));
  EXPECT_EQ(run("check --weak --budget 1 " + t).code, 2);
  EXPECT_EQ(run("check --weak " + t, "LONESUM_BUDGET=1").code, 2);
  EXPECT_EQ(run("check --weak --budget 100000 " + t, "LONESUM_BUDGET=1").code, 1);
  const json p = run_json("check --weak " + t, 1);
  EXPECT_EQ(p["certificate"]["kind"], "alternative");
  EXPECT_EQ(p, report::check_payload(ternary_forbidden_T().base, true, default_search_budget));
  EXPECT_EQ(run("check --weak " + t, "LONESUM_BUDGET=lots").code, 64);
}

TEST(Cli, StdinAndInputErrors) {
  EXPECT_EQ(run("check -", "printf '2 2 2\\n1 0\\n0 1\\n' |").code, 1);
  EXPECT_EQ(run("check -", "printf '2 1 2\\n1 0\\n' |").code, 0);
  EXPECT_EQ(run("check -", "printf '2 2 2\\n1 0\\n' |").code, 65);
  EXPECT_EQ(run("check -", "printf '2 1 1\\n7\\n' |").code, 65);
  EXPECT_EQ(run("check /nonexistent/matrix.txt").code, 66);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 64);
  EXPECT_EQ(run("frobnicate").code, 64);
  EXPECT_EQ(run("count --q 3 --m 2").code, 64);
  EXPECT_EQ(run("count --q 1 --m 2 --n 2").code, 64);
  EXPECT_EQ(run("count --q 3 --n 2").code, 64);
  EXPECT_EQ(run("count --q 3 --m 2 --n 2 --stairs 1").code, 64);
  EXPECT_EQ(run("reconstruct --q 2 --rows 1,x --cols 1").code, 64);
  EXPECT_EQ(run("bijection").code, 64);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, Reconstruct) {
  const Outcome r = run("reconstruct --q 2 --rows 2,1,3 --cols 3,2,1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "unique\n2 3 3\n1 1 0\n1 0 0\n1 1 1\n");
  EXPECT_EQ(run_json("reconstruct --q 2 --rows 2,1,3 --cols 3,2,1", 0),
            report::reconstruct_payload(2, {{2, 1, 3}, {3, 2, 1}}));
  EXPECT_EQ(run_json("reconstruct --q 3 --rows 1,4,2 --cols 1,4,2", 1)["verdict"], "ambiguous");
  EXPECT_EQ(run("reconstruct --q 2 --rows 3 --cols 1,1").code, 3);
  EXPECT_EQ(run("reconstruct --q 2 --rows 1,1 --cols 1").code, 3);
}

TEST(Cli, Counts) {
  EXPECT_EQ(run("count --q 3 --m 2 --n 2").out, "ok\n50\n");
  EXPECT_EQ(run_json("count --q 3 --m 2 --n 2", 0), report::count_payload(3, 2, 2));
  const json s = run_json("count --q 2 --symmetric --n 5", 0);
  EXPECT_EQ(s["count"], "1082");
  EXPECT_EQ(s, report::symmetric_count_payload(2, 5));
  EXPECT_EQ(run_json("count --q 2 --m 3 --n 3 --stairs 2", 0), report::stairs_payload(3, 3, 2));
  // Arbitrary precision survives as a decimal string.
  const json big = run_json("count --q 2 --m 30 --n 30", 0);
  EXPECT_EQ(big["count"], poly_bernoulli(30, 30).str());
}

TEST(Cli, Series) {
  EXPECT_EQ(run_json("series --q 3 --order 4", 0), report::series_payload(3, 4));
  EXPECT_EQ(run_json("series --q 2 --order 5 --symmetric", 0), report::symmetric_series_payload(2, 5));
  EXPECT_EQ(run_json("series --q 2 --order 5 --fixed-index 2", 0), report::fixed_index_payload(2, 2, 5));
  EXPECT_EQ(run("series --q 2 --order 3 --fixed-index 1").out, "ok\n1\n2\n4\n8\n");
  EXPECT_EQ(run("series --q 2 --fixed-index 1 --symmetric").code, 64);
}

TEST(Cli, Bijection) {
  const QMatrix a(2, {{1, 1, 0}, {1, 0, 0}});
  const std::string f = write_temp("bij.txt", format_matrix(a));
  const json p = run_json("bijection to-perm " + f, 0);
  EXPECT_EQ(p, report::to_permutation_payload(a));
  std::string csv;
  for (const auto& v : p["certificate"]["image"]) csv += (csv.empty() ? "" : ",") + std::to_string(v.get<std::size_t>());
  const json back = run_json("bijection from-perm --m 2 --n 3 --perm " + csv, 0);
  EXPECT_EQ(back["certificate"]["matrix"], report::matrix_json(a));
  EXPECT_EQ(run("bijection from-perm --m 2 --n 2 --perm 3,0,1,2").code, 5);
  EXPECT_EQ(run("bijection to-perm " + write_temp("bij_id.txt", format_matrix(identity2()))).code, 5);
}

TEST(Cli, WeakSearch) {
  const QMatrix m3 = forbidden_family(3);
  const std::string f = write_temp("m3.txt", format_matrix(m3));
  const json p = run_json("weak-search " + f, 1);
  EXPECT_EQ(p, report::weak_search_payload(m3, default_search_budget));
  EXPECT_EQ(p["certificate"]["matrix"], report::matrix_json(swap_values(m3, 0, 1)));
  EXPECT_TRUE(p["certificate"].contains("cycle"));
  EXPECT_EQ(run("weak-search --budget 1 " + write_temp("T2.txt", format_matrix(ternary_forbidden_T().base))).code, 2);
}

TEST(Cli, Oracle) {
  const json p = run_json("oracle --q 3 --m 2 --n 2", 0);
  EXPECT_EQ(p, report::oracle_payload(3, 2, 2, false, default_enumeration_limit, default_search_budget));
  EXPECT_EQ(p["count"], "50");
  EXPECT_EQ(run_json("oracle --q 3 --m 2 --n 2 --weak", 0)["certificate"]["mismatches"].size(), 0u);
  EXPECT_EQ(run_json("oracle --q 2 --symmetric --n 3", 0)["count"], "26");
  EXPECT_EQ(run("oracle --q 2 --m 5 --n 5").code, 4);
  EXPECT_EQ(run("oracle --q 2 --m 3 --n 3 --limit 10").code, 4);
  EXPECT_EQ(run("oracle --q 2 --m 2 --n 2 --weak --symmetric").code, 64);
}
