#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "lonesum/bijection.hpp"
#include "support.hpp"

using namespace lonesum;
namespace ts = testing_support;

namespace {

// The 4 x 8 example: labels C_2 C_3 . C_3 C_1 C_2 C_2 C_3 over the columns,
// R_2 R_1 R_3 R_2 down the rows.
QMatrix step_one_example() {
  return QMatrix(2, {
                        {1, 1, 0, 1, 0, 1, 1, 1},
                        {0, 1, 0, 1, 0, 0, 0, 1},
                        {1, 1, 0, 1, 1, 1, 1, 1},
                        {1, 1, 0, 1, 0, 1, 1, 1},
                    });
}

std::vector<QMatrix> binary_lonesum(std::size_t m, std::size_t n) {
  std::vector<QMatrix> out;
  for (const auto& [entries, single] : ts::margin_singletons(2, m, n))
    if (single) out.emplace_back(2, m, n, entries);
  return out;
}

}  // namespace

TEST(Tuples, StepOneExample) {
  const TuplePair t = matrix_to_tuples(step_one_example());
  EXPECT_EQ(t.k(), 3u);
  EXPECT_EQ(t.col_parts, (std::vector<std::vector<std::size_t>>{{4}, {0, 5, 6}, {1, 3, 7}}));
  EXPECT_EQ(t.row_parts, (std::vector<std::vector<std::size_t>>{{1}, {0, 3}, {2}}));
  EXPECT_EQ(tuples_to_matrix(t, 4, 8), step_one_example());
}

TEST(Tuples, TrivialMatrices) {
  const TuplePair zero = matrix_to_tuples(QMatrix(2, 2, 3, std::vector<Symbol>(6, 0)));
  EXPECT_EQ(zero.k(), 0u);
  EXPECT_EQ(tuples_to_matrix(zero, 2, 3), QMatrix(2, 2, 3, std::vector<Symbol>(6, 0)));

  const TuplePair ones = matrix_to_tuples(QMatrix(2, 2, 3, std::vector<Symbol>(6, 1)));
  EXPECT_EQ(ones.k(), 1u);
  EXPECT_EQ(ones.col_parts[0], (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(ones.row_parts[0], (std::vector<std::size_t>{0, 1}));
}

TEST(Tuples, InverseRuleIsThreshold) {
  const TuplePair t{3, 4, {{2}, {0, 3}}, {{1}, {2}}};
  const QMatrix m = tuples_to_matrix(t, 3, 4);
  const std::size_t c[] = {2, 0, 1, 2}, r[] = {0, 1, 2};
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(m(j, i), c[i] + r[j] > 2 ? 1 : 0);
  EXPECT_EQ(matrix_to_tuples(m), t);
}

TEST(Tuples, Errors) {
  EXPECT_THROW(matrix_to_tuples(QMatrix(3, 1, 1, {1})), domain_error);
  EXPECT_THROW(matrix_to_tuples(QMatrix(2, {{1, 0}, {0, 1}})), not_lonesum_error);
  EXPECT_THROW(tuples_to_matrix({2, 2, {{0}, {0}}, {{0}, {1}}}, 2, 2), domain_error);
  EXPECT_THROW(tuples_to_matrix({2, 2, {{0}}, {{0}, {1}}}, 2, 2), domain_error);
  EXPECT_THROW(tuples_to_matrix({2, 2, {{5}}, {{0}}}, 2, 2), domain_error);
}

TEST(Permutations, SmallestCases) {
  const auto perms = bounded_permutations(1, 1);
  ASSERT_EQ(perms.size(), 2u);
  std::set<std::vector<std::size_t>> images;
  for (const QMatrix& m : {QMatrix(2, 1, 1, {0}), QMatrix(2, 1, 1, {1})}) {
    const BoundedPermutation s = matrix_to_permutation(m);
    images.insert(s.image);
    EXPECT_EQ(permutation_to_matrix(s), m);
  }
  EXPECT_EQ(images.size(), 2u);
  EXPECT_EQ(count_bounded_permutations(1, 1), 2);
  EXPECT_EQ(count_bounded_permutations(2, 2), 14);
}

TEST(Permutations, TwoByTwoImageIsEveryBoundedPermutation) {
  std::set<std::vector<std::size_t>> images;
  for (const QMatrix& m : binary_lonesum(2, 2)) images.insert(matrix_to_permutation(m).image);
  std::set<std::vector<std::size_t>> expected;
  for (const auto& s : bounded_permutations(2, 2)) expected.insert(s.image);
  EXPECT_EQ(images.size(), 14u);
  EXPECT_EQ(images, expected);
}

TEST(Permutations, CountIsPolyBernoulli) {
  for (std::size_t m = 0; m <= 8; ++m)
    for (std::size_t n = 0; m + n <= 8; ++n) EXPECT_EQ(count_bounded_permutations(m, n), poly_bernoulli(m, n)) << m << n;
}

TEST(Permutations, DisplacementBoundByHand) {
  // sigma(i) - i ranges over [-n, m]; brute force over all of S_5 for (2, 3).
  std::vector<std::size_t> p(5);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::size_t hits = 0;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < 5; ++i) {
      const long long d = static_cast<long long>(p[i]) - static_cast<long long>(i);
      ok = ok && d >= -3 && d <= 2;
    }
    hits += ok;
    EXPECT_EQ(satisfies_displacement(2, 3, p), ok);
  } while (std::next_permutation(p.begin(), p.end()));
  EXPECT_EQ(BigCount(hits), poly_bernoulli(2, 3));
}

TEST(Permutations, MatrixRoundTripExhaustive) {
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 1; n <= 3; ++n) {
      std::set<std::vector<std::size_t>> images;
      for (const QMatrix& a : binary_lonesum(m, n)) {
        const BoundedPermutation s = matrix_to_permutation(a);
        EXPECT_TRUE(satisfies_displacement(m, n, s.image));
        EXPECT_EQ(permutation_to_matrix(s), a) << a;
        images.insert(s.image);
      }
      EXPECT_EQ(BigCount(images.size()), poly_bernoulli(m, n));
    }
}

TEST(Permutations, PermutationRoundTripExhaustive) {
  for (std::size_t m = 1; m <= 5; ++m)
    for (std::size_t n = 1; m + n <= 6; ++n)
      for (const BoundedPermutation& s : bounded_permutations(m, n)) {
        const QMatrix a = permutation_to_matrix(s);
        EXPECT_EQ(matrix_to_permutation(a), s);
      }
}

TEST(Permutations, LargerRandomRoundTrip) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng() % 7, n = 1 + rng() % 7;
    const QMatrix a = ts::random_lonesum(rng, 2, m, n);
    EXPECT_EQ(permutation_to_matrix(matrix_to_permutation(a)), a);
  }
}

TEST(Permutations, Errors) {
  EXPECT_THROW(permutation_to_matrix({2, 2, {3, 0, 1, 2}}), domain_error);
  EXPECT_THROW(permutation_to_matrix({2, 2, {0, 0, 1, 2}}), domain_error);
  EXPECT_THROW(permutation_to_matrix({1, 1, {0, 1, 2}}), domain_error);
  EXPECT_THROW(count_bounded_permutations(6, 5), limit_error);
  EXPECT_THROW(bounded_permutations(6, 5), limit_error);
  EXPECT_THROW(count_bounded_permutations(4, 3, 6), limit_error);
  EXPECT_EQ(count_bounded_permutations(4, 3, 7), poly_bernoulli(4, 3));
}
