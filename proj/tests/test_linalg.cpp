#include <gtest/gtest.h>

#include "ncdef/errors.hpp"
#include "ncdef/linalg.hpp"

using namespace ncdef;

namespace {

DenseMatrix mat(std::size_t cols, std::vector<std::vector<int>> rows) {
  std::vector<Vector> rs;
  for (auto& r : rows) {
    Vector v;
    for (int x : r) v.emplace_back(x);
    rs.push_back(v);
  }
  return DenseMatrix::from_rows(cols, rs);
}

Vector vec(std::initializer_list<int> xs) {
  Vector v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST(Rational, ParsesCanonicalForms) {
  EXPECT_EQ(parse_scalar("6/4"), Scalar(3, 2));
  EXPECT_EQ(parse_scalar("-7"), Scalar(-7));
  EXPECT_EQ(parse_scalar(" +2/3 "), Scalar(2, 3));
  EXPECT_EQ(to_string(parse_scalar("-6/4")), "-3/2");
  EXPECT_EQ(to_string(parse_scalar("8/4")), "2");
}

TEST(Rational, RejectsMalformedText) {
  EXPECT_THROW(parse_scalar("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_scalar("1/-2"), std::invalid_argument);
  EXPECT_THROW(parse_scalar("x"), std::invalid_argument);
  EXPECT_THROW(parse_scalar(""), std::invalid_argument);
  EXPECT_THROW(parse_scalar("1.5"), std::invalid_argument);
}

TEST(Linalg, RrefOfKnownMatrix) {
  // [[1,2,3],[2,4,6],[1,0,1]] has rank 2 and kernel spanned by (-1,-1,1)
  const DenseMatrix m = mat(3, {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  EXPECT_EQ(rank(m), 2u);
  const auto k = kernel_basis(m);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0], vec({-1, -1, 1}));
  EXPECT_EQ(image_basis(m).size(), 2u);
  EXPECT_EQ(cokernel_reps(m).size(), 1u);
}

TEST(Linalg, EmptyShapes) {
  const DenseMatrix z(0, 3);
  EXPECT_EQ(rank(z), 0u);
  EXPECT_EQ(kernel_basis(z).size(), 3u);
  const DenseMatrix w(2, 0);
  EXPECT_TRUE(kernel_basis(w).empty());
  EXPECT_EQ(cokernel_reps(w).size(), 2u);
  ASSERT_TRUE(solve(w, vec({0, 0})).has_value());
  EXPECT_FALSE(solve(w, vec({1, 0})).has_value());
}

TEST(Linalg, SolveWitnessAndInfeasibility) {
  const DenseMatrix m = mat(2, {{1, 1}, {1, -1}, {2, 0}});
  const auto x = solve(m, vec({3, 1, 4}));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x, vec({2, 1}));
  EXPECT_FALSE(solve(m, vec({3, 1, 5})).has_value());
  const LinearSolver s(m);
  EXPECT_EQ(s.rank(), 2u);
  EXPECT_EQ(*s.solve(vec({3, 1, 4})), vec({2, 1}));
  EXPECT_FALSE(s.solve(vec({0, 0, 1})).has_value());
}

TEST(Linalg, LengthMismatchesThrow) {
  const DenseMatrix m(2, 2);
  EXPECT_THROW(m.apply(vec({1})), InvalidInput);
  EXPECT_THROW(solve(m, vec({1})), InvalidInput);
  EXPECT_THROW(DenseMatrix::from_columns(2, {vec({1})}), InvalidInput);
  EXPECT_THROW(m * DenseMatrix(3, 1), InvalidInput);
}

TEST(Linalg, EchelonBasisKeepsReducedRows) {
  EchelonBasis b(3);
  EXPECT_TRUE(b.insert(vec({0, 2, 4})));
  EXPECT_TRUE(b.insert(vec({1, 1, 0})));
  EXPECT_FALSE(b.insert(vec({2, 4, 4})));
  EXPECT_EQ(b.size(), 2u);
  EXPECT_TRUE(b.contains(vec({1, 3, 4})));
  EXPECT_FALSE(b.contains(vec({0, 0, 1})));
  for (std::size_t k = 0; k < b.size(); ++k) {
    EXPECT_EQ(b.vectors()[k][b.pivots()[k]], Scalar(1));
    for (std::size_t j = 0; j < b.size(); ++j)
      if (j != k) {
        EXPECT_EQ(b.vectors()[j][b.pivots()[k]], Scalar(0));
      }
  }
}

TEST(Linalg, ExactRationalsDoNotDrift) {
  // Hilbert matrix of order 6 is invertible; floating point would struggle.
  DenseMatrix h(6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) h(i, j) = Scalar(1, static_cast<long>(i + j + 1));
  EXPECT_EQ(rank(h), 6u);
  Vector ones(6, Scalar(1));
  const auto x = solve(h, h.apply(ones));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x, ones);
}
