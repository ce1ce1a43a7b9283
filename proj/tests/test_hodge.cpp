#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "gmtame/hodge.hpp"
#include "test_util.hpp"

using namespace gmtame;
using gmtame::testing::q;

namespace {

QMatrix qm(std::vector<std::vector<Rational>> rows) { return QMatrix::from_rows(rows); }

QMatrix cols(const QMatrix& m, std::vector<std::size_t> idx) { return m.select_columns(idx); }

Flag make_flag(const QMatrix& basis, const std::vector<int>& level) {
  Flag f;
  f.dim = basis.rows();
  f.low = *std::min_element(level.begin(), level.end());
  int top = *std::max_element(level.begin(), level.end());
  for (int p = f.low; p <= top; ++p) {
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < level.size(); ++c)
      if (level[c] >= p) keep.push_back(c);
    f.spaces.push_back(subspace::basis(basis.select_columns(keep)));
  }
  return f;
}

// Post-conditions by direct rank computations.
void expect_valid_split(const Flag& f, const QMatrix& n, const FlagSplit& s, int iter) {
  const std::size_t d = f.dim;
  ASSERT_EQ(s.basis.cols(), d);
  EXPECT_EQ(rank(s.basis), d) << "iteration " << iter;
  for (int p = f.low - 1; p <= f.top() + 1; ++p) {
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < d; ++c)
      if (s.level[c] >= p) keep.push_back(c);
    QMatrix fp = f.at(p);
    EXPECT_EQ(keep.size(), fp.cols()) << "iteration " << iter << " level " << p;
    EXPECT_EQ(rank(QMatrix::hcat(fp, s.basis.select_columns(keep))), fp.cols()) << "iteration " << iter;
  }
  for (std::size_t c = 0; c < d; ++c) {
    QMatrix img = n * s.basis.select_columns({c});
    if (s.next[c] < 0) {
      EXPECT_TRUE(img.is_zero()) << "iteration " << iter;
    } else {
      auto t = static_cast<std::size_t>(s.next[c]);
      EXPECT_EQ(img, s.basis.select_columns({t})) << "iteration " << iter;
      EXPECT_EQ(s.level[t], s.level[c] - 1);
    }
  }
}

}  // namespace

// ---- subspaces -------------------------------------------------------------

TEST(Subspace, SumIntersectComplement) {
  QMatrix e = QMatrix::identity(3);
  QMatrix a = cols(e, {0, 1}), b = cols(e, {1, 2});
  EXPECT_EQ(subspace::dim(subspace::sum(a, b)), 3u);
  QMatrix i = subspace::intersect(a, b);
  ASSERT_EQ(subspace::dim(i), 1u);
  EXPECT_TRUE(subspace::equal(i, cols(e, {1})));
  QMatrix c = subspace::complement(a, cols(e, {1}));
  ASSERT_EQ(c.cols(), 1u);
  EXPECT_EQ(rank(QMatrix::hcat(c, cols(e, {1}))), 2u);
  EXPECT_EQ(subspace::dim(subspace::intersect(a, subspace::zero(3))), 0u);
}

TEST(Subspace, KernelWithinAndImage) {
  QMatrix n = qm({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  QMatrix all = QMatrix::identity(3);
  QMatrix k = subspace::kernel_within(n, all);
  EXPECT_TRUE(subspace::equal(k, cols(all, {2})));
  EXPECT_TRUE(subspace::equal(subspace::image(n, all), cols(all, {1, 2})));
}

// ---- strict splittings -----------------------------------------------------

TEST(StrictFlagSplit, ZeroEndomorphism) {
  QMatrix b = qm({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
  Flag f = make_flag(b, {2, 1, 1});
  QMatrix n(3, 3);
  FlagSplit s = strict_flag_split(f, n);
  expect_valid_split(f, n, s, 0);
  EXPECT_EQ(s.level, (std::vector<int>{1, 1, 2}));
  for (int t : s.next) EXPECT_EQ(t, -1);
}

TEST(StrictFlagSplit, TwoStepChain) {
  Flag f = make_flag(QMatrix::identity(2), {1, 0});
  QMatrix n = qm({{0, 0}, {1, 0}});  // e1 -> e2
  FlagSplit s = strict_flag_split(f, n);
  EXPECT_EQ(s.level, (std::vector<int>{0, 1}));
  EXPECT_EQ(s.basis.select_columns({1}), QMatrix::identity(2).select_columns({0}));
  EXPECT_EQ(s.basis.select_columns({0}), QMatrix::identity(2).select_columns({1}));
  EXPECT_EQ(s.next, (std::vector<int>{-1, 0}));
}

TEST(StrictFlagSplit, JordanBlockOfSizeThree) {
  Flag f = make_flag(QMatrix::identity(3), {2, 1, 0});
  QMatrix n = qm({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  FlagSplit s = strict_flag_split(f, n);
  expect_valid_split(f, n, s, 0);
  EXPECT_EQ(s.level, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(s.next, (std::vector<int>{-1, 0, 1}));
}

TEST(StrictFlagSplit, NonStrictInputIsRejected) {
  // N maps e1 (level 0) onto e2, which sits at level 1
  Flag f = make_flag(QMatrix::identity(2), {0, 1});
  QMatrix n = qm({{0, 0}, {1, 0}});
  try {
    strict_flag_split(f, n);
    FAIL() << "expected NotGoodLattice";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotGoodLattice);
  }
}

TEST(StrictFlagSplit, NonNilpotentIsRejected) {
  Flag f = make_flag(QMatrix::identity(2), {0, 0});
  EXPECT_THROW(strict_flag_split(f, QMatrix::identity(2)), Error);
}

// ---- flags from lattices ---------------------------------------------------

TEST(FiltrationFlags, IdentityLatticeIsFullUpToN) {
  EigenDecomposition ed = generalized_eigenspaces(QMatrix::diagonal({1, 1, q(1, 2)}));
  GBasis gb = groebner(columns_of(LMatrix::identity(3)), vdegree_order(ed));
  auto flags = filtration_flags(gb, ed, 1);
  ASSERT_EQ(flags.size(), 2u);
  for (const auto& f : flags) {
    EXPECT_EQ(f.at(1).cols(), f.dim);
    EXPECT_EQ(f.at(2).cols(), 0u);
  }
}

TEST(FiltrationFlags, ThetaColumnGivesTwoStepFlag) {
  EigenDecomposition ed = generalized_eigenspaces(QMatrix::diagonal({1, 1}));
  LMatrix M = LMatrix::identity(2);
  M(1, 1) = Laurent::theta();
  GBasis gb = groebner(columns_of(M), vdegree_order(ed));
  auto flags = filtration_flags(gb, ed, 1);
  ASSERT_EQ(flags.size(), 1u);
  EXPECT_EQ(flags[0].at(0).cols(), 2u);
  EXPECT_EQ(flags[0].at(1).cols(), 1u);
  EXPECT_EQ(flags[0].at(2).cols(), 0u);
}

TEST(OppositeBasis, RankOne) {
  EigenDecomposition ed = generalized_eigenspaces(QMatrix::diagonal({1}));
  GradedBasis g = opposite_basis(LMatrix::identity(1), ed, 1);
  EXPECT_EQ(g.U, QMatrix::identity(1));
  EXPECT_EQ(g.level, (std::vector<int>{1}));
}

TEST(OppositeBasis, DiagonalResidueGivesIdentity) {
  EigenDecomposition ed = generalized_eigenspaces(QMatrix::diagonal({q(4, 3), 1, 1, q(2, 3)}));
  LMatrix M = LMatrix::identity(4);
  GradedBasis g = opposite_basis(M, ed, 1);
  // one eigenvector per column, no nilpotent part
  for (int t : g.next) EXPECT_EQ(t, -1);
  EXPECT_EQ(rank(g.U), 4u);
  for (std::size_t c = 0; c < 4; ++c) {
    QMatrix col = g.U.select_columns({c});
    EXPECT_EQ(QMatrix::diagonal({q(4, 3), 1, 1, q(2, 3)}) * col, col * QMatrix::diagonal({g.alpha[c]}));
  }
}

// ---- properties ----------------------------------------------------------

TEST(HodgeProperty, StrictFlagSplitOnRandomStrictInputs) {
  std::mt19937 rng(51);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t d = 1 + rng() % 6;
    // Jordan chains with random head levels, in standard coordinates
    std::vector<int> level;
    QMatrix nstd(d, d);
    while (level.size() < d) {
      std::size_t len = 1 + rng() % (d - level.size());
      int head = static_cast<int>(rng() % 4);
      for (std::size_t i = 0; i < len; ++i) {
        if (i + 1 < len) nstd(level.size() + 1, level.size()) = 1;
        level.push_back(head - static_cast<int>(i));
      }
    }
    QMatrix g = gmtame::testing::random_invertible(rng, d);
    QMatrix n = g * nstd * inverse(g);
    Flag f = make_flag(g, level);
    FlagSplit s = strict_flag_split(f, n);
    expect_valid_split(f, n, s, iter);
    EXPECT_TRUE(check_split(f, n, s));
    std::vector<int> a = level, b = s.level;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
  }
}
