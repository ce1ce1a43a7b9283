#include <gtest/gtest.h>

#include <random>

#include "gmtame/spectrum.hpp"
#include "gmtame/vfilt.hpp"
#include "test_util.hpp"

using namespace gmtame;
using gmtame::testing::q;

namespace {

QMatrix qm(std::vector<std::vector<Rational>> rows) { return QMatrix::from_rows(rows); }

QMatrix quartic_a0() {
  return qm({{q(-1, 2), 0, 0, 0, q(1, 4)},
             {0, -1, 0, 0, 0},
             {0, 0, -1, 0, 0},
             {0, 0, 0, -1, 0},
             {1, 0, 0, 0, q(-1, 2)}});
}
std::vector<Rational> quartic_a1() { return {q(1, 2), 1, 1, 1, q(3, 2)}; }

bool in_window(const VBasisData& d) {
  for (const auto& [a, m] : d.eigen.eigenvalues)
    if (!(a <= d.alpha && a > d.alpha - 1)) return false;
  return true;
}

// Every column of (tau A - tau d/dtau) U lies in the Q[tau]-span of U.
bool saturated(const PMatrix& A, const LMatrix& U) {
  LMatrix D = minus_tau_dtau(shift(theta_to_laurent(A), -1), U);
  return lattice_basis_from_generators(LMatrix::hcat(U, D)) == lattice_basis_from_generators(U);
}

}  // namespace

// ---- oracles -------------------------------------------------------------

TEST(Saturate, AffineSystemNeedsNoSteps) {
  PMatrix A = gmtame::testing::affine_system(quartic_a0(), quartic_a1());
  int steps = -1;
  auto [U, B] = saturate(A, {}, &steps);
  EXPECT_EQ(steps, 0);
  EXPECT_EQ(U, LMatrix::identity(5));
  EXPECT_EQ(B, to_laurent(QMatrix::diagonal(quartic_a1())) + shift(to_laurent(quartic_a0()), -1));
}

TEST(Saturate, RankOneQuadratic) {
  PMatrix A(1, 1);
  A(0, 0) = UPoly::monomial(1, 1);
  auto [U, B] = saturate(A);
  EXPECT_EQ(U, LMatrix::identity(1));
  EXPECT_EQ(B, LMatrix::identity(1));
  VBasisData d = window_normalize(U, B);
  EXPECT_EQ(d.alpha, 1);
  EXPECT_EQ(d.twist_rounds, 0);
}

TEST(Saturate, ThetaSquaredEntryForcesAStep) {
  PMatrix A(2, 2);
  A(0, 0) = UPoly::monomial(q(1, 2), 1);
  A(1, 1) = UPoly::monomial(q(3, 2), 1);
  A(0, 1) = UPoly::monomial(1, 2);
  int steps = 0;
  auto [U, B] = saturate(A, {}, &steps);
  EXPECT_GE(steps, 1);
  EXPECT_TRUE(saturated(A, U));
  EXPECT_TRUE(check_operator_identity(A, U, B));
}

TEST(Saturate, CapIsEnforced) {
  PMatrix A(2, 2);
  A(0, 0) = UPoly::monomial(q(1, 2), 1);
  A(1, 1) = UPoly::monomial(q(3, 2), 1);
  A(0, 1) = UPoly::monomial(1, 2);
  VFiltCaps caps;
  caps.saturation = 0;
  EXPECT_THROW(saturate(A, caps), Error);
}

TEST(WindowNormalize, QuarticLiftsTheSmallestEigenvalue) {
  PMatrix A = gmtame::testing::affine_system(quartic_a0(), quartic_a1());
  VBasisData d = vbasis(A);
  EXPECT_EQ(d.alpha, q(3, 2));
  EXPECT_GE(d.twist_rounds, 1);
  EXPECT_TRUE(in_window(d));
  ASSERT_EQ(d.eigen.groups(), 2u);
  EXPECT_EQ(d.eigen.eigenvalues[0], std::make_pair(q(3, 2), 2));
  EXPECT_EQ(d.eigen.eigenvalues[1], std::make_pair(Rational(1), 3));
  EXPECT_TRUE(check_operator_identity(A, d.U, d.B));
}

TEST(WindowNormalize, AlreadyInsideIsUnchanged) {
  LMatrix U = LMatrix::identity(3);
  LMatrix B = to_laurent(QMatrix::diagonal({q(1, 2), q(2, 3), 1}));
  VBasisData d = window_normalize(U, B);
  EXPECT_EQ(d.twist_rounds, 0);
  EXPECT_EQ(d.alpha, 1);
  EXPECT_EQ(d.U, U);
}

TEST(WindowNormalize, TwistCapIsEnforced) {
  LMatrix B = to_laurent(QMatrix::diagonal({5, 0}));
  VFiltCaps caps;
  caps.twists = 2;
  EXPECT_THROW(window_normalize(LMatrix::identity(2), B, caps), Error);
  VBasisData d = window_normalize(LMatrix::identity(2), B);
  EXPECT_EQ(d.twist_rounds, 5);
  EXPECT_TRUE(in_window(d));
}

// ---- properties ----------------------------------------------------------

TEST(VFiltProperty, GaugedSystemsSaturateIntoTheWindow) {
  std::mt19937 rng(31);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t mu = 1 + rng() % 4;
    auto alphas = gmtame::testing::random_alphas(rng, mu);
    QMatrix a0 = gmtame::testing::random_good_a0(rng, alphas);
    PMatrix A = gmtame::testing::gauge(gmtame::testing::affine_system(a0, alphas),
                                       gmtame::testing::random_unimodular(rng, mu, 1));
    VBasisData d = vbasis(A);
    EXPECT_TRUE(saturated(A, d.U)) << "iteration " << iter;
    EXPECT_TRUE(check_operator_identity(A, d.U, d.B));
    EXPECT_TRUE(in_window(d));
    const auto& ev = d.eigen.eigenvalues;
    EXPECT_LT(ev.front().first - ev.back().first, 1);
    for (std::size_t i = 0; i < mu; ++i)
      for (std::size_t j = 0; j < mu; ++j) EXPECT_TRUE(d.B(i, j).is_tau_poly());
  }
}
