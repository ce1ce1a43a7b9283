#include <gtest/gtest.h>

#include <random>

#include "gmtame/spectrum.hpp"
#include "gmtame/vfilt.hpp"
#include "test_util.hpp"

using namespace gmtame;
using gmtame::testing::q;

namespace {

SpectrumData spec(std::vector<Rational> xs) { return SpectrumData::from_multiset(std::move(xs)); }

SpectrumData spectrum_of_system(const PMatrix& A) {
  VBasisData d = vbasis(A);
  return compute_spectrum(laurent_inverse(d.U), d.eigen);
}

}  // namespace

// ---- oracles -------------------------------------------------------------

TEST(SpectrumData, MultisetMeanAndSymmetry) {
  SpectrumData s = spec({q(3, 2), 1, q(1, 2), 1, 1});
  EXPECT_EQ(s.mu, 5u);
  EXPECT_EQ(s.mean, 1);
  ASSERT_EQ(s.values.size(), 3u);
  EXPECT_EQ(s.values[0], std::make_pair(q(1, 2), 1));
  EXPECT_EQ(s.values[1], std::make_pair(Rational(1), 3));
  EXPECT_TRUE(s.symmetric(1));
  EXPECT_FALSE(spec({1, 2}).symmetric(1));
  EXPECT_EQ(s.str(), "1/2: 1, 1: 3, 3/2: 1");
}

TEST(ComputeSpectrum, IdentityLatticeGivesTheEigenvalues) {
  EigenDecomposition ed = generalized_eigenspaces(QMatrix::diagonal({q(1, 2), 1, 1, q(3, 4)}));
  SpectrumData s = compute_spectrum(LMatrix::identity(4), ed);
  EXPECT_EQ(s, spec({q(1, 2), 1, 1, q(3, 4)}));
}

TEST(ComputeSpectrum, ThetaShiftRaisesByOne) {
  EigenDecomposition ed = generalized_eigenspaces(QMatrix::diagonal({q(1, 3), q(2, 3)}));
  LMatrix M = LMatrix::identity(2);
  M(1, 1) = Laurent::theta(2);
  EXPECT_EQ(compute_spectrum(M, ed), spec({q(1, 3), q(8, 3)}));
}

TEST(ComputeSpectrum, QuarticAffineSystem) {
  QMatrix a0 = QMatrix::from_rows({{q(-1, 2), 0, 0, 0, q(1, 4)},
                                   {0, -1, 0, 0, 0},
                                   {0, 0, -1, 0, 0},
                                   {0, 0, 0, -1, 0},
                                   {1, 0, 0, 0, q(-1, 2)}});
  PMatrix A = gmtame::testing::affine_system(a0, {q(1, 2), 1, 1, 1, q(3, 2)});
  EXPECT_EQ(spectrum_of_system(A), spec({q(1, 2), 1, 1, 1, q(3, 2)}));
}

TEST(ComputeSpectrum, FermatCubicWeights) {
  // weights 1/3 for both variables: alpha = (a+1)/3 + (b+1)/3 over 1, x, y, xy
  PMatrix A = gmtame::testing::affine_system(QMatrix(4, 4), {q(2, 3), 1, 1, q(4, 3)});
  EXPECT_EQ(spectrum_of_system(A), spec({q(2, 3), 1, 1, q(4, 3)}));
}

TEST(MeanValueTest, Cases) {
  EXPECT_TRUE(mean_value_test(spec({q(1, 2), 1, 1, 1, q(3, 2)}), 1));
  EXPECT_TRUE(mean_value_test(spec({q(1, 2), 1, q(3, 2), 2, q(5, 2)}), 2));
  EXPECT_FALSE(mean_value_test(spec({1, 2}), 1));
  EXPECT_THROW(mean_value_test(spec({q(1, 2), q(1, 2)}), 1), Error);
}

// ---- properties ----------------------------------------------------------

TEST(SpectrumProperty, InvariantUnderUnimodularBasisChange) {
  std::mt19937 rng(41);
  for (int iter = 0; iter < 250; ++iter) {
    std::size_t mu = 1 + rng() % 5;
    auto alphas = gmtame::testing::random_alphas(rng, mu);
    QMatrix b0 = QMatrix::diagonal(alphas);
    QMatrix g = gmtame::testing::random_invertible(rng, mu);
    EigenDecomposition ed = generalized_eigenspaces(g * b0 * inverse(g));
    LMatrix M = theta_to_laurent(gmtame::testing::random_unimodular(rng, mu, 1));
    for (std::size_t j = 0; j < mu; ++j)
      for (std::size_t i = 0; i < mu; ++i) M(i, j) = M(i, j).shifted(static_cast<int>(j % 3));
    LMatrix P = theta_to_laurent(gmtame::testing::random_unimodular(rng, mu, 2));
    SpectrumData s = compute_spectrum(M, ed);
    EXPECT_EQ(s.mu, mu);
    int sum = 0;
    for (const auto& [a, m] : s.values) sum += m;
    EXPECT_EQ(static_cast<std::size_t>(sum), mu);
    EXPECT_EQ(compute_spectrum(M * P, ed), s) << "iteration " << iter;
  }
}

TEST(SpectrumProperty, GaugeInvariantAndEqualToTheDiagonal) {
  std::mt19937 rng(42);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t mu = 1 + rng() % 4;
    auto alphas = gmtame::testing::random_alphas(rng, mu);
    PMatrix A = gmtame::testing::affine_system(QMatrix(mu, mu), alphas);
    PMatrix Ag = gmtame::testing::gauge(A, gmtame::testing::random_unimodular(rng, mu, 1));
    SpectrumData s = spectrum_of_system(Ag);
    EXPECT_EQ(s, spec(alphas)) << "iteration " << iter;
  }
}
