#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "gmtame/brieskorn.hpp"
#include "gmtame/milnor.hpp"
#include "gmtame/modgroebner.hpp"
#include "test_util.hpp"

using namespace gmtame;
using gmtame::testing::q;

namespace {

const std::vector<std::string> XY{"x", "y"};

ModuleVector vec(std::vector<std::pair<std::size_t, Laurent>> entries) {
  ModuleVector v;
  for (auto& [p, c] : entries) v.set(p, c);
  return v;
}

Laurent random_laurent(std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> c(-3, 3), len(0, hi - lo);
  Laurent r;
  int top = lo + len(rng);
  for (int e = lo; e <= top; ++e) r.axpy(Rational(c(rng)), e, Laurent(1));
  return r;
}

ModuleVector random_vector(std::mt19937& rng, std::size_t dim, int lo, int hi) {
  ModuleVector v;
  std::bernoulli_distribution keep(0.6);
  for (std::size_t p = 0; p < dim; ++p)
    if (keep(rng)) v.set(p, random_laurent(rng, lo, hi));
  return v;
}

ModuleOrder random_order(std::mt19937& rng, std::size_t dim) {
  ModuleOrder o;
  o.kind = std::bernoulli_distribution(0.5)(rng) ? ModuleOrder::POT : ModuleOrder::TOP;
  o.rank.resize(dim);
  std::iota(o.rank.begin(), o.rank.end(), 0);
  std::shuffle(o.rank.begin(), o.rank.end(), rng);
  return o;
}

}  // namespace

// ---- oracles -------------------------------------------------------------

TEST(GBasis, SingleGeneratorIsMadeMonic) {
  GBasis gb = groebner({vec({{0, Laurent(3)}, {1, Laurent::theta(2) * Rational(6)}})}, ModuleOrder{});
  ASSERT_EQ(gb.size(), 1u);
  ASSERT_TRUE(gb.has_pivot(1));
  EXPECT_EQ(gb.pivot_exp(1), 2);
  EXPECT_EQ(gb.pivot(1), vec({{0, Laurent(q(1, 2))}, {1, Laurent::theta(2)}}));
}

TEST(GBasis, ThetaShiftedPairSplits) {
  ModuleOrder top{ModuleOrder::TOP, {}};
  GBasis gb = groebner({vec({{0, Laurent::theta()}, {1, Laurent(1)}}), vec({{1, Laurent(1)}})}, top);
  EXPECT_EQ(gb.size(), 2u);
  EXPECT_TRUE(gb.member(vec({{0, Laurent::theta()}})));
  EXPECT_TRUE(gb.member(vec({{1, Laurent(1)}})));
  EXPECT_FALSE(gb.member(vec({{0, Laurent(1)}})));
}

TEST(GBasis, NormalFormOfGeneratorAndZero) {
  ModuleVector g = vec({{0, Laurent(1) + Laurent::theta()}, {2, Laurent::theta(3)}});
  GBasis gb = groebner({g}, ModuleOrder{});
  EXPECT_TRUE(gb.normal_form(g).is_zero());
  EXPECT_TRUE(gb.normal_form(ModuleVector()).is_zero());
}

TEST(GBasis, MembershipIsClosedUnderTheta) {
  ModuleVector g = vec({{0, Laurent(2)}, {1, Laurent::theta() - Laurent(1)}});
  GBasis gb = groebner({g}, ModuleOrder{});
  EXPECT_TRUE(gb.member(g));
  EXPECT_TRUE(gb.member(g.shifted(1)));
  EXPECT_TRUE(gb.member(g.shifted(4)));
}

TEST(GBasis, UnitVectorOutsideProperSubmodule) {
  GBasis gb = groebner({vec({{0, Laurent::theta()}})}, ModuleOrder{});
  EXPECT_FALSE(gb.member(vec({{0, Laurent(1)}})));
  EXPECT_FALSE(gb.member(vec({{1, Laurent(1)}})));
}

TEST(GBasis, QuotientsReconstructInput) {
  ModuleVector a = vec({{0, Laurent(1)}, {1, Laurent::theta()}});
  ModuleVector b = vec({{0, Laurent::theta(2)}});
  GBasis gb = groebner({a, b}, ModuleOrder{});
  ModuleVector v = vec({{0, Laurent::theta(3) + Laurent(5)}, {1, Laurent::theta(2)}});
  std::vector<Laurent> quo;
  ModuleVector r = gb.normal_form(v, &quo);
  ModuleVector back = r;
  for (std::size_t p = 0; p < quo.size(); ++p)
    if (!quo[p].is_zero()) back.add_multiple(quo[p], gb.pivot(p));
  EXPECT_EQ(back, v);
}

TEST(BrieskornRelations, QuadraticReducesToTheta) {
  Poly f = parse_poly("x^2+y^2", XY);
  BrieskornEngine eng(f, milnor_data(f));
  eng.extend_to(1);
  Poly nf = eng.to_poly(eng.gb().normal_form(eng.to_vector(f)));
  EXPECT_EQ(nf, parse_poly("theta", XY));
}

TEST(LatticeBasis, DuplicatedIdentityColumns) {
  LMatrix i2 = to_laurent(QMatrix::identity(2));
  EXPECT_EQ(lattice_basis_from_generators(LMatrix::hcat(i2, i2)), i2);
}

TEST(LatticeBasis, TauMultipleIsRedundant) {
  LMatrix g(2, 3);
  g(0, 0) = Laurent(1);
  g(0, 1) = Laurent::tau();
  g(1, 2) = Laurent(1);
  EXPECT_EQ(lattice_basis_from_generators(g), to_laurent(QMatrix::identity(2)));
}

TEST(LatticeBasis, RankDeficientIsRejected) {
  LMatrix g(2, 2);
  g(0, 0) = Laurent(1);
  g(0, 1) = Laurent::theta();
  EXPECT_THROW(lattice_basis_from_generators(g), Error);
}

TEST(LatticeBasis, TauSpanMembership) {
  LMatrix b = to_laurent(QMatrix::identity(2));
  EXPECT_TRUE(tau_span_contains(b, {Laurent::tau(3), Laurent(2)}));
  EXPECT_FALSE(tau_span_contains(b, {Laurent::theta(), Laurent(0)}));
}

// ---- properties ----------------------------------------------------------

TEST(ModGroebnerProperty, DistinctMonicLeadsAndGeneratorsReduceToZero) {
  std::mt19937 rng(11);
  for (int iter = 0; iter < 250; ++iter) {
    std::size_t dim = 1 + rng() % 4;
    ModuleOrder o = random_order(rng, dim);
    std::vector<ModuleVector> gens;
    for (std::size_t i = 0, m = 1 + rng() % 5; i < m; ++i) gens.push_back(random_vector(rng, dim, -1, 2));
    GBasis gb = groebner(gens, o);
    std::vector<std::size_t> seen;
    for (const auto& e : gb.elements()) {
      ModuleTerm t = o.lead(e);
      EXPECT_EQ(t.coeff, 1);
      EXPECT_EQ(std::count(seen.begin(), seen.end(), t.pos), 0);
      seen.push_back(t.pos);
    }
    // elements with distinct lead positions have no S-pairs; the generators
    // and every pairwise combination must reduce to zero
    for (const auto& g : gens) EXPECT_TRUE(gb.member(g)) << "iteration " << iter;
    auto el = gb.elements();
    for (std::size_t a = 0; a < el.size(); ++a)
      for (std::size_t b = 0; b < el.size(); ++b) {
        ModuleVector s = el[a].shifted(1);
        s.axpy(Rational(-2), 0, el[b]);
        EXPECT_TRUE(gb.member(s));
      }
  }
}

TEST(ModGroebnerProperty, NormalFormIsIdempotentReducedAndSpanPreserving) {
  std::mt19937 rng(12);
  for (int iter = 0; iter < 250; ++iter) {
    std::size_t dim = 1 + rng() % 4;
    ModuleOrder o = random_order(rng, dim);
    std::vector<ModuleVector> gens;
    for (std::size_t i = 0, m = 1 + rng() % 4; i < m; ++i) gens.push_back(random_vector(rng, dim, 0, 2));
    GBasis gb = groebner(gens, o);
    ModuleVector v = random_vector(rng, dim, 0, 4);
    std::vector<Laurent> quo;
    ModuleVector r = gb.normal_form(v, &quo);
    EXPECT_EQ(gb.normal_form(r), r);
    EXPECT_TRUE(gb.is_reduced(r));
    ModuleVector back = r;
    for (std::size_t p = 0; p < quo.size(); ++p)
      if (!quo[p].is_zero()) back.add_multiple(quo[p], gb.pivot(p));
    EXPECT_EQ(back, v);
    EXPECT_TRUE(gb.member(v - r));
  }
}

TEST(ModGroebnerProperty, RandomCombinationsAreMembers) {
  std::mt19937 rng(13);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t dim = 2 + rng() % 3;
    ModuleOrder o = random_order(rng, dim);
    std::vector<ModuleVector> gens;
    for (std::size_t i = 0; i < 3; ++i) gens.push_back(random_vector(rng, dim, 0, 2));
    GBasis gb = groebner(gens, o);
    ModuleVector c;
    for (const auto& g : gens) c.add_multiple(random_laurent(rng, 0, 2), g);
    EXPECT_TRUE(gb.member(c));
  }
}

TEST(ModGroebnerProperty, BuchbergerSPairsReduceToZero) {
  std::mt19937 rng(14);
  std::uniform_int_distribution<int> coef(-3, 3), ex(0, 3), nterms(1, 4);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<XPoly> in;
    for (int g = 0; g < 2 + iter % 2; ++g) {
      XPoly p;
      for (int t = nterms(rng); t > 0; --t) {
        int c = coef(rng);
        if (c != 0) p[{ex(rng), ex(rng)}] += Rational(c);
      }
      for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
      if (!p.empty()) in.push_back(p);
    }
    auto g = buchberger(in);
    for (const auto& p : in) EXPECT_TRUE(reduce_xpoly(p, g).empty());
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_EQ(g[i].begin()->second, 1);
      for (std::size_t j = i + 1; j < g.size(); ++j) {
        const auto &li = g[i].begin()->first, &lj = g[j].begin()->first;
        auto l = detail::lcm(li, lj);
        XPoly s;
        detail::sub_mul(s, -1, detail::sub(l, li), g[i]);
        detail::sub_mul(s, 1, detail::sub(l, lj), g[j]);
        EXPECT_TRUE(reduce_xpoly(s, g).empty()) << "iteration " << iter;
      }
    }
  }
}

TEST(ModGroebnerProperty, LatticeBasisIsCanonicalForTheTauSpan) {
  std::mt19937 rng(15);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t mu = 1 + rng() % 3;
    LMatrix base = shift(theta_to_laurent(gmtame::testing::random_unimodular(rng, mu, 1)), static_cast<int>(rng() % 3));
    LMatrix extra(mu, mu);
    // extra columns: tau-polynomial combinations of the base columns
    PMatrix comb = gmtame::testing::random_pmatrix(rng, mu, mu, 1);
    extra = base * tau_to_laurent(comb);
    LMatrix a = lattice_basis_from_generators(base);
    LMatrix b = lattice_basis_from_generators(LMatrix::hcat(extra, base));
    EXPECT_EQ(a, b);
  }
}
