#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gmtame/brieskorn.hpp"
#include "gmtame/goodbasis.hpp"
#include "gmtame/hodge.hpp"
#include "gmtame/spectrum.hpp"
#include "gmtame/vfilt.hpp"

namespace gmtame {

enum class CheckLevel { Off, Fast, Full };

struct PipelineConfig {
  CheckLevel checks = CheckLevel::Fast;
  BrieskornCaps brieskorn;
  VFiltCaps vfilt;
  int k_start = 0;       // 0: start at deg f
  int k_max = 0;         // 0: no bound beyond the lattice caps
  int k_stride = 1;      // increment of k after a failed mean test
  int goodbasis_cap = 0; // 0: derived from the problem size
};

struct MonodromyClass {
  Rational alpha;  // class representative in [0, 1); eigenvalue exp(-2 pi i alpha)
  int mult = 0;
  std::vector<int> partition;

  friend bool operator==(const MonodromyClass&, const MonodromyClass&) = default;
};

struct MonodromyData {
  std::vector<MonodromyClass> classes;  // ascending alpha
  QMatrix log_matrix;                   // gr^V_1(A0) + A1
};

struct PipelineStats {
  int k = 0, k0 = 0, l = 0;
  int lattice_probes = 0;
  int mean_retries = 0;
  int saturation_steps = 0;
  int twist_rounds = 0;
  int corrections = 0;
};

struct PipelineResult {
  std::string f;
  std::vector<std::string> vars;
  int n = 0;
  std::size_t mu = 0;
  std::vector<Poly> phis;  // good basis of G_0, ascending V-degree
  QMatrix A0, A1;          // t phi = phi (A0 + theta A1)
  SpectrumData spectrum;
  MonodromyData monodromy;
  PipelineStats stats;
  bool spectrum_symmetric = false;
};

// Entries (i, j) of a0 with alphas[i] - alphas[j] == level; everything else 0.
inline QMatrix graded_part(const QMatrix& a0, const std::vector<Rational>& alphas, const Rational& level) {
  if (alphas.size() != a0.rows() || !a0.square()) throw Error(ErrorKind::DimensionMismatch, "graded_part shape mismatch");
  QMatrix g(a0.rows(), a0.cols());
  for (std::size_t i = 0; i < a0.rows(); ++i)
    for (std::size_t j = 0; j < a0.cols(); ++j)
      if (alphas[i] - alphas[j] == level) g(i, j) = a0(i, j);
  return g;
}

// Eigenvalue classes and Jordan partitions of the monodromy at infinity,
// read from a good basis: the class of alpha carries the nilpotent part
// gr^V_1(A0) restricted to the basis vectors with that fractional part.
inline MonodromyData monodromy(const QMatrix& a0, const QMatrix& a1) {
  const std::size_t mu = a0.rows();
  std::vector<Rational> alphas;
  for (std::size_t i = 0; i < mu; ++i) {
    for (std::size_t j = 0; j < mu; ++j)
      if (i != j && a1(i, j) != 0) throw Error(ErrorKind::Internal, "A1 is not diagonal");
    alphas.push_back(a1(i, i));
  }
  MonodromyData d;
  QMatrix gr = graded_part(a0, alphas, Rational(1));
  d.log_matrix = gr + a1;
  std::vector<Rational> reps;
  for (const auto& a : alphas) reps.push_back(frac(a));
  std::vector<Rational> classes = reps;
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  for (const auto& c : classes) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < mu; ++i)
      if (reps[i] == c) idx.push_back(i);
    MonodromyClass mc;
    mc.alpha = c;
    mc.mult = static_cast<int>(idx.size());
    mc.partition = nilpotent_jordan(gr.select(idx, idx));
    d.classes.push_back(std::move(mc));
  }
  return d;
}

namespace detail {

// Poly sum_i phi_i c_i for Laurent coefficients polynomial in theta.
inline Poly combine(const std::vector<Poly>& phis, const LMatrix& C, std::size_t col, std::size_t nvars) {
  Poly r(nvars);
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const Laurent& c = C(i, col);
    if (c.is_zero()) continue;
    for (int e = c.min_exp(); e <= c.max_exp(); ++e)
      if (c.coeff(e) != 0) {
        Poly t = phis[i].theta_shift(e);
        t *= c.coeff(e);
        r += t;
      }
  }
  return r;
}

}  // namespace detail

// State after the mean value test has certified the lattice as G_0.
struct SpectrumStage {
  LatticeBasis lat;
  VBasisData vb;
  LMatrix M;  // lattice basis in the coordinates of the V_alpha basis
  SpectrumData spectrum;
  PipelineStats stats;
};

inline SpectrumStage spectrum_stage(BrieskornEngine& eng, int n, const PipelineConfig& cfg) {
  const Poly& f = eng.f();
  const int k_init = cfg.k_start > 0 ? cfg.k_start : std::max(1, f.x_degree());
  int k = k_init;
  BrieskornCaps caps = cfg.brieskorn;
  if (cfg.k_max > 0) caps.k_extra = std::max(0, cfg.k_max - k_init);
  SpectrumStage st;
  for (;;) {
    BrieskornStats bs;
    st.lat = compute_lattice(eng, k, caps, k_init, &bs);
    st.stats.lattice_probes += bs.probes;
    st.vb = vbasis(st.lat.A, cfg.vfilt);
    if (cfg.checks != CheckLevel::Off)
      ensure(check_operator_identity(st.lat.A, st.vb.U, st.vb.B),
             "connection matrix identity U B = (tau A - tau d/dtau) U fails");
    st.M = laurent_inverse(st.vb.U);
    st.spectrum = compute_spectrum(st.M, st.vb.eigen);
    if (mean_value_test(st.spectrum, n)) break;
    ++st.stats.mean_retries;
    k = st.lat.k + std::max(1, cfg.k_stride);
  }
  st.stats.k = st.lat.k;
  st.stats.k0 = st.lat.k0;
  st.stats.l = st.lat.l;
  st.stats.saturation_steps = st.vb.saturation_steps;
  st.stats.twist_rounds = st.vb.twist_rounds;
  return st;
}

// Spectrum of f only, skipping the good basis stages.
inline SpectrumStage spectrum_of(const Poly& f, const PipelineConfig& cfg = {}) {
  BrieskornEngine eng(f, milnor_data(f));
  return spectrum_stage(eng, static_cast<int>(f.nvars()) - 1, cfg);
}

// Good basis of the lattice spanned by phi with t phi = phi A, where
// (vb, M) come from vbasis(A) and M = U^-1. The good basis is phi C.
struct SystemGoodBasis {
  LMatrix C;
  QMatrix A0, A1;
  int corrections = 0;
};

inline SystemGoodBasis good_basis_of_system(const PMatrix& A, const VBasisData& vb, const LMatrix& M, int n,
                                            const PipelineConfig& cfg = {}) {
  GradedBasis gr = opposite_basis(M, vb.eigen, n);
  LMatrix U4 = to_laurent(gr.U), U4inv = to_laurent(inverse(gr.U));
  LMatrix B4 = U4inv * vb.B * U4;
  LMatrix M4 = U4inv * M;
  GradedCoordinates coords{gr.group, gr.alpha, gr.level};
  GoodBasisResult gb = good_basis(B4, M4, coords, n, cfg.goodbasis_cap);

  SystemGoodBasis out;
  out.corrections = gb.corrections;
  out.C = vb.U * U4 * gb.M;
  ensure(min_exp(out.C) >= 0, "good basis is not a polynomial combination of the lattice basis");
  out.A0 = gb.A0;
  out.A1 = QMatrix::diagonal(gb.a1);
  if (cfg.checks != CheckLevel::Off) {
    // t (phi C) = phi (A C + theta^2 d/dtheta C) must equal (phi C)(A0 + theta A1)
    LMatrix Al = theta_to_laurent(A);
    LMatrix lhs = Al * out.C + shift(theta_d_theta(out.C), 1);
    LMatrix rhs = out.C * (to_laurent(out.A0) + shift(to_laurent(out.A1), 1));
    ensure(lhs == rhs, "good basis matrix does not represent t");
  }
  return out;
}

// Good basis, spectrum and monodromy at infinity of a tame polynomial f.
inline PipelineResult run(const Poly& f, const std::vector<std::string>& vars, const PipelineConfig& cfg = {}) {
  PipelineResult res;
  res.vars = vars;
  res.f = f.str(vars);
  res.n = static_cast<int>(f.nvars()) - 1;
  MilnorData milnor = milnor_data(f);
  res.mu = milnor.mu;
  BrieskornEngine eng(f, milnor);
  SpectrumStage st = spectrum_stage(eng, res.n, cfg);
  res.spectrum = st.spectrum;
  res.stats = st.stats;
  SystemGoodBasis sg = good_basis_of_system(st.lat.A, st.vb, st.M, res.n, cfg);
  res.stats.corrections = sg.corrections;
  res.A0 = sg.A0;
  res.A1 = sg.A1;
  const std::size_t mu = res.mu;

  std::vector<Rational> diag;
  for (std::size_t i = 0; i < mu; ++i) diag.push_back(res.A1(i, i));
  std::sort(diag.begin(), diag.end());
  ensure(diag == res.spectrum.multiset(), "diagonal of A1 differs from the spectrum");

  for (std::size_t j = 0; j < mu; ++j) {
    Poly p = detail::combine(st.lat.phis, sg.C, j, f.nvars());
    res.phis.push_back(eng.to_poly(eng.gb().normal_form(eng.to_vector(p))));
  }
  if (cfg.checks == CheckLevel::Full) {
    PMatrix A(mu, mu);
    for (std::size_t i = 0; i < mu; ++i)
      for (std::size_t j = 0; j < mu; ++j) {
        UPoly e;
        if (res.A0(i, j) != 0) e += UPoly::monomial(res.A0(i, j), 0);
        if (res.A1(i, j) != 0) e += UPoly::monomial(res.A1(i, j), 1);
        A(i, j) = e;
      }
    ensure(eng.verify(res.phis, A), "t-action on the good basis does not match A0 + theta A1");
    ensure(is_milnor_basis(res.phis, milnor), "good basis does not reduce to a basis of the Milnor algebra");
  }

  res.monodromy = monodromy(res.A0, res.A1);
  res.spectrum_symmetric = res.spectrum.symmetric(res.n);
  return res;
}

}  // namespace gmtame
