#pragma once

#include <string>
#include <utility>

#include "gmtame/hermite.hpp"
#include "gmtame/linalg.hpp"
#include "gmtame/modgroebner.hpp"

namespace gmtame {

// A Q[tau]-basis phi*U of V_alpha together with the matrix B of -tau d/dtau,
// i.e. -tau d/dtau (phi U) = phi U B, where B is polynomial in tau and the
// eigenvalues of B_0 lie in (alpha - 1, alpha].
struct VBasisData {
  LMatrix U;
  LMatrix B;
  Rational alpha;
  EigenDecomposition eigen;
  int saturation_steps = 0;
  int twist_rounds = 0;
};

struct VFiltCaps {
  int saturation = 200;
  int twists = 200;
};

// (tau A - tau d/dtau)(U), the coordinate action of -tau d/dtau, with A given
// over Q[theta]. In theta-coordinates -tau d/dtau = theta d/dtheta.
inline LMatrix minus_tau_dtau(const LMatrix& tauA, const LMatrix& U) { return tauA * U + theta_d_theta(U); }

// Smallest tau d/dtau-stable Q[tau]-lattice containing the span of phi.
inline std::pair<LMatrix, LMatrix> saturate(const PMatrix& A, const VFiltCaps& caps = {}, int* steps = nullptr) {
  const std::size_t mu = A.rows();
  LMatrix tauA = shift(theta_to_laurent(A), -1);
  LMatrix U = LMatrix::identity(mu);
  int k = 0;
  for (;;) {
    LMatrix next = lattice_basis_from_generators(LMatrix::hcat(U, minus_tau_dtau(tauA, U)));
    if (next == U) break;
    U = std::move(next);
    if (++k > caps.saturation)
      throw Error(ErrorKind::IterationCapExceeded, "saturation did not stabilize after " + std::to_string(caps.saturation) + " steps");
  }
  if (steps) *steps = k;
  LMatrix B = laurent_inverse(U) * minus_tau_dtau(tauA, U);
  for (std::size_t i = 0; i < mu; ++i)
    for (std::size_t j = 0; j < mu; ++j)
      ensure(B(i, j).is_tau_poly(), "saturated connection matrix is not polynomial in tau");
  return {U, B};
}

// Twist generalized eigenspaces of B_0 by tau^-1 until the spectrum of B_0
// fits into a half-open window of length one.
inline VBasisData window_normalize(LMatrix U, LMatrix B, const VFiltCaps& caps = {}) {
  const std::size_t mu = B.rows();
  VBasisData out;
  for (;;) {
    EigenDecomposition ed = generalized_eigenspaces(coeff_matrix(B, 0));
    const Rational top = ed.eigenvalues.front().first;
    std::size_t j = 0;
    while (j < ed.groups() && ed.eigenvalues[j].first > top - 1) ++j;
    if (j == ed.groups()) {
      out.U = std::move(U);
      out.B = std::move(B);
      out.alpha = top;
      out.eigen = std::move(ed);
      return out;
    }
    if (++out.twist_rounds > caps.twists)
      throw Error(ErrorKind::IterationCapExceeded, "eigenvalue window not reached after " + std::to_string(caps.twists) + " twists");
    LMatrix P = to_laurent(ed.transform);
    U = U * P;
    B = to_laurent(ed.inverse) * B * P;
    const std::size_t s = ed.offsets[j];
    for (std::size_t r = 0; r < mu; ++r) {
      for (std::size_t c = 0; c < mu; ++c) {
        if (r < s && c >= s) {
          if (B(r, c).coeff(0) != 0) throw Error(ErrorKind::Internal, "twisted block is not divisible by tau");
          B(r, c) = B(r, c).shifted(1);
        } else if (r >= s && c < s) {
          B(r, c) = B(r, c).shifted(-1);
        }
      }
      if (r >= s) B(r, r) += Laurent(1);
    }
    for (std::size_t r = 0; r < mu; ++r)
      for (std::size_t c = s; c < mu; ++c) U(r, c) = U(r, c).shifted(1);
  }
}

inline VBasisData vbasis(const PMatrix& A, const VFiltCaps& caps = {}) {
  int steps = 0;
  auto [U, B] = saturate(A, caps, &steps);
  VBasisData d = window_normalize(std::move(U), std::move(B), caps);
  d.saturation_steps = steps;
  return d;
}

// U B == (tau A - tau d/dtau)(U), the defining identity of the data.
inline bool check_operator_identity(const PMatrix& A, const LMatrix& U, const LMatrix& B) {
  return U * B == minus_tau_dtau(shift(theta_to_laurent(A), -1), U);
}

}  // namespace gmtame
