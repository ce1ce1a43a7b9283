#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gmtame/matrix.hpp"

namespace gmtame {

namespace detail {

inline void swap_rows(PMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
inline void swap_cols(PMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row dst -= q * row src
inline void row_sub(PMatrix& m, std::size_t dst, const UPoly& q, std::size_t src) {
  if (q.is_zero()) return;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!m(src, j).is_zero()) m(dst, j) -= q * m(src, j);
}
inline void col_sub(PMatrix& m, std::size_t dst, const UPoly& q, std::size_t src) {
  if (q.is_zero()) return;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!m(i, src).is_zero()) m(i, dst) -= q * m(i, src);
}
inline void row_scale(PMatrix& m, std::size_t r, const Rational& c) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= c;
}
inline void col_scale(PMatrix& m, std::size_t c, const Rational& s) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, c) *= s;
}

}  // namespace detail

struct HermiteResult {
  PMatrix h;                         // upper echelon, monic pivots, reduced above pivots
  PMatrix transform;                 // unimodular, transform * input = h
  std::vector<std::size_t> pivots;   // pivot column of row i
};

// Row Hermite normal form over Q[x]. Canonical for the row module.
inline HermiteResult row_hermite(PMatrix m, bool want_transform = true) {
  using namespace detail;
  HermiteResult out;
  PMatrix t = want_transform ? PMatrix::identity(m.rows()) : PMatrix();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    for (;;) {
      std::size_t best = m.rows();
      for (std::size_t i = r; i < m.rows(); ++i)
        if (!m(i, c).is_zero() && (best == m.rows() || m(i, c).degree() < m(best, c).degree())) best = i;
      if (best == m.rows()) break;
      swap_rows(m, r, best);
      if (want_transform) swap_rows(t, r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m.rows(); ++i) {
        if (m(i, c).is_zero()) continue;
        UPoly q = m(i, c) / m(r, c);
        row_sub(m, i, q, r);
        if (want_transform) row_sub(t, i, q, r);
        if (!m(i, c).is_zero()) clean = false;
      }
      if (clean) break;
    }
    if (r >= m.rows() || m(r, c).is_zero()) continue;
    Rational inv = 1 / m(r, c).lead();
    row_scale(m, r, inv);
    if (want_transform) row_scale(t, r, inv);
    for (std::size_t i = 0; i < r; ++i) {
      if (m(i, c).is_zero()) continue;
      UPoly q = m(i, c) / m(r, c);
      row_sub(m, i, q, r);
      if (want_transform) row_sub(t, i, q, r);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.h = std::move(m);
  out.transform = std::move(t);
  return out;
}

// Canonical generating columns of the column module of m (zero columns dropped).
inline PMatrix column_hermite_basis(const PMatrix& m) {
  auto hr = row_hermite(m.transpose(), false);
  PMatrix b = hr.h.block(0, 0, hr.pivots.size(), hr.h.cols());
  return b.transpose();
}

struct SmithData {
  std::vector<UPoly> diagonal;  // monic invariant factors, zeros last
  PMatrix left, right, right_inv;
  std::size_t rho = 0;    // free summands of the cokernel
  std::size_t gamma = 0;  // minimal number of generators of the cokernel
};

// left * p * right = diag(diagonal); the cokernel Q[x]^cols / rowspan(p) is
// generated by the rows of right_inv, the j-th with annihilator diagonal[j].
inline SmithData smith_normal_form(const PMatrix& p) {
  using namespace detail;
  SmithData s;
  PMatrix m = p;
  const std::size_t R = m.rows(), C = m.cols();
  s.left = PMatrix::identity(R);
  s.right = PMatrix::identity(C);
  s.right_inv = PMatrix::identity(C);
  auto col_swap = [&](std::size_t a, std::size_t b) {
    swap_cols(m, a, b);
    swap_cols(s.right, a, b);
    swap_rows(s.right_inv, a, b);
  };
  auto col_op = [&](std::size_t dst, const UPoly& q, std::size_t src) {  // col dst -= q col src
    col_sub(m, dst, q, src);
    col_sub(s.right, dst, q, src);
    row_sub(s.right_inv, src, -q, dst);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    swap_rows(m, a, b);
    swap_rows(s.left, a, b);
  };
  auto row_op = [&](std::size_t dst, const UPoly& q, std::size_t src) {
    row_sub(m, dst, q, src);
    row_sub(s.left, dst, q, src);
  };

  std::size_t t = 0;
  for (; t < std::min(R, C); ++t) {
    for (;;) {
      // smallest-degree nonzero entry of the trailing block
      std::size_t bi = R, bj = C;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (!m(i, j).is_zero() && (bi == R || m(i, j).degree() < m(bi, bj).degree())) bi = i, bj = j;
      if (bi == R) break;
      row_swap(t, bi);
      col_swap(t, bj);
      bool done = true;
      for (std::size_t i = t + 1; i < R; ++i)
        if (!m(i, t).is_zero()) {
          row_op(i, m(i, t) / m(t, t), t);
          if (!m(i, t).is_zero()) done = false;
        }
      for (std::size_t j = t + 1; j < C; ++j)
        if (!m(t, j).is_zero()) {
          col_op(j, m(t, j) / m(t, t), t);
          if (!m(t, j).is_zero()) done = false;
        }
      if (!done) continue;
      // divisibility of the remaining block by the pivot
      std::size_t bad = R;
      for (std::size_t i = t + 1; i < R && bad == R; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (!m(i, j).is_zero() && !m(t, t).divides(m(i, j))) {
            bad = i;
            break;
          }
      if (bad == R) break;
      row_op(t, UPoly(-1), bad);
    }
    if (m(t, t).is_zero()) break;
    Rational inv = 1 / m(t, t).lead();
    row_scale(m, t, inv);
    row_scale(s.left, t, inv);
  }
  for (std::size_t j = 0; j < C; ++j) s.diagonal.push_back(j < R ? m(j, j) : UPoly());
  for (const auto& d : s.diagonal) {
    if (d.is_zero()) ++s.rho;
    else if (d.degree() > 0) ++s.gamma;
  }
  s.gamma += s.rho;
  return s;
}

// Inverse over the Laurent ring; throws RankDeficient if m is not invertible there.
inline LMatrix laurent_inverse(const LMatrix& m) {
  if (!m.square()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return m;
  int lo = min_exp(m);
  if (lo == INT_MAX) throw Error(ErrorKind::RankDeficient, "zero matrix is not invertible");
  PMatrix p = laurent_to_theta(shift(m, -lo));
  auto hr = row_hermite(p);
  if (hr.pivots.size() != n) throw Error(ErrorKind::RankDeficient, "matrix is singular");
  LMatrix h = theta_to_laurent(hr.h), t = theta_to_laurent(hr.transform);
  // back substitution: solve h x = t with h upper triangular, unit diagonal monomials
  LMatrix x(n, n);
  for (std::size_t ii = n; ii-- > 0;) {
    if (!h(ii, ii).is_monomial())
      throw Error(ErrorKind::RankDeficient, "determinant is not a unit in the Laurent ring");
    Laurent inv = h(ii, ii).inverse_monomial();
    for (std::size_t j = 0; j < n; ++j) {
      Laurent acc = t(ii, j);
      for (std::size_t k = ii + 1; k < n; ++k)
        if (!h(ii, k).is_zero() && !x(k, j).is_zero()) acc -= h(ii, k) * x(k, j);
      x(ii, j) = acc * inv;
    }
  }
  return shift(x, -lo);
}

}  // namespace gmtame
