#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "gmtame/matrix.hpp"
#include "gmtame/upoly.hpp"

namespace gmtame {

struct RrefResult {
  QMatrix r;                         // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

inline RrefResult rref(QMatrix m) {
  RrefResult out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Rational inv = 1 / m(row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, c) == 0) continue;
      Rational s = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= s * m(row, j);
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.r = std::move(m);
  return out;
}

inline std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

// Columns form a basis of {v : m v = 0}.
inline QMatrix kernel(const QMatrix& m) {
  auto [r, piv] = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) free.push_back(c);
  QMatrix k(m.cols(), free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) k(piv[i], f) = -r(i, free[f]);
  }
  return k;
}

// Solution X of a X = b, if one exists.
inline std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "solve shape mismatch");
  auto [r, piv] = rref(QMatrix::hcat(a, b));
  QMatrix x(a.cols(), b.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(piv[i], j) = r(i, a.cols() + j);
  }
  return x;
}

inline QMatrix inverse(const QMatrix& m) {
  if (!m.square()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  auto x = solve(m, QMatrix::identity(m.rows()));
  if (!x || rank(m) != m.rows()) throw Error(ErrorKind::RankDeficient, "singular matrix");
  return *x;
}

inline QMatrix power(const QMatrix& m, unsigned k) {
  QMatrix r = QMatrix::identity(m.rows()), b = m;
  for (; k; k >>= 1) {
    if (k & 1) r = r * b;
    if (k > 1) b = b * b;
  }
  return r;
}

// det(xI - m) via reduction to upper Hessenberg form.
inline UPoly char_poly(const QMatrix& m) {
  if (!m.square()) throw Error(ErrorKind::DimensionMismatch, "char_poly of non-square matrix");
  const std::size_t n = m.rows();
  QMatrix h = m;
  for (std::size_t c = 1; c + 1 < n; ++c) {
    std::size_t i = c;
    while (i < n && h(i, c - 1) == 0) ++i;
    if (i == n) continue;
    if (i != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(i, j), h(c, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, c));
    }
    Rational t = h(c, c - 1);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (h(r, c - 1) == 0) continue;
      Rational u = h(r, c - 1) / t;
      for (std::size_t j = 0; j < n; ++j) h(r, j) -= u * h(c, j);
      for (std::size_t j = 0; j < n; ++j) h(j, c) += u * h(j, r);
    }
  }
  std::vector<UPoly> p(n + 1);
  p[0] = UPoly(1);
  for (std::size_t k = 1; k <= n; ++k) {
    p[k] = UPoly(std::vector<Rational>{Rational(-h(k - 1, k - 1)), Rational(1)}) * p[k - 1];
    Rational prod = 1;
    for (std::size_t i = k - 1; i >= 1; --i) {
      prod *= h(i, i - 1);
      if (prod == 0) break;
      p[k] -= Rational(prod * h(i - 1, k - 1)) * p[i - 1];
    }
  }
  return p[n];
}

// Rational eigenvalues with multiplicities, strictly decreasing.
inline std::vector<std::pair<Rational, int>> rational_eigenvalues(const QMatrix& m) {
  UPoly cp = char_poly(m);
  if (cp.degree() <= 0) return {};
  auto [roots, rest] = rational_roots(cp);
  if (rest.degree() > 0)
    throw Error(ErrorKind::IrrationalSpectrum, "characteristic polynomial has irreducible factor " + rest.str());
  return roots;
}

struct EigenDecomposition {
  std::vector<std::pair<Rational, int>> eigenvalues;  // strictly decreasing
  QMatrix transform;                                   // U0
  QMatrix inverse;                                     // U0^-1
  std::vector<QMatrix> blocks;                         // diagonal blocks of U0^-1 m U0
  std::vector<std::size_t> offsets;                    // first column of each group

  std::size_t groups() const { return eigenvalues.size(); }
  std::size_t group_of(std::size_t col) const {
    std::size_t g = 0;
    while (g + 1 < offsets.size() && offsets[g + 1] <= col) ++g;
    return g;
  }
};

inline EigenDecomposition generalized_eigenspaces(const QMatrix& m) {
  EigenDecomposition d;
  d.eigenvalues = rational_eigenvalues(m);
  const std::size_t n = m.rows();
  d.transform = QMatrix(n, 0);
  for (const auto& [a, mult] : d.eigenvalues) {
    QMatrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= a;
    QMatrix k = kernel(power(shifted, static_cast<unsigned>(mult)));
    ensure(k.cols() == static_cast<std::size_t>(mult), "generalized eigenspace dimension mismatch");
    d.offsets.push_back(d.transform.cols());
    d.transform = QMatrix::hcat(d.transform, k);
  }
  d.inverse = inverse(d.transform);
  QMatrix conj = d.inverse * m * d.transform;
  for (std::size_t g = 0; g < d.eigenvalues.size(); ++g) {
    std::size_t o = d.offsets[g], s = static_cast<std::size_t>(d.eigenvalues[g].second);
    d.blocks.push_back(conj.block(o, o, s, s));
  }
  return d;
}

// Jordan block sizes of a nilpotent matrix, decreasing.
inline std::vector<int> nilpotent_jordan(const QMatrix& n) {
  if (!n.square()) throw Error(ErrorKind::DimensionMismatch, "nilpotent_jordan of non-square matrix");
  const std::size_t d = n.rows();
  std::vector<std::size_t> ranks{d};
  QMatrix p = QMatrix::identity(d);
  while (ranks.back() > 0) {
    p = p * n;
    std::size_t r = rank(p);
    if (r == ranks.back()) throw Error(ErrorKind::NotNilpotent, "matrix is not nilpotent");
    ranks.push_back(r);
  }
  // at_least[k] = number of blocks of size >= k
  std::vector<int> parts;
  for (std::size_t k = ranks.size() - 1; k >= 1; --k) {
    std::size_t at_least = ranks[k - 1] - ranks[k];
    std::size_t bigger = k + 1 < ranks.size() ? ranks[k] - ranks[k + 1] : 0;
    for (std::size_t c = 0; c < at_least - bigger; ++c) parts.push_back(static_cast<int>(k));
  }
  return parts;
}

// Extend the independent columns of `part` to a basis of Q^n using unit vectors.
inline QMatrix complete_basis(const QMatrix& part) {
  QMatrix b = part;
  for (std::size_t i = 0; i < part.rows() && b.cols() < part.rows(); ++i) {
    QMatrix e(part.rows(), 1);
    e(i, 0) = 1;
    QMatrix t = QMatrix::hcat(b, e);
    if (rank(t) == t.cols()) b = std::move(t);
  }
  return b;
}

}  // namespace gmtame
