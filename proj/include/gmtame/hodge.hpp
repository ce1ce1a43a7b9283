#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gmtame/linalg.hpp"
#include "gmtame/modgroebner.hpp"
#include "gmtame/spectrum.hpp"

namespace gmtame {

// Column-span arithmetic on subspaces of Q^d. A subspace is a QMatrix whose
// columns form a basis; the zero space has no columns.
namespace subspace {

// Leftmost maximal independent subset of the columns.
inline QMatrix basis(const QMatrix& a) { return a.select_columns(rref(a).pivots); }
inline QMatrix zero(std::size_t d) { return QMatrix(d, 0); }
inline std::size_t dim(const QMatrix& a) { return a.cols(); }
inline QMatrix sum(const QMatrix& a, const QMatrix& b) { return basis(QMatrix::hcat(a, b)); }
inline QMatrix intersect(const QMatrix& a, const QMatrix& b) {
  if (a.cols() == 0 || b.cols() == 0) return zero(a.rows());
  QMatrix k = kernel(QMatrix::hcat(a, -b));
  return basis(a * k.block(0, 0, a.cols(), k.cols()));
}
inline QMatrix image(const QMatrix& n, const QMatrix& a) { return basis(n * a); }
// a ∩ ker n
inline QMatrix kernel_within(const QMatrix& n, const QMatrix& a) {
  if (a.cols() == 0) return a;
  return basis(a * kernel(n * a));
}
inline bool contains(const QMatrix& a, const QMatrix& v) { return rank(QMatrix::hcat(a, v)) == a.cols(); }
inline bool equal(const QMatrix& a, const QMatrix& b) {
  return a.cols() == b.cols() && contains(a, b) && contains(b, a);
}
// Columns of h, chosen greedily from the left, completing x to a basis of x + h.
inline QMatrix complement(const QMatrix& h, const QMatrix& x) {
  auto piv = rref(QMatrix::hcat(x, h)).pivots;
  std::vector<std::size_t> keep;
  for (auto c : piv)
    if (c >= x.cols()) keep.push_back(c - x.cols());
  return h.select_columns(keep);
}

}  // namespace subspace

// Decreasing filtration F^p of Q^d with F^p = Q^d for p <= low and
// F^p = 0 for p > low + spaces.size() - 1.
struct Flag {
  std::size_t dim = 0;
  int low = 0;
  std::vector<QMatrix> spaces;  // spaces[k] = F^{low + k}

  int top() const { return low + static_cast<int>(spaces.size()) - 1; }
  QMatrix at(int p) const {
    if (p <= low) return QMatrix::identity(dim);
    if (p > top()) return subspace::zero(dim);
    return spaces[static_cast<std::size_t>(p - low)];
  }
};

// Basis vectors with a level each; next[c] is the column N maps column c to,
// or -1 when N kills it.
struct FlagSplit {
  QMatrix basis;
  std::vector<int> level;
  std::vector<int> next;
};

inline bool check_split(const Flag& f, const QMatrix& n, const FlagSplit& s) {
  const std::size_t d = f.dim;
  if (s.basis.rows() != d || s.basis.cols() != d || rank(s.basis) != d) return false;
  for (int p = f.low; p <= f.top() + 1; ++p) {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < d; ++c)
      if (s.level[c] >= p) cols.push_back(c);
    if (!subspace::equal(subspace::basis(s.basis.select_columns(cols)), f.at(p))) return false;
  }
  for (std::size_t c = 0; c < d; ++c) {
    QMatrix img = n * s.basis.select_columns({c});
    if (s.next[c] < 0) {
      if (!img.is_zero()) return false;
    } else {
      auto t = static_cast<std::size_t>(s.next[c]);
      if (!(img == s.basis.select_columns({t})) || s.level[t] != s.level[c] - 1) return false;
    }
  }
  return true;
}

// Basis of Q^d adapted to F made of Jordan chains of N, each chain stepping
// down one level per application of N. Exists iff every power N^p is strict
// as a map F -> F[-p]; otherwise NotGoodLattice is raised.
inline FlagSplit strict_flag_split(const Flag& f, const QMatrix& n) {
  const std::size_t d = f.dim;
  std::vector<QMatrix> pw{QMatrix::identity(d)};
  while (!pw.back().is_zero()) {
    if (pw.size() > d + 1) throw Error(ErrorKind::NotNilpotent, "flag split needs a nilpotent endomorphism");
    pw.push_back(pw.back() * n);
  }
  const std::size_t K = pw.size() - 1;  // N^K = 0
  auto ker = [&](std::size_t h, const QMatrix& a) {
    return h >= K ? a : subspace::kernel_within(pw[h], a);
  };

  struct Chain {
    QMatrix head;
    int level;
    std::size_t length;
  };
  std::vector<Chain> chains;
  for (int p = f.top(); p >= f.low; --p) {
    QMatrix fp = f.at(p), fp1 = f.at(p + 1);
    for (std::size_t h = 1; h <= K; ++h) {
      QMatrix H = ker(h, fp);
      QMatrix X = subspace::sum(ker(h, fp1), ker(h - 1, fp));
      X = subspace::sum(X, subspace::image(n, ker(h + 1, fp1)));
      QMatrix heads = subspace::complement(H, X);
      for (std::size_t j = 0; j < heads.cols(); ++j) chains.push_back({heads.select_columns({j}), p, h});
    }
  }

  FlagSplit s;
  s.basis = QMatrix(d, 0);
  std::vector<std::pair<int, std::size_t>> order;  // (level, raw index)
  std::vector<int> raw_next;
  for (const auto& c : chains) {
    QMatrix v = c.head;
    for (std::size_t q = 0; q < c.length; ++q) {
      s.basis = QMatrix::hcat(s.basis, v);
      s.level.push_back(c.level - static_cast<int>(q));
      raw_next.push_back(q + 1 < c.length ? static_cast<int>(s.level.size()) : -1);
      v = n * v;
    }
  }
  if (s.basis.cols() != d) throw Error(ErrorKind::NotGoodLattice, "filtration is not strictly compatible with the nilpotent part");
  // Sort by level ascending, keeping chain order stable, and remap next.
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.level[a] < s.level[b]; });
  std::vector<int> where(d);
  for (std::size_t i = 0; i < d; ++i) where[idx[i]] = static_cast<int>(i);
  FlagSplit out;
  out.basis = s.basis.select_columns(idx);
  for (std::size_t i = 0; i < d; ++i) {
    out.level.push_back(s.level[idx[i]]);
    int r = raw_next[idx[i]];
    out.next.push_back(r < 0 ? -1 : where[static_cast<std::size_t>(r)]);
  }
  if (!check_split(f, n, out)) throw Error(ErrorKind::NotGoodLattice, "filtration is not strictly compatible with the nilpotent part");
  return out;
}

// Flags F^{g,p} on each generalized eigenspace of B_0, read off from the lead
// coefficients of a Groebner basis of the lattice in V-degree order: F^{g,p}
// is spanned by the leads of level q <= n - p.
inline std::vector<Flag> filtration_flags(const GBasis& gb, const EigenDecomposition& eigen, int n) {
  std::vector<Flag> flags;
  for (std::size_t g = 0; g < eigen.groups(); ++g) {
    const std::size_t off = eigen.offsets[g], dg = static_cast<std::size_t>(eigen.eigenvalues[g].second);
    std::vector<std::pair<int, QMatrix>> leads;
    for (std::size_t c = off; c < off + dg; ++c) {
      if (!gb.has_pivot(c)) throw Error(ErrorKind::Internal, "lattice basis misses a coordinate");
      int q = gb.pivot_exp(c);
      QMatrix v(dg, 1);
      for (std::size_t r = 0; r < dg; ++r) v(r, 0) = gb.pivot(c).at(off + r).coeff(q);
      leads.emplace_back(q, v);
    }
    int qmin = leads.front().first, qmax = qmin;
    for (const auto& [q, v] : leads) qmin = std::min(qmin, q), qmax = std::max(qmax, q);
    Flag f;
    f.dim = dg;
    f.low = n - qmax;
    for (int p = f.low; p <= n - qmin; ++p) {
      QMatrix s(dg, 0);
      for (const auto& [q, v] : leads)
        if (q <= n - p) s = QMatrix::hcat(s, v);
      f.spaces.push_back(subspace::basis(s));
    }
    flags.push_back(std::move(f));
  }
  return flags;
}

// A basis of Q^mu refining the generalized eigenspaces of B_0 by a splitting
// of the lattice filtration. Columns are grouped by eigenvalue group, in the
// order of the eigen decomposition, and by ascending level inside a group.
struct GradedBasis {
  QMatrix U;
  std::vector<std::size_t> group;  // eigen group of each column
  std::vector<Rational> alpha;     // its eigenvalue
  std::vector<int> level;          // filtration level p
  std::vector<int> next;           // column of N*u within U, or -1
  std::vector<Flag> flags;
};

inline GradedBasis opposite_basis(const LMatrix& M, const EigenDecomposition& eigen, int n) {
  const std::size_t mu = M.rows();
  LMatrix Me = to_laurent(eigen.inverse) * M;
  GBasis gb = groebner(columns_of(Me), vdegree_order(eigen));
  GradedBasis out;
  out.flags = filtration_flags(gb, eigen, n);
  QMatrix blocks(mu, mu);
  for (std::size_t g = 0; g < eigen.groups(); ++g) {
    const std::size_t off = eigen.offsets[g];
    const Rational& a = eigen.eigenvalues[g].first;
    QMatrix N = eigen.blocks[g];
    for (std::size_t i = 0; i < N.rows(); ++i) N(i, i) -= a;
    FlagSplit s = strict_flag_split(out.flags[g], N);
    blocks.set_block(off, off, s.basis);
    for (std::size_t c = 0; c < s.basis.cols(); ++c) {
      out.group.push_back(g);
      out.alpha.push_back(a);
      out.level.push_back(s.level[c]);
      out.next.push_back(s.next[c] < 0 ? -1 : static_cast<int>(off) + s.next[c]);
    }
  }
  out.U = eigen.transform * blocks;
  return out;
}

}  // namespace gmtame
