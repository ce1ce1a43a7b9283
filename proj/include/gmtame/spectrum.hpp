#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "gmtame/linalg.hpp"
#include "gmtame/modgroebner.hpp"

namespace gmtame {

struct SpectrumData {
  std::vector<std::pair<Rational, int>> values;  // ascending, multiplicities > 0
  std::size_t mu = 0;
  Rational mean;

  static SpectrumData from_multiset(std::vector<Rational> xs) {
    SpectrumData s;
    std::sort(xs.begin(), xs.end());
    Rational sum = 0;
    for (const auto& x : xs) {
      if (s.values.empty() || s.values.back().first != x) s.values.emplace_back(x, 0);
      ++s.values.back().second;
      sum += x;
    }
    s.mu = xs.size();
    s.mean = s.mu ? Rational(sum / static_cast<long>(s.mu)) : Rational(0);
    return s;
  }
  std::vector<Rational> multiset() const {
    std::vector<Rational> r;
    for (const auto& [a, m] : values) r.insert(r.end(), static_cast<std::size_t>(m), a);
    return r;
  }
  // Symmetry about (n+1)/2; reported as a diagnostic only.
  bool symmetric(int n) const {
    auto xs = multiset();
    auto ys = xs;
    for (auto& y : ys) y = Rational(n + 1) - y;
    std::sort(ys.begin(), ys.end());
    return xs == ys;
  }
  std::string str() const {
    std::string s;
    for (const auto& [a, m] : values) s += (s.empty() ? "" : ", ") + a.get_str() + ": " + std::to_string(m);
    return s;
  }
  friend bool operator==(const SpectrumData& a, const SpectrumData& b) {
    return a.values == b.values && a.mu == b.mu && a.mean == b.mean;
  }
};

// Ranks for a term-over-position order: positions sorted by the given keys,
// which must be pairwise distinct.
template <class Key>
std::vector<int> ranks_from_keys(const std::vector<Key>& keys) {
  std::vector<std::size_t> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::vector<int> rank(keys.size());
  for (std::size_t r = 0; r < idx.size(); ++r) rank[idx[r]] = static_cast<int>(r);
  return rank;
}

// Group index of eigen-coordinate c translated into a V-degree rank: the
// eigenvalues are stored decreasingly, so larger alpha gets the larger rank.
inline int group_rank(const EigenDecomposition& ed, std::size_t c) {
  return static_cast<int>(ed.groups() - 1 - ed.group_of(c));
}

// Terms theta^k e_c ordered by the V-degree k + alpha(c), ties by column.
inline ModuleOrder vdegree_order(const EigenDecomposition& ed) {
  std::vector<std::pair<int, std::size_t>> keys;
  for (std::size_t c = 0; c < ed.transform.cols(); ++c) keys.emplace_back(group_rank(ed, c), c);
  return ModuleOrder{ModuleOrder::TOP, ranks_from_keys(keys)};
}

inline std::vector<ModuleVector> columns_of(const LMatrix& m) {
  std::vector<ModuleVector> v;
  for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(ModuleVector::from_column(m, j));
  return v;
}

inline LMatrix matrix_of(const std::vector<ModuleVector>& cols, std::size_t rows) {
  LMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [p, c] : cols[j].entries()) m(p, j) = c;
  return m;
}

// Spectrum of the lattice spanned by the columns of phi*M, where phi is a
// Q[tau]-basis of V_alpha with -tau d/dtau phi = phi B and eigen describes B_0.
inline SpectrumData compute_spectrum(const LMatrix& M, const EigenDecomposition& eigen) {
  const std::size_t mu = M.rows();
  LMatrix Me = to_laurent(eigen.inverse) * M;
  GBasis gb = groebner(columns_of(Me), vdegree_order(eigen));
  std::vector<Rational> xs;
  for (std::size_t pos : gb.lead_positions())
    xs.push_back(eigen.eigenvalues[eigen.group_of(pos)].first + gb.pivot_exp(pos));
  if (xs.size() != mu)
    throw Error(ErrorKind::Internal, "spectrum has " + std::to_string(xs.size()) + " members, expected " + std::to_string(mu));
  return SpectrumData::from_multiset(std::move(xs));
}

// True iff the mean equals (n+1)/2; a smaller mean is impossible for a
// sublattice of G_0 and signals an upstream failure.
inline bool mean_value_test(const SpectrumData& s, int n) {
  Rational target(n + 1, 2);
  target.canonicalize();
  if (s.mean < target)
    throw Error(ErrorKind::Internal, "spectral mean " + s.mean.get_str() + " below " + target.get_str());
  return s.mean == target;
}

}  // namespace gmtame
