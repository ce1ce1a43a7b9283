#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "gmtame/linalg.hpp"
#include "gmtame/poly.hpp"

namespace gmtame {

// Polynomial in Q[x] with terms kept in decreasing degrevlex order.
struct DegrevlexGreater {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const { return degrevlex_cmp(a, b) > 0; }
};
using XPoly = std::map<std::vector<int>, Rational, DegrevlexGreater>;

namespace detail {

inline bool divides(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}
inline std::vector<int> lcm(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}
inline std::vector<int> sub(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
// p -= c * x^m * g
inline void sub_mul(XPoly& p, const Rational& c, const std::vector<int>& m, const XPoly& g) {
  for (const auto& [e, a] : g) {
    std::vector<int> k(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) k[i] = e[i] + m[i];
    auto [it, fresh] = p.emplace(std::move(k), -c * a);
    if (!fresh) {
      it->second -= c * a;
      if (it->second == 0) p.erase(it);
    }
  }
}
inline void make_monic(XPoly& p) {
  if (p.empty()) return;
  Rational inv = 1 / p.begin()->second;
  for (auto& [e, c] : p) c *= inv;
}

}  // namespace detail

inline XPoly to_xpoly(const Poly& p) {
  XPoly r;
  for (const auto& [m, c] : p.terms()) {
    if (m.theta != 0) throw Error(ErrorKind::Internal, "theta in a Jacobian-algebra computation");
    r[m.e] += c;
  }
  for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

// Full reduction of p modulo a list of monic polynomials.
inline XPoly reduce_xpoly(XPoly p, const std::vector<XPoly>& g) {
  XPoly rem;
  while (!p.empty()) {
    auto [e, c] = *p.begin();
    bool done = false;
    for (const auto& h : g) {
      const auto& le = h.begin()->first;
      if (detail::divides(le, e)) {
        detail::sub_mul(p, c, detail::sub(e, le), h);
        done = true;
        break;
      }
    }
    if (!done) {
      rem.emplace(e, c);
      p.erase(p.begin());
    }
  }
  return rem;
}

// Reduced Groebner basis (degrevlex) by Buchberger's algorithm with the
// coprime-lead criterion.
inline std::vector<XPoly> buchberger(std::vector<XPoly> in) {
  std::vector<XPoly> g;
  for (auto& p : in) {
    p = reduce_xpoly(p, g);
    if (p.empty()) continue;
    detail::make_monic(p);
    g.push_back(std::move(p));
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  while (!pairs.empty()) {
    // normal selection: smallest lcm first
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
      return degrevlex_cmp(detail::lcm(g[a.first].begin()->first, g[a.second].begin()->first),
                           detail::lcm(g[b.first].begin()->first, g[b.second].begin()->first)) < 0;
    });
    auto [i, j] = *best;
    pairs.erase(best);
    const auto &li = g[i].begin()->first, &lj = g[j].begin()->first;
    auto l = detail::lcm(li, lj);
    bool coprime = true;
    for (std::size_t v = 0; v < l.size(); ++v)
      if (li[v] > 0 && lj[v] > 0) coprime = false;
    if (coprime) continue;
    XPoly s;
    detail::sub_mul(s, -1, detail::sub(l, li), g[i]);
    detail::sub_mul(s, 1, detail::sub(l, lj), g[j]);
    s = reduce_xpoly(s, g);
    if (s.empty()) continue;
    detail::make_monic(s);
    g.push_back(std::move(s));
    for (std::size_t k = 0; k + 1 < g.size(); ++k) pairs.emplace_back(k, g.size() - 1);
  }
  // minimalize and interreduce
  std::vector<XPoly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto &a = g[j].begin()->first, &b = g[i].begin()->first;
      if (detail::divides(a, b) && (a != b || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    XPoly lead_term;
    lead_term.insert(*minimal[i].begin());
    XPoly tail = minimal[i];
    tail.erase(tail.begin());
    std::vector<XPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    XPoly red = reduce_xpoly(tail, others);
    red.insert(*lead_term.begin());
    minimal[i] = red;
  }
  std::sort(minimal.begin(), minimal.end(),
            [](const XPoly& a, const XPoly& b) { return degrevlex_cmp(a.begin()->first, b.begin()->first) < 0; });
  return minimal;
}

struct MilnorData {
  std::size_t nvars = 0;
  std::size_t mu = 0;
  std::vector<XPoly> jacobian_basis;
  std::vector<std::vector<int>> standard_monomials;  // increasing degrevlex

  XPoly reduce(const XPoly& p) const { return reduce_xpoly(p, jacobian_basis); }

  // Coordinates of p (theta-free) in the standard monomial basis.
  std::vector<Rational> coordinates(const Poly& p) const {
    XPoly r = reduce(to_xpoly(p));
    std::vector<Rational> v(mu, Rational(0));
    for (const auto& [e, c] : r) {
      auto it = std::find(standard_monomials.begin(), standard_monomials.end(), e);
      ensure(it != standard_monomials.end(), "normal form outside the standard monomials");
      v[static_cast<std::size_t>(it - standard_monomials.begin())] = c;
    }
    return v;
  }
};

inline MilnorData milnor_data(const Poly& f) {
  if (f.x_degree() <= 0) throw Error(ErrorKind::NotIsolated, "constant polynomial has no isolated critical points");
  MilnorData d;
  d.nvars = f.nvars();
  std::vector<XPoly> partials;
  for (std::size_t i = 0; i < d.nvars; ++i) partials.push_back(to_xpoly(diff(f, i)));
  d.jacobian_basis = buchberger(partials);
  if (d.jacobian_basis.size() == 1 && d.jacobian_basis[0].begin()->first == std::vector<int>(d.nvars, 0)) {
    d.mu = 0;  // no critical points at all
    throw Error(ErrorKind::NotIsolated, "the Jacobian ideal is the unit ideal (mu = 0)");
  }
  std::vector<int> bound(d.nvars, -1);
  for (const auto& g : d.jacobian_basis) {
    const auto& e = g.begin()->first;
    std::size_t nz = 0, var = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) ++nz, var = i;
    if (nz == 1 && (bound[var] < 0 || e[var] < bound[var])) bound[var] = e[var];
  }
  for (std::size_t i = 0; i < d.nvars; ++i)
    if (bound[i] < 0)
      throw Error(ErrorKind::NotIsolated, "the Jacobian ideal is not zero-dimensional (critical locus not finite)");
  std::vector<int> e(d.nvars, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == d.nvars) {
      for (const auto& g : d.jacobian_basis)
        if (detail::divides(g.begin()->first, e)) return;
      d.standard_monomials.push_back(e);
      return;
    }
    for (e[v] = 0; e[v] < bound[v]; ++e[v]) rec(v + 1);
    e[v] = 0;
  };
  rec(0);
  std::sort(d.standard_monomials.begin(), d.standard_monomials.end(),
            [](const auto& a, const auto& b) { return degrevlex_cmp(a, b) < 0; });
  d.mu = d.standard_monomials.size();
  return d;
}

// Whether the theta = 0 parts of phis form a basis of the Milnor algebra.
inline bool is_milnor_basis(const std::vector<Poly>& phis, const MilnorData& d) {
  if (phis.size() != d.mu) return false;
  QMatrix m(d.mu, d.mu);
  for (std::size_t j = 0; j < phis.size(); ++j) {
    auto c = d.coordinates(phis[j].eval_theta(0));
    for (std::size_t i = 0; i < d.mu; ++i) m(i, j) = c[i];
  }
  return rank(m) == d.mu;
}

}  // namespace gmtame
