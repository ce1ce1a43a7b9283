#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "gmtame/hermite.hpp"
#include "gmtame/milnor.hpp"
#include "gmtame/modgroebner.hpp"
#include "gmtame/poly.hpp"

namespace gmtame {

// Enumerates x-monomials in increasing (total degree, degrevlex) order, so
// that index order is the module position order. Extending to a higher
// degree only appends indices.
class MonomialIndex {
 public:
  explicit MonomialIndex(std::size_t nvars = 0) : n_(nvars) {}

  void ensure_degree(int d) {
    while (max_deg_ < d) {
      ++max_deg_;
      std::vector<std::vector<int>> layer;
      std::vector<int> e(n_, 0);
      enumerate(0, max_deg_, e, layer);
      std::sort(layer.begin(), layer.end(), [](const auto& a, const auto& b) { return degrevlex_cmp(a, b) < 0; });
      degree_start_.push_back(monos_.size());
      for (auto& m : layer) {
        ids_.emplace(m, monos_.size());
        monos_.push_back(std::move(m));
      }
    }
  }
  int max_degree() const { return max_deg_; }
  std::size_t size() const { return monos_.size(); }
  std::size_t id(const std::vector<int>& e) const {
    auto it = ids_.find(e);
    if (it == ids_.end()) throw Error(ErrorKind::Internal, "monomial outside the indexed degree range");
    return it->second;
  }
  const std::vector<int>& exps(std::size_t id) const { return monos_.at(id); }
  int degree(std::size_t id) const {
    int d = 0;
    for (int v : monos_.at(id)) d += v;
    return d;
  }
  // [begin, end) of the indices of degree d
  std::pair<std::size_t, std::size_t> degree_range(int d) const {
    auto b = degree_start_.at(static_cast<std::size_t>(d));
    auto e = static_cast<std::size_t>(d) + 1 < degree_start_.size() ? degree_start_[static_cast<std::size_t>(d) + 1]
                                                                     : monos_.size();
    return {b, e};
  }

 private:
  void enumerate(std::size_t v, int left, std::vector<int>& e, std::vector<std::vector<int>>& out) {
    if (v + 1 == n_) {
      e[v] = left;
      out.push_back(e);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[v] = a;
      enumerate(v + 1, left - a, e, out);
    }
    e[v] = 0;
  }

  std::size_t n_;
  int max_deg_ = -1;
  std::vector<std::size_t> degree_start_;
  std::vector<std::vector<int>> monos_;
  std::map<std::vector<int>, std::size_t> ids_;
};

struct BrieskornCaps {
  int k_extra = 40;     // k <= k_init + k_extra
  int l_factor = 4;     // l <= l_factor * k
};

struct LatticeBasis {
  std::vector<Poly> phis;
  PMatrix A;  // over Q[theta]; t phi = phi A
  int k = 0, k0 = 0, l = 0;
  std::size_t rho = 0, gamma = 0;
};

// The relation module (d f - theta d)(Q[x, theta]_l^{n+1}) together with an
// incrementally maintained Groebner basis; l only grows, so one instance
// serves every probe of a run.
class BrieskornEngine {
 public:
  BrieskornEngine(Poly f, MilnorData milnor)
      : f_(std::move(f)), milnor_(std::move(milnor)), n_(f_.nvars()), index_(n_), gb_(ModuleOrder{}) {
    deg_f_ = f_.x_degree();
    for (std::size_t i = 0; i < n_; ++i) partials_.push_back(diff(f_, i));
  }

  const Poly& f() const { return f_; }
  const MilnorData& milnor() const { return milnor_; }
  int deg_f() const { return deg_f_; }
  int l() const { return l_; }
  const GBasis& gb() const { return gb_; }
  const MonomialIndex& index() const { return index_; }

  // Generator (d_i f) x^a - theta d_i(x^a).
  Poly relation_generator(const std::vector<int>& a, std::size_t i) const {
    XMonomial m{a, 0};
    Poly r = partials_[i] * Poly::term(n_, m, 1);
    if (a[i] > 0) {
      XMonomial d = m;
      d.e[i] -= 1;
      d.theta = 1;
      r.add_term(d, Rational(-a[i]));
    }
    return r;
  }

  // Add the generators with |alpha| <= l.
  void extend_to(int l) {
    index_.ensure_degree(std::max(0, l - 1 + deg_f_));
    while (l_ < l) {
      ++l_;
      auto [b, e] = index_.degree_range(l_);
      for (std::size_t id = b; id < e; ++id)
        for (std::size_t i = 0; i < n_; ++i) gb_.insert(to_vector(relation_generator(index_.exps(id), i)));
    }
  }

  ModuleVector to_vector(const Poly& p) const {
    std::map<std::size_t, Laurent> acc;
    for (const auto& [m, c] : p.terms()) acc[index_.id(m.e)].axpy(c, m.theta, Laurent(1));
    ModuleVector v;
    for (auto& [id, c] : acc) v.set(id, c);
    return v;
  }
  Poly to_poly(const ModuleVector& v) const {
    Poly p(n_);
    for (const auto& [id, c] : v.entries())
      for (int k = c.min_exp(); k <= c.max_exp(); ++k) p.add_term(XMonomial{index_.exps(id), k}, c.coeff(k));
    return p;
  }

  bool unit_pivot(std::size_t id) const { return gb_.has_pivot(id) && gb_.pivot_exp(id) == 0; }

  // Minimal k0 with every monomial of degree in (k0, k] a lead of the basis.
  int find_k0(int k) const {
    for (int d = k; d >= 0; --d) {
      auto [b, e] = index_.degree_range(d);
      for (std::size_t id = b; id < e; ++id)
        if (!unit_pivot(id)) return d;
    }
    return -1;
  }

  // Try one (k, l) probe of the approximation. On success returns the basis;
  // otherwise returns the name of the failing guard.
  enum class Guard { Ok, Torsion, RankLow, DegreeLow, NotMilnorBasis };
  Guard probe(int k, LatticeBasis& out) const {
    const std::size_t mu = milnor_.mu;
    int k0 = find_k0(k);
    // generators: positions of degree <= k0 without a unit pivot
    std::vector<std::size_t> S;
    std::vector<long> col_of(index_.size(), -1);
    std::size_t top = k0 < 0 ? 0 : index_.degree_range(k0).second;
    for (std::size_t id = 0; id < top; ++id)
      if (!unit_pivot(id)) {
        col_of[id] = static_cast<long>(S.size());
        S.push_back(id);
      }
    std::vector<ModuleVector> rels;
    for (std::size_t id : S)
      if (gb_.has_pivot(id)) rels.push_back(reduce_by_units(gb_.pivot(id), id));
    PMatrix pres(rels.size(), S.size());
    for (std::size_t r = 0; r < rels.size(); ++r)
      for (const auto& [id, c] : rels[r].entries()) {
        ensure(col_of[id] >= 0, "relation leaves the presentation range");
        pres(r, static_cast<std::size_t>(col_of[id])) = c.to_theta_poly();
      }
    SmithData sm = smith_normal_form(pres);
    out.k = k;
    out.k0 = k0;
    out.l = l_;
    out.rho = sm.rho;
    out.gamma = sm.gamma;
    if (sm.rho > mu || (sm.gamma > sm.rho && sm.rho == mu)) return Guard::Torsion;
    if (sm.rho < mu) return Guard::RankLow;
    if (k0 + deg_f_ > k) return Guard::DegreeLow;

    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < sm.diagonal.size(); ++j)
      if (sm.diagonal[j].is_zero()) free.push_back(j);
    std::vector<Poly> phis;
    for (std::size_t j : free) {
      ModuleVector v;
      for (std::size_t c = 0; c < S.size(); ++c)
        if (!sm.right_inv(j, c).is_zero()) v.set(S[c], Laurent::from_theta(sm.right_inv(j, c)));
      phis.push_back(to_poly(gb_.normal_form(v)));
    }
    if (!is_milnor_basis(phis, milnor_)) return Guard::NotMilnorBasis;

    auto coords = [&](const ModuleVector& nf) {
      std::vector<UPoly> row(S.size());
      for (const auto& [id, c] : nf.entries()) {
        ensure(id < col_of.size() && col_of[id] >= 0, "normal form outside the lattice range");
        row[static_cast<std::size_t>(col_of[id])] = c.to_theta_poly();
      }
      std::vector<UPoly> out_c;
      for (std::size_t j : free) {
        UPoly s;
        for (std::size_t c = 0; c < S.size(); ++c)
          if (!row[c].is_zero() && !sm.right(c, j).is_zero()) s += row[c] * sm.right(c, j);
        out_c.push_back(s);
      }
      return out_c;
    };
    PMatrix A(mu, mu);
    for (std::size_t j = 0; j < mu; ++j) {
      auto c = coords(gb_.normal_form(to_vector(t_action(f_, phis[j]))));
      for (std::size_t i = 0; i < mu; ++i) A(i, j) = c[i];
    }
    out.phis = std::move(phis);
    out.A = std::move(A);
    return Guard::Ok;
  }

  // t phi_j - (phi A)_j reduces to zero for every j.
  bool verify(const std::vector<Poly>& phis, const PMatrix& A) const {
    for (std::size_t j = 0; j < phis.size(); ++j) {
      Poly r = t_action(f_, phis[j]);
      for (std::size_t i = 0; i < phis.size(); ++i) {
        if (A(i, j).is_zero()) continue;
        Poly a(n_);
        for (int e = 0; e <= A(i, j).degree(); ++e) a.add_term(XMonomial{std::vector<int>(n_, 0), e}, A(i, j).coeff(e));
        r -= phis[i] * a;
      }
      if (r.x_degree() > index_.max_degree()) return false;
      if (!gb_.member(to_vector(r))) return false;
    }
    return true;
  }

 private:
  // Eliminate every entry below `lead` sitting on a unit pivot.
  ModuleVector reduce_by_units(ModuleVector v, std::size_t lead) const {
    for (std::size_t p = lead; p-- > 0;) {
      if (!unit_pivot(p)) continue;
      const Laurent* c = v.find(p);
      if (!c) continue;
      Laurent q = *c;
      v.add_multiple(-q, gb_.pivot(p));
    }
    return v;
  }

  Poly f_;
  MilnorData milnor_;
  std::size_t n_;
  int deg_f_ = 0;
  std::vector<Poly> partials_;
  MonomialIndex index_;
  GBasis gb_;
  int l_ = -1;
};

struct BrieskornStats {
  int probes = 0;
};

// Algorithm for a t-invariant lattice L_k in G_0 with basis phi and matrix A.
// k may be raised by the guards; on return out.k holds the final value.
inline LatticeBasis compute_lattice(BrieskornEngine& eng, int k, const BrieskornCaps& caps, int k_init,
                                    BrieskornStats* stats = nullptr) {
  int l = std::max(k, eng.l());
  for (;;) {
    ++l;
    if (k > k_init + caps.k_extra)
      throw Error(ErrorKind::IterationCapExceeded, "approximation degree k exceeded " + std::to_string(k_init + caps.k_extra));
    if (l > caps.l_factor * std::max(k, 1))
      throw Error(ErrorKind::IterationCapExceeded,
                  "relation degree l exceeded " + std::to_string(caps.l_factor * std::max(k, 1)) + " at k = " + std::to_string(k));
    eng.extend_to(l);
    LatticeBasis out;
    if (stats) ++stats->probes;
    switch (eng.probe(k, out)) {
      case BrieskornEngine::Guard::Ok:
        return out;
      case BrieskornEngine::Guard::Torsion:
        break;
      case BrieskornEngine::Guard::RankLow:
      case BrieskornEngine::Guard::DegreeLow:
      case BrieskornEngine::Guard::NotMilnorBasis:
        ++k;
        break;
    }
  }
}

inline std::vector<Poly> relation_generators(const Poly& f, int l) {
  std::vector<Poly> out;
  MonomialIndex idx(f.nvars());
  idx.ensure_degree(l);
  BrieskornEngine eng(f, MilnorData{});
  for (std::size_t id = 0; id < idx.size(); ++id)
    for (std::size_t i = 0; i < f.nvars(); ++i) out.push_back(eng.relation_generator(idx.exps(id), i));
  return out;
}

}  // namespace gmtame
