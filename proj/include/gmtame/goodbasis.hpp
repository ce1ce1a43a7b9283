#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include "gmtame/modgroebner.hpp"
#include "gmtame/spectrum.hpp"

namespace gmtame {

// Coordinate data of a basis psi of V_alpha refined as produced by the
// opposite filtration step: column c has eigenvalue alpha[c], eigen group
// group[c] (0 = largest eigenvalue) and filtration level level[c].
struct GradedCoordinates {
  std::vector<std::size_t> group;
  std::vector<Rational> alpha;
  std::vector<int> level;
};

// One element of the lattice basis with lead theta^k at coordinate lead.
struct BlockElement {
  ModuleVector v;
  int k = 0;
  std::size_t lead = 0;
};

struct GoodBasisResult {
  LMatrix M;                 // columns: the good basis in psi-coordinates, ascending V-degree
  std::vector<Rational> a1;  // V-degree k + alpha of each column
  QMatrix A0;
  int corrections = 0;
};

namespace detail {

// theta (B - s + theta d/dtheta) v, with B polynomial in tau.
inline ModuleVector t_shifted(const LMatrix& B, const Rational& s, const ModuleVector& v) {
  const std::size_t mu = B.rows();
  ModuleVector out;
  for (const auto& [c, x] : v.entries()) {
    for (std::size_t r = 0; r < mu; ++r) {
      if (B(r, c).is_zero()) continue;
      ModuleVector t = ModuleVector::unit(r, B(r, c) * x);
      out.axpy(1, 1, t);
    }
    ModuleVector d = ModuleVector::unit(c, x.theta_d_theta());
    out.axpy(1, 1, d);
  }
  out.axpy(-s, 1, v);
  return out;
}

}  // namespace detail

// Turns a Q[theta]-basis of a good lattice into a good basis by single-term
// corrections of the expansion of t - theta(k + alpha) in that basis.
class GoodBasisBuilder {
 public:
  GoodBasisBuilder(LMatrix B, GradedCoordinates coords, int n) : B_(std::move(B)), co_(std::move(coords)), n_(n) {
    const std::size_t mu = B_.rows();
    std::size_t groups = 0;
    for (auto g : co_.group) groups = std::max(groups, g + 1);
    groups_ = groups;
    std::vector<std::tuple<int, int, std::size_t>> keys;
    for (std::size_t c = 0; c < mu; ++c) keys.emplace_back(rank_of_group(co_.group[c]), co_.level[c], c);
    order_ = ModuleOrder{ModuleOrder::TOP, ranks_from_keys(keys)};
  }

  int rank_of_group(std::size_t g) const { return static_cast<int>(groups_ - 1 - g); }

  // Minimal Groebner basis of the columns of M, one element per lead.
  void set_lattice(const LMatrix& M) {
    GBasis gb = groebner(columns_of(M), order_);
    elems_.clear();
    for (std::size_t pos : gb.lead_positions()) {
      BlockElement e{gb.pivot(pos), gb.pivot_exp(pos), pos};
      if (co_.level[pos] != n_ - e.k)
        throw Error(ErrorKind::NotGoodLattice, "lattice basis element has lead level " + std::to_string(co_.level[pos]) +
                                                   " at theta^" + std::to_string(e.k) + ", expected " +
                                                   std::to_string(n_ - e.k));
      elems_.push_back(std::move(e));
    }
    if (elems_.size() != B_.rows()) throw Error(ErrorKind::Internal, "lattice basis has the wrong rank");
  }

  // Expansion theta (B - k - alpha + theta d/dtheta) e = sum_e' q[e'](theta) e'
  // for every element e; entry [e][e'] holds q[e'].
  std::vector<std::vector<Laurent>> expansions() const {
    GBasis gb(order_);
    for (const auto& e : elems_) gb.insert(e.v);
    std::vector<std::vector<Laurent>> out;
    for (const auto& e : elems_) {
      ModuleVector t = detail::t_shifted(B_, alpha_of(e) + e.k, e.v);
      std::vector<Laurent> q;
      ModuleVector rest = gb.normal_form(std::move(t), &q);
      if (!rest.is_zero()) throw Error(ErrorKind::Internal, "t-action leaves the lattice during the good basis computation");
      std::vector<Laurent> row;
      for (const auto& f : elems_) {
        const Laurent& x = q[f.lead];
        if (!x.is_zero() && x.min_exp() < 0) throw Error(ErrorKind::Internal, "expansion is not polynomial in theta");
        row.push_back(x);
      }
      out.push_back(std::move(row));
    }
    return out;
  }

  // Runs the correction loop; returns the number of corrections applied.
  int run(int cap) {
    int steps = 0;
    for (;;) {
      auto ex = expansions();
      // key (s + l, group rank of j, n - l), ties broken by the largest block (k, i)
      bool found = false;
      std::tuple<int, int, int, int, int> best;
      int best_s = 0;
      std::size_t best_src = 0, best_dst = 0;
      for (std::size_t a = 0; a < elems_.size(); ++a) {
        for (std::size_t b = 0; b < elems_.size(); ++b) {
          const Laurent& q = ex[a][b];
          if (q.is_zero() || q.max_exp() < 1) continue;
          int s = q.max_exp();
          const auto& eb = elems_[b];
          const auto& ea = elems_[a];
          auto key = std::make_tuple(s + eb.k, rank_of_group(co_.group[eb.lead]), n_ - eb.k, ea.k,
                                     rank_of_group(co_.group[ea.lead]));
          if (!found || key > best) {
            found = true;
            best = key;
            best_s = s;
            best_src = b;
            best_dst = a;
          }
        }
      }
      if (!found) return steps;
      if (++steps > cap) throw Error(ErrorKind::IterationCapExceeded, "good basis correction exceeded " + std::to_string(cap) + " steps");
      apply(ex, best_dst, best_src, best_s);
    }
  }

  GoodBasisResult result() const {
    const std::size_t mu = elems_.size();
    std::vector<std::size_t> idx(mu);
    for (std::size_t i = 0; i < mu; ++i) idx[i] = i;
    auto vdeg = [&](std::size_t i) -> Rational { return alpha_of(elems_[i]) + elems_[i].k; };
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (vdeg(a) != vdeg(b)) return vdeg(a) < vdeg(b);
      return order_.rank_of(elems_[a].lead) < order_.rank_of(elems_[b].lead);
    });
    auto ex = expansions();
    GoodBasisResult r;
    r.M = LMatrix(mu, mu);
    r.A0 = QMatrix(mu, mu);
    for (std::size_t j = 0; j < mu; ++j) {
      const auto& e = elems_[idx[j]];
      for (const auto& [p, c] : e.v.entries()) r.M(p, j) = c;
      r.a1.push_back(vdeg(idx[j]));
      for (std::size_t i = 0; i < mu; ++i) {
        const Laurent& q = ex[idx[j]][idx[i]];
        if (!q.is_zero() && q.max_exp() > 0) throw Error(ErrorKind::Internal, "good basis loop ended with a theta term");
        r.A0(i, j) = q.coeff(0);
      }
    }
    return r;
  }

  const std::vector<BlockElement>& elements() const { return elems_; }

 private:
  const Rational& alpha_of(const BlockElement& e) const { return co_.alpha[e.lead]; }

  // M^{k,i} += c theta^{s-1} M^{l,j} A^{k,i}_{s,l,j} for the blocks of the
  // chosen destination and source elements.
  void apply(const std::vector<std::vector<Laurent>>& ex, std::size_t dst, std::size_t src, int s) {
    const auto k = elems_[dst].k, l = elems_[src].k;
    const auto gi = co_.group[elems_[dst].lead], gj = co_.group[elems_[src].lead];
    Rational denom = Rational(1 + k - s - l) + co_.alpha[elems_[dst].lead] - co_.alpha[elems_[src].lead];
    if (denom == 0) throw Error(ErrorKind::Internal, "zero denominator in a good basis correction");
    Rational c = 1 / denom;
    std::vector<ModuleVector> add(elems_.size());
    for (std::size_t a = 0; a < elems_.size(); ++a) {
      if (elems_[a].k != k || co_.group[elems_[a].lead] != gi) continue;
      for (std::size_t b = 0; b < elems_.size(); ++b) {
        if (elems_[b].k != l || co_.group[elems_[b].lead] != gj) continue;
        Rational x = ex[a][b].coeff(s);
        if (x != 0) add[a].axpy(c * x, s - 1, elems_[b].v);
      }
    }
    for (std::size_t a = 0; a < elems_.size(); ++a) elems_[a].v.axpy(1, 0, add[a]);
  }

  LMatrix B_;
  GradedCoordinates co_;
  int n_;
  std::size_t groups_ = 0;
  ModuleOrder order_;
  std::vector<BlockElement> elems_;
};

inline GoodBasisResult good_basis(const LMatrix& B, const LMatrix& M, const GradedCoordinates& coords, int n,
                                  int cap = 0) {
  GoodBasisBuilder gbb(B, coords, n);
  gbb.set_lattice(M);
  if (cap <= 0) {
    int lo = INT_MAX, hi = INT_MIN;
    for (const auto& e : gbb.elements()) lo = std::min(lo, e.k), hi = std::max(hi, e.k);
    int span = hi - lo + 2;
    cap = std::max(1000, 10 * static_cast<int>(B.rows()) * span * span);
  }
  int steps = gbb.run(cap);
  GoodBasisResult r = gbb.result();
  r.corrections = steps;
  return r;
}

}  // namespace gmtame
