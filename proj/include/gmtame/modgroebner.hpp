#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "gmtame/hermite.hpp"
#include "gmtame/laurent.hpp"
#include "gmtame/matrix.hpp"

namespace gmtame {

// Sparse element of a free module over Q[theta, theta^-1]; entries sorted by
// position, no zero entries.
class ModuleVector {
 public:
  using Entry = std::pair<std::size_t, Laurent>;

  ModuleVector() = default;
  static ModuleVector unit(std::size_t pos, const Laurent& c = Laurent(1)) {
    ModuleVector v;
    if (!c.is_zero()) v.e_.emplace_back(pos, c);
    return v;
  }
  static ModuleVector from_column(const LMatrix& m, std::size_t col) {
    ModuleVector v;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!m(i, col).is_zero()) v.e_.emplace_back(i, m(i, col));
    return v;
  }
  std::vector<Laurent> dense(std::size_t dim) const {
    std::vector<Laurent> d(dim);
    for (const auto& [p, c] : e_) d.at(p) = c;
    return d;
  }

  const std::vector<Entry>& entries() const { return e_; }
  bool is_zero() const { return e_.empty(); }
  std::size_t size() const { return e_.size(); }

  const Laurent* find(std::size_t pos) const {
    auto it = std::lower_bound(e_.begin(), e_.end(), pos, [](const Entry& a, std::size_t p) { return a.first < p; });
    return it != e_.end() && it->first == pos ? &it->second : nullptr;
  }
  Laurent at(std::size_t pos) const {
    const Laurent* p = find(pos);
    return p ? *p : Laurent();
  }
  void set(std::size_t pos, const Laurent& c) {
    auto it = std::lower_bound(e_.begin(), e_.end(), pos, [](const Entry& a, std::size_t p) { return a.first < p; });
    if (it != e_.end() && it->first == pos) {
      if (c.is_zero()) e_.erase(it);
      else it->second = c;
    } else if (!c.is_zero()) {
      e_.insert(it, Entry(pos, c));
    }
  }

  // this += s * theta^shift * o
  void axpy(const Rational& s, int shift, const ModuleVector& o) {
    if (s == 0 || o.is_zero()) return;
    std::vector<Entry> r;
    r.reserve(e_.size() + o.e_.size());
    auto a = e_.begin();
    auto b = o.e_.begin();
    while (a != e_.end() || b != o.e_.end()) {
      if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
        r.push_back(std::move(*a++));
      } else if (a == e_.end() || b->first < a->first) {
        Laurent c;
        c.axpy(s, shift, b->second);
        r.emplace_back(b->first, std::move(c));
        ++b;
      } else {
        a->second.axpy(s, shift, b->second);
        if (!a->second.is_zero()) r.push_back(std::move(*a));
        ++a, ++b;
      }
    }
    e_ = std::move(r);
  }
  // this += c * o for a Laurent polynomial c
  void add_multiple(const Laurent& c, const ModuleVector& o) {
    for (int k = c.min_exp(); !c.is_zero() && k <= c.max_exp(); ++k)
      if (c.coeff(k) != 0) axpy(c.coeff(k), k, o);
  }
  ModuleVector& operator*=(const Rational& s) {
    if (s == 0) e_.clear();
    for (auto& [p, c] : e_) c *= s;
    return *this;
  }
  ModuleVector shifted(int k) const {
    ModuleVector v = *this;
    for (auto& [p, c] : v.e_) c = c.shifted(k);
    return v;
  }
  int min_exp() const {
    int m = INT_MAX;
    for (const auto& [p, c] : e_) m = std::min(m, c.min_exp());
    return m;
  }
  int max_exp() const {
    int m = INT_MIN;
    for (const auto& [p, c] : e_) m = std::max(m, c.max_exp());
    return m;
  }
  friend bool operator==(const ModuleVector& a, const ModuleVector& b) { return a.e_ == b.e_; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) {
    a.axpy(-1, 0, b);
    return a;
  }
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) {
    a.axpy(1, 0, b);
    return a;
  }

 private:
  std::vector<Entry> e_;
};

struct ModuleTerm {
  std::size_t pos = 0;
  int exp = 0;
  Rational coeff;
};

// Position-over-term compares the position rank first; term-over-position
// compares the theta exponent first. Ranks must be injective.
struct ModuleOrder {
  enum Kind { POT, TOP } kind = POT;
  std::vector<int> rank;  // rank of each position; identity when empty

  int rank_of(std::size_t pos) const { return pos < rank.size() ? rank[pos] : static_cast<int>(pos); }
  bool less(std::size_t pa, int ea, std::size_t pb, int eb) const {
    int ra = rank_of(pa), rb = rank_of(pb);
    if (kind == POT) return ra != rb ? ra < rb : ea < eb;
    return ea != eb ? ea < eb : ra < rb;
  }
  ModuleTerm lead(const ModuleVector& v) const {
    ModuleTerm t;
    bool have = false;
    for (const auto& [p, c] : v.entries()) {
      int e = c.max_exp();
      if (!have || less(t.pos, t.exp, p, e)) {
        t.pos = p;
        t.exp = e;
        have = true;
      }
    }
    if (have) t.coeff = v.find(t.pos)->top_coeff();
    return t;
  }
};

// A Groebner basis of a submodule, stored with at most one element per lead
// position. Any such family is a Groebner basis of its span, because lead
// terms on distinct positions cannot cancel; insertion keeps the invariant by
// Euclidean steps between elements that share a lead position.
class GBasis {
 public:
  GBasis() = default;
  explicit GBasis(ModuleOrder order) : order_(std::move(order)) {}

  const ModuleOrder& order() const { return order_; }

  void insert(ModuleVector v) {
    for (;;) {
      if (v.is_zero()) return;
      ModuleTerm t = order_.lead(v);
      if (t.pos >= slots_.size()) slots_.resize(t.pos + 1);
      auto& slot = slots_[t.pos];
      if (!slot) {
        v *= Rational(1 / t.coeff);
        slot = Slot{std::move(v), t.exp};
        ++count_;
        return;
      }
      if (slot->exp <= t.exp) {
        v.axpy(-t.coeff, t.exp - slot->exp, slot->v);  // stored leads are monic
      } else {
        v *= Rational(1 / t.coeff);
        std::swap(v, slot->v);
        slot->exp = t.exp;
      }
    }
  }

  std::size_t size() const { return count_; }
  bool has_pivot(std::size_t pos) const { return pos < slots_.size() && slots_[pos].has_value(); }
  int pivot_exp(std::size_t pos) const { return slots_.at(pos)->exp; }
  const ModuleVector& pivot(std::size_t pos) const { return slots_.at(pos)->v; }

  // Elements in increasing order of their lead terms.
  std::vector<std::size_t> lead_positions() const {
    std::vector<std::size_t> p;
    for (std::size_t i = 0; i < slots_.size(); ++i)
      if (slots_[i]) p.push_back(i);
    std::sort(p.begin(), p.end(), [this](std::size_t a, std::size_t b) {
      return order_.less(a, slots_[a]->exp, b, slots_[b]->exp);
    });
    return p;
  }
  std::vector<ModuleVector> elements() const {
    std::vector<ModuleVector> r;
    for (auto p : lead_positions()) r.push_back(slots_[p]->v);
    return r;
  }

  // Normal form, always reducing the largest reducible term first. When
  // `quotients` is given, v = NF + sum quotients[pos] * pivot(pos).
  ModuleVector normal_form(ModuleVector v, std::vector<Laurent>* quotients = nullptr) const {
    if (quotients) quotients->assign(slots_.size(), Laurent());
    if (order_.kind == ModuleOrder::POT && order_.rank.empty()) return nf_pot(std::move(v), quotients);
    for (;;) {
      bool found = false;
      std::size_t bp = 0;
      int be = 0;
      for (const auto& [p, c] : v.entries()) {
        if (!has_pivot(p) || c.max_exp() < slots_[p]->exp) continue;
        int e = c.max_exp();
        if (!found || order_.less(bp, be, p, e)) {
          bp = p;
          be = e;
          found = true;
        }
      }
      if (!found) return v;
      reduce_at(v, bp, be, quotients);
    }
  }

  bool member(const ModuleVector& v) const { return normal_form(v).is_zero(); }

  // True iff no term of v is divisible by a lead of the basis.
  bool is_reduced(const ModuleVector& v) const {
    for (const auto& [p, c] : v.entries())
      if (has_pivot(p) && c.max_exp() >= slots_[p]->exp) return false;
    return true;
  }

 private:
  struct Slot {
    ModuleVector v;
    int exp;
  };

  void reduce_at(ModuleVector& v, std::size_t p, int e, std::vector<Laurent>* quotients) const {
    Rational c = v.find(p)->coeff(e);
    int s = e - slots_[p]->exp;
    v.axpy(-c, s, slots_[p]->v);
    if (quotients) (*quotients)[p].axpy(c, s, Laurent(1));
  }

  // Position ranks equal positions: every pivot only touches smaller
  // positions, so one sweep from the top is a complete reduction.
  ModuleVector nf_pot(ModuleVector v, std::vector<Laurent>* quotients) const {
    if (v.is_zero()) return v;
    std::size_t p = v.entries().back().first + 1;
    while (p-- > 0) {
      if (!has_pivot(p)) continue;
      for (;;) {
        const Laurent* c = v.find(p);
        if (!c || c->max_exp() < slots_[p]->exp) break;
        reduce_at(v, p, c->max_exp(), quotients);
      }
    }
    return v;
  }

  ModuleOrder order_;
  std::vector<std::optional<Slot>> slots_;
  std::size_t count_ = 0;
};

inline GBasis groebner(const std::vector<ModuleVector>& gens, const ModuleOrder& order) {
  GBasis gb(order);
  for (const auto& g : gens) gb.insert(g);
  return gb;
}

// mu columns spanning the same Q[tau]-module as the columns of gens
// (entries Laurent in theta). The result is the reduced column Hermite form
// over Q[tau], so it is canonical for the tau-span.
inline LMatrix lattice_basis_from_generators(const LMatrix& gens) {
  const std::size_t mu = gens.rows();
  int d = std::max(0, max_exp(gens));
  PMatrix t = laurent_to_tau(shift(gens, -d));
  PMatrix h = column_hermite_basis(t);
  if (h.cols() != mu) throw Error(ErrorKind::RankDeficient, "generators span a module of rank < " + std::to_string(mu));
  return shift(tau_to_laurent(h), d);
}

// Membership of v in the Q[tau]-span of the columns of basis.
inline bool tau_span_contains(const LMatrix& basis, const std::vector<Laurent>& v) {
  LMatrix col(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) col(i, 0) = v[i];
  return lattice_basis_from_generators(LMatrix::hcat(basis, col)) == lattice_basis_from_generators(basis);
}

}  // namespace gmtame
