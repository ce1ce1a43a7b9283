#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gmtame/rational.hpp"

namespace gmtame {

// Dense univariate polynomial over Q. Coefficient i belongs to x^i; no
// trailing zeros are stored, so the zero polynomial has an empty vector.
class UPoly {
 public:
  UPoly() = default;
  UPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) c_.push_back(c);
  }
  UPoly(int c) : UPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly monomial(const Rational& c, int degree) {
    UPoly p;
    if (c == 0) return p;
    p.c_.assign(static_cast<std::size_t>(degree) + 1, Rational(0));
    p.c_.back() = c;
    return p;
  }
  static UPoly x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const Rational& lead() const { return c_.back(); }
  Rational coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : Rational(0);
  }
  const std::vector<Rational>& coeffs() const { return c_; }

  // Lowest exponent with a nonzero coefficient; -1 for zero.
  int valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return static_cast<int>(i);
    return -1;
  }

  bool is_monomial() const { return !c_.empty() && valuation() == degree(); }

  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator*=(const Rational& s) {
    if (s == 0) {
      c_.clear();
      return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
  }

  // this += s * x^shift * o
  void axpy(const Rational& s, int shift, const UPoly& o) {
    if (s == 0 || o.is_zero()) return;
    std::size_t need = o.c_.size() + static_cast<std::size_t>(shift);
    if (need > c_.size()) c_.resize(need, Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i + static_cast<std::size_t>(shift)] += s * o.c_[i];
    trim();
  }

  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator-(UPoly a) { return a *= Rational(-1); }
  friend UPoly operator*(UPoly a, const Rational& s) { return a *= s; }
  friend UPoly operator*(const Rational& s, UPoly a) { return a *= s; }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  // Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw Error(ErrorKind::Internal, "polynomial division by zero");
    UPoly r = *this;
    if (r.degree() < d.degree()) return {UPoly(), r};
    std::vector<Rational> q(static_cast<std::size_t>(r.degree() - d.degree()) + 1, Rational(0));
    Rational inv = 1 / d.lead();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      int shift = r.degree() - d.degree();
      Rational c = r.lead() * inv;
      q[static_cast<std::size_t>(shift)] = c;
      r.axpy(-c, shift, d);
    }
    return {UPoly(std::move(q)), r};
  }
  friend UPoly operator/(const UPoly& a, const UPoly& b) { return a.divmod(b).first; }
  friend UPoly operator%(const UPoly& a, const UPoly& b) { return a.divmod(b).second; }

  bool divides(const UPoly& other) const {
    if (is_zero()) return other.is_zero();
    return (other % *this).is_zero();
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    return *this * (1 / lead());
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return UPoly(std::move(r));
  }

  Rational eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      const Rational& c = c_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      Rational a = abs(c);
      if (c < 0) os << "-";
      else if (!first) os << "+";
      if (i == 0 || a != 1) {
        os << a.get_str();
        if (i > 0) os << "*";
      }
      if (i > 0) os << var;
      if (i > 1) os << "^" << i;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline std::ostream& operator<<(std::ostream& os, const UPoly& p) { return os << p.str(); }

inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace detail {

inline int sign(const Rational& q) { return sgn(q); }

// Sturm sequence of a square-free polynomial; scaled by positive constants,
// which leaves sign variations unchanged.
inline std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> s{p, p.derivative()};
  while (s.back().degree() > 0) {
    UPoly r = s[s.size() - 2] % s.back();
    if (r.is_zero()) break;
    Rational scale = -1 / abs(r.lead());
    s.push_back(r * scale);
  }
  return s;
}

inline int sign_variations(const std::vector<UPoly>& s, const Rational& x) {
  int v = 0, last = 0;
  for (const auto& p : s) {
    int g = sign(p.eval(x));
    if (g == 0) continue;
    if (last != 0 && g != last) ++v;
    last = g;
  }
  return v;
}

// The rational with the smallest denominator in [lo, hi].
inline Rational simplest_between(Rational lo, Rational hi) {
  if (lo <= 0 && hi >= 0) return 0;
  if (hi < 0) return -simplest_between(-hi, -lo);
  Integer fl = floor(lo);
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  Rational inner = simplest_between(1 / (hi - Rational(fl)), 1 / (lo - Rational(fl)));
  return Rational(fl) + 1 / inner;
}

}  // namespace detail

// Rational roots of p with multiplicities, strictly decreasing. The second
// component is the cofactor left after removing all linear rational factors.
//
// Real roots of the square-free part are isolated with a Sturm sequence and
// each isolating interval is shrunk below 1/(2 a_d^2), where a_d is the
// leading coefficient of the primitive integer form. A rational root has a
// denominator dividing a_d, so it is then the simplest rational of its
// interval, and an exact evaluation decides.
inline std::pair<std::vector<std::pair<Rational, int>>, UPoly> rational_roots(const UPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::Internal, "rational_roots of zero polynomial");
  std::vector<std::pair<Rational, int>> roots;
  UPoly rest = p.monic();
  if (rest.degree() <= 0) return {roots, rest};
  UPoly sqfree = rest / gcd(rest, rest.derivative());

  Integer lcm_den = 1;
  for (const auto& c : sqfree.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  Integer ad = abs(Integer(sqfree.lead() * lcm_den));
  Rational eps(Integer(1), 2 * ad * ad);
  eps.canonicalize();

  Rational bound = 1;
  for (const auto& c : sqfree.coeffs()) bound += abs(c);  // sqfree is monic

  auto s = detail::sturm_sequence(sqfree);
  std::vector<Rational> found;
  auto refine = [&](Rational a, Rational b) {
    // exactly one root in (a, b]
    int sb = detail::sign(sqfree.eval(b));
    if (sb == 0) {
      found.push_back(b);
      return;
    }
    while (b - a >= eps) {
      Rational m = (a + b) / 2;
      int sm = detail::sign(sqfree.eval(m));
      if (sm == 0) {
        found.push_back(m);
        return;
      }
      if (sm != sb) a = m;
      else b = m;
    }
    Rational r = detail::simplest_between(a, b);
    if (sqfree.eval(r) == 0) found.push_back(r);
  };
  std::vector<std::tuple<Rational, Rational, int, int>> work{{-bound, bound, detail::sign_variations(s, -bound),
                                                            detail::sign_variations(s, bound)}};
  while (!work.empty()) {
    auto [a, b, va, vb] = work.back();
    work.pop_back();
    int count = va - vb;
    if (count == 0) continue;
    if (count == 1) {
      refine(a, b);
      continue;
    }
    Rational m = (a + b) / 2;
    int vm = detail::sign_variations(s, m);
    work.emplace_back(a, m, va, vm);
    work.emplace_back(m, b, vm, vb);
  }

  for (const auto& r : found) {
    UPoly lin(std::vector<Rational>{-r, Rational(1)});
    int mult = 0;
    while (rest.degree() >= 1 && rest.eval(r) == 0) {
      rest = rest / lin;
      ++mult;
    }
    roots.emplace_back(r, mult);
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  return {roots, rest};
}

}  // namespace gmtame
