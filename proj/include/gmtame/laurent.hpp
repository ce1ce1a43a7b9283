#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gmtame/upoly.hpp"

namespace gmtame {

// Laurent polynomial in theta over Q; tau = theta^-1 is never stored.
// Invariant: the coefficient vector is empty or starts and ends nonzero.
class Laurent {
 public:
  Laurent() = default;
  Laurent(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) c_.push_back(c);
  }
  Laurent(int c) : Laurent(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Laurent monomial(const Rational& c, int exponent) {
    Laurent p(c);
    if (!p.is_zero()) p.low_ = exponent;
    return p;
  }
  static Laurent theta(int exponent = 1) { return monomial(1, exponent); }
  static Laurent tau(int exponent = 1) { return monomial(1, -exponent); }

  // p(theta) as a Laurent polynomial.
  static Laurent from_theta(const UPoly& p) {
    Laurent r;
    r.c_ = p.coeffs();
    r.normalize();
    return r;
  }
  // p(tau) = p(theta^-1).
  static Laurent from_tau(const UPoly& p) {
    Laurent r;
    if (p.is_zero()) return r;
    r.c_.assign(p.coeffs().rbegin(), p.coeffs().rend());
    r.low_ = -p.degree();
    r.normalize();
    return r;
  }

  bool is_zero() const { return c_.empty(); }
  int min_exp() const { return low_; }
  int max_exp() const { return low_ + static_cast<int>(c_.size()) - 1; }
  bool is_monomial() const { return c_.size() == 1; }
  bool is_constant() const { return is_zero() || (is_monomial() && low_ == 0); }
  bool is_theta_poly() const { return is_zero() || low_ >= 0; }
  bool is_tau_poly() const { return is_zero() || max_exp() <= 0; }

  Rational coeff(int e) const {
    int i = e - low_;
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : Rational(0);
  }
  const Rational& top_coeff() const { return c_.back(); }
  Rational constant() const { return coeff(0); }

  UPoly to_theta_poly() const {
    if (!is_theta_poly()) throw Error(ErrorKind::Internal, "negative theta power in " + str());
    if (is_zero()) return {};
    std::vector<Rational> v(static_cast<std::size_t>(low_), Rational(0));
    v.insert(v.end(), c_.begin(), c_.end());
    return UPoly(std::move(v));
  }
  UPoly to_tau_poly() const {
    if (!is_tau_poly()) throw Error(ErrorKind::Internal, "positive theta power in " + str());
    if (is_zero()) return {};
    std::vector<Rational> v(static_cast<std::size_t>(-max_exp()), Rational(0));
    v.insert(v.end(), c_.rbegin(), c_.rend());
    return UPoly(std::move(v));
  }

  // this += s * theta^shift * o
  void axpy(const Rational& s, int shift, const Laurent& o) {
    if (s == 0 || o.is_zero()) return;
    int olo = o.low_ + shift;
    int ohi = olo + static_cast<int>(o.c_.size()) - 1;
    if (is_zero()) {
      low_ = olo;
      c_.assign(o.c_.size(), Rational(0));
      for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = s * o.c_[i];
      return;
    }
    int lo = std::min(low_, olo), hi = std::max(max_exp(), ohi);
    if (lo < low_) c_.insert(c_.begin(), static_cast<std::size_t>(low_ - lo), Rational(0));
    low_ = lo;
    if (static_cast<int>(c_.size()) < hi - lo + 1) c_.resize(static_cast<std::size_t>(hi - lo + 1), Rational(0));
    std::size_t off = static_cast<std::size_t>(olo - lo);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[off + i] += s * o.c_[i];
    normalize();
  }

  Laurent& operator+=(const Laurent& o) {
    axpy(1, 0, o);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    axpy(-1, 0, o);
    return *this;
  }
  Laurent& operator*=(const Rational& s) {
    if (s == 0) c_.clear();
    for (auto& c : c_) c *= s;
    return *this;
  }
  Laurent shifted(int k) const {
    Laurent r = *this;
    if (!r.is_zero()) r.low_ += k;
    return r;
  }

  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator-(Laurent a) { return a *= Rational(-1); }
  friend Laurent operator*(Laurent a, const Rational& s) { return a *= s; }
  friend Laurent operator*(const Rational& s, Laurent a) { return a *= s; }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    if (a.is_zero() || b.is_zero()) return r;
    r.low_ = a.low_ + b.low_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.normalize();
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.c_ == b.c_ && (a.is_zero() || a.low_ == b.low_);
  }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  // theta d/dtheta, which equals -tau d/dtau.
  Laurent theta_d_theta() const {
    Laurent r = *this;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] *= low_ + static_cast<int>(i);
    r.normalize();
    return r;
  }
  Laurent tau_d_tau() const { return -theta_d_theta(); }
  // theta^2 d/dtheta
  Laurent theta2_d_theta() const { return theta_d_theta().shifted(1); }

  // Inverse of a nonzero monomial.
  Laurent inverse_monomial() const {
    if (!is_monomial()) throw Error(ErrorKind::Internal, "not a unit in the Laurent ring: " + str());
    return monomial(1 / c_[0], -low_);
  }

  Laurent truncate_below(int e) const {  // keep exponents >= e
    Laurent r;
    for (int k = std::max(e, low_); !is_zero() && k <= max_exp(); ++k) r.axpy(coeff(k), k, Laurent(1));
    return r;
  }

  std::string str(const std::string& var = "theta") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int e = max_exp(); e >= low_; --e) {
      Rational c = coeff(e);
      if (c == 0) continue;
      Rational a = abs(c);
      if (c < 0) os << "-";
      else if (!first) os << "+";
      if (e == 0 || a != 1) {
        os << a.get_str();
        if (e != 0) os << "*";
      }
      if (e != 0) os << var;
      if (e != 0 && e != 1) os << "^" << e;
      first = false;
    }
    return os.str();
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    std::size_t z = 0;
    while (z < c_.size() && c_[z] == 0) ++z;
    if (z > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(z));
      low_ += static_cast<int>(z);
    }
    if (c_.empty()) low_ = 0;
  }

  int low_ = 0;
  std::vector<Rational> c_;
};

inline std::ostream& operator<<(std::ostream& os, const Laurent& p) { return os << p.str(); }

}  // namespace gmtame
