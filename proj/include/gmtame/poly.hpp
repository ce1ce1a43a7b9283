#pragma once

#include <algorithm>
#include <cctype>
#include <climits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gmtame/laurent.hpp"
#include "gmtame/rational.hpp"

namespace gmtame {

// x^e * theta^theta. theta may be negative only for Laurent contexts.
struct XMonomial {
  std::vector<int> e;
  int theta = 0;

  int degree() const {
    int d = 0;
    for (int v : e) d += v;
    return d;
  }
  friend bool operator==(const XMonomial& a, const XMonomial& b) { return a.theta == b.theta && a.e == b.e; }
  friend bool operator<(const XMonomial& a, const XMonomial& b) {
    return a.e != b.e ? a.e < b.e : a.theta < b.theta;
  }
  friend XMonomial operator*(const XMonomial& a, const XMonomial& b) {
    XMonomial m = a;
    for (std::size_t i = 0; i < m.e.size(); ++i) m.e[i] += b.e[i];
    m.theta += b.theta;
    return m;
  }
};

// Graded reverse lexicographic comparison of exponent vectors (first
// variable largest). Returns -1, 0, 1.
inline int degrevlex_cmp(const std::vector<int>& a, const std::vector<int>& b) {
  int da = 0, db = 0;
  for (int v : a) da += v;
  for (int v : b) db += v;
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  return 0;
}

// Polynomial in x_0..x_{n} and theta over Q.
class Poly {
 public:
  using Terms = std::map<XMonomial, Rational>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : n_(nvars) {}
  Poly(std::size_t nvars, const Rational& c) : n_(nvars) {
    if (c != 0) t_[XMonomial{std::vector<int>(nvars, 0), 0}] = c;
  }

  static Poly var(std::size_t nvars, std::size_t i) {
    XMonomial m{std::vector<int>(nvars, 0), 0};
    m.e[i] = 1;
    return term(nvars, m, 1);
  }
  static Poly theta(std::size_t nvars, int k = 1) { return term(nvars, XMonomial{std::vector<int>(nvars, 0), k}, 1); }
  static Poly term(std::size_t nvars, const XMonomial& m, const Rational& c) {
    Poly p(nvars);
    if (c != 0) p.t_[m] = c;
    return p;
  }

  std::size_t nvars() const { return n_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.degree() == 0 && t_.begin()->first.theta == 0);
  }
  Rational constant_value() const {
    return is_zero() ? Rational(0) : coeff(XMonomial{std::vector<int>(n_, 0), 0});
  }
  Rational coeff(const XMonomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rational(0) : it->second;
  }
  int x_degree() const {
    int d = -1;
    for (const auto& [m, c] : t_) d = std::max(d, m.degree());
    return d;
  }
  int theta_degree() const {
    int d = INT_MIN;
    for (const auto& [m, c] : t_) d = std::max(d, m.theta);
    return d;
  }
  int theta_min() const {
    int d = INT_MAX;
    for (const auto& [m, c] : t_) d = std::min(d, m.theta);
    return d;
  }

  void add_term(const XMonomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (s == 0) t_.clear();
    for (auto& [m, c] : t_) c *= s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(std::max(a.n_, b.n_));
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned k) const {
    Poly r(n_, 1), b = *this;
    for (; k; k >>= 1) {
      if (k & 1) r *= b;
      if (k > 1) b *= b;
    }
    return r;
  }

  // theta^k * this
  Poly theta_shift(int k) const {
    Poly r(n_);
    for (const auto& [m, c] : t_) {
      XMonomial mm = m;
      mm.theta += k;
      r.t_[mm] = c;
    }
    return r;
  }

  Poly eval_theta(const Rational& v) const {
    Poly r(n_);
    for (const auto& [m, c] : t_) {
      XMonomial mm = m;
      mm.theta = 0;
      Rational w = c;
      for (int i = 0; i < m.theta; ++i) w *= v;
      r.add_term(mm, w);
    }
    return r;
  }

  // Coefficient of theta^k as a theta-free polynomial.
  Poly theta_part(int k) const {
    Poly r(n_);
    for (const auto& [m, c] : t_)
      if (m.theta == k) r.add_term(XMonomial{m.e, 0}, c);
    return r;
  }

  // Terms sorted decreasingly: by total x-degree, degrevlex, then theta.
  std::vector<std::pair<XMonomial, Rational>> sorted_terms() const {
    std::vector<std::pair<XMonomial, Rational>> v(t_.begin(), t_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      int c = degrevlex_cmp(a.first.e, b.first.e);
      return c != 0 ? c > 0 : a.first.theta > b.first.theta;
    });
    return v;
  }

  std::string str(const std::vector<std::string>& vars) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : sorted_terms()) {
      Rational a = abs(c);
      if (c < 0) os << (first ? "-" : " - ");
      else if (!first) os << " + ";
      std::vector<std::string> f;
      for (std::size_t i = 0; i < m.e.size(); ++i) {
        if (m.e[i] == 0) continue;
        f.push_back(vars.at(i) + (m.e[i] > 1 ? "^" + std::to_string(m.e[i]) : ""));
      }
      if (m.theta != 0) f.push_back(std::string("theta") + (m.theta != 1 ? "^" + std::to_string(m.theta) : ""));
      bool need_coeff = f.empty() || a != 1;
      if (need_coeff) os << a.get_str();
      for (std::size_t i = 0; i < f.size(); ++i) os << (need_coeff || i > 0 ? "*" : "") << f[i];
      first = false;
    }
    return os.str();
  }

 private:
  std::size_t n_ = 0;
  Terms t_;
};

// Formal partial derivative in x_i.
inline Poly diff(const Poly& p, std::size_t i) {
  Poly r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m.e[i] == 0) continue;
    XMonomial mm = m;
    mm.e[i] -= 1;
    r.add_term(mm, c * m.e[i]);
  }
  return r;
}

inline Poly theta_d_theta(const Poly& p) {
  Poly r(p.nvars());
  for (const auto& [m, c] : p.terms()) r.add_term(m, c * m.theta);
  return r;
}
inline Poly tau_d_tau(const Poly& p) { return -theta_d_theta(p); }

// t = f + theta^2 d/dtheta acting on the Brieskorn lattice presentation.
inline Poly t_action(const Poly& f, const Poly& p) {
  Poly r = f * p;
  for (const auto& [m, c] : p.terms()) {
    if (m.theta == 0) continue;
    XMonomial mm = m;
    mm.theta += 1;
    r.add_term(mm, c * m.theta);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Parsing.  Grammar (see docs/format.md):
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary | <implicit> power)*
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' natural)?
//   atom   := number | identifier | '(' expr ')'
// "theta" is reserved and denotes the formal variable theta.

namespace detail {

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  Parser(std::string_view s, const std::vector<std::string>& vars) : s_(s), vars_(vars) {}

  Poly run() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Poly expr() {
    Poly p = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        p += term();
      } else if (peek('-')) {
        ++pos_;
        p -= term();
      } else {
        return p;
      }
    }
  }
  Poly term() {
    Poly p = unary();
    for (;;) {
      skip();
      if (peek('*')) {
        ++pos_;
        p *= unary();
      } else if (peek('/')) {
        ++pos_;
        std::size_t at = pos_;
        Poly d = unary();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division is only allowed by nonzero constants");
        }
        p *= Rational(1 / d.constant_value());
      } else if (pos_ < s_.size() && (ident_start(s_[pos_]) || s_[pos_] == '(')) {
        p *= power();
      } else {
        return p;
      }
    }
  }
  Poly unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }
  Poly power() {
    Poly b = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      if (pos_ - start > 6) fail("exponent too large");
      return b.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return b;
  }
  Poly atom() {
    skip();
    if (pos_ == s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "theta") return Poly::theta(vars_.size());
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      return Poly::var(vars_.size(), static_cast<std::size_t>(it - vars_.begin()));
    }
    fail(std::string("unexpected '") + c + "'");
  }
  Poly number() {
    std::size_t start = pos_;
    std::string digits;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
    Integer den = 1;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        digits += s_[pos_++];
        den *= 10;
      }
    }
    if (digits.empty()) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E') && pos_ + 1 < s_.size() &&
        (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '-' || s_[pos_ + 1] == '+')) {
      pos_ = start;
      fail("NonRationalLiteral: exponent notation is not accepted");
    }
    Rational q(Integer(digits, 10), den);
    q.canonicalize();
    return Poly(vars_.size(), q);
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Identifiers occurring in text (excluding "theta"), sorted.
inline std::vector<std::string> discover_variables(std::string_view text) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < text.size();) {
    if (detail::ident_start(text[i])) {
      std::size_t j = i;
      while (j < text.size() && detail::ident_char(text[j])) ++j;
      std::string name(text.substr(i, j - i));
      // the exponent marker of "1e5" is not an identifier; the parser rejects it
      bool after_digit = i > 0 && std::isdigit(static_cast<unsigned char>(text[i - 1]));
      if (name != "theta" && !(after_digit && (name[0] == 'e' || name[0] == 'E') && name.size() > 1 &&
                               std::isdigit(static_cast<unsigned char>(name[1]))))
        names.insert(name);
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) ++i;
    } else {
      ++i;
    }
  }
  return {names.begin(), names.end()};
}

inline Poly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.empty() || !detail::ident_start(v[0]) ||
        !std::all_of(v.begin(), v.end(), [](char c) { return detail::ident_char(c); }))
      throw ParseError("invalid variable name '" + v + "'", 0);
    if (v == "theta") throw ParseError("'theta' is reserved", 0);
    if (!seen.insert(v).second) throw ParseError("duplicate variable '" + v + "'", 0);
  }
  return detail::Parser(text, vars).run();
}

}  // namespace gmtame
