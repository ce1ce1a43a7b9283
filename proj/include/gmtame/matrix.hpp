#pragma once

#include <algorithm>
#include <climits>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gmtame/errors.hpp"
#include "gmtame/laurent.hpp"
#include "gmtame/rational.hpp"
#include "gmtame/upoly.hpp"

namespace gmtame {

// Dense row-major matrix over a commutative ring T (Rational, UPoly, Laurent).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (rows[i].size() != m.cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!(x == T(0))) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix b(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = (*this)(i, idx[j]);
    return b;
  }
  Matrix select(const std::vector<std::size_t>& ri, const std::vector<std::size_t>& ci) const {
    Matrix b(ri.size(), ci.size());
    for (std::size_t i = 0; i < ri.size(); ++i)
      for (std::size_t j = 0; j < ci.size(); ++j) b(i, j) = (*this)(ri[i], ci[j]);
    return b;
  }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  void set_column(std::size_t j, const std::vector<T>& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  static Matrix hcat(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "hcat row mismatch");
    Matrix m(a.rows_, a.cols_ + b.cols_);
    m.set_block(0, 0, a);
    m.set_block(0, a.cols_, b);
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.a_) x = T(0) - x;
    return a;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (x == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!(b(k, j) == T(0))) m(i, j) += x * b(k, j);
      }
    return m;
  }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.a_) x = s * x;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix shape mismatch");
  }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using QMatrix = Matrix<Rational>;
using PMatrix = Matrix<UPoly>;     // over Q[theta] (or Q[tau], by context)
using LMatrix = Matrix<Laurent>;   // over Q[theta, theta^-1]

inline std::string entry_str(const Rational& q) { return q.get_str(); }
inline std::string entry_str(const UPoly& p) { return p.str("theta"); }
inline std::string entry_str(const Laurent& p) { return p.str(); }

template <class T>
std::string to_string(const Matrix<T>& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "[";
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << entry_str(m(i, j));
    os << "]\n";
  }
  return os.str();
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  return os << to_string(m);
}

// Conversions between the Laurent ring and its coefficient slices.
inline LMatrix to_laurent(const QMatrix& m) {
  return m.map([](const Rational& q) { return Laurent(q); });
}
inline LMatrix theta_to_laurent(const PMatrix& m) {
  return m.map([](const UPoly& p) { return Laurent::from_theta(p); });
}
inline LMatrix tau_to_laurent(const PMatrix& m) {
  return m.map([](const UPoly& p) { return Laurent::from_tau(p); });
}
inline PMatrix laurent_to_theta(const LMatrix& m) {
  return m.map([](const Laurent& p) { return p.to_theta_poly(); });
}
inline PMatrix laurent_to_tau(const LMatrix& m) {
  return m.map([](const Laurent& p) { return p.to_tau_poly(); });
}
// Coefficient matrix of theta^e.
inline QMatrix coeff_matrix(const LMatrix& m, int e) {
  return m.map([e](const Laurent& p) { return p.coeff(e); });
}
inline QMatrix coeff_matrix(const PMatrix& m, int e) {
  return m.map([e](const UPoly& p) { return p.coeff(e); });
}
inline LMatrix theta_d_theta(const LMatrix& m) {
  return m.map([](const Laurent& p) { return p.theta_d_theta(); });
}
inline LMatrix shift(const LMatrix& m, int k) {
  return m.map([k](const Laurent& p) { return p.shifted(k); });
}
inline int max_exp(const LMatrix& m) {
  int e = INT_MIN;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) e = std::max(e, m(i, j).max_exp());
  return e;
}
inline int min_exp(const LMatrix& m) {
  int e = INT_MAX;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) e = std::min(e, m(i, j).min_exp());
  return e;
}

}  // namespace gmtame
