#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

#include "dahakz/linalg.hpp"

namespace dahakz {

using Real = boost::multiprecision::mpfr_float;

// Sets the default working precision (bits) for new Real values; restores on exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned old_;
};
int bits_to_digits(int bits);

Real pi_real();
Real to_real(const Rational& q);

struct Complex {
  Real re, im;
  Complex() : re(0), im(0) {}
  Complex(const Real& r) : re(r), im(0) {}
  Complex(const Real& r, const Real& i) : re(r), im(i) {}
  Complex(int v) : re(v), im(0) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    Real n = o.re * o.re + o.im * o.im;
    Real r = (re * o.re + im * o.im) / n;
    im = (im * o.re - re * o.im) / n;
    re = r;
    return *this;
  }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  Complex operator-() const { return Complex(-re, -im); }
  Complex conj() const { return Complex(re, -im); }
};

Real abs(const Complex& z);
Complex exp(const Complex& z);
// exp(2 pi i q)
Complex exp2pii(const Real& q);
Complex to_complex(const Rational& q);
Complex to_complex(const Cyclotomic& c);
std::string to_string(const Real& x);  // full precision, scientific

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(size_t r, size_t c) : r_(r), c_(c), a_(r * c) {}
  static CMatrix identity(size_t n);
  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  Complex& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const Complex& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  CMatrix operator*(const CMatrix& o) const;
  CMatrix operator+(const CMatrix& o) const;
  CMatrix operator-(const CMatrix& o) const;
  CMatrix& operator+=(const CMatrix& o);
  CMatrix scaled(const Complex& s) const;
  std::vector<Complex> apply(const std::vector<Complex>& v) const;
  Real norm() const;  // max absolute entry
  Complex trace() const;

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<Complex> a_;
};

CMatrix to_cmatrix(const QMatrix& m);
CMatrix to_cmatrix(const CycMatrix& m);

// LU with partial pivoting; throws std::domain_error on an exactly zero pivot.
struct LU {
  CMatrix lu;
  std::vector<size_t> perm;
  int sign = 1;
  explicit LU(CMatrix m);
  std::vector<Complex> solve(std::vector<Complex> b) const;
  Complex determinant() const;
  Real min_pivot() const;
};
CMatrix inverse(const CMatrix& m);
CMatrix expm(const CMatrix& m);
// commutator norm helper
Real distance(const CMatrix& a, const CMatrix& b);

// Numerical null space by full-pivot elimination: columns are a basis.
// Pivots below tol * (max entry) count as zero.
CMatrix null_space(const CMatrix& m, const Real& tol);
int numeric_rank(const CMatrix& m, const Real& tol);

// Characteristic polynomial coefficients (monic, c_0 .. c_{n-1}, c_n = 1), Faddeev-LeVerrier.
std::vector<Complex> char_poly(const CMatrix& m);
std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots);

}  // namespace dahakz
