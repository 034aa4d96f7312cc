#include "dahakz/numeric.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dahakz {

int bits_to_digits(int bits) { return static_cast<int>(std::ceil(bits * 0.30102999566398)) + 1; }

PrecisionScope::PrecisionScope(int bits) : old_(Real::default_precision()) {
  Real::default_precision(bits_to_digits(bits));
}
PrecisionScope::~PrecisionScope() { Real::default_precision(old_); }

Real pi_real() {
  thread_local std::map<unsigned, Real> cache;
  unsigned p = Real::default_precision();
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  Real v = boost::multiprecision::acos(Real(-1));
  cache.emplace(p, v);
  return v;
}

Real to_real(const Rational& q) { return Real(q.get_num().get_str()) / Real(q.get_den().get_str()); }

Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }

Complex exp(const Complex& z) {
  Real m = boost::multiprecision::exp(z.re);
  return Complex(m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im));
}

Complex exp2pii(const Real& q) {
  Real a = 2 * pi_real() * q;
  return Complex(boost::multiprecision::cos(a), boost::multiprecision::sin(a));
}

Complex to_complex(const Rational& q) { return Complex(to_real(q)); }

Complex to_complex(const Cyclotomic& c) {
  Complex out;
  int n = c.order();
  const auto& co = c.coeffs();
  for (size_t k = 0; k < co.size(); ++k) {
    if (is_zero(co[k])) continue;
    Real t = to_real(Rational(static_cast<long>(k), n));
    out += exp2pii(t) * Complex(to_real(co[k]));
  }
  return out;
}

std::string to_string(const Real& x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(Real::default_precision()) << x;
  return os.str();
}

CMatrix CMatrix::identity(size_t n) {
  CMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = Complex(1);
  return m;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  if (c_ != o.r_) throw std::logic_error("matrix dimension mismatch");
  CMatrix m(r_, o.c_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t k = 0; k < c_; ++k) {
      const Complex& x = (*this)(i, k);
      if (x.re == 0 && x.im == 0) continue;
      for (size_t j = 0; j < o.c_; ++j) m(i, j) += x * o(k, j);
    }
  return m;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
  CMatrix m = *this;
  return m += o;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (r_ != o.r_ || c_ != o.c_) throw std::logic_error("matrix dimension mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::logic_error("matrix dimension mismatch");
  CMatrix m = *this;
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
  return m;
}

CMatrix CMatrix::scaled(const Complex& s) const {
  CMatrix m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

std::vector<Complex> CMatrix::apply(const std::vector<Complex>& v) const {
  std::vector<Complex> out(r_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

Real CMatrix::norm() const {
  Real m(0);
  for (auto& x : a_) {
    Real a = abs(x);
    if (a > m) m = a;
  }
  return m;
}

Complex CMatrix::trace() const {
  Complex t;
  for (size_t i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
  return t;
}

CMatrix to_cmatrix(const QMatrix& m) {
  CMatrix c(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) c(i, j) = to_complex(m(i, j));
  return c;
}

CMatrix to_cmatrix(const CycMatrix& m) {
  CMatrix c(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) c(i, j) = to_complex(m(i, j));
  return c;
}

LU::LU(CMatrix m) : lu(std::move(m)) {
  size_t n = lu.rows();
  perm.resize(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    Real best = abs(lu(c, c));
    for (size_t r = c + 1; r < n; ++r) {
      Real a = abs(lu(r, c));
      if (a > best) {
        best = a;
        p = r;
      }
    }
    if (best == 0) throw std::domain_error("singular matrix");
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(lu(p, j), lu(c, j));
      std::swap(perm[p], perm[c]);
      sign = -sign;
    }
    Complex inv = Complex(1) / lu(c, c);
    for (size_t r = c + 1; r < n; ++r) {
      Complex f = lu(r, c) * inv;
      lu(r, c) = f;
      for (size_t j = c + 1; j < n; ++j) lu(r, j) -= f * lu(c, j);
    }
  }
}

std::vector<Complex> LU::solve(std::vector<Complex> b) const {
  size_t n = lu.rows();
  std::vector<Complex> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[perm[i]];
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
  for (size_t i = n; i-- > 0;) {
    for (size_t j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
    x[i] /= lu(i, i);
  }
  return x;
}

Complex LU::determinant() const {
  Complex d(sign);
  for (size_t i = 0; i < lu.rows(); ++i) d *= lu(i, i);
  return d;
}

Real LU::min_pivot() const {
  Real m = abs(lu(0, 0));
  for (size_t i = 1; i < lu.rows(); ++i) {
    Real a = abs(lu(i, i));
    if (a < m) m = a;
  }
  return m;
}

CMatrix inverse(const CMatrix& m) {
  size_t n = m.rows();
  LU f(m);
  CMatrix inv(n, n);
  for (size_t j = 0; j < n; ++j) {
    std::vector<Complex> e(n);
    e[j] = Complex(1);
    auto x = f.solve(e);
    for (size_t i = 0; i < n; ++i) inv(i, j) = x[i];
  }
  return inv;
}

CMatrix expm(const CMatrix& m) {
  size_t n = m.rows();
  Real nm = m.norm() * Real(static_cast<long>(n));
  int s = 0;
  while (nm > Real(0.5)) {
    nm /= 2;
    ++s;
  }
  CMatrix a = m.scaled(Complex(boost::multiprecision::ldexp(Real(1), -s)));
  CMatrix out = CMatrix::identity(n), term = CMatrix::identity(n);
  Real eps = boost::multiprecision::ldexp(Real(1), -static_cast<int>(Real::default_precision() * 3.33) - 8);
  for (int k = 1; k < 400; ++k) {
    term = (term * a).scaled(Complex(Real(1) / k));
    out += term;
    if (term.norm() < eps) break;
  }
  for (int i = 0; i < s; ++i) out = out * out;
  return out;
}

Real distance(const CMatrix& a, const CMatrix& b) { return (a - b).norm(); }

namespace {

// full-pivot elimination; returns pivot columns and leaves the reduced matrix in m
std::vector<size_t> full_pivot_rref(CMatrix& m, const Real& tol, std::vector<size_t>& colperm) {
  size_t R = m.rows(), C = m.cols();
  colperm.resize(C);
  for (size_t j = 0; j < C; ++j) colperm[j] = j;
  Real scale = m.norm();
  std::vector<size_t> piv;
  if (scale == 0) return piv;
  Real thr = tol * scale;
  size_t row = 0;
  for (size_t step = 0; step < std::min(R, C); ++step) {
    size_t bi = 0, bj = 0;
    Real best(-1);
    for (size_t i = row; i < R; ++i)
      for (size_t j = step; j < C; ++j) {
        Real a = abs(m(i, j));
        if (a > best) {
          best = a;
          bi = i;
          bj = j;
        }
      }
    if (best <= thr) break;
    for (size_t j = 0; j < C; ++j) std::swap(m(bi, j), m(row, j));
    for (size_t i = 0; i < R; ++i) std::swap(m(i, bj), m(i, step));
    std::swap(colperm[bj], colperm[step]);
    Complex inv = Complex(1) / m(row, step);
    for (size_t j = 0; j < C; ++j) m(row, j) *= inv;
    for (size_t i = 0; i < R; ++i) {
      if (i == row) continue;
      Complex f = m(i, step);
      if (f.re == 0 && f.im == 0) continue;
      for (size_t j = 0; j < C; ++j) m(i, j) -= f * m(row, j);
    }
    piv.push_back(step);
    ++row;
  }
  return piv;
}

}  // namespace

CMatrix null_space(const CMatrix& m0, const Real& tol) {
  CMatrix m = m0;
  std::vector<size_t> colperm;
  auto piv = full_pivot_rref(m, tol, colperm);
  size_t C = m.cols(), k = piv.size();
  CMatrix ns(C, C - k);
  for (size_t f = k; f < C; ++f) {
    ns(colperm[f], f - k) = Complex(1);
    for (size_t r = 0; r < k; ++r) ns(colperm[r], f - k) = -m(r, f);
  }
  return ns;
}

int numeric_rank(const CMatrix& m0, const Real& tol) {
  CMatrix m = m0;
  std::vector<size_t> colperm;
  return static_cast<int>(full_pivot_rref(m, tol, colperm).size());
}

std::vector<Complex> char_poly(const CMatrix& A) {
  size_t n = A.rows();
  std::vector<Complex> c(n + 1);
  c[n] = Complex(1);
  CMatrix M(n, n);  // M_0 = 0
  for (size_t k = 1; k <= n; ++k) {
    M = A * M + CMatrix::identity(n).scaled(c[n - k + 1]);
    c[n - k] = -(A * M).trace() / Complex(static_cast<int>(k));
  }
  return c;
}

std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{Complex(1)};
  for (auto& r : roots) {
    std::vector<Complex> d(c.size() + 1);
    for (size_t i = 0; i < c.size(); ++i) {
      d[i + 1] += c[i];
      d[i] -= r * c[i];
    }
    c = d;
  }
  return c;
}

}  // namespace dahakz
