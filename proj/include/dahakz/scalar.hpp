#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dahakz {

using Rational = mpq_class;

// Raised for inputs outside the regular/desk scope (CLI exit code 3).
struct ScopeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Raised for malformed user input (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }
Rational floor_q(const Rational& q);
long to_long(const Rational& q);

// Element of Q(zeta_N), stored as coefficients of 1, z, ..., z^{phi(N)-1}
// where z = exp(2 pi i / N). Mixed-N arithmetic lifts to lcm(N, M).
class Cyclotomic {
 public:
  Cyclotomic() : n_(1), c_{Rational(0)} {}
  Cyclotomic(long v) : n_(1), c_{Rational(v)} {}
  Cyclotomic(const Rational& q) : n_(1), c_{q} {}
  Cyclotomic(int n, std::vector<Rational> coeffs);

  // exp(2 pi i * q) for rational q.
  static Cyclotomic root_of_unity(const Rational& q);
  static Cyclotomic zeta(int n, int k = 1);

  int order() const { return n_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  Rational rational_value() const;  // throws unless is_rational()

  Cyclotomic lifted(int m) const;  // requires n_ | m
  Cyclotomic inverse() const;
  Cyclotomic conj() const;
  std::complex<double> to_complex() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  Cyclotomic operator-() const;
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }
  Cyclotomic pow(long e) const;

  std::string to_string() const;  // e.g. "1/2 + 3*z4^1" style
 private:
  void shrink();
  int n_;
  std::vector<Rational> c_;
};

inline bool is_zero(const Cyclotomic& c) { return c.is_zero(); }
inline std::string to_string(const Cyclotomic& c) { return c.to_string(); }

// Integer coefficients of the N-th cyclotomic polynomial, lowest degree first.
const std::vector<long>& cyclotomic_polynomial(int n);
int euler_phi(int n);

template <class F>
F field_pow(F b, long e) {
  F r(1);
  if (e < 0) {
    b = F(1) / b;
    e = -e;
  }
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace dahakz
