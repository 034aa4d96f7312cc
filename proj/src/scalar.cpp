#include "dahakz/scalar.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace dahakz {

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw ConfigError("empty rational");
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    // decimal literal, converted exactly
    std::string sign;
    if (t[0] == '-' || t[0] == '+') {
      sign = t[0] == '-' ? "-" : "";
      t = t.substr(1);
      dot--;
    }
    std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
    for (char ch : ip + fp)
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw ConfigError("bad rational '" + s + "'");
    std::string den = "1" + std::string(fp.size(), '0');
    Rational q(sign + (ip.empty() ? "0" : ip) + fp + "/" + den);
    q.canonicalize();
    return q;
  }
  for (size_t i = 0; i < t.size(); ++i) {
    char ch = t[i];
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ((ch == '-' || ch == '+') && i == 0)))
      throw ConfigError("bad rational '" + s + "'");
  }
  if (t[0] == '+') t = t.substr(1);
  Rational q;
  if (q.set_str(t, 10) != 0 || q.get_den() == 0) throw ConfigError("bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational floor_q(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

long to_long(const Rational& q) {
  if (!is_integer(q)) throw std::logic_error("to_long: non-integer " + to_string(q));
  return q.get_num().get_si();
}

int euler_phi(int n) {
  int r = n, m = n;
  for (int p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      r -= r / p;
    }
  if (m > 1) r -= r / m;
  return r;
}

namespace {
std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}
// exact division of integer polynomials, divisor monic
std::vector<long> poly_div(std::vector<long> a, const std::vector<long>& b) {
  long db = static_cast<long>(b.size()) - 1;
  std::vector<long> q(a.size() - db, 0);
  for (long i = static_cast<long>(a.size()) - 1; i >= db; --i) {
    long c = a[i];
    q[i - db] = c;
    for (long j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}
}  // namespace

const std::vector<long>& cyclotomic_polynomial(int n) {
  static std::map<int, std::vector<long>> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  std::vector<long> den{1};
  for (int d = 1; d < n; ++d)
    if (n % d == 0) den = poly_mul(den, cyclotomic_polynomial(d));
  return cache[n] = poly_div(num, den);
}

namespace {
// reduce a coefficient vector (powers of z_n) modulo Phi_n
std::vector<Rational> reduce_mod(int n, std::vector<Rational> a) {
  const auto& p = cyclotomic_polynomial(n);
  size_t deg = p.size() - 1;
  for (size_t i = a.size(); i-- > deg;) {
    if (is_zero(a[i])) continue;
    Rational c = a[i];
    for (size_t j = 0; j <= deg; ++j) a[i - deg + j] -= c * p[j];
  }
  a.resize(deg);
  return a;
}
}  // namespace

Cyclotomic::Cyclotomic(int n, std::vector<Rational> coeffs) : n_(n) {
  if (n < 1) throw std::invalid_argument("cyclotomic order must be positive");
  c_ = reduce_mod(n, std::move(coeffs));
  shrink();
}

Cyclotomic Cyclotomic::zeta(int n, int k) {
  k %= n;
  if (k < 0) k += n;
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = 1;
  return Cyclotomic(n, v);
}

Cyclotomic Cyclotomic::root_of_unity(const Rational& q) {
  Rational fr = q - floor_q(q);
  long den = fr.get_den().get_si();
  long num = fr.get_num().get_si();
  return zeta(static_cast<int>(den), static_cast<int>(num));
}

bool Cyclotomic::is_zero() const {
  for (auto& x : c_)
    if (!dahakz::is_zero(x)) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (!dahakz::is_zero(c_[i])) return false;
  return true;
}

Rational Cyclotomic::rational_value() const {
  if (!is_rational()) throw std::logic_error("cyclotomic value is not rational");
  return c_.empty() ? Rational(0) : c_[0];
}

void Cyclotomic::shrink() {
  if (n_ != 1 && is_rational()) {
    Rational v = c_.empty() ? Rational(0) : c_[0];
    n_ = 1;
    c_ = {v};
  }
}

Cyclotomic Cyclotomic::lifted(int m) const {
  if (m % n_ != 0) throw std::logic_error("cyclotomic lift to non-multiple order");
  if (m == n_) return *this;
  int step = m / n_;
  std::vector<Rational> v(step * (c_.size() ? c_.size() - 1 : 0) + 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i * step] += c_[i];
  Cyclotomic r;
  r.n_ = m;
  r.c_ = reduce_mod(m, std::move(v));
  return r;
}

namespace {
int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  int m = lcm_int(n_, o.n_);
  Cyclotomic a = lifted(m), b = o.lifted(m);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  a.shrink();
  return *this = a;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (o.n_ == 1) {
    for (auto& x : c_) x *= o.c_[0];
    shrink();
    return *this;
  }
  int m = lcm_int(n_, o.n_);
  Cyclotomic a = lifted(m), b = o.lifted(m);
  std::vector<Rational> v(a.c_.size() + b.c_.size(), Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (dahakz::is_zero(a.c_[i])) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  a.c_ = reduce_mod(m, std::move(v));
  a.shrink();
  return *this = a;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return (a - b).is_zero(); }

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw std::domain_error("cyclotomic division by zero");
  if (n_ == 1) return Cyclotomic(Rational(1) / c_[0]);
  // solve x * a = 1 using the multiplication matrix of a
  size_t d = c_.size();
  std::vector<std::vector<Rational>> M(d, std::vector<Rational>(d + 1, Rational(0)));
  for (size_t j = 0; j < d; ++j) {
    std::vector<Rational> e(j + 1, Rational(0));
    e[j] = 1;
    Cyclotomic col = *this * Cyclotomic(n_, e);
    col = col.lifted(n_);
    for (size_t i = 0; i < d; ++i) M[i][j] = col.c_[i];
  }
  M[0][d] = 1;
  for (size_t c = 0; c < d; ++c) {
    size_t p = c;
    while (dahakz::is_zero(M[p][c])) ++p;
    std::swap(M[p], M[c]);
    Rational inv = 1 / M[c][c];
    for (size_t k = c; k <= d; ++k) M[c][k] *= inv;
    for (size_t r = 0; r < d; ++r) {
      if (r == c || dahakz::is_zero(M[r][c])) continue;
      Rational f = M[r][c];
      for (size_t k = c; k <= d; ++k) M[r][k] -= f * M[c][k];
    }
  }
  std::vector<Rational> x(d);
  for (size_t i = 0; i < d; ++i) x[i] = M[i][d];
  return Cyclotomic(n_, x);
}

Cyclotomic Cyclotomic::conj() const {
  std::vector<Rational> v(n_, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) v[(n_ - i) % n_] += c_[i];
  return Cyclotomic(n_, v);
}

Cyclotomic Cyclotomic::pow(long e) const { return field_pow(*this, e); }

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> r = 0;
  for (size_t i = 0; i < c_.size(); ++i) r += c_[i].get_d() * std::polar(1.0, 2 * M_PI * double(i) / n_);
  return r;
}

std::string Cyclotomic::to_string() const {
  if (n_ == 1) return dahakz::to_string(c_[0]);
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (dahakz::is_zero(c_[i])) continue;
    if (!first) os << " + ";
    first = false;
    os << dahakz::to_string(c_[i]);
    if (i > 0) os << "*z" << n_ << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace dahakz
