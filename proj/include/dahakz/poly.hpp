#pragma once

#include <map>
#include <string>
#include <vector>

#include "dahakz/scalar.hpp"

namespace dahakz {

using Exponent = std::vector<int>;

// Sparse (Laurent) polynomial in r variables with coefficients in F.
// Used for S' (xi-polynomials), R = kY (x-Laurent), S = kX^vee (y-Laurent) and jets.
template <class F>
class Poly {
 public:
  using Terms = std::map<Exponent, F>;
  Poly() = default;
  explicit Poly(int nvars) : n_(nvars) {}
  static Poly constant(int nvars, const F& c) {
    Poly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }
  static Poly monomial(const Exponent& e, const F& c = F(1)) {
    Poly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
  }
  static Poly variable(int nvars, int j) {
    Exponent e(nvars, 0);
    e[j] = 1;
    return monomial(e);
  }

  int nvars() const { return n_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }

  void add_term(const Exponent& e, const F& c) {
    if (dahakz::is_zero(c)) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
    } else {
      it->second += c;
      if (dahakz::is_zero(it->second)) t_.erase(it);
    }
  }
  F coeff(const Exponent& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? F(0) : it->second;
  }
  F constant_term() const { return coeff(Exponent(n_, 0)); }

  Poly& operator+=(const Poly& o) {
    if (n_ == 0) n_ = o.n_;
    for (auto& [e, c] : o.t_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (n_ == 0) n_ = o.n_;
    for (auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
  }
  Poly scaled(const F& s) const {
    if (dahakz::is_zero(s)) return Poly(n_);
    Poly r = *this;
    for (auto& [e, c] : r.t_) c *= s;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.n_ ? a.n_ : b.n_);
    for (auto& [ea, ca] : a.t_)
      for (auto& [eb, cb] : b.t_) {
        Exponent e(ea.size());
        for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return (a - b).is_zero(); }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  int total_degree() const {
    int d = -1;
    for (auto& [e, c] : t_) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }
  // Ordinary partial derivative in variable j (polynomial exponents only).
  Poly derivative(int j) const {
    Poly r(n_);
    for (auto& [e, c] : t_) {
      if (e[j] == 0) continue;
      Exponent f = e;
      f[j] -= 1;
      r.add_term(f, c * F(e[j]));
    }
    return r;
  }
  // Drop all terms of total degree >= n.
  Poly truncated(int n) const {
    Poly r(n_);
    for (auto& [e, c] : t_) {
      int s = 0;
      for (int x : e) s += x;
      if (s < n) r.t_.emplace(e, c);
    }
    return r;
  }
  template <class G>
  G evaluate(const std::vector<G>& x) const {
    G r(0);
    for (auto& [e, c] : t_) {
      G m = G(c);
      for (size_t i = 0; i < e.size(); ++i) m *= field_pow(x[i], e[i]);
      r += m;
    }
    return r;
  }

 private:
  int n_ = 0;
  Terms t_;
};

using QPoly = Poly<Rational>;
using CycPoly = Poly<Cyclotomic>;

template <class F>
std::string to_string(const Poly<F>& p, const std::string& var = "v") {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto& [e, c] : p.terms()) {
    if (!first) s += " + ";
    first = false;
    s += "(" + to_string(c) + ")";
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) s += "*" + var + std::to_string(i + 1) + (e[i] != 1 ? "^" + std::to_string(e[i]) : "");
  }
  return s;
}

}  // namespace dahakz
