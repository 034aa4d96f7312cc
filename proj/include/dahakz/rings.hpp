#pragma once

#include <map>
#include <vector>

#include "dahakz/affine_weyl.hpp"
#include "dahakz/linalg.hpp"
#include "dahakz/poly.hpp"

namespace dahakz {

// S' = k[xi_1..xi_r] with xi_j = xi_{omega_j^vee}; R = kY (x_beta, root coordinates);
// S = kX^vee (y_{lambda^vee}, fundamental-coweight coordinates).
using XiPoly = QPoly;
using XLaurent = QPoly;
using YLaurent = CycPoly;

XiPoly xi_affine_linear(const AffineLinear& f);
XiPoly xi_of_coweight(const Coweight& lv);
XiPoly xi_of_coroot(const RootDatum& rd, int coroot_k);

// Substitute xi_j -> f_j (affine-linear forms).
XiPoly substitute(const XiPoly& p, const std::vector<AffineLinear>& f);
XiPoly act_xi(const AffineWeyl& aw, const AffineElement& g, const XiPoly& p);
XiPoly act_xi_finite(const RootDatum& rd, int w, const XiPoly& p);
Rational evaluate(const XiPoly& p, const Weight& lambda);

// Exact quotient by a nonzero affine-linear form; throws std::logic_error on remainder.
XiPoly divide_exact(const XiPoly& p, const AffineLinear& f);
// theta_{beta^vee}(p) = (p - s_beta p) / xi_{beta^vee}
XiPoly demazure_xi(const RootDatum& rd, const XiPoly& p, int coroot_k);
// same for the simple affine reflection i in [0, r]; i == r uses xi_{alpha_heart^vee} = 1 - xi_{theta^vee}
XiPoly demazure_xi_simple(const AffineWeyl& aw, const XiPoly& p, int i);

// Lattice permutation action on Laurent polynomials: exponent v -> w v (root coordinates)
// or, with coweight = true, on fundamental-coweight coordinates.
template <class F>
Poly<F> act_lattice(const RootDatum& rd, int w, const Poly<F>& f, bool coweight) {
  Poly<F> out(f.nvars());
  for (auto& [e, c] : f.terms()) out.add_term(coweight ? rd.act_coweight(w, e) : rd.act(w, e), c);
  return out;
}

// Exact quotient g / (1 - x_{-d}) computed string by string along d; throws on remainder.
template <class F>
Poly<F> divide_one_minus(const Poly<F>& g, const IVec& d) {
  size_t piv = d.size();
  for (size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0 && (piv == d.size() || std::abs(d[i]) < std::abs(d[piv]))) piv = i;
  if (piv == d.size()) throw std::logic_error("divide_one_minus: zero direction");
  auto fdiv = [](int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  };
  // string representative -> (k -> coefficient)
  std::map<Exponent, std::map<int, F>> strings;
  for (auto& [e, c] : g.terms()) {
    int k = fdiv(e[piv], d[piv]);
    Exponent rep = e;
    for (size_t i = 0; i < d.size(); ++i) rep[i] -= k * d[i];
    strings[rep][k] += c;
  }
  Poly<F> q(g.nvars());
  for (auto& [rep, ser] : strings) {
    F acc(0);
    int kmin = ser.begin()->first, kmax = ser.rbegin()->first;
    for (int k = kmax; k >= kmin; --k) {
      auto it = ser.find(k);
      if (it != ser.end()) acc += it->second;
      Exponent e = rep;
      for (size_t i = 0; i < d.size(); ++i) e[i] += k * d[i];
      q.add_term(e, acc);
    }
    if (!is_zero(acc)) throw std::logic_error("divide_one_minus: nonzero remainder");
  }
  return q;
}

// theta_beta(f) = (f - s_beta f) / (1 - x_{-beta}) on R = kY.
XLaurent demazure_x(const RootDatum& rd, const XLaurent& f, int root_k);
// (p - s_i p) / (1 - y_{-alpha_i^vee}) on S = kX^vee (Bernstein divided difference).
YLaurent bernstein_difference(const RootDatum& rd, const YLaurent& p, int i);
// y-value of a torus point: y_{lambda^vee}(ell) = prod_j ell_j^{lambda^vee_j}
Cyclotomic y_value(const std::vector<Cyclotomic>& ell, const IVec& lv);
std::vector<Cyclotomic> act_torus(const RootDatum& rd, int w, const std::vector<Cyclotomic>& ell);
// torus point e^lambda, coordinates y_j = e^{lambda_j}
std::vector<Cyclotomic> exp_point(const Weight& lambda);

// Jets: S'/<E>^n (points in X_k) or S/<E>^n (torus points), as a product over the points.
// Basis: (point index, exponent of epsilon with |a| < n), degree-lexicographic per point.
template <class F>
class JetAlgebra {
 public:
  JetAlgebra() = default;
  JetAlgebra(int r, int n, std::vector<std::vector<F>> points);
  int rank() const { return r_; }
  int order() const { return n_; }
  size_t num_points() const { return pts_.size(); }
  const std::vector<F>& point(size_t k) const { return pts_[k]; }
  size_t dim() const { return basis_.size() * pts_.size(); }
  size_t local_dim() const { return basis_.size(); }
  const std::vector<Exponent>& local_basis() const { return basis_; }
  size_t index(size_t pt, const Exponent& e) const { return pt * basis_.size() + idx_.at(e); }
  // coordinates of a local jet (polynomial in epsilon) at point pt
  std::vector<F> embed(size_t pt, const Poly<F>& jet) const;
  Poly<F> local(const std::vector<F>& v, size_t pt) const;
  std::vector<F> multiply(const std::vector<F>& a, const std::vector<F>& b) const;
  // reduction maps: polynomial in xi (additive coordinates) or Laurent in y (multiplicative)
  Poly<F> reduce_additive(const Poly<F>& p, size_t pt) const;
  Poly<F> reduce_multiplicative(const Poly<F>& p, size_t pt) const;
  std::vector<F> reduce_additive(const Poly<F>& p) const;
  std::vector<F> reduce_multiplicative(const Poly<F>& p) const;

 private:
  int r_ = 0, n_ = 1;
  std::vector<std::vector<F>> pts_;
  std::vector<Exponent> basis_;
  std::map<Exponent, size_t> idx_;
};

using QJets = JetAlgebra<Rational>;
using CycJets = JetAlgebra<Cyclotomic>;

// Monomial exponents of degree < n in r variables, degree-lexicographic.
std::vector<Exponent> jet_exponents(int r, int n);

// Checks the regular scope: trivial stabilizer in the affine Weyl group.
void require_regular_weight(const AffineWeyl& aw, const Weight& mu);
void require_regular_torus(const RootDatum& rd, const std::vector<Cyclotomic>& ell);

}  // namespace dahakz
