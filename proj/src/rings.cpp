#include "dahakz/rings.hpp"

#include <algorithm>
#include <functional>

namespace dahakz {

XiPoly xi_affine_linear(const AffineLinear& f) {
  int r = static_cast<int>(f.lv.size());
  XiPoly p = XiPoly::constant(r, f.c);
  for (int j = 0; j < r; ++j) p.add_term([&] {
      Exponent e(r, 0);
      e[j] = 1;
      return e;
    }(), f.lv[j]);
  return p;
}

XiPoly xi_of_coweight(const Coweight& lv) { return xi_affine_linear({lv, Rational(0)}); }

XiPoly xi_of_coroot(const RootDatum& rd, int k) { return xi_of_coweight(rd.coroot_as_coweight(rd.coroot(k))); }

XiPoly substitute(const XiPoly& p, const std::vector<AffineLinear>& f) {
  int r = p.nvars();
  std::vector<XiPoly> lin;
  for (auto& x : f) lin.push_back(xi_affine_linear(x));
  std::vector<std::vector<XiPoly>> pw(r);
  XiPoly out(r);
  for (auto& [e, c] : p.terms()) {
    XiPoly m = XiPoly::constant(r, c);
    for (int j = 0; j < r; ++j) {
      if (e[j] == 0) continue;
      auto& cache = pw[j];
      if (cache.empty()) cache.push_back(XiPoly::constant(r, Rational(1)));
      while (static_cast<int>(cache.size()) <= e[j]) cache.push_back(cache.back() * lin[j]);
      m = m * cache[e[j]];
    }
    out += m;
  }
  return out;
}

XiPoly act_xi(const AffineWeyl& aw, const AffineElement& g, const XiPoly& p) {
  const auto& R = aw.datum();
  int r = R.rank();
  std::vector<AffineLinear> f;
  for (int j = 0; j < r; ++j) {
    Coweight e(r, Rational(0));
    e[j] = 1;
    f.push_back(aw.act(g, AffineLinear{e, Rational(0)}));
  }
  return substitute(p, f);
}

XiPoly act_xi_finite(const RootDatum& R, int w, const XiPoly& p) {
  if (w == 0) return p;
  int r = R.rank();
  std::vector<AffineLinear> f;
  for (int j = 0; j < r; ++j) {
    Coweight e(r, Rational(0));
    e[j] = 1;
    f.push_back({R.act_coweight(w, e), Rational(0)});
  }
  return substitute(p, f);
}

Rational evaluate(const XiPoly& p, const Weight& lambda) { return p.evaluate<Rational>(lambda); }

XiPoly divide_exact(const XiPoly& p, const AffineLinear& f) {
  int r = p.nvars();
  int m = -1;
  for (int j = r - 1; j >= 0; --j)
    if (f.lv[j] != 0) {
      m = j;
      break;
    }
  XiPoly fp = xi_affine_linear(f);
  if (m < 0) {
    if (f.c == 0) throw std::domain_error("division by zero form");
    return p.scaled(1 / f.c);
  }
  Rational a = f.lv[m];
  XiPoly rem = p, quo(r);
  while (true) {
    int d = 0;
    for (auto& [e, c] : rem.terms()) d = std::max(d, e[m]);
    if (d == 0) break;
    XiPoly t(r);
    for (auto& [e, c] : rem.terms())
      if (e[m] == d) {
        Exponent e2 = e;
        e2[m] -= 1;
        t.add_term(e2, c / a);
      }
    quo += t;
    rem -= t * fp;
  }
  if (!rem.is_zero()) throw std::logic_error("divide_exact: nonzero remainder " + to_string(rem, "xi"));
  return quo;
}

XiPoly demazure_xi(const RootDatum& R, const XiPoly& p, int k) {
  XiPoly num = p - act_xi_finite(R, R.reflection(k), p);
  if (num.is_zero()) return XiPoly(p.nvars());
  return divide_exact(num, {R.coroot_as_coweight(R.coroot(k)), Rational(0)});
}

XiPoly demazure_xi_simple(const AffineWeyl& aw, const XiPoly& p, int i) {
  const auto& R = aw.datum();
  if (i < R.rank()) return demazure_xi(R, p, R.simple_root_index(i));
  XiPoly num = p - act_xi(aw, aw.simple(i), p);
  if (num.is_zero()) return XiPoly(p.nvars());
  Coweight th = R.coroot_as_coweight(R.coroot(R.highest_root()));
  for (auto& x : th) x = -x;
  return divide_exact(num, {th, Rational(1)});
}

XLaurent demazure_x(const RootDatum& R, const XLaurent& f, int k) {
  XLaurent num = f - act_lattice(R, R.reflection(k), f, false);
  if (num.is_zero()) return XLaurent(f.nvars());
  return divide_one_minus(num, R.root(k));
}

YLaurent bernstein_difference(const RootDatum& R, const YLaurent& p, int i) {
  YLaurent num = p - act_lattice(R, R.simple(i), p, true);
  if (num.is_zero()) return YLaurent(p.nvars());
  IVec av = R.coroot_in_coweight_basis(R.coroot(R.simple_root_index(i)));
  return divide_one_minus(num, av);
}

Cyclotomic y_value(const std::vector<Cyclotomic>& ell, const IVec& lv) {
  Cyclotomic r(1);
  for (size_t j = 0; j < lv.size(); ++j)
    if (lv[j]) r *= ell[j].pow(lv[j]);
  return r;
}

std::vector<Cyclotomic> act_torus(const RootDatum& R, int w, const std::vector<Cyclotomic>& ell) {
  int r = R.rank();
  std::vector<Cyclotomic> out(r);
  int wi = R.inv(w);
  for (int j = 0; j < r; ++j) {
    IVec e(r, 0);
    e[j] = 1;
    out[j] = y_value(ell, R.act_coweight(wi, e));
  }
  return out;
}

std::vector<Cyclotomic> exp_point(const Weight& lambda) {
  std::vector<Cyclotomic> out;
  for (auto& x : lambda) out.push_back(Cyclotomic::root_of_unity(x));
  return out;
}

std::vector<Exponent> jet_exponents(int r, int n) {
  std::vector<Exponent> out;
  Exponent e(r, 0);
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == r) {
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[j] = k;
      rec(j + 1, left - k);
    }
    e[j] = 0;
  };
  rec(0, n - 1);
  std::sort(out.begin(), out.end(), [](const Exponent& a, const Exponent& b) {
    int da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da < db;
    return a > b;
  });
  return out;
}

template <class F>
JetAlgebra<F>::JetAlgebra(int r, int n, std::vector<std::vector<F>> points) : r_(r), n_(n), pts_(std::move(points)) {
  if (n < 1) throw ConfigError("jet order must be >= 1");
  for (size_t a = 0; a < pts_.size(); ++a)
    for (size_t b = a + 1; b < pts_.size(); ++b)
      if (pts_[a] == pts_[b]) throw ScopeError("jet points must be pairwise distinct");
  basis_ = jet_exponents(r, n);
  for (size_t k = 0; k < basis_.size(); ++k) idx_[basis_[k]] = k;
}

template <class F>
std::vector<F> JetAlgebra<F>::embed(size_t pt, const Poly<F>& jet) const {
  std::vector<F> v(dim(), F(0));
  for (auto& [e, c] : jet.terms()) {
    auto it = idx_.find(e);
    if (it != idx_.end()) v[pt * basis_.size() + it->second] += c;
  }
  return v;
}

template <class F>
Poly<F> JetAlgebra<F>::local(const std::vector<F>& v, size_t pt) const {
  Poly<F> p(r_);
  for (size_t k = 0; k < basis_.size(); ++k) p.add_term(basis_[k], v[pt * basis_.size() + k]);
  return p;
}

template <class F>
std::vector<F> JetAlgebra<F>::multiply(const std::vector<F>& a, const std::vector<F>& b) const {
  std::vector<F> out(dim(), F(0));
  for (size_t pt = 0; pt < pts_.size(); ++pt) {
    Poly<F> prod = (local(a, pt) * local(b, pt)).truncated(n_);
    auto v = embed(pt, prod);
    for (size_t k = 0; k < out.size(); ++k) out[k] += v[k];
  }
  return out;
}

template <class F>
Poly<F> JetAlgebra<F>::reduce_additive(const Poly<F>& p, size_t pt) const {
  // xi_j = mu_j + eps_j
  std::vector<std::vector<Poly<F>>> pw(r_);
  Poly<F> out(r_);
  for (auto& [e, c] : p.terms()) {
    Poly<F> m = Poly<F>::constant(r_, c);
    for (int j = 0; j < r_; ++j) {
      if (e[j] == 0) continue;
      if (e[j] < 0) throw std::logic_error("reduce_additive: negative exponent");
      auto& cache = pw[j];
      if (cache.empty()) {
        cache.push_back(Poly<F>::constant(r_, F(1)));
      }
      Poly<F> lin = Poly<F>::constant(r_, pts_[pt][j]) + Poly<F>::variable(r_, j);
      while (static_cast<int>(cache.size()) <= e[j]) cache.push_back((cache.back() * lin).truncated(n_));
      m = (m * cache[e[j]]).truncated(n_);
    }
    out += m;
  }
  return out;
}

template <class F>
Poly<F> JetAlgebra<F>::reduce_multiplicative(const Poly<F>& p, size_t pt) const {
  std::map<std::pair<int, int>, Poly<F>> cache;
  auto power = [&](int j, int k) -> Poly<F> {
    auto key = std::make_pair(j, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Poly<F> base(r_);
    const F& m = pts_[pt][j];
    if (k >= 0) {
      base = Poly<F>::constant(r_, m) + Poly<F>::variable(r_, j);
    } else {
      // (m + eps)^{-1} = m^{-1} sum_k (-eps/m)^k
      F minv = F(1) / m;
      Poly<F> term = Poly<F>::constant(r_, minv);
      Poly<F> step = Poly<F>::variable(r_, j).scaled(-minv);
      base = Poly<F>(r_);
      for (int q = 0; q < n_; ++q) {
        base += term;
        term = (term * step).truncated(n_);
      }
    }
    Poly<F> acc = Poly<F>::constant(r_, F(1));
    for (int q = 0; q < std::abs(k); ++q) acc = (acc * base).truncated(n_);
    cache[key] = acc;
    return acc;
  };
  Poly<F> out(r_);
  for (auto& [e, c] : p.terms()) {
    Poly<F> m = Poly<F>::constant(r_, c);
    for (int j = 0; j < r_; ++j)
      if (e[j] != 0) m = (m * power(j, e[j])).truncated(n_);
    out += m;
  }
  return out;
}

template <class F>
std::vector<F> JetAlgebra<F>::reduce_additive(const Poly<F>& p) const {
  std::vector<F> v(dim(), F(0));
  for (size_t pt = 0; pt < pts_.size(); ++pt) {
    auto e = embed(pt, reduce_additive(p, pt));
    for (size_t k = 0; k < v.size(); ++k) v[k] += e[k];
  }
  return v;
}

template <class F>
std::vector<F> JetAlgebra<F>::reduce_multiplicative(const Poly<F>& p) const {
  std::vector<F> v(dim(), F(0));
  for (size_t pt = 0; pt < pts_.size(); ++pt) {
    auto e = embed(pt, reduce_multiplicative(p, pt));
    for (size_t k = 0; k < v.size(); ++k) v[k] += e[k];
  }
  return v;
}

template class JetAlgebra<Rational>;
template class JetAlgebra<Cyclotomic>;

void require_regular_weight(const AffineWeyl& aw, const Weight& mu) {
  auto st = aw.stabilizer(mu, 0);
  if (st.certificate.size() != 1)
    throw ScopeError("weight " + weight_to_string(mu) + " has a nontrivial stabilizer (outside the regular scope)");
}

void require_regular_torus(const RootDatum& R, const std::vector<Cyclotomic>& ell) {
  for (int w = 1; w < R.order(); ++w)
    if (act_torus(R, w, ell) == ell) throw ScopeError("torus point has a nontrivial W-stabilizer (outside the regular scope)");
}

}  // namespace dahakz
