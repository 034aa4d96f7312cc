#include "dahakz/arrangements.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "dahakz/rings.hpp"

namespace dahakz {

namespace {

// scale so the first nonzero coefficient has absolute value 1
void normalize(Inequality& q) {
  Rational s(0);
  for (auto& x : q.a)
    if (x != 0) {
      s = abs(x);
      break;
    }
  if (s == 0) return;
  for (auto& x : q.a) x /= s;
  q.b /= s;
}

std::vector<Inequality> dedupe(std::vector<Inequality> v) {
  // keep the tightest constraint per direction
  std::map<std::vector<Rational>, Inequality> best;
  for (auto& q : v) {
    normalize(q);
    auto it = best.find(q.a);
    if (it == best.end()) {
      best.emplace(q.a, q);
      continue;
    }
    Inequality& o = it->second;
    if (q.b < o.b || (q.b == o.b && q.strict)) o = q;
  }
  std::vector<Inequality> out;
  for (auto& [a, q] : best) out.push_back(q);
  return out;
}

}  // namespace

std::optional<std::vector<Rational>> fm_solve(const std::vector<Inequality>& sys, int dim) {
  std::vector<std::vector<Inequality>> stage(dim + 1);
  stage[0] = dedupe(sys);
  for (int k = 0; k < dim; ++k) {
    std::vector<Inequality> pos, neg, next;
    for (auto& q : stage[k]) {
      int s = sgn(q.a[k]);
      if (s > 0)
        pos.push_back(q);
      else if (s < 0)
        neg.push_back(q);
      else
        next.push_back(q);
    }
    for (auto& p : pos)
      for (auto& n : neg) {
        Inequality c;
        Rational fp = -n.a[k], fn = p.a[k];
        c.a.resize(dim);
        for (int j = 0; j < dim; ++j) c.a[j] = fp * p.a[j] + fn * n.a[j];
        c.a[k] = 0;
        c.b = fp * p.b + fn * n.b;
        c.strict = p.strict || n.strict;
        next.push_back(c);
      }
    stage[k + 1] = dedupe(next);
  }
  for (auto& q : stage[dim]) {
    if (q.strict ? q.b <= 0 : q.b < 0) return std::nullopt;
  }
  std::vector<Rational> x(dim, Rational(0));
  for (int k = dim - 1; k >= 0; --k) {
    std::optional<Rational> lo, hi;
    for (auto& q : stage[k]) {
      if (q.a[k] == 0) continue;
      Rational c = q.b;
      for (int j = k + 1; j < dim; ++j) c += q.a[j] * x[j];
      Rational bnd = -c / q.a[k];
      if (q.a[k] > 0) {
        if (!lo || bnd > *lo) lo = bnd;
      } else {
        if (!hi || bnd < *hi) hi = bnd;
      }
    }
    if (lo && hi)
      x[k] = (*lo + *hi) / 2;
    else if (lo)
      x[k] = *lo + 1;
    else if (hi)
      x[k] = *hi - 1;
    else
      x[k] = 0;
  }
  return x;
}

std::vector<AffineCoroot> critical_arrangement(const HeckeParams& p, const Weight& lambda) {
  const auto& R = *p.rd;
  std::set<AffineCoroot> out;
  for (int k = 0; k < R.num_roots(); ++k) {
    Rational v = R.pair(lambda, R.coroot(k));
    Rational h = p.h_root(k);
    for (Rational t : {h, Rational(-h)}) {
      Rational r = t - v;
      if (is_integer(r)) out.insert({k, r});
    }
  }
  return {out.begin(), out.end()};
}

std::vector<AffineCoroot> canonical_hyperplanes(const RootDatum& rd, const std::vector<AffineCoroot>& hs) {
  std::set<AffineCoroot> out;
  for (auto& h : hs) {
    if (rd.is_positive(h.k))
      out.insert(h);
    else
      out.insert({rd.negate(h.k), -h.r});
  }
  return {out.begin(), out.end()};
}

Arrangement::Arrangement(RootDatumPtr rd, std::vector<AffineCoroot> hyperplanes)
    : rd_(std::move(rd)), hs_(std::move(hyperplanes)) {
  const int r = rd_->rank();
  auto ineq = [&](size_t h, int s) {
    Inequality q;
    IVec c = rd_->coroot_in_coweight_basis(rd_->coroot(hs_[h].k));
    q.a.resize(r);
    for (int j = 0; j < r; ++j) q.a[j] = s * c[j];
    q.b = s * hs_[h].r;
    q.strict = true;
    return q;
  };
  // incremental splitting: every prefix sign vector kept is realizable
  std::vector<std::vector<int>> cur{{}};
  for (size_t h = 0; h < hs_.size(); ++h) {
    std::vector<std::vector<int>> nxt;
    for (auto& sv : cur)
      for (int s : {1, -1}) {
        std::vector<Inequality> sys;
        for (size_t g = 0; g < sv.size(); ++g) sys.push_back(ineq(g, sv[g]));
        sys.push_back(ineq(h, s));
        if (fm_solve(sys, r)) {
          auto t = sv;
          t.push_back(s);
          nxt.push_back(t);
        }
      }
    cur = std::move(nxt);
  }
  std::sort(cur.begin(), cur.end());
  for (auto& sv : cur) {
    Cell c;
    c.signs = sv;
    std::vector<Inequality> sys;
    for (size_t g = 0; g < sv.size(); ++g) sys.push_back(ineq(g, sv[g]));
    c.point = *fm_solve(sys, r);
    // bounded iff the recession cone {d : s (c.d) >= 0} is zero
    c.bounded = true;
    for (int j = 0; j < r && c.bounded; ++j)
      for (int s : {1, -1}) {
        std::vector<Inequality> cone;
        for (auto q : sys) {
          q.b = 0;
          q.strict = false;
          cone.push_back(q);
        }
        Inequality e;
        e.a.assign(r, Rational(0));
        e.a[j] = s;
        e.b = 0;
        cone.push_back(e);
        if (fm_solve(cone, r)) {
          c.bounded = false;
          break;
        }
      }
    idx_[sv] = static_cast<int>(cells_.size());
    cells_.push_back(c);
  }
}

std::optional<std::vector<int>> Arrangement::signs_of(const Weight& mu) const {
  std::vector<int> sv;
  for (auto& h : hs_) {
    Rational v = rd_->pair(mu, rd_->coroot(h.k)) + h.r;
    if (v == 0) return std::nullopt;
    sv.push_back(v > 0 ? 1 : -1);
  }
  return sv;
}

int Arrangement::cell_of(const Weight& mu) const {
  auto sv = signs_of(mu);
  if (!sv) return -1;
  auto it = idx_.find(*sv);
  if (it == idx_.end()) throw std::logic_error("point realizes an unlisted sign vector");
  return it->second;
}

bool Arrangement::realizable(const std::vector<int>& signs) const { return idx_.count(signs) > 0; }

namespace {

// union of cells into orbits under a set of generators acting on points
std::vector<int> orbit_labels(const Arrangement& arr, const std::function<std::vector<Weight>(const Weight&)>& images) {
  size_t n = arr.cells().size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (size_t c = 0; c < n; ++c)
    for (auto& q : images(arr.cells()[c].point)) {
      int d = arr.cell_of(q);
      if (d < 0) throw std::logic_error("group element does not preserve the arrangement");
      parent[find(static_cast<int>(c))] = find(d);
    }
  std::map<int, int> lab;
  std::vector<int> out(n);
  for (size_t c = 0; c < n; ++c) {
    int root = find(static_cast<int>(c));
    if (!lab.count(root)) lab[root] = static_cast<int>(lab.size());
    out[c] = lab[root];
  }
  return out;
}

}  // namespace

int AffineDomains::domain_of_point(const Weight& mu) const {
  int c = arr.cell_of(mu);
  return c < 0 ? -1 : domain_of_cell[c];
}

int AffineDomains::bounded_count() const {
  int n = 0;
  for (auto& d : domains) n += d.bounded;
  return n;
}

AffineDomains affine_domains(const AffineWeyl& aw, const HeckeParams& p, const Weight& lambda) {
  const auto& R = aw.datum();
  AffineDomains out{Arrangement(p.rd, canonical_hyperplanes(R, critical_arrangement(p, lambda))), {}, {}};
  auto st = aw.stabilizer(lambda, 0);
  out.domain_of_cell = orbit_labels(out.arr, [&](const Weight& mu) {
    std::vector<Weight> v;
    for (auto& g : st.certificate) v.push_back(aw.act(g, mu));
    return v;
  });
  int nd = 0;
  for (int x : out.domain_of_cell) nd = std::max(nd, x + 1);
  out.domains.resize(nd);
  for (auto& d : out.domains) d.bounded = true;
  for (size_t c = 0; c < out.arr.cells().size(); ++c) {
    auto& d = out.domains[out.domain_of_cell[c]];
    d.cells.push_back(static_cast<int>(c));
    d.bounded = d.bounded && out.arr.cells()[c].bounded;
  }

  // family lambda = rho/n, h = k/n with n the Coxeter number
  int n = R.coxeter_number();
  bool uniform = std::all_of(p.h.begin(), p.h.end(), [&](const Rational& x) { return x == p.h[0]; });
  Weight rn = R.rho();
  for (auto& x : rn) x /= n;
  Rational kq = p.h[0] * n;
  if (uniform && lambda == rn && is_integer(kq) && kq > 0 && std::gcd(to_long(kq), static_cast<long>(n)) == 1) {
    out.family = true;
    out.n = n;
    out.k = static_cast<int>(to_long(kq));
    int a = out.k / n, b = out.k % n;
    for (int kk = 0; kk < R.num_roots(); ++kk) {
      Rational ht = R.pair(R.rho(), R.coroot(kk));
      if (ht == -b) out.I_k.push_back({kk, Rational(-a)});
    }
    for (int kk = 0; kk < R.num_roots(); ++kk) {
      Rational ht = R.pair(R.rho(), R.coroot(kk));
      if (ht == n - b) out.I_k.push_back({kk, Rational(-1 - a)});
    }
    out.J_of_domain.assign(nd, 0);
    for (int d = 0; d < nd; ++d) {
      const Weight& mu = out.arr.cells()[out.domains[d].cells[0]].point;
      unsigned J = 0;
      for (size_t i = 0; i < out.I_k.size(); ++i)
        if (R.pair(mu, R.coroot(out.I_k[i].k)) + out.I_k[i].r < 0) J |= 1u << i;
      out.J_of_domain[d] = J;
      std::string s = "J={";
      for (size_t i = 0; i < out.I_k.size(); ++i)
        if (J >> i & 1) s += (s.back() == '{' ? "" : ",") + std::to_string(i);
      out.domains[d].label = s + "}";
    }
  } else {
    for (int d = 0; d < nd; ++d) out.domains[d].label = "D" + std::to_string(d);
  }
  return out;
}

Alcove alcove_of(const AffineWeyl& aw, const AffineElement& w) { return {w, aw.act(aw.inverse(w), aw.alcove_sample())}; }

int domain_of(const AffineWeyl& aw, const AffineDomains& d, const AffineElement& w) {
  int x = d.domain_of_point(alcove_of(aw, w).sample);
  if (x < 0) throw std::logic_error("alcove sample lies on a critical hyperplane");
  return x;
}

std::vector<Weight> domain_character(const AffineWeyl& aw, const AffineDomains& d, int domain, const Weight& lambda0,
                                     int L) {
  std::vector<Weight> out;
  for (auto& [g, l] : aw.ball(L))
    if (domain_of(aw, d, g) == domain) out.push_back(aw.act(g, lambda0));
  return out;
}

int domain_with_label(const AffineDomains& d, unsigned J) {
  for (size_t i = 0; i < d.J_of_domain.size(); ++i)
    if (d.J_of_domain[i] == J) return static_cast<int>(i);
  return -1;
}

int ChamberDomains::domain_of_point(const Weight& mu) const {
  int c = arr.cell_of(mu);
  return c < 0 ? -1 : domain_of_cell[c];
}

ChamberDomains chamber_domains(const AhaParams& p, const std::vector<Cyclotomic>& ell) {
  const auto& R = *p.rd;
  std::vector<AffineCoroot> hs;
  std::vector<int> ks;
  for (int k = 0; k < R.num_positive(); ++k) {
    Cyclotomic y = y_value(ell, R.coroot_in_coweight_basis(R.coroot(k)));
    Cyclotomic z = p.zeta_root(k);
    if (y == z || y * z == Cyclotomic(1)) {
      hs.push_back({k, Rational(0)});
      ks.push_back(k);
    }
  }
  ChamberDomains out{Arrangement(p.rd, hs), ks, {}, {}, {}};
  for (int w = 0; w < R.order(); ++w)
    if (act_torus(R, w, ell) == ell) out.W_ell.push_back(w);
  out.domain_of_cell = orbit_labels(out.arr, [&](const Weight& mu) {
    std::vector<Weight> v;
    for (int w : out.W_ell) v.push_back(R.act(w, mu));
    return v;
  });
  int nd = 0;
  for (int x : out.domain_of_cell) nd = std::max(nd, x + 1);
  out.domains.resize(nd);
  for (size_t c = 0; c < out.arr.cells().size(); ++c) out.domains[out.domain_of_cell[c]].cells.push_back(static_cast<int>(c));
  for (int d = 0; d < nd; ++d) out.domains[d].label = "C" + std::to_string(d);
  return out;
}

int chamber_domain_of(const ChamberDomains& cd, int w) {
  const auto& R = cd.arr.datum();
  return cd.domain_of_point(R.act(R.inv(w), R.rho()));
}

DaggerResult dagger(const AffineWeyl& aw, const AffineDomains& ad, const ChamberDomains& cd) {
  const auto& R = aw.datum();
  DaggerResult res;
  res.image.assign(cd.domains.size(), -1);
  bool consistent = true;
  for (int w = 0; w < R.order(); ++w) {
    int dd = chamber_domain_of(cd, w);
    Weight q = R.act(R.inv(w), R.rho());
    // sign vector over H_lambda is constant once T exceeds every |r| / |(q : beta^vee)|
    Rational bound(0);
    for (auto& h : ad.arr.hyperplanes()) {
      Rational v = abs(R.pair(q, R.coroot(h.k)));
      Rational q = abs(h.r) / v;
      if (q > bound) bound = q;
    }
    Rational T(1);
    std::optional<std::vector<int>> prev;
    while (true) {
      Weight tq = q;
      for (auto& x : tq) x *= T;
      auto sv = ad.arr.signs_of(tq);
      if (T > bound && sv && prev && *sv == *prev) break;
      prev = sv;
      T *= 2;
    }
    Weight tq = q;
    for (auto& x : tq) x *= T;
    int img = ad.domain_of_point(tq);
    if (res.image[dd] < 0)
      res.image[dd] = img;
    else if (res.image[dd] != img)
      consistent = false;
  }
  std::set<int> seen(res.image.begin(), res.image.end());
  res.injective = consistent && seen.size() == res.image.size() && !seen.count(-1);
  return res;
}

}  // namespace dahakz
