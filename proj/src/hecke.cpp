#include "dahakz/hecke.hpp"

#include <functional>

namespace dahakz {

namespace {

template <class K, class P>
void add_to(std::map<K, P>& m, const K& k, const P& p) {
  if (p.is_zero()) return;
  auto it = m.find(k);
  if (it == m.end()) {
    m.emplace(k, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) m.erase(it);
}

}  // namespace

DahaElement& DahaElement::add(const AffineElement& g, const XiPoly& p) {
  add_to(terms, g, p);
  return *this;
}

DahaElement DahaElement::operator+(const DahaElement& o) const {
  DahaElement out = *this;
  for (auto& [g, p] : o.terms) out.add(g, p);
  return out;
}

DahaElement DahaElement::operator-(const DahaElement& o) const {
  DahaElement out = *this;
  for (auto& [g, p] : o.terms) out.add(g, -p);
  return out;
}

DahaElement DahaElement::scaled(const Rational& c) const {
  DahaElement out{r, {}};
  for (auto& [g, p] : terms) out.add(g, p.scaled(c));
  return out;
}

Daha::Daha(const AffineWeyl& aw, HeckeParams p) : aw_(aw), p_(std::move(p)) {}

DahaElement Daha::scalar(const Rational& c) const { return xi(XiPoly::constant(rank(), c)); }

DahaElement Daha::group(const AffineElement& g) const {
  DahaElement e = zero();
  e.add(g, XiPoly::constant(rank(), Rational(1)));
  return e;
}

DahaElement Daha::xi(const XiPoly& p) const {
  DahaElement e = zero();
  e.add(aw_.identity(), p);
  return e;
}

DahaElement Daha::laurent(const XLaurent& f) const {
  DahaElement e = zero();
  for (auto& [ex, c] : f.terms()) e.add(aw_.translation(ex), XiPoly::constant(rank(), c));
  return e;
}

Rational Daha::h_simple(int i) const {
  const auto& R = datum();
  if (i < rank()) return p_.h_simple(i);
  return p_.h_root(R.negate(R.highest_root()));
}

XiPoly Daha::xi_simple_coroot(int i) const {
  const auto& R = datum();
  if (i < rank()) return xi_of_coroot(R, R.simple_root_index(i));
  return XiPoly::constant(rank(), Rational(1)) - xi_of_coroot(R, R.highest_root());
}

std::vector<int> random_reduced_word(const AffineWeyl& aw, const AffineElement& g, std::mt19937_64& rng) {
  std::vector<int> word;
  AffineElement cur = g;
  int L = aw.length(cur);
  while (L > 0) {
    std::vector<std::pair<int, AffineElement>> desc;
    for (int i = 0; i <= aw.rank(); ++i) {
      AffineElement nxt = aw.mul(aw.simple(i), cur);
      if (aw.length(nxt) < L) desc.push_back({i, nxt});
    }
    auto& pick = desc[rng() % desc.size()];
    word.push_back(pick.first);
    cur = pick.second;
    --L;
  }
  return word;
}

std::map<AffineElement, XiPoly> Daha::commute_monomial(const Exponent& e, const AffineElement& g,
                                                       const std::vector<int>& word) const {
  std::map<AffineElement, XiPoly> state;
  state.emplace(aw_.identity(), XiPoly::monomial(e));
  for (int i : word) {
    std::map<AffineElement, XiPoly> nxt;
    AffineElement si = aw_.simple(i);
    Rational h = h_simple(i);
    for (auto& [k, q] : state) {
      // q s_i = s_i (s_i q) + h_i theta_i(q)
      add_to(nxt, aw_.mul(k, si), act_xi(aw_, si, q));
      if (h != 0) add_to(nxt, k, demazure_xi_simple(aw_, q, i).scaled(h));
    }
    state = std::move(nxt);
  }
  (void)g;
  return state;
}

std::map<AffineElement, XiPoly> Daha::commute(const XiPoly& p, const AffineElement& g, std::mt19937_64* rng) const {
  std::map<AffineElement, XiPoly> out;
  std::vector<int> word;
  if (rng) word = random_reduced_word(aw_, g, *rng);
  else word = aw_.reduced_word(g);
  for (auto& [e, c] : p.terms()) {
    std::map<AffineElement, XiPoly> part;
    if (!rng) {
      auto key = std::make_pair(e, g);
      std::unique_lock<std::mutex> lock(mu_);
      auto it = cache_.find(key);
      if (it != cache_.end()) {
        part = it->second;
      } else {
        lock.unlock();
        part = commute_monomial(e, g, word);
        lock.lock();
        cache_.emplace(key, part);
      }
    } else {
      part = commute_monomial(e, g, word);
    }
    for (auto& [k, q] : part) add_to(out, k, q.scaled(c));
  }
  return out;
}

DahaElement Daha::mul(const DahaElement& a, const DahaElement& b, std::mt19937_64* rng) const {
  DahaElement out = zero();
  for (auto& [g1, p1] : a.terms)
    for (auto& [g2, p2] : b.terms)
      for (auto& [k, q] : commute(p1, g2, rng)) out.add(aw_.mul(g1, k), q * p2);
  return out;
}

DahaElement Daha::intertwiner(int i) const {
  DahaElement s = simple(i);
  return mul(s, xi(xi_simple_coroot(i))) - scalar(h_simple(i));
}

DahaElement Daha::intertwiner(const std::vector<int>& word) const {
  DahaElement out = scalar(Rational(1));
  for (int i : word) out = mul(out, intertwiner(i));
  return out;
}

DunklRep::DunklRep(const Daha& H) : H_(H), rho_tilde_(H.params().rho_tilde()) {}

XLaurent DunklRep::D(int j, const XLaurent& f) const {
  const auto& R = H_.datum();
  XLaurent out(f.nvars());
  for (auto& [e, c] : f.terms())
    if (e[j] != 0) out.add_term(e, c * e[j]);
  for (int k = 0; k < R.num_positive(); ++k) {
    int bj = R.root(k)[j];
    Rational h = H_.params().h_root(k);
    if (bj == 0 || h == 0) continue;
    out -= demazure_x(R, f, k).scaled(h * bj);
  }
  if (rho_tilde_[j] != 0) out += f.scaled(rho_tilde_[j]);
  return out;
}

XLaurent DunklRep::apply_xi(const XiPoly& p, const XLaurent& f) const {
  XLaurent out(f.nvars());
  // cache D^a f along the exponent lattice
  std::map<Exponent, XLaurent> memo;
  std::function<const XLaurent&(const Exponent&)> get = [&](const Exponent& a) -> const XLaurent& {
    auto it = memo.find(a);
    if (it != memo.end()) return it->second;
    int j = 0;
    while (j < static_cast<int>(a.size()) && a[j] == 0) ++j;
    XLaurent v(f.nvars());
    if (j == static_cast<int>(a.size())) {
      v = f;
    } else {
      Exponent b = a;
      --b[j];
      v = D(j, get(b));
    }
    return memo.emplace(a, v).first->second;
  };
  for (auto& [e, c] : p.terms()) out += get(e).scaled(c);
  return out;
}

XLaurent DunklRep::apply(const DahaElement& a, const XLaurent& f) const {
  const auto& R = H_.datum();
  XLaurent out(f.nvars());
  for (auto& [g, p] : a.terms) {
    XLaurent v = act_lattice(R, g.w, apply_xi(p, f), false);
    out += v * XLaurent::monomial(g.t);
  }
  return out;
}

RepCheckReport polynomial_rep_check(const Daha& H, const std::vector<DahaElement>& sample, int d) {
  RepCheckReport rep;
  DunklRep D(H);
  int r = H.rank();
  std::vector<XLaurent> vecs;
  Exponent e(r, -d);
  while (true) {
    vecs.push_back(XLaurent::monomial(e));
    int j = 0;
    while (j < r && e[j] == d) e[j++] = -d;
    if (j == r) break;
    ++e[j];
  }
  rep.test_vectors = static_cast<int>(vecs.size());
  for (auto& a : sample) {
    if (a.is_zero()) continue;
    bool all_zero = true;
    for (auto& f : vecs)
      if (!D.apply(a, f).is_zero()) {
        all_zero = false;
        break;
      }
    rep.zero_actions += all_zero;
  }
  for (size_t i = 0; i < sample.size(); ++i)
    for (size_t j = 0; j < sample.size(); ++j) {
      DahaElement ab = H.mul(sample[i], sample[j]);
      ++rep.products;
      for (auto& f : vecs)
        if (D.apply(ab, f) != D.apply(sample[i], D.apply(sample[j], f))) {
          ++rep.mismatches;
          break;
        }
    }
  return rep;
}

// ---------------------------------------------------------------- AHA

AhaElement& AhaElement::add(int w, const YLaurent& p) {
  add_to(terms, w, p);
  return *this;
}

AhaElement AhaElement::operator+(const AhaElement& o) const {
  AhaElement out = *this;
  for (auto& [w, p] : o.terms) out.add(w, p);
  return out;
}

AhaElement AhaElement::operator-(const AhaElement& o) const {
  AhaElement out = *this;
  for (auto& [w, p] : o.terms) out.add(w, -p);
  return out;
}

AhaElement AhaElement::scaled(const Cyclotomic& c) const {
  AhaElement out{r, {}};
  for (auto& [w, p] : terms) out.add(w, p.scaled(c));
  return out;
}

Aha::Aha(AhaParams p) : p_(std::move(p)) {}

AhaElement Aha::scalar(const Cyclotomic& c) const { return poly(YLaurent::constant(rank(), c)); }

AhaElement Aha::t(int w) const {
  AhaElement e = zero();
  e.add(w, YLaurent::constant(rank(), Cyclotomic(1)));
  return e;
}

AhaElement Aha::y(const IVec& lv) const { return poly(YLaurent::monomial(lv)); }

AhaElement Aha::poly(const YLaurent& p) const {
  AhaElement e = zero();
  e.add(0, p);
  return e;
}

std::vector<int> random_reduced_word(const RootDatum& R, int w, std::mt19937_64& rng) {
  std::vector<int> word;
  int cur = w;
  while (R.length(cur) > 0) {
    std::vector<int> desc;
    for (int i = 0; i < R.rank(); ++i)
      if (R.length(R.mul(R.simple(i), cur)) < R.length(cur)) desc.push_back(i);
    int i = desc[rng() % desc.size()];
    word.push_back(i);
    cur = R.mul(R.simple(i), cur);
  }
  return word;
}

std::map<int, YLaurent> Aha::right_mul_t(const std::map<int, YLaurent>& a, int i) const {
  const auto& R = datum();
  std::map<int, YLaurent> out;
  Cyclotomic z = p_.zeta_simple(i);
  int si = R.simple(i);
  for (auto& [w, q] : a) {
    int ws = R.mul(w, si);
    if (R.length(ws) > R.length(w)) {
      add_to(out, ws, q);
    } else {
      // t_w t_i = (zeta - 1) t_w + zeta t_{w s_i}
      add_to(out, w, q.scaled(z - Cyclotomic(1)));
      add_to(out, ws, q.scaled(z));
    }
  }
  return out;
}

std::map<int, YLaurent> Aha::commute(const YLaurent& p, int v, std::mt19937_64* rng) const {
  const auto& R = datum();
  std::vector<int> word = rng ? random_reduced_word(R, v, *rng) : R.word(v);
  std::map<int, YLaurent> state;
  state.emplace(0, p);
  for (int i : word) {
    Cyclotomic zm1 = p_.zeta_simple(i) - Cyclotomic(1);
    std::map<int, YLaurent> with_t, without;
    for (auto& [w, q] : state) {
      // q t_i = t_i (s_i q) + (zeta_i - 1) Delta_i(q)
      add_to(with_t, w, act_lattice(R, R.simple(i), q, true));
      if (!zm1.is_zero()) add_to(without, w, bernstein_difference(R, q, i).scaled(zm1));
    }
    state = right_mul_t(with_t, i);
    for (auto& [w, q] : without) add_to(state, w, q);
  }
  return state;
}

AhaElement Aha::mul(const AhaElement& a, const AhaElement& b, std::mt19937_64* rng) const {
  const auto& R = datum();
  AhaElement out = zero();
  for (auto& [u, p] : a.terms)
    for (auto& [v, q] : b.terms) {
      auto c = commute(p, v, rng);
      // t_u (sum t_w c_w) q
      for (auto& [w, cw] : c) {
        std::map<int, YLaurent> acc;
        acc.emplace(u, cw * q);
        std::vector<int> word = rng ? random_reduced_word(R, w, *rng) : R.word(w);
        for (int i : word) acc = right_mul_t(acc, i);
        for (auto& [x, px] : acc) out.add(x, px);
      }
    }
  return out;
}

AhaElement Aha::intertwiner(int i) const {
  const auto& R = datum();
  IVec av = R.coroot_in_coweight_basis(R.coroot(R.simple_root_index(i)));
  for (auto& x : av) x = -x;
  Cyclotomic z = p_.zeta_simple(i);
  AhaElement f = y(av) - scalar(Cyclotomic(1));
  return mul(t_simple(i), f) + scalar(z - Cyclotomic(1));
}

AhaElement Aha::intertwiner(const std::vector<int>& word) const {
  AhaElement out = scalar(Cyclotomic(1));
  for (int i : word) out = mul(out, intertwiner(i));
  return out;
}

}  // namespace dahakz
