#include "dahakz/affine_weyl.hpp"

#include <algorithm>
#include <set>

namespace dahakz {

Rational AffineLinear::eval(const Weight& lambda) const {
  Rational s = c;
  for (size_t j = 0; j < lv.size(); ++j) s += lambda[j] * lv[j];
  return s;
}

AffineWeyl::AffineWeyl(RootDatumPtr rd) : rd_(std::move(rd)) {
  const auto& R = *rd_;
  Rational rt = R.pair(R.rho(), R.coroot(R.highest_root()));
  // K = ceil((rho : theta^vee)) + 2
  Rational K = -floor_q(-rt) + 2;
  sample_ = R.rho();
  for (auto& x : sample_) x /= K;
}

AffineElement AffineWeyl::identity() const { return {IVec(rank(), 0), 0}; }
AffineElement AffineWeyl::translation(const IVec& beta) const { return {beta, 0}; }
AffineElement AffineWeyl::finite(int w) const { return {IVec(rank(), 0), w}; }

AffineElement AffineWeyl::simple(int i) const {
  if (i < rank()) return finite(rd_->simple(i));
  int th = rd_->highest_root();
  return {rd_->root(th), rd_->reflection(th)};
}

AffineElement AffineWeyl::mul(const AffineElement& a, const AffineElement& b) const {
  IVec t = rd_->act(a.w, b.t);
  for (int i = 0; i < rank(); ++i) t[i] += a.t[i];
  return {t, rd_->mul(a.w, b.w)};
}

AffineElement AffineWeyl::inverse(const AffineElement& a) const {
  int wi = rd_->inv(a.w);
  IVec t = rd_->act(wi, a.t);
  for (auto& x : t) x = -x;
  return {t, wi};
}

AffineElement AffineWeyl::from_word(const std::vector<int>& word) const {
  AffineElement g = identity();
  for (int i : word) g = mul(g, simple(i));
  return g;
}

Weight AffineWeyl::act(const AffineElement& g, const Weight& lambda) const {
  Weight out = rd_->act(g.w, lambda);
  for (int i = 0; i < rank(); ++i) out[i] += g.t[i];
  return out;
}

AffineLinear AffineWeyl::act(const AffineElement& g, const AffineLinear& f) const {
  AffineLinear out;
  out.lv = rd_->act_coweight(g.w, f.lv);
  out.c = f.c;
  for (int j = 0; j < rank(); ++j) out.c -= Rational(g.t[j]) * out.lv[j];
  return out;
}

std::pair<int, Rational> AffineWeyl::act_affine_coroot(const AffineElement& g, int k, const Rational& r) const {
  int k2 = rd_->act_root(g.w, k);
  Weight mu(g.t.begin(), g.t.end());
  return {k2, r - rd_->pair(mu, rd_->coroot(k2))};
}

int AffineWeyl::length(const AffineElement& g) const {
  Weight q = act(g, sample_);
  int n = 0;
  for (int k = 0; k < rd_->num_positive(); ++k) {
    Rational a = rd_->pair(sample_, rd_->coroot(k)), b = rd_->pair(q, rd_->coroot(k));
    Rational d = floor_q(a) - floor_q(b);
    n += std::abs(static_cast<int>(to_long(d)));
  }
  return n;
}

std::vector<int> AffineWeyl::reduced_word(const AffineElement& g) const {
  std::vector<int> word;
  AffineElement cur = g;
  int L = length(cur);
  while (L > 0) {
    bool found = false;
    for (int i = 0; i <= rank(); ++i) {
      AffineElement nxt = mul(simple(i), cur);
      int Ln = length(nxt);
      if (Ln < L) {
        word.push_back(i);
        cur = nxt;
        L = Ln;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("reduced_word: no descent found");
  }
  return word;
}

bool AffineWeyl::in_fundamental_alcove(const Weight& lambda) const {
  for (int k = 0; k < rd_->num_positive(); ++k) {
    Rational v = rd_->pair(lambda, rd_->coroot(k));
    if (v <= 0 || v >= 1) return false;
  }
  return true;
}

std::vector<std::pair<AffineElement, int>> AffineWeyl::ball(int L) const {
  std::vector<std::pair<AffineElement, int>> out;
  std::set<AffineElement> seen;
  out.push_back({identity(), 0});
  seen.insert(identity());
  size_t head = 0;
  while (head < out.size()) {
    auto [g, l] = out[head++];
    if (l == L) continue;
    for (int i = 0; i <= rank(); ++i) {
      AffineElement h = mul(simple(i), g);
      if (seen.insert(h).second) out.push_back({h, l + 1});
    }
  }
  return out;
}

std::vector<AffineWeyl::OrbitPoint> AffineWeyl::orbit(const Weight& lambda, int L) const {
  std::vector<OrbitPoint> out;
  std::set<Weight> seen;
  for (auto& [g, l] : ball(L)) {
    Weight p = act(g, lambda);
    if (seen.insert(p).second) out.push_back({g, p, l});
  }
  return out;
}

AffineWeyl::Stabilizer AffineWeyl::stabilizer(const Weight& lambda, int search_bound) const {
  Stabilizer s;
  for (auto& [g, l] : ball(search_bound))
    if (act(g, lambda) == lambda) s.elements.push_back(g);
  for (int w = 0; w < rd_->order(); ++w) {
    Weight d = rd_->act(w, lambda);
    IVec t(rank());
    bool integral = true;
    for (int i = 0; i < rank(); ++i) {
      Rational x = lambda[i] - d[i];
      if (!is_integer(x)) {
        integral = false;
        break;
      }
      t[i] = static_cast<int>(to_long(x));
    }
    if (integral) s.certificate.push_back({t, w});
  }
  std::sort(s.elements.begin(), s.elements.end());
  std::sort(s.certificate.begin(), s.certificate.end());
  bool all_short = true;
  for (auto& g : s.certificate)
    if (length(g) > search_bound) all_short = false;
  s.complete = all_short && s.elements == s.certificate;
  return s;
}

AffineWeyl::StabilizerComparison AffineWeyl::compare_stabilizers(const Weight& lambda) const {
  StabilizerComparison r;
  for (int w = 0; w < rd_->order(); ++w) {
    Weight d = rd_->act(w, lambda);
    if (d == lambda) r.W_lambda.push_back(w);
    bool integral = true;
    for (int i = 0; i < rank(); ++i)
      if (!is_integer(lambda[i] - d[i])) integral = false;
    if (integral) r.W_exp.push_back(w);
  }
  auto st = stabilizer(lambda, 0);
  r.What_lambda = st.certificate;
  r.lhs = r.W_lambda == r.W_exp;
  std::vector<int> fin;
  bool all_finite = true;
  for (auto& g : r.What_lambda) {
    if (std::any_of(g.t.begin(), g.t.end(), [](int x) { return x != 0; })) all_finite = false;
    fin.push_back(g.w);
  }
  std::sort(fin.begin(), fin.end());
  r.rhs = all_finite && fin == r.W_lambda;
  return r;
}

Weight AffineWeyl::act(const ExtAffineElement& g, const Weight& lambda) const {
  Weight out = rd_->act(g.w, lambda);
  for (int i = 0; i < rank(); ++i) out[i] += g.t[i];
  return out;
}

std::vector<ExtAffineElement> AffineWeyl::omega() const {
  if (rd_->name().empty() || rd_->name()[0] != 'A') throw ScopeError("Omega implemented for type A only");
  std::vector<ExtAffineElement> out{{Weight(rank(), Rational(0)), 0}};
  for (int k = 0; k < rank(); ++k) {
    Weight om = rd_->fundamental_weight(k);
    for (int w = 0; w < rd_->order(); ++w) {
      ExtAffineElement g{om, w};
      if (in_fundamental_alcove(act(g, sample_))) {
        out.push_back(g);
        break;
      }
    }
  }
  return out;
}

std::pair<ExtAffineElement, Weight> AffineWeyl::normalize_by_omega(const Weight& lambda) const {
  // move lambda into the closure of A_+ by simple affine reflections
  ExtAffineElement g{Weight(rank(), Rational(0)), 0};
  Weight cur = lambda;
  const auto& R = *rd_;
  for (int guard = 0; guard < 100000; ++guard) {
    int moved = -1;
    for (int i = 0; i < rank(); ++i)
      if (R.pair(cur, R.coroot(R.simple_root_index(i))) < 0) moved = i;
    if (moved < 0 && R.pair(cur, R.coroot(R.highest_root())) > 1) moved = rank();
    if (moved < 0) break;
    AffineElement s = simple(moved);
    cur = act(s, cur);
    Weight t = R.act(s.w, g.t);
    for (int i = 0; i < rank(); ++i) t[i] += s.t[i];
    g = {t, R.mul(s.w, g.w)};
  }
  for (auto& pi : omega()) {
    Weight p = act(pi, cur);
    auto st = stabilizer(p, 0);
    bool inside = std::all_of(st.certificate.begin(), st.certificate.end(), [](const AffineElement& h) {
      return std::all_of(h.t.begin(), h.t.end(), [](int x) { return x == 0; });
    });
    if (inside) {
      Weight t = R.act(pi.w, g.t);
      for (int i = 0; i < rank(); ++i) t[i] += pi.t[i];
      return {{t, R.mul(pi.w, g.w)}, p};
    }
  }
  throw ScopeError("no Omega normalization found");
}

int AffineWeyl::length_bound_for_box(const Weight& lambda, const Rational& box) const {
  const auto& R = *rd_;
  Rational D(0);
  for (int k = 0; k < R.num_roots(); ++k) {
    Rational v = R.pair(sample_, R.coroot(k)) - R.pair(lambda, R.coroot(k));
    if (v > D) D = v;
  }
  Rational m = box + D;
  long per = to_long(-floor_q(-m)) + 1;
  return static_cast<int>(per * R.num_positive());
}

std::vector<int> integral_coroots(const RootDatum& rd, const std::vector<Cyclotomic>& lambda0, const Rational& h0) {
  std::vector<int> out;
  Rational den(h0.get_den());
  for (int k = 0; k < rd.num_roots(); ++k) {
    Cyclotomic s(0);
    const IVec& cv = rd.coroot(k);
    for (int i = 0; i < rd.rank(); ++i) {
      long t = 0;
      for (int j = 0; j < rd.rank(); ++j) t += static_cast<long>(cv[j]) * rd.a(i, j);
      if (t) s += lambda0[i] * Cyclotomic(t);
    }
    if (!s.is_rational()) continue;
    // Z + Z h0 = (1/den) Z for h0 = num/den in lowest terms
    Rational v = s.rational_value() * den;
    if (is_integer(v)) out.push_back(k);
  }
  return out;
}

ParameterBridge parameter_bridge(const RootDatum& rd, const Rational& h0, const Weight& lambda0, const Rational& u0,
                                 int bound) {
  ParameterBridge pb;
  pb.zeta0 = Cyclotomic::root_of_unity(u0 * h0);
  pb.tau0 = Cyclotomic::root_of_unity(u0);
  for (auto& x : lambda0) pb.ell0.push_back(Cyclotomic::root_of_unity(u0 * x));
  std::vector<int> ks{-1};
  for (int k = 0; k < rd.num_roots(); ++k) ks.push_back(k);
  for (int a = -bound; a <= bound && pb.valid; ++a)
    for (int b = -bound; b <= bound && pb.valid; ++b) {
      Rational k = Rational(a) + Rational(b) * h0;
      for (int c : ks) {
        Rational p = c < 0 ? Rational(0) : rd.pair(lambda0, rd.coroot(c));
        Rational v = u0 * (k + p);
        if (is_integer(v) && v != 0) {
          pb.valid = false;
          pb.witness = std::make_pair(k, c);
          break;
        }
      }
    }
  return pb;
}

}  // namespace dahakz
