#include <set>

#include "doctest.h"
#include "dahakz/arrangements.hpp"
#include "dahakz/rings.hpp"
#include "helpers.hpp"

using namespace dahakz;
using namespace testhelp;

namespace {
HeckeParams A1h(Rational h) { return HeckeParams::uniform(RootDatum::type_A(1), h); }
Weight rho_over(const RootDatum& R, int n) {
  Weight w = R.rho();
  for (auto& x : w) x /= n;
  return w;
}
}  // namespace

TEST_CASE("Fourier-Motzkin certificates") {
  std::mt19937_64 g(21);
  int feasible = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<Inequality> sys;
    int m = 2 + static_cast<int>(g() % 4);
    for (int i = 0; i < m; ++i) sys.push_back({{rand_q(g), rand_q(g)}, rand_q(g), (g() % 2) == 0});
    auto x = fm_solve(sys, 2);
    if (x) {
      ++feasible;
      for (auto& q : sys) {
        Rational v = q.a[0] * (*x)[0] + q.a[1] * (*x)[1] + q.b;
        CHECK((q.strict ? v > 0 : v >= 0));
      }
    } else {
      // no grid point satisfies the system
      bool hit = false;
      for (int i = -40; i <= 40 && !hit; ++i)
        for (int j = -40; j <= 40 && !hit; ++j) {
          Rational a(i, 4), b(j, 4);
          a.canonicalize();
          b.canonicalize();
          bool ok = true;
          for (auto& q : sys) {
            Rational v = q.a[0] * a + q.a[1] * b + q.b;
            ok = ok && (q.strict ? v > 0 : v >= 0);
          }
          hit = ok;
        }
      CHECK(!hit);
    }
  }
  CHECK(feasible > 20);
  // x > 0 and x < 0
  CHECK(!fm_solve({{{Rational(1)}, 0, true}, {{Rational(-1)}, 0, true}}, 1));
  CHECK(fm_solve({{{Rational(1)}, 0, false}, {{Rational(-1)}, 0, false}}, 1));
}

TEST_CASE("critical arrangement examples") {
  auto p = A1h(Rational(1, 2));
  auto H = critical_arrangement(p, W({Rational(1, 4)}));
  std::set<AffineCoroot> got(H.begin(), H.end());
  std::set<AffineCoroot> expect{{0, 0}, {1, 0}, {0, -1}, {1, 1}};
  CHECK(got == expect);
  auto C = canonical_hyperplanes(*p.rd, H);
  CHECK(C.size() == 2);
  // generic h: nothing is critical
  CHECK(critical_arrangement(A1h(Rational(1, 3)), W({Rational(1, 4)})).empty());

  // family shape {(beta, -a), (gamma, -1-a)}
  for (int r = 1; r <= 3; ++r) {
    auto R = RootDatum::type_A(r);
    int n = R->coxeter_number();
    for (int k = 1; k < 3 * n; ++k) {
      if (std::gcd(k, n) != 1) continue;
      auto pr = HeckeParams::uniform(R, Rational(k, n));
      AffineWeyl aw(R);
      auto d = affine_domains(aw, pr, rho_over(*R, n));
      REQUIRE(d.family);
      auto Hc = canonical_hyperplanes(*R, critical_arrangement(pr, rho_over(*R, n)));
      CHECK(Hc == canonical_hyperplanes(*R, d.I_k));
    }
  }
}

TEST_CASE("domain census") {
  for (int r = 1; r <= 2; ++r) {
    auto R = RootDatum::type_A(r);
    AffineWeyl aw(R);
    int n = R->coxeter_number();
    auto d = affine_domains(aw, HeckeParams::uniform(R, Rational(1, n)), rho_over(*R, n));
    CHECK(d.domains.size() == (1u << (r + 1)) - 1);
    CHECK(d.bounded_count() == 1);
    unsigned all = (1u << d.I_k.size()) - 1;
    int b = domain_with_label(d, all);
    REQUIRE(b >= 0);
    CHECK(d.domains[b].bounded);
    CHECK(domain_of(aw, d, aw.identity()) == b);
    // every nonempty J occurs exactly once
    std::set<unsigned> Js(d.J_of_domain.begin(), d.J_of_domain.end());
    CHECK(Js.size() == d.domains.size());
    CHECK(!Js.count(0));
  }
  // empty arrangement: a single unbounded domain
  AffineWeyl a1(RootDatum::type_A(1));
  auto e = affine_domains(a1, A1h(Rational(1, 3)), W({Rational(1, 4)}));
  CHECK(e.domains.size() == 1);
  CHECK(e.bounded_count() == 0);
}

TEST_CASE("cells agree with alcove sampling") {
  for (int r = 1; r <= 2; ++r) {
    auto R = RootDatum::type_A(r);
    AffineWeyl aw(R);
    int n = R->coxeter_number();
    for (int k : {1, 2}) {
      if (std::gcd(k, n) != 1) continue;
      auto d = affine_domains(aw, HeckeParams::uniform(R, Rational(k, n)), rho_over(*R, n));
      std::set<int> hit;
      for (auto& [g, l] : aw.ball(8)) {
        auto sv = d.arr.signs_of(alcove_of(aw, g).sample);
        REQUIRE(sv.has_value());
        CHECK(d.arr.realizable(*sv));
        hit.insert(d.arr.cell_of(alcove_of(aw, g).sample));
      }
      CHECK(hit.size() == d.arr.cells().size());
    }
  }
}

TEST_CASE("simple characters in A1") {
  auto R = RootDatum::type_A(1);
  AffineWeyl aw(R);
  Weight l0 = W({Rational(1, 4)});
  auto d = affine_domains(aw, A1h(Rational(1, 2)), l0);
  auto js = [&](int dom) {
    std::multiset<int> out;
    for (auto& w : domain_character(aw, d, dom, l0, 22)) {
      int j = static_cast<int>(to_long(w[0] * 4));
      if (std::abs(j) <= 19) out.insert(j);
    }
    return out;
  };
  int bounded = domain_with_label(d, 3);
  CHECK(js(bounded) == std::multiset<int>{1});
  int up = d.domain_of_point(W({Rational(3, 4)}));     // c = 3/2
  int down = d.domain_of_point(W({Rational(-1, 4)}));  // c = -1/2
  CHECK(js(up) == std::multiset<int>{-19, -15, -11, -7, -3, 3, 7, 11, 15, 19});
  CHECK(js(down) == std::multiset<int>{-17, -13, -9, -5, -1, 5, 9, 13, 17});
  CHECK(domain_of(aw, d, aw.simple(1)) == up);
  CHECK(domain_of(aw, d, aw.simple(0)) == down);
}

TEST_CASE("sum of simple characters equals the standard character") {
  for (int r = 1; r <= 2; ++r) {
    auto R = RootDatum::type_A(r);
    AffineWeyl aw(R);
    int n = R->coxeter_number();
    Weight l0 = rho_over(*R, n);
    auto d = affine_domains(aw, HeckeParams::uniform(R, Rational(1, n)), l0);
    int L = r == 1 ? 12 : 6;
    std::multiset<Weight> sum, all;
    for (size_t dom = 0; dom < d.domains.size(); ++dom)
      for (auto& w : domain_character(aw, d, static_cast<int>(dom), l0, L)) sum.insert(w);
    for (auto& [g, l] : aw.ball(L)) all.insert(aw.act(g, l0));
    CHECK(sum == all);
    // trivial stabilizer: each weight once
    CHECK(std::set<Weight>(all.begin(), all.end()).size() == all.size());
  }
}

TEST_CASE("chamber domains") {
  auto R = RootDatum::type_A(1);
  auto pm = AhaParams::uniform(R, Cyclotomic(-1));
  auto cd = chamber_domains(pm, {Cyclotomic::zeta(4)});
  CHECK(cd.hyperplane_coroots == std::vector<int>{0});
  CHECK(cd.domains.size() == 2);
  auto generic = chamber_domains(AhaParams::uniform(R, Cyclotomic::zeta(5)), {Cyclotomic::zeta(4)});
  CHECK(generic.hyperplane_coroots.empty());
  CHECK(generic.domains.size() == 1);

  auto R2 = RootDatum::type_A(2);
  Weight l = rho_over(*R2, 3);
  auto ell = exp_point(l);
  auto c2 = chamber_domains(AhaParams::uniform(R2, Cyclotomic::zeta(3)), ell);
  auto ic = integral_coroots(*R2, {Cyclotomic(l[0]), Cyclotomic(l[1])}, Rational(1, 3));
  std::vector<int> pos;
  for (int k : ic)
    if (R2->is_positive(k)) pos.push_back(k);
  std::sort(pos.begin(), pos.end());
  CHECK(c2.hyperplane_coroots == pos);
  CHECK(c2.domains.size() == 6);
}

TEST_CASE("dagger") {
  auto R = RootDatum::type_A(1);
  AffineWeyl aw(R);
  Weight l0 = W({Rational(1, 4)});
  auto ad = affine_domains(aw, A1h(Rational(1, 2)), l0);
  auto cd = chamber_domains(AhaParams::uniform(R, Cyclotomic(-1)), exp_point(l0));
  CHECK(aw.compare_stabilizers(l0).holds());
  auto dg = dagger(aw, ad, cd);
  CHECK(dg.injective);
  int pos = cd.domain_of_point(W({Rational(1)})), neg = cd.domain_of_point(W({Rational(-1)}));
  CHECK(dg.image[pos] == ad.domain_of_point(W({Rational(3, 4)})));
  CHECK(dg.image[neg] == ad.domain_of_point(W({Rational(-1, 4)})));
  // the bounded domain is not in the image
  for (int x : dg.image) CHECK(!ad.domains[x].bounded);

  // empty arrangements: identity
  auto ad0 = affine_domains(aw, A1h(Rational(1, 3)), l0);
  auto cd0 = chamber_domains(AhaParams::uniform(R, Cyclotomic::zeta(3)), exp_point(l0));
  auto d0 = dagger(aw, ad0, cd0);
  CHECK(d0.image == std::vector<int>{0});

  auto R2 = RootDatum::type_A(2);
  AffineWeyl a2(R2);
  Weight l2 = rho_over(*R2, 3);
  auto ad2 = affine_domains(a2, HeckeParams::uniform(R2, Rational(1, 3)), l2);
  auto cd2 = chamber_domains(AhaParams::uniform(R2, Cyclotomic::zeta(3)), exp_point(l2));
  auto dg2 = dagger(a2, ad2, cd2);
  CHECK(dg2.injective);
  CHECK(dg2.image.size() == 6);
}
