#include <set>

#include "doctest.h"
#include "dahakz/affine_weyl.hpp"
#include "dahakz/rings.hpp"
#include "helpers.hpp"

using namespace dahakz;
using namespace testhelp;

namespace {
AffineElement rand_elem(const AffineWeyl& aw, std::mt19937_64& g, int len) {
  std::vector<int> word;
  for (int k = 0; k < len; ++k) word.push_back(static_cast<int>(g() % (aw.rank() + 1)));
  return aw.from_word(word);
}
}  // namespace

TEST_CASE("act_weight examples and group action") {
  AffineWeyl aw(RootDatum::type_A(1));
  Weight l0 = W({Rational(1, 4)});  // rho/2 = alpha/4
  CHECK(aw.act(aw.simple(1), l0) == W({Rational(3, 4)}));
  CHECK(aw.act(aw.translation({1}), W({0})) == W({1}));
  auto ell0 = exp_point(l0);
  auto ell1 = exp_point(aw.act(aw.simple(1), l0));
  CHECK(ell0[0] == Cyclotomic::zeta(4, 1));
  CHECK(ell1[0] * ell0[0] == Cyclotomic(1));

  std::mt19937_64 g(11);
  AffineWeyl a2(RootDatum::type_A(2));
  for (int t = 0; t < 100; ++t) {
    auto x = rand_elem(a2, g, 6), y = rand_elem(a2, g, 6);
    Weight l{rand_q(g), rand_q(g)};
    CHECK(a2.act(a2.mul(x, y), l) == a2.act(x, a2.act(y, l)));
  }
}

TEST_CASE("act_xi examples and duality") {
  AffineWeyl aw(RootDatum::type_A(1));
  XiPoly xi = XiPoly::variable(1, 0);
  CHECK(act_xi(aw, aw.simple(0), xi) == -xi);
  XiPoly xa = xi.scaled(2);  // xi_{alpha^vee} = 2 xi_{omega^vee}
  CHECK(act_xi(aw, aw.translation({1}), xa) == xa - XiPoly::constant(1, 2));
  CHECK(act_xi(aw, aw.simple(1), XiPoly::constant(1, 5)) == XiPoly::constant(1, 5));

  std::mt19937_64 g(5);
  AffineWeyl a2(RootDatum::type_A(2));
  for (int t = 0; t < 100; ++t) {
    auto x = rand_elem(a2, g, 5);
    XiPoly p = rand_poly(g, 2, 2, 4);
    Weight l{rand_q(g), rand_q(g)};
    CHECK(evaluate(act_xi(a2, x, p), a2.act(x, l)) == evaluate(p, l));
  }
}

TEST_CASE("length and reduced words") {
  AffineWeyl aw(RootDatum::type_A(1));
  CHECK(aw.length(aw.identity()) == 0);
  CHECK(aw.length(aw.simple(0)) == 1);
  CHECK(aw.length(aw.simple(1)) == 1);
  CHECK(aw.length(aw.translation({1})) == 2);

  for (int r = 1; r <= 3; ++r) {
    AffineWeyl a(RootDatum::type_A(r));
    // crossing count equals Cayley-graph distance
    for (auto& [g, l] : a.ball(r == 3 ? 4 : 6)) {
      CHECK(a.length(g) == l);
      CHECK(a.length(a.inverse(g)) == l);
      auto w = a.reduced_word(g);
      CHECK(static_cast<int>(w.size()) == l);
      CHECK(a.from_word(w) == g);
    }
  }
  std::mt19937_64 g(3);
  AffineWeyl a2(RootDatum::type_A(2));
  for (int t = 0; t < 100; ++t) {
    auto x = rand_elem(a2, g, 7), y = rand_elem(a2, g, 7);
    CHECK(a2.length(a2.mul(x, y)) <= a2.length(x) + a2.length(y));
  }
}

TEST_CASE("orbit enumeration") {
  AffineWeyl aw(RootDatum::type_A(1));
  const auto& R = aw.datum();
  auto orb = aw.orbit(W({Rational(1, 4)}), 3);
  std::set<Rational> vals;
  for (auto& p : orb) vals.insert(R.pair(p.point, R.coroot(0)));
  for (Rational v : {Rational(1, 2), Rational(-1, 2), Rational(3, 2), Rational(-3, 2), Rational(5, 2)})
    CHECK(vals.count(v) == 1);
  // lambda = 0: the orbit is the root lattice
  auto z = aw.orbit(W({0}), 4);
  CHECK(z.size() == 5);
  for (auto& p : z) CHECK(is_integer(p.point[0]));
  // trivial stabilizer: distinct elements give distinct points
  auto ball = aw.ball(5);
  CHECK(aw.orbit(W({Rational(1, 4)}), 5).size() == ball.size());
  // representatives are length-minimal against the exhaustive ball
  AffineWeyl a2(RootDatum::type_A(2));
  Weight lam = W({Rational(1, 2), 0});
  auto b2 = a2.ball(6);
  for (auto& p : a2.orbit(lam, 6)) {
    int best = 1000;
    for (auto& [g, l] : b2)
      if (a2.act(g, lam) == p.point) best = std::min(best, l);
    CHECK(best == p.length);
  }
}

TEST_CASE("stabilizers: finite stabilizer of lambda vs of e^lambda") {
  AffineWeyl aw(RootDatum::type_A(1));
  auto s0 = aw.stabilizer(W({Rational(1, 4)}), 6);
  CHECK(s0.complete);
  CHECK(s0.elements.size() == 1);
  auto s1 = aw.stabilizer(W({Rational(1, 2)}), 6);  // alpha/2
  CHECK(s1.complete);
  REQUIRE(s1.elements.size() == 2);
  CHECK(s1.elements[1] == aw.mul(aw.translation({1}), aw.simple(0)));
  auto s2 = aw.stabilizer(W({0}), 6);
  CHECK(s2.elements.size() == 2);

  auto p0 = aw.compare_stabilizers(W({Rational(1, 4)}));
  CHECK(p0.lhs);
  CHECK(p0.rhs);
  auto p1 = aw.compare_stabilizers(W({Rational(1, 2)}));
  CHECK(!p1.lhs);
  CHECK(!p1.rhs);
  CHECK(p1.W_lambda.size() == 1);
  CHECK(p1.W_exp.size() == 2);
  auto p2 = aw.compare_stabilizers(W({0}));
  CHECK(p2.lhs);
  CHECK(p2.rhs);
  std::mt19937_64 g(2);
  AffineWeyl a2(RootDatum::type_A(2));
  for (int t = 0; t < 40; ++t) {
    Weight l{rand_q(g, -2, 2, 2), rand_q(g, -2, 2, 2)};
    CHECK(a2.compare_stabilizers(l).holds());
  }
}

TEST_CASE("integral coroots and the parameter bridge") {
  auto A1 = RootDatum::type_A(1);
  auto ic = integral_coroots(*A1, {Cyclotomic(Rational(1, 4))}, Rational(1, 2));
  CHECK(ic.size() == 2);
  auto A2 = RootDatum::type_A(2);
  auto all = integral_coroots(*A2, {Cyclotomic(Rational(1, 3)), Cyclotomic(Rational(1, 3))}, Rational(1, 3));
  CHECK(all.size() == 6);
  // sqrt 2 = z8 + z8^7 is irrational
  Cyclotomic s2 = Cyclotomic::zeta(8, 1) + Cyclotomic::zeta(8, 7);
  CHECK(s2 * s2 == Cyclotomic(2));
  CHECK(integral_coroots(*A2, {s2, Cyclotomic(0)}, Rational(1, 3)).empty());
  // closure under the generated reflections
  for (int k : all)
    for (int m : all) {
      int img = A2->act_root(A2->reflection(k), m);
      CHECK(std::find(all.begin(), all.end(), img) != all.end());
    }

  auto pb = parameter_bridge(*A1, Rational(1, 2), W({Rational(1, 4)}), Rational(1, 100), 3);
  CHECK(pb.zeta0 == Cyclotomic::root_of_unity(Rational(1, 200)));
  CHECK(pb.tau0 == Cyclotomic::root_of_unity(Rational(1, 100)));
  CHECK(pb.valid);
  auto bad = parameter_bridge(*A1, Rational(1, 2), W({Rational(1, 4)}), Rational(1), 3);
  CHECK(!bad.valid);
  CHECK(bad.witness.has_value());
}

TEST_CASE("Omega normalization in type A") {
  AffineWeyl a2(RootDatum::type_A(2));
  auto om = a2.omega();
  CHECK(om.size() == 3);
  for (auto& pi : om) CHECK(a2.in_fundamental_alcove(a2.act(pi, a2.alcove_sample())));
  auto [g, p] = a2.normalize_by_omega(W({Rational(7, 2), Rational(-1, 2)}));
  CHECK(a2.act(g, W({Rational(7, 2), Rational(-1, 2)})) == p);
  for (auto& h : a2.stabilizer(p, 0).certificate) CHECK(h.t == IVec{0, 0});
}

TEST_CASE("alcove simple transitivity spot check") {
  AffineWeyl a2(RootDatum::type_A(2));
  std::set<Weight> samples;
  auto ball = a2.ball(8);
  for (auto& [g, l] : ball) samples.insert(a2.act(a2.inverse(g), a2.alcove_sample()));
  CHECK(samples.size() == ball.size());
}
