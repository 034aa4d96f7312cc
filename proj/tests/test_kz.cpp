#include "doctest.h"
#include "dahakz/kz.hpp"
#include "helpers.hpp"

using namespace dahakz;
using namespace testhelp;

namespace {

double D(const Real& x) { return x.convert_to<double>(); }

Daha a1_daha(const Rational& h) {
  auto R = RootDatum::type_A(1);
  return Daha(AffineWeyl(R), HeckeParams::uniform(R, h));
}

// two-dimensional fiber P'(nu) with (nu : alpha^vee) = gamma
ConnectionProblem a1_problem(const Rational& gamma, const Rational& h = Rational(1, 2), int bits = 256) {
  Daha H = a1_daha(h);
  return kz_problem(H, degenerate_standard(H, W({gamma / 2}), 1), bits);
}

CVec cvec(std::initializer_list<double> re) {
  CVec v;
  for (double x : re) v.push_back(Complex(Real(x)));
  return v;
}

}  // namespace

TEST_CASE("Frobenius series: scalar e^z case") {
  PrecisionScope ps(256);
  auto P = scalar_problem(Rational(1, 3));
  auto F = frobenius_series(P, 16);
  Real fact(1);
  for (int k = 0; k <= 16; ++k) {
    if (k) fact *= k;
    Complex hk = F.H.at(IVec{k})(0, 0);
    CHECK(D(abs(hk - Complex(Real(1) / fact))) < 1e-70);
  }
  CHECK(D(F.residual) < 1e-70);
}

TEST_CASE("Frobenius series: constant connection gives H = Id") {
  PrecisionScope ps(256);
  CMatrix a(2, 2), b(2, 2);
  a(0, 0) = Complex(Real(1) / 3);
  a(1, 1) = Complex(Real(-1) / 5);
  b(0, 0) = Complex(Real(2) / 7);
  b(1, 1) = Complex(Real(1) / 9);
  auto P = constant_problem({a, b});
  auto F = frobenius_series(P, 6);
  for (auto& [beta, M] : F.H) {
    bool zero = std::all_of(beta.begin(), beta.end(), [](int x) { return x == 0; });
    CHECK(D(distance(M, zero ? CMatrix::identity(2) : CMatrix(2, 2))) == 0);
  }
}

TEST_CASE("Frobenius series: Sylvester consistency on KZ fibers") {
  auto P = a1_problem(Rational(-3, 2));
  auto F = frobenius_series(P, 8);
  CHECK(D(F.residual) < 1e-20);
  CHECK(F.H.size() == 9);

  auto R = RootDatum::type_A(2);
  Daha H(AffineWeyl(R), HeckeParams::uniform(R, Rational(1, 3)));
  Weight mu = W({Rational(-4), Rational(-13, 3)});
  auto P2 = kz_problem(H, degenerate_standard(H, mu, 1));
  auto F2 = frobenius_series(P2, 8);
  CHECK(D(F2.residual) < 1e-20);
  // H solves dG = A G du near the origin
  CVec u = cvec({-6, -6.5});
  CHECK(D(flatness_residual(P2, u)) < 1e-60);
}

TEST_CASE("resonant exponents are rejected") {
  PrecisionScope ps(256);
  CMatrix a(2, 2);
  a(0, 0) = Complex(Real(1) / 2);
  a(1, 1) = Complex(Real(5) / 2);
  auto P = constant_problem({a});
  P.exponents = {{Rational(1, 2), Rational(5, 2)}};
  CHECK_THROWS_AS(frobenius_series(P, 4), ResonanceError);
  a(1, 1) = Complex(Real(7) / 3);
  P = constant_problem({a});
  P.exponents = {{Rational(1, 2), Rational(7, 3)}};
  CHECK_NOTHROW(frobenius_series(P, 4));
  // regular fibers never resonate: exponents differ by pairings with coroots
  CHECK_THROWS_AS(a1_problem(Rational(2)), ScopeError);
}

TEST_CASE("transport: trivial paths, scalar loop, composition") {
  PrecisionScope ps(256);
  CMatrix a(1, 1);
  a(0, 0) = Complex(Real(1) / 4);
  auto C = constant_problem({a});
  CVec base{Complex(Real(-1))};
  auto zero = transport(C, straight_path(base, base));
  CHECK(D(distance(zero.U, CMatrix::identity(1))) < 1e-60);
  auto loop = transport(C, loop_path(base, 0));
  CHECK(D(abs(loop.U(0, 0) - Complex(Real(0), Real(1)))) < 1e-12);

  auto P = a1_problem(Rational(-3, 2));
  auto R = RootDatum::type_A(1);
  CVec b2 = cvec({-2});
  Path tau = tau_path(*R, b2, 0, -1, pi_real() / 2);
  auto whole = transport(P, tau);
  auto first = transport(P, subpath(tau, Real(0), Real(1) / 3));
  auto second = transport(P, subpath(tau, Real(1) / 3, Real(1)));
  CHECK(D(distance(second.U * first.U, whole.U)) < 1e-25);
  auto back = transport(P, reversed(tau));
  CHECK(D(distance(back.U * whole.U, CMatrix::identity(2))) < 1e-25);
  CHECK(D(whole.min_margin) > 0.5);
}

TEST_CASE("KZ connection is flat") {
  auto R = RootDatum::type_A(2);
  Daha H(AffineWeyl(R), HeckeParams::uniform(R, Rational(1, 3)));
  Weight mu = R->rho();
  for (auto& x : mu) x /= 3;
  auto P = kz_problem(H, degenerate_standard(H, mu, 2));
  PrecisionScope ps(256);
  for (auto u : {cvec({-1, 0.3}), cvec({0.7, -2.1}), cvec({0.2, 0.1})}) {
    u[0].im = Real(0.4);
    CHECK(D(flatness_residual(P, u)) < 1e-60);
  }
}

TEST_CASE("rank-one monodromy against the Gamma formula") {
  auto [a0, b0] = rank_one_oracle(Rational(-3, 2), Rational(1, 2));
  PrecisionScope ps(256);
  CHECK(D(abs(b0 - Complex(3 * pi_real() / 8))) < 1e-70);
  CHECK(D(abs(a0 - Complex(Real(0), Real(-1)))) < 1e-70);
  CHECK_THROWS_AS(rank_one_oracle(Rational(1), Rational(1, 2)), ScopeError);
  CHECK_THROWS_AS(rank_one_oracle(Rational(1, 2), Rational(1, 2)), ScopeError);

  for (auto g : {Rational(-3, 2), Rational(2, 3)}) {
    auto P = a1_problem(g);
    auto m = monodromy(P);
    CHECK(m.relations_ok(1e-20));
    CHECK(D(m.loop_check) < 1e-20);
    auto [a, b] = rank_one_constants(m, g, Rational(1, 2));
    auto [ao, bo] = rank_one_oracle(g, Rational(1, 2));
    CHECK(D(abs(a - ao)) < 1e-20);
    CHECK(D(abs(b - bo)) < 1e-20);
  }
}

TEST_CASE("monodromy of a direct sum is block diagonal") {
  Daha H = a1_daha(Rational(1, 2));
  auto M1 = degenerate_standard(H, W({Rational(-3, 4)}), 1);
  auto M2 = degenerate_standard(H, W({Rational(-1, 5)}), 1);
  auto m1 = monodromy(kz_problem(H, M1));
  auto m2 = monodromy(kz_problem(H, M2));
  auto ms = monodromy(kz_problem(H, direct_sum(std::vector<DegFiber>{M1, M2})));
  PrecisionScope ps(256);
  for (auto which : {&MonodromyRep::Y, &MonodromyRep::T}) {
    const CMatrix& S = (ms.*which)[0];
    const CMatrix& A = (m1.*which)[0];
    const CMatrix& B = (m2.*which)[0];
    Real worst(0);
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 4; ++j) {
        Complex want;
        if (i < 2 && j < 2) want = A(i, j);
        if (i >= 2 && j >= 2) want = B(i - 2, j - 2);
        worst = std::max(worst, abs(S(i, j) - want));
      }
    CHECK(D(worst) < 1e-20);
  }
}

TEST_CASE("monodromy is stable under doubling the precision") {
  auto P = a1_problem(Rational(-2, 5), Rational(1, 2), 160);
  auto Q = a1_problem(Rational(-2, 5), Rational(1, 2), 320);
  MonodromyOptions o;
  o.transport.tol = 1e-30;
  o.series_tol = 1e-30;
  auto m = monodromy(P, o);
  o.transport.tol = 1e-46;
  o.series_tol = 1e-46;
  auto n = monodromy(Q, o);
  PrecisionScope ps(320);
  CHECK(D(distance(m.Y[0], n.Y[0])) < 1e-10);
  CHECK(D(distance(m.T[0], n.T[0])) < 1e-10);
  CHECK(D(distance(m.T[0], n.T[0])) > 0);
}

TEST_CASE("identification errors") {
  Daha H = a1_daha(Rational(1, 2));
  auto m = monodromy(kz_problem(H, degenerate_standard(H, W({Rational(-9, 8)}), 1)));
  auto R = RootDatum::type_A(1);
  Aha A(AhaParams::uniform(R, Cyclotomic(-1)));
  auto big = aha_standard(A, {Cyclotomic::zeta(4)}, 2);
  CHECK_THROWS_AS(identify(m, {big}, 1e-8), ConfigError);
  auto other = aha_standard(A, {Cyclotomic::zeta(5)}, 1);
  CHECK_THROWS_AS(identify(m, {other}, 1e-8), ToleranceError);
  CHECK_THROWS_AS(identify(m, {}, 1e-8), ConfigError);
  auto good = aha_standard(A, exp_point(W({Rational(-9, 8)})), 1);
  auto id = identify(m, {good}, 1e-8);
  CHECK(id.matches == std::vector<int>{0});
  CHECK(id.cyclic[0]);
}
