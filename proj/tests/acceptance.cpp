// One line per acceptance criterion. Usage: acceptance [--only N]
#include <chrono>
#include <cstdlib>
#include <algorithm>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "dahakz/arrangements.hpp"
#include "dahakz/kz.hpp"
#include "dahakz/modules.hpp"
#include "helpers.hpp"

using namespace dahakz;
using namespace testhelp;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void need(bool c, const std::string& what) {
    if (!c) {
      pass = false;
      detail << " FAILED:" << what;
    }
  }
};

double D(const Real& x) { return x.convert_to<double>(); }

Weight rho_over(const RootDatum& R, int n) {
  Weight l = R.rho();
  for (auto& x : l) x /= n;
  return l;
}

// ---- 1
void characters(Outcome& o) {
  auto R = RootDatum::type_A(1);
  AffineWeyl aw(R);
  Weight l0{Rational(1, 4)};
  auto d = affine_domains(aw, HeckeParams::uniform(R, Rational(1, 2)), l0);
  o.need(d.domains.size() == 3, "three domains");
  auto js = [&](int dom) {
    std::multiset<int> out;
    for (auto& w : domain_character(aw, d, dom, l0, 22)) {
      Rational j = w[0] * 4;
      if (abs(j) <= 19) out.insert(static_cast<int>(j.get_num().get_si()));
    }
    return out;
  };
  int bounded = -1;
  for (size_t k = 0; k < d.domains.size(); ++k)
    if (d.domains[k].bounded) bounded = static_cast<int>(k);
  int up = domain_of(aw, d, aw.simple(1));
  int down = domain_of(aw, d, aw.simple(0));
  auto b = js(bounded), u = js(up), w = js(down);
  o.need(b == std::multiset<int>{1}, "ch V(lambda0)");
  o.need(u == std::multiset<int>{-19, -15, -11, -7, -3, 3, 7, 11, 15, 19}, "ch V(s_heart lambda0)");
  o.need(w == std::multiset<int>{-17, -13, -9, -5, -1, 5, 9, 13, 17}, "ch V(s_1 lambda0)");
  std::multiset<int> sum;
  sum.insert(b.begin(), b.end());
  sum.insert(u.begin(), u.end());
  sum.insert(w.begin(), w.end());
  std::multiset<int> odd;
  for (int j = -19; j <= 19; j += 2) odd.insert(j);
  o.need(sum == odd, "sum of simples = ch P(lambda0)");
  // the finite-dimensional simple fixture has the single weight lambda0
  auto V = a1_simple_lambda0();
  Daha H(aw, HeckeParams::uniform(R, Rational(1, 2)));
  o.need(check_relations(H, V) == 0 && V.xi[0].rows() == 1 && V.xi[0](0, 0) == Rational(1, 4), "V(lambda0) fixture");
  o.detail << "domains=" << d.domains.size() << " |V(l0)|=" << b.size() << " |V(s_h l0)|=" << u.size()
           << " |V(s1 l0)|=" << w.size() << " union=" << sum.size();
}

// ---- 2
void census(Outcome& o) {
  for (int r = 1; r <= 2; ++r) {
    auto R = RootDatum::type_A(r);
    AffineWeyl aw(R);
    int n = R->coxeter_number();
    auto d = affine_domains(aw, HeckeParams::uniform(R, Rational(1, n)), rho_over(*R, n));
    int want = (1 << (r + 1)) - 1;
    o.need(static_cast<int>(d.domains.size()) == want && d.bounded_count() == 1, "A" + std::to_string(r));
    o.detail << "A" << r << ": " << d.domains.size() << " domains, " << d.bounded_count() << " bounded; ";
  }
}

// ---- 3
DahaElement rand_daha(const Daha& H, std::mt19937_64& g, int terms, int len, int deg) {
  DahaElement e = H.zero();
  const auto& aw = H.affine_weyl();
  for (int t = 0; t < terms; ++t) {
    std::vector<int> word;
    int L = static_cast<int>(g() % (len + 1));
    for (int k = 0; k < L; ++k) word.push_back(static_cast<int>(g() % (H.rank() + 1)));
    e.add(aw.from_word(word), rand_poly(g, H.rank(), deg, 2));
  }
  return e;
}

YLaurent to_cyc(const QPoly& p) {
  YLaurent out(p.nvars());
  for (auto& [e, c] : p.terms()) out.add_term(e, Cyclotomic(c));
  return out;
}

AhaElement rand_aha(const Aha& A, std::mt19937_64& g, int terms) {
  AhaElement e = A.zero();
  for (int t = 0; t < terms; ++t)
    e.add(static_cast<int>(g() % A.datum().order()), to_cyc(rand_laurent(g, A.rank(), 1, 2)));
  return e;
}

void relations(Outcome& o) {
  std::mt19937_64 g(2024);
  auto R = RootDatum::type_A(2);
  AffineWeyl aw(R);
  Daha H(aw, HeckeParams::uniform(R, Rational(1, 3)));
  int bad_assoc = 0, bad_pbw = 0;
  for (int t = 0; t < 200; ++t) {
    auto a = rand_daha(H, g, 2, 3, 2), b = rand_daha(H, g, 2, 3, 2), c = rand_daha(H, g, 1, 2, 1);
    auto ab = H.mul(a, b);
    if (H.mul(ab, c) != H.mul(a, H.mul(b, c))) ++bad_assoc;
    if (H.mul(a, b, &g) != ab) ++bad_pbw;
  }
  Aha A(AhaParams::uniform(R, Cyclotomic::zeta(3)));
  int bad_aha = 0;
  for (int t = 0; t < 200; ++t) {
    auto a = rand_aha(A, g, 2), b = rand_aha(A, g, 2), c = rand_aha(A, g, 2);
    auto ab = A.mul(a, b);
    if (A.mul(ab, c) != A.mul(a, A.mul(b, c))) ++bad_aha;
    if (A.mul(a, b, &g) != ab) ++bad_aha;
  }
  // Dunkl representation: defining relations of s_i against xi, degree <= 5
  DunklRep Dk(H);
  int bad_dunkl = 0, bad_comm = 0, vectors = 0;
  for (int t = 0; t < 3; ++t) {
    XiPoly p = rand_poly(g, 2, 2, 2);
    for (int i = 0; i <= 2; ++i) {
      DahaElement rhs = H.xi(demazure_xi_simple(aw, p, i).scaled(H.h_simple(i)));
      for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b) {
          if (std::abs(a) + std::abs(b) > 5) continue;
          XLaurent f = XLaurent::monomial({a, b});
          XLaurent l1 = Dk.apply(H.simple(i), Dk.apply_xi(p, f));
          XLaurent l2 = Dk.apply_xi(act_xi(aw, aw.simple(i), p), Dk.apply(H.simple(i), f));
          if (l1 - l2 != Dk.apply(rhs, f)) ++bad_dunkl;
          ++vectors;
        }
    }
  }
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b) {
      if (std::abs(a) + std::abs(b) > 5) continue;
      XLaurent f = XLaurent::monomial({a, b});
      if (Dk.D(0, Dk.D(1, f)) != Dk.D(1, Dk.D(0, f))) ++bad_comm;
    }
  std::vector<DahaElement> sample;
  for (int t = 0; t < 4; ++t) sample.push_back(rand_daha(H, g, 2, 2, 1));
  auto rep = polynomial_rep_check(H, sample, 2);
  o.need(bad_assoc == 0, "H' associativity");
  o.need(bad_pbw == 0, "H' PBW");
  o.need(bad_aha == 0, "AHA associativity/PBW");
  o.need(bad_dunkl == 0, "Dunkl relations");
  o.need(bad_comm == 0, "[D0,D1]");
  o.need(rep.ok(), "polynomial representation");
  o.detail << "200+200 products, " << vectors << " Dunkl checks, mismatches " << bad_assoc + bad_pbw + bad_aha + bad_dunkl
           << ", [D0,D1] mismatches " << bad_comm << ", rep products " << rep.products;
}

// ---- 4
void intertwiners(Outcome& o) {
  auto R = RootDatum::type_A(1);
  AffineWeyl aw(R);
  Rational h(1, 2);
  auto H = std::make_shared<const Daha>(aw, HeckeParams::uniform(R, h));
  Weight l0{Rational(1, 4)}, mu{Rational(3, 4)};
  auto sing = invertibility(*H, {0}, l0);
  o.need(!sing.invertible && sing.value == h, "Phi'_s1(lambda0) singular");
  auto inv = invertibility(*H, {0}, mu);
  o.need(inv.invertible, "Phi'_s1 at 3/2 invertible");
  auto bad = intertwiner_matrix(H, {0}, l0, 6).square();
  o.need(bad.rows() > 0 && is_zero(determinant(bad)), "singular matrix");
  auto good = intertwiner_matrix(H, {0}, mu, 6).square();
  o.need(good.rows() >= 12 && inverse(good) * good == QMatrix::identity(good.rows()), "invertible at 3/2");

  // gallery s_heart, s_1 s_heart, s_heart s_1 s_heart, ... inside one domain
  auto d = affine_domains(aw, H->params(), l0);
  std::vector<int> word{1, 0, 1, 0};
  int dom = domain_of(aw, d, aw.simple(1));
  for (size_t k = 0; k <= word.size(); ++k) {
    std::vector<int> w(word.begin() + static_cast<long>(k), word.end());
    w.push_back(1);
    o.need(domain_of(aw, d, aw.from_word(w)) == dom, "gallery in one domain");
  }
  o.need(invertibility(*H, word, mu).invertible, "gallery letters");
  auto B = intertwiner_weight_blocks(H, word, mu, 12);
  o.need(B.M.rows() >= 12, "window size");
  o.need(inverse(B.M) * B.M == QMatrix::identity(B.M.rows()), "exact inverse");
  auto sq = B.M;
  // the singular letter kills a weight space
  auto S = intertwiner_weight_blocks(H, {0}, l0, 12);
  o.need(is_zero(determinant(S.M)), "singular on weight spaces");
  o.detail << "singular value " << sing.value << ", gallery length " << word.size() << ", weight blocks " << sq.rows()
           << " (target window " << B.target_window << ")";
}

// ---- 5
void gamma_oracle(Outcome& o) {
  Rational h(1, 2);
  std::vector<Rational> pts{Rational(-3, 2), Rational(-1, 2), Rational(-5, 2), Rational(-1, 3), Rational(-4, 3),
                            Rational(-2, 5), Rational(1, 3),  Rational(2, 3),  Rational(5, 4),  Rational(-7, 4)};
  auto R = RootDatum::type_A(1);
  Daha H(AffineWeyl(R), HeckeParams::uniform(R, h));
  double worst = 0;
  for (auto& g : pts) {
    auto m = monodromy(kz_problem(H, degenerate_standard(H, Weight{g / 2}, 1)));
    auto [a, b] = rank_one_constants(m, g, h);
    auto [ao, bo] = rank_one_oracle(g, h);
    PrecisionScope ps(256);
    worst = std::max({worst, D(abs(a - ao)), D(abs(b - bo))});
  }
  PrecisionScope ps(256);
  auto [a0, b0] = rank_one_oracle(Rational(-3, 2), h);
  double closed = D(abs(b0 - Complex(3 * pi_real() / 8)));
  o.need(worst < 1e-8, "oracle agreement");
  o.need(closed < 1e-60, "b(3/2) = 3 pi/8");
  o.detail << pts.size() << " points, max |diff| " << worst << ", |b(3/2)-3pi/8| " << closed;
}

// ---- 6, 7
IdentificationCheck a1_identification() {
  auto R = RootDatum::type_A(1);
  return verify_identification(R, Rational(1, 2), Weight{Rational(1, 4)}, AffineWeyl(R).simple(1), MonodromyOptions{});
}
IdentificationCheck a2_identification() {
  auto R = RootDatum::type_A(2);
  return verify_identification(R, Rational(1, 3), rho_over(*R, 3), AffineWeyl(R).simple(0), MonodromyOptions{}, 18);
}

void residuals(Outcome& o) {
  for (int r = 1; r <= 2; ++r) {
    auto c = r == 1 ? a1_identification() : a2_identification();
    auto R = RootDatum::type_A(r);
    Daha H(AffineWeyl(R), HeckeParams::uniform(R, r == 1 ? Rational(1, 2) : Rational(1, 3)));
    auto fib = degenerate_standard(H, c.mu0, 1);
    double spec = D(spectrum_residual(c.rep, fib.weights));
    double q = D(c.rep.quadratic_residual), b = D(c.rep.braid_residual), y = D(c.rep.commute_residual),
           x = D(c.rep.cross_residual);
    o.need(std::max({q, b, y, x, spec}) < 1e-8, "A" + std::to_string(r));
    o.detail << "A" << r << " mu0=" << weight_to_string(c.mu0) << " quad " << q << " braid " << b << " comm " << y
             << " cross " << x << " spectrum " << spec << "; ";
  }
}

void identification(Outcome& o) {
  auto c = a1_identification();
  // candidate 0 is w = 1 (ell0), the other is ell0^{-1}
  bool got = false, rejected = true;
  for (size_t k = 0; k < c.candidate_w.size(); ++k) {
    bool iso = c.id.hom[k].isomorphic;
    if (c.candidate_w[k] == 0) got = iso;
    else if (iso) rejected = false;
  }
  o.need(got, "A1 matched to ell0");
  o.need(rejected, "A1 ell0^-1 rejected");
  o.need(c.consistent, "A1 dagger prediction");
  auto c2 = a2_identification();
  o.need(c2.matched_w.size() == 1 && c2.consistent, "A2 smoke");
  o.detail << "A1 mu0=" << weight_to_string(c.mu0) << " matched w=" << (c.matched_w.empty() ? -1 : c.matched_w[0])
           << " cond(ell0^-1)=" << D(c.id.hom.size() > 1 ? c.id.hom[1].conditioning : Real(0))
           << "; A2 mu0=" << weight_to_string(c2.mu0) << " matched w=" << (c2.matched_w.empty() ? -1 : c2.matched_w[0])
           << " consistent=" << c2.consistent;
}

// ---- 8
void parabolic(Outcome& o) {
  auto R = RootDatum::type_A(1);
  std::vector<Weight> orbit{Weight{Rational(1, 4)}, Weight{Rational(-1, 4)}};
  for (int n : {1, 2}) {
    auto c = verify_parabolic(R, Rational(1, 2), 1u, orbit, n, MonodromyOptions{});
    o.need(c.ok, "n=" + std::to_string(n));
    o.detail << "n=" << n << " dim " << c.dim << " iso " << c.hom.isomorphic << " t-residual " << D(c.t_residual)
             << " spectrum " << D(c.spectrum_residual) << "; ";
  }
  // the exact fixture M(P_{I_k}) = P_I(W ell0)
  Aha A(AhaParams::uniform(R, Cyclotomic(-1)));
  auto P = aha_parabolic(A, 1u, {{Cyclotomic::zeta(4)}, {-Cyclotomic::zeta(4)}}, 1);
  o.need(check_relations(A, P) == 0, "fixture relations");
}

// ---- 9
void schur(Outcome& o) {
  auto R = RootDatum::type_A(1);
  Aha A(AhaParams::uniform(R, Cyclotomic(-1)));
  Cyclotomic i = Cyclotomic::zeta(4);
  for (int n : {1, 2}) {
    auto E = endomorphism_algebra(
        std::vector<AhaFiber>{aha_standard(A, {i}, n), aha_standard(A, {-i}, n), aha_parabolic(A, 1u, {{i}, {-i}}, n)});
    o.detail << "jets n=" << n << ": dim " << E.dim << " rad " << E.radical_dim << " simples " << E.center_dim << "; ";
    if (n == 2) o.need(E.center_dim == 3, "3 simples");
  }
}

// ---- 10
void frobenius(Outcome& o) {
  PrecisionScope ps(256);
  auto F = frobenius_series(scalar_problem(Rational(1, 3)), 16);
  Real fact(1), worst(0);
  for (int k = 0; k <= 16; ++k) {
    if (k) fact *= k;
    worst = std::max(worst, abs(F.H.at(IVec{k})(0, 0) - Complex(Real(1) / fact)));
  }
  o.need(worst < Real(1e-70), "scalar");
  CMatrix a(2, 2), b(2, 2);
  a(0, 0) = Complex(Real(1) / 3);
  a(1, 1) = Complex(Real(-1) / 5);
  b(0, 0) = Complex(Real(2) / 7);
  b(1, 1) = Complex(Real(1) / 9);
  auto C = frobenius_series(constant_problem({a, b}), 6);
  Real cw(0);
  for (auto& [beta, M] : C.H) {
    bool zero = std::all_of(beta.begin(), beta.end(), [](int x) { return x == 0; });
    cw = std::max(cw, distance(M, zero ? CMatrix::identity(2) : CMatrix(2, 2)));
  }
  o.need(cw == 0, "constant");
  auto R = RootDatum::type_A(1);
  Daha H(AffineWeyl(R), HeckeParams::uniform(R, Rational(1, 2)));
  auto S = frobenius_series(kz_problem(H, degenerate_standard(H, Weight{Rational(-3, 4)}, 1)), 8);
  o.need(S.residual < Real(1e-20), "Sylvester");
  auto R2 = RootDatum::type_A(2);
  Daha H2(AffineWeyl(R2), HeckeParams::uniform(R2, Rational(1, 3)));
  auto S2 = frobenius_series(kz_problem(H2, degenerate_standard(H2, Weight{Rational(-4), Rational(-13, 3)}, 1)), 8);
  o.need(S2.residual < Real(1e-20), "Sylvester A2");
  o.detail << "scalar err " << D(worst) << ", constant err " << D(cw) << ", Sylvester A1 " << D(S.residual) << " A2 "
           << D(S2.residual);
}

struct Criterion {
  const char* name;
  double budget;  // seconds
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int k = 1; k < argc; ++k)
    if (std::string(argv[k]) == "--only" && k + 1 < argc) only = std::atoi(argv[++k]);
  std::vector<Criterion> all{
      {"A1 simple characters", 10, characters},
      {"domain census", 30, census},
      {"algebra relation suite", 60, relations},
      {"intertwiner criterion", 10, intertwiners},
      {"Gamma-oracle agreement", 120, gamma_oracle},
      {"monodromy AHA residuals", 300, residuals},
      {"identification", 300, identification},
      {"parabolic/jet identification", 600, parabolic},
      {"Schur example", 60, schur},
      {"Frobenius solver suite", 60, frobenius},
  };
  int failed = 0;
  for (size_t k = 0; k < all.size(); ++k) {
    int id = static_cast<int>(k) + 1;
    if (only && only != id) continue;
    Outcome o;
    o.detail.precision(3);
    auto t0 = std::chrono::steady_clock::now();
    try {
      all[k].run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > all[k].budget) o.need(false, "time budget");
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << all[k].name << " (" << std::fixed
              << std::setprecision(1) << dt << " s / " << all[k].budget << " s): " << std::defaultfloat
              << std::setprecision(3) << o.detail.str() << std::endl;
    if (!o.pass) ++failed;
  }
  return failed ? 1 : 0;
}
