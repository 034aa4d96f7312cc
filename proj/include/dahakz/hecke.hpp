#pragma once

#include <map>
#include <mutex>
#include <random>
#include <vector>

#include "dahakz/params.hpp"
#include "dahakz/rings.hpp"

namespace dahakz {

// Sum of x_beta w p(xi) over affine Weyl elements x_beta w.
struct DahaElement {
  int r = 0;
  std::map<AffineElement, XiPoly> terms;

  bool is_zero() const { return terms.empty(); }
  DahaElement& add(const AffineElement& g, const XiPoly& p);
  DahaElement operator+(const DahaElement& o) const;
  DahaElement operator-(const DahaElement& o) const;
  DahaElement scaled(const Rational& c) const;
  bool operator==(const DahaElement& o) const { return terms == o.terms; }
};

// Degenerate double affine Hecke algebra H' in the normal form R (x) kW (x) S'.
class Daha {
 public:
  Daha(const AffineWeyl& aw, HeckeParams p);
  const AffineWeyl& affine_weyl() const { return aw_; }
  const RootDatum& datum() const { return aw_.datum(); }
  const HeckeParams& params() const { return p_; }
  int rank() const { return aw_.rank(); }

  DahaElement zero() const { return DahaElement{rank(), {}}; }
  DahaElement scalar(const Rational& c) const;
  DahaElement group(const AffineElement& g) const;
  DahaElement x(const IVec& beta) const { return group(aw_.translation(beta)); }
  DahaElement finite(int w) const { return group(aw_.finite(w)); }
  DahaElement simple(int i) const { return group(aw_.simple(i)); }
  DahaElement xi(const XiPoly& p) const;
  DahaElement xi_var(int j) const { return xi(XiPoly::variable(rank(), j)); }
  DahaElement laurent(const XLaurent& f) const;

  DahaElement mul(const DahaElement& a, const DahaElement& b, std::mt19937_64* rng = nullptr) const;
  // p g = sum g' q_{g'}, computed letter by letter along a reduced word of g
  // (a random reduced word when rng is given).
  std::map<AffineElement, XiPoly> commute(const XiPoly& p, const AffineElement& g, std::mt19937_64* rng = nullptr) const;

  // h of the simple affine reflection i in [0, r] and xi_{alpha_i^vee} (affine-linear for i == r)
  Rational h_simple(int i) const;
  XiPoly xi_simple_coroot(int i) const;
  // phi'_i = s_i xi_{alpha_i^vee} - h_i and products along a word
  DahaElement intertwiner(int i) const;
  DahaElement intertwiner(const std::vector<int>& word) const;

 private:
  std::map<AffineElement, XiPoly> commute_monomial(const Exponent& e, const AffineElement& g,
                                                   const std::vector<int>& word) const;
  AffineWeyl aw_;
  HeckeParams p_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<Exponent, AffineElement>, std::map<AffineElement, XiPoly>> cache_;
};

// A random reduced word of g (uniform choice among left descents at each step).
std::vector<int> random_reduced_word(const AffineWeyl& aw, const AffineElement& g, std::mt19937_64& rng);

// Polynomial representation of H' on R = kY: x_beta multiplies, w permutes, xi_j acts by D_j.
class DunklRep {
 public:
  explicit DunklRep(const Daha& H);
  XLaurent D(int j, const XLaurent& f) const;
  XLaurent apply_xi(const XiPoly& p, const XLaurent& f) const;
  XLaurent apply(const DahaElement& a, const XLaurent& f) const;

 private:
  const Daha& H_;
  Weight rho_tilde_;
};

struct RepCheckReport {
  int products = 0;
  int test_vectors = 0;
  int mismatches = 0;
  int zero_actions = 0;  // nonzero elements acting as zero on the test space
  bool ok() const { return mismatches == 0 && zero_actions == 0; }
};
// Checks rho(ab) = rho(a) rho(b) on all x_beta with |beta_i| <= d.
RepCheckReport polynomial_rep_check(const Daha& H, const std::vector<DahaElement>& sample, int d);

// Sum of t_w p_w(y) over finite Weyl elements w.
struct AhaElement {
  int r = 0;
  std::map<int, YLaurent> terms;

  bool is_zero() const { return terms.empty(); }
  AhaElement& add(int w, const YLaurent& p);
  AhaElement operator+(const AhaElement& o) const;
  AhaElement operator-(const AhaElement& o) const;
  AhaElement scaled(const Cyclotomic& c) const;
  bool operator==(const AhaElement& o) const { return terms == o.terms; }
};

// Affine Hecke algebra in the Bernstein normal form (+)_w t_w S.
class Aha {
 public:
  explicit Aha(AhaParams p);
  const RootDatum& datum() const { return *p_.rd; }
  const AhaParams& params() const { return p_; }
  int rank() const { return p_.rd->rank(); }

  AhaElement zero() const { return AhaElement{rank(), {}}; }
  AhaElement scalar(const Cyclotomic& c) const;
  AhaElement t(int w) const;
  AhaElement t_simple(int i) const { return t(datum().simple(i)); }
  AhaElement y(const IVec& coweight) const;
  AhaElement poly(const YLaurent& p) const;

  AhaElement mul(const AhaElement& a, const AhaElement& b, std::mt19937_64* rng = nullptr) const;
  // p t_v = sum t_w q_w along a reduced word of v
  std::map<int, YLaurent> commute(const YLaurent& p, int v, std::mt19937_64* rng = nullptr) const;
  // (sum t_w q_w) t_i
  std::map<int, YLaurent> right_mul_t(const std::map<int, YLaurent>& a, int i) const;

  // phi_i = t_i (y_{-alpha_i^vee} - 1) + zeta_i - 1
  AhaElement intertwiner(int i) const;
  AhaElement intertwiner(const std::vector<int>& word) const;

 private:
  AhaParams p_;
};

std::vector<int> random_reduced_word(const RootDatum& rd, int w, std::mt19937_64& rng);

}  // namespace dahakz
