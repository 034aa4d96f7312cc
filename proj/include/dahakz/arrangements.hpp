#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dahakz/affine_weyl.hpp"
#include "dahakz/params.hpp"

namespace dahakz {

// Linear inequality a.x + b > 0 (strict) or >= 0.
struct Inequality {
  std::vector<Rational> a;
  Rational b;
  bool strict = true;
};

// Exact Fourier-Motzkin feasibility; returns an interior point when feasible.
std::optional<std::vector<Rational>> fm_solve(const std::vector<Inequality>& sys, int dim);

// Affine coroot (beta^vee, r); xi(mu) = (mu : beta^vee) + r.
struct AffineCoroot {
  int k;  // coroot index (any sign)
  Rational r;
  bool operator<(const AffineCoroot& o) const { return std::tie(k, r) < std::tie(o.k, o.r); }
  bool operator==(const AffineCoroot& o) const { return k == o.k && r == o.r; }
};

// H_lambda = {(beta^vee, r) : (lambda : beta^vee) + r = +-h_beta}, both signs of each hyperplane.
std::vector<AffineCoroot> critical_arrangement(const HeckeParams& p, const Weight& lambda);
// One representative per hyperplane (positive coroot).
std::vector<AffineCoroot> canonical_hyperplanes(const RootDatum& rd, const std::vector<AffineCoroot>& hs);

struct Cell {
  std::vector<int> signs;  // +1 / -1 per hyperplane
  Weight point;            // strict interior point
  bool bounded = false;
};

// Full-dimensional cells of the complement of a finite affine arrangement in X_R.
class Arrangement {
 public:
  Arrangement(RootDatumPtr rd, std::vector<AffineCoroot> hyperplanes);
  const std::vector<AffineCoroot>& hyperplanes() const { return hs_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const RootDatum& datum() const { return *rd_; }
  // sign vector of a point; nullopt when it lies on a hyperplane
  std::optional<std::vector<int>> signs_of(const Weight& mu) const;
  int cell_of(const Weight& mu) const;  // -1 on a hyperplane
  bool realizable(const std::vector<int>& signs) const;

 private:
  RootDatumPtr rd_;
  std::vector<AffineCoroot> hs_;
  std::vector<Cell> cells_;
  std::map<std::vector<int>, int> idx_;
};

// Domains: orbits of cells under a group acting on X_R.
struct Domain {
  std::vector<int> cells;
  bool bounded = false;
  std::string label;
};

struct AffineDomains {
  Arrangement arr;
  std::vector<Domain> domains;
  std::vector<int> domain_of_cell;
  bool family = false;  // lambda = rho/n, h = k/n detected
  int n = 0, k = 0;
  // family data: I_k (sign as in the domain labels), and J-label per domain (bitmask over I_k)
  std::vector<AffineCoroot> I_k;
  std::vector<unsigned> J_of_domain;
  int domain_of_point(const Weight& mu) const;
  int bounded_count() const;
};

// Affine domains of U_lambda (stabilizer orbits of cells of H_lambda).
AffineDomains affine_domains(const AffineWeyl& aw, const HeckeParams& p, const Weight& lambda);

struct Alcove {
  AffineElement w;
  Weight sample;  // w^{-1}(rho / K)
};
Alcove alcove_of(const AffineWeyl& aw, const AffineElement& w);
int domain_of(const AffineWeyl& aw, const AffineDomains& d, const AffineElement& w);

// Weights w lambda_0 with length(w) <= L and A_w in the domain; in BFS order.
std::vector<Weight> domain_character(const AffineWeyl& aw, const AffineDomains& d, int domain, const Weight& lambda0,
                                     int L);
// Domain carrying the J-label (bitmask over I_k); -1 if absent.
int domain_with_label(const AffineDomains& d, unsigned J);

// Domains of U_ell: W_ell orbits of cells of the linear arrangement H_ell.
struct ChamberDomains {
  Arrangement arr;
  std::vector<int> hyperplane_coroots;  // positive coroot indices
  std::vector<Domain> domains;
  std::vector<int> domain_of_cell;
  std::vector<int> W_ell;
  int domain_of_point(const Weight& mu) const;
};
ChamberDomains chamber_domains(const AhaParams& p, const std::vector<Cyclotomic>& ell);
// D_w for the chamber C_w = w^{-1} C_+
int chamber_domain_of(const ChamberDomains& cd, int w);

// Injection from domains of U_ell to affine domains of U_lambda.
struct DaggerResult {
  std::vector<int> image;  // per chamber domain
  bool injective = false;
};
DaggerResult dagger(const AffineWeyl& aw, const AffineDomains& ad, const ChamberDomains& cd);

}  // namespace dahakz
