#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "dahakz/root_data.hpp"

namespace dahakz {

// x_beta w in the affine Weyl group Y x| W (beta in root coordinates).
struct AffineElement {
  IVec t;
  int w = 0;
  bool operator<(const AffineElement& o) const { return std::tie(t, w) < std::tie(o.t, o.w); }
  bool operator==(const AffineElement& o) const { return t == o.t && w == o.w; }
  bool operator!=(const AffineElement& o) const { return !(*this == o); }
};

// Element of the extended group X x| W (translation in the weight lattice).
struct ExtAffineElement {
  Weight t;
  int w = 0;
};

// Affine-linear function xi_{lambda^vee} + c on X_k.
struct AffineLinear {
  Coweight lv;
  Rational c;
  Rational eval(const Weight& lambda) const;
};

class AffineWeyl {
 public:
  explicit AffineWeyl(RootDatumPtr rd);
  const RootDatum& datum() const { return *rd_; }
  RootDatumPtr datum_ptr() const { return rd_; }
  int rank() const { return rd_->rank(); }
  int heart() const { return rd_->rank(); }  // index of s_heart among simple affine reflections

  AffineElement identity() const;
  AffineElement translation(const IVec& beta) const;
  AffineElement finite(int w) const;
  AffineElement simple(int i) const;  // i in [0, r]; i == r is s_heart = x_theta s_theta
  AffineElement mul(const AffineElement& a, const AffineElement& b) const;
  AffineElement inverse(const AffineElement& a) const;
  AffineElement from_word(const std::vector<int>& word) const;

  Weight act(const AffineElement& g, const Weight& lambda) const;
  AffineLinear act(const AffineElement& g, const AffineLinear& f) const;
  // affine coroot (beta^vee, r): returns the image as (coroot index, r)
  std::pair<int, Rational> act_affine_coroot(const AffineElement& g, int coroot_k, const Rational& r) const;

  // alcove-crossing count from A_+ to g(A_+)
  int length(const AffineElement& g) const;
  std::vector<int> reduced_word(const AffineElement& g) const;
  // (rho / K) with K = ceil((rho : theta^vee)) + 2, interior of A_+
  const Weight& alcove_sample() const { return sample_; }
  bool in_fundamental_alcove(const Weight& lambda) const;

  struct OrbitPoint {
    AffineElement g;
    Weight point;
    int length;
  };
  // Ball of all elements with length <= L, in BFS (length) order.
  std::vector<std::pair<AffineElement, int>> ball(int L) const;
  // Orbit points g(lambda) with length(g) <= L, one shortest representative each.
  std::vector<OrbitPoint> orbit(const Weight& lambda, int L) const;

  struct Stabilizer {
    std::vector<AffineElement> elements;  // found in the ball
    std::vector<AffineElement> certificate;  // {x_{lambda - w lambda} w ; lambda - w lambda in Y}
    bool complete = false;
  };
  Stabilizer stabilizer(const Weight& lambda, int search_bound) const;

  struct StabilizerComparison {
    std::vector<int> W_lambda, W_exp;  // finite stabilizers of lambda and of e^lambda
    std::vector<AffineElement> What_lambda;
    bool lhs = false, rhs = false;  // W_lambda == W_{e^lambda}, W_lambda == What_lambda
    bool holds() const { return lhs == rhs; }
  };
  StabilizerComparison compare_stabilizers(const Weight& lambda) const;

  // Omega for type A: x_{omega_pi} w_pi preserving A_+.
  std::vector<ExtAffineElement> omega() const;
  Weight act(const ExtAffineElement& g, const Weight& lambda) const;
  // Finds g in the extended group with stabilizer of g(lambda) inside W.
  std::pair<ExtAffineElement, Weight> normalize_by_omega(const Weight& lambda) const;

  // Bound on length(g) for g(lambda) with |(g lambda : beta^vee)| <= box for all beta^vee.
  int length_bound_for_box(const Weight& lambda, const Rational& box) const;

 private:
  RootDatumPtr rd_;
  Weight sample_;
};

// Coroots beta^vee with (lambda0 : beta^vee) in Z + Z h0 (cyclotomic coordinates allowed).
std::vector<int> integral_coroots(const RootDatum& rd, const std::vector<Cyclotomic>& lambda0, const Rational& h0);

struct ParameterBridge {
  Cyclotomic zeta0, tau0;
  std::vector<Cyclotomic> ell0;  // y_j(ell0) = e^{u0 lambda0_j}
  bool valid = true;
  std::optional<std::pair<Rational, int>> witness;  // (k, coroot index or -1 for 0)
};
// e^z = exp(2 pi i z); u0 must be rational (exact scope).
ParameterBridge parameter_bridge(const RootDatum& rd, const Rational& h0, const Weight& lambda0, const Rational& u0,
                                 int bound);

}  // namespace dahakz
