#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dahakz/hecke.hpp"
#include "dahakz/linalg.hpp"

namespace dahakz {

enum class Side { degenerate, aha };

// Finite-dimensional module over the finite part: kW x| S' (F = Rational) or the
// affine Hecke algebra (F = Cyclotomic). Basis (coset rep v, jet basis element).
template <class F>
struct FiberModule {
  Side side = Side::degenerate;
  RootDatumPtr rd;
  std::vector<Matrix<F>> s;       // s_i, resp. t_i, for i < r
  std::vector<Matrix<F>> xi;      // xi_j, resp. y_j = y_{omega_j^vee}
  std::vector<Matrix<F>> xi_inv;  // y_j^{-1} (aha side only)
  std::vector<std::vector<F>> weights;  // predicted generalized weight of each basis vector
  // inducing datum
  unsigned J = 0;
  std::vector<std::vector<F>> orbit;
  int n = 1;
  std::vector<int> cosets;  // W^J, in the basis order
  std::string label;

  size_t dim() const { return weights.size(); }
};
using DegFiber = FiberModule<Rational>;
using AhaFiber = FiberModule<Cyclotomic>;

// H'_J (x) S_{O',n} induced up to kW x| S'. orbit must be one W_J-orbit of regular points.
DegFiber degenerate_parabolic(const Daha& H, unsigned J, const std::vector<Weight>& orbit, int n);
DegFiber degenerate_standard(const Daha& H, const Weight& mu, int n);
AhaFiber aha_parabolic(const Aha& A, unsigned J, const std::vector<std::vector<Cyclotomic>>& orbit, int n);
AhaFiber aha_standard(const Aha& A, const std::vector<Cyclotomic>& ell, int n);
// W_J-orbit of a point (finite Weyl group only)
std::vector<Weight> parabolic_orbit(const RootDatum& rd, unsigned J, const Weight& mu);
std::vector<std::vector<Cyclotomic>> parabolic_orbit(const RootDatum& rd, unsigned J, const std::vector<Cyclotomic>& ell);
// W^J: minimal length coset representatives, in group index order
std::vector<int> min_coset_reps(const RootDatum& rd, unsigned J);
// w = v u with v in W^J, u in W_J
std::pair<int, int> coset_split(const RootDatum& rd, unsigned J, int w);

template <class F>
FiberModule<F> direct_sum(const std::vector<FiberModule<F>>& ms);

// Number of relation violations (0 means every relation holds exactly).
int check_relations(const Daha& H, const DegFiber& M);
int check_relations(const Aha& A, const AhaFiber& M);

// Joint generalized eigenspace dimensions of commuting operators. Candidate weights are the
// predicted ones; throws std::logic_error if the candidates do not exhaust the space.
template <class F>
std::vector<std::pair<std::vector<F>, int>> joint_character(const std::vector<Matrix<F>>& ops,
                                                            const std::vector<std::vector<F>>& predicted);

using Character = std::map<Weight, int>;
std::vector<std::pair<std::vector<Cyclotomic>, int>> character(const AhaFiber& M);
Character character(const DegFiber& M);

// I(M) = H' (x)_{kW x| S'} M truncated to translations x_beta with length(x_beta) <= L.
// This window is closed under W and all xi; s_heart and x_beta may leave it.
class InducedModule {
 public:
  InducedModule(std::shared_ptr<const Daha> H, DegFiber fiber, int L);
  const Daha& algebra() const { return *H_; }
  const DegFiber& fiber() const { return fiber_; }
  int window() const { return L_; }
  const std::vector<IVec>& translations() const { return trans_; }
  size_t dim() const { return trans_.size() * fiber_.dim(); }
  size_t index(size_t t, size_t m) const { return t * fiber_.dim() + m; }
  int translation_index(const IVec& beta) const;

  struct Image {
    std::vector<Rational> v;
    bool out_of_window = false;
  };
  // a (x_beta (x) m) for a basis vector
  Image apply_basis(const DahaElement& a, size_t basis) const;
  Image apply(const DahaElement& a, const std::vector<Rational>& v) const;
  // matrix of a; columns whose image leaves the window are flagged (and truncated)
  QMatrix matrix(const DahaElement& a, std::vector<bool>* complete = nullptr) const;
  const std::vector<QMatrix>& xi_matrices() const;
  std::vector<Weight> weights() const;
  // cyclic vector 1 (x) (first fiber basis vector)
  size_t cyclic_index() const { return index(static_cast<size_t>(translation_index(IVec(fiber_.rd->rank(), 0))), 0); }

 private:
  const QMatrix& group_matrix(int w) const;
  QMatrix poly_matrix(const XiPoly& q) const;
  std::shared_ptr<const Daha> H_;
  DegFiber fiber_;
  int L_;
  std::vector<IVec> trans_;
  std::map<IVec, int> tidx_;
  mutable std::map<int, QMatrix> gmat_;
  mutable std::vector<QMatrix> xi_;
};

// length(x_beta) = sum over positive coroots of |(beta : beta^vee)|
int translation_length(const RootDatum& rd, const IVec& beta);
std::vector<IVec> translation_window(const RootDatum& rd, int L);

InducedModule induce(std::shared_ptr<const Daha> H, const DegFiber& fiber, int L);
InducedModule standard_module(std::shared_ptr<const Daha> H, const Weight& mu, int L, int n = 1);
InducedModule parabolic_module(std::shared_ptr<const Daha> H, unsigned J, const std::vector<Weight>& orbit, int L,
                               int n = 1);
Character character(const InducedModule& M);

// Checks rho(a) rho(b) = rho(ab) on every basis vector whose images stay in the window.
struct HomomorphismReport {
  int checked = 0, skipped = 0, mismatches = 0;
};
HomomorphismReport check_homomorphism(const InducedModule& M, const std::vector<DahaElement>& gens);

// Phi'_w(mu): P(w mu) -> P(mu), g 1_{w mu} -> g phi'_w 1_mu, on the translation window L.
struct IntertwinerMatrix {
  QMatrix M;                  // rows: basis of P(mu), columns: basis of P(w mu)
  std::vector<bool> complete; // column image inside the window
  std::vector<size_t> square_indices() const;  // complete columns with image supported on them
  QMatrix square() const;
};
IntertwinerMatrix intertwiner_matrix(std::shared_ptr<const Daha> H, const std::vector<int>& word, const Weight& mu,
                                     int L);

// Phi'_w(mu) on the xi-eigenspaces of P(w mu) inside the window L, in eigenvector bases.
// Only weights present in both windows are kept; the target window is enlarged until every
// source vector used maps without leaving it.
struct WeightBlockIntertwiner {
  std::vector<Weight> weights;
  std::vector<size_t> block;  // eigenspace dimension per weight
  QMatrix M;                  // block diagonal, rows and columns in weight order
  int target_window = 0;
};
WeightBlockIntertwiner intertwiner_weight_blocks(std::shared_ptr<const Daha> H, const std::vector<int>& word,
                                                 const Weight& mu, int L);

struct Invertibility {
  bool invertible = true;
  int position = -1;  // index in the word of the failing letter
  int letter = -1;
  Rational value;     // xi_{alpha_i^vee}(v mu) at the failing letter
};
// Letter-by-letter criterion for Phi'_w(mu), w = s_{i_1} ... s_{i_k}.
Invertibility invertibility(const Daha& H, const std::vector<int>& word, const Weight& mu);
struct TorusInvertibility {
  bool invertible = true;
  int position = -1, letter = -1;
};
TorusInvertibility invertibility(const Aha& A, const std::vector<int>& word, const std::vector<Cyclotomic>& ell);

// Commutant of the generators of a module over the affine Hecke algebra.
struct EndomorphismAlgebra {
  size_t dim = 0;
  size_t radical_dim = 0;
  size_t center_dim = 0;  // of End / rad: the number of simple modules
  std::vector<CycMatrix> basis;
};
EndomorphismAlgebra endomorphism_algebra(const AhaFiber& M);
EndomorphismAlgebra endomorphism_algebra(const std::vector<AhaFiber>& Ms);

// A1 fixtures with lambda0 = rho/2, h0 = 1/2: the finite-dimensional simple V(lambda0)
// (s_1 = s_heart = 1, xi_1 = 1/4) and the one-dimensional V(ell0^{+-1}).
struct AffineFiniteModule {
  std::vector<QMatrix> s;  // s_0 .. s_{r-1}, s_heart
  std::vector<QMatrix> xi;
};
AffineFiniteModule a1_simple_lambda0();
int check_relations(const Daha& H, const AffineFiniteModule& M);
AhaFiber a1_simple_ell0(int sign);

// Sum over J of ch V_J (from the domain census) against ch P(w lambda0), on weights with
// |(nu : beta^vee)| <= box.
struct CompositionReport {
  int weights_compared = 0;
  int mismatches = 0;
  bool ok() const { return mismatches == 0; }
};
CompositionReport composition_check(const AffineWeyl& aw, const HeckeParams& p, const Weight& lambda0,
                                    const AffineElement& w, const Rational& box);

}  // namespace dahakz
