#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dahakz/arrangements.hpp"
#include "dahakz/hecke.hpp"
#include "dahakz/modules.hpp"
#include "dahakz/numeric.hpp"

namespace dahakz {

// Tolerance not reached (CLI exit code 4).
struct ToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResonanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using CVec = std::vector<Complex>;

// C_j z^beta / (1 - z^beta)
struct GeometricTerm {
  IVec beta;
  std::vector<CMatrix> C;
};
// C_j z^gamma
struct PolynomialTerm {
  IVec gamma;
  std::vector<CMatrix> C;
};

// d - sum_j A_j du_j on a fiber, z_j = exp(u_j) = x_{alpha_j}, z^beta = exp(sum beta_j u_j).
struct ConnectionProblem {
  int r = 0;
  size_t d = 0;
  int bits = 256;
  RootDatumPtr rd;  // may be null for abstract problems
  std::vector<CMatrix> A0;
  std::vector<GeometricTerm> geometric;
  std::vector<PolynomialTerm> polynomial;
  // fiber data (kz_problem only)
  std::vector<CMatrix> S;                  // s_i on the fiber
  std::vector<Rational> h;                 // h_i of the finite simple roots
  Weight rho_tilde;
  std::vector<std::vector<Rational>> exponents;  // exact eigenvalues of A_{j0}, per j
  std::vector<Weight> weights;             // generalized xi-weights of the fiber
  std::string label;

  std::vector<CMatrix> A(const CVec& u) const;
  // min over geometric terms of |1 - z^beta|
  Real margin(const CVec& u) const;
};

ConnectionProblem kz_problem(const Daha& H, const DegFiber& M, int bits = 256);
// A_j(z) = m + z in one variable (scalar check problem)
ConnectionProblem scalar_problem(const Rational& m, int bits = 256);
ConnectionProblem constant_problem(const std::vector<CMatrix>& A0, int bits = 256);

// max over j of ||d_j A_k - d_k A_j + [A_k, A_j]|| / (1 + ||A||^2) at the point u
Real flatness_residual(const ConnectionProblem& P, const CVec& u);

struct FundamentalSolution {
  int order = 0;
  std::map<IVec, CMatrix> H;  // H_beta, |beta| <= order, H_0 = Id
  Real residual;              // max Sylvester-consistency residual over all j
  CMatrix H_at(const CVec& u) const;
  CMatrix G_at(const ConnectionProblem& P, const CVec& u) const;
  // sum over |beta| = order of ||H_beta|| |z^beta|
  Real tail(const CVec& u) const;
};
// Throws ResonanceError when two exponents of some A_{j0} differ by a nonzero integer.
FundamentalSolution frobenius_series(const ConnectionProblem& P, int N);

struct Path {
  std::function<CVec(const Real&)> u, du;  // t in [0, 1]
  std::string label;
};
Path straight_path(const CVec& a, const CVec& b);
// u_j -> u_j + 2 pi i
Path loop_path(const CVec& base, int j);
// base -> s_j(base) with a detour i sigma delta sin(pi t) along alpha_j^vee
Path tau_path(const RootDatum& rd, const CVec& base, int j, int sigma, const Real& delta);
Path reversed(const Path& p);
Path subpath(const Path& p, const Real& a, const Real& b);

struct TransportOptions {
  double tol = 1e-32;
  double margin = 1e-4;
  int max_steps = 20000;
};
struct Transport {
  CMatrix U;
  Real error;        // accumulated local error estimate
  Real min_margin;   // min |1 - z^beta| seen
  int steps = 0, rejected = 0;
};
// Solution operator of dX/dt = (sum_j u_j'(t) A_j(u(t))) X, X(0) = Id, by Gragg-Bulirsch-Stoer extrapolation.
Transport transport(const ConnectionProblem& P, const Path& path, const TransportOptions& opt = {});

struct MonodromyOptions {
  int bits = 256;      // precision of problems built by the verify_ functions
  double c = 3;        // base point u_j = -c
  int order = 0;       // 0: grow until the series tail is below series_tol
  double series_tol = 1e-36;
  int sigma = -1;      // detour orientation of tau_j
  TransportOptions transport;
  double tol = 1e-8;   // relation tolerance
  int jobs = 1;
};

struct MonodromyRep {
  int r = 0;
  size_t d = 0;
  int bits = 256;
  std::vector<CMatrix> Y, T;            // raw monodromy
  std::vector<CMatrix> y, y_inv, t;     // y_j = e^{rho~_j} Y_j, t_j = zeta_j T_j
  std::vector<Complex> zeta, zeta_half;
  int order = 0;
  Real series_residual, series_tail, transport_error, loop_check;
  Real quadratic_residual, braid_residual, commute_residual, cross_residual;
  bool relations_ok(double tol) const;
};
MonodromyRep monodromy(const ConnectionProblem& P, const MonodromyOptions& opt = {});

// (a(-gamma), b(-gamma)) with e^z = exp(2 pi i z), zeta^{1/2} = exp(pi i h).
// Throws ScopeError near a pole or zero of the Gamma factors.
std::pair<Complex, Complex> rank_one_oracle(const Rational& gamma, const Rational& h);
// the same constants read off the monodromy of P'(nu), gamma = (nu : alpha^vee), in A1
std::pair<Complex, Complex> rank_one_constants(const MonodromyRep& m, const Rational& gamma, const Rational& h);

// Complex representation (t_i, y_j, y_j^{-1}).
struct AhaRep {
  std::vector<CMatrix> t, y, y_inv;
  size_t dim() const { return t.empty() ? 0 : t[0].rows(); }
};
AhaRep to_rep(const AhaFiber& M);
AhaRep to_rep(const MonodromyRep& m);
// residuals of the affine Hecke relations for a complex representation
struct AhaResiduals {
  Real quadratic, braid, commute, cross;
};
AhaResiduals aha_residuals(const Aha& A, const AhaRep& rep);

struct HomReport {
  int hom_dim = 0;
  bool isomorphic = false;
  Real conditioning;  // min pivot / max entry of a generic homomorphism
  CMatrix X;          // that generic homomorphism
};
// Hom(from, to) by the null space of X rho_from(g) = rho_to(g) X.
HomReport hom_compare(const AhaRep& from, const AhaRep& to, double tol);
// Is there a joint y-eigenvector with eigenvalue point m generating the whole space?
bool cyclic_eigenvector(const AhaRep& rep, const std::vector<Complex>& m, double tol, std::vector<Complex>* vec = nullptr);

struct Identification {
  std::vector<HomReport> hom;       // per candidate
  std::vector<bool> cyclic;         // cyclic eigenvector at the candidate's point
  std::vector<int> matches;         // candidates isomorphic to the monodromy module
};
// candidates must be standard modules P(ell) (the point is read from orbit[0]).
Identification identify(const MonodromyRep& m, const std::vector<AhaFiber>& candidates, double tol);

struct IdentificationCheck {
  AffineElement what;
  Weight mu0;                    // deep point in the affine domain of what
  int domain = -1;
  std::vector<int> predicted_w;  // w in W with dagger(D_w) = domain
  std::vector<std::vector<Cyclotomic>> points;  // w ell0 per candidate w
  std::vector<int> candidate_w;
  Identification id;
  std::vector<int> matched_w;
  bool consistent = false;
  MonodromyRep rep;
};
// Identification of P(what lambda0)^nabla with the P(w ell0).
IdentificationCheck verify_identification(const RootDatumPtr& rd, const Rational& h0, const Weight& lambda0,
                                   const AffineElement& what, const MonodromyOptions& opt, int depth_bound = 12,
                                   const Rational& kappa = Rational(3));

struct ParabolicCheck {
  size_t dim = 0;
  HomReport hom;
  Real t_residual;     // max_j in J ||t_j v - zeta_j v|| on the image of 1_O
  Real spectrum_residual;
  bool deep = true;
  bool ok = false;
  MonodromyRep rep;
};
// Monodromy of P'_J(orbit)_n against P_J(e^orbit)_n.
ParabolicCheck verify_parabolic(const RootDatumPtr& rd, const Rational& h0, unsigned J, const std::vector<Weight>& orbit,
                                int n, const MonodromyOptions& opt, const Rational& kappa = Rational(3));

// max coefficient distance between the characteristic polynomial of sum_j c_j y_j and the
// one predicted from the exponentials of the fiber weights
Real spectrum_residual(const MonodromyRep& m, const std::vector<Weight>& weights);

}  // namespace dahakz
