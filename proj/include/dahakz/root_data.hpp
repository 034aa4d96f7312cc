#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dahakz/scalar.hpp"

namespace dahakz {

using IVec = std::vector<int>;        // lattice vector (root or coroot coordinates)
using Weight = std::vector<Rational>;  // root-basis coordinates lambda_j = (lambda : omega_j^vee)
using Coweight = std::vector<Rational>;  // fundamental-coweight coordinates c_j = (alpha_j : lambda^vee)
using IMat = std::vector<IVec>;

// Irreducible reduced root system with its finite Weyl group.
// Roots live in the root-lattice basis, coroots in the coroot-lattice basis.
class RootDatum {
 public:
  // cartan[i][j] = (alpha_j : alpha_i^vee)
  explicit RootDatum(const std::vector<std::vector<int>>& cartan, std::string name = "custom");
  static std::shared_ptr<const RootDatum> type_A(int r);
  static std::shared_ptr<const RootDatum> from_name(const std::string& name);  // "A1".."A4"
  static std::shared_ptr<const RootDatum> from_cartan_file(const std::string& path);

  int rank() const { return r_; }
  const std::string& name() const { return name_; }
  // (alpha_i : alpha_j^vee)
  int a(int i, int j) const { return P_[i][j]; }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  // roots: indices [0, npos) positive, [npos, 2 npos) their negatives
  int num_positive() const { return npos_; }
  int num_roots() const { return 2 * npos_; }
  const IVec& root(int k) const { return roots_[k]; }
  const IVec& coroot(int k) const { return coroots_[k]; }
  int root_index(const IVec& beta) const;  // -1 if not a root
  int coroot_index(const IVec& bv) const;
  int negate(int k) const { return k < npos_ ? k + npos_ : k - npos_; }
  bool is_positive(int k) const { return k < npos_; }
  int simple_root_index(int i) const;  // index of alpha_i in the root list
  int highest_root() const { return theta_; }
  int height(const IVec& v) const;
  int coxeter_number() const { return coxeter_; }
  const Weight& rho() const { return rho_; }
  // W-orbit label of each root (for parameters h_beta constant on orbits)
  int root_orbit(int k) const { return orbit_[k]; }

  // pairings
  Rational pair(const Weight& lambda, const IVec& coroot_coords) const;
  Rational pair_coweight(const Weight& lambda, const Coweight& lv) const;
  int pair_int(const IVec& beta, const IVec& coroot_coords) const;
  Coweight coroot_as_coweight(const IVec& coroot_coords) const;
  IVec coroot_in_coweight_basis(const IVec& coroot_coords) const;
  Weight fundamental_weight(int i) const;
  Weight from_fundamental(const std::vector<Rational>& m) const;
  std::vector<Rational> to_fundamental(const Weight& lambda) const;

  // finite Weyl group; element 0 is the identity
  int order() const { return static_cast<int>(mats_.size()); }
  const IMat& matrix(int w) const { return mats_[w]; }  // on root coordinates
  int mul(int v, int w) const { return mult_[v][w]; }
  int inv(int w) const { return inv_[w]; }
  int length(int w) const { return len_[w]; }
  const std::vector<int>& word(int w) const { return words_[w]; }  // reduced word s_{i1}...s_{ik}
  int simple(int i) const { return simple_[i]; }
  int reflection(int root_k) const;  // s_beta
  int from_word(const std::vector<int>& word) const;
  int index_of_matrix(const IMat& m) const;
  int longest() const { return longest_; }

  Weight act(int w, const Weight& lambda) const;
  IVec act(int w, const IVec& beta) const;
  int act_root(int w, int k) const;
  IVec act_coroot(int w, const IVec& cv) const;
  // action on fundamental-coweight coordinates
  Coweight act_coweight(int w, const Coweight& lv) const;
  IVec act_coweight(int w, const IVec& lv) const;

  Weight reflect(const Weight& lambda, int root_k) const;
  std::vector<int> coroot_level_set(int j) const;  // coroot indices with (rho : beta^vee) = j

 private:
  void build();
  int r_;
  std::string name_;
  std::vector<std::vector<int>> cartan_, P_;
  int npos_ = 0, theta_ = 0, coxeter_ = 0, longest_ = 0;
  std::vector<IVec> roots_, coroots_;
  std::map<IVec, int> root_idx_, coroot_idx_;
  std::vector<int> orbit_;
  Weight rho_;
  std::vector<std::vector<Rational>> Pinv_;
  std::vector<IMat> mats_;
  std::map<IMat, int> mat_idx_;
  std::vector<std::vector<int>> mult_, words_;
  std::vector<int> inv_, len_, simple_;
};

using RootDatumPtr = std::shared_ptr<const RootDatum>;

std::string weight_to_string(const Weight& w);

}  // namespace dahakz
