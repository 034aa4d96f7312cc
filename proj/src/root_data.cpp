#include "dahakz/root_data.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

namespace dahakz {

RootDatum::RootDatum(const std::vector<std::vector<int>>& cartan, std::string name)
    : r_(static_cast<int>(cartan.size())), name_(std::move(name)), cartan_(cartan) {
  for (auto& row : cartan)
    if (static_cast<int>(row.size()) != r_) throw ConfigError("Cartan matrix must be square");
  for (int i = 0; i < r_; ++i)
    if (cartan[i][i] != 2) throw ConfigError("Cartan matrix diagonal must be 2");
  P_.assign(r_, std::vector<int>(r_));
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < r_; ++j) P_[i][j] = cartan[j][i];
  build();
}

std::shared_ptr<const RootDatum> RootDatum::type_A(int r) {
  if (r < 1) throw ConfigError("type A rank must be >= 1");
  std::vector<std::vector<int>> c(r, std::vector<int>(r, 0));
  for (int i = 0; i < r; ++i) {
    c[i][i] = 2;
    if (i > 0) c[i][i - 1] = -1;
    if (i + 1 < r) c[i][i + 1] = -1;
  }
  return std::make_shared<RootDatum>(c, "A" + std::to_string(r));
}

std::shared_ptr<const RootDatum> RootDatum::from_name(const std::string& name) {
  if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'a')) {
    int r = 0;
    try {
      r = std::stoi(name.substr(1));
    } catch (...) {
      throw ConfigError("unknown root type '" + name + "'");
    }
    if (r < 1 || r > 4) throw ScopeError("built-in type A_r supports 1 <= r <= 4");
    return type_A(r);
  }
  throw ConfigError("unknown root type '" + name + "' (use A1..A4 or a Cartan file)");
}

std::shared_ptr<const RootDatum> RootDatum::from_cartan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open Cartan file '" + path + "'");
  std::vector<std::vector<int>> c;
  std::string line;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    std::istringstream is(line);
    std::vector<int> row;
    int x;
    while (is >> x) row.push_back(x);
    if (!is.eof()) throw ConfigError("non-integer entry in Cartan file");
    if (!row.empty()) c.push_back(row);
  }
  if (c.empty()) throw ConfigError("empty Cartan file");
  return std::make_shared<RootDatum>(c, "cartan:" + path);
}

int RootDatum::height(const IVec& v) const {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

int RootDatum::pair_int(const IVec& beta, const IVec& cv) const {
  int s = 0;
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < r_; ++k) s += beta[i] * cv[k] * P_[i][k];
  return s;
}

void RootDatum::build() {
  // positive roots and coroots by reflection closure
  std::deque<int> queue;
  auto add = [&](const IVec& b, const IVec& bv) {
    if (root_idx_.count(b)) return;
    root_idx_[b] = static_cast<int>(roots_.size());
    roots_.push_back(b);
    coroots_.push_back(bv);
    queue.push_back(static_cast<int>(roots_.size()) - 1);
  };
  for (int i = 0; i < r_; ++i) {
    IVec e(r_, 0);
    e[i] = 1;
    add(e, e);
  }
  while (!queue.empty()) {
    int k = queue.front();
    queue.pop_front();
    IVec b = roots_[k], bv = coroots_[k];
    for (int i = 0; i < r_; ++i) {
      IVec ai(r_, 0);
      ai[i] = 1;
      int c = pair_int(b, ai);
      int cv = pair_int(ai, bv);
      IVec nb = b, nbv = bv;
      nb[i] -= c;
      nbv[i] -= cv;
      bool pos = std::all_of(nb.begin(), nb.end(), [](int x) { return x >= 0; });
      if (pos && nb != b) add(nb, nbv);
    }
    if (roots_.size() > 2000) throw ScopeError("root system too large (not of finite type?)");
  }
  npos_ = static_cast<int>(roots_.size());
  // sort positive roots by height then lexicographically for determinism
  std::vector<int> perm(npos_);
  for (int k = 0; k < npos_; ++k) perm[k] = k;
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    int ha = height(roots_[a]), hb = height(roots_[b]);
    if (ha != hb) return ha < hb;
    return roots_[a] > roots_[b];
  });
  std::vector<IVec> rs, cs;
  for (int k : perm) {
    rs.push_back(roots_[k]);
    cs.push_back(coroots_[k]);
  }
  for (int k = 0; k < npos_; ++k) {
    IVec nb = rs[k], nbv = cs[k];
    for (auto& x : nb) x = -x;
    for (auto& x : nbv) x = -x;
    rs.push_back(nb);
    cs.push_back(nbv);
  }
  roots_ = rs;
  coroots_ = cs;
  root_idx_.clear();
  for (int k = 0; k < 2 * npos_; ++k) {
    root_idx_[roots_[k]] = k;
    coroot_idx_[coroots_[k]] = k;
  }
  theta_ = npos_ - 1;
  for (int k = 0; k < npos_; ++k)
    if (height(roots_[k]) > height(roots_[theta_])) theta_ = k;
  coxeter_ = height(roots_[theta_]) + 1;
  rho_.assign(r_, Rational(0));
  for (int k = 0; k < npos_; ++k)
    for (int i = 0; i < r_; ++i) rho_[i] += Rational(roots_[k][i]) / 2;

  // inverse pairing matrix (rational Gauss-Jordan)
  std::vector<std::vector<Rational>> aug(r_, std::vector<Rational>(2 * r_, Rational(0)));
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < r_; ++j) aug[i][j] = P_[i][j];
    aug[i][r_ + i] = 1;
  }
  for (int c = 0; c < r_; ++c) {
    int p = c;
    while (p < r_ && aug[p][c] == 0) ++p;
    if (p == r_) throw ConfigError("singular Cartan matrix");
    std::swap(aug[p], aug[c]);
    Rational inv = 1 / aug[c][c];
    for (auto& x : aug[c]) x *= inv;
    for (int q = 0; q < r_; ++q)
      if (q != c && aug[q][c] != 0) {
        Rational f = aug[q][c];
        for (int j = 0; j < 2 * r_; ++j) aug[q][j] -= f * aug[c][j];
      }
  }
  Pinv_.assign(r_, std::vector<Rational>(r_));
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < r_; ++j) Pinv_[i][j] = aug[i][r_ + j];

  // Weyl group by BFS over left multiplication by simple reflections
  IMat id(r_, IVec(r_, 0));
  for (int i = 0; i < r_; ++i) id[i][i] = 1;
  std::vector<IMat> sm(r_);
  for (int i = 0; i < r_; ++i) {
    sm[i] = id;
    for (int k = 0; k < r_; ++k) sm[i][i][k] -= P_[k][i];
  }
  auto matmul = [&](const IMat& A, const IMat& B) {
    IMat C(r_, IVec(r_, 0));
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < r_; ++k)
        if (A[i][k])
          for (int j = 0; j < r_; ++j) C[i][j] += A[i][k] * B[k][j];
    return C;
  };
  mats_.push_back(id);
  mat_idx_[id] = 0;
  words_.push_back({});
  for (size_t q = 0; q < mats_.size(); ++q) {
    for (int i = 0; i < r_; ++i) {
      IMat m = matmul(sm[i], mats_[q]);
      if (mat_idx_.count(m)) continue;
      mat_idx_[m] = static_cast<int>(mats_.size());
      mats_.push_back(m);
      std::vector<int> w{i};
      w.insert(w.end(), words_[q].begin(), words_[q].end());
      words_.push_back(w);
      if (mats_.size() > 100000) throw ScopeError("Weyl group too large for desk scale");
    }
  }
  int n = order();
  mult_.assign(n, std::vector<int>(n));
  inv_.assign(n, 0);
  len_.assign(n, 0);
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w) {
      mult_[v][w] = mat_idx_.at(matmul(mats_[v], mats_[w]));
      if (mult_[v][w] == 0) inv_[v] = w;
    }
  simple_.resize(r_);
  for (int i = 0; i < r_; ++i) simple_[i] = mat_idx_.at(sm[i]);
  for (int w = 0; w < n; ++w) {
    len_[w] = static_cast<int>(words_[w].size());
    if (len_[w] > len_[longest_]) longest_ = w;
  }
  // W-orbits of roots
  orbit_.assign(2 * npos_, -1);
  int label = 0;
  for (int k = 0; k < 2 * npos_; ++k) {
    if (orbit_[k] >= 0) continue;
    for (int w = 0; w < n; ++w) orbit_[act_root(w, k)] = label;
    ++label;
  }
}

int RootDatum::root_index(const IVec& beta) const {
  auto it = root_idx_.find(beta);
  return it == root_idx_.end() ? -1 : it->second;
}
int RootDatum::coroot_index(const IVec& bv) const {
  auto it = coroot_idx_.find(bv);
  return it == coroot_idx_.end() ? -1 : it->second;
}
int RootDatum::simple_root_index(int i) const {
  IVec e(r_, 0);
  e[i] = 1;
  return root_index(e);
}

Rational RootDatum::pair(const Weight& lambda, const IVec& cv) const {
  Rational s(0);
  for (int i = 0; i < r_; ++i) {
    if (lambda[i] == 0) continue;
    long t = 0;
    for (int k = 0; k < r_; ++k) t += static_cast<long>(cv[k]) * P_[i][k];
    if (t) s += lambda[i] * Rational(t);
  }
  return s;
}

Rational RootDatum::pair_coweight(const Weight& lambda, const Coweight& lv) const {
  Rational s(0);
  for (int j = 0; j < r_; ++j) s += lambda[j] * lv[j];
  return s;
}

IVec RootDatum::coroot_in_coweight_basis(const IVec& cv) const {
  IVec c(r_, 0);
  for (int j = 0; j < r_; ++j)
    for (int k = 0; k < r_; ++k) c[j] += cv[k] * P_[j][k];
  return c;
}

Coweight RootDatum::coroot_as_coweight(const IVec& cv) const {
  IVec c = coroot_in_coweight_basis(cv);
  return Coweight(c.begin(), c.end());
}

Weight RootDatum::fundamental_weight(int i) const { return Pinv_[i]; }

Weight RootDatum::from_fundamental(const std::vector<Rational>& m) const {
  Weight l(r_, Rational(0));
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < r_; ++k) l[k] += m[i] * Pinv_[i][k];
  return l;
}

std::vector<Rational> RootDatum::to_fundamental(const Weight& lambda) const {
  std::vector<Rational> m(r_, Rational(0));
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < r_; ++k) m[i] += lambda[k] * P_[k][i];
  return m;
}

int RootDatum::index_of_matrix(const IMat& m) const {
  auto it = mat_idx_.find(m);
  return it == mat_idx_.end() ? -1 : it->second;
}

int RootDatum::from_word(const std::vector<int>& word) const {
  int w = 0;
  for (int i : word) w = mul(w, simple_[i]);
  return w;
}

Weight RootDatum::act(int w, const Weight& lambda) const {
  const IMat& M = mats_[w];
  Weight out(r_, Rational(0));
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < r_; ++k)
      if (M[i][k]) out[i] += M[i][k] * lambda[k];
  return out;
}

IVec RootDatum::act(int w, const IVec& beta) const {
  const IMat& M = mats_[w];
  IVec out(r_, 0);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < r_; ++k) out[i] += M[i][k] * beta[k];
  return out;
}

int RootDatum::act_root(int w, int k) const { return root_index(act(w, roots_[k])); }

IVec RootDatum::act_coroot(int w, const IVec& cv) const {
  int k = coroot_index(cv);
  if (k < 0) throw std::logic_error("act_coroot: not a coroot");
  return coroots_[act_root(w, k)];
}

Coweight RootDatum::act_coweight(int w, const Coweight& lv) const {
  const IMat& M = mats_[inv_[w]];
  Coweight out(r_, Rational(0));
  for (int j = 0; j < r_; ++j)
    for (int k = 0; k < r_; ++k)
      if (M[k][j]) out[j] += M[k][j] * lv[k];
  return out;
}

IVec RootDatum::act_coweight(int w, const IVec& lv) const {
  const IMat& M = mats_[inv_[w]];
  IVec out(r_, 0);
  for (int j = 0; j < r_; ++j)
    for (int k = 0; k < r_; ++k) out[j] += M[k][j] * lv[k];
  return out;
}

int RootDatum::reflection(int k) const {
  // s_beta(lambda) = lambda - (lambda : beta^vee) beta, on root coordinates
  IMat M(r_, IVec(r_, 0));
  for (int col = 0; col < r_; ++col) {
    IVec e(r_, 0);
    e[col] = 1;
    int c = pair_int(e, coroots_[k]);
    for (int i = 0; i < r_; ++i) M[i][col] = e[i] - c * roots_[k][i];
  }
  return mat_idx_.at(M);
}

Weight RootDatum::reflect(const Weight& lambda, int k) const {
  Rational c = pair(lambda, coroots_[k]);
  Weight out = lambda;
  for (int i = 0; i < r_; ++i) out[i] -= c * roots_[k][i];
  return out;
}

std::vector<int> RootDatum::coroot_level_set(int j) const {
  std::vector<int> out;
  for (int k = 0; k < 2 * npos_; ++k)
    if (pair(rho_, coroots_[k]) == j) out.push_back(k);
  return out;
}

std::string weight_to_string(const Weight& w) {
  std::string s = "[";
  for (size_t i = 0; i < w.size(); ++i) s += (i ? ", " : "") + to_string(w[i]);
  return s + "]";
}

}  // namespace dahakz
