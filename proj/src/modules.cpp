#include "dahakz/modules.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "dahakz/arrangements.hpp"

namespace dahakz {

namespace {

bool in_J(unsigned J, int j) { return (J >> j) & 1u; }

template <class F>
std::vector<F> unit(size_t n, size_t k) {
  std::vector<F> v(n, F(0));
  v[k] = F(1);
  return v;
}

template <class F>
Matrix<F> mult_matrix(const JetAlgebra<F>& jets, const std::vector<F>& a) {
  size_t d = jets.dim();
  Matrix<F> m(d, d);
  for (size_t k = 0; k < d; ++k) {
    auto col = jets.multiply(a, unit<F>(d, k));
    for (size_t i = 0; i < d; ++i) m(i, k) = col[i];
  }
  return m;
}

std::vector<Exponent> box_exponents(int r, int D) {
  std::vector<Exponent> out;
  Exponent e(r, -D);
  while (true) {
    out.push_back(e);
    int j = 0;
    while (j < r && e[j] == D) e[j++] = -D;
    if (j == r) break;
    ++e[j];
  }
  return out;
}

// Matrix of the operator induced on S/<E>^n by an operator op on polynomials,
// found on a spanning set of monomials; throws if op does not preserve the ideal.
template <class F>
Matrix<F> descend(const JetAlgebra<F>& jets, const std::function<Poly<F>(const Poly<F>&)>& op, bool additive) {
  int r = jets.rank();
  size_t d = jets.dim();
  for (int D = 0; D <= 4 * static_cast<int>(d) + 4; ++D) {
    std::vector<Exponent> monos = additive ? jet_exponents(r, D + 1) : box_exponents(r, D);
    Matrix<F> Rm(d, monos.size());
    for (size_t k = 0; k < monos.size(); ++k) {
      auto v = additive ? jets.reduce_additive(Poly<F>::monomial(monos[k]))
                        : jets.reduce_multiplicative(Poly<F>::monomial(monos[k]));
      for (size_t i = 0; i < d; ++i) Rm(i, k) = v[i];
    }
    Matrix<F> tmp = Rm;
    auto piv = rref(tmp);
    if (piv.size() < d) continue;
    Matrix<F> Om(d, monos.size());
    for (size_t k = 0; k < monos.size(); ++k) {
      Poly<F> img = op(Poly<F>::monomial(monos[k]));
      auto v = additive ? jets.reduce_additive(img) : jets.reduce_multiplicative(img);
      for (size_t i = 0; i < d; ++i) Om(i, k) = v[i];
    }
    Matrix<F> B(d, d), OB(d, d);
    for (size_t c = 0; c < d; ++c)
      for (size_t i = 0; i < d; ++i) {
        B(i, c) = Rm(i, piv[c]);
        OB(i, c) = Om(i, piv[c]);
      }
    Matrix<F> T = OB * inverse(B);
    if (!(T * Rm == Om)) throw std::logic_error("operator does not preserve the jet ideal");
    return T;
  }
  throw std::logic_error("descend: monomials do not span the jet algebra");
}

template <class F>
Matrix<F> word_matrix(const std::vector<Matrix<F>>& gens, const std::vector<int>& word, size_t d) {
  Matrix<F> m = Matrix<F>::identity(d);
  for (int i : word) m = m * gens.at(i);
  return m;
}

template <class F>
void add_block(Matrix<F>& M, size_t row0, size_t col, const std::vector<F>& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) M(row0 + i, col) += v[i];
}

// Strongly connected components of the union sparsity graph, in an order making every
// operator block upper triangular.
template <class F>
std::vector<std::vector<size_t>> triangular_blocks(const std::vector<Matrix<F>>& ops, size_t n) {
  std::vector<std::vector<size_t>> adj(n);  // edge col -> row
  for (auto& M : ops)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (i != j && !is_zero(M(i, j))) adj[j].push_back(i);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on(n, false);
  std::vector<size_t> stack;
  std::vector<std::vector<size_t>> comps;
  int counter = 0;
  std::function<void(size_t)> strong = [&](size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on[v] = true;
    for (size_t w : adj[v]) {
      if (index[w] < 0) {
        strong(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<size_t> comp;
      size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      comps.push_back(comp);
    }
  };
  for (size_t v = 0; v < n; ++v)
    if (index[v] < 0) strong(v);
  return comps;
}

template <class F>
size_t nullity(const Matrix<F>& m) {
  return m.cols() - rank(m);
}

}  // namespace

// ---------------------------------------------------------------------------
// parabolic data

std::vector<int> min_coset_reps(const RootDatum& R, unsigned J) {
  std::vector<int> out;
  for (int w = 0; w < R.order(); ++w) {
    bool ok = true;
    for (int j = 0; j < R.rank() && ok; ++j)
      if (in_J(J, j) && R.length(R.mul(w, R.simple(j))) < R.length(w)) ok = false;
    if (ok) out.push_back(w);
  }
  return out;
}

std::pair<int, int> coset_split(const RootDatum& R, unsigned J, int w) {
  int cur = w, u = 0;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int j = 0; j < R.rank(); ++j) {
      if (!in_J(J, j)) continue;
      int c = R.mul(cur, R.simple(j));
      if (R.length(c) < R.length(cur)) {
        cur = c;
        u = R.mul(R.simple(j), u);
        moved = true;
      }
    }
  }
  return {cur, u};
}

std::vector<Weight> parabolic_orbit(const RootDatum& R, unsigned J, const Weight& mu) {
  std::vector<Weight> out{mu};
  for (size_t k = 0; k < out.size(); ++k)
    for (int j = 0; j < R.rank(); ++j) {
      if (!in_J(J, j)) continue;
      Weight nu = R.act(R.simple(j), out[k]);
      if (std::find(out.begin(), out.end(), nu) == out.end()) out.push_back(nu);
    }
  return out;
}

std::vector<std::vector<Cyclotomic>> parabolic_orbit(const RootDatum& R, unsigned J, const std::vector<Cyclotomic>& ell) {
  std::vector<std::vector<Cyclotomic>> out{ell};
  for (size_t k = 0; k < out.size(); ++k)
    for (int j = 0; j < R.rank(); ++j) {
      if (!in_J(J, j)) continue;
      auto m = act_torus(R, R.simple(j), out[k]);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
  return out;
}

// ---------------------------------------------------------------------------
// fibers

DegFiber degenerate_parabolic(const Daha& H, unsigned J, const std::vector<Weight>& orbit, int n) {
  const auto& R = H.datum();
  const int r = R.rank();
  if (orbit.empty() || n < 1) throw ConfigError("parabolic module needs a nonempty orbit and n >= 1");
  for (auto& pt : orbit) require_regular_weight(H.affine_weyl(), pt);
  auto full = parabolic_orbit(R, J, orbit[0]);
  if (full.size() != orbit.size()) throw ScopeError("points do not form a single W_J-orbit");
  for (auto& pt : orbit)
    if (std::find(full.begin(), full.end(), pt) == full.end()) throw ScopeError("points do not form a single W_J-orbit");

  QJets jets(r, n, orbit);
  const size_t d = jets.dim();
  std::vector<QMatrix> xj(r), sj(r);
  for (int j = 0; j < r; ++j) xj[j] = mult_matrix(jets, jets.reduce_additive(XiPoly::variable(r, j)));
  for (int j = 0; j < r; ++j) {
    if (!in_J(J, j)) continue;
    Rational h = H.h_simple(j);
    int sw = R.simple(j);
    sj[j] = descend<Rational>(
        jets,
        [&](const XiPoly& p) { return act_xi_finite(R, sw, p) + demazure_xi_simple(H.affine_weyl(), p, j).scaled(h); },
        true);
  }

  DegFiber M;
  M.side = Side::degenerate;
  M.rd = H.affine_weyl().datum_ptr();
  M.J = J;
  M.orbit = orbit;
  M.n = n;
  M.cosets = min_coset_reps(R, J);
  std::map<int, size_t> pos;
  for (size_t k = 0; k < M.cosets.size(); ++k) pos[M.cosets[k]] = k;
  const size_t N = M.cosets.size() * d;

  auto build = [&](const DahaElement& X) {
    QMatrix out(N, N);
    for (size_t vi = 0; vi < M.cosets.size(); ++vi) {
      auto prod = H.mul(X, H.finite(M.cosets[vi]));
      for (auto& [g, q] : prod.terms) {
        for (int x : g.t)
          if (x != 0) throw std::logic_error("fiber action left the finite part");
        auto [v2, u] = coset_split(R, J, g.w);
        QMatrix op = word_matrix(sj, R.word(u), d) * mult_matrix(jets, jets.reduce_additive(q));
        for (size_t b = 0; b < d; ++b)
          for (size_t i = 0; i < d; ++i)
            if (!is_zero(op(i, b))) out(pos.at(v2) * d + i, vi * d + b) += op(i, b);
      }
    }
    return out;
  };
  for (int i = 0; i < r; ++i) M.s.push_back(build(H.simple(i)));
  for (int j = 0; j < r; ++j) M.xi.push_back(build(H.xi_var(j)));
  for (int v : M.cosets)
    for (size_t pt = 0; pt < orbit.size(); ++pt)
      for (size_t e = 0; e < jets.local_dim(); ++e) M.weights.push_back(R.act(v, orbit[pt]));
  M.label = "P'_J(" + weight_to_string(orbit[0]) + ")_" + std::to_string(n);
  return M;
}

DegFiber degenerate_standard(const Daha& H, const Weight& mu, int n) {
  auto M = degenerate_parabolic(H, 0u, {mu}, n);
  M.label = "P'(" + weight_to_string(mu) + ")_" + std::to_string(n);
  return M;
}

AhaFiber aha_parabolic(const Aha& A, unsigned J, const std::vector<std::vector<Cyclotomic>>& orbit, int n) {
  const auto& R = A.datum();
  const int r = R.rank();
  if (orbit.empty() || n < 1) throw ConfigError("parabolic module needs a nonempty orbit and n >= 1");
  for (auto& pt : orbit) {
    require_regular_torus(R, pt);
    for (auto& c : pt)
      if (c.is_zero()) throw ConfigError("torus point with a zero coordinate");
  }
  auto full = parabolic_orbit(R, J, orbit[0]);
  if (full.size() != orbit.size()) throw ScopeError("points do not form a single W_J-orbit");
  for (auto& pt : orbit)
    if (std::find(full.begin(), full.end(), pt) == full.end()) throw ScopeError("points do not form a single W_J-orbit");

  CycJets jets(r, n, orbit);
  const size_t d = jets.dim();
  std::vector<CycMatrix> tj(r);
  for (int j = 0; j < r; ++j) {
    if (!in_J(J, j)) continue;
    Cyclotomic z = A.params().zeta_simple(j);
    int sw = R.simple(j);
    tj[j] = descend<Cyclotomic>(
        jets,
        [&](const YLaurent& p) {
          return act_lattice(R, sw, p, true).scaled(z) + bernstein_difference(R, p, j).scaled(z - Cyclotomic(1));
        },
        false);
  }

  AhaFiber M;
  M.side = Side::aha;
  M.rd = A.params().rd;
  M.J = J;
  M.orbit = orbit;
  M.n = n;
  M.cosets = min_coset_reps(R, J);
  std::map<int, size_t> pos;
  for (size_t k = 0; k < M.cosets.size(); ++k) pos[M.cosets[k]] = k;
  const size_t N = M.cosets.size() * d;

  auto build = [&](const AhaElement& X) {
    CycMatrix out(N, N);
    for (size_t vi = 0; vi < M.cosets.size(); ++vi) {
      auto prod = A.mul(X, A.t(M.cosets[vi]));
      for (auto& [w, q] : prod.terms) {
        auto [v2, u] = coset_split(R, J, w);
        CycMatrix op = word_matrix(tj, R.word(u), d) * mult_matrix(jets, jets.reduce_multiplicative(q));
        for (size_t b = 0; b < d; ++b)
          for (size_t i = 0; i < d; ++i)
            if (!is_zero(op(i, b))) out(pos.at(v2) * d + i, vi * d + b) += op(i, b);
      }
    }
    return out;
  };
  for (int i = 0; i < r; ++i) M.s.push_back(build(A.t_simple(i)));
  for (int j = 0; j < r; ++j) {
    IVec e(r, 0);
    e[j] = 1;
    M.xi.push_back(build(A.y(e)));
    e[j] = -1;
    M.xi_inv.push_back(build(A.y(e)));
  }
  for (int v : M.cosets)
    for (size_t pt = 0; pt < orbit.size(); ++pt)
      for (size_t e = 0; e < jets.local_dim(); ++e) M.weights.push_back(act_torus(R, v, orbit[pt]));
  M.label = "P_J(O)_" + std::to_string(n);
  return M;
}

AhaFiber aha_standard(const Aha& A, const std::vector<Cyclotomic>& ell, int n) {
  auto M = aha_parabolic(A, 0u, {ell}, n);
  M.label = "P(ell)_" + std::to_string(n);
  return M;
}

template <class F>
FiberModule<F> direct_sum(const std::vector<FiberModule<F>>& ms) {
  if (ms.empty()) throw ConfigError("direct sum of no modules");
  FiberModule<F> out;
  out.side = ms[0].side;
  out.rd = ms[0].rd;
  int r = out.rd->rank();
  auto cat = [&](auto get) {
    std::vector<Matrix<F>> parts;
    for (auto& m : ms) parts.push_back(get(m));
    return block_diagonal(parts);
  };
  for (int i = 0; i < r; ++i) out.s.push_back(cat([&](const FiberModule<F>& m) { return m.s[i]; }));
  for (int j = 0; j < r; ++j) out.xi.push_back(cat([&](const FiberModule<F>& m) { return m.xi[j]; }));
  if (!ms[0].xi_inv.empty())
    for (int j = 0; j < r; ++j) out.xi_inv.push_back(cat([&](const FiberModule<F>& m) { return m.xi_inv[j]; }));
  for (auto& m : ms) {
    out.weights.insert(out.weights.end(), m.weights.begin(), m.weights.end());
    out.label += (out.label.empty() ? "" : " + ") + m.label;
  }
  return out;
}
template DegFiber direct_sum(const std::vector<DegFiber>&);
template AhaFiber direct_sum(const std::vector<AhaFiber>&);

// ---------------------------------------------------------------------------
// relations

namespace {

template <class F>
Matrix<F> eval_poly(const Poly<F>& p, const std::vector<Matrix<F>>& X, const std::vector<Matrix<F>>& Xinv, size_t d) {
  Matrix<F> out(d, d);
  for (auto& [e, c] : p.terms()) {
    Matrix<F> m = Matrix<F>::identity(d).scaled(c);
    for (size_t j = 0; j < e.size(); ++j) {
      if (e[j] < 0 && Xinv.empty()) throw std::logic_error("negative exponent without inverses");
      for (int k = 0; k < std::abs(e[j]); ++k) m = m * (e[j] > 0 ? X[j] : Xinv[j]);
    }
    out = out + m;
  }
  return out;
}

int braid_order(int aij, int aji) {
  switch (aij * aji) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return 0;
  }
}

template <class F>
int braid_violations(const std::vector<Matrix<F>>& S, const std::vector<std::vector<int>>& m, size_t d) {
  int bad = 0;
  for (size_t i = 0; i < S.size(); ++i)
    for (size_t j = i + 1; j < S.size(); ++j) {
      int mij = m[i][j];
      if (mij == 0) continue;
      Matrix<F> a = Matrix<F>::identity(d), b = Matrix<F>::identity(d);
      for (int k = 0; k < mij; ++k) {
        a = a * S[k % 2 ? j : i];
        b = b * S[k % 2 ? i : j];
      }
      if (!(a == b)) ++bad;
    }
  return bad;
}

template <class F>
int commute_violations(const std::vector<Matrix<F>>& X) {
  int bad = 0;
  for (size_t i = 0; i < X.size(); ++i)
    for (size_t j = i + 1; j < X.size(); ++j)
      if (!(X[i] * X[j] == X[j] * X[i])) ++bad;
  return bad;
}

}  // namespace

int check_relations(const Daha& H, const DegFiber& M) {
  const auto& R = H.datum();
  int r = R.rank();
  size_t d = M.dim();
  int bad = 0;
  auto I = QMatrix::identity(d);
  std::vector<std::vector<int>> m(r, std::vector<int>(r, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m[i][j] = braid_order(R.a(i, j), R.a(j, i));
  for (int i = 0; i < r; ++i)
    if (!(M.s[i] * M.s[i] == I)) ++bad;
  bad += braid_violations(M.s, m, d);
  bad += commute_violations(M.xi);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      XiPoly x = XiPoly::variable(r, j);
      QMatrix lhs = M.s[i] * M.xi[j] - eval_poly(act_xi_finite(R, R.simple(i), x), M.xi, {}, d) * M.s[i];
      QMatrix rhs = eval_poly(demazure_xi_simple(H.affine_weyl(), x, i), M.xi, {}, d).scaled(H.h_simple(i));
      if (!(lhs == rhs)) ++bad;
    }
  return bad;
}

int check_relations(const Aha& A, const AhaFiber& M) {
  const auto& R = A.datum();
  int r = R.rank();
  size_t d = M.dim();
  int bad = 0;
  auto I = CycMatrix::identity(d);
  std::vector<std::vector<int>> m(r, std::vector<int>(r, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m[i][j] = braid_order(R.a(i, j), R.a(j, i));
  for (int i = 0; i < r; ++i) {
    Cyclotomic z = A.params().zeta_simple(i);
    if (!((M.s[i] - I.scaled(z)) * (M.s[i] + I)).is_zero_matrix()) ++bad;
  }
  bad += braid_violations(M.s, m, d);
  bad += commute_violations(M.xi);
  for (int j = 0; j < r; ++j)
    if (!(M.xi[j] * M.xi_inv[j] == I)) ++bad;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      IVec e(r, 0);
      e[j] = 1;
      YLaurent y = YLaurent::monomial(e);
      Cyclotomic z = A.params().zeta_simple(i);
      CycMatrix lhs = M.s[i] * M.xi[j] - eval_poly(act_lattice(R, R.simple(i), y, true), M.xi, M.xi_inv, d) * M.s[i];
      CycMatrix rhs = eval_poly(bernstein_difference(R, y, i), M.xi, M.xi_inv, d).scaled(z - Cyclotomic(1));
      if (!(lhs == rhs)) ++bad;
    }
  return bad;
}

// ---------------------------------------------------------------------------
// characters

template <class F>
std::vector<std::pair<std::vector<F>, int>> joint_character(const std::vector<Matrix<F>>& ops,
                                                            const std::vector<std::vector<F>>& predicted) {
  std::vector<std::pair<std::vector<F>, int>> out;
  if (predicted.empty()) return out;
  size_t n = predicted.size();
  auto add = [&](const std::vector<F>& w, int k) {
    for (auto& [x, m] : out)
      if (x == w) {
        m += k;
        return;
      }
    out.push_back({w, k});
  };
  for (auto& comp : triangular_blocks(ops, n)) {
    size_t b = comp.size();
    std::vector<std::vector<F>> cands;
    for (size_t v : comp)
      if (std::find(cands.begin(), cands.end(), predicted[v]) == cands.end()) cands.push_back(predicted[v]);
    if (b == 1) {
      std::vector<F> w;
      for (auto& M : ops) w.push_back(M(comp[0], comp[0]));
      add(w, 1);
      continue;
    }
    // a combination separating the candidates
    std::vector<F> c(ops.size());
    std::vector<F> vals;
    for (long base = 2;; ++base) {
      F f(1);
      for (auto& x : c) {
        x = f;
        f *= F(base);
      }
      vals.clear();
      for (auto& w : cands) {
        F v(0);
        for (size_t k = 0; k < c.size(); ++k) v += c[k] * w[k];
        vals.push_back(v);
      }
      bool distinct = true;
      for (size_t i = 0; i < vals.size() && distinct; ++i)
        for (size_t j = i + 1; j < vals.size(); ++j)
          if (vals[i] == vals[j]) distinct = false;
      if (distinct) break;
      if (base > 64) throw std::logic_error("joint_character: cannot separate candidates");
    }
    Matrix<F> Mc(b, b);
    for (size_t k = 0; k < ops.size(); ++k)
      for (size_t i = 0; i < b; ++i)
        for (size_t j = 0; j < b; ++j)
          if (!is_zero(ops[k](comp[i], comp[j]))) Mc(i, j) += c[k] * ops[k](comp[i], comp[j]);
    size_t total = 0;
    for (size_t q = 0; q < cands.size(); ++q) {
      Matrix<F> A = Mc - Matrix<F>::identity(b).scaled(vals[q]);
      Matrix<F> P = A;
      size_t prev = 0, cur = nullity(P);
      while (cur != prev && cur < b) {
        prev = cur;
        P = P * A;
        cur = nullity(P);
      }
      if (cur > 0) add(cands[q], static_cast<int>(cur));
      total += cur;
    }
    if (total != b) throw std::logic_error("joint_character: predicted weights do not exhaust the module");
  }
  return out;
}
template std::vector<std::pair<std::vector<Rational>, int>> joint_character(const std::vector<QMatrix>&,
                                                                            const std::vector<std::vector<Rational>>&);
template std::vector<std::pair<std::vector<Cyclotomic>, int>> joint_character(
    const std::vector<CycMatrix>&, const std::vector<std::vector<Cyclotomic>>&);

std::vector<std::pair<std::vector<Cyclotomic>, int>> character(const AhaFiber& M) {
  return joint_character(M.xi, M.weights);
}

Character character(const DegFiber& M) {
  Character ch;
  for (auto& [w, k] : joint_character(M.xi, M.weights)) ch[w] += k;
  return ch;
}

// ---------------------------------------------------------------------------
// induced modules

int translation_length(const RootDatum& R, const IVec& beta) {
  int s = 0;
  for (int k = 0; k < R.num_positive(); ++k) s += std::abs(R.pair_int(beta, R.coroot(k)));
  return s;
}

std::vector<IVec> translation_window(const RootDatum& R, int L) {
  int r = R.rank();
  int B = std::max(1, r) * std::max(L, 0);
  std::vector<std::pair<int, IVec>> found;
  IVec b(r, -B);
  while (true) {
    int len = translation_length(R, b);
    if (len <= L) found.push_back({len, b});
    int j = 0;
    while (j < r && b[j] == B) b[j++] = -B;
    if (j == r) break;
    ++b[j];
  }
  std::sort(found.begin(), found.end());
  std::vector<IVec> out;
  for (auto& [l, v] : found) out.push_back(v);
  return out;
}

InducedModule::InducedModule(std::shared_ptr<const Daha> H, DegFiber fiber, int L)
    : H_(std::move(H)), fiber_(std::move(fiber)), L_(L) {
  if (L < 0) throw ConfigError("window must be nonnegative");
  trans_ = translation_window(H_->datum(), L);
  for (size_t k = 0; k < trans_.size(); ++k) tidx_[trans_[k]] = static_cast<int>(k);
}

int InducedModule::translation_index(const IVec& beta) const {
  auto it = tidx_.find(beta);
  return it == tidx_.end() ? -1 : it->second;
}

const QMatrix& InducedModule::group_matrix(int w) const {
  auto it = gmat_.find(w);
  if (it != gmat_.end()) return it->second;
  QMatrix m = word_matrix(fiber_.s, H_->datum().word(w), fiber_.dim());
  return gmat_.emplace(w, std::move(m)).first->second;
}

QMatrix InducedModule::poly_matrix(const XiPoly& q) const { return eval_poly(q, fiber_.xi, {}, fiber_.dim()); }

InducedModule::Image InducedModule::apply_basis(const DahaElement& a, size_t basis) const {
  size_t fd = fiber_.dim();
  size_t t = basis / fd, m = basis % fd;
  Image img;
  img.v.assign(dim(), Rational(0));
  auto prod = H_->mul(a, H_->x(trans_[t]));
  for (auto& [g, q] : prod.terms) {
    int ti = translation_index(g.t);
    if (ti < 0) {
      img.out_of_window = true;
      continue;
    }
    QMatrix op = group_matrix(g.w) * poly_matrix(q);
    for (size_t i = 0; i < fd; ++i)
      if (!is_zero(op(i, m))) img.v[index(ti, i)] += op(i, m);
  }
  return img;
}

InducedModule::Image InducedModule::apply(const DahaElement& a, const std::vector<Rational>& v) const {
  Image img;
  img.v.assign(dim(), Rational(0));
  for (size_t k = 0; k < v.size(); ++k) {
    if (is_zero(v[k])) continue;
    auto part = apply_basis(a, k);
    img.out_of_window |= part.out_of_window;
    for (size_t i = 0; i < img.v.size(); ++i)
      if (!is_zero(part.v[i])) img.v[i] += v[k] * part.v[i];
  }
  return img;
}

QMatrix InducedModule::matrix(const DahaElement& a, std::vector<bool>* complete) const {
  size_t fd = fiber_.dim(), n = dim();
  QMatrix M(n, n);
  if (complete) complete->assign(n, true);
  for (size_t t = 0; t < trans_.size(); ++t) {
    auto prod = H_->mul(a, H_->x(trans_[t]));
    bool out = false;
    for (auto& [g, q] : prod.terms) {
      int ti = translation_index(g.t);
      if (ti < 0) {
        out = true;
        continue;
      }
      QMatrix op = group_matrix(g.w) * poly_matrix(q);
      for (size_t m = 0; m < fd; ++m)
        for (size_t i = 0; i < fd; ++i)
          if (!is_zero(op(i, m))) M(index(ti, i), index(t, m)) += op(i, m);
    }
    if (out && complete)
      for (size_t m = 0; m < fd; ++m) (*complete)[index(t, m)] = false;
  }
  return M;
}

const std::vector<QMatrix>& InducedModule::xi_matrices() const {
  if (xi_.empty()) {
    for (int j = 0; j < H_->rank(); ++j) {
      std::vector<bool> ok;
      xi_.push_back(matrix(H_->xi_var(j), &ok));
      if (std::find(ok.begin(), ok.end(), false) != ok.end())
        throw std::logic_error("xi left the translation window");
    }
  }
  return xi_;
}

std::vector<Weight> InducedModule::weights() const {
  std::vector<Weight> out;
  for (auto& beta : trans_)
    for (auto& w : fiber_.weights) {
      Weight x = w;
      for (size_t i = 0; i < x.size(); ++i) x[i] += beta[i];
      out.push_back(x);
    }
  return out;
}

InducedModule induce(std::shared_ptr<const Daha> H, const DegFiber& fiber, int L) {
  return InducedModule(std::move(H), fiber, L);
}

InducedModule standard_module(std::shared_ptr<const Daha> H, const Weight& mu, int L, int n) {
  auto f = degenerate_standard(*H, mu, n);
  return InducedModule(std::move(H), std::move(f), L);
}

InducedModule parabolic_module(std::shared_ptr<const Daha> H, unsigned J, const std::vector<Weight>& orbit, int L,
                               int n) {
  auto f = degenerate_parabolic(*H, J, orbit, n);
  return InducedModule(std::move(H), std::move(f), L);
}

Character character(const InducedModule& M) {
  Character ch;
  for (auto& [w, k] : joint_character(M.xi_matrices(), M.weights())) ch[w] += k;
  return ch;
}

HomomorphismReport check_homomorphism(const InducedModule& M, const std::vector<DahaElement>& gens) {
  HomomorphismReport rep;
  const Daha& H = M.algebra();
  for (auto& a : gens)
    for (auto& b : gens) {
      DahaElement ab = H.mul(a, b);
      for (size_t c = 0; c < M.dim(); ++c) {
        auto Ib = M.apply_basis(b, c);
        auto Iab = M.apply_basis(ab, c);
        if (Ib.out_of_window || Iab.out_of_window) {
          ++rep.skipped;
          continue;
        }
        auto Iaib = M.apply(a, Ib.v);
        if (Iaib.out_of_window) {
          ++rep.skipped;
          continue;
        }
        ++rep.checked;
        if (Iaib.v != Iab.v) ++rep.mismatches;
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// intertwiners

std::vector<size_t> IntertwinerMatrix::square_indices() const {
  std::set<size_t> S;
  for (size_t c = 0; c < complete.size(); ++c)
    if (complete[c]) S.insert(c);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = S.begin(); it != S.end();) {
      bool inside = true;
      for (size_t i = 0; i < M.rows() && inside; ++i)
        if (!is_zero(M(i, *it)) && !S.count(i)) inside = false;
      if (!inside) {
        it = S.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return {S.begin(), S.end()};
}

QMatrix IntertwinerMatrix::square() const {
  auto idx = square_indices();
  QMatrix out(idx.size(), idx.size());
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < idx.size(); ++j) out(i, j) = M(idx[i], idx[j]);
  return out;
}

IntertwinerMatrix intertwiner_matrix(std::shared_ptr<const Daha> H, const std::vector<int>& word, const Weight& mu,
                                     int L) {
  const auto& aw = H->affine_weyl();
  Weight wmu = aw.act(aw.from_word(word), mu);
  InducedModule src = standard_module(H, wmu, L, 1);
  InducedModule tgt = standard_module(H, mu, L, 1);
  DahaElement phi = H->intertwiner(word);
  IntertwinerMatrix out;
  size_t n = src.dim(), fd = src.fiber().dim();
  out.M = QMatrix(tgt.dim(), n);
  out.complete.assign(n, true);
  for (size_t c = 0; c < n; ++c) {
    size_t t = c / fd, m = c % fd;
    AffineElement g = aw.mul(aw.translation(src.translations()[t]), aw.finite(src.fiber().cosets[m]));
    auto img = tgt.apply_basis(H->mul(H->group(g), phi), tgt.cyclic_index());
    out.complete[c] = !img.out_of_window;
    for (size_t i = 0; i < img.v.size(); ++i) out.M(i, c) = img.v[i];
  }
  return out;
}

namespace {

// joint eigenspace of the xi_j for the weight nu
QMatrix eigenspace(const std::vector<QMatrix>& xi, const Weight& nu) {
  std::vector<QMatrix> rows;
  for (size_t j = 0; j < xi.size(); ++j) rows.push_back(xi[j] - QMatrix::identity(xi[j].rows()).scaled(nu[j]));
  return nullspace(vstack(rows));
}

}  // namespace

WeightBlockIntertwiner intertwiner_weight_blocks(std::shared_ptr<const Daha> H, const std::vector<int>& word,
                                                 const Weight& mu, int L) {
  const auto& aw = H->affine_weyl();
  Weight wmu = aw.act(aw.from_word(word), mu);
  InducedModule src = standard_module(H, wmu, L, 1);
  InducedModule tgt_small = standard_module(H, mu, L, 1);
  auto tw = tgt_small.weights();
  std::set<Weight> in_target(tw.begin(), tw.end());
  std::vector<Weight> common;
  for (auto& nu : src.weights())
    if (in_target.count(nu) && std::find(common.begin(), common.end(), nu) == common.end()) common.push_back(nu);

  size_t fd = src.fiber().dim();
  for (int Lt = L + 2; Lt <= L + 8 * static_cast<int>(word.size()) + 8; Lt += 2) {
    auto I = intertwiner_matrix(H, word, mu, Lt);
    InducedModule big_src = standard_module(H, wmu, Lt, 1);
    InducedModule tgt = standard_module(H, mu, Lt, 1);
    std::vector<size_t> embed(src.dim());
    bool ok = true;
    for (size_t c = 0; c < src.dim(); ++c) {
      int t = big_src.translation_index(src.translations()[c / fd]);
      embed[c] = big_src.index(static_cast<size_t>(t), c % fd);
      if (!I.complete[embed[c]]) ok = false;
    }
    if (!ok) continue;
    WeightBlockIntertwiner out;
    out.target_window = Lt;
    std::vector<QMatrix> blocks;
    for (auto& nu : common) {
      QMatrix Bs = eigenspace(src.xi_matrices(), nu);
      QMatrix Bt = eigenspace(tgt.xi_matrices(), nu);
      QMatrix Y(tgt.dim(), Bs.cols());
      for (size_t k = 0; k < Bs.cols(); ++k)
        for (size_t c = 0; c < src.dim(); ++c) {
          if (is_zero(Bs(c, k))) continue;
          for (size_t i = 0; i < tgt.dim(); ++i) Y(i, k) += I.M(i, embed[c]) * Bs(c, k);
        }
      // Bt X = Y; Bt has full column rank
      QMatrix BtT = Bt.transpose();
      QMatrix X = inverse(BtT * Bt) * (BtT * Y);
      if (!(Bt * X == Y)) throw std::logic_error("intertwiner does not preserve a weight space");
      out.weights.push_back(nu);
      out.block.push_back(Bs.cols());
      blocks.push_back(X);
    }
    out.M = block_diagonal(blocks);
    return out;
  }
  throw ScopeError("intertwiner image does not fit any target window");
}

Invertibility invertibility(const Daha& H, const std::vector<int>& word, const Weight& mu) {
  const auto& aw = H.affine_weyl();
  Invertibility res;
  for (int m = static_cast<int>(word.size()) - 1; m >= 0; --m) {
    std::vector<int> suffix(word.begin() + m + 1, word.end());
    Weight nu = aw.act(aw.from_word(suffix), mu);
    int i = word[m];
    Rational v = evaluate(H.xi_simple_coroot(i), nu);
    Rational h = H.h_simple(i);
    if (v == h || v == -h) {
      res.invertible = false;
      res.position = m;
      res.letter = i;
      res.value = v;
      return res;
    }
  }
  return res;
}

TorusInvertibility invertibility(const Aha& A, const std::vector<int>& word, const std::vector<Cyclotomic>& ell) {
  const auto& R = A.datum();
  TorusInvertibility res;
  for (int m = static_cast<int>(word.size()) - 1; m >= 0; --m) {
    int v = 0;
    for (size_t k = m + 1; k < word.size(); ++k) v = R.mul(v, R.simple(word[k]));
    auto pt = act_torus(R, v, ell);
    int i = word[m];
    Cyclotomic y = y_value(pt, R.coroot_in_coweight_basis(R.coroot(R.simple_root_index(i))));
    Cyclotomic z = A.params().zeta_simple(i);
    if (y == z || y == z.inverse()) {
      res.invertible = false;
      res.position = m;
      res.letter = i;
      return res;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// endomorphism algebras

EndomorphismAlgebra endomorphism_algebra(const AhaFiber& M) {
  size_t N = M.dim();
  std::vector<CycMatrix> gens = M.s;
  gens.insert(gens.end(), M.xi.begin(), M.xi.end());
  // X G - G X = 0 in the unknowns X_{ab}, index a N + b
  CycMatrix sys(gens.size() * N * N, N * N);
  size_t row = 0;
  for (auto& G : gens)
    for (size_t p = 0; p < N; ++p)
      for (size_t q = 0; q < N; ++q, ++row)
        for (size_t k = 0; k < N; ++k) {
          if (!is_zero(G(k, q))) sys(row, p * N + k) += G(k, q);
          if (!is_zero(G(p, k))) sys(row, k * N + q) -= G(p, k);
        }
  CycMatrix ns = nullspace(sys);
  EndomorphismAlgebra E;
  E.dim = ns.cols();
  for (size_t c = 0; c < ns.cols(); ++c) {
    CycMatrix X(N, N);
    for (size_t a = 0; a < N; ++a)
      for (size_t b = 0; b < N; ++b) X(a, b) = ns(a * N + b, c);
    E.basis.push_back(X);
  }
  size_t d = E.dim;
  if (d == 0) return E;
  // trace form and its radical
  CycMatrix B(d, d);
  for (size_t k = 0; k < d; ++k)
    for (size_t l = 0; l < d; ++l) B(k, l) = (E.basis[k] * E.basis[l]).trace();
  CycMatrix rad = nullspace(B);
  E.radical_dim = rad.cols();
  std::vector<CycMatrix> R;
  for (size_t m = 0; m < rad.cols(); ++m) {
    CycMatrix X(N, N);
    for (size_t k = 0; k < d; ++k)
      if (!is_zero(rad(k, m))) X = X + E.basis[k].scaled(rad(k, m));
    R.push_back(X);
  }
  // center of End / rad: sum c_k [E_k, E_l] in rad for every l
  size_t rd = R.size();
  size_t unknowns = d + d * rd;
  CycMatrix cs(d * N * N, unknowns);
  for (size_t l = 0; l < d; ++l)
    for (size_t k = 0; k < d; ++k) {
      CycMatrix C = E.basis[k] * E.basis[l] - E.basis[l] * E.basis[k];
      for (size_t a = 0; a < N * N; ++a) cs(l * N * N + a, k) = C(a / N, a % N);
    }
  for (size_t l = 0; l < d; ++l)
    for (size_t m = 0; m < rd; ++m)
      for (size_t a = 0; a < N * N; ++a) cs(l * N * N + a, d + l * rd + m) = -R[m](a / N, a % N);
  CycMatrix sol = nullspace(cs);
  CycMatrix proj(d, sol.cols());
  for (size_t c = 0; c < sol.cols(); ++c)
    for (size_t k = 0; k < d; ++k) proj(k, c) = sol(k, c);
  E.center_dim = rank(proj) - E.radical_dim;
  return E;
}

EndomorphismAlgebra endomorphism_algebra(const std::vector<AhaFiber>& Ms) { return endomorphism_algebra(direct_sum(Ms)); }

// ---------------------------------------------------------------------------
// fixtures

AffineFiniteModule a1_simple_lambda0() {
  AffineFiniteModule M;
  QMatrix one = QMatrix::identity(1);
  M.s = {one, one};
  QMatrix x(1, 1);
  x(0, 0) = Rational(1, 4);
  M.xi = {x};
  return M;
}

int check_relations(const Daha& H, const AffineFiniteModule& M) {
  const auto& aw = H.affine_weyl();
  const auto& R = H.datum();
  int r = R.rank();
  size_t d = M.xi.at(0).rows();
  int bad = 0;
  auto I = QMatrix::identity(d);
  // affine simple roots: alpha_i (i < r) and -theta; Coxeter orders from the pairings
  auto root = [&](int i) { return i < r ? R.simple_root_index(i) : R.negate(R.highest_root()); };
  std::vector<std::vector<int>> m(r + 1, std::vector<int>(r + 1, 0));
  for (int i = 0; i <= r; ++i)
    for (int j = 0; j <= r; ++j)
      if (i != j)
        m[i][j] = braid_order(R.pair_int(R.root(root(i)), R.coroot(root(j))),
                              R.pair_int(R.root(root(j)), R.coroot(root(i))));
  for (int i = 0; i <= r; ++i)
    if (!(M.s[i] * M.s[i] == I)) ++bad;
  bad += braid_violations(M.s, m, d);
  bad += commute_violations(M.xi);
  for (int i = 0; i <= r; ++i)
    for (int j = 0; j < r; ++j) {
      XiPoly x = XiPoly::variable(r, j);
      QMatrix lhs = M.s[i] * M.xi[j] - eval_poly(act_xi(aw, aw.simple(i), x), M.xi, {}, d) * M.s[i];
      QMatrix rhs = eval_poly(demazure_xi_simple(aw, x, i), M.xi, {}, d).scaled(H.h_simple(i));
      if (!(lhs == rhs)) ++bad;
    }
  return bad;
}

AhaFiber a1_simple_ell0(int sign) {
  AhaFiber M;
  M.side = Side::aha;
  M.rd = RootDatum::type_A(1);
  CycMatrix t(1, 1), y(1, 1), yi(1, 1);
  Cyclotomic i = Cyclotomic::zeta(4);
  if (sign < 0) i = -i;
  t(0, 0) = Cyclotomic(-1);
  y(0, 0) = i;
  yi(0, 0) = i.inverse();
  M.s = {t};
  M.xi = {y};
  M.xi_inv = {yi};
  M.weights = {{i}};
  M.orbit = {{i}};
  M.cosets = {0};
  M.label = sign < 0 ? "V(ell0^-1)" : "V(ell0)";
  return M;
}

CompositionReport composition_check(const AffineWeyl& aw, const HeckeParams& p, const Weight& lambda0,
                                    const AffineElement& w, const Rational& box) {
  const auto& R = aw.datum();
  CompositionReport rep;
  auto in_box = [&](const Weight& nu) {
    for (int k = 0; k < R.num_positive(); ++k)
      if (abs(R.pair(nu, R.coroot(k))) > box) return false;
    return true;
  };
  auto ad = affine_domains(aw, p, lambda0);
  int La = aw.length_bound_for_box(lambda0, box);
  Character sum;
  for (size_t dom = 0; dom < ad.domains.size(); ++dom)
    for (auto& nu : domain_character(aw, ad, static_cast<int>(dom), lambda0, La))
      if (in_box(nu)) sum[nu] += 1;
  Weight mu = aw.act(w, lambda0);
  Rational M0(0);
  for (int u = 0; u < R.order(); ++u)
    for (int k = 0; k < R.num_positive(); ++k) {
      Rational v = abs(R.pair(R.act(u, mu), R.coroot(k)));
      if (v > M0) M0 = v;
    }
  int L = static_cast<int>(R.num_positive() * to_long(-floor_q(-(box + M0))));
  auto H = std::make_shared<const Daha>(aw, p);
  auto P = standard_module(H, mu, L, 1);
  Character ch;
  for (auto& [nu, k] : character(P))
    if (in_box(nu)) ch[nu] = k;
  std::set<Weight> all;
  for (auto& [nu, k] : sum) all.insert(nu);
  for (auto& [nu, k] : ch) all.insert(nu);
  for (auto& nu : all) {
    ++rep.weights_compared;
    int a = sum.count(nu) ? sum[nu] : 0, b = ch.count(nu) ? ch[nu] : 0;
    if (a != b) ++rep.mismatches;
  }
  return rep;
}

}  // namespace dahakz
