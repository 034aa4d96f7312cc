#include "dahakz/kz.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <sstream>

namespace dahakz {

namespace {

Complex z_power(const IVec& beta, const CVec& u) {
  Complex s;
  for (size_t k = 0; k < beta.size(); ++k)
    if (beta[k]) s += u[k] * Complex(beta[k]);
  return exp(s);
}

QMatrix fiber_word(const std::vector<QMatrix>& s, const std::vector<int>& word, size_t d) {
  QMatrix m = QMatrix::identity(d);
  for (int i : word) m = m * s.at(i);
  return m;
}

void compositions(int r, int total, IVec& cur, int pos, std::vector<IVec>& out) {
  if (pos == r - 1) {
    cur[pos] = total;
    out.push_back(cur);
    return;
  }
  for (int k = total; k >= 0; --k) {
    cur[pos] = k;
    compositions(r, total - k, cur, pos + 1, out);
  }
}

std::vector<Complex> vec_of(const CMatrix& m, size_t col) {
  std::vector<Complex> v(m.rows());
  for (size_t i = 0; i < m.rows(); ++i) v[i] = m(i, col);
  return v;
}

Real vnorm(const std::vector<Complex>& v) {
  Real s(0);
  for (auto& x : v) s += x.re * x.re + x.im * x.im;
  return boost::multiprecision::sqrt(s);
}

Complex inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex s;
  for (size_t i = 0; i < a.size(); ++i) s += a[i].conj() * b[i];
  return s;
}

// dimension of the span of orbit of v under gens (Gram-Schmidt, relative threshold)
size_t span_dim(const std::vector<Complex>& v, const std::vector<CMatrix>& gens, const Real& tol) {
  std::vector<std::vector<Complex>> basis;
  auto add = [&](std::vector<Complex> w) {
    Real n0 = vnorm(w);
    if (n0 == 0) return false;
    for (int pass = 0; pass < 2; ++pass)
      for (auto& b : basis) {
        Complex c = inner(b, w);
        for (size_t i = 0; i < w.size(); ++i) w[i] -= c * b[i];
      }
    Real n = vnorm(w);
    if (n <= tol * n0) return false;
    for (auto& x : w) x /= Complex(n);
    basis.push_back(w);
    return true;
  };
  add(v);
  for (size_t k = 0; k < basis.size() && basis.size() < v.size(); ++k)
    for (auto& g : gens) {
      add(g.apply(basis[k]));
      if (basis.size() == v.size()) break;
    }
  return basis.size();
}

Real rel(const Real& a, const Real& scale) { return a / (Real(1) + scale); }

CMatrix monomial_value(const IVec& e, const std::vector<CMatrix>& y, const std::vector<CMatrix>& yi) {
  CMatrix m = CMatrix::identity(y[0].rows());
  for (size_t j = 0; j < e.size(); ++j)
    for (int k = 0; k < std::abs(e[j]); ++k) m = m * (e[j] > 0 ? y[j] : yi[j]);
  return m;
}

CMatrix laurent_value(const YLaurent& p, const std::vector<CMatrix>& y, const std::vector<CMatrix>& yi) {
  CMatrix out(y[0].rows(), y[0].rows());
  for (auto& [e, c] : p.terms()) out += monomial_value(e, y, yi).scaled(to_complex(c));
  return out;
}

int braid_m(int a, int b) {
  switch (a * b) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return 0;
  }
}

AhaResiduals residuals_of(const RootDatum& R, const std::vector<Complex>& zeta, const AhaRep& rep) {
  AhaResiduals res{Real(0), Real(0), Real(0), Real(0)};
  int r = R.rank();
  size_t d = rep.dim();
  CMatrix I = CMatrix::identity(d);
  for (int i = 0; i < r; ++i) {
    const CMatrix& t = rep.t[i];
    CMatrix q = (t - I.scaled(zeta[i])) * (t + I);
    res.quadratic = std::max(res.quadratic, rel(q.norm(), t.norm() * t.norm()));
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      int m = braid_m(R.a(i, j), R.a(j, i));
      if (!m) continue;
      CMatrix a = I, b = I;
      for (int k = 0; k < m; ++k) {
        a = a * rep.t[k % 2 ? j : i];
        b = b * rep.t[k % 2 ? i : j];
      }
      res.braid = std::max(res.braid, rel((a - b).norm(), a.norm()));
    }
  for (int i = 0; i < r; ++i) {
    res.commute = std::max(res.commute, rel((rep.y[i] * rep.y_inv[i] - I).norm(), rep.y[i].norm()));
    for (int j = i + 1; j < r; ++j)
      res.commute =
          std::max(res.commute, rel((rep.y[i] * rep.y[j] - rep.y[j] * rep.y[i]).norm(), rep.y[i].norm() * rep.y[j].norm()));
  }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      IVec e(r, 0);
      e[j] = 1;
      YLaurent yl = YLaurent::monomial(e);
      CMatrix lhs = rep.t[i] * rep.y[j] - laurent_value(act_lattice(R, R.simple(i), yl, true), rep.y, rep.y_inv) * rep.t[i];
      CMatrix rhs = laurent_value(bernstein_difference(R, yl, i), rep.y, rep.y_inv).scaled(zeta[i] - Complex(1));
      res.cross = std::max(res.cross, rel((lhs - rhs).norm(), rep.t[i].norm() * rep.y[j].norm()));
    }
  return res;
}

}  // namespace

// ---------------------------------------------------------------------------
// problems

std::vector<CMatrix> ConnectionProblem::A(const CVec& u) const {
  std::vector<CMatrix> out = A0;
  for (auto& g : geometric) {
    Complex z = z_power(g.beta, u);
    Complex w = z / (Complex(1) - z);
    for (int j = 0; j < r; ++j)
      if (g.C[j].rows()) out[j] += g.C[j].scaled(w);
  }
  for (auto& p : polynomial) {
    Complex z = z_power(p.gamma, u);
    for (int j = 0; j < r; ++j)
      if (p.C[j].rows()) out[j] += p.C[j].scaled(z);
  }
  return out;
}

Real ConnectionProblem::margin(const CVec& u) const {
  Real m(1e10);
  for (auto& g : geometric) {
    Real a = abs(Complex(1) - z_power(g.beta, u));
    if (a < m) m = a;
  }
  return m;
}

ConnectionProblem kz_problem(const Daha& H, const DegFiber& M, int bits) {
  PrecisionScope ps(bits);
  const auto& R = H.datum();
  ConnectionProblem P;
  P.r = R.rank();
  P.d = M.dim();
  P.bits = bits;
  P.rd = H.affine_weyl().datum_ptr();
  P.rho_tilde = H.params().rho_tilde();
  P.weights = M.weights;
  P.label = M.label;
  QMatrix I = QMatrix::identity(P.d);
  for (int j = 0; j < P.r; ++j) {
    P.A0.push_back(to_cmatrix(I.scaled(P.rho_tilde[j]) - M.xi[j]));
    std::vector<Rational> ex;
    for (auto& w : M.weights) ex.push_back(P.rho_tilde[j] - w[j]);
    P.exponents.push_back(ex);
  }
  for (int i = 0; i < P.r; ++i) {
    P.S.push_back(to_cmatrix(M.s[i]));
    P.h.push_back(H.h_simple(i));
  }
  for (int k = 0; k < R.num_positive(); ++k) {
    QMatrix Sb = fiber_word(M.s, R.word(R.reflection(k)), P.d);
    QMatrix base = I - Sb;
    GeometricTerm g;
    g.beta = R.root(k);
    for (int j = 0; j < P.r; ++j) {
      Rational c = H.params().h_root(k) * g.beta[j];
      g.C.push_back(is_zero(c) ? CMatrix() : to_cmatrix(base.scaled(c)));
    }
    P.geometric.push_back(g);
  }
  return P;
}

ConnectionProblem scalar_problem(const Rational& m, int bits) {
  PrecisionScope ps(bits);
  ConnectionProblem P;
  P.r = 1;
  P.d = 1;
  P.bits = bits;
  CMatrix a(1, 1);
  a(0, 0) = to_complex(m);
  P.A0 = {a};
  P.exponents = {{m}};
  PolynomialTerm t;
  t.gamma = {1};
  t.C = {CMatrix::identity(1)};
  P.polynomial.push_back(t);
  P.label = "scalar";
  return P;
}

ConnectionProblem constant_problem(const std::vector<CMatrix>& A0, int bits) {
  ConnectionProblem P;
  P.r = static_cast<int>(A0.size());
  P.d = A0.at(0).rows();
  P.bits = bits;
  P.A0 = A0;
  P.label = "constant";
  return P;
}

Real flatness_residual(const ConnectionProblem& P, const CVec& u) {
  PrecisionScope ps(P.bits);
  auto A = P.A(u);
  // exact derivatives d_k A_j
  std::vector<std::vector<CMatrix>> dA(P.r, std::vector<CMatrix>(P.r, CMatrix(P.d, P.d)));
  for (auto& g : P.geometric) {
    Complex z = z_power(g.beta, u);
    Complex one_minus = Complex(1) - z;
    Complex w = z / (one_minus * one_minus);
    for (int k = 0; k < P.r; ++k) {
      if (!g.beta[k]) continue;
      for (int j = 0; j < P.r; ++j)
        if (g.C[j].rows()) dA[k][j] += g.C[j].scaled(w * Complex(g.beta[k]));
    }
  }
  for (auto& p : P.polynomial) {
    Complex z = z_power(p.gamma, u);
    for (int k = 0; k < P.r; ++k) {
      if (!p.gamma[k]) continue;
      for (int j = 0; j < P.r; ++j)
        if (p.C[j].rows()) dA[k][j] += p.C[j].scaled(z * Complex(p.gamma[k]));
    }
  }
  Real worst(0), scale(0);
  for (auto& a : A) scale = std::max(scale, a.norm());
  for (int j = 0; j < P.r; ++j)
    for (int k = j + 1; k < P.r; ++k) {
      CMatrix f = dA[j][k] - dA[k][j] + A[k] * A[j] - A[j] * A[k];
      worst = std::max(worst, rel(f.norm(), scale * scale));
    }
  return worst;
}

// ---------------------------------------------------------------------------
// Frobenius series

CMatrix FundamentalSolution::H_at(const CVec& u) const {
  CMatrix out(H.begin()->second.rows(), H.begin()->second.cols());
  for (auto& [b, M] : H) out += M.scaled(z_power(b, u));
  return out;
}

CMatrix FundamentalSolution::G_at(const ConnectionProblem& P, const CVec& u) const {
  CMatrix L(P.d, P.d);
  for (int j = 0; j < P.r; ++j) L += P.A0[j].scaled(u[j]);
  return H_at(u) * expm(L);
}

Real FundamentalSolution::tail(const CVec& u) const {
  Real t(0);
  for (auto& [b, M] : H) {
    int s = 0;
    for (int x : b) s += x;
    if (s == order) t += M.norm() * abs(z_power(b, u));
  }
  return t;
}

FundamentalSolution frobenius_series(const ConnectionProblem& P, int N) {
  PrecisionScope ps(P.bits);
  const int r = P.r;
  const size_t d = P.d;
  for (int j = 0; j < static_cast<int>(P.exponents.size()); ++j) {
    const auto& ex = P.exponents[j];
    for (size_t a = 0; a < ex.size(); ++a)
      for (size_t b = 0; b < ex.size(); ++b) {
        Rational diff = ex[a] - ex[b];
        if (!is_zero(diff) && is_integer(diff)) {
          std::ostringstream os;
          os << "resonant exponents " << to_string(ex[a]) << " and " << to_string(ex[b]) << " of A_" << j + 1
             << "0 differ by an integer";
          throw ResonanceError(os.str());
        }
      }
  }
  // coefficients A_{j gamma}
  std::map<IVec, std::vector<CMatrix>> coef;
  auto add_coef = [&](const IVec& g, const std::vector<CMatrix>& C) {
    auto& slot = coef[g];
    if (slot.empty()) slot.assign(r, CMatrix(d, d));
    for (int j = 0; j < r; ++j)
      if (C[j].rows()) slot[j] += C[j];
  };
  for (auto& g : P.geometric) {
    int len = 0;
    for (int x : g.beta) len += x;
    for (int m = 1; m * len <= N; ++m) {
      IVec gm = g.beta;
      for (auto& x : gm) x *= m;
      add_coef(gm, g.C);
    }
  }
  for (auto& p : P.polynomial) {
    int len = 0;
    for (int x : p.gamma) len += x;
    if (len <= N) add_coef(p.gamma, p.C);
  }

  FundamentalSolution F;
  F.order = N;
  F.residual = Real(0);
  F.H[IVec(r, 0)] = CMatrix::identity(d);
  std::map<std::pair<int, int>, LU> lus;
  auto kron = [&](int j, int gj) -> const LU& {
    auto key = std::make_pair(j, gj);
    auto it = lus.find(key);
    if (it != lus.end()) return it->second;
    CMatrix M = P.A0[j] + CMatrix::identity(d).scaled(Complex(gj));
    CMatrix K(d * d, d * d);
    for (size_t a = 0; a < d; ++a)
      for (size_t b = 0; b < d; ++b)
        for (size_t c = 0; c < d; ++c) {
          K(a * d + b, a * d + c) += M(c, b);
          K(a * d + b, c * d + b) -= P.A0[j](a, c);
        }
    return lus.emplace(key, LU(K)).first->second;
  };
  for (int deg = 1; deg <= N; ++deg) {
    std::vector<IVec> gs;
    IVec cur(r, 0);
    compositions(r, deg, cur, 0, gs);
    for (auto& g : gs) {
      std::vector<CMatrix> rhs(r, CMatrix(d, d));
      for (auto& [gp, C] : coef) {
        bool le = true;
        for (int k = 0; k < r && le; ++k) le = gp[k] <= g[k];
        if (!le) continue;
        IVec rest = g;
        for (int k = 0; k < r; ++k) rest[k] -= gp[k];
        auto it = F.H.find(rest);
        if (it == F.H.end()) continue;
        for (int j = 0; j < r; ++j) rhs[j] += C[j] * it->second;
      }
      int js = static_cast<int>(std::max_element(g.begin(), g.end()) - g.begin());
      std::vector<Complex> b(d * d);
      for (size_t a = 0; a < d; ++a)
        for (size_t c = 0; c < d; ++c) b[a * d + c] = rhs[js](a, c);
      auto x = kron(js, g[js]).solve(b);
      CMatrix X(d, d);
      for (size_t a = 0; a < d; ++a)
        for (size_t c = 0; c < d; ++c) X(a, c) = x[a * d + c];
      for (int j = 0; j < r; ++j) {
        CMatrix res = X * (P.A0[j] + CMatrix::identity(d).scaled(Complex(g[j]))) - P.A0[j] * X - rhs[j];
        Real scale = std::max(rhs[j].norm(), X.norm() * (Real(g[j]) + P.A0[j].norm()));
        F.residual = std::max(F.residual, rel(res.norm(), scale));
      }
      F.H[g] = X;
    }
  }
  return F;
}

// ---------------------------------------------------------------------------
// paths and transport

Path straight_path(const CVec& a, const CVec& b) {
  CVec diff(a.size());
  for (size_t k = 0; k < a.size(); ++k) diff[k] = b[k] - a[k];
  Path p;
  p.u = [a, diff](const Real& t) {
    CVec u = a;
    for (size_t k = 0; k < u.size(); ++k) u[k] += diff[k] * Complex(t);
    return u;
  };
  p.du = [diff](const Real&) { return diff; };
  p.label = "straight";
  return p;
}

Path loop_path(const CVec& base, int j) {
  CVec b = base;
  for (auto& x : b) x = Complex(0);
  b[j] = Complex(Real(0), 2 * pi_real());
  CVec end = base;
  end[j] += b[j];
  Path p = straight_path(base, end);
  p.label = "gamma_" + std::to_string(j + 1);
  return p;
}

Path tau_path(const RootDatum& R, const CVec& base, int j, int sigma, const Real& delta) {
  int r = R.rank();
  std::vector<int> a(r);
  for (int k = 0; k < r; ++k) a[k] = R.a(k, j);
  Complex bj = base[j];
  Real sd = sigma * delta;
  Path p;
  p.u = [=](const Real& t) {
    Complex s = bj * Complex(t) + Complex(Real(0), sd * boost::multiprecision::sin(pi_real() * t));
    CVec u = base;
    for (int k = 0; k < r; ++k) u[k] -= s * Complex(a[k]);
    return u;
  };
  p.du = [=](const Real& t) {
    Complex s = bj + Complex(Real(0), sd * pi_real() * boost::multiprecision::cos(pi_real() * t));
    CVec u(r);
    for (int k = 0; k < r; ++k) u[k] = -(s * Complex(a[k]));
    return u;
  };
  p.label = "tau_" + std::to_string(j + 1);
  return p;
}

Path reversed(const Path& p) {
  Path q;
  auto u = p.u;
  auto du = p.du;
  q.u = [u](const Real& t) { return u(Real(1) - t); };
  q.du = [du](const Real& t) {
    auto v = du(Real(1) - t);
    for (auto& x : v) x = -x;
    return v;
  };
  q.label = p.label + "^-1";
  return q;
}

Path subpath(const Path& p, const Real& a, const Real& b) {
  Path q;
  auto u = p.u;
  auto du = p.du;
  Real len = b - a;
  q.u = [u, a, len](const Real& t) { return u(a + len * t); };
  q.du = [du, a, len](const Real& t) {
    auto v = du(a + len * t);
    for (auto& x : v) x *= Complex(len);
    return v;
  };
  q.label = p.label + "|";
  return q;
}

Transport transport(const ConnectionProblem& P, const Path& path, const TransportOptions& opt) {
  PrecisionScope ps(P.bits);
  const size_t d = P.d;
  const int kmax = 14;
  Real tol(opt.tol), margin_min(opt.margin);
  Transport tr;
  tr.U = CMatrix::identity(d);
  tr.error = Real(0);
  tr.min_margin = Real(1e10);
  auto B = [&](const Real& t) {
    CVec u = path.u(t);
    if (!P.geometric.empty()) {
      Real m = P.margin(u);
      if (m < tr.min_margin) tr.min_margin = m;
      if (m < margin_min) throw ScopeError("path " + path.label + " comes too close to the singular locus");
    }
    CVec du = path.du(t);
    auto A = P.A(u);
    CMatrix out(d, d);
    for (int j = 0; j < P.r; ++j)
      if (du[j].re != 0 || du[j].im != 0) out += A[j].scaled(du[j]);
    return out;
  };
  auto midpoint = [&](const Real& t0, const CMatrix& X0, const Real& Hs, int n) {
    Real h = Hs / n;
    CMatrix zprev = X0;
    CMatrix z = X0 + (B(t0) * X0).scaled(Complex(h));
    for (int m = 1; m < n; ++m) {
      CMatrix znext = zprev + (B(t0 + h * m) * z).scaled(Complex(2 * h));
      zprev = z;
      z = znext;
    }
    return (z + zprev + (B(t0 + Hs) * z).scaled(Complex(h))).scaled(Complex(Real(1) / 2));
  };
  Real t(0), Hs(Real(1) / 16);
  int guard = 0;
  while (t < 1) {
    if (++guard > opt.max_steps) throw ToleranceError("transport along " + path.label + ": step limit reached");
    if (t + Hs > 1) Hs = Real(1) - t;
    std::vector<std::vector<CMatrix>> T;
    std::vector<int> ns;
    bool ok = false;
    Real err(0);
    int used = 0;
    for (int k = 0; k < kmax; ++k) {
      int n = 2 * (k + 1);
      ns.push_back(n);
      std::vector<CMatrix> row{midpoint(t, tr.U, Hs, n)};
      for (int l = 1; l <= k; ++l) {
        Real ratio = Real(n) / ns[k - l];
        Real f = Real(1) / (ratio * ratio - 1);
        row.push_back(row[l - 1] + (row[l - 1] - T[k - 1][l - 1]).scaled(Complex(f)));
      }
      T.push_back(row);
      if (k >= 2) {
        err = (row[k] - row[k - 1]).norm();
        Real scale = std::max(Real(1), row[k].norm());
        if (err <= tol * scale) {
          ok = true;
          used = k;
          break;
        }
      }
    }
    if (!ok) {
      Hs /= 2;
      ++tr.rejected;
      if (Hs < Real(1e-12)) throw ToleranceError("transport along " + path.label + ": step size underflow");
      continue;
    }
    tr.U = T[used][used];
    tr.error += err;
    t += Hs;
    ++tr.steps;
    if (used < kmax / 2) Hs *= Real(1.5);
    else if (used > (3 * kmax) / 4) Hs *= Real(0.7);
  }
  return tr;
}

// ---------------------------------------------------------------------------
// monodromy

bool MonodromyRep::relations_ok(double tol) const {
  Real t(tol);
  return quadratic_residual < t && braid_residual < t && commute_residual < t && cross_residual < t;
}

MonodromyRep monodromy(const ConnectionProblem& P, const MonodromyOptions& opt) {
  if (!P.rd) throw ConfigError("monodromy needs a fiber problem");
  PrecisionScope ps(P.bits);
  const auto& R = *P.rd;
  const int r = P.r;
  MonodromyRep out;
  out.r = r;
  out.d = P.d;
  out.bits = P.bits;
  CVec base(r, Complex(Real(-opt.c)));

  FundamentalSolution F;
  if (opt.order > 0) {
    F = frobenius_series(P, opt.order);
  } else {
    for (int N = 8;; N += 4) {
      F = frobenius_series(P, N);
      if (F.tail(base) < Real(opt.series_tol)) break;
      if (N >= 96) throw ToleranceError("Frobenius series did not converge at the base point");
    }
  }
  out.order = F.order;
  out.series_residual = F.residual;
  out.series_tail = F.tail(base);
  CMatrix G = F.G_at(P, base);
  CMatrix Ginv = inverse(G);

  std::vector<Path> paths;
  for (int j = 0; j < r; ++j) paths.push_back(loop_path(base, j));
  for (int j = 0; j < r; ++j) paths.push_back(tau_path(R, base, j, opt.sigma, pi_real() / 2));
  std::vector<Transport> trs(paths.size());
  if (opt.jobs > 1) {
    std::vector<std::future<Transport>> fut;
    for (auto& p : paths) fut.push_back(std::async(std::launch::async, [&P, p, &opt] { return transport(P, p, opt.transport); }));
    for (size_t k = 0; k < fut.size(); ++k) trs[k] = fut[k].get();
  } else {
    for (size_t k = 0; k < paths.size(); ++k) trs[k] = transport(P, paths[k], opt.transport);
  }
  out.transport_error = Real(0);
  out.loop_check = Real(0);
  for (auto& t : trs) out.transport_error = std::max(out.transport_error, t.error);
  for (int j = 0; j < r; ++j) {
    CMatrix Y = Ginv * inverse(trs[j].U) * G;
    CMatrix T = inverse(trs[r + j].U * G) * P.S[j] * G;
    CMatrix expected = expm(P.A0[j].scaled(Complex(Real(0), -2 * pi_real())));
    out.loop_check = std::max(out.loop_check, rel((Y - expected).norm(), expected.norm()));
    out.Y.push_back(Y);
    out.T.push_back(T);
    Complex zh = exp2pii(to_real(P.h[j]) / 2);
    out.zeta_half.push_back(zh);
    out.zeta.push_back(zh * zh);
    CMatrix y = Y.scaled(exp2pii(to_real(P.rho_tilde[j])));
    out.y.push_back(y);
    out.y_inv.push_back(inverse(y));
    out.t.push_back(T.scaled(zh * zh));
  }
  auto res = residuals_of(R, out.zeta, to_rep(out));
  out.quadratic_residual = res.quadratic;
  out.braid_residual = res.braid;
  out.commute_residual = res.commute;
  out.cross_residual = res.cross;
  return out;
}

Real spectrum_residual(const MonodromyRep& m, const std::vector<Weight>& weights) {
  PrecisionScope ps(m.bits);
  CMatrix yc(m.d, m.d);
  std::vector<Complex> c;
  for (int j = 0; j < m.r; ++j) c.push_back(Complex(Real(1) + Real(37 * (j + 1)) / 100, Real(21 * (j + 1)) / 100));
  for (int j = 0; j < m.r; ++j) yc += m.y[j].scaled(c[j]);
  std::vector<Complex> roots;
  for (auto& w : weights) {
    Complex v;
    for (int j = 0; j < m.r; ++j) v += c[j] * exp2pii(to_real(w[j]));
    roots.push_back(v);
  }
  auto a = char_poly(yc);
  auto b = poly_from_roots(roots);
  Real worst(0), scale(1);
  for (auto& x : b) scale = std::max(scale, abs(x));
  for (size_t k = 0; k < a.size(); ++k) worst = std::max(worst, abs(a[k] - b[k]));
  return worst / scale;
}

// ---------------------------------------------------------------------------
// rank one

std::pair<Complex, Complex> rank_one_oracle(const Rational& gamma, const Rational& h) {
  PrecisionScope ps(256);
  Rational z = -gamma;
  auto nonpos_int = [](const Rational& q) { return is_integer(q) && sgn(q) <= 0; };
  if (is_integer(z)) throw ScopeError("a(z) has a pole at integer z");
  if (nonpos_int(z) || nonpos_int(z + 1)) throw ScopeError("b(z): Gamma pole in the numerator");
  if (nonpos_int(h + z) || nonpos_int(1 - h + z)) throw ScopeError("b(z) vanishes: Gamma pole in the denominator");
  Complex zh = exp2pii(to_real(h) / 2);
  Complex a = (zh - Complex(1) / zh) / (exp2pii(to_real(z)) - Complex(1));
  Real zr = to_real(z), hr = to_real(h);
  using boost::multiprecision::tgamma;
  Real b = tgamma(zr) * tgamma(1 + zr) / (tgamma(hr + zr) * tgamma(1 - hr + zr));
  return {a, Complex(b)};
}

std::pair<Complex, Complex> rank_one_constants(const MonodromyRep& m, const Rational& gamma, const Rational& h) {
  PrecisionScope ps(m.bits);
  if (m.r != 1 || m.d != 2) throw ConfigError("rank-one constants need the two-dimensional A1 fiber");
  // normalized generator zeta^{1/2} T, basis (1, phi'_s (xi - h)^{-1} 1)
  CMatrix t = m.T[0].scaled(m.zeta_half[0]);
  Complex c = t(1, 0) / to_complex(gamma);
  Complex a = t(0, 0) + c * to_complex(h);
  Complex b = c * to_complex(gamma - h);
  return {-a, b};
}

// ---------------------------------------------------------------------------
// identification

AhaRep to_rep(const AhaFiber& M) {
  AhaRep rep;
  for (auto& m : M.s) rep.t.push_back(to_cmatrix(m));
  for (auto& m : M.xi) rep.y.push_back(to_cmatrix(m));
  for (auto& m : M.xi_inv) rep.y_inv.push_back(to_cmatrix(m));
  return rep;
}

AhaRep to_rep(const MonodromyRep& m) { return AhaRep{m.t, m.y, m.y_inv}; }

AhaResiduals aha_residuals(const Aha& A, const AhaRep& rep) {
  std::vector<Complex> z;
  for (int i = 0; i < A.rank(); ++i) z.push_back(to_complex(A.params().zeta_simple(i)));
  return residuals_of(A.datum(), z, rep);
}

HomReport hom_compare(const AhaRep& from, const AhaRep& to, double tol) {
  HomReport rep;
  rep.conditioning = Real(0);
  size_t df = from.dim(), dt = to.dim();
  std::vector<std::pair<const CMatrix*, const CMatrix*>> gens;
  for (size_t i = 0; i < from.t.size(); ++i) gens.push_back({&from.t[i], &to.t[i]});
  for (size_t j = 0; j < from.y.size(); ++j) gens.push_back({&from.y[j], &to.y[j]});
  CMatrix sys(gens.size() * dt * df, dt * df);
  size_t row = 0;
  for (auto& [F, T] : gens)
    for (size_t p = 0; p < dt; ++p)
      for (size_t q = 0; q < df; ++q, ++row) {
        for (size_t k = 0; k < df; ++k) sys(row, p * df + k) += (*F)(k, q);
        for (size_t k = 0; k < dt; ++k) sys(row, k * df + q) -= (*T)(p, k);
      }
  Real thr = Real(tol) * Real(1e-4);
  CMatrix ns = null_space(sys, thr);
  rep.hom_dim = static_cast<int>(ns.cols());
  if (rep.hom_dim == 0 || df != dt) return rep;
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> U(0.5, 1.5);
  CMatrix X(dt, df);
  for (size_t c = 0; c < ns.cols(); ++c) {
    Complex coef(Real(U(rng)), Real(U(rng)));
    for (size_t p = 0; p < dt; ++p)
      for (size_t q = 0; q < df; ++q) X(p, q) += ns(p * df + q, c) * coef;
  }
  rep.X = X;
  try {
    LU lu(X);
    rep.conditioning = lu.min_pivot() / X.norm();
  } catch (const std::domain_error&) {
    rep.conditioning = Real(0);
  }
  rep.isomorphic = rep.conditioning > Real(tol);
  return rep;
}

bool cyclic_eigenvector(const AhaRep& rep, const std::vector<Complex>& m, double tol, std::vector<Complex>* vec) {
  size_t d = rep.dim();
  size_t r = rep.y.size();
  CMatrix st(r * d, d);
  for (size_t j = 0; j < r; ++j)
    for (size_t a = 0; a < d; ++a)
      for (size_t b = 0; b < d; ++b) st(j * d + a, b) = rep.y[j](a, b) - (a == b ? m[j] : Complex(0));
  Real thr = Real(tol) * Real(1e-4);
  CMatrix ns = null_space(st, thr);
  if (ns.cols() == 0) return false;
  std::vector<CMatrix> gens = rep.t;
  gens.insert(gens.end(), rep.y.begin(), rep.y.end());
  gens.insert(gens.end(), rep.y_inv.begin(), rep.y_inv.end());
  std::vector<std::vector<Complex>> tries;
  for (size_t c = 0; c < ns.cols(); ++c) tries.push_back(vec_of(ns, c));
  if (ns.cols() > 1) {
    std::vector<Complex> g(d);
    for (size_t c = 0; c < ns.cols(); ++c)
      for (size_t a = 0; a < d; ++a) g[a] += ns(a, c) * Complex(Real(1) + Real(static_cast<long>(c)) / 7, Real(1) / 3);
    tries.insert(tries.begin(), g);
  }
  for (auto& v : tries)
    if (span_dim(v, gens, Real(tol) * Real(1e-4)) == d) {
      if (vec) *vec = v;
      return true;
    }
  return false;
}

Identification identify(const MonodromyRep& m, const std::vector<AhaFiber>& candidates, double tol) {
  PrecisionScope ps(m.bits);
  if (candidates.empty()) throw ConfigError("identify: empty candidate list");
  Identification id;
  AhaRep rep = to_rep(m);
  for (auto& c : candidates) {
    if (c.dim() != m.d) throw ConfigError("identify: candidate " + c.label + " has the wrong dimension");
    id.hom.push_back(hom_compare(to_rep(c), rep, tol));
    std::vector<Complex> pt;
    for (auto& x : c.orbit.at(0)) pt.push_back(to_complex(x));
    id.cyclic.push_back(cyclic_eigenvector(rep, pt, tol));
    if (id.hom.back().isomorphic) id.matches.push_back(static_cast<int>(id.hom.size()) - 1);
  }
  if (id.matches.empty()) throw ToleranceError("identify: no candidate matches within tolerance");
  return id;
}

namespace {

bool deep_outside(const RootDatum& R, unsigned J, const Weight& mu, const Rational& kappa) {
  for (int k = 0; k < R.num_positive(); ++k) {
    // coroots of the parabolic subsystem are skipped
    bool inJ = true;
    const IVec& b = R.root(k);
    for (int j = 0; j < R.rank(); ++j)
      if (b[j] != 0 && !((J >> j) & 1u)) inJ = false;
    if (inJ) continue;
    if (R.pair(mu, R.coroot(k)) > -kappa) return false;
  }
  return true;
}

}  // namespace

IdentificationCheck verify_identification(const RootDatumPtr& rd, const Rational& h0, const Weight& lambda0,
                                   const AffineElement& what, const MonodromyOptions& opt, int depth_bound,
                                   const Rational& kappa) {
  const auto& R = *rd;
  AffineWeyl aw(rd);
  auto p = HeckeParams::uniform(rd, h0);
  Daha H(aw, p);
  IdentificationCheck out;
  out.what = what;
  auto ad = affine_domains(aw, p, lambda0);
  out.domain = domain_of(aw, ad, what);
  bool found = false;
  for (auto& op : aw.orbit(lambda0, depth_bound)) {
    if (domain_of(aw, ad, op.g) != out.domain) continue;
    if (!deep_outside(R, 0u, op.point, kappa)) continue;
    out.mu0 = op.point;
    found = true;
    break;
  }
  if (!found) throw ScopeError("no deep point of the domain within the length bound");
  auto fiber = degenerate_standard(H, out.mu0, 1);
  auto P = kz_problem(H, fiber, opt.bits);
  out.rep = monodromy(P, opt);

  auto ap = AhaParams::from_hecke(p);
  Aha A(ap);
  auto ell0 = exp_point(lambda0);
  std::vector<AhaFiber> cands;
  for (int w = 0; w < R.order(); ++w) {
    auto pt = act_torus(R, w, ell0);
    if (std::find(out.points.begin(), out.points.end(), pt) != out.points.end()) continue;
    out.points.push_back(pt);
    out.candidate_w.push_back(w);
    cands.push_back(aha_standard(A, pt, 1));
  }
  out.id = identify(out.rep, cands, opt.tol);
  for (int k : out.id.matches) out.matched_w.push_back(out.candidate_w[k]);

  auto cd = chamber_domains(ap, ell0);
  auto dg = dagger(aw, ad, cd);
  for (int w = 0; w < R.order(); ++w)
    if (dg.image[chamber_domain_of(cd, w)] == out.domain) out.predicted_w.push_back(w);
  for (int w : out.predicted_w) {
    auto pt = act_torus(R, w, ell0);
    for (int k : out.id.matches)
      if (out.points[k] == pt) out.consistent = true;
  }
  return out;
}

ParabolicCheck verify_parabolic(const RootDatumPtr& rd, const Rational& h0, unsigned J, const std::vector<Weight>& orbit,
                                int n, const MonodromyOptions& opt, const Rational& kappa) {
  const auto& R = *rd;
  AffineWeyl aw(rd);
  auto p = HeckeParams::uniform(rd, h0);
  Daha H(aw, p);
  ParabolicCheck out;
  for (auto& mu : orbit)
    if (!deep_outside(R, J, mu, kappa)) out.deep = false;
  auto fiber = degenerate_parabolic(H, J, orbit, n);
  out.dim = fiber.dim();
  auto P = kz_problem(H, fiber, opt.bits);
  out.rep = monodromy(P, opt);
  PrecisionScope ps(opt.bits);
  Aha A(AhaParams::from_hecke(p));
  std::vector<std::vector<Cyclotomic>> O;
  for (auto& mu : orbit) O.push_back(exp_point(mu));
  auto cand = aha_parabolic(A, J, O, n);
  out.hom = hom_compare(to_rep(cand), to_rep(out.rep), opt.tol);
  out.spectrum_residual = spectrum_residual(out.rep, fiber.weights);
  out.t_residual = Real(0);
  if (out.hom.isomorphic) {
    size_t local = cand.dim() / (cand.cosets.size() * O.size());
    std::vector<Complex> one(cand.dim());
    for (size_t pt = 0; pt < O.size(); ++pt) one[pt * local] = Complex(1);
    auto v = out.hom.X.apply(one);
    Real nv = vnorm(v);
    for (int j = 0; j < R.rank(); ++j) {
      if (!((J >> j) & 1u)) continue;
      auto tv = out.rep.t[j].apply(v);
      for (size_t a = 0; a < v.size(); ++a) tv[a] -= out.rep.zeta[j] * v[a];
      out.t_residual = std::max(out.t_residual, vnorm(tv) / nv);
    }
  }
  out.ok = out.hom.isomorphic && out.t_residual < Real(opt.tol) && out.spectrum_residual < Real(opt.tol) &&
           out.rep.relations_ok(opt.tol);
  return out;
}

}  // namespace dahakz
