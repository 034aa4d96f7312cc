#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "dahakz/arrangements.hpp"
#include "dahakz/kz.hpp"
#include "dahakz/modules.hpp"

namespace dahakz::cli {

namespace {

const std::vector<KeySpec> kKeys{
    {"type", "A1", "root type A1..A4"},
    {"cartan", "", "Cartan matrix file (overrides type)"},
    {"k", "1", "h = k/n with n the Coxeter number, when h is unset"},
    {"h", "", "parameter h (p/q); default k/n"},
    {"lambda", "", "lambda0, root coordinates; default rho/n"},
    {"mu", "", "weight, root coordinates; default lambda0"},
    {"window", "6", "length window L"},
    {"n", "1", "jet order"},
    {"J", "", "parabolic subset as a bitmask; default all simple roots"},
    {"orbit", "", "W_J-orbit: weights separated by ';'"},
    {"word", "", "word in simple affine reflections (r = s_heart)"},
    {"what", "0", "word of the affine element in verify-thm41"},
    {"depth", "", "length bound for the deep point search; default 12 (A1), 18 otherwise"},
    {"domain", "bounded", "'bounded', a domain id, or J=mask"},
    {"degree", "3", "test-space degree"},
    {"samples", "6", "number of random elements"},
    {"seed", "1", "random seed"},
    {"a", "", "JSON file with the left factor"},
    {"b", "", "JSON file with the right factor"},
    {"bits", "256", "working precision in bits"},
    {"tol", "1e-8", "tolerance"},
    {"c", "3", "base point u_j = -c"},
    {"jobs", "1", "parallel transports"},
};

const std::map<std::string, std::vector<std::string>> kCommandKeys{
    {"roots", {"type", "cartan"}},
    {"orbit", {"type", "cartan", "k", "lambda", "window"}},
    {"stabilizer", {"type", "cartan", "k", "lambda", "window"}},
    {"alcoves", {"type", "cartan", "window"}},
    {"domains", {"type", "cartan", "k", "h", "lambda", "window"}},
    {"char", {"type", "cartan", "k", "h", "lambda", "mu", "window", "n"}},
    {"simple-char", {"type", "cartan", "k", "h", "lambda", "domain", "window"}},
    {"daha-mul", {"type", "cartan", "k", "h", "a", "b", "seed"}},
    {"aha-mul", {"type", "cartan", "k", "h", "a", "b", "seed"}},
    {"dunkl-check", {"type", "cartan", "k", "h", "degree", "samples", "seed"}},
    {"intertwiner", {"type", "cartan", "k", "h", "lambda", "mu", "word", "window"}},
    {"monodromy", {"type", "k", "h", "lambda", "mu", "n", "J", "orbit", "bits", "tol", "c", "jobs"}},
    {"verify-thm41", {"type", "k", "h", "lambda", "what", "depth", "bits", "tol", "c", "jobs"}},
    {"verify-parabolic", {"type", "k", "h", "lambda", "J", "orbit", "n", "bits", "tol", "c", "jobs"}},
    {"schur-example", {"type", "k", "h", "lambda", "n"}},
};

const std::map<std::string, std::string> kModule{
    {"roots", "root_data"},        {"orbit", "affine_weyl"},     {"stabilizer", "affine_weyl"},
    {"alcoves", "affine_weyl"},    {"domains", "arrangements"},  {"simple-char", "arrangements"},
    {"char", "modules"},           {"intertwiner", "modules"},   {"schur-example", "modules"},
    {"daha-mul", "hecke"},         {"aha-mul", "hecke"},         {"dunkl-check", "hecke"},
    {"monodromy", "kz"},           {"verify-thm41", "kz"},       {"verify-parabolic", "kz"},
};

// failed verification (exit 4) without a thrown tolerance error
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

// ---- typed access to the effective settings
class Config {
 public:
  Config(const std::string& cmd, std::map<std::string, std::string> v) : cmd_(cmd), v_(std::move(v)) {
    for (auto& k : keys_for(cmd))
      if (!v_.count(k)) v_[k] = key_spec(k).def;
  }
  const std::string& str(const std::string& k) const { return v_.at(k); }
  bool has(const std::string& k) const { return !v_.at(k).empty(); }
  long integer(const std::string& k) const {
    const auto& s = str(k);
    try {
      size_t pos = 0;
      long x = std::stol(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return x;
    } catch (const std::exception&) {
      throw ConfigError(k + ": expected an integer, got '" + s + "'");
    }
  }
  double real(const std::string& k) const {
    const auto& s = str(k);
    try {
      size_t pos = 0;
      double x = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return x;
    } catch (const std::exception&) {
      throw ConfigError(k + ": expected a number, got '" + s + "'");
    }
  }
  Rational rational(const std::string& k) const {
    try {
      return parse_rational(str(k));
    } catch (const ConfigError& e) {
      throw ConfigError(k + ": " + e.what());
    }
  }
  std::vector<int> ints(const std::string& k) const {
    std::vector<int> out;
    if (!has(k)) return out;
    for (auto& t : split(str(k), ',')) {
      try {
        size_t pos = 0;
        out.push_back(std::stoi(t, &pos));
        if (pos != t.size()) throw std::invalid_argument(t);
      } catch (const std::exception&) {
        throw ConfigError(k + ": expected integers separated by ',', got '" + str(k) + "'");
      }
    }
    return out;
  }
  Weight weight(const std::string& k, int r) const { return parse_weight(k, str(k), r); }
  std::vector<Weight> weights(const std::string& k, int r) const {
    std::vector<Weight> out;
    for (auto& t : split(str(k), ';'))
      if (!t.empty()) out.push_back(parse_weight(k, t, r));
    return out;
  }
  Json echo() const {
    Json j = Json::object();
    for (auto& k : keys_for(cmd_)) j[k] = v_.at(k);
    return j;
  }

 private:
  static Weight parse_weight(const std::string& k, const std::string& s, int r) {
    Weight w;
    for (auto& t : split(s, ',')) {
      try {
        w.push_back(parse_rational(t));
      } catch (const ConfigError& e) {
        throw ConfigError(k + ": " + e.what());
      }
    }
    if (static_cast<int>(w.size()) != r)
      throw ConfigError(k + ": expected " + std::to_string(r) + " coordinates, got '" + s + "'");
    return w;
  }
  std::string cmd_;
  std::map<std::string, std::string> v_;
};

// ---- serialization
Json q(const Rational& x) { return to_string(x); }
Json weight(const Weight& w) {
  Json a = Json::array();
  for (auto& x : w) a.push_back(q(x));
  return a;
}
Json cyc(const Cyclotomic& c) {
  if (c.is_rational()) return q(c.rational_value());
  Json co = Json::array();
  for (auto& x : c.coeffs()) co.push_back(q(x));
  return Json{{"order", c.order()}, {"coeffs", co}};
}
Json cycvec(const std::vector<Cyclotomic>& v) {
  Json a = Json::array();
  for (auto& x : v) a.push_back(cyc(x));
  return a;
}
Json ivec(const std::vector<int>& v) { return Json(v); }
Json real(const Real& x) { return to_string(x); }
Json complex(const Complex& z) { return Json::array({real(z.re), real(z.im)}); }
Json cmatrix(const CMatrix& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(complex(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}
Json qmatrix(const QMatrix& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(q(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}
// residuals are inexact diagnostics; a short decimal string keeps output stable across builds
Json diag(const Real& x) {
  std::ostringstream os;
  os.precision(6);
  os << std::scientific << x.convert_to<double>();
  return os.str();
}
Json affine(const AffineWeyl& aw, const AffineElement& g) {
  return Json{{"translation", ivec(g.t)}, {"w", ivec(aw.datum().word(g.w))}, {"word", ivec(aw.reduced_word(g))},
              {"length", aw.length(g)}};
}

Json qpoly(const QPoly& p) {
  Json a = Json::array();
  for (auto& [e, c] : p.terms()) a.push_back(Json::array({ivec(e), q(c)}));
  return a;
}
Json cpoly(const CycPoly& p) {
  Json a = Json::array();
  for (auto& [e, c] : p.terms()) a.push_back(Json::array({ivec(e), cyc(c)}));
  return a;
}

Json daha_element(const RootDatum& R, const DahaElement& x) {
  Json a = Json::array();
  for (auto& [g, p] : x.terms) a.push_back(Json::array({ivec(g.t), ivec(R.word(g.w)), qpoly(p)}));
  return a;
}
Json aha_element(const RootDatum& R, const AhaElement& x) {
  Json a = Json::array();
  for (auto& [w, p] : x.terms) a.push_back(Json::array({Json::array(), ivec(R.word(w)), cpoly(p)}));
  return a;
}

Rational json_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ConfigError("expected a rational string");
  return parse_rational(j.get<std::string>());
}
Cyclotomic json_cyc(const Json& j) {
  if (j.is_object()) {
    std::vector<Rational> co;
    for (auto& x : j.at("coeffs")) co.push_back(json_rational(x));
    return Cyclotomic(j.at("order").get<int>(), co);
  }
  return Cyclotomic(json_rational(j));
}
std::vector<int> json_ints(const Json& j, size_t len, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + ": expected an integer array");
  std::vector<int> v;
  for (auto& x : j) {
    if (!x.is_number_integer()) throw ConfigError(std::string(what) + ": expected integers");
    v.push_back(x.get<int>());
  }
  if (len != size_t(-1) && v.size() != len) throw ConfigError(std::string(what) + ": wrong length");
  return v;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

void check_word(const std::vector<int>& w, int max, const char* what) {
  for (int i : w)
    if (i < 0 || i > max) throw ConfigError(std::string(what) + ": letter " + std::to_string(i) + " out of range");
}

DahaElement parse_daha(const Daha& H, const Json& j) {
  const auto& R = H.datum();
  int r = R.rank();
  DahaElement e = H.zero();
  try {
    if (!j.is_array()) throw ConfigError("element: expected an array of triples");
    for (auto& t : j) {
      if (!t.is_array() || t.size() != 3) throw ConfigError("element: expected [beta, word, coefficients]");
      auto beta = json_ints(t[0], r, "beta");
      auto word = json_ints(t[1], size_t(-1), "word");
      check_word(word, r - 1, "word");
      XiPoly p(r);
      for (auto& m : t[2]) p.add_term(json_ints(m.at(0), r, "exponent"), json_rational(m.at(1)));
      e.add(AffineElement{beta, R.from_word(word)}, p);
    }
  } catch (const Json::exception& ex) {
    throw ConfigError(std::string("element: ") + ex.what());
  }
  return e;
}

AhaElement parse_aha(const Aha& A, const Json& j) {
  const auto& R = A.datum();
  int r = R.rank();
  AhaElement e = A.zero();
  try {
    if (!j.is_array()) throw ConfigError("element: expected an array of triples");
    for (auto& t : j) {
      if (!t.is_array() || t.size() != 3) throw ConfigError("element: expected [[], word, coefficients]");
      auto word = json_ints(t[1], size_t(-1), "word");
      check_word(word, r - 1, "word");
      YLaurent p(r);
      for (auto& m : t[2]) p.add_term(json_ints(m.at(0), r, "exponent"), json_cyc(m.at(1)));
      e.add(R.from_word(word), p);
    }
  } catch (const Json::exception& ex) {
    throw ConfigError(std::string("element: ") + ex.what());
  }
  return e;
}

// ---- common setup
struct Setup {
  RootDatumPtr R;
  Rational h;
  Weight lambda0;
};

Setup setup(const Config& c, const std::string& cmd) {
  const auto& keys = keys_for(cmd);
  auto uses = [&](const char* k) { return std::find(keys.begin(), keys.end(), k) != keys.end(); };
  Setup s;
  s.R = uses("cartan") && c.has("cartan") ? RootDatum::from_cartan_file(c.str("cartan"))
                                          : RootDatum::from_name(c.str("type"));
  int n = s.R->coxeter_number();
  Rational k = uses("k") ? c.rational("k") : Rational(1);
  s.h = uses("h") && c.has("h") ? c.rational("h") : Rational(k / n);
  s.h.canonicalize();
  if (s.h <= 0) throw ConfigError("h must be positive");
  if (uses("lambda") && c.has("lambda")) {
    s.lambda0 = c.weight("lambda", s.R->rank());
  } else {
    s.lambda0 = s.R->rho();
    for (auto& x : s.lambda0) x /= n;
  }
  return s;
}

Weight mu_or_lambda(const Config& c, const Setup& s) { return c.has("mu") ? c.weight("mu", s.R->rank()) : s.lambda0; }

int window(const Config& c) {
  long L = c.integer("window");
  if (L < 0 || L > 60) throw ConfigError("window must be in [0, 60]");
  return static_cast<int>(L);
}

int jets(const Config& c) {
  long n = c.integer("n");
  if (n < 1 || n > 6) throw ConfigError("n must be in [1, 6]");
  return static_cast<int>(n);
}

unsigned parabolic_J(const Config& c, const RootDatum& R) {
  unsigned all = (1u << R.rank()) - 1;
  if (!c.has("J")) return all;
  long J = c.integer("J");
  if (J < 0 || static_cast<unsigned long>(J) > all) throw ConfigError("J must be a bitmask over the simple roots");
  return static_cast<unsigned>(J);
}

MonodromyOptions mono_options(const Config& c) {
  MonodromyOptions o;
  long bits = c.integer("bits");
  if (bits < 64 || bits > 4096) throw ConfigError("bits must be in [64, 4096]");
  o.bits = static_cast<int>(bits);
  o.tol = c.real("tol");
  if (!(o.tol > 0 && o.tol < 1)) throw ConfigError("tol must be in (0, 1)");
  o.c = c.real("c");
  if (!(o.c > 0)) throw ConfigError("c must be positive");
  long jobs = c.integer("jobs");
  if (jobs < 1 || jobs > 64) throw ConfigError("jobs must be in [1, 64]");
  o.jobs = static_cast<int>(jobs);
  return o;
}

Json datum_json(const RootDatum& R) {
  Json pos = Json::array(), co = Json::array();
  for (int k = 0; k < R.num_positive(); ++k) {
    pos.push_back(ivec(R.root(k)));
    co.push_back(ivec(R.coroot(k)));
  }
  return Json{{"name", R.name()},
              {"rank", R.rank()},
              {"cartan", R.cartan()},
              {"positive_roots", pos},
              {"positive_coroots", co},
              {"highest_root", ivec(R.root(R.highest_root()))},
              {"rho", weight(R.rho())},
              {"weyl_order", R.order()},
              {"coxeter_number", R.coxeter_number()}};
}

Json params_json(const Setup& s) { return Json{{"h", q(s.h)}, {"lambda0", weight(s.lambda0)}}; }

std::mt19937_64 rng(const Config& c) { return std::mt19937_64(static_cast<unsigned long>(c.integer("seed"))); }

QPoly rand_qpoly(std::mt19937_64& g, int r, int deg, int terms, bool laurent) {
  QPoly p(r);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3), e(laurent ? -deg : 0, deg);
  for (int t = 0; t < terms; ++t) {
    Exponent x(r);
    int left = deg;
    for (auto& v : x) {
      v = e(g);
      if (!laurent) {
        v = std::min(v, left);
        left -= v;
      }
    }
    Rational c(num(g), den(g));
    c.canonicalize();
    p.add_term(x, c);
  }
  return p;
}

DahaElement rand_daha(const Daha& H, std::mt19937_64& g) {
  DahaElement e = H.zero();
  for (int t = 0; t < 2; ++t) {
    std::vector<int> word;
    int L = static_cast<int>(g() % 3);
    for (int k = 0; k < L; ++k) word.push_back(static_cast<int>(g() % (H.rank() + 1)));
    e.add(H.affine_weyl().from_word(word), rand_qpoly(g, H.rank(), 1, 2, false));
  }
  return e;
}

// ---- subcommands
Json cmd_roots(const Config& c) {
  auto R = c.has("cartan") ? RootDatum::from_cartan_file(c.str("cartan")) : RootDatum::from_name(c.str("type"));
  return datum_json(*R);
}

Json cmd_orbit(const Config& c) {
  Setup s = setup(c, "orbit");
  AffineWeyl aw(s.R);
  Json pts = Json::array();
  for (auto& op : aw.orbit(s.lambda0, window(c))) {
    Json g = affine(aw, op.g);
    g["point"] = weight(op.point);
    pts.push_back(g);
  }
  return Json{{"lambda0", weight(s.lambda0)}, {"count", pts.size()}, {"points", pts}};
}

Json cmd_stabilizer(const Config& c) {
  Setup s = setup(c, "stabilizer");
  AffineWeyl aw(s.R);
  auto cmp = aw.compare_stabilizers(s.lambda0);
  auto st = aw.stabilizer(s.lambda0, window(c));
  auto words = [&](const std::vector<int>& ws) {
    Json a = Json::array();
    for (int w : ws) a.push_back(ivec(s.R->word(w)));
    return a;
  };
  Json el = Json::array(), cert = Json::array(), hat = Json::array();
  for (auto& g : st.elements) el.push_back(affine(aw, g));
  for (auto& g : st.certificate) cert.push_back(affine(aw, g));
  for (auto& g : cmp.What_lambda) hat.push_back(affine(aw, g));
  return Json{{"lambda0", weight(s.lambda0)},
              {"W_lambda", words(cmp.W_lambda)},
              {"W_exp_lambda", words(cmp.W_exp)},
              {"affine_stabilizer", hat},
              {"W_lambda_eq_W_exp", cmp.lhs},
              {"W_lambda_eq_affine", cmp.rhs},
              {"equivalence_holds", cmp.holds()},
              {"search", Json{{"elements", el}, {"certificate", cert}, {"complete", st.complete}}}};
}

Json cmd_alcoves(const Config& c) {
  auto R = c.has("cartan") ? RootDatum::from_cartan_file(c.str("cartan")) : RootDatum::from_name(c.str("type"));
  AffineWeyl aw(R);
  Json a = Json::array();
  for (auto& [g, l] : aw.ball(window(c))) {
    Json j = affine(aw, g);
    j["sample"] = weight(alcove_of(aw, g).sample);
    a.push_back(j);
  }
  return Json{{"count", a.size()}, {"alcoves", a}};
}

Json domain_json(const AffineWeyl& aw, const AffineDomains& d, int k, const Weight& l0, int L) {
  const auto& D = d.domains[k];
  Json cells = Json::array();
  for (int ci : D.cells) {
    const auto& cell = d.arr.cells()[ci];
    cells.push_back(Json{{"signs", ivec(cell.signs)}, {"point", weight(cell.point)}});
  }
  Json w = Json::array();
  for (auto& x : domain_character(aw, d, k, l0, L)) w.push_back(weight(x));
  Json j{{"domain_id", k}, {"label", D.label}, {"bounded", D.bounded}, {"cells", cells}, {"weights", w}};
  if (d.family) j["J"] = d.J_of_domain[k];
  return j;
}

Json cmd_domains(const Config& c) {
  Setup s = setup(c, "domains");
  AffineWeyl aw(s.R);
  auto d = affine_domains(aw, HeckeParams::uniform(s.R, s.h), s.lambda0);
  Json hs = Json::array();
  for (auto& h : d.arr.hyperplanes()) hs.push_back(Json{{"coroot", ivec(s.R->coroot(h.k))}, {"r", q(h.r)}});
  Json doms = Json::array();
  for (size_t k = 0; k < d.domains.size(); ++k) doms.push_back(domain_json(aw, d, static_cast<int>(k), s.lambda0, window(c)));
  Json out{{"params", params_json(s)},
           {"hyperplanes", hs},
           {"cells", d.arr.cells().size()},
           {"count", d.domains.size()},
           {"bounded_count", d.bounded_count()},
           {"family", d.family}};
  if (d.family) out["family_nk"] = Json::array({d.n, d.k});
  out["domains"] = doms;
  return out;
}

Json cmd_simple_char(const Config& c) {
  Setup s = setup(c, "simple-char");
  AffineWeyl aw(s.R);
  auto d = affine_domains(aw, HeckeParams::uniform(s.R, s.h), s.lambda0);
  std::string sel = c.str("domain");
  int k = -1;
  if (sel == "bounded") {
    if (d.bounded_count() != 1) throw ScopeError("no unique bounded domain");
    for (size_t i = 0; i < d.domains.size(); ++i)
      if (d.domains[i].bounded) k = static_cast<int>(i);
  } else if (sel.rfind("J=", 0) == 0) {
    if (!d.family) throw ScopeError("J-labels exist only for lambda0 = rho/n, h = k/n");
    try {
      k = domain_with_label(d, static_cast<unsigned>(std::stoul(sel.substr(2))));
    } catch (const std::invalid_argument&) {
      throw ConfigError("domain: bad J label '" + sel + "'");
    }
    if (k < 0) throw ScopeError("no domain carries the label " + sel);
  } else {
    k = static_cast<int>(c.integer("domain"));
    if (k < 0 || k >= static_cast<int>(d.domains.size())) throw ConfigError("domain id out of range");
  }
  Json j = domain_json(aw, d, k, s.lambda0, window(c));
  Json fund = Json::array();
  for (auto& w : domain_character(aw, d, k, s.lambda0, window(c))) fund.push_back(weight(s.R->to_fundamental(w)));
  j["weights_fundamental"] = fund;
  return Json{{"params", params_json(s)}, {"domain", j}};
}

Json cmd_char(const Config& c) {
  Setup s = setup(c, "char");
  auto H = std::make_shared<const Daha>(AffineWeyl(s.R), HeckeParams::uniform(s.R, s.h));
  Weight mu = mu_or_lambda(c, s);
  auto P = standard_module(H, mu, window(c), jets(c));
  Json w = Json::array();
  for (auto& [nu, m] : character(P)) w.push_back(Json{{"weight", weight(nu)}, {"multiplicity", m}});
  return Json{{"params", params_json(s)}, {"mu", weight(mu)}, {"dim", P.dim()}, {"character", w}};
}

Json cmd_intertwiner(const Config& c) {
  Setup s = setup(c, "intertwiner");
  auto H = std::make_shared<const Daha>(AffineWeyl(s.R), HeckeParams::uniform(s.R, s.h));
  Weight mu = mu_or_lambda(c, s);
  auto word = c.ints("word");
  if (word.empty()) throw ConfigError("word: need at least one letter");
  check_word(word, s.R->rank(), "word");
  auto inv = invertibility(*H, word, mu);
  int L = window(c);
  auto B = intertwiner_weight_blocks(H, word, mu, L);
  Rational det = determinant(B.M);
  bool exact_inverse = false;
  if (!is_zero(det)) exact_inverse = inverse(B.M) * B.M == QMatrix::identity(B.M.rows());
  Json ws = Json::array();
  for (auto& w : B.weights) ws.push_back(weight(w));
  Json crit{{"invertible", inv.invertible}};
  if (!inv.invertible)
    crit.update(Json{{"position", inv.position}, {"letter", inv.letter}, {"value", q(inv.value)}});
  return Json{{"params", params_json(s)},
              {"mu", weight(mu)},
              {"word", ivec(word)},
              {"criterion", crit},
              {"weight_blocks", Json{{"weights", ws},
                                     {"matrix", qmatrix(B.M)},
                                     {"determinant", q(det)},
                                     {"target_window", B.target_window},
                                     {"exact_inverse_verified", exact_inverse}}},
              {"agrees", inv.invertible == !is_zero(det)}};
}

Json cmd_daha_mul(const Config& c) {
  Setup s = setup(c, "daha-mul");
  if (!c.has("a") || !c.has("b")) throw ConfigError("daha-mul needs a and b");
  Daha H(AffineWeyl(s.R), HeckeParams::uniform(s.R, s.h));
  auto a = parse_daha(H, read_json(c.str("a")));
  auto b = parse_daha(H, read_json(c.str("b")));
  auto p = H.mul(a, b);
  auto g = rng(c);
  bool pbw = H.mul(a, b, &g) == p;
  if (!pbw) throw CheckFailed("product depends on the reduced words");
  return Json{{"params", params_json(s)}, {"product", daha_element(*s.R, p)}, {"pbw_alternative_words_agree", pbw}};
}

Json cmd_aha_mul(const Config& c) {
  Setup s = setup(c, "aha-mul");
  if (!c.has("a") || !c.has("b")) throw ConfigError("aha-mul needs a and b");
  Aha A(AhaParams::from_hecke(HeckeParams::uniform(s.R, s.h)));
  auto a = parse_aha(A, read_json(c.str("a")));
  auto b = parse_aha(A, read_json(c.str("b")));
  auto p = A.mul(a, b);
  auto g = rng(c);
  bool pbw = A.mul(a, b, &g) == p;
  if (!pbw) throw CheckFailed("product depends on the reduced words");
  return Json{{"params", Json{{"h", q(s.h)}, {"zeta", cyc(A.params().zeta_simple(0))}}},
              {"product", aha_element(*s.R, p)},
              {"pbw_alternative_words_agree", pbw}};
}

Json cmd_dunkl(const Config& c) {
  Setup s = setup(c, "dunkl-check");
  Daha H(AffineWeyl(s.R), HeckeParams::uniform(s.R, s.h));
  long deg = c.integer("degree"), samples = c.integer("samples");
  if (deg < 0 || deg > 6) throw ConfigError("degree must be in [0, 6]");
  if (samples < 1 || samples > 50) throw ConfigError("samples must be in [1, 50]");
  auto g = rng(c);
  std::vector<DahaElement> sample;
  for (long t = 0; t < samples; ++t) sample.push_back(rand_daha(H, g));
  int r = s.R->rank();
  auto rep = polynomial_rep_check(H, sample, static_cast<int>(std::min(deg, 2L)));
  DunklRep D(H);
  int comm = 0, bad = 0;
  std::vector<int> e(r, -static_cast<int>(deg));
  while (true) {
    int tot = 0;
    for (int x : e) tot += std::abs(x);
    if (tot <= deg) {
      XLaurent f = XLaurent::monomial(e);
      for (int j = 0; j < r; ++j)
        for (int k = j + 1; k < r; ++k) {
          ++comm;
          if (D.D(j, D.D(k, f)) != D.D(k, D.D(j, f))) ++bad;
        }
    }
    int j = 0;
    while (j < r && e[j] == deg) e[j++] = -static_cast<int>(deg);
    if (j == r) break;
    ++e[j];
  }
  Json out{{"params", params_json(s)},
           {"products", rep.products},
           {"test_vectors", rep.test_vectors},
           {"mismatches", rep.mismatches},
           {"zero_actions", rep.zero_actions},
           {"commutator_checks", comm},
           {"commutator_failures", bad}};
  if (!rep.ok() || bad) throw CheckFailed("Dunkl representation check failed: " + out.dump());
  return out;
}

Json monodromy_json(const MonodromyRep& m) {
  Json Y = Json::array(), T = Json::array(), y = Json::array(), t = Json::array();
  for (auto& x : m.Y) Y.push_back(cmatrix(x));
  for (auto& x : m.T) T.push_back(cmatrix(x));
  for (auto& x : m.y) y.push_back(cmatrix(x));
  for (auto& x : m.t) t.push_back(cmatrix(x));
  return Json{{"dim", m.d},
              {"bits", m.bits},
              {"series_order", m.order},
              {"Y", Y},
              {"T", T},
              {"y", y},
              {"t", t},
              {"residuals",
               Json{{"quadratic", diag(m.quadratic_residual)},
                    {"braid", diag(m.braid_residual)},
                    {"commute", diag(m.commute_residual)},
                    {"cross", diag(m.cross_residual)},
                    {"series", diag(m.series_residual)},
                    {"series_tail", diag(m.series_tail)},
                    {"transport", diag(m.transport_error)},
                    {"loop_check", diag(m.loop_check)}}}};
}

Json cmd_monodromy(const Config& c) {
  Setup s = setup(c, "monodromy");
  auto opt = mono_options(c);
  Daha H(AffineWeyl(s.R), HeckeParams::uniform(s.R, s.h));
  int n = jets(c);
  DegFiber fiber;
  Json input;
  if (c.has("orbit")) {
    unsigned J = parabolic_J(c, *s.R);
    auto orbit = c.weights("orbit", s.R->rank());
    fiber = degenerate_parabolic(H, J, orbit, n);
    Json o = Json::array();
    for (auto& w : orbit) o.push_back(weight(w));
    input = Json{{"module", "parabolic"}, {"J", J}, {"orbit", o}, {"n", n}};
  } else {
    Weight mu = mu_or_lambda(c, s);
    fiber = degenerate_standard(H, mu, n);
    input = Json{{"module", "standard"}, {"mu", weight(mu)}, {"n", n}};
  }
  auto P = kz_problem(H, fiber, opt.bits);
  auto m = monodromy(P, opt);
  Json out{{"params", params_json(s)}, {"fiber", input}, {"monodromy", monodromy_json(m)}};
  {
    PrecisionScope ps(opt.bits);
    out["spectrum_residual"] = diag(spectrum_residual(m, fiber.weights));
  }
  if (s.R->rank() == 1 && !c.has("orbit") && n == 1) {
    Rational gamma = 2 * mu_or_lambda(c, s)[0];
    try {
      auto [a, b] = rank_one_constants(m, gamma, s.h);
      auto [ao, bo] = rank_one_oracle(gamma, s.h);
      PrecisionScope ps(opt.bits);
      out["rank_one"] = Json{{"gamma", q(gamma)},
                             {"a", complex(a)},
                             {"b", complex(b)},
                             {"oracle_a", complex(ao)},
                             {"oracle_b", complex(bo)},
                             {"difference", diag(std::max(abs(a - ao), abs(b - bo)))}};
    } catch (const ScopeError& e) {
      out["rank_one"] = Json{{"gamma", q(gamma)}, {"skipped", e.what()}};
    }
  }
  if (!m.relations_ok(opt.tol)) throw ToleranceError("affine Hecke relations not met to tol: " + out["monodromy"]["residuals"].dump());
  return out;
}

Json identification_json(const IdentificationCheck& ch) {
  Json cands = Json::array();
  for (size_t k = 0; k < ch.candidate_w.size(); ++k) {
    const auto& h = ch.id.hom[k];
    cands.push_back(Json{{"w", ch.candidate_w[k]},
                         {"point", cycvec(ch.points[k])},
                         {"hom_dim", h.hom_dim},
                         {"isomorphic", h.isomorphic},
                         {"conditioning", diag(h.conditioning)},
                         {"cyclic_eigenvector", bool(ch.id.cyclic[k])}});
  }
  return Json{{"mu0", weight(ch.mu0)},
              {"domain", ch.domain},
              {"predicted_w", ivec(ch.predicted_w)},
              {"candidates", cands},
              {"matched_w", ivec(ch.matched_w)},
              {"consistent", ch.consistent},
              {"residuals", Json{{"quadratic", diag(ch.rep.quadratic_residual)},
                                 {"braid", diag(ch.rep.braid_residual)},
                                 {"commute", diag(ch.rep.commute_residual)},
                                 {"cross", diag(ch.rep.cross_residual)}}}};
}

Json cmd_thm41(const Config& c) {
  Setup s = setup(c, "verify-thm41");
  auto opt = mono_options(c);
  AffineWeyl aw(s.R);
  auto word = c.ints("what");
  check_word(word, s.R->rank(), "what");
  int depth = c.has("depth") ? static_cast<int>(c.integer("depth")) : (s.R->rank() == 1 ? 12 : 18);
  if (depth < 1 || depth > 40) throw ConfigError("depth must be in [1, 40]");
  auto what = aw.from_word(word);
  auto ch = verify_identification(s.R, s.h, s.lambda0, what, opt, depth);
  Json out{{"params", params_json(s)}, {"what", affine(aw, what)}, {"identification", identification_json(ch)}};
  if (ch.matched_w.size() != 1 || !ch.consistent)
    throw CheckFailed("identification failed or disagrees with the arrangement prediction: " +
                      out["identification"].dump());
  return out;
}

Json cmd_parabolic(const Config& c) {
  Setup s = setup(c, "verify-parabolic");
  auto opt = mono_options(c);
  unsigned J = parabolic_J(c, *s.R);
  std::vector<Weight> orbit = c.has("orbit") ? c.weights("orbit", s.R->rank()) : parabolic_orbit(*s.R, J, s.lambda0);
  int n = jets(c);
  auto ch = verify_parabolic(s.R, s.h, J, orbit, n, opt);
  Json o = Json::array();
  for (auto& w : orbit) o.push_back(weight(w));
  Json out{{"params", params_json(s)},
           {"J", J},
           {"orbit", o},
           {"n", n},
           {"dim", ch.dim},
           {"hom_dim", ch.hom.hom_dim},
           {"isomorphic", ch.hom.isomorphic},
           {"conditioning", diag(ch.hom.conditioning)},
           {"t_residual", diag(ch.t_residual)},
           {"spectrum_residual", diag(ch.spectrum_residual)},
           {"deep", ch.deep},
           {"ok", ch.ok}};
  if (!ch.ok) throw CheckFailed("parabolic identification failed: " + out.dump());
  return out;
}

Json cmd_schur(const Config& c) {
  Setup s = setup(c, "schur-example");
  if (s.R->rank() != 1) throw ScopeError("schur-example is the rank-one example");
  int n = jets(c);
  Aha A(AhaParams::from_hecke(HeckeParams::uniform(s.R, s.h)));
  auto ell = exp_point(s.lambda0);
  auto ell_s = act_torus(*s.R, s.R->simple(0), ell);
  std::vector<AhaFiber> ms{aha_standard(A, ell, n), aha_standard(A, ell_s, n),
                           aha_parabolic(A, 1u, {ell, ell_s}, n)};
  Json parts = Json::array();
  for (auto& m : ms) {
    auto E = endomorphism_algebra(m);
    parts.push_back(Json{{"module", m.label}, {"dim", m.dim()}, {"end_dim", E.dim}, {"radical_dim", E.radical_dim},
                         {"simples", E.center_dim}});
  }
  auto E = endomorphism_algebra(ms);
  return Json{{"params", Json{{"h", q(s.h)}, {"ell0", cycvec(ell)}, {"zeta", cyc(A.params().zeta_simple(0))}}},
              {"n", n},
              {"summands", parts},
              {"end_dim", E.dim},
              {"radical_dim", E.radical_dim},
              {"simples", E.center_dim}};
}

// ---- self tests, one suite per module
using Checks = std::vector<std::pair<std::string, bool>>;

Checks selftest_root_data() {
  Checks out;
  for (int r = 1; r <= 4; ++r) {
    auto R = RootDatum::type_A(r);
    long fact = 1;
    for (int i = 2; i <= r + 1; ++i) fact *= i;
    out.push_back({"A" + std::to_string(r) + " Weyl order", R->order() == fact});
    out.push_back({"A" + std::to_string(r) + " positive roots", R->num_positive() == r * (r + 1) / 2});
    bool inv = true;
    for (int w = 0; w < R->order(); ++w) inv = inv && R->mul(w, R->inv(w)) == 0 && R->from_word(R->word(w)) == w;
    out.push_back({"A" + std::to_string(r) + " inverses and words", inv});
  }
  return out;
}

Checks selftest_affine_weyl() {
  Checks out;
  auto R = RootDatum::type_A(2);
  AffineWeyl aw(R);
  bool ok = true;
  for (auto& [g, l] : aw.ball(4)) {
    ok = ok && aw.from_word(aw.reduced_word(g)) == g && static_cast<int>(aw.reduced_word(g).size()) == l;
    ok = ok && aw.mul(g, aw.inverse(g)) == aw.identity();
  }
  out.push_back({"A2 reduced words and inverses on the ball of radius 4", ok});
  auto cmp = AffineWeyl(RootDatum::type_A(1)).compare_stabilizers(Weight{Rational(1, 4)});
  out.push_back({"A1 stabilizer comparison at 1/4", cmp.holds()});
  return out;
}

Checks selftest_arrangements() {
  Checks out;
  for (int r = 1; r <= 2; ++r) {
    auto R = RootDatum::type_A(r);
    AffineWeyl aw(R);
    int n = R->coxeter_number();
    Weight l = R->rho();
    for (auto& x : l) x /= n;
    auto d = affine_domains(aw, HeckeParams::uniform(R, Rational(1, n)), l);
    out.push_back({"A" + std::to_string(r) + " census", static_cast<int>(d.domains.size()) == (1 << (r + 1)) - 1 &&
                                                            d.bounded_count() == 1});
    std::multiset<Weight> sum, all;
    for (size_t k = 0; k < d.domains.size(); ++k)
      for (auto& w : domain_character(aw, d, static_cast<int>(k), l, 6)) sum.insert(w);
    for (auto& [g, len] : aw.ball(6)) all.insert(aw.act(g, l));
    out.push_back({"A" + std::to_string(r) + " simple characters sum to the standard one", sum == all});
  }
  return out;
}

Checks selftest_modules() {
  Checks out;
  auto R = RootDatum::type_A(1);
  Daha H(AffineWeyl(R), HeckeParams::uniform(R, Rational(1, 2)));
  out.push_back({"A1 standard fiber relations", check_relations(H, degenerate_standard(H, Weight{Rational(1, 4)}, 2)) == 0});
  out.push_back({"A1 finite-dimensional simple", check_relations(H, a1_simple_lambda0()) == 0});
  Aha A(AhaParams::uniform(R, Cyclotomic(-1)));
  auto P = aha_parabolic(A, 1u, {{Cyclotomic::zeta(4)}, {-Cyclotomic::zeta(4)}}, 2);
  out.push_back({"A1 parabolic AHA fiber relations", check_relations(A, P) == 0});
  auto Hs = std::make_shared<const Daha>(AffineWeyl(R), HeckeParams::uniform(R, Rational(1, 2)));
  auto B = intertwiner_weight_blocks(Hs, {0}, Weight{Rational(3, 4)}, 4);
  out.push_back({"intertwiner invertible off the walls", !is_zero(determinant(B.M))});
  return out;
}

Checks selftest_hecke() {
  Checks out;
  std::mt19937_64 g(11);
  auto R = RootDatum::type_A(2);
  Daha H(AffineWeyl(R), HeckeParams::uniform(R, Rational(1, 3)));
  bool ok = true;
  for (int t = 0; t < 10; ++t) {
    auto a = rand_daha(H, g), b = rand_daha(H, g), c = rand_daha(H, g);
    ok = ok && H.mul(H.mul(a, b), c) == H.mul(a, H.mul(b, c)) && H.mul(a, b, &g) == H.mul(a, b);
  }
  out.push_back({"A2 degenerate algebra associativity and PBW", ok});
  std::vector<DahaElement> sample{rand_daha(H, g), rand_daha(H, g)};
  out.push_back({"A2 polynomial representation", polynomial_rep_check(H, sample, 1).ok()});
  Aha A(AhaParams::uniform(R, Cyclotomic::zeta(3)));
  auto t1 = A.t_simple(0);
  out.push_back({"quadratic relation", A.mul(t1, t1) == t1.scaled(Cyclotomic::zeta(3) - Cyclotomic(1)) +
                                                           A.scalar(Cyclotomic::zeta(3))});
  return out;
}

Checks selftest_kz() {
  Checks out;
  {
    PrecisionScope ps(256);
    auto F = frobenius_series(scalar_problem(Rational(1, 3)), 10);
    out.push_back({"scalar Frobenius series", F.residual < Real(1e-60)});
  }
  auto R = RootDatum::type_A(1);
  Daha H(AffineWeyl(R), HeckeParams::uniform(R, Rational(1, 2)));
  auto m = monodromy(kz_problem(H, degenerate_standard(H, Weight{Rational(-3, 4)}, 1)));
  auto [a, b] = rank_one_constants(m, Rational(-3, 2), Rational(1, 2));
  auto [ao, bo] = rank_one_oracle(Rational(-3, 2), Rational(1, 2));
  PrecisionScope ps(256);
  out.push_back({"rank-one monodromy against the Gamma formula", abs(a - ao) < Real(1e-8) && abs(b - bo) < Real(1e-8)});
  out.push_back({"monodromy relations", m.relations_ok(1e-8)});
  return out;
}

const std::map<std::string, std::function<Checks()>> kSelftests{
    {"root_data", selftest_root_data}, {"affine_weyl", selftest_affine_weyl}, {"arrangements", selftest_arrangements},
    {"modules", selftest_modules},     {"hecke", selftest_hecke},             {"kz", selftest_kz},
};

const std::map<std::string, std::function<Json(const Config&)>> kCommands{
    {"roots", cmd_roots},
    {"orbit", cmd_orbit},
    {"stabilizer", cmd_stabilizer},
    {"alcoves", cmd_alcoves},
    {"domains", cmd_domains},
    {"char", cmd_char},
    {"simple-char", cmd_simple_char},
    {"daha-mul", cmd_daha_mul},
    {"aha-mul", cmd_aha_mul},
    {"dunkl-check", cmd_dunkl},
    {"intertwiner", cmd_intertwiner},
    {"monodromy", cmd_monodromy},
    {"verify-thm41", cmd_thm41},
    {"verify-parabolic", cmd_parabolic},
    {"schur-example", cmd_schur},
};

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"roots",       "orbit",         "stabilizer",  "alcoves",
                                              "domains",     "char",          "simple-char", "daha-mul",
                                              "aha-mul",     "dunkl-check",   "intertwiner", "monodromy",
                                              "verify-thm41", "verify-parabolic", "schur-example"};
  return names;
}

const std::vector<std::string>& keys_for(const std::string& cmd) {
  auto it = kCommandKeys.find(cmd);
  if (it == kCommandKeys.end()) throw ConfigError("unknown subcommand '" + cmd + "'");
  return it->second;
}

bool is_key(const std::string& key) {
  return std::any_of(kKeys.begin(), kKeys.end(), [&](const KeySpec& k) { return k.name == key; });
}

const KeySpec& key_spec(const std::string& key) {
  for (auto& k : kKeys)
    if (k.name == key) return k;
  throw ConfigError("unknown key '" + key + "'");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(no) + ": expected 'key = value'");
    std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (!is_key(k)) throw ConfigError(path + ":" + std::to_string(no) + ": unknown key '" + k + "'");
    out[k] = v;
  }
  return out;
}

Outcome run(const std::string& cmd, const std::map<std::string, std::string>& values, bool selftest) {
  Outcome o;
  o.doc = Json{{"schema", "dahakz-cli/1"}, {"command", cmd}, {"status", "ok"}};
  std::string module = kModule.count(cmd) ? kModule.at(cmd) : "cli";
  auto fail = [&](int code, const char* status, const std::string& msg) {
    o.exit_code = code;
    o.doc["status"] = status;
    o.doc["error"] = Json{{"module", module}, {"message", msg}};
  };
  try {
    Config c(cmd, values);
    for (auto& [k, v] : values)
      if (!is_key(k)) throw ConfigError("unknown key '" + k + "'");
    o.doc["config"] = c.echo();
    if (selftest) {
      Json checks = Json::array();
      bool all = true;
      for (auto& [name, ok] : kSelftests.at(module)()) {
        checks.push_back(Json{{"name", name}, {"passed", ok}});
        all = all && ok;
      }
      o.doc["selftest"] = Json{{"module", module}, {"checks", checks}, {"passed", all}};
      o.doc["status"] = all ? "ok" : "check_failed";
      o.exit_code = all ? 0 : 4;
      return o;
    }
    o.doc["result"] = kCommands.at(cmd)(c);
  } catch (const ConfigError& e) {
    fail(2, "config_error", e.what());
  } catch (const ScopeError& e) {
    fail(3, "scope_error", e.what());
  } catch (const ResonanceError& e) {
    fail(3, "scope_error", std::string("resonance: ") + e.what());
  } catch (const ToleranceError& e) {
    fail(4, "tolerance_failure", e.what());
  } catch (const CheckFailed& e) {
    fail(4, "check_failed", e.what());
  } catch (const std::exception& e) {
    fail(1, "internal_error", e.what());
  }
  return o;
}

}  // namespace dahakz::cli
