#pragma once

#include <random>

#include "dahakz/poly.hpp"
#include "dahakz/root_data.hpp"

namespace testhelp {

using namespace dahakz;

inline Rational rand_q(std::mt19937_64& g, int lo = -3, int hi = 3, int den = 3) {
  std::uniform_int_distribution<int> n(lo, hi), d(1, den);
  Rational q(n(g), d(g));
  q.canonicalize();
  return q;
}

// random polynomial with nonnegative exponents, total degree <= deg
inline QPoly rand_poly(std::mt19937_64& g, int r, int deg, int terms) {
  QPoly p(r);
  std::uniform_int_distribution<int> e(0, deg);
  for (int t = 0; t < terms; ++t) {
    Exponent x(r, 0);
    int left = e(g);
    for (int j = 0; j < r && left > 0; ++j) {
      std::uniform_int_distribution<int> k(0, left);
      x[j] = k(g);
      left -= x[j];
    }
    p.add_term(x, rand_q(g));
  }
  return p;
}

// random Laurent polynomial with exponents in [-span, span]
inline QPoly rand_laurent(std::mt19937_64& g, int r, int span, int terms) {
  QPoly p(r);
  std::uniform_int_distribution<int> e(-span, span);
  for (int t = 0; t < terms; ++t) {
    Exponent x(r);
    for (auto& v : x) v = e(g);
    p.add_term(x, rand_q(g));
  }
  return p;
}

inline Weight W(std::initializer_list<Rational> xs) { return Weight(xs); }

}  // namespace testhelp
