#include "dahakz/params.hpp"

#include <algorithm>

namespace dahakz {

namespace {
int num_orbits(const RootDatum& R) {
  int m = 0;
  for (int k = 0; k < R.num_roots(); ++k) m = std::max(m, R.root_orbit(k) + 1);
  return m;
}
}  // namespace

HeckeParams HeckeParams::uniform(RootDatumPtr rd, const Rational& h) {
  int m = num_orbits(*rd);
  return {std::move(rd), std::vector<Rational>(m, h)};
}

Weight HeckeParams::rho_tilde() const {
  Weight out(rd->rank(), Rational(0));
  for (int k = 0; k < rd->num_positive(); ++k)
    for (int i = 0; i < rd->rank(); ++i) out[i] += h_root(k) * rd->root(k)[i] / 2;
  return out;
}

AhaParams AhaParams::uniform(RootDatumPtr rd, const Cyclotomic& z) {
  int m = num_orbits(*rd);
  return {std::move(rd), std::vector<Cyclotomic>(m, z)};
}

AhaParams AhaParams::from_hecke(const HeckeParams& p) {
  AhaParams a{p.rd, {}};
  for (auto& h : p.h) a.zeta.push_back(Cyclotomic::root_of_unity(h));
  return a;
}

}  // namespace dahakz
