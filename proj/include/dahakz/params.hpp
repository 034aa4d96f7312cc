#pragma once

#include <vector>

#include "dahakz/root_data.hpp"

namespace dahakz {

// Parameters h_beta of the degenerate algebra, constant on W-orbits of roots.
struct HeckeParams {
  RootDatumPtr rd;
  std::vector<Rational> h;  // indexed by root orbit label

  static HeckeParams uniform(RootDatumPtr rd, const Rational& h);
  Rational h_root(int k) const { return h[rd->root_orbit(k)]; }
  Rational h_simple(int i) const { return h_root(rd->simple_root_index(i)); }
  // rho~ = 1/2 sum_{beta > 0} h_beta beta
  Weight rho_tilde() const;
};

// Parameters zeta_beta of the affine Hecke algebra (exact, in a cyclotomic field).
struct AhaParams {
  RootDatumPtr rd;
  std::vector<Cyclotomic> zeta;  // indexed by root orbit label

  static AhaParams uniform(RootDatumPtr rd, const Cyclotomic& z);
  // zeta_beta = e^{h_beta}
  static AhaParams from_hecke(const HeckeParams& p);
  Cyclotomic zeta_root(int k) const { return zeta[rd->root_orbit(k)]; }
  Cyclotomic zeta_simple(int i) const { return zeta_root(rd->simple_root_index(i)); }
};

}  // namespace dahakz
