#pragma once

#include <vector>

#include "campana/orbifold.hpp"

namespace fixtures {

/// The six hyperplanes of the non-solubility example on P^5, with
/// g0 = x2, g1 = x3, g2 = x4, g3 = x5, g4 = x2+x3+x4+x5, g5 = x2-x3+x5.
inline std::vector<std::vector<long>> ncp_coefficients() {
  return {
      {1, 2, 4, 0, 0, 0},  //
      {5, 4, 0, 4, 0, 0},  //
      {2, 1, 0, 0, 4, 0},  //
      {4, 5, 0, 0, 0, 4},  //
      {1, 1, 4, 4, 4, 4},  //
      {1, 3, 4, -4, 0, 4},
  };
}

inline campana::HyperplaneOrbifold ncp_orbifold(long m) {
  std::vector<campana::LinearForm> forms;
  std::vector<campana::Multiplicity> ms;
  for (const auto& row : ncp_coefficients()) {
    forms.emplace_back(std::vector<campana::Integer>(row.begin(), row.end()));
    ms.emplace_back(m);
  }
  return campana::HyperplaneOrbifold(5, std::move(forms), std::move(ms));
}

/// a/b in lowest terms with a positive denominator.
inline campana::Rational ratio(long a, long b) {
  campana::Rational r(a, b);
  r.canonicalize();
  return r;
}

inline campana::HyperplaneOrbifold standard(std::size_t n, std::vector<long> ms) {
  return campana::HyperplaneOrbifold::standard(n, std::span<const long>(ms));
}

}  // namespace fixtures
