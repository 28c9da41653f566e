#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "campana/orbifold.hpp"

namespace campana {

enum class SolubilityStatus { Empty, Witness, Unknown };
const char* to_string(SolubilityStatus s);

struct SolubilityVerdict {
  SolubilityStatus status = SolubilityStatus::Unknown;
  /// Residue exponent K of the search (Empty and search-produced Witness verdicts).
  unsigned depth = 0;
  std::optional<ProjectivePoint> witness;
  /// Which argument produced the verdict, e.g. "intersection" or "feasible-class".
  std::string reason;
};

/// Constructs a local Campana point at p when one of the classical sufficient
/// conditions holds: fewer than n + 1 components, linearly independent reductions,
/// or a point of D_i(F_p) off every other component (available once p >= n; when two
/// reductions coincide a point of P^n(F_p) off every component is used instead).
/// Returns Unknown when none applies.
SolubilityVerdict sufficient_witness(const HyperplaneOrbifold& orbifold, const Integer& p);

/// Residue arithmetic of an arrangement modulo p^k, shared by the class searches.
class ResidueArrangement {
 public:
  ResidueArrangement(const HyperplaneOrbifold& orbifold, std::uint64_t p, unsigned k);

  std::uint64_t prime() const { return p_; }
  unsigned depth() const { return k_; }
  std::uint64_t modulus() const { return modulus_; }
  std::size_t coordinate_count() const { return n_ + 1; }
  std::size_t component_count() const { return coeffs_.size(); }

  /// f_i(x) mod p^level, with p^level dividing the modulus.
  std::uint64_t form_value(std::size_t i, const std::vector<std::uint64_t>& x, std::uint64_t level_modulus) const;
  /// min(v_p(y), level) for a residue y mod p^level.
  unsigned truncated_valuation(std::uint64_t y, unsigned level) const;
  /// Level-wise feasibility: every truncated valuation is 0 or at least min(m_i, level).
  /// Sound: the reduction of a Campana Z_p-point is always feasible.
  bool feasible(const std::vector<std::uint64_t>& x, unsigned level) const;
  bool feasible(const std::vector<std::uint64_t>& x) const { return feasible(x, k_); }

  /// Canonical representative of the class of x in P^n(Z/p^k): the first unit
  /// coordinate scaled to 1. Returns nullopt if x is not primitive mod p.
  std::optional<std::vector<std::uint64_t>> canonical_class(const std::vector<std::uint64_t>& x) const;
  /// Visits every class of P^n(Z/p^k) once, in canonical form.
  template <typename Visitor>
  void for_each_class(Visitor&& visit) const;

 private:
  std::size_t n_;
  std::uint64_t p_;
  unsigned k_;
  std::uint64_t modulus_;
  std::vector<std::vector<std::uint64_t>> coeffs_;  // reduced mod p^k
  std::vector<long> multiplicities_;                // -1 encodes infinity
};

/// Searches the classes of P^n(Z/p^K) with a digit-by-digit lifting tree, pruning
/// classes whose truncated valuations rule out any Campana lift. With K >= max m_i a
/// feasible class consists entirely of Campana points, so the result is Empty(K) or a
/// Witness. Throws std::invalid_argument if K < max m_i or a multiplicity is infinite.
SolubilityVerdict emptiness_search(const HyperplaneOrbifold& orbifold, const Integer& p, unsigned depth);

/// Summary of the 2-adic conic enumeration.
struct ConicReport {
  bool holds = true;
  std::uint64_t solutions = 0;
  std::optional<std::vector<std::uint64_t>> counterexample;
};

/// Enumerates every primitive solution of x^2 + y^2 = 4 z^2 mod 2^K and checks
/// min(v(x), v(y)) = v(z) + 1 and v(x^2 + y^2) = 2 with truncated valuations.
/// Requires K >= 4.
ConicReport conic_remark_report(unsigned depth);
bool conic_remark_check(unsigned depth);

// ---------------------------------------------------------------------------

template <typename Visitor>
void ResidueArrangement::for_each_class(Visitor&& visit) const {
  const std::size_t size = n_ + 1;
  std::vector<std::uint64_t> x(size, 0);
  for (std::size_t lead = 0; lead < size; ++lead) {
    // coordinates before `lead` are divisible by p, x_lead = 1, the rest arbitrary
    std::fill(x.begin(), x.end(), 0);
    x[lead] = 1;
    const std::uint64_t before_step = p_;
    while (true) {
      visit(static_cast<const std::vector<std::uint64_t>&>(x));
      std::size_t i = 0;
      for (; i < size; ++i) {
        if (i == lead) continue;
        const std::uint64_t step = i < lead ? before_step : 1;
        x[i] += step;
        if (x[i] < modulus_) break;
        x[i] = 0;
      }
      if (i == size) break;
    }
  }
}

}  // namespace campana
