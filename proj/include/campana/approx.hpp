#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "campana/campana_check.hpp"
#include "campana/orbifold.hpp"

namespace campana {

/// A target violates its own local Campana condition (or is otherwise unusable).
class InfeasibleTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The construction failed its own post-verification, or ran out of retries.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Local point y at the prime p, to be approximated to precision N. Coordinates are
/// nonzero integers with minimal p-adic valuation 0.
struct LocalTarget {
  Integer prime;
  std::vector<Integer> coords;
  unsigned precision = 1;
};

/// Per-prime line of a verification transcript.
struct TranscriptEntry {
  Integer prime;
  /// Valuations of the component values of the returned point at `prime`.
  std::vector<Valuation> valuations;
  /// Smallest margin v_p(x_i - lambda y_i) - required, over all coordinates (targets only).
  long approximation_margin = 0;
  bool is_target = false;
  bool is_campana = true;
};

struct HyperplaneSolution {
  ProjectivePoint point;
  unsigned long d = 1;
  std::vector<Integer> alphas;
  /// One certificate per component x_0..x_r.
  std::vector<PowerCertificate> certificates;
  std::vector<TranscriptEntry> transcript;
};

/// Campana weak approximation on the standard arrangement {x_0, ..., x_r}, r <= n, with
/// finite multiplicities: x_i = alpha_i^d prod_p p^{e_{p,i}}, alpha_i pairwise coprime
/// outside the target primes. The result is checked before it is returned.
HyperplaneSolution solve_cwa_hyperplanes(const HyperplaneOrbifold& orbifold, const std::vector<LocalTarget>& targets);

/// v_p(x_i - lambda y_i) >= e_i + N for all i, where lambda matches the normalizations.
/// With `add_valuation` false the bound is just N.
bool approximates(const ProjectivePoint& x, const LocalTarget& target, bool add_valuation = true);

struct QuadSolution {
  ProjectivePoint point;
  PrimeSet used_S;
  Integer v0;
  PowerCertificate certificate;
  unsigned attempts = 0;
  std::vector<TranscriptEntry> transcript;
};

/// Weak approximation for (P^1, (1 - 1/m){x_0^2 - a x_1^2 = 0}) through the norm-form
/// product x_0 + sqrt(a) x_1 = z^mu y^(mu+1), mu = 2m. Deterministic in `seed`.
QuadSolution solve_cwa_quad(const QuadraticOrbifoldP1& orbifold, const std::vector<LocalTarget>& targets,
                            std::uint64_t seed = 0);

/// (t0 + sqrt(a) t1)^e0 (t2 + sqrt(a) t3)^e1 expanded in Z[sqrt(a)].
std::pair<Integer, Integer> norm_form_product(const Integer& t0, const Integer& t1, const Integer& t2,
                                              const Integer& t3, const Integer& a, unsigned long e0,
                                              unsigned long e1);

// ---------------------------------------------------------------------------
// Diagonal hypersurfaces a_0 x_0^m + ... + a_{n+1} x_{n+1}^m = 0

class DiagonalForm {
 public:
  DiagonalForm(long degree, std::vector<Integer> coeffs);

  long degree() const { return m_; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  /// n, the dimension of the image space of rho.
  std::size_t dimension() const { return coeffs_.size() - 2; }
  Integer evaluate(std::span<const Integer> x) const;
  /// The terms a_i x_i^m.
  std::vector<Integer> terms(std::span<const Integer> x) const;

 private:
  long m_;
  std::vector<Integer> coeffs_;
};

/// [a_0 x_0^m, ..., a_n x_n^m] for a point of the hypersurface.
ProjectivePoint rho(const DiagonalForm& form, std::span<const Integer> x);
/// The same map for a point satisfying the equation modulo p^precision.
ProjectivePoint rho(const DiagonalForm& form, std::span<const Integer> x, const Integer& p, unsigned precision);

struct AdjustedPoint {
  std::vector<Integer> coords;
  /// The equation holds modulo p^precision, and precision exceeds every v_p(a_i x_i^m).
  unsigned precision = 0;
};

/// Moves a local point so that rho lands on a local Campana point of the standard
/// arrangement with all multiplicities m: terms off the minimal-valuation set E are
/// pushed deep into p, and one coordinate in E is Hensel-lifted to restore the equation.
AdjustedPoint adjust_diagonal_point(const DiagonalForm& form, std::span<const Integer> x, const Integer& p,
                                    unsigned precision);

/// Root of y^m = c mod p^precision lifted from y0 (y0^m = c mod p, p not dividing m y0).
Integer hensel_root(const Integer& c, unsigned long m, const Integer& y0, const Integer& p, unsigned precision);

}  // namespace campana
