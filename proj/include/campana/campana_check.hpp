#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "campana/orbifold.hpp"
#include "campana/padic.hpp"

namespace campana {

/// Outcome of the local test at one prime, with n_p(D_i, P) for every component.
struct LocalVerdict {
  bool is_campana = true;
  std::vector<Valuation> multiplicities;
};

/// Whether n = n_p(D, P) meets multiplicity m: m infinite needs n = 0, m finite needs
/// n = 0 or n >= m (n infinite counts as >= m).
bool meets_multiplicity(Valuation n, const Multiplicity& m);

/// n_p(D_f, P) = v_p(f(x)) on the primitive representative; infinite iff P lies on D_f.
Valuation intersection_multiplicity(const ProjectivePoint& point, const LinearForm& form, const Integer& p);

LocalVerdict is_local_campana(const ProjectivePoint& point, const HyperplaneOrbifold& orbifold, const Integer& p);

/// A claimed decomposition |value| = prod p^k * prod |b|^e. Explicit primes may carry
/// negative exponents (removed scale). Once verified, every prime outside the explicit
/// list divides `value` to order 0 or at least the smallest power exponent.
struct PowerCertificate {
  std::vector<std::pair<Integer, long>> explicit_primes;
  std::vector<std::pair<Integer, unsigned long>> powers;

  /// Exact check of the identity against `value`, plus primality of the explicit primes.
  bool verify(const Integer& value) const;
  /// Smallest exponent among the powers (0 when there are none).
  unsigned long min_power_exponent() const;
};

/// Per-prime record of a global check.
struct PrimeReport {
  Integer prime;
  LocalVerdict verdict;
};

struct GlobalVerdict {
  bool is_campana = true;
  /// Primes examined explicitly (all primes of the f_i values outside S).
  std::vector<PrimeReport> primes;
};

/// Campana O_S-point test: the local condition at every prime outside S. Only primes
/// dividing some nonzero f_i(x) can fail, so the check factors those values (a zero
/// value on a component with infinite multiplicity fails everywhere).
GlobalVerdict global_campana_verdict(const ProjectivePoint& point, const HyperplaneOrbifold& orbifold,
                                     const PrimeSet& excluded);
bool is_global_campana(const ProjectivePoint& point, const HyperplaneOrbifold& orbifold, const PrimeSet& excluded);

/// Same test for points whose form values are too large to factor: certificate i
/// decomposes f_i(x). Explicit primes are tested exactly; every other prime is covered
/// by the certificate's power exponent. Throws std::invalid_argument if a certificate
/// fails to verify.
GlobalVerdict global_campana_verdict(const ProjectivePoint& point, const HyperplaneOrbifold& orbifold,
                                     const PrimeSet& excluded, const std::vector<PowerCertificate>& certificates);
bool is_global_campana(const ProjectivePoint& point, const HyperplaneOrbifold& orbifold, const PrimeSet& excluded,
                       const std::vector<PowerCertificate>& certificates);

namespace detail {
/// The certified check with the identity test optional. Only for callers that built
/// f_i(x) from the certificate itself, where recomputing the powers repeats that work.
GlobalVerdict certified_verdict(const ProjectivePoint& point, const HyperplaneOrbifold& orbifold,
                                const PrimeSet& excluded, const std::vector<PowerCertificate>& certificates,
                                bool check_identity);
}  // namespace detail

// ---------------------------------------------------------------------------
// Quadratic point on P^1

enum class SplitType { Split, Inert, Ramified };
const char* to_string(SplitType t);

/// Factorization type of x^2 - a at p. Odd p: Ramified iff p | a, else by the Legendre
/// symbol. p = 2: a = 1 mod 8 Split, a = 5 mod 8 Inert, otherwise Ramified.
SplitType split_type(const Integer& a, const Integer& p);

/// v_p(x_0^2 - a x_1^2) on the primitive representative.
Valuation quad_multiplicity(const ProjectivePoint& point, const QuadraticOrbifoldP1& orbifold, const Integer& p);

/// Local test: the norm valuation q must lie in {0, inf} or reach m (Split, Inert) or
/// 2m (Ramified).
bool is_local_campana_quad(const ProjectivePoint& point, const QuadraticOrbifoldP1& orbifold, const Integer& p);

struct QuadPrimeReport {
  Integer prime;
  SplitType type;
  Valuation norm_valuation;
  bool is_campana;
};

struct QuadGlobalVerdict {
  bool is_campana = true;
  std::vector<QuadPrimeReport> primes;
};

QuadGlobalVerdict global_campana_verdict_quad(const ProjectivePoint& point, const QuadraticOrbifoldP1& orbifold,
                                              const PrimeSet& excluded);
/// Certified variant: `certificate` decomposes the norm of the primitive point.
/// Explicit and ramified primes are tested exactly, the rest need power exponent >= m.
QuadGlobalVerdict global_campana_verdict_quad(const ProjectivePoint& point, const QuadraticOrbifoldP1& orbifold,
                                              const PrimeSet& excluded, const PowerCertificate& certificate);
bool is_global_campana_quad(const ProjectivePoint& point, const QuadraticOrbifoldP1& orbifold,
                            const PrimeSet& excluded);

}  // namespace campana
