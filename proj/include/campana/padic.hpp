#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace campana {

using Integer = mpz_class;
using Rational = mpq_class;
using PrimeSet = std::set<Integer>;

/// p-adic valuation of a rational number; v_p(0) is represented as infinity.
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(long value) : value_(value) {}

  static constexpr Valuation infinity() {
    Valuation v;
    v.infinite_ = true;
    return v;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Throws std::domain_error for the infinite valuation.
  long value() const {
    if (infinite_) throw std::domain_error("valuation is infinite");
    return value_;
  }

  friend constexpr Valuation operator+(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }

  friend constexpr bool operator==(Valuation a, Valuation b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(Valuation a, long b) { return a.is_finite() && a.value_ == b; }
  friend constexpr std::strong_ordering operator<=>(Valuation a, long b) {
    if (a.infinite_) return std::strong_ordering::greater;
    return a.value_ <=> b;
  }

  std::string to_string() const { return infinite_ ? std::string("inf") : std::to_string(value_); }
  friend std::ostream& operator<<(std::ostream& os, Valuation v) { return os << v.to_string(); }

 private:
  long value_ = 0;
  bool infinite_ = false;
};

// ---------------------------------------------------------------------------
// Primality and valuations

/// Probabilistic primality (GMP Miller-Rabin, 30 rounds). Negative inputs are never prime.
bool is_prime(const Integer& n);

/// Throws std::invalid_argument unless p is a prime.
void require_prime(const Integer& p);

/// Exact p-adic valuation of an integer. Rejects non-prime p.
Valuation val(const Integer& x, const Integer& p);
/// Exact p-adic valuation of a rational, computed on numerator and denominator.
Valuation val(const Rational& x, const Integer& p);

/// Valuation of a nonzero integer, without the primality check. Used on hot paths
/// where p is already known to be prime.
long valuation_nonzero(const Integer& x, const Integer& p);

/// Removes every factor p from x and returns the exponent removed.
long remove_factor(Integer& x, const Integer& p);

// ---------------------------------------------------------------------------
// Primitive representatives

/// Primitive integer representative of a projective vector: gcd 1, first nonzero
/// coordinate positive. Throws std::invalid_argument on the zero vector.
std::vector<Integer> normalize_primitive(std::span<const Integer> coords);
std::vector<Integer> normalize_primitive(std::span<const Rational> coords);

/// gcd of all entries (nonnegative); 0 for an all-zero input.
Integer content(std::span<const Integer> coords);

// ---------------------------------------------------------------------------
// Congruences

/// x = residue (mod prime^modulus_exponent).
class ResidueTarget {
 public:
  ResidueTarget(Integer prime, unsigned modulus_exponent, Integer residue);

  const Integer& prime() const { return prime_; }
  unsigned modulus_exponent() const { return exponent_; }
  const Integer& residue() const { return residue_; }
  const Integer& modulus() const { return modulus_; }

 private:
  Integer prime_;
  unsigned exponent_;
  Integer residue_;
  Integer modulus_;
};

/// Raised when a congruence system has no solution.
class CrtError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smallest nonnegative solution of a system with pairwise coprime moduli, together
/// with the combined modulus.
struct CrtSolution {
  Integer value;
  Integer modulus;
};

CrtSolution crt(std::span<const Integer> residues, std::span<const Integer> moduli);

/// Solves the congruences, then steers the solution so that for every a in `avoid`,
/// the primes of gcd(x, a) lie in allowed_support or divide one of the moduli. Every
/// offending prime q gets the extra congruence x = 1 (mod q). Returns the smallest
/// nonnegative solution of the combined system.
Integer crt_steered(std::span<const ResidueTarget> congruences, std::span<const Integer> avoid,
                    const PrimeSet& allowed_support);

/// Legendre symbol (a/p) for an odd prime p. p = 2 is rejected.
int quadratic_character(const Integer& a, const Integer& p);

/// a^-1 mod m; throws std::domain_error when a is not invertible.
Integer inverse_mod(const Integer& a, const Integer& m);
Integer power_mod(const Integer& base, const Integer& exponent, const Integer& m);
/// Least nonnegative residue.
Integer mod(const Integer& a, const Integer& m);
Integer pow(const Integer& base, unsigned long exponent);

// ---------------------------------------------------------------------------
// Factorization

struct PrimePower {
  Integer prime;
  unsigned long exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};
using Factorization = std::vector<PrimePower>;

/// Factorization of |n| with primes ascending. Trial division to 10^6, then Brent's
/// variant of Pollard rho on the cofactor. Throws std::invalid_argument for n = 0.
Factorization factor(const Integer& n);

/// Distinct primes of |n| (n nonzero).
std::vector<Integer> prime_support(const Integer& n);

/// Primes up to `limit` by sieve.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

/// Whether n >= 1 is m-full: every prime dividing n divides it at least m times.
bool is_m_full(std::uint64_t n, unsigned m);

/// Parses a decimal integer; throws std::invalid_argument on malformed text.
Integer parse_integer(const std::string& text);

}  // namespace campana
