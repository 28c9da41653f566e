#include "campana/padic.hpp"

#include <algorithm>

namespace campana {

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

void require_prime(const Integer& p) {
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + p.get_str());
}

long remove_factor(Integer& x, const Integer& p) {
  if (x == 0) throw std::invalid_argument("remove_factor: zero input");
  if (p == 2) {
    mp_bitcnt_t k = mpz_scan1(x.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), k);
    return static_cast<long>(k);
  }
  if (!mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) return 0;
  return static_cast<long>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

long valuation_nonzero(const Integer& x, const Integer& p) {
  if (p == 2) return static_cast<long>(mpz_scan1(x.get_mpz_t(), 0));
  if (!mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) return 0;
  Integer y = x;
  if (mpz_fits_ulong_p(p.get_mpz_t())) {
    const unsigned long q = mpz_get_ui(p.get_mpz_t());
    long k = 0;
    for (; k < 16 && mpz_divisible_ui_p(y.get_mpz_t(), q); ++k) mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), q);
    if (k < 16) return k;
    return k + remove_factor(y, p);
  }
  return remove_factor(y, p);
}

Valuation val(const Integer& x, const Integer& p) {
  require_prime(p);
  if (x == 0) return Valuation::infinity();
  return Valuation(valuation_nonzero(x, p));
}

Valuation val(const Rational& x, const Integer& p) {
  require_prime(p);
  if (x == 0) return Valuation::infinity();
  return Valuation(valuation_nonzero(x.get_num(), p) - valuation_nonzero(x.get_den(), p));
}

Integer content(std::span<const Integer> coords) {
  Integer g = 0;
  for (const auto& c : coords) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

std::vector<Integer> normalize_primitive(std::span<const Integer> coords) {
  Integer g = content(coords);
  if (g == 0) throw std::invalid_argument("normalize_primitive: all coordinates are zero");
  auto first = std::find_if(coords.begin(), coords.end(), [](const Integer& c) { return c != 0; });
  if (*first < 0) g = -g;
  std::vector<Integer> out;
  out.reserve(coords.size());
  for (const auto& c : coords) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<Integer> normalize_primitive(std::span<const Rational> coords) {
  Integer l = 1;
  for (const auto& c : coords) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> scaled;
  scaled.reserve(coords.size());
  for (const auto& c : coords) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    scaled.push_back(q * c.get_num());
  }
  return normalize_primitive(std::span<const Integer>(scaled));
}

ResidueTarget::ResidueTarget(Integer prime, unsigned modulus_exponent, Integer residue)
    : prime_(std::move(prime)), exponent_(modulus_exponent) {
  require_prime(prime_);
  if (exponent_ < 1) throw std::invalid_argument("ResidueTarget: exponent must be >= 1");
  modulus_ = pow(prime_, exponent_);
  if (residue < 0 || residue >= modulus_)
    throw std::invalid_argument("ResidueTarget: residue outside [0, p^N)");
  residue_ = std::move(residue);
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer pow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (m == 1) return 0;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("inverse_mod: " + a.get_str() + " is not invertible mod " + m.get_str());
  return r;
}

Integer power_mod(const Integer& base, const Integer& exponent, const Integer& m) {
  Integer r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), m.get_mpz_t());
  return r;
}

CrtSolution crt(std::span<const Integer> residues, std::span<const Integer> moduli) {
  if (residues.size() != moduli.size()) throw std::invalid_argument("crt: size mismatch");
  Integer x = 0, modulus = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const Integer& mi = moduli[i];
    if (mi < 1) throw std::invalid_argument("crt: moduli must be positive");
    Integer g;
    mpz_gcd(g.get_mpz_t(), modulus.get_mpz_t(), mi.get_mpz_t());
    if (g != 1) throw CrtError("crt: moduli " + modulus.get_str() + " and " + mi.get_str() + " are not coprime");
    // x + modulus * t = r_i (mod m_i)
    Integer t = mod((residues[i] - x) * inverse_mod(modulus, mi), mi);
    x += modulus * t;
    modulus *= mi;
  }
  return {mod(x, modulus), modulus};
}

Integer crt_steered(std::span<const ResidueTarget> congruences, std::span<const Integer> avoid,
                    const PrimeSet& allowed_support) {
  std::vector<Integer> residues, moduli;
  PrimeSet base_primes;
  for (const auto& c : congruences) {
    if (!base_primes.insert(c.prime()).second)
      throw CrtError("crt_steered: repeated modulus prime " + c.prime().get_str());
    residues.push_back(c.residue());
    moduli.push_back(c.modulus());
  }
  PrimeSet steering;
  for (const auto& a : avoid) {
    if (a == 0) throw std::invalid_argument("crt_steered: avoid elements must be nonzero");
    for (const auto& q : prime_support(a)) {
      if (!allowed_support.contains(q) && !base_primes.contains(q)) steering.insert(q);
    }
  }
  for (const auto& q : steering) {
    residues.emplace_back(1);
    moduli.push_back(q);
  }
  Integer x = crt(residues, moduli).value;

  for (std::size_t i = 0; i < congruences.size(); ++i) {
    if (mod(x - congruences[i].residue(), congruences[i].modulus()) != 0)
      throw CrtError("crt_steered: solution misses a congruence");
  }
  for (const auto& a : avoid) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), a.get_mpz_t());
    if (g == 0) continue;
    for (const auto& q : prime_support(g)) {
      if (!allowed_support.contains(q) && !base_primes.contains(q))
        throw CrtError("crt_steered: inconsistent steering at prime " + q.get_str());
    }
  }
  return x;
}

int quadratic_character(const Integer& a, const Integer& p) {
  if (p == 2) throw std::invalid_argument("quadratic_character: p must be odd");
  require_prime(p);
  return mpz_legendre(mod(a, p).get_mpz_t(), p.get_mpz_t());
}

Integer parse_integer(const std::string& text) {
  std::string t = text;
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  if (t.empty() || t == "-") throw std::invalid_argument("not an integer: '" + text + "'");
  for (std::size_t i = (t.front() == '-') ? 1 : 0; i < t.size(); ++i) {
    if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("not an integer: '" + text + "'");
  }
  return Integer(t, 10);
}

}  // namespace campana
