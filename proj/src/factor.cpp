#include <algorithm>
#include <map>
#include <random>

#include "campana/padic.hpp"

namespace campana {
namespace {

constexpr std::uint32_t kTrialLimit = 1'000'000;

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = primes_up_to(kTrialLimit);
  return primes;
}

// Brent's cycle-finding variant of Pollard rho. Returns a nontrivial factor of the
// odd composite n, or 0 if the iteration budget is spent without finding one.
Integer brent_rho(const Integer& n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Integer c = Integer(static_cast<unsigned long>(rng() % 1'000'000 + 1));
    Integer y = Integer(static_cast<unsigned long>(rng() % 1'000'000 + 2));
    Integer x, ys, g = 1, q = 1, tmp;
    constexpr unsigned long kBlock = 128;
    unsigned long r = 1;
    auto step = [&](Integer& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1 && r < (1ul << 26)) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(kBlock, r - k); ++i) {
          step(y);
          tmp = x - y;
          q = q * abs(tmp);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += kBlock;
      }
      r *= 2;
    }
    if (g == n) {
      // Block overshot; replay one step at a time.
      do {
        step(ys);
        tmp = x - ys;
        mpz_gcd(g.get_mpz_t(), tmp.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

void factor_cofactor(const Integer& n, std::map<Integer, unsigned long>& out, std::uint64_t seed) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  Integer root;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    std::map<Integer, unsigned long> sub;
    factor_cofactor(root, sub, seed + 1);
    for (auto& [p, e] : sub) out[p] += 2 * e;
    return;
  }
  Integer d = brent_rho(n, seed);
  if (d == 0) throw std::runtime_error("factor: Pollard rho failed on " + n.get_str());
  factor_cofactor(d, out, seed + 1);
  Integer rest = n / d;
  factor_cofactor(rest, out, seed + 2);
}

}  // namespace

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

Factorization factor(const Integer& n) {
  if (n == 0) throw std::invalid_argument("factor: zero has no factorization");
  Integer rest = abs(n);
  Factorization out;
  for (std::uint32_t p : trial_primes()) {
    if (rest == 1) break;
    if (Integer(p) * p > rest) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      unsigned long e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      }
      out.push_back({Integer(p), e});
    }
  }
  if (rest == 1) return out;
  std::map<Integer, unsigned long> large;
  if (rest <= Integer(kTrialLimit) * kTrialLimit) {
    large[rest] = 1;
  } else {
    factor_cofactor(rest, large, 0x5eed);
  }
  for (auto& [p, e] : large) out.push_back({p, e});
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return out;
}

std::vector<Integer> prime_support(const Integer& n) {
  std::vector<Integer> out;
  for (auto& pp : factor(n)) out.push_back(pp.prime);
  return out;
}

bool is_m_full(std::uint64_t n, unsigned m) {
  if (n == 0) return false;
  bool exhausted = true;
  for (std::uint32_t p : trial_primes()) {
    std::uint64_t pm = 1;
    bool fits = true;
    for (unsigned k = 0; k < m; ++k) {
      if (pm > n / p) {
        fits = false;
        break;
      }
      pm *= p;
    }
    if (!fits) {  // p^m > n: no remaining prime can appear m times
      exhausted = false;
      break;
    }
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e < m) return false;
  }
  if (n == 1 || !exhausted) return n == 1;
  for (const auto& pp : factor(Integer(static_cast<unsigned long>(n)))) {
    if (pp.exponent < m) return false;
  }
  return true;
}

}  // namespace campana
