#include "doctest.h"

#include <random>

#include "campana/padic.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace campana;

TEST_CASE("val on integers and rationals") {
  CHECK(val(Integer(12), Integer(2)) == 2);
  CHECK(val(Integer(0), Integer(5)).is_infinite());
  CHECK(val(Rational(2, 9), Integer(3)) == -2);
  CHECK(val(Rational(0), Integer(3)).is_infinite());
  CHECK_THROWS_AS(val(Integer(12), Integer(4)), std::invalid_argument);
  CHECK(Valuation::infinity() + Valuation(3) == Valuation::infinity());
  CHECK(Valuation(3) < Valuation::infinity());
}

TEST_CASE("val is additive on random rationals") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> d(-100000, 100000);
  const long primes[] = {2, 3, 5, 7, 11, 13};
  for (int i = 0; i < 10000; ++i) {
    long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    if (a == 0 || b == 0 || c == 0 || e == 0) continue;
    const Rational x = fixtures::ratio(a, b), y = fixtures::ratio(c, e);
    const Integer p(primes[i % 6]);
    CHECK(val(Rational(x * y), p) == val(x, p) + val(y, p));
    CHECK(val(Integer(a), p).value() == oracle::val(a, primes[i % 6]));
  }
}

TEST_CASE("normalize_primitive") {
  auto norm = [](std::vector<long> v) {
    std::vector<Integer> c(v.begin(), v.end());
    std::vector<long> out;
    for (const auto& x : normalize_primitive(std::span<const Integer>(c))) out.push_back(x.get_si());
    return out;
  };
  CHECK(norm({4, 8, 12}) == std::vector<long>{1, 2, 3});
  CHECK(norm({0, -5}) == std::vector<long>{0, 1});
  CHECK(norm({6, 10, 15}) == std::vector<long>{6, 10, 15});
  CHECK_THROWS_AS(norm({0, 0}), std::invalid_argument);

  std::vector<Rational> r{Rational(1, 2), Rational(-1, 3)};
  const auto fromq = normalize_primitive(std::span<const Rational>(r));
  CHECK(fromq == std::vector<Integer>{3, -2});
}

TEST_CASE("normalize_primitive is idempotent and scale invariant") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> d(-50, 50);
  for (int i = 0; i < 2000; ++i) {
    std::vector<Rational> c(3);
    for (auto& x : c) x = d(rng);
    if (c[0] == 0 && c[1] == 0 && c[2] == 0) continue;
    long num = d(rng), den = d(rng);
    if (num == 0 || den == 0) continue;
    const Rational lambda = fixtures::ratio(num, den);
    std::vector<Rational> scaled;
    for (const auto& x : c) scaled.push_back(Rational(lambda * x));
    const auto a = normalize_primitive(std::span<const Rational>(c));
    const auto b = normalize_primitive(std::span<const Rational>(scaled));
    CHECK(a == b);
    CHECK(normalize_primitive(std::span<const Integer>(a)) == a);
  }
}

TEST_CASE("crt and crt_steered") {
  {
    std::vector<ResidueTarget> c{{2, 2, 1}, {3, 2, 2}};
    std::vector<Integer> avoid{7};
    const Integer x = crt_steered(c, avoid, {});
    CHECK(x == oracle::crt_scan({1, 2, 1}, {4, 9, 7}));
    CHECK(x == 29);
  }
  {
    std::vector<ResidueTarget> c{{5, 1, 3}};
    CHECK(crt_steered(c, {}, {}) == 3);
  }
  {
    std::vector<ResidueTarget> c{{2, 1, 1}, {3, 1, 1}};
    std::vector<Integer> avoid{25};
    CHECK(crt_steered(c, avoid, PrimeSet{5}) == 1);
  }
  std::vector<ResidueTarget> dup{{2, 1, 1}, {2, 2, 1}};
  CHECK_THROWS_AS(crt_steered(dup, {}, {}), CrtError);
  CHECK_THROWS_AS(ResidueTarget(2, 2, 4), std::invalid_argument);
}

TEST_CASE("crt_steered gcd condition on random systems") {
  std::mt19937_64 rng(3);
  const long primes[] = {2, 3, 5, 7};
  for (int i = 0; i < 300; ++i) {
    std::vector<ResidueTarget> c;
    for (long p : primes) {
      if (rng() % 2) continue;
      const unsigned e = 1 + rng() % 3;
      const long q = static_cast<long>(std::pow(p, e));
      c.emplace_back(p, e, static_cast<long>(rng() % q));
    }
    std::vector<Integer> avoid;
    for (int k = 0; k < 3; ++k) avoid.emplace_back(static_cast<unsigned long>(1 + rng() % 100000));
    const Integer x = crt_steered(c, avoid, {});
    for (const auto& t : c) CHECK(mod(x - t.residue(), t.modulus()) == 0);
    for (const auto& a : avoid) {
      Integer g;
      mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), a.get_mpz_t());
      for (const auto& [q, e] : oracle::factor(g.get_ui())) {
        bool in_base = false;
        for (const auto& t : c) in_base = in_base || t.prime() == q;
        CHECK(in_base);
      }
    }
  }
}

TEST_CASE("quadratic_character") {
  CHECK(quadratic_character(2, 7) == 1);
  CHECK(quadratic_character(2, 5) == -1);
  CHECK(quadratic_character(10, 5) == 0);
  CHECK_THROWS_AS(quadratic_character(3, 2), std::invalid_argument);
  for (long p : {3L, 5L, 7L, 11L, 101L, 997L})
    for (long a = -50; a <= 50; ++a) CHECK(quadratic_character(a, p) == oracle::legendre(a, p));
}

TEST_CASE("factor") {
  auto flat = [](const Factorization& f) {
    std::vector<std::pair<unsigned long, unsigned long>> out;
    for (const auto& pp : f) out.emplace_back(pp.prime.get_ui(), pp.exponent);
    return out;
  };
  using V = std::vector<std::pair<unsigned long, unsigned long>>;
  CHECK(flat(factor(360)) == V{{2, 3}, {3, 2}, {5, 1}});
  CHECK(factor(1).empty());
  CHECK(flat(factor(4672)) == V{{2, 6}, {73, 1}});
  CHECK(flat(factor(-12)) == V{{2, 2}, {3, 1}});
  CHECK_THROWS_AS(factor(0), std::invalid_argument);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    const unsigned long n = 1 + rng() % 10000000;
    const auto f = factor(n);
    Integer prod = 1;
    V got;
    for (const auto& pp : f) {
      CHECK(is_prime(pp.prime));
      prod *= pow(pp.prime, pp.exponent);
      got.emplace_back(pp.prime.get_ui(), pp.exponent);
    }
    CHECK(prod == n);
    V expected;
    for (const auto& [p, e] : oracle::factor(n)) expected.emplace_back(p, e);
    CHECK(got == expected);
  }
}

TEST_CASE("factor beyond trial division") {
  // products of two primes above the sieve limit
  const Integer p("1000000007"), q("998244353"), r("18446744073709551557");
  for (const Integer& n : {Integer(p * q), Integer(p * p * r), Integer(q * r)}) {
    Integer prod = 1;
    for (const auto& pp : factor(n)) {
      CHECK(is_prime(pp.prime));
      prod *= pow(pp.prime, pp.exponent);
    }
    CHECK(prod == n);
  }
}

TEST_CASE("is_m_full against the definition") {
  for (unsigned m = 2; m <= 4; ++m)
    for (std::uint64_t n = 1; n <= 20000; ++n) CHECK(is_m_full(n, m) == oracle::m_full(n, m));
  CHECK(is_m_full(1000003ull * 1000003ull, 2));
  CHECK_FALSE(is_m_full(1000003ull * 1000033ull, 2));
}

TEST_CASE("parse_integer") {
  CHECK(parse_integer("-42") == -42);
  CHECK(parse_integer("+7") == 7);
  CHECK_THROWS_AS(parse_integer("4x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_integer(""), std::invalid_argument);
}

TEST_CASE("val around the word-division cutoff") {
  const Integer big = pow(Integer(10), 5000) + 1;  // coprime to 3, 5, 1000003
  for (unsigned long k : {0UL, 1UL, 15UL, 16UL, 17UL, 40UL, 300UL})
    for (long p : {3L, 5L, 1000003L}) {
      const Integer x = big * pow(Integer(p), k) * (p == 3 ? 5 : 3);
      CHECK(val(x, Integer(p)) == Valuation(static_cast<long>(k)));
      CHECK(val(Integer(-x), Integer(p)) == Valuation(static_cast<long>(k)));
    }
  const Integer large_p("340282366920938463463374607431768211507");  // 2^128 + 51
  CHECK(val(Integer(pow(large_p, 20) * 7), large_p) == Valuation(20));
}
