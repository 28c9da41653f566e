#include "campana/campana_check.hpp"

#include <algorithm>

namespace campana {

bool meets_multiplicity(Valuation n, const Multiplicity& m) {
  if (n == 0) return true;
  if (m.is_infinite()) return false;
  return n >= m.value();
}

Valuation intersection_multiplicity(const ProjectivePoint& point, const LinearForm& form, const Integer& p) {
  return val(form.evaluate(point), p);
}

namespace {

LocalVerdict local_verdict_unchecked(const std::vector<Integer>& values, const HyperplaneOrbifold& orbifold,
                                     const Integer& p) {
  LocalVerdict verdict;
  for (std::size_t i = 0; i < values.size(); ++i) {
    Valuation n = values[i] == 0 ? Valuation::infinity() : Valuation(valuation_nonzero(values[i], p));
    verdict.multiplicities.push_back(n);
    if (!meets_multiplicity(n, orbifold.multiplicity(i))) verdict.is_campana = false;
  }
  return verdict;
}

std::vector<Integer> form_values(const ProjectivePoint& point, const HyperplaneOrbifold& orbifold) {
  if (point.dimension() != orbifold.dimension())
    throw std::invalid_argument("point and orbifold have different dimensions");
  std::vector<Integer> values;
  for (const auto& f : orbifold.forms()) values.push_back(f.evaluate(point));
  return values;
}

}  // namespace

LocalVerdict is_local_campana(const ProjectivePoint& point, const HyperplaneOrbifold& orbifold, const Integer& p) {
  require_prime(p);
  return local_verdict_unchecked(form_values(point, orbifold), orbifold, p);
}

bool PowerCertificate::verify(const Integer& value) const {
  if (value == 0) return false;
  Integer lhs = abs(value);
  Integer rhs = 1;
  for (const auto& [p, k] : explicit_primes) {
    if (!is_prime(p)) return false;
    if (k >= 0)
      rhs *= pow(p, static_cast<unsigned long>(k));
    else
      lhs *= pow(p, static_cast<unsigned long>(-k));
  }
  for (const auto& [b, e] : powers) {
    if (b == 0) return false;
    rhs *= pow(abs(b), e);
  }
  return lhs == rhs;
}

unsigned long PowerCertificate::min_power_exponent() const {
  unsigned long best = 0;
  for (const auto& [b, e] : powers) {
    if (abs(b) == 1) continue;
    best = best == 0 ? e : std::min(best, e);
  }
  return best;
}

GlobalVerdict global_campana_verdict(const ProjectivePoint& point, const HyperplaneOrbifold& orbifold,
                                     const PrimeSet& excluded) {
  const auto values = form_values(point, orbifold);
  GlobalVerdict out;
  PrimeSet candidates;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0) {
      // n_p = inf at every prime, fatal for an integral component
      if (orbifold.multiplicity(i).is_infinite()) out.is_campana = false;
      continue;
    }
    for (const auto& q : prime_support(values[i]))
      if (!excluded.contains(q)) candidates.insert(q);
  }
  for (const auto& q : candidates) {
    auto local = local_verdict_unchecked(values, orbifold, q);
    if (!local.is_campana) out.is_campana = false;
    out.primes.push_back({q, std::move(local)});
  }
  return out;
}

bool is_global_campana(const ProjectivePoint& point, const HyperplaneOrbifold& orbifold, const PrimeSet& excluded) {
  return global_campana_verdict(point, orbifold, excluded).is_campana;
}

GlobalVerdict global_campana_verdict(const ProjectivePoint& point, const HyperplaneOrbifold& orbifold,
                                     const PrimeSet& excluded, const std::vector<PowerCertificate>& certificates) {
  return detail::certified_verdict(point, orbifold, excluded, certificates, true);
}

GlobalVerdict detail::certified_verdict(const ProjectivePoint& point, const HyperplaneOrbifold& orbifold,
                                        const PrimeSet& excluded, const std::vector<PowerCertificate>& certificates,
                                        bool check_identity) {
  const auto values = form_values(point, orbifold);
  if (certificates.size() != values.size())
    throw std::invalid_argument("one certificate per orbifold component is required");
  GlobalVerdict out;
  PrimeSet candidates;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0) {  // n_p = inf everywhere
      if (orbifold.multiplicity(i).is_infinite()) out.is_campana = false;
      continue;
    }
    const auto& cert = certificates[i];
    if (check_identity && !cert.verify(values[i]))
      throw std::invalid_argument("certificate " + std::to_string(i) + " does not decompose f_i(x)");
    for (const auto& [q, k] : cert.explicit_primes)
      if (!excluded.contains(q)) candidates.insert(q);
    // Unlisted primes divide f_i(x) to order 0 or >= the smallest power exponent.
    const auto& m = orbifold.multiplicity(i);
    const unsigned long e = cert.min_power_exponent();
    if (e != 0 && (m.is_infinite() || static_cast<long>(e) < m.value())) out.is_campana = false;
  }
  for (const auto& q : candidates) {
    auto local = local_verdict_unchecked(values, orbifold, q);
    if (!local.is_campana) out.is_campana = false;
    out.primes.push_back({q, std::move(local)});
  }
  return out;
}

bool is_global_campana(const ProjectivePoint& point, const HyperplaneOrbifold& orbifold, const PrimeSet& excluded,
                       const std::vector<PowerCertificate>& certificates) {
  return global_campana_verdict(point, orbifold, excluded, certificates).is_campana;
}

const char* to_string(SplitType t) {
  switch (t) {
    case SplitType::Split:
      return "split";
    case SplitType::Inert:
      return "inert";
    case SplitType::Ramified:
      return "ramified";
  }
  return "?";
}

SplitType split_type(const Integer& a, const Integer& p) {
  require_prime(p);
  if (p == 2) {
    const Integer r = mod(a, 8);
    if (r == 1) return SplitType::Split;
    if (r == 5) return SplitType::Inert;
    return SplitType::Ramified;
  }
  if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) return SplitType::Ramified;
  return quadratic_character(a, p) == 1 ? SplitType::Split : SplitType::Inert;
}

namespace {

void require_p1(const ProjectivePoint& point) {
  if (point.dimension() != 1) throw std::invalid_argument("quadratic orbifold points live on P^1");
}

bool quad_meets(Valuation q, SplitType type, long m) {
  if (q == 0 || q.is_infinite()) return true;
  return q >= (type == SplitType::Ramified ? 2 * m : m);
}

}  // namespace

Valuation quad_multiplicity(const ProjectivePoint& point, const QuadraticOrbifoldP1& orbifold, const Integer& p) {
  require_p1(point);
  return val(orbifold.norm(point[0], point[1]), p);
}

bool is_local_campana_quad(const ProjectivePoint& point, const QuadraticOrbifoldP1& orbifold, const Integer& p) {
  return quad_meets(quad_multiplicity(point, orbifold, p), split_type(orbifold.a(), p), orbifold.m());
}

QuadGlobalVerdict global_campana_verdict_quad(const ProjectivePoint& point, const QuadraticOrbifoldP1& orbifold,
                                              const PrimeSet& excluded) {
  require_p1(point);
  const Integer norm = orbifold.norm(point[0], point[1]);
  QuadGlobalVerdict out;
  for (const auto& pp : factor(norm)) {
    if (excluded.contains(pp.prime)) continue;
    const SplitType type = split_type(orbifold.a(), pp.prime);
    const Valuation q(static_cast<long>(pp.exponent));
    const bool ok = quad_meets(q, type, orbifold.m());
    if (!ok) out.is_campana = false;
    out.primes.push_back({pp.prime, type, q, ok});
  }
  return out;
}

QuadGlobalVerdict global_campana_verdict_quad(const ProjectivePoint& point, const QuadraticOrbifoldP1& orbifold,
                                              const PrimeSet& excluded, const PowerCertificate& certificate) {
  require_p1(point);
  const Integer norm = orbifold.norm(point[0], point[1]);
  if (!certificate.verify(norm)) throw std::invalid_argument("certificate does not decompose the norm");
  PrimeSet exact;
  for (const auto& [q, k] : certificate.explicit_primes) exact.insert(q);
  for (const auto& q : prime_support(orbifold.a())) exact.insert(q);
  exact.insert(Integer(2));

  QuadGlobalVerdict out;
  for (const auto& q : exact) {
    if (excluded.contains(q)) continue;
    const SplitType type = split_type(orbifold.a(), q);
    const Valuation v(valuation_nonzero(norm, q));
    const bool ok = quad_meets(v, type, orbifold.m());
    if (!ok) out.is_campana = false;
    out.primes.push_back({q, type, v, ok});
  }
  // Remaining primes are unramified: order 0 or >= the certificate's power exponent.
  const unsigned long e = certificate.min_power_exponent();
  if (e != 0 && static_cast<long>(e) < orbifold.m()) out.is_campana = false;
  return out;
}

bool is_global_campana_quad(const ProjectivePoint& point, const QuadraticOrbifoldP1& orbifold,
                            const PrimeSet& excluded) {
  return global_campana_verdict_quad(point, orbifold, excluded).is_campana;
}

}  // namespace campana
