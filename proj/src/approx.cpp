#include "campana/approx.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <random>

namespace campana {

namespace {

constexpr long kNoUnitCoordinate = std::numeric_limits<long>::min();

void validate_targets(const std::vector<LocalTarget>& targets, std::size_t size) {
  PrimeSet seen;
  for (const auto& t : targets) {
    require_prime(t.prime);
    if (!seen.insert(t.prime).second) throw std::invalid_argument("two targets at the prime " + t.prime.get_str());
    if (t.coords.size() != size)
      throw std::invalid_argument("target at " + t.prime.get_str() + " has " + std::to_string(t.coords.size()) +
                                  " coordinates, expected " + std::to_string(size));
    if (t.precision < 1) throw std::invalid_argument("target precision must be >= 1");
    long least = std::numeric_limits<long>::max();
    for (const auto& c : t.coords) {
      if (c == 0) throw std::invalid_argument("target coordinates must be nonzero");
      least = std::min(least, valuation_nonzero(c, t.prime));
    }
    if (least != 0)
      throw std::invalid_argument("target at " + t.prime.get_str() + " is not p-adically normalized");
  }
}

Integer truncated(const Integer& x, const Integer& modulus) { return mod(x, modulus); }

// v_p(x_i - lambda y_i) minus the required order, minimized over i; capped at `slack`.
long approximation_margin(const ProjectivePoint& x, const LocalTarget& target, bool add_valuation) {
  const Integer& p = target.prime;
  const std::size_t size = target.coords.size();
  if (x.size() != size) throw std::invalid_argument("approximates: dimension mismatch");
  std::vector<long> e(size);
  long top = 0;
  for (std::size_t i = 0; i < size; ++i) {
    e[i] = valuation_nonzero(target.coords[i], p);
    top = std::max(top, e[i]);
  }
  constexpr long slack = 16;
  const Integer modulus = pow(p, static_cast<unsigned long>(top + target.precision + slack));
  std::size_t j = size;
  for (std::size_t i = 0; i < size; ++i) {
    if (e[i] == 0 && mod(x[i], p) != 0) {
      j = i;
      break;
    }
  }
  if (j == size) return kNoUnitCoordinate;
  const Integer lambda = mod(truncated(x[j], modulus) * inverse_mod(target.coords[j], modulus), modulus);
  long margin = std::numeric_limits<long>::max();
  for (std::size_t i = 0; i < size; ++i) {
    const Integer diff = mod(truncated(x[i], modulus) - lambda * target.coords[i], modulus);
    const long required = static_cast<long>(target.precision) + (add_valuation ? e[i] : 0);
    const long reached = diff == 0 ? top + static_cast<long>(target.precision) + slack : valuation_nonzero(diff, p);
    margin = std::min(margin, reached - required);
  }
  return margin;
}

}  // namespace

bool approximates(const ProjectivePoint& x, const LocalTarget& target, bool add_valuation) {
  return approximation_margin(x, target, add_valuation) >= 0;
}

// ---------------------------------------------------------------------------

HyperplaneSolution solve_cwa_hyperplanes(const HyperplaneOrbifold& orbifold,
                                         const std::vector<LocalTarget>& targets) {
  const std::size_t n = orbifold.dimension();
  const std::size_t size = n + 1;
  if (!orbifold.is_standard()) throw std::invalid_argument("solve_cwa_hyperplanes: orbifold must be standard");
  if (orbifold.component_count() > n + 1)
    throw std::invalid_argument("solve_cwa_hyperplanes: at most n + 1 components");
  if (!orbifold.all_finite()) throw std::invalid_argument("solve_cwa_hyperplanes: multiplicities must be finite");
  validate_targets(targets, size);
  for (const auto& t : targets) {
    if (!is_local_campana(ProjectivePoint(t.coords), orbifold, t.prime).is_campana)
      throw InfeasibleTarget("target at " + t.prime.get_str() + " is not a local Campana point");
  }

  const long max_m = orbifold.max_finite_multiplicity();
  HyperplaneSolution out{ProjectivePoint(std::vector<Integer>(size, 1)), 1, {}, {}, {}};

  std::vector<unsigned> precision;
  for (const auto& t : targets) precision.push_back(t.precision);
  auto exponent = [&] {
    Integer d = 1;
    for (std::size_t t = 0; t < targets.size(); ++t)
      d *= pow(targets[t].prime, precision[t] - 1) * (targets[t].prime - 1);
    return Integer(d + 1);
  };
  Integer d = exponent();
  if (targets.empty()) {
    d = std::max<long>(max_m, 1);
  } else {
    const auto smallest = static_cast<std::size_t>(
        std::min_element(targets.begin(), targets.end(),
                         [](const LocalTarget& a, const LocalTarget& b) { return a.prime < b.prime; }) -
        targets.begin());
    while (d < max_m) {
      ++precision[smallest];
      d = exponent();
    }
  }
  if (!d.fits_ulong_p()) throw SolverError("solve_cwa_hyperplanes: exponent d does not fit a machine word");
  out.d = d.get_ui();

  // e_{p,i} and the unit parts u_{p,i}
  std::vector<std::vector<unsigned long>> e(targets.size(), std::vector<unsigned long>(size));
  std::vector<std::vector<Integer>> u(targets.size(), std::vector<Integer>(size));
  PrimeSet target_primes;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    target_primes.insert(targets[t].prime);
    for (std::size_t i = 0; i < size; ++i) {
      Integer y = targets[t].coords[i];
      e[t][i] = static_cast<unsigned long>(remove_factor(y, targets[t].prime));
      u[t][i] = y;
    }
  }

  std::vector<Integer> x(size);
  for (std::size_t i = 0; i < size; ++i) {
    Integer alpha = 1;
    if (!targets.empty()) {
      std::vector<ResidueTarget> congruences;
      for (std::size_t t = 0; t < targets.size(); ++t) {
        const Integer modulus = pow(targets[t].prime, precision[t]);
        Integer scale = 1;
        for (std::size_t w = 0; w < targets.size(); ++w)
          if (w != t) scale *= pow(targets[w].prime, e[w][i]);
        congruences.emplace_back(targets[t].prime, precision[t],
                                 mod(u[t][i] * inverse_mod(scale, modulus), modulus));
      }
      // steer away from primes shared with earlier alphas, outside the targets
      std::vector<Integer> avoid;
      alpha = crt_steered(congruences, avoid, target_primes);
      for (int round = 0;; ++round) {
        if (round == 64) throw SolverError("solve_cwa_hyperplanes: coprimality steering did not settle");
        bool clean = true;
        for (const auto& previous : out.alphas) {
          Integer g;
          mpz_gcd(g.get_mpz_t(), alpha.get_mpz_t(), previous.get_mpz_t());
          for (const auto& p : target_primes) remove_factor(g, p);
          if (g != 1) {
            avoid.push_back(g);
            clean = false;
          }
        }
        if (clean) break;
        alpha = crt_steered(congruences, avoid, target_primes);
      }
    }
    out.alphas.push_back(alpha);
    Integer xi;
    mpz_pow_ui(xi.get_mpz_t(), alpha.get_mpz_t(), out.d);
    for (std::size_t t = 0; t < targets.size(); ++t) xi *= pow(targets[t].prime, e[t][i]);
    x[i] = std::move(xi);
  }
  // gcd(x) = 1 follows from the alphas: at a target prime some coordinate has e = 0
  // and a unit alpha; any other common prime would divide every alpha.
  bool coprime = true;
  for (std::size_t t = 0; t < targets.size() && coprime; ++t) {
    bool unit_somewhere = false;
    for (std::size_t i = 0; i < size; ++i)
      unit_somewhere = unit_somewhere || (e[t][i] == 0 && mod(out.alphas[i], targets[t].prime) != 0);
    coprime = unit_somewhere;
  }
  Integer g = 0;
  for (const auto& alpha : out.alphas) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), alpha.get_mpz_t());
  for (const auto& p : target_primes) remove_factor(g, p);
  coprime = coprime && g == 1;
  out.point = coprime ? ProjectivePoint::from_coprime(std::move(x)) : ProjectivePoint(std::move(x));

  for (std::size_t i = 0; i < orbifold.component_count(); ++i) {
    PowerCertificate cert;
    for (std::size_t t = 0; t < targets.size(); ++t)
      cert.explicit_primes.emplace_back(targets[t].prime, static_cast<long>(e[t][i]));
    cert.powers.emplace_back(out.alphas[i], out.d);
    out.certificates.push_back(std::move(cert));
  }

  // post-verification; x_i is the certificate product by construction
  GlobalVerdict global;
  try {
    global = detail::certified_verdict(out.point, orbifold, PrimeSet{}, out.certificates, false);
  } catch (const std::invalid_argument& err) {
    throw SolverError(std::string("solve_cwa_hyperplanes: certificate rejected: ") + err.what());
  }
  if (!global.is_campana) throw SolverError("solve_cwa_hyperplanes: output is not a Campana point");
  for (const auto& t : targets) {
    TranscriptEntry entry;
    entry.prime = t.prime;
    entry.is_target = true;
    for (const auto& f : orbifold.forms()) entry.valuations.push_back(val(f.evaluate(out.point), t.prime));
    entry.approximation_margin = approximation_margin(out.point, t, true);
    entry.is_campana = is_local_campana(out.point, orbifold, t.prime).is_campana;
    if (entry.approximation_margin < 0)
      throw SolverError("solve_cwa_hyperplanes: approximation fails at " + t.prime.get_str());
    out.transcript.push_back(std::move(entry));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::pair<Integer, Integer> norm_form_product(const Integer& t0, const Integer& t1, const Integer& t2,
                                              const Integer& t3, const Integer& a, unsigned long e0,
                                              unsigned long e1) {
  using Element = std::pair<Integer, Integer>;
  auto mul = [&](const Element& u, const Element& v) -> Element {
    return {u.first * v.first + a * u.second * v.second, u.first * v.second + u.second * v.first};
  };
  auto power = [&](Element base, unsigned long e) {
    Element acc{1, 0};
    while (e) {
      if (e & 1) acc = mul(acc, base);
      e >>= 1;
      if (e) base = mul(base, base);
    }
    return acc;
  };
  return mul(power({t0, t1}, e0), power({t2, t3}, e1));
}

QuadSolution solve_cwa_quad(const QuadraticOrbifoldP1& orbifold, const std::vector<LocalTarget>& targets,
                            std::uint64_t seed) {
  validate_targets(targets, 2);
  const Integer& a = orbifold.a();
  for (const auto& t : targets) {
    if (!is_local_campana_quad(ProjectivePoint(t.coords), orbifold, t.prime))
      throw InfeasibleTarget("target at " + t.prime.get_str() + " is not a local Campana point");
  }
  const unsigned long mu = 2 * static_cast<unsigned long>(orbifold.m());

  Integer v0 = abs(a);
  for (const auto& t : targets) v0 = std::max(v0, t.prime);
  do {
    mpz_nextprime(v0.get_mpz_t(), v0.get_mpz_t());
  } while (v0 == 2 || quadratic_character(a, v0) != -1);

  // z' ~ conj(y) and y' ~ y at every target; both equal to 1 at v0
  std::vector<Integer> moduli;
  std::vector<std::array<Integer, 4>> residues;
  for (const auto& t : targets) {
    const Integer norm_y = orbifold.norm(t.coords[0], t.coords[1]);
    const auto s = static_cast<unsigned>(valuation_nonzero(norm_y, t.prime));
    const unsigned level = std::max(t.precision, s + 1) + static_cast<unsigned>(mu) * s;
    const Integer modulus = pow(t.prime, level);
    moduli.push_back(modulus);
    residues.push_back({mod(t.coords[0], modulus), mod(-t.coords[1], modulus), mod(t.coords[0], modulus),
                        mod(t.coords[1], modulus)});
  }
  moduli.push_back(v0);
  residues.push_back({1, 0, 1, 0});
  std::array<Integer, 4> base;
  Integer modulus;
  for (std::size_t k = 0; k < 4; ++k) {
    std::vector<Integer> column;
    for (const auto& r : residues) column.push_back(r[k]);
    auto sol = crt(column, moduli);
    base[k] = sol.value;
    modulus = sol.modulus;
  }

  PrimeSet exceptional;
  for (const auto& t : targets) exceptional.insert(t.prime);
  exceptional.insert(v0);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned long> shift(0, (1ul << 12) - 1);
  std::string last_failure = "no attempt made";
  constexpr unsigned kAttempts = 64;
  for (unsigned attempt = 1; attempt <= kAttempts; ++attempt) {
    std::array<Integer, 4> t = base;
    if (attempt > 1)
      for (auto& c : t) c += modulus * shift(rng);
    const auto [X0, X1] = norm_form_product(t[0], t[1], t[2], t[3], a, mu, mu + 1);
    Integer g;
    mpz_gcd(g.get_mpz_t(), X0.get_mpz_t(), X1.get_mpz_t());
    if (g == 0) {
      last_failure = "zero product";
      continue;
    }
    PowerCertificate cert;
    Integer stray = g;
    for (const auto& w : exceptional)
      cert.explicit_primes.emplace_back(w, -2 * remove_factor(stray, w));
    if (stray != 1) {
      last_failure = "common factor " + stray.get_str() + " outside the exceptional primes";
      continue;
    }
    cert.powers.emplace_back(orbifold.norm(t[0], t[1]), mu);
    cert.powers.emplace_back(orbifold.norm(t[2], t[3]), mu + 1);

    ProjectivePoint point({X0, X1});
    bool close = true;
    for (const auto& target : targets) close = close && approximates(point, target, false);
    if (!close) {
      last_failure = "approximation lost";
      continue;
    }
    const Integer norm = orbifold.norm(point[0], point[1]);
    if (valuation_nonzero(norm, v0) != 0) {
      last_failure = "norm divisible by v0";
      continue;
    }
    QuadGlobalVerdict verdict;
    try {
      verdict = global_campana_verdict_quad(point, orbifold, PrimeSet{}, cert);
    } catch (const std::invalid_argument& err) {
      last_failure = err.what();
      continue;
    }
    if (!verdict.is_campana) {
      last_failure = "global check failed";
      continue;
    }

    QuadSolution out{point, {}, v0, std::move(cert), attempt, {}};
    for (const auto& target : targets) out.used_S.insert(target.prime);
    for (const auto& w : exceptional) {
      TranscriptEntry entry;
      entry.prime = w;
      entry.valuations.push_back(Valuation(valuation_nonzero(norm, w)));
      entry.is_campana = is_local_campana_quad(point, orbifold, w);
      for (const auto& target : targets) {
        if (target.prime == w) {
          entry.is_target = true;
          entry.approximation_margin = approximation_margin(point, target, false);
        }
      }
      out.transcript.push_back(std::move(entry));
    }
    return out;
  }
  throw SolverError("solve_cwa_quad: no verified lift in " + std::to_string(kAttempts) +
                    " attempts (last: " + last_failure + ")");
}

// ---------------------------------------------------------------------------

DiagonalForm::DiagonalForm(long degree, std::vector<Integer> coeffs) : m_(degree), coeffs_(std::move(coeffs)) {
  if (m_ < 2) throw std::invalid_argument("DiagonalForm: degree must be >= 2");
  if (coeffs_.size() < 3) throw std::invalid_argument("DiagonalForm: need at least three coefficients");
  for (const auto& c : coeffs_)
    if (c == 0) throw std::invalid_argument("DiagonalForm: coefficients must be nonzero");
}

std::vector<Integer> DiagonalForm::terms(std::span<const Integer> x) const {
  if (x.size() != coeffs_.size()) throw std::invalid_argument("DiagonalForm: dimension mismatch");
  std::vector<Integer> out;
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(coeffs_[i] * pow(x[i], static_cast<unsigned long>(m_)));
  return out;
}

Integer DiagonalForm::evaluate(std::span<const Integer> x) const {
  Integer s = 0;
  for (const auto& t : terms(x)) s += t;
  return s;
}

namespace {

ProjectivePoint rho_unchecked(const DiagonalForm& form, std::span<const Integer> x) {
  auto t = form.terms(x);
  t.pop_back();
  if (std::all_of(t.begin(), t.end(), [](const Integer& c) { return c == 0; }))
    throw std::invalid_argument("rho: x_0 = ... = x_n = 0");
  return ProjectivePoint(std::move(t));
}

}  // namespace

ProjectivePoint rho(const DiagonalForm& form, std::span<const Integer> x) {
  if (form.evaluate(x) != 0) throw std::invalid_argument("rho: point is not on the hypersurface");
  return rho_unchecked(form, x);
}

ProjectivePoint rho(const DiagonalForm& form, std::span<const Integer> x, const Integer& p, unsigned precision) {
  require_prime(p);
  const Integer modulus = pow(p, precision);
  if (mod(form.evaluate(x), modulus) != 0) throw std::invalid_argument("rho: point is not on the hypersurface mod p^N");
  // The sum x_0-term + ... + x_n-term must see the last term's exact valuation.
  const Integer last = form.terms(x).back();
  if (last == 0 || valuation_nonzero(last, p) >= static_cast<long>(precision))
    throw std::invalid_argument("rho: precision does not determine the last component");
  return rho_unchecked(form, x);
}

Integer hensel_root(const Integer& c, unsigned long m, const Integer& y0, const Integer& p, unsigned precision) {
  require_prime(p);
  if (mod(Integer(static_cast<unsigned long>(m)), p) == 0 || mod(y0, p) == 0)
    throw std::invalid_argument("hensel_root: derivative is not a unit");
  if (mod(pow(y0, m) - c, p) != 0) throw std::invalid_argument("hensel_root: y0 is not a root mod p");
  const Integer modulus = pow(p, precision);
  Integer y = mod(y0, modulus);
  for (unsigned reached = 1; reached < precision; reached *= 2) {
    const Integer fy = power_mod(y, Integer(static_cast<unsigned long>(m)), modulus) - c;
    const Integer dy = Integer(static_cast<unsigned long>(m)) * power_mod(y, Integer(static_cast<unsigned long>(m - 1)), modulus);
    y = mod(y - fy * inverse_mod(dy, modulus), modulus);
  }
  if (mod(power_mod(y, Integer(static_cast<unsigned long>(m)), modulus) - c, modulus) != 0)
    throw std::logic_error("hensel_root: lift did not converge");
  return y;
}

AdjustedPoint adjust_diagonal_point(const DiagonalForm& form, std::span<const Integer> x, const Integer& p,
                                    unsigned precision) {
  require_prime(p);
  const long m = form.degree();
  if (mod(Integer(m), p) == 0) throw std::invalid_argument("adjust_diagonal_point: p divides the degree");
  if (precision < 1) throw std::invalid_argument("adjust_diagonal_point: precision must be >= 1");
  if (mod(form.evaluate(x), pow(p, precision)) != 0)
    throw std::invalid_argument("adjust_diagonal_point: point is not on the hypersurface mod p^N");
  const auto& a = form.coeffs();
  const std::size_t size = a.size();

  const auto terms = form.terms(x);
  std::vector<Valuation> e;
  for (const auto& t : terms) e.push_back(val(t, p));
  const Valuation least = *std::min_element(e.begin(), e.end());
  if (least.is_infinite() || least.value() >= static_cast<long>(precision))
    throw SolverError("adjust_diagonal_point: minimal valuation not visible at precision " +
                      std::to_string(precision));
  const long e_min = least.value();

  std::vector<Integer> y(x.begin(), x.end());
  std::vector<std::size_t> in_e;
  long deepest = e_min;
  for (std::size_t i = 0; i < size; ++i) {
    if (e[i] == least) {
      in_e.push_back(i);
      continue;
    }
    const long va = valuation_nonzero(a[i], p);
    y[i] = pow(p, static_cast<unsigned long>(e_min + va + 1));
    deepest = std::max(deepest, va + m * (e_min + va + 1));
  }
  if (in_e.size() < 2) throw SolverError("adjust_diagonal_point: minimal valuation attained once");

  const auto working = static_cast<unsigned>(std::max<long>(precision, deepest + 1));
  const std::size_t j = in_e.front();
  Integer rest = 0;
  for (std::size_t i = 0; i < size; ++i)
    if (i != j) rest += a[i] * pow(y[i], static_cast<unsigned long>(m));
  const Integer scale = pow(p, static_cast<unsigned long>(e_min));
  Integer b = terms[j];
  Integer c = -rest;
  mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), scale.get_mpz_t());
  if (!mpz_divisible_p(c.get_mpz_t(), scale.get_mpz_t()))
    throw std::logic_error("adjust_diagonal_point: completed sum not divisible by p^e");
  mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), scale.get_mpz_t());

  const unsigned lift_precision = working - static_cast<unsigned>(e_min);
  const Integer lift_modulus = pow(p, lift_precision);
  const Integer target = mod(c * inverse_mod(b, lift_modulus), lift_modulus);
  const Integer root = hensel_root(target, static_cast<unsigned long>(m), 1, p, lift_precision);
  y[j] = y[j] * root;

  AdjustedPoint out{std::move(y), working};
  const std::vector<long> ms(size - 1, m);
  const auto standard = HyperplaneOrbifold::standard(size - 2, std::span<const long>(ms));
  if (!is_local_campana(rho(form, out.coords, p, out.precision), standard, p).is_campana)
    throw SolverError("adjust_diagonal_point: adjusted point fails the local Campana test");
  return out;
}

}  // namespace campana
