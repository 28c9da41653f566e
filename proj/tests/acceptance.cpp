// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "campana/approx.hpp"
#include "campana/campana_check.hpp"
#include "campana/enumeration.hpp"
#include "campana/solubility.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace campana;
using fixtures::standard;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned budgets (seconds).
constexpr double kBaseBudget = 1.0;
constexpr double kNcpBudget = 300.0;
constexpr double kConicBudget = 60.0;
constexpr double kHyperplaneInstanceBudget = 2.0;
constexpr double kQuadInstanceBudget = 5.0;
constexpr double kDiagonalInstanceBudget = 2.0;
constexpr double kEnumerationBudget = 60.0;
constexpr double kDensityBudget = 300.0;
constexpr double kPropertyBudget = 60.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<Integer> ints(std::vector<long> c) { return std::vector<Integer>(c.begin(), c.end()); }

ProjectivePoint point(std::vector<long> c) { return ProjectivePoint(ints(std::move(c))); }

long val_small(const Integer& x, const Integer& p) {
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

// x ~ y at p: with y_j a unit and x_j a unit, p^(N + v(y_i)) divides x_i y_j - x_j y_i.
bool approx_oracle(const ProjectivePoint& x, const std::vector<Integer>& y, const Integer& p, unsigned n,
                   bool add_valuation) {
  std::size_t j = 0;
  while (mpz_divisible_p(y[j].get_mpz_t(), p.get_mpz_t())) ++j;
  if (mpz_divisible_p(x[j].get_mpz_t(), p.get_mpz_t())) return false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const unsigned long need = n + (add_valuation ? static_cast<unsigned long>(val_small(y[i], p)) : 0);
    Integer q;
    mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), need);
    const Integer cross = x[i] % q * y[j] - x[j] % q * y[i];
    if (!mpz_divisible_p(cross.get_mpz_t(), q.get_mpz_t())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Outcome base_point() {
  std::size_t total = 0, failed = 0, failed_sum_not_full = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::size_t r = 0; r <= n + 1; ++r) {
      std::vector<long> ms(r + 1, 2);
      while (true) {
        ++total;
        const ProjectivePoint ones(std::vector<Integer>(n + 1, 1));
        if (!is_global_campana(ones, standard(n, ms), {})) {
          ++failed;
          if (r == n + 1 && !oracle::m_full(n + 1, static_cast<unsigned>(ms.back()))) ++failed_sum_not_full;
        }
        std::size_t i = 0;
        for (; i <= r; ++i) {
          if (++ms[i] <= 5) break;
          ms[i] = 2;
        }
        if (i > r) break;
      }
    }
  std::ostringstream s;
  s << total << " arrangements, " << failed << " rejected";
  if (failed)
    s << " (" << failed_sum_not_full << " of them have r = n+1 with n+1 not m_{n+1}-full, so x_0+...+x_n = n+1 "
      << "violates the local condition)";
  return {failed == 0, s.str()};
}

Outcome ncp_example() {
  const auto rows = [] {
    std::vector<std::vector<oracle::i64>> out;
    for (const auto& r : fixtures::ncp_coefficients()) out.emplace_back(r.begin(), r.end());
    return out;
  }();
  unsigned m_star = 0;
  for (unsigned k = 1; k <= 5 && m_star == 0; ++k)
    if (!oracle::common_zero_mod(rows, 6, 2, k)) m_star = k;
  if (m_star < 2) return {false, "no minimal depth found by brute force"};
  const auto orb = fixtures::ncp_orbifold(static_cast<long>(m_star));
  const auto verdict = emptiness_search(orb, 2, m_star);
  const bool empty = verdict.status == SolubilityStatus::Empty && verdict.depth == m_star;

  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> coord(-1000, 1000);
  int tested = 0, accepted = 0;
  while (tested < 10000) {
    std::vector<long> x(6);
    for (auto& c : x) c = coord(rng);
    if (std::all_of(x.begin(), x.end(), [](long c) { return c == 0; })) continue;
    ++tested;
    if (is_local_campana(point(x), orb, 2).is_campana) ++accepted;
  }
  std::ostringstream s;
  s << "m* = " << m_star << ", emptiness_search -> " << to_string(verdict.status) << "(" << verdict.depth << "), "
    << accepted << "/" << tested << " random points accepted at 2";
  return {empty && accepted == 0, s.str()};
}

Outcome conic() {
  const auto r6 = conic_remark_report(6), r10 = conic_remark_report(10);
  std::ostringstream s;
  s << "K=6: " << (r6.holds ? "true" : "false") << " over " << r6.solutions << " solutions, K=10: "
    << (r10.holds ? "true" : "false") << " over " << r10.solutions << " solutions";
  return {r6.holds && r10.holds, s.str()};
}

// Random target at p, locally Campana for the standard arrangement {x_0..x_r}.
LocalTarget hyperplane_target(std::mt19937_64& rng, const Integer& p, std::size_t n, const std::vector<long>& ms,
                              unsigned precision) {
  const std::size_t size = n + 1;
  std::vector<unsigned long> e(size);
  for (std::size_t i = 0; i < size; ++i) {
    const bool component = i < ms.size();
    const unsigned long pick = rng() % 3;
    e[i] = pick == 0 ? 0 : (component ? static_cast<unsigned long>(ms[i]) + pick - 1 : pick);
  }
  e[rng() % size] = 0;
  std::vector<Integer> coords(size);
  for (std::size_t i = 0; i < size; ++i) {
    Integer u = 0;
    while (u == 0 || mpz_divisible_p(u.get_mpz_t(), p.get_mpz_t())) u = static_cast<long>(rng() % 201) - 100;
    coords[i] = u * pow(p, e[i]);
  }
  return {p, coords, precision};
}

Outcome hyperplane_solver() {
  std::mt19937_64 rng(404);
  const long primes[] = {2, 3, 5, 7};
  int passed = 0;
  double worst = 0;
  std::string first_failure;
  // 100 random instances, then the largest shape in range: P^3, r = 3, m = 3, all four
  // primes at precision 3
  constexpr int kInstances = 101;
  for (int instance = 0; instance < kInstances; ++instance) {
    const bool extreme = instance == kInstances - 1;
    const std::size_t n = extreme ? 3 : 1 + rng() % 3;
    const std::size_t r = extreme ? 3 : rng() % (n + 1);
    std::vector<long> ms(r + 1);
    for (auto& m : ms) m = extreme ? 3 : 2 + static_cast<long>(rng() % 2);
    const auto orb = standard(n, ms);
    std::vector<LocalTarget> targets;
    for (long p : primes)
      if (extreme) targets.push_back(hyperplane_target(rng, p, n, ms, 3));
      else if (rng() % 2) targets.push_back(hyperplane_target(rng, p, n, ms, 1 + static_cast<unsigned>(rng() % 3)));
    const auto start = Clock::now();
    bool ok = false;
    std::string why;
    try {
      const auto sol = solve_cwa_hyperplanes(orb, targets);
      ok = true;
      for (const auto& t : targets)
        if (!approx_oracle(sol.point, t.coords, t.prime, t.precision, true)) {
          ok = false;
          why = "approximation at " + t.prime.get_str();
        }
      if (!is_global_campana(sol.point, orb, {}, sol.certificates)) {
        ok = false;
        why = "global membership";
      }
    } catch (const std::exception& err) {
      why = err.what();
    }
    const double t = seconds_since(start);
    worst = std::max(worst, t);
    if (t > kHyperplaneInstanceBudget) {
      ok = false;
      why = "over time budget";
    }
    if (ok) ++passed;
    else if (first_failure.empty()) first_failure = "instance " + std::to_string(instance) + ": " + why;
  }
  std::ostringstream s;
  s << passed << "/" << kInstances << " verified, slowest " << worst << " s";
  if (!first_failure.empty()) s << "; " << first_failure;
  return {passed == kInstances, s.str()};
}

Outcome quad_solver() {
  std::mt19937_64 rng(505);
  const long as[] = {2, 3, 5, -1, -2};
  const long primes[] = {3, 5, 7, 11, 13, 17};
  int passed = 0;
  double worst = 0;
  unsigned most_attempts = 0;
  std::string first_failure;
  for (int instance = 0; instance < 50; ++instance) {
    const long a = as[instance % 5];
    const long m = 2 + static_cast<long>(rng() % 2);
    const QuadraticOrbifoldP1 orb(a, m);
    std::vector<LocalTarget> targets;
    const std::size_t wanted = 1 + rng() % 2;
    std::set<long> used;
    while (targets.size() < wanted) {
      const long p = primes[rng() % 6];
      if (used.contains(p)) continue;
      // random primitive pair passing the local test, nonzero coordinates
      while (true) {
        long y0 = static_cast<long>(rng() % 401) - 200, y1 = static_cast<long>(rng() % 401) - 200;
        if (y0 == 0 || y1 == 0) continue;
        if (y0 % p == 0 && y1 % p == 0) continue;
        if (!is_local_campana_quad(point({y0, y1}), orb, p)) continue;
        targets.push_back({p, ints({y0, y1}), 1 + static_cast<unsigned>(rng() % 2)});
        used.insert(p);
        break;
      }
    }
    const auto start = Clock::now();
    bool ok = false;
    std::string why;
    try {
      const auto sol = solve_cwa_quad(orb, targets, static_cast<std::uint64_t>(instance));
      ok = sol.attempts <= 64;
      for (const auto& t : targets)
        if (!approx_oracle(sol.point, t.coords, t.prime, t.precision, false)) {
          ok = false;
          why = "approximation at " + t.prime.get_str();
        }
      const Integer norm = orb.norm(sol.point[0], sol.point[1]);
      if (mpz_divisible_p(norm.get_mpz_t(), sol.v0.get_mpz_t()) || quadratic_character(a, sol.v0) != -1) {
        ok = false;
        why = "v0 exclusion";
      }
      if (!global_campana_verdict_quad(sol.point, orb, sol.used_S, sol.certificate).is_campana) {
        ok = false;
        why = "global membership outside used_S";
      }
      most_attempts = std::max(most_attempts, sol.attempts);
    } catch (const std::exception& err) {
      why = err.what();
    }
    const double t = seconds_since(start);
    worst = std::max(worst, t);
    if (t > kQuadInstanceBudget) {
      ok = false;
      why = "over time budget";
    }
    if (ok) ++passed;
    else if (first_failure.empty()) first_failure = "instance " + std::to_string(instance) + ": " + why;
  }
  std::ostringstream s;
  s << passed << "/50 verified, at most " << most_attempts << " attempts, slowest " << worst << " s";
  if (!first_failure.empty()) s << "; " << first_failure;
  return {passed == 50, s.str()};
}

Outcome diagonal_adjustment() {
  std::mt19937_64 rng(606);
  const unsigned long primes[] = {5, 7, 11, 13};
  constexpr unsigned kPrecision = 24;
  int passed = 0, generated = 0;
  double worst = 0;
  std::string first_failure;
  while (generated < 100) {
    const unsigned long p = primes[rng() % 4];
    const long m = 2 + static_cast<long>(rng() % 2);
    const std::size_t size = 3 + rng() % 3;
    std::vector<Integer> a(size);
    for (auto& c : a) {
      long v = 0;
      while (v == 0) v = static_cast<long>(rng() % 101) - 50;
      c = v;
    }
    const DiagonalForm form(m, a);
    // residue search: a primitive solution mod p with some a_j x_j a unit
    std::vector<unsigned long> x(size, 0);
    std::optional<std::vector<unsigned long>> found;
    for (int tries = 0; tries < 5000 && !found; ++tries) {
      for (auto& c : x) c = rng() % p;
      Integer s = 0;
      for (std::size_t i = 0; i < size; ++i) s += a[i] * pow(Integer(x[i]), static_cast<unsigned long>(m));
      if (mod(s, p) != 0) continue;
      for (std::size_t i = 0; i < size; ++i)
        if (x[i] != 0 && mod(a[i], p) != 0) found = x;
    }
    if (!found) continue;
    ++generated;
    // zero residues become p, then one unit coordinate is Hensel-lifted
    std::vector<Integer> pt(size);
    std::size_t j = size;
    for (std::size_t i = 0; i < size; ++i) {
      pt[i] = (*found)[i] == 0 ? Integer(p) : Integer((*found)[i]);
      if (j == size && (*found)[i] != 0 && mod(a[i], p) != 0) j = i;
    }
    const Integer q = pow(Integer(p), kPrecision);
    Integer rest = 0;
    for (std::size_t i = 0; i < size; ++i)
      if (i != j) rest += a[i] * pow(pt[i], static_cast<unsigned long>(m));
    const Integer c = mod(-rest * inverse_mod(a[j], q), q);
    const auto start = Clock::now();
    bool ok = false;
    std::string why;
    try {
      pt[j] = hensel_root(c, static_cast<unsigned long>(m), pt[j], p, kPrecision);
      const auto adjusted = adjust_diagonal_point(form, pt, p, kPrecision);
      const auto image = rho(form, adjusted.coords, p, adjusted.precision);
      const auto orb = standard(size - 2, std::vector<long>(size, m));
      ok = is_local_campana(image, orb, p).is_campana;
      if (!ok) why = "rho not locally Campana";
    } catch (const std::exception& err) {
      why = err.what();
    }
    const double t = seconds_since(start);
    worst = std::max(worst, t);
    if (t > kDiagonalInstanceBudget) {
      ok = false;
      why = "over time budget";
    }
    if (ok) ++passed;
    else if (first_failure.empty()) first_failure = "instance " + std::to_string(generated) + ": " + why;
  }
  std::ostringstream s;
  s << passed << "/100 adjusted points map to local Campana points, slowest " << worst << " s";
  if (!first_failure.empty()) s << "; " << first_failure;
  return {passed == 100, s.str()};
}

Outcome enumeration_equivalence() {
  struct Case {
    std::size_t n;
    std::vector<long> ms;
    std::int64_t bound;
  };
  const std::vector<Case> cases{{1, {2}, 200}, {1, {3}, 200}, {1, {2, 2}, 200}, {1, {3, 3}, 200}, {2, {2, 2, 2}, 50}};
  std::ostringstream s;
  bool all = true;
  for (const auto& c : cases) {
    const auto orb = standard(c.n, c.ms);
    const auto fast = enumerate_campana(orb, c.bound);
    const auto slow = brute_force_campana(orb, c.bound);
    const bool same = std::set<SmallPoint>(fast.begin(), fast.end()) == std::set<SmallPoint>(slow.begin(), slow.end()) &&
                      fast.size() == slow.size();
    all = all && same;
    s << "(P^" << c.n << ", r=" << c.ms.size() - 1 << ", m=" << c.ms[0] << ", B=" << c.bound << "): " << fast.size()
      << (same ? " equal" : " DIFFER") << "; ";
  }
  return {all, s.str()};
}

Outcome density() {
  const auto orb = standard(1, {2, 2});
  const auto r5 = density_stats(orb, 1'000'000, 5, 1);
  const auto r9 = density_stats(orb, 1'000'000, 3, 2);
  std::ostringstream s;
  s << r5.total << " points; mod 5: " << r5.attained_feasible << "/" << r5.feasible_classes.size()
    << " feasible classes, " << r5.infeasible_hits << " infeasible hits; mod 9: " << r9.attained_feasible << "/"
    << r9.feasible_classes.size() << " feasible classes, " << r9.infeasible_hits << " infeasible hits";
  const bool ok = r5.all_feasible_attained() && r9.all_feasible_attained() && r5.infeasible_hits == 0 &&
                  r9.infeasible_hits == 0;
  return {ok, s.str()};
}

Outcome properties() {
  int failures = 0;
  std::ostringstream s;
  {
    std::mt19937_64 rng(707);
    std::uniform_int_distribution<long> d(-200, 200);
    const auto orb = standard(2, {2, 3, 2, 3});
    int bad = 0, done = 0;
    while (done < 10000) {
      std::vector<Rational> x{Rational(d(rng)), Rational(d(rng)), Rational(d(rng))};
      if (x[0] == 0 && x[1] == 0 && x[2] == 0) continue;
      const long num = d(rng), den = d(rng);
      if (num == 0 || den == 0) continue;
      const Rational lambda = fixtures::ratio(num, den);
      std::vector<Rational> y;
      for (const auto& c : x) y.push_back(Rational(lambda * c));
      const auto px = ProjectivePoint::from_rationals(x), py = ProjectivePoint::from_rationals(y);
      const Integer p(done % 3 == 0 ? 2 : (done % 3 == 1 ? 3 : 5));
      if (is_local_campana(px, orb, p).is_campana != is_local_campana(py, orb, p).is_campana) ++bad;
      if (x[0] != 0 || x[1] != 0) {
        const QuadraticOrbifoldP1 quad(done % 2 ? 2 : -1, 2);
        std::vector<Rational> q{x[0], x[1]}, qs{y[0], y[1]};
        if (is_local_campana_quad(ProjectivePoint::from_rationals(q), quad, p) !=
            is_local_campana_quad(ProjectivePoint::from_rationals(qs), quad, p))
          ++bad;
      }
      ++done;
    }
    failures += bad;
    s << "scaling " << (bad ? "FAILED" : "ok") << "; ";
  }
  {
    std::mt19937_64 rng(708);
    std::uniform_int_distribution<long> d(-40, 40);
    const long as[] = {2, 3, 5, -1, -2};
    int bad = 0;
    for (int i = 0; i < 10000; ++i) {
      const Integer a = as[i % 5];
      const Integer t0 = d(rng), t1 = d(rng), t2 = d(rng), t3 = d(rng);
      const unsigned long m = 2 + rng() % 2;
      const auto [x0, x1] = norm_form_product(t0, t1, t2, t3, a, m, m + 1);
      Integer rhs = 1;
      for (unsigned long k = 0; k < m; ++k) rhs *= t0 * t0 - a * t1 * t1;
      for (unsigned long k = 0; k <= m; ++k) rhs *= t2 * t2 - a * t3 * t3;
      if (x0 * x0 - a * x1 * x1 != rhs) ++bad;
    }
    failures += bad;
    s << "norm form " << (bad ? "FAILED" : "ok") << "; ";
  }
  {
    std::mt19937_64 rng(709);
    const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13};
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const std::uint64_t p = primes[rng() % 6];
      const unsigned n = 1 + static_cast<unsigned>(rng() % 4);
      std::uint64_t q = 1;
      for (unsigned k = 0; k < n; ++k) q *= p;
      const std::uint64_t d = 1 + q / p * (p - 1) * (1 + rng() % 100);
      std::uint64_t alpha = 0;
      while (alpha % p == 0) alpha = rng() % (1u << 20);
      if (power_mod(Integer(alpha), Integer(d), Integer(q)) != alpha % q) ++bad;
    }
    failures += bad;
    s << "alpha^d " << (bad ? "FAILED" : "ok") << "; ";
  }
  {
    int bad = 0;
    for (unsigned m = 2; m <= 4; ++m) {
      std::vector<std::uint64_t> expected;
      for (std::uint64_t k = 1; k <= 100000; ++k)
        if (oracle::m_full(k, m)) expected.push_back(k);
      if (m_full_stream(m, 100000) != expected) ++bad;
    }
    failures += bad;
    s << "m-full stream " << (bad ? "FAILED" : "ok");
  }
  return {failures == 0, s.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "base point [1,...,1] on standard arrangements", kBaseBudget, base_point},
      {2, "non-solubility example at 2", kNcpBudget, ncp_example},
      {3, "2-adic conic remark", kConicBudget, conic},
      {4, "hyperplane CWA solver", 100 * kHyperplaneInstanceBudget, hyperplane_solver},
      {5, "quadratic CWA solver", 50 * kQuadInstanceBudget, quad_solver},
      {6, "diagonal adjustment", 100 * kDiagonalInstanceBudget, diagonal_adjustment},
      {7, "enumeration vs brute force", kEnumerationBudget, enumeration_equivalence},
      {8, "density proxy for weak weak approximation", kDensityBudget, density},
      {9, "property suites", kPropertyBudget, properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& err) {
      out = {false, std::string("exception: ") + err.what()};
    }
    const double t = seconds_since(start);
    if (t > c.budget) {
      out.pass = false;
      out.detail += "; over the " + std::to_string(c.budget) + " s budget";
    }
    if (!out.pass) ++failed;
    std::printf("[%s] criterion %d: %s (%.2f s) -- %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, t,
                out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
