#include "campana/enumeration.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <thread>
#include <unordered_set>

#include "campana/campana_check.hpp"
#include "campana/solubility.hpp"

namespace campana {

namespace {

// a^e <= limit, or 0 on overflow past limit
std::uint64_t bounded_power(std::uint64_t a, unsigned e, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > limit / a) return 0;
    r *= a;
  }
  return r;
}

void m_full_products(unsigned exponent, unsigned last, std::uint64_t partial, std::uint64_t bound,
                     std::unordered_set<std::uint64_t>& out) {
  if (exponent > last) {
    out.insert(partial);
    return;
  }
  for (std::uint64_t a = 1;; ++a) {
    const std::uint64_t f = bounded_power(a, exponent, bound / partial);
    if (f == 0) break;
    m_full_products(exponent + 1, last, partial * f, bound, out);
  }
}

struct Plan {
  std::size_t size = 0;
  std::vector<std::vector<std::int64_t>> candidates;  // per coordinate
  unsigned sum_m = 0;                                 // multiplicity of the sum form, 0 if absent
};

Plan make_plan(const HyperplaneOrbifold& orbifold, std::int64_t bound) {
  if (!orbifold.is_standard()) throw std::invalid_argument("enumeration needs the standard arrangement");
  if (!orbifold.all_finite()) throw std::invalid_argument("enumeration needs finite multiplicities");
  if (bound < 1) throw std::invalid_argument("height bound must be >= 1");
  const std::size_t n = orbifold.dimension();
  Plan plan;
  plan.size = n + 1;
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<std::int64_t> values{0};
    if (i < orbifold.component_count()) {
      for (auto v : m_full_stream(static_cast<unsigned>(orbifold.multiplicity(i).value()),
                                  static_cast<std::uint64_t>(bound))) {
        values.push_back(static_cast<std::int64_t>(v));
        values.push_back(-static_cast<std::int64_t>(v));
      }
    } else {
      for (std::int64_t v = 1; v <= bound; ++v) {
        values.push_back(v);
        values.push_back(-v);
      }
    }
    plan.candidates.push_back(std::move(values));
  }
  if (orbifold.component_count() == n + 2)
    plan.sum_m = static_cast<unsigned>(orbifold.multiplicity(n + 1).value());
  return plan;
}

template <typename Visit>
void walk(const Plan& plan, std::size_t i, SmallPoint& x, std::int64_t g, bool leading_zero, std::int64_t sum,
          Visit& visit) {
  if (i == plan.size) {
    if (g != 1) return;
    if (plan.sum_m != 0 && sum != 0 && !is_m_full(static_cast<std::uint64_t>(sum < 0 ? -sum : sum), plan.sum_m))
      return;
    visit(static_cast<const SmallPoint&>(x));
    return;
  }
  for (std::int64_t v : plan.candidates[i]) {
    if (leading_zero && v < 0) continue;
    x[i] = v;
    walk(plan, i + 1, x, std::gcd(g, v), leading_zero && v == 0, sum + v, visit);
  }
}

// Splits the first coordinate's candidates across workers; `make` builds per-worker
// state, `merge` folds it back in worker order.
template <typename State, typename Make, typename Merge>
void parallel_walk(const Plan& plan, Make make, Merge merge) {
  const auto& first = plan.candidates.front();
  std::vector<std::int64_t> heads;
  for (auto v : first)
    if (v >= 0) heads.push_back(v);
  const unsigned workers = std::max(1u, std::min<unsigned>(worker_count(), static_cast<unsigned>(heads.size())));
  std::vector<State> states;
  for (unsigned w = 0; w < workers; ++w) states.push_back(make());
  auto run = [&](unsigned w) {
    SmallPoint x(plan.size, 0);
    auto& state = states[w];
    auto visit = [&state](const SmallPoint& p) { state(p); };
    for (std::size_t h = w; h < heads.size(); h += workers) {
      x[0] = heads[h];
      walk(plan, 1, x, heads[h], heads[h] == 0, heads[h], visit);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& s : states) merge(s);
}

struct Collector {
  std::vector<SmallPoint> points;
  void operator()(const SmallPoint& p) { points.push_back(p); }
};

struct Counter {
  std::uint64_t count = 0;
  void operator()(const SmallPoint&) { ++count; }
};

bool height_order(const SmallPoint& a, const SmallPoint& b) {
  const auto ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  return a < b;
}

}  // namespace

std::vector<std::uint64_t> m_full_stream(unsigned m, std::uint64_t bound) {
  if (m < 2) throw std::invalid_argument("m_full_stream: m must be >= 2");
  if (bound < 1) throw std::invalid_argument("m_full_stream: bound must be >= 1");
  std::unordered_set<std::uint64_t> seen;
  m_full_products(m, 2 * m - 1, 1, bound, seen);
  std::vector<std::uint64_t> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

unsigned worker_count() {
  if (const char* env = std::getenv("CAMPANA_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::int64_t height(const SmallPoint& x) {
  std::int64_t h = 0;
  for (auto c : x) h = std::max(h, c < 0 ? -c : c);
  return h;
}

void for_each_campana_point(const HyperplaneOrbifold& orbifold, std::int64_t bound,
                            const std::function<void(const SmallPoint&)>& visit) {
  const Plan plan = make_plan(orbifold, bound);
  SmallPoint x(plan.size, 0);
  walk(plan, 0, x, 0, true, 0, visit);
}

std::vector<SmallPoint> enumerate_campana(const HyperplaneOrbifold& orbifold, std::int64_t bound) {
  const Plan plan = make_plan(orbifold, bound);
  std::vector<SmallPoint> out;
  parallel_walk<Collector>(plan, [] { return Collector{}; },
                           [&](Collector& c) { out.insert(out.end(), c.points.begin(), c.points.end()); });
  std::sort(out.begin(), out.end(), height_order);
  return out;
}

std::uint64_t count_campana(const HyperplaneOrbifold& orbifold, std::int64_t bound) {
  const Plan plan = make_plan(orbifold, bound);
  std::uint64_t total = 0;
  parallel_walk<Counter>(plan, [] { return Counter{}; }, [&](Counter& c) { total += c.count; });
  return total;
}

std::vector<SmallPoint> brute_force_campana(const HyperplaneOrbifold& orbifold, std::int64_t bound) {
  if (bound < 1) throw std::invalid_argument("height bound must be >= 1");
  const std::size_t size = orbifold.dimension() + 1;
  std::vector<SmallPoint> out;
  SmallPoint x(size, -bound);
  while (true) {
    std::int64_t g = 0;
    for (auto c : x) g = std::gcd(g, c);
    const auto lead = std::find_if(x.begin(), x.end(), [](std::int64_t c) { return c != 0; });
    if (g == 1 && *lead > 0) {
      std::vector<Integer> coords;
      for (auto c : x) coords.emplace_back(static_cast<long>(c));
      if (is_global_campana(ProjectivePoint(coords), orbifold, PrimeSet{})) out.push_back(x);
    }
    std::size_t i = 0;
    for (; i < size; ++i) {
      if (++x[i] <= bound) break;
      x[i] = -bound;
    }
    if (i == size) break;
  }
  std::sort(out.begin(), out.end(), height_order);
  return out;
}

DensityReport density_stats(const HyperplaneOrbifold& orbifold, std::int64_t bound, std::uint64_t p, unsigned k) {
  const ResidueArrangement arr(orbifold, p, k);
  const Plan plan = make_plan(orbifold, bound);
  const auto modulus = static_cast<std::int64_t>(arr.modulus());

  struct Tally {
    const ResidueArrangement* arr;
    std::int64_t modulus;
    std::map<std::vector<std::uint64_t>, std::uint64_t> histogram;
    std::vector<std::uint64_t> residue;
    void operator()(const SmallPoint& x) {
      residue.resize(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) residue[i] = static_cast<std::uint64_t>(((x[i] % modulus) + modulus) % modulus);
      auto cls = arr->canonical_class(residue);
      if (!cls) throw std::logic_error("density_stats: primitive point reduced to a non-primitive class");
      ++histogram[*cls];
    }
  };

  DensityReport report;
  report.prime = p;
  report.depth = k;
  parallel_walk<Tally>(plan, [&] { return Tally{&arr, modulus, {}, {}}; },
                       [&](Tally& t) {
                         for (const auto& [cls, c] : t.histogram) report.histogram[cls] += c;
                       });
  arr.for_each_class([&](const std::vector<std::uint64_t>& cls) {
    if (arr.feasible(cls)) report.feasible_classes.push_back(cls);
  });
  std::sort(report.feasible_classes.begin(), report.feasible_classes.end());
  for (const auto& [cls, c] : report.histogram) {
    report.total += c;
    if (std::binary_search(report.feasible_classes.begin(), report.feasible_classes.end(), cls))
      ++report.attained_feasible;
    else
      report.infeasible_hits += c;
  }
  return report;
}

}  // namespace campana
