#include "campana/solubility.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <random>

#include "campana/campana_check.hpp"

namespace campana {

const char* to_string(SolubilityStatus s) {
  switch (s) {
    case SolubilityStatus::Empty:
      return "empty";
    case SolubilityStatus::Witness:
      return "witness";
    case SolubilityStatus::Unknown:
      return "unknown";
  }
  return "?";
}

namespace {

void require_finite_general(const HyperplaneOrbifold& orbifold) {
  if (!orbifold.all_finite()) throw std::invalid_argument("all multiplicities must be finite");
  if (!general_position_check(orbifold.forms()))
    throw std::invalid_argument("forms are not in general linear position");
}

ProjectivePoint from_rational_vector(const RationalVector& v) {
  std::vector<Rational> coords(v.data(), v.data() + v.size());
  return ProjectivePoint::from_rationals(coords);
}

RationalMatrix form_matrix(const HyperplaneOrbifold& orbifold, std::span<const std::size_t> rows) {
  const auto cols = static_cast<Eigen::Index>(orbifold.dimension() + 1);
  RationalMatrix m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = orbifold.form(rows[r]).row();
  return m;
}

SolubilityVerdict make_witness(ProjectivePoint point, std::string reason, unsigned depth = 0) {
  SolubilityVerdict v;
  v.status = SolubilityStatus::Witness;
  v.witness = std::move(point);
  v.reason = std::move(reason);
  v.depth = depth;
  return v;
}

constexpr std::size_t kNoComponent = std::numeric_limits<std::size_t>::max();

// A point of D_on(F_p) off every other component, lifted to a rational point on D_on.
// With on = kNoComponent: a point of P^n(F_p) off every component.
std::optional<ProjectivePoint> residue_point(const HyperplaneOrbifold& orbifold, std::size_t on, const Integer& p) {
  const std::size_t size = orbifold.dimension() + 1;
  std::size_t pivot = size;
  if (on != kNoComponent) {
    const LinearForm& f = orbifold.form(on);
    for (std::size_t j = 0; j < size && pivot == size; ++j)
      if (mod(f[j], p) != 0) pivot = j;
    if (pivot == size) return std::nullopt;  // f primitive, so unreachable
  }

  auto try_residue = [&](std::vector<Integer> x) -> std::optional<ProjectivePoint> {
    if (pivot != size) {
      // force f_on(x) = 0 mod p through the pivot coordinate
      const LinearForm& f = orbifold.form(on);
      x[pivot] = 0;
      x[pivot] = mod(-f.evaluate(x) * inverse_mod(f[pivot], p), p);
    }
    if (std::all_of(x.begin(), x.end(), [&](const Integer& c) { return mod(c, p) == 0; })) return std::nullopt;
    for (std::size_t l = 0; l < orbifold.component_count(); ++l)
      if (l != on && mod(orbifold.form(l).evaluate(x), p) == 0) return std::nullopt;
    if (pivot == size) return ProjectivePoint(x);
    // exact lift: shift the pivot coordinate by -f(x)/c_pivot, a multiple of p at p
    const LinearForm& f = orbifold.form(on);
    std::vector<Rational> lifted(x.begin(), x.end());
    Rational shift(f.evaluate(x), f[pivot]);
    shift.canonicalize();
    lifted[pivot] -= shift;
    return ProjectivePoint::from_rationals(lifted);
  };

  // Small fields: walk all residues of the free coordinates. Large fields: sample.
  const std::size_t free = pivot == size ? size : size - 1;
  Integer total = pow(p, static_cast<unsigned long>(free));
  if (total <= 2'000'000) {
    const unsigned long count = total.get_ui();
    std::vector<Integer> x(size, 0);
    for (unsigned long code = 1; code < count; ++code) {
      unsigned long c = code;
      for (std::size_t j = 0; j < size; ++j) {
        if (j == pivot) continue;
        x[j] = static_cast<unsigned long>(c % p.get_ui());
        c /= p.get_ui();
      }
      if (auto pt = try_residue(x)) return pt;
    }
    return std::nullopt;
  }
  std::mt19937_64 rng(0xC0FFEE + (on == kNoComponent ? size : on));
  gmp_randclass gen(gmp_randinit_default);
  gen.seed(static_cast<unsigned long>(rng()));
  for (int attempt = 0; attempt < 20000; ++attempt) {
    std::vector<Integer> x(size);
    for (auto& c : x) c = gen.get_z_range(p);
    if (auto pt = try_residue(x)) return pt;
  }
  return std::nullopt;
}

}  // namespace

SolubilityVerdict sufficient_witness(const HyperplaneOrbifold& orbifold, const Integer& p) {
  require_prime(p);
  require_finite_general(orbifold);
  const std::size_t n = orbifold.dimension();
  const std::size_t count = orbifold.component_count();

  auto verified = [&](ProjectivePoint pt, const char* reason) {
    if (!is_local_campana(pt, orbifold, p).is_campana)
      throw std::logic_error(std::string("sufficient_witness: constructed point fails the local test (") + reason +
                             ")");
    return make_witness(std::move(pt), reason);
  };

  if (count < n + 1) {
    std::vector<std::size_t> all(count);
    for (std::size_t i = 0; i < count; ++i) all[i] = i;
    RationalMatrix kernel = exact_kernel(form_matrix(orbifold, all));
    return verified(from_rational_vector(kernel.col(0)), "intersection");
  }

  if (count == n + 1) {
    std::vector<std::size_t> all(count);
    for (std::size_t i = 0; i < count; ++i) all[i] = i;
    const Rational det = exact_determinant(form_matrix(orbifold, all));
    if (mod(det.get_num(), p) != 0) {
      std::vector<std::size_t> first(all.begin(), all.end() - 1);
      RationalMatrix kernel = exact_kernel(form_matrix(orbifold, first));
      return verified(from_rational_vector(kernel.col(0)), "independent-reductions");
    }
  }

  if (p >= Integer(static_cast<unsigned long>(n))) {
    for (std::size_t i = 0; i < count; ++i) {
      if (auto pt = residue_point(orbifold, i, p)) return verified(std::move(*pt), "single-component");
    }
    // Only reachable when two reductions coincide; then at most n distinct hyperplanes
    // cover part of P^n(F_p), and the same count leaves a point off all of them.
    if (auto pt = residue_point(orbifold, kNoComponent, p)) return verified(std::move(*pt), "off-all-components");
  }
  SolubilityVerdict unknown;
  unknown.reason = "no sufficient condition applies";
  return unknown;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

ResidueArrangement::ResidueArrangement(const HyperplaneOrbifold& orbifold, std::uint64_t p, unsigned k)
    : n_(orbifold.dimension()), p_(p), k_(k) {
  if (k < 1) throw std::invalid_argument("depth must be >= 1");
  require_prime(Integer(static_cast<unsigned long>(p)));
  std::uint64_t m = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (m > (std::numeric_limits<std::uint64_t>::max() >> 2) / p)
      throw std::invalid_argument("p^k exceeds the residue search range");
    m *= p;
  }
  modulus_ = m;
  const Integer big_m(static_cast<unsigned long>(m));
  for (std::size_t i = 0; i < orbifold.component_count(); ++i) {
    std::vector<std::uint64_t> row;
    for (const auto& c : orbifold.form(i).coeffs()) row.push_back(mod(c, big_m).get_ui());
    coeffs_.push_back(std::move(row));
    const auto& mult = orbifold.multiplicity(i);
    multiplicities_.push_back(mult.is_infinite() ? -1 : mult.value());
  }
}

std::uint64_t ResidueArrangement::form_value(std::size_t i, const std::vector<std::uint64_t>& x,
                                             std::uint64_t level_modulus) const {
  unsigned __int128 s = 0;
  const auto& row = coeffs_[i];
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] != 0) s += static_cast<unsigned __int128>(row[j]) * x[j];
  }
  return static_cast<std::uint64_t>(s % level_modulus);
}

unsigned ResidueArrangement::truncated_valuation(std::uint64_t y, unsigned level) const {
  unsigned v = 0;
  if (y == 0) return level;
  while (v < level && y % p_ == 0) {
    y /= p_;
    ++v;
  }
  return v;
}

bool ResidueArrangement::feasible(const std::vector<std::uint64_t>& x, unsigned level) const {
  std::uint64_t level_modulus = 1;
  for (unsigned i = 0; i < level; ++i) level_modulus *= p_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const unsigned t = truncated_valuation(form_value(i, x, level_modulus), level);
    if (t == 0) continue;
    const long m = multiplicities_[i];
    if (m < 0) return false;  // infinite multiplicity demands a unit
    if (t < std::min<unsigned long>(static_cast<unsigned long>(m), level)) return false;
  }
  return true;
}

std::optional<std::vector<std::uint64_t>> ResidueArrangement::canonical_class(
    const std::vector<std::uint64_t>& x) const {
  std::size_t lead = x.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] % p_ != 0) {
      lead = i;
      break;
    }
  }
  if (lead == x.size()) return std::nullopt;
  const Integer m(static_cast<unsigned long>(modulus_));
  const std::uint64_t inv = inverse_mod(Integer(static_cast<unsigned long>(x[lead] % modulus_)), m).get_ui();
  std::vector<std::uint64_t> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = mulmod(x[i] % modulus_, inv, modulus_);
  return out;
}

namespace {

// Representative of a feasible class as a rational point; forms divisible by p^K are
// made exactly zero when a unit minor allows it.
ProjectivePoint class_witness(const HyperplaneOrbifold& orbifold, const ResidueArrangement& arr,
                              const std::vector<std::uint64_t>& x, const Integer& p, bool& exact_zeros) {
  std::vector<Integer> rep;
  for (auto c : x) rep.emplace_back(static_cast<unsigned long>(c));
  exact_zeros = false;

  std::vector<std::size_t> full;  // components with truncated valuation K
  for (std::size_t i = 0; i < orbifold.component_count(); ++i) {
    if (arr.form_value(i, x, arr.modulus()) == 0) full.push_back(i);
  }
  const std::size_t size = rep.size();
  if (!full.empty() && full.size() < size) {
    RationalMatrix a = form_matrix(orbifold, full);
    RationalVector rhs(static_cast<Eigen::Index>(full.size()));
    for (std::size_t r = 0; r < full.size(); ++r)
      rhs(static_cast<Eigen::Index>(r)) = -Rational(orbifold.form(full[r]).evaluate(rep));
    // choose columns whose minor is a unit at p
    std::vector<bool> mask(size, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(full.size()), true);
    do {
      std::vector<Eigen::Index> cols;
      for (std::size_t j = 0; j < size; ++j)
        if (mask[j]) cols.push_back(static_cast<Eigen::Index>(j));
      RationalMatrix minor(a.rows(), static_cast<Eigen::Index>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c) minor.col(static_cast<Eigen::Index>(c)) = a.col(cols[c]);
      const Rational det = exact_determinant(minor);
      if (det == 0 || mod(det.get_num(), p) == 0) continue;
      auto t = exact_solve(minor, rhs);
      if (!t) continue;
      std::vector<Rational> y(rep.begin(), rep.end());
      for (std::size_t c = 0; c < cols.size(); ++c) y[static_cast<std::size_t>(cols[c])] += (*t)(static_cast<Eigen::Index>(c));
      ProjectivePoint pt = ProjectivePoint::from_rationals(y);
      if (is_local_campana(pt, orbifold, p).is_campana) {
        exact_zeros = true;
        return pt;
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return ProjectivePoint(rep);
}

}  // namespace

SolubilityVerdict emptiness_search(const HyperplaneOrbifold& orbifold, const Integer& p, unsigned depth) {
  require_prime(p);
  if (!orbifold.all_finite()) throw std::invalid_argument("emptiness_search: multiplicities must be finite");
  const long max_m = orbifold.max_finite_multiplicity();
  if (static_cast<long>(depth) < max_m)
    throw std::invalid_argument("emptiness_search: depth " + std::to_string(depth) +
                                " is below the largest multiplicity " + std::to_string(max_m));
  if (!p.fits_ulong_p()) throw std::invalid_argument("emptiness_search: prime too large");
  const ResidueArrangement arr(orbifold, p.get_ui(), depth);
  const std::uint64_t q = arr.prime();
  const std::size_t size = arr.coordinate_count();

  std::optional<std::vector<std::uint64_t>> found;
  std::vector<std::uint64_t> x(size);

  // Depth-first over the lifting tree. `lead` is the first unit coordinate, fixed at 1.
  auto descend = [&](auto&& self, std::size_t lead, unsigned level, std::uint64_t scale) -> bool {
    if (!arr.feasible(x, level)) return false;
    if (level == depth) {
      found = x;
      return true;
    }
    // next p-adic digit of every coordinate except the pinned one
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < size; ++i)
      if (i != lead) free.push_back(i);
    const std::vector<std::uint64_t> base = x;
    std::vector<std::uint64_t> digits(free.size(), 0);
    while (true) {
      for (std::size_t j = 0; j < free.size(); ++j) x[free[j]] = base[free[j]] + digits[j] * scale;
      if (self(self, lead, level + 1, scale * q)) return true;
      std::size_t j = 0;
      for (; j < digits.size(); ++j) {
        if (++digits[j] < q) break;
        digits[j] = 0;
      }
      if (j == digits.size()) break;
    }
    x = base;
    return false;
  };

  for (std::size_t lead = 0; lead < size && !found; ++lead) {
    // level-1 classes: zeros before lead, 1 at lead, free residues after
    std::vector<std::size_t> tail;
    for (std::size_t i = lead + 1; i < size; ++i) tail.push_back(i);
    std::vector<std::uint64_t> digits(tail.size(), 0);
    while (!found) {
      std::fill(x.begin(), x.end(), 0);
      x[lead] = 1;
      for (std::size_t j = 0; j < tail.size(); ++j) x[tail[j]] = digits[j];
      if (descend(descend, lead, 1, q)) break;
      std::size_t j = 0;
      for (; j < digits.size(); ++j) {
        if (++digits[j] < q) break;
        digits[j] = 0;
      }
      if (j == digits.size()) break;
    }
  }

  SolubilityVerdict verdict;
  verdict.depth = depth;
  if (!found) {
    verdict.status = SolubilityStatus::Empty;
    verdict.reason = "no feasible class";
    return verdict;
  }
  bool exact = false;
  ProjectivePoint pt = class_witness(orbifold, arr, *found, p, exact);
  if (!is_local_campana(pt, orbifold, p).is_campana)
    throw std::logic_error("emptiness_search: feasible class representative is not a Campana point");
  return make_witness(std::move(pt), exact ? "hensel-certified" : "feasible-class", depth);
}

ConicReport conic_remark_report(unsigned depth) {
  if (depth < 4) throw std::invalid_argument("conic_remark_check: depth must be >= 4");
  if (depth > 16) throw std::invalid_argument("conic_remark_check: depth must be <= 16");
  const std::uint64_t modulus = 1ull << depth;
  const std::uint64_t mask = modulus - 1;
  auto tau = [&](std::uint64_t t) -> unsigned {
    t &= mask;
    return t == 0 ? depth : static_cast<unsigned>(std::countr_zero(t));
  };
  // z values grouped by 4 z^2 mod 2^K
  std::vector<std::vector<std::uint32_t>> by_square(modulus);
  for (std::uint64_t z = 0; z < modulus; ++z) by_square[(4 * z * z) & mask].push_back(static_cast<std::uint32_t>(z));

  ConicReport report;
  for (std::uint64_t x = 0; x < modulus; ++x) {
    for (std::uint64_t y = 0; y < modulus; ++y) {
      const std::uint64_t s = (x * x + y * y) & mask;
      for (std::uint32_t z : by_square[s]) {
        if (((x | y | z) & 1) == 0) continue;  // not primitive
        ++report.solutions;
        const bool ok = std::min(tau(x), tau(y)) == tau(z) + 1 && tau(s) == 2;
        if (!ok && report.holds) {
          report.holds = false;
          report.counterexample = std::vector<std::uint64_t>{x, y, z};
        }
      }
    }
  }
  return report;
}

bool conic_remark_check(unsigned depth) { return conic_remark_report(depth).holds; }

}  // namespace campana
