#include "campana/orbifold.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace campana {

ProjectivePoint::ProjectivePoint(std::vector<Integer> coords) {
  if (coords.size() < 2) throw std::invalid_argument("ProjectivePoint: need at least two coordinates");
  coords_ = normalize_primitive(std::span<const Integer>(coords));
}

ProjectivePoint ProjectivePoint::from_rationals(std::span<const Rational> coords) {
  return ProjectivePoint(normalize_primitive(coords));
}

ProjectivePoint ProjectivePoint::from_coprime(std::vector<Integer> coords) {
  if (coords.size() < 2) throw std::invalid_argument("ProjectivePoint: need at least two coordinates");
  const auto lead = std::find_if(coords.begin(), coords.end(), [](const Integer& c) { return c != 0; });
  if (lead == coords.end()) throw std::invalid_argument("ProjectivePoint: zero vector");
  if (*lead < 0)
    for (auto& c : coords) c = -c;
  ProjectivePoint out;
  out.coords_ = std::move(coords);
  return out;
}

Integer ProjectivePoint::height() const {
  Integer h = 0;
  for (const auto& c : coords_) h = std::max<Integer>(h, abs(c));
  return h;
}

std::string ProjectivePoint::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i];
  os << ']';
  return os.str();
}

LinearForm::LinearForm(std::vector<Integer> coeffs) {
  if (coeffs.size() < 2) throw std::invalid_argument("LinearForm: need at least two coefficients");
  coeffs_ = normalize_primitive(std::span<const Integer>(coeffs));
}

LinearForm LinearForm::coordinate(std::size_t n, std::size_t i) {
  std::vector<Integer> c(n + 1, 0);
  c.at(i) = 1;
  return LinearForm(std::move(c));
}

LinearForm LinearForm::sum(std::size_t n) { return LinearForm(std::vector<Integer>(n + 1, 1)); }

Integer LinearForm::evaluate(std::span<const Integer> x) const {
  if (x.size() != coeffs_.size()) throw std::invalid_argument("LinearForm::evaluate: dimension mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (coeffs_[i] != 0) s += coeffs_[i] * x[i];
  }
  return s;
}

RowVectorX<Rational> LinearForm::row() const {
  RowVectorX<Rational> r(static_cast<Eigen::Index>(coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r(static_cast<Eigen::Index>(i)) = Rational(coeffs_[i]);
  return r;
}

bool LinearForm::proportional_to(const LinearForm& other) const {
  // Both are primitive with the same sign convention.
  return coeffs_ == other.coeffs_;
}

Multiplicity::Multiplicity(long m) : value_(m), infinite_(false) {
  if (m < 2) throw std::invalid_argument("Multiplicity: m must be >= 2, got " + std::to_string(m));
}

long Multiplicity::value() const {
  if (infinite_) throw std::domain_error("Multiplicity: infinite");
  return value_;
}

HyperplaneOrbifold::HyperplaneOrbifold(std::size_t n, std::vector<LinearForm> forms,
                                       std::vector<Multiplicity> multiplicities)
    : n_(n), forms_(std::move(forms)), multiplicities_(std::move(multiplicities)) {
  if (n_ < 1) throw std::invalid_argument("HyperplaneOrbifold: n must be >= 1");
  if (forms_.size() != multiplicities_.size())
    throw std::invalid_argument("HyperplaneOrbifold: forms and multiplicities differ in length");
  if (forms_.size() > n_ + 2) throw std::invalid_argument("HyperplaneOrbifold: at most n + 2 components");
  for (const auto& f : forms_) {
    if (f.size() != n_ + 1) throw std::invalid_argument("HyperplaneOrbifold: form of wrong dimension");
  }
  for (std::size_t i = 0; i < forms_.size(); ++i)
    for (std::size_t j = i + 1; j < forms_.size(); ++j)
      if (forms_[i].proportional_to(forms_[j]))
        throw std::invalid_argument("HyperplaneOrbifold: proportional forms " + std::to_string(i) + ", " +
                                    std::to_string(j));
}

HyperplaneOrbifold HyperplaneOrbifold::standard(std::size_t n, std::vector<Multiplicity> multiplicities) {
  if (multiplicities.size() > n + 2) throw std::invalid_argument("standard arrangement: at most n + 2 components");
  std::vector<LinearForm> forms;
  for (std::size_t i = 0; i < multiplicities.size(); ++i)
    forms.push_back(i <= n ? LinearForm::coordinate(n, i) : LinearForm::sum(n));
  return HyperplaneOrbifold(n, std::move(forms), std::move(multiplicities));
}

HyperplaneOrbifold HyperplaneOrbifold::standard(std::size_t n, std::span<const long> multiplicities) {
  std::vector<Multiplicity> ms;
  for (long m : multiplicities) ms.emplace_back(m);
  return standard(n, std::move(ms));
}

bool HyperplaneOrbifold::is_standard() const {
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    const LinearForm expected = i <= n_ ? LinearForm::coordinate(n_, i) : LinearForm::sum(n_);
    if (!(forms_[i] == expected)) return false;
  }
  return true;
}

bool HyperplaneOrbifold::all_finite() const {
  return std::none_of(multiplicities_.begin(), multiplicities_.end(),
                      [](const Multiplicity& m) { return m.is_infinite(); });
}

long HyperplaneOrbifold::max_finite_multiplicity() const {
  long best = 0;
  for (const auto& m : multiplicities_)
    if (!m.is_infinite()) best = std::max(best, m.value());
  return best;
}

QuadraticOrbifoldP1::QuadraticOrbifoldP1(Integer a, long m) : a_(std::move(a)), m_(m) {
  if (a_ == 0) throw std::invalid_argument("QuadraticOrbifoldP1: a must be nonzero");
  if (a_ > 0 && mpz_perfect_square_p(a_.get_mpz_t()))
    throw std::invalid_argument("QuadraticOrbifoldP1: a = " + a_.get_str() + " is a perfect square");
  if (m_ < 2) throw std::invalid_argument("QuadraticOrbifoldP1: m must be >= 2");
}

ProjectiveTransform::ProjectiveTransform(RationalMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 2)
    throw std::invalid_argument("ProjectiveTransform: matrix must be square of size >= 2");
  if (exact_determinant(matrix_) == 0) throw std::invalid_argument("ProjectiveTransform: singular matrix");
}

ProjectiveTransform ProjectiveTransform::identity(std::size_t n) {
  const auto size = static_cast<Eigen::Index>(n + 1);
  RationalMatrix m = RationalMatrix::Zero(size, size);
  for (Eigen::Index i = 0; i < size; ++i) m(i, i) = 1;
  return ProjectiveTransform(std::move(m));
}

ProjectiveTransform ProjectiveTransform::inverse() const {
  return ProjectiveTransform(*exact_inverse(matrix_));
}

namespace {

RationalMatrix stack_rows(std::span<const LinearForm> forms, std::span<const std::size_t> idx) {
  const auto cols = static_cast<Eigen::Index>(forms.front().size());
  RationalMatrix m(static_cast<Eigen::Index>(idx.size()), cols);
  for (std::size_t r = 0; r < idx.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = forms[idx[r]].row();
  return m;
}

}  // namespace

bool general_position_check(std::span<const LinearForm> forms) {
  if (forms.empty()) return true;
  const std::size_t ambient = forms.front().size();
  for (const auto& f : forms)
    if (f.size() != ambient) throw std::invalid_argument("general_position_check: mixed dimensions");
  // Every k-subset of full rank follows from every maximal subset being of full rank.
  const std::size_t k = std::min(forms.size(), ambient);
  std::vector<bool> mask(forms.size(), false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) idx.push_back(i);
    if (exact_rank(stack_rows(forms, idx)) != static_cast<Eigen::Index>(k)) return false;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return true;
}

ProjectiveTransform to_standard_form(const HyperplaneOrbifold& orbifold) {
  const std::size_t n = orbifold.dimension();
  const auto& forms = orbifold.forms();
  if (!general_position_check(forms))
    throw std::invalid_argument("to_standard_form: forms are not in general linear position");
  const auto size = static_cast<Eigen::Index>(n + 1);
  RationalMatrix t(size, size);

  if (forms.size() == n + 2) {
    // Projective frame: f_{n+1} = sum lambda_i f_i, then rows lambda_i f_i make the last
    // form the coordinate sum.
    RationalMatrix basis(size, size);
    for (Eigen::Index i = 0; i < size; ++i) basis.row(i) = forms[static_cast<std::size_t>(i)].row();
    RationalVector target = forms[n + 1].row().transpose();
    auto lambda = exact_solve(RationalMatrix(basis.transpose()), target);
    if (!lambda) throw std::invalid_argument("to_standard_form: frame equations have no solution");
    for (Eigen::Index i = 0; i < size; ++i) {
      if ((*lambda)(i) == 0) throw std::invalid_argument("to_standard_form: degenerate frame");
      t.row(i) = (*lambda)(i) * basis.row(i);
    }
    return ProjectiveTransform(std::move(t));
  }

  // r <= n: f_i become rows i; complete with coordinate rows keeping full rank.
  Eigen::Index filled = 0;
  for (const auto& f : forms) t.row(filled++) = f.row();
  for (std::size_t j = 0; j <= n && filled < size; ++j) {
    RationalMatrix trial(filled + 1, size);
    trial.topRows(filled) = t.topRows(filled);
    trial.row(filled) = LinearForm::coordinate(n, j).row();
    if (exact_rank(trial) == filled + 1) {
      t.row(filled) = trial.row(filled);
      ++filled;
    }
  }
  return ProjectiveTransform(std::move(t));
}

ProjectivePoint apply_transform(const ProjectiveTransform& t, const ProjectivePoint& p) {
  if (t.dimension() != p.dimension()) throw std::invalid_argument("apply_transform: dimension mismatch");
  RationalVector v(static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) v(static_cast<Eigen::Index>(i)) = Rational(p[i]);
  RationalVector image = t.matrix() * v;
  std::vector<Rational> coords(image.data(), image.data() + image.size());
  if (std::all_of(coords.begin(), coords.end(), [](const Rational& c) { return c == 0; }))
    throw std::invalid_argument("apply_transform: image is the zero vector");
  return ProjectivePoint::from_rationals(coords);
}

LinearForm transport_form(const ProjectiveTransform& t, const LinearForm& f) {
  if (t.dimension() + 1 != f.size()) throw std::invalid_argument("transport_form: dimension mismatch");
  RowVectorX<Rational> g = f.row() * *exact_inverse(t.matrix());
  std::vector<Rational> coeffs(g.data(), g.data() + g.size());
  return LinearForm(normalize_primitive(std::span<const Rational>(coeffs)));
}

HyperplaneOrbifold transport(const ProjectiveTransform& t, const HyperplaneOrbifold& orbifold) {
  std::vector<LinearForm> forms;
  for (const auto& f : orbifold.forms()) forms.push_back(transport_form(t, f));
  return HyperplaneOrbifold(orbifold.dimension(), std::move(forms), orbifold.multiplicities());
}

}  // namespace campana
