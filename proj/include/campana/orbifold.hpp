#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "campana/linalg.hpp"
#include "campana/padic.hpp"

namespace campana {

/// A point of P^n(Q) held as its primitive integer representative (gcd 1, first
/// nonzero coordinate positive). Construction normalizes.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(std::vector<Integer> coords);
  static ProjectivePoint from_rationals(std::span<const Rational> coords);
  /// For coordinates already known to be coprime (skips the gcd, which dominates for
  /// very large entries); only the sign is normalized.
  static ProjectivePoint from_coprime(std::vector<Integer> coords);

  /// Ambient dimension n (the point has n + 1 coordinates).
  std::size_t dimension() const { return coords_.size() - 1; }
  std::size_t size() const { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Integer>& coords() const { return coords_; }

  /// Naive height: max |x_i| of the primitive representative.
  Integer height() const;
  std::string to_string() const;

  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
  friend bool operator<(const ProjectivePoint& a, const ProjectivePoint& b) { return a.coords_ < b.coords_; }

 private:
  ProjectivePoint() = default;
  std::vector<Integer> coords_;
};

/// Linear form sum_i c_i x_i with primitive coefficients.
class LinearForm {
 public:
  explicit LinearForm(std::vector<Integer> coeffs);
  /// The coordinate form x_i on P^n.
  static LinearForm coordinate(std::size_t n, std::size_t i);
  /// x_0 + ... + x_n.
  static LinearForm sum(std::size_t n);

  std::size_t size() const { return coeffs_.size(); }
  const Integer& operator[](std::size_t i) const { return coeffs_[i]; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }

  Integer evaluate(std::span<const Integer> x) const;
  Integer evaluate(const ProjectivePoint& p) const { return evaluate(std::span<const Integer>(p.coords())); }
  RowVectorX<Rational> row() const;

  bool proportional_to(const LinearForm& other) const;
  friend bool operator==(const LinearForm&, const LinearForm&) = default;

 private:
  std::vector<Integer> coeffs_;
};

/// Orbifold multiplicity m in {2, 3, ...} or infinity.
class Multiplicity {
 public:
  explicit Multiplicity(long m);
  static Multiplicity infinity() { return Multiplicity(); }

  bool is_infinite() const { return infinite_; }
  long value() const;
  std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }
  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;

 private:
  Multiplicity() : value_(0), infinite_(true) {}
  long value_;
  bool infinite_;
};

/// (P^n, sum_i (1 - 1/m_i) D_i) with D_i = {f_i = 0} hyperplanes, at most n + 2 of them.
class HyperplaneOrbifold {
 public:
  HyperplaneOrbifold(std::size_t n, std::vector<LinearForm> forms, std::vector<Multiplicity> multiplicities);

  /// The arrangement H of coordinate hyperplanes x_0..x_min(r,n), plus x_0+...+x_n when
  /// r = n + 1. `multiplicities` has r + 1 entries.
  static HyperplaneOrbifold standard(std::size_t n, std::vector<Multiplicity> multiplicities);
  static HyperplaneOrbifold standard(std::size_t n, std::span<const long> multiplicities);

  std::size_t dimension() const { return n_; }
  std::size_t component_count() const { return forms_.size(); }
  const std::vector<LinearForm>& forms() const { return forms_; }
  const std::vector<Multiplicity>& multiplicities() const { return multiplicities_; }
  const LinearForm& form(std::size_t i) const { return forms_[i]; }
  const Multiplicity& multiplicity(std::size_t i) const { return multiplicities_[i]; }

  bool is_standard() const;
  bool all_finite() const;
  /// Largest finite multiplicity, or 0 when there is none.
  long max_finite_multiplicity() const;

 private:
  std::size_t n_;
  std::vector<LinearForm> forms_;
  std::vector<Multiplicity> multiplicities_;
};

/// (P^1, (1 - 1/m) {x_0^2 - a x_1^2 = 0}) for a non-square integer a.
class QuadraticOrbifoldP1 {
 public:
  QuadraticOrbifoldP1(Integer a, long m);

  const Integer& a() const { return a_; }
  long m() const { return m_; }
  /// x_0^2 - a x_1^2.
  Integer norm(const Integer& x0, const Integer& x1) const { return x0 * x0 - a_ * x1 * x1; }

 private:
  Integer a_;
  long m_;
};

/// Invertible projective linear map x -> M x on P^n(Q).
class ProjectiveTransform {
 public:
  explicit ProjectiveTransform(RationalMatrix matrix);
  static ProjectiveTransform identity(std::size_t n);

  const RationalMatrix& matrix() const { return matrix_; }
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()) - 1; }
  ProjectiveTransform inverse() const;

 private:
  RationalMatrix matrix_;
};

/// True iff every subset of k <= n + 1 of the normals has rank k.
bool general_position_check(std::span<const LinearForm> forms);

/// Projective transformation taking D_i onto the standard hyperplane H_i.
/// Throws std::invalid_argument when the forms are not in general linear position.
ProjectiveTransform to_standard_form(const HyperplaneOrbifold& orbifold);

/// Image of a point, re-normalized to primitive coordinates.
ProjectivePoint apply_transform(const ProjectiveTransform& t, const ProjectivePoint& p);

/// The form g with g(T x) = f(x), i.e. the row f T^-1, made primitive.
LinearForm transport_form(const ProjectiveTransform& t, const LinearForm& f);

/// The orbifold carried along a transform: forms transported, multiplicities kept.
HyperplaneOrbifold transport(const ProjectiveTransform& t, const HyperplaneOrbifold& orbifold);

}  // namespace campana
