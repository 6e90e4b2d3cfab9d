#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "multiarr/linalg.hpp"
#include "multiarr/scalar.hpp"

namespace multiarr {

/// Exponent vector x_1^{e_1} ... x_l^{e_l}.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);

  static Monomial one(int dim) { return Monomial(std::vector<int>(dim, 0)); }
  static Monomial variable(int dim, int index);

  int dim() const { return static_cast<int>(exps_.size()); }
  int degree() const { return degree_; }
  int operator[](int i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& other) const;

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// Graded lexicographic order, largest first: higher total degree wins, then
/// the larger exponent of x_1, x_2, ...
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// All monomials of total degree `degree` in `dim` variables, grlex-descending.
/// This enumeration fixes the coordinate order of coefficient vectors.
std::vector<Monomial> monomials_of_degree(int dim, int degree);

/// Sparse multivariate polynomial with rational coefficients.
class Poly {
 public:
  using Terms = std::map<Monomial, Scalar, GrlexGreater>;

  Poly() = default;
  explicit Poly(int dim) : dim_(dim) {}

  static Poly constant(int dim, const Scalar& c);
  static Poly variable(int dim, int index);
  /// The linear form sum coeffs[i] x_i.
  static Poly linear(std::span<const Integer> coeffs);
  static Poly linear(std::span<const long> coeffs);
  static Poly from_coefficients(int dim, int degree, std::span<const Scalar> coeffs);

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Total degree of the leading term; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  Scalar coefficient(const Monomial& m) const;
  /// Coefficients against monomials_of_degree(dim, degree); terms of other
  /// degrees are ignored.
  std::vector<Scalar> coefficients(int degree) const;

  void add_term(const Monomial& m, const Scalar& c);

  Poly operator+(const Poly& other) const;
  Poly operator-(const Poly& other) const;
  Poly operator-() const;
  Poly operator*(const Poly& other) const;
  Poly scaled(const Scalar& c) const;
  Poly pow(int e) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);

  Poly derivative(int index) const;
  Scalar evaluate(std::span<const Scalar> point) const;

  /// Exact quotient by a nonzero linear form, or nothing if it does not divide.
  std::optional<Poly> divide_linear(std::span<const Integer> alpha) const;

  bool operator==(const Poly& other) const { return dim_ == other.dim_ && terms_ == other.terms_; }

  /// Grlex-ordered text such as "x1^2 - 2*x1*x2 + x2^2".
  std::string to_string() const;

 private:
  void check_dim(const Poly& other) const;

  int dim_ = 0;
  Terms terms_;
};

/// theta = sum f_i D_i with D_i the partial derivative in x_i.
class Derivation {
 public:
  Derivation() = default;
  explicit Derivation(std::vector<Poly> coefficients);

  static Derivation zero(int dim);
  /// Constant-coefficient derivation sum c_i D_i.
  static Derivation constant(std::span<const Scalar> c);
  /// Derivation of polynomial degree `degree` with coefficients laid out as l
  /// consecutive blocks over monomials_of_degree(dim, degree).
  static Derivation from_coefficients(int dim, int degree, std::span<const Scalar> coeffs);

  int dim() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<Poly>& coefficients() const { return coeffs_; }
  const Poly& operator[](int i) const { return coeffs_[i]; }

  bool is_zero() const;
  /// Common degree of the nonzero coefficients, or nothing if they disagree,
  /// some coefficient is inhomogeneous, or theta is zero.
  std::optional<int> polynomial_degree() const;

  Derivation operator+(const Derivation& other) const;
  Derivation scaled(const Scalar& c) const;
  Derivation multiplied(const Poly& f) const;

  bool operator==(const Derivation& other) const { return coeffs_ == other.coeffs_; }

 private:
  std::vector<Poly> coeffs_;
};

/// theta(f) = sum f_i * df/dx_i.
Poly apply_derivation(const Derivation& theta, const Poly& f);

/// Linear functionals on the coefficient space of S_degree (coordinates as in
/// monomials_of_degree) whose common kernel is {g : alpha^power divides g}.
/// Rows are produced by substituting the coordinate y = alpha for the last
/// variable that alpha involves and reading off the coefficients of y^j, j < power.
Matrix divisibility_conditions(int dim, int degree, std::span<const Integer> alpha, int power);

/// Determinant of a square matrix of polynomials, by cofactor expansion over
/// column subsets. Intended for the small sizes arising here (at most ~8).
Poly determinant(const std::vector<std::vector<Poly>>& m);

}  // namespace multiarr
