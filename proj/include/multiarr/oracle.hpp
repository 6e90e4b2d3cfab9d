#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "multiarr/arrangement.hpp"
#include "multiarr/poly.hpp"

namespace multiarr {

/// Sorted multiset of nonnegative integers.
class ExponentMultiset {
 public:
  ExponentMultiset() = default;
  ExponentMultiset(std::initializer_list<int> values);
  explicit ExponentMultiset(std::vector<int> values);

  const std::vector<int>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  int sum() const;
  /// Number of entries equal to v.
  int count(int v) const;

  /// True iff `sub` is a sub-multiset of *this.
  bool includes(const ExponentMultiset& sub) const;
  /// Multiset union (sum of multiplicities).
  ExponentMultiset operator+(const ExponentMultiset& other) const;
  /// Multiset difference, or nothing when `sub` is not included.
  std::optional<ExponentMultiset> minus(const ExponentMultiset& sub) const;

  ExponentMultiset with_zeros(int n) const;
  /// Removes n zeros; throws if fewer are present.
  ExponentMultiset without_zeros(int n) const;

  /// "1,2,2"; empty multiset prints as "-".
  std::string to_string() const;

  bool operator==(const ExponentMultiset&) const = default;

 private:
  std::vector<int> values_;
};

/// Degree-p part of D(A, nu).
struct GradedPiece {
  int degree = 0;
  std::vector<Derivation> basis;
};

/// Basis of D(A, nu)_p as the kernel of the stacked divisibility conditions
/// alpha_H^{nu(H)} | theta(alpha_H) on l-tuples of degree-p polynomials.
GradedPiece graded_piece(const Multiarrangement& m, int p);

/// dim D(A, nu)_p together with the piece itself.
std::pair<std::size_t, GradedPiece> graded_dimension(const Multiarrangement& m, int p);

struct FreenessWitness {
  std::vector<Derivation> generators;
  ExponentMultiset exponents;
  Scalar saito_constant;  // det(generators) = saito_constant * Q(A, nu)
};

struct NotFreeCertificate {
  std::vector<int> greedy_degrees;  // sums to more than |nu|
  std::vector<Derivation> selected;
};

using OracleResult = std::variant<FreenessWitness, NotFreeCertificate>;

/// Ziegler-Saito decision procedure. Derivations are selected greedily by
/// ascending degree whenever they raise the rank over the fraction field;
/// the selected degrees are the exponents when they sum to |nu|.
/// Throws std::runtime_error if degree_cap runs out first.
OracleResult oracle_exponents(const Multiarrangement& m, std::optional<int> degree_cap = std::nullopt);

/// Exponents when free, nothing otherwise.
std::optional<ExponentMultiset> free_exponents(const Multiarrangement& m);

/// Exponents of a multiarrangement of rank <= 2 (always free), computed in
/// the essentialization and padded with zeros. Cached per canonical form.
ExponentMultiset rank2_exponents(const Multiarrangement& m);

struct WitnessCheck {
  bool ok = false;
  std::string reason;     // empty when ok
  Scalar saito_constant;  // recomputed determinant ratio when available
};

/// Re-checks membership, the degree sum and det = c * Q with c != 0.
WitnessCheck verify_witness(const Multiarrangement& m, const FreenessWitness& w);

/// True iff alpha^power divides theta(alpha) for the given form.
bool satisfies_condition(const Derivation& theta, const LinearForm& alpha, int power);

nlohmann::json to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j, int dim);
nlohmann::json to_json(const FreenessWitness& w);
FreenessWitness witness_from_json(const nlohmann::json& j, int dim);

}  // namespace multiarr
