#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "multiarr/poly.hpp"
#include "multiarr/scalar.hpp"

namespace multiarr {

/// Integer linear form in canonical shape: coprime entries, first nonzero
/// entry positive. Two forms define the same hyperplane iff they are equal.
class LinearForm {
 public:
  LinearForm() = default;

  /// Divides by the gcd and fixes the sign. Throws on the zero tuple.
  static LinearForm canonicalize(std::vector<long> raw);

  int dim() const { return static_cast<int>(coeffs_.size()); }
  long operator[](int i) const { return coeffs_[i]; }
  const std::vector<long>& coeffs() const { return coeffs_; }
  std::vector<Integer> integers() const;
  Poly poly() const;

  /// "x1-x2", "2*x1+x3-x4".
  std::string to_string() const;

  auto operator<=>(const LinearForm&) const = default;

 private:
  explicit LinearForm(std::vector<long> c) : coeffs_(std::move(c)) {}
  std::vector<long> coeffs_;
};

/// Central arrangement: an ordered list of distinct hyperplanes through 0.
class Arrangement {
 public:
  Arrangement() = default;
  Arrangement(int dim, std::vector<LinearForm> forms);

  static Arrangement empty(int dim) { return Arrangement(dim, {}); }

  int dim() const { return dim_; }
  std::size_t size() const { return forms_.size(); }
  bool empty() const { return forms_.empty(); }
  const LinearForm& operator[](std::size_t i) const { return forms_[i]; }
  const std::vector<LinearForm>& forms() const { return forms_; }
  std::optional<std::size_t> index_of(const LinearForm& f) const;

  /// Codimension of the center.
  int rank() const;

 private:
  int dim_ = 0;
  std::vector<LinearForm> forms_;
};

/// Arrangement plus a nonnegative multiplicity per hyperplane.
class Multiarrangement {
 public:
  Multiarrangement() = default;
  Multiarrangement(Arrangement arrangement, std::vector<int> multiplicity);

  static Multiarrangement simple(Arrangement arrangement);
  static Multiarrangement empty(int dim) { return {Arrangement::empty(dim), {}}; }
  /// Convenience constructor from raw integer tuples; every tuple is canonicalized.
  static Multiarrangement from_forms(int dim, const std::vector<std::vector<long>>& forms, std::vector<int> mult);

  const Arrangement& arrangement() const { return arr_; }
  const std::vector<int>& multiplicity() const { return mult_; }
  int dim() const { return arr_.dim(); }
  std::size_t size() const { return arr_.size(); }
  const LinearForm& form(std::size_t i) const { return arr_[i]; }
  int multiplicity(std::size_t i) const { return mult_[i]; }
  /// 0 for hyperplanes not in the arrangement.
  int multiplicity_of(const LinearForm& f) const;

  /// |nu|.
  int order() const;
  int rank() const { return arr_.rank(); }
  bool is_simple() const;

  /// Drops hyperplanes of multiplicity zero.
  Multiarrangement normalized() const;
  /// Copy with the multiplicity of `f` set to `value`; a new hyperplane is
  /// appended when absent and a hyperplane reaching 0 is dropped.
  Multiarrangement with_multiplicity(const LinearForm& f, int value) const;
  /// Hyperplanes sorted by canonical form, zero multiplicities dropped.
  Multiarrangement sorted() const;

  bool is_submultiarrangement_of(const Multiarrangement& other) const;

  /// Multiset equality: same dimension and same hyperplanes with the same
  /// positive multiplicities, regardless of listing order.
  bool operator==(const Multiarrangement& other) const;

  /// "[x1-x2^2, x1-x3^1]" style summary.
  std::string to_string() const;

 private:
  Arrangement arr_;
  std::vector<int> mult_;
};

/// A flat of the intersection lattice.
struct Flat {
  std::vector<std::size_t> containing;           // closed: every hyperplane containing the subspace
  int rank = 0;                                  // codimension of the subspace
  std::vector<std::vector<Scalar>> basis;        // basis vectors of the subspace
};

/// Flat spanned by the intersection of the given hyperplanes (closure taken).
Flat flat_of(const Arrangement& a, const std::vector<std::size_t>& hyperplanes);
/// Distinct codimension-2 flats H_i cap H_j, in order of first occurrence.
std::vector<Flat> rank2_flats(const Arrangement& a);

/// (A_X, nu_X) in the same ambient space. Throws if X is not a flat of M.
Multiarrangement localization(const Multiarrangement& m, const Flat& x);

/// Restriction of a simple arrangement to H0, in coordinates of H0.
struct SimpleRestriction {
  Arrangement restricted;                           // ambient dimension dim - 1
  std::vector<std::vector<std::size_t>> preimages;  // per restricted hyperplane: A_Y, including H0
  int dropped_coordinate = 0;                       // coordinate solved for on H0
};

/// H0 is parametrized by dropping the last coordinate that alpha_0 involves.
SimpleRestriction restrict_simple(const Arrangement& a, std::size_t h0);

/// Essential multiarrangement in r(A) variables plus the center dimension.
struct Essentialization {
  Multiarrangement essential;
  int center_dim = 0;
};

/// Quotient by the center. The new coordinates are the pivot coordinates of
/// the reduced row echelon basis of the span of the forms.
Essentialization essentialize(const Multiarrangement& m);

/// Rewrites every form in the coordinates of `basis`, a list of independent
/// integer vectors spanning (at least) the span of the forms. Form f becomes
/// the canonicalized coordinate tuple c with f = sum c_i basis_i.
Multiarrangement change_coordinates(const Multiarrangement& m, const std::vector<std::vector<long>>& basis);

/// Q(A, nu) = prod alpha_H^{nu(H)}.
Poly defining_polynomial(const Multiarrangement& m);

/// Coordinate relabeling: coordinate i becomes coordinate perm[i].
Multiarrangement relabel(const Multiarrangement& m, const std::vector<int>& perm);
LinearForm relabel(const LinearForm& f, const std::vector<int>& perm);

/// Canonical representative under coordinate permutations: the relabeling
/// whose sorted (form, multiplicity) list is lexicographically minimal.
/// With `permute` false (or dimension above `max_perm_dim`) the identity is used.
struct CanonicalForm {
  std::string key;
  std::vector<int> perm;  // relabel(m, perm) is the representative
  Multiarrangement representative;
};
CanonicalForm canonical_form(const Multiarrangement& m, bool permute = true, int max_perm_dim = 6);

/// {"dim": l, "forms": [[...], ...], "mult": [...]}
nlohmann::json to_json(const Multiarrangement& m);
Multiarrangement multiarrangement_from_json(const nlohmann::json& j);

}  // namespace multiarr
