#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "multiarr/induction.hpp"

namespace multiarr {

enum class BraidKind { Full, Essential };

struct BraidModel {
  int ell = 2;
  BraidKind kind = BraidKind::Full;
};

struct MultiplicityPattern {
  enum class Kind { Constant, Mixed } kind = Kind::Constant;
  int m = 1;
  int q = 0;

  static MultiplicityPattern constant(int m) { return {Kind::Constant, m, 0}; }
  static MultiplicityPattern mixed(int m, int q) { return {Kind::Mixed, m, q}; }
};

/// x_i - x_j for 0-based coordinates i < j in dimension ell.
LinearForm braid_form(int ell, int i, int j);

/// B_ell with the pattern (m+q on x1-x_j, m elsewhere); the essential kind
/// is its essentialization in ell-1 variables.
Multiarrangement build(const BraidModel& model, const MultiplicityPattern& pattern);

/// ell-1 exponents of the essential arrangement.
ExponentMultiset expected_exponents_constant(int ell, int m);
ExponentMultiset expected_exponents_mixed(int ell, int m, int q);

/// Addition sequence replayed on top of its base.
struct CanonicalPlan {
  std::string base;                  // human-readable base description
  std::vector<LinearForm> additions;
  std::vector<int> round;            // 1-based round of each addition
};

/// Constant pattern: ell = 3 cycles x1-x2, x1-x3, x2-x3 from the simple arrangement;
/// ell > 3 runs m rounds of x1-x_ell, ..., x_{ell-1}-x_ell from (B_{ell-1}, m) x Phi_1.
/// Mixed pattern: q rounds of x1-x2, ..., x1-x_ell from (B_ell, m).
CanonicalPlan paper_order(int ell, const MultiplicityPattern& pattern);

/// Distinguished coordinate d, pairs away from d of multiplicity m, pairs
/// through d of multiplicity m+q or m+q+1 (extra of them carry the +1).
struct PatternClass {
  int ell = 0;   // number of coordinates of the classified arrangement
  int m = 0;
  int q = 0;
  int extra = 0;
  int distinguished = 0;
  std::vector<int> perm;  // relabel to the catalog state: d -> 0, +1 coordinates next
  bool degenerate = false;  // fewer than three coordinates: only the total is meaningful
  int total = 0;

  /// Number of mixed-round additions after (B_ell, m) that reach this state.
  int additions() const { return q * (ell - 1) + extra; }
};

/// Classifies a multiarrangement as a relabeled partial mixed braid state.
std::optional<PatternClass> classify_braid_pattern(const Multiarrangement& m);

/// Classifies the Euler restriction of m to H0; throws std::runtime_error on a mismatch.
PatternClass restriction_pattern_check(const Multiarrangement& m, std::size_t h0);

/// Catalog key such as "braid:4:2" or "mixed:3:2:2".
struct CatalogEntry {
  int ell = 2;
  MultiplicityPattern pattern;
  std::string key() const;
};

/// Throws std::invalid_argument on malformed keys or parameters.
CatalogEntry parse_catalog_key(const std::string& key);

/// Canonical-order certificates with shared sub-certificates. Restrictions of
/// rank at most 2 use the rank-2 base; larger ones are classified and served
/// by the matching partial mixed certificate.
class PaperOrderBuilder {
 public:
  PaperOrderBuilder();

  std::shared_ptr<const Certificate> constant(int ell, int m);
  /// (B_ell, m) followed by the first n mixed-round additions.
  std::shared_ptr<const Certificate> partial_mixed(int ell, int m, int n);
  std::shared_ptr<const Certificate> mixed(int ell, int m, int q);
  std::shared_ptr<const Certificate> entry(const CatalogEntry& e);

  std::optional<CertRef> certify_restriction(const Multiarrangement& r);

 private:
  SearchContext leaves_;
  std::map<std::pair<int, int>, std::shared_ptr<const Certificate>> constant_;
  std::map<std::tuple<int, int, int>, std::shared_ptr<const Certificate>> partial_;
};

}  // namespace multiarr
