#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "multiarr/arrangement.hpp"
#include "multiarr/euler.hpp"
#include "multiarr/oracle.hpp"

namespace multiarr {

struct Certificate;

/// A certificate for relabel(m, perm) stands for m itself.
struct CertRef {
  std::shared_ptr<const Certificate> cert;
  std::vector<int> perm;
};

enum class BaseKind { Empty, Rank2, Product, Catalog };

std::string to_string(BaseKind k);

struct ProductFactor {
  std::vector<int> block;  // ambient coordinates, ascending
  CertRef ref;             // certifies the factor written in the block's coordinates
};

struct Base {
  BaseKind kind = BaseKind::Empty;
  Multiarrangement start;
  std::vector<ProductFactor> factors;  // Product
  std::string catalog_key;             // Catalog
  CertRef catalog;                     // Catalog

  static Base empty(int dim);
  static Base rank2(const Multiarrangement& m);
  static Base product(int dim, std::vector<ProductFactor> factors);
  static Base from_catalog(std::string key, const Multiarrangement& start, CertRef ref);
};

struct InductionStep {
  LinearForm form;
  ExponentMultiset exp_before;
  ExponentMultiset exp_restricted;
  ExponentMultiset exp_after;
  std::vector<EulerData> euler;  // flats indexed in the state after the addition
  Multiarrangement restricted;
  CertRef restriction;
};

struct Certificate {
  Multiarrangement target;
  Base base;
  std::vector<InductionStep> steps;
  ExponentMultiset exponents;  // as recorded; verify recomputes
};

/// Failure of a certificate check. step is 1-based, 0 for the base.
class VerificationError : public std::runtime_error {
 public:
  VerificationError(int step, const std::string& what);
  int step() const { return step_; }

 private:
  int step_;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded() : std::runtime_error("search budget exceeded") {}
};

/// Recursive re-check with a cache over shared sub-certificates.
class Verifier {
 public:
  ExponentMultiset verify(const Certificate& cert);

 private:
  ExponentMultiset verify_shared(const std::shared_ptr<const Certificate>& cert);
  ExponentMultiset verify_ref(const CertRef& ref, const Multiarrangement& m, const std::string& what);
  std::map<const Certificate*, std::pair<std::shared_ptr<const Certificate>, ExponentMultiset>> cache_;
};

/// Re-checks the base and every step; returns the exponents of the target.
/// Throws VerificationError.
ExponentMultiset verify(const Certificate& cert);

struct ProductSplit {
  std::vector<std::vector<int>> blocks;     // coordinate blocks, ordered by first coordinate
  std::vector<Multiarrangement> factors;    // written in the block coordinates
};

/// Finest coordinate partition with every form supported on a single block.
ProductSplit product_split(const Multiarrangement& m);

/// Forms of m supported on `block`, in the block's coordinates.
Multiarrangement project_to_block(const Multiarrangement& m, const std::vector<int>& block);

using RestrictionCertifier = std::function<std::optional<CertRef>(const Multiarrangement&)>;

/// Builds a certificate by adding `additions` one at a time to the base.
/// Each restriction is certified by `certify`. Throws VerificationError
/// naming the first step that fails.
std::shared_ptr<const Certificate> replay(Base base, const std::vector<LinearForm>& additions,
                                          const RestrictionCertifier& certify);

enum class Strategy { PaperOrder, Greedy, Exhaustive };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct SearchOptions {
  Strategy strategy = Strategy::Greedy;
  bool permute = true;               // canonicalize memo keys up to coordinate permutation
  std::optional<long> budget;        // maximal number of attempted additions
};

/// Memo and budget shared by one search and all of its recursive calls.
class SearchContext {
 public:
  explicit SearchContext(SearchOptions options = {}) : options_(options) {}

  const SearchOptions& options() const { return options_; }
  long spent() const { return spent_; }
  std::size_t memo_size() const { return memo_.size(); }
  void clear_memo();

  /// Certificate reference for m, searched (and memoized) when not known.
  std::optional<CertRef> certify(const Multiarrangement& m);

 private:
  void charge();
  std::shared_ptr<const Certificate> build(const Multiarrangement& canonical);
  std::shared_ptr<const Certificate> bottom_up(const Multiarrangement& target);
  bool extend(const Multiarrangement& target, Multiarrangement& state, ExponentMultiset& exps,
              std::vector<InductionStep>& steps, std::set<std::string>& dead);

  SearchOptions options_;
  long spent_ = 0;
  std::map<std::string, std::shared_ptr<const Certificate>> memo_;
  std::set<std::string> failed_;
};

/// Greedy or exhaustive search. Nothing means inconclusive.
/// Throws BudgetExceeded when the budget runs out.
std::shared_ptr<const Certificate> search(const Multiarrangement& m, SearchContext& ctx);

enum class TableFormat { Markdown, Tsv, Json };

TableFormat table_format_from_string(const std::string& s);

/// One row per step. Exponent columns drop the zeros coming from the center
/// (of the target for the before column, of the restriction for the other).
/// The JSON format is the full certificate.
std::string emit_table(const Certificate& cert, TableFormat format);

nlohmann::json to_json(const Certificate& cert);
std::shared_ptr<const Certificate> certificate_from_json(const nlohmann::json& j);

}  // namespace multiarr
