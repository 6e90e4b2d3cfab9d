#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "multiarr/arrangement.hpp"
#include "multiarr/oracle.hpp"

namespace multiarr {

enum class EulerPath { Fast1, Fast2, Fast3, General };

std::string to_string(EulerPath p);
EulerPath euler_path_from_string(const std::string& s);

/// Which basis of the localized span is used to put alpha_0 on a coordinate.
enum class Completion { FirstOther, LastOther };

/// Copy with the multiplicity of hyperplane h0 lowered by one.
/// Throws std::invalid_argument when nu(h0) is zero or h0 is out of range.
Multiarrangement deletion(const Multiarrangement& m, std::size_t h0);

/// nu*(Y) from the rank-2 derivation module of the localization at Y.
int euler_general(const Multiarrangement& m, std::size_t h0, const Flat& y,
                  Completion completion = Completion::FirstOther);

/// Local data at a codimension-2 flat through H0.
struct EulerData {
  std::vector<std::size_t> flat;  // hyperplane indices of A_Y in the original
  int k = 0;                      // |A_Y|
  int nu0 = 0;                    // nu(H0)
  int nu1 = 0;                    // max of nu over A_Y minus H0
  int nu_x = 0;                   // |nu_Y|
  int nu_star = 0;
  EulerPath path = EulerPath::General;

  bool operator==(const EulerData&) const = default;
};

struct FastPathValue {
  int value = 0;
  EulerPath path = EulerPath::General;
};

/// Closed-form value when one of the three local rules applies.
std::optional<FastPathValue> euler_fast_path(const Multiarrangement& m, std::size_t h0, const Flat& y);

struct Triple {
  Multiarrangement original;
  std::size_t distinguished = 0;  // index of H0 in original (normalized)
  Multiarrangement deleted;
  Multiarrangement restricted;     // ambient dimension dim - 1
  std::vector<EulerData> provenance;  // aligned with restricted's hyperplanes
  int dropped_coordinate = 0;
};

struct RestrictionOptions {
  bool force_general = false;
};

/// Full triple for H0: deletion plus the Euler restriction (A'', nu*), each
/// nu*(Y) taken from a fast path when one applies and from euler_general
/// otherwise. The input is normalized first; h0 indexes the input listing.
Triple restriction(const Multiarrangement& m, std::size_t h0, RestrictionOptions opts = {});

/// exp'' plus one more than the leftover value of exp', or nothing when
/// exp'' is not contained in exp'. Throws on a size mismatch.
std::optional<ExponentMultiset> addition_deletion_infer(const ExponentMultiset& exp_deleted,
                                                         const ExponentMultiset& exp_restricted);

nlohmann::json to_json(const EulerData& d, const Multiarrangement& original);
nlohmann::json to_json(const Triple& t);

}  // namespace multiarr
