#include "multiarr/euler.hpp"

#include <algorithm>
#include <stdexcept>

namespace multiarr {

std::string to_string(EulerPath p) {
  switch (p) {
    case EulerPath::Fast1: return "fast1";
    case EulerPath::Fast2: return "fast2";
    case EulerPath::Fast3: return "fast3";
    case EulerPath::General: return "general";
  }
  return "general";
}

EulerPath euler_path_from_string(const std::string& s) {
  if (s == "fast1") return EulerPath::Fast1;
  if (s == "fast2") return EulerPath::Fast2;
  if (s == "fast3") return EulerPath::Fast3;
  if (s == "general") return EulerPath::General;
  throw std::invalid_argument("unknown euler path: " + s);
}

Multiarrangement deletion(const Multiarrangement& m, std::size_t h0) {
  if (h0 >= m.size()) throw std::out_of_range("deletion: hyperplane index");
  if (m.multiplicity(h0) == 0) throw std::invalid_argument("deletion: multiplicity of H0 is zero");
  return m.with_multiplicity(m.form(h0), m.multiplicity(h0) - 1);
}

namespace {

void check_flat(const Multiarrangement& m, std::size_t h0, const Flat& y) {
  if (h0 >= m.size()) throw std::out_of_range("euler: hyperplane index");
  if (y.rank != 2) throw std::invalid_argument("euler: flat is not of rank 2");
  if (!std::binary_search(y.containing.begin(), y.containing.end(), h0))
    throw std::invalid_argument("euler: H0 does not contain the flat");
}

bool divisible_by_first_variable(const Derivation& theta) {
  for (const auto& c : theta.coefficients())
    for (const auto& [mono, coef] : c.terms())
      if (mono.exponents()[0] == 0) return false;
  return true;
}

}  // namespace

int euler_general(const Multiarrangement& m, std::size_t h0, const Flat& y, Completion completion) {
  check_flat(m, h0, y);
  if (y.containing.size() < 2) return 0;

  const Multiarrangement local = localization(m, y);
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < local.size(); ++i)
    if (y.containing[i] != h0) others.push_back(i);
  const LinearForm& alpha0 = m.form(h0);
  const LinearForm& beta = local.form(completion == Completion::FirstOther ? others.front() : others.back());

  // In the coordinates (alpha0, beta) the form alpha0 is the first variable.
  const Multiarrangement plane = change_coordinates(local, {alpha0.coeffs(), beta.coeffs()});
  const int total = plane.order();

  int d1 = 0;
  GradedPiece piece = graded_piece(plane, 0);
  while (piece.basis.empty()) {
    ++d1;
    if (d1 > total) throw std::logic_error("euler_general: rank-2 module without generators");
    piece = graded_piece(plane, d1);
  }
  const int d2 = total - d1;
  if (d1 >= d2) return d1;
  const bool outside = std::any_of(piece.basis.begin(), piece.basis.end(),
                                   [](const Derivation& t) { return !divisible_by_first_variable(t); });
  return outside ? d1 : d2;
}

namespace {

EulerData local_data(const Multiarrangement& m, std::size_t h0, const Flat& y) {
  EulerData d;
  d.flat = y.containing;
  d.k = static_cast<int>(y.containing.size());
  d.nu0 = m.multiplicity(h0);
  for (std::size_t i : y.containing) {
    d.nu_x += m.multiplicity(i);
    if (i != h0) d.nu1 = std::max(d.nu1, m.multiplicity(i));
  }
  return d;
}

std::optional<FastPathValue> fast_path(const EulerData& d) {
  if (d.k == 3 && 2 * d.nu0 <= d.nu_x && 2 * d.nu1 <= d.nu_x) return FastPathValue{d.nu_x / 2, EulerPath::Fast1};
  if (d.k == 2) return FastPathValue{d.nu1, EulerPath::Fast2};
  if (d.k >= 2 && 2 * d.nu1 >= d.nu_x - 1) return FastPathValue{d.nu1, EulerPath::Fast3};
  return std::nullopt;
}

}  // namespace

std::optional<FastPathValue> euler_fast_path(const Multiarrangement& m, std::size_t h0, const Flat& y) {
  check_flat(m, h0, y);
  return fast_path(local_data(m, h0, y));
}

Triple restriction(const Multiarrangement& input, std::size_t h0, RestrictionOptions opts) {
  if (h0 >= input.size()) throw std::out_of_range("restriction: hyperplane index");
  if (input.multiplicity(h0) == 0) throw std::invalid_argument("restriction: multiplicity of H0 is zero");

  Triple t;
  t.original = input.normalized();
  t.distinguished = *t.original.arrangement().index_of(input.form(h0));
  t.deleted = deletion(t.original, t.distinguished);

  const Arrangement& a = t.original.arrangement();
  const SimpleRestriction sr = restrict_simple(a, t.distinguished);
  t.dropped_coordinate = sr.dropped_coordinate;
  std::vector<int> values;
  for (const auto& pre : sr.preimages) {
    const Flat y = flat_of(a, pre);
    EulerData d = local_data(t.original, t.distinguished, y);
    const auto fast = opts.force_general ? std::nullopt : fast_path(d);
    if (fast) {
      d.nu_star = fast->value;
      d.path = fast->path;
    } else {
      d.nu_star = euler_general(t.original, t.distinguished, y);
      d.path = EulerPath::General;
    }
    values.push_back(d.nu_star);
    t.provenance.push_back(std::move(d));
  }
  t.restricted = Multiarrangement(sr.restricted, std::move(values));
  return t;
}

std::optional<ExponentMultiset> addition_deletion_infer(const ExponentMultiset& exp_deleted,
                                                         const ExponentMultiset& exp_restricted) {
  if (exp_deleted.size() != exp_restricted.size() + 1)
    throw std::invalid_argument("addition_deletion_infer: sizes must differ by one");
  const auto rest = exp_deleted.minus(exp_restricted);
  if (!rest) return std::nullopt;
  return exp_restricted + ExponentMultiset{rest->values().front() + 1};
}

nlohmann::json to_json(const EulerData& d, const Multiarrangement& original) {
  nlohmann::json flat = nlohmann::json::array();
  for (std::size_t i : d.flat) flat.push_back(original.form(i).coeffs());
  return {{"flat", flat}, {"k", d.k},         {"nu0", d.nu0},           {"nu1", d.nu1},
          {"nu_X", d.nu_x}, {"nu_star", d.nu_star}, {"euler_path", to_string(d.path)}};
}

nlohmann::json to_json(const Triple& t) {
  nlohmann::json prov = nlohmann::json::array();
  for (std::size_t i = 0; i < t.provenance.size(); ++i) {
    nlohmann::json e = to_json(t.provenance[i], t.original);
    e["restricted_form"] = t.restricted.form(i).coeffs();
    prov.push_back(std::move(e));
  }
  return {{"original", to_json(t.original)},
          {"H0", t.original.form(t.distinguished).coeffs()},
          {"deleted", to_json(t.deleted)},
          {"restricted", to_json(t.restricted)},
          {"dropped_coordinate", t.dropped_coordinate},
          {"provenance", prov}};
}

}  // namespace multiarr
