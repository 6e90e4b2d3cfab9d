#include "multiarr/braid.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace multiarr {

LinearForm braid_form(int ell, int i, int j) {
  std::vector<long> f(ell, 0);
  f[i] = 1;
  f[j] = -1;
  return LinearForm::canonicalize(std::move(f));
}

Multiarrangement build(const BraidModel& model, const MultiplicityPattern& p) {
  if (model.ell < 2) throw std::invalid_argument("braid: ell must be at least 2");
  if (p.m < 1) throw std::invalid_argument("braid: m must be at least 1");
  if (p.kind == MultiplicityPattern::Kind::Mixed && p.q < 0) throw std::invalid_argument("braid: q must be nonnegative");
  std::vector<LinearForm> forms;
  std::vector<int> mult;
  for (int i = 0; i < model.ell; ++i)
    for (int j = i + 1; j < model.ell; ++j) {
      forms.push_back(braid_form(model.ell, i, j));
      mult.push_back(i == 0 && p.kind == MultiplicityPattern::Kind::Mixed ? p.m + p.q : p.m);
    }
  Multiarrangement full(Arrangement(model.ell, std::move(forms)), std::move(mult));
  if (model.kind == BraidKind::Full) return full;
  return essentialize(full).essential;
}

ExponentMultiset expected_exponents_constant(int ell, int m) { return expected_exponents_mixed(ell, m, 0); }

ExponentMultiset expected_exponents_mixed(int ell, int m, int q) {
  if (ell < 2 || m < 1 || q < 0) throw std::invalid_argument("expected exponents: invalid parameters");
  std::vector<int> v;
  for (int k = 1; k <= ell - 1; ++k) v.push_back(m % 2 == 0 ? m * ell / 2 + q : (m - 1) * ell / 2 + k + q);
  return ExponentMultiset(std::move(v));
}

CanonicalPlan paper_order(int ell, const MultiplicityPattern& p) {
  if (ell < 2 || p.m < 1) throw std::invalid_argument("paper_order: invalid parameters");
  CanonicalPlan plan;
  if (p.kind == MultiplicityPattern::Kind::Mixed) {
    plan.base = "braid:" + std::to_string(ell) + ":" + std::to_string(p.m);
    for (int r = 1; r <= p.q; ++r)
      for (int j = 1; j < ell; ++j) {
        plan.additions.push_back(braid_form(ell, 0, j));
        plan.round.push_back(r);
      }
    return plan;
  }
  if (ell == 2) {
    plan.base = "rank-2 base";
    return plan;
  }
  if (ell == 3) {
    plan.base = "simple arrangement (rank-2 base)";
    for (int r = 1; r < p.m; ++r)
      for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
        plan.additions.push_back(braid_form(3, i, j));
        plan.round.push_back(r);
      }
    return plan;
  }
  plan.base = "braid:" + std::to_string(ell - 1) + ":" + std::to_string(p.m) + " x empty 1-arrangement";
  for (int r = 1; r <= p.m; ++r)
    for (int i = 0; i < ell - 1; ++i) {
      plan.additions.push_back(braid_form(ell, i, ell - 1));
      plan.round.push_back(r);
    }
  return plan;
}

namespace {

/// (i, j) with form x_i - x_j, or nothing.
std::optional<std::pair<int, int>> as_difference(const LinearForm& f) {
  int plus = -1, minus = -1;
  for (int c = 0; c < f.dim(); ++c) {
    if (f[c] == 0) continue;
    if (f[c] == 1 && plus < 0) plus = c;
    else if (f[c] == -1 && minus < 0) minus = c;
    else return std::nullopt;
  }
  if (plus < 0 || minus < 0) return std::nullopt;
  return std::pair{std::min(plus, minus), std::max(plus, minus)};
}

}  // namespace

std::optional<PatternClass> classify_braid_pattern(const Multiarrangement& input) {
  const Multiarrangement m = input.normalized();
  const int n = m.dim();
  PatternClass c;
  c.ell = n;
  c.total = m.order();
  if (n < 3) {
    if (m.size() > 1) return std::nullopt;
    if (m.size() == 1 && !as_difference(m.form(0))) return std::nullopt;
    c.degenerate = true;
    c.perm.resize(n);
    std::iota(c.perm.begin(), c.perm.end(), 0);
    return c;
  }

  std::vector<std::vector<int>> value(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto ij = as_difference(m.form(i));
    if (!ij) return std::nullopt;
    value[ij->first][ij->second] = value[ij->second][ij->first] = m.multiplicity(i);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (value[a][b] == 0) return std::nullopt;

  for (int d = 0; d < n; ++d) {
    std::optional<int> away;
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = a + 1; b < n && ok; ++b) {
        if (a == d || b == d) continue;
        if (!away) away = value[a][b];
        ok = *away == value[a][b];
      }
    if (!ok) continue;
    std::vector<int> through;
    for (int a = 0; a < n; ++a)
      if (a != d) through.push_back(value[a][d]);
    const int lo = *std::min_element(through.begin(), through.end());
    const int hi = *std::max_element(through.begin(), through.end());
    // With three coordinates there is a single pair away from d.
    const int base_m = away.value_or(lo);
    if (hi - lo > 1 || lo < base_m) continue;

    c.distinguished = d;
    c.m = base_m;
    c.q = lo - base_m;
    c.extra = hi > lo ? static_cast<int>(std::count(through.begin(), through.end(), hi)) : 0;
    c.perm.assign(n, 0);
    c.perm[d] = 0;
    int next = 1;
    for (int a = 0; a < n; ++a)
      if (a != d && value[a][d] == hi && hi > lo) c.perm[a] = next++;
    for (int a = 0; a < n; ++a)
      if (a != d && !(value[a][d] == hi && hi > lo)) c.perm[a] = next++;
    return c;
  }
  return std::nullopt;
}

PatternClass restriction_pattern_check(const Multiarrangement& m, std::size_t h0) {
  const Triple t = restriction(m, h0);
  auto c = classify_braid_pattern(t.restricted);
  if (!c) throw std::runtime_error("restriction is not a mixed braid pattern: " + t.restricted.to_string());
  return *c;
}

std::string CatalogEntry::key() const {
  std::ostringstream os;
  if (pattern.kind == MultiplicityPattern::Kind::Mixed)
    os << "mixed:" << ell << ":" << pattern.m << ":" << pattern.q;
  else
    os << "braid:" << ell << ":" << pattern.m;
  return os.str();
}

CatalogEntry parse_catalog_key(const std::string& key) {
  std::vector<std::string> parts;
  std::stringstream ss(key);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument("catalog key: not a number: " + s);
    return v;
  };
  CatalogEntry e;
  if (parts.size() == 3 && parts[0] == "braid") {
    e.ell = number(parts[1]);
    e.pattern = MultiplicityPattern::constant(number(parts[2]));
  } else if (parts.size() == 4 && parts[0] == "mixed") {
    e.ell = number(parts[1]);
    e.pattern = MultiplicityPattern::mixed(number(parts[2]), number(parts[3]));
  } else {
    throw std::invalid_argument("catalog key must be braid:<ell>:<m> or mixed:<ell>:<m>:<q>: " + key);
  }
  if (e.ell < 2 || e.pattern.m < 1 || e.pattern.q < 0) throw std::invalid_argument("catalog key: parameters out of range: " + key);
  return e;
}

PaperOrderBuilder::PaperOrderBuilder() : leaves_(SearchOptions{Strategy::Greedy, true, std::nullopt}) {}

std::optional<CertRef> PaperOrderBuilder::certify_restriction(const Multiarrangement& r) {
  if (r.rank() <= 2) return leaves_.certify(r);
  auto c = classify_braid_pattern(r);
  if (!c || c->degenerate) return std::nullopt;
  return CertRef{partial_mixed(c->ell, c->m, c->additions()), c->perm};
}

std::shared_ptr<const Certificate> PaperOrderBuilder::constant(int ell, int m) {
  if (auto it = constant_.find({ell, m}); it != constant_.end()) return it->second;
  const CanonicalPlan plan = paper_order(ell, MultiplicityPattern::constant(m));
  const RestrictionCertifier certify = [this](const Multiarrangement& r) { return certify_restriction(r); };
  Base base;
  if (ell == 2) {
    base = Base::rank2(build({2, BraidKind::Full}, MultiplicityPattern::constant(m)));
  } else if (ell == 3) {
    base = Base::rank2(build({3, BraidKind::Full}, MultiplicityPattern::constant(1)));
  } else {
    std::vector<int> block(ell - 1);
    std::iota(block.begin(), block.end(), 0);
    const std::vector<int> same = block;
    auto phi = leaves_.certify(Multiarrangement::empty(1));
    base = Base::product(ell, {{block, {constant(ell - 1, m), same}}, {{ell - 1}, *phi}});
  }
  auto cert = replay(std::move(base), plan.additions, certify);
  constant_.emplace(std::pair{ell, m}, cert);
  return cert;
}

std::shared_ptr<const Certificate> PaperOrderBuilder::partial_mixed(int ell, int m, int n) {
  if (n == 0) return constant(ell, m);
  if (auto it = partial_.find({ell, m, n}); it != partial_.end()) return it->second;
  const CatalogEntry start{ell, MultiplicityPattern::constant(m)};
  auto c = constant(ell, m);
  std::vector<int> id(ell);
  std::iota(id.begin(), id.end(), 0);
  std::vector<LinearForm> additions;
  for (int s = 0; s < n; ++s) additions.push_back(braid_form(ell, 0, 1 + s % (ell - 1)));
  const RestrictionCertifier certify = [this](const Multiarrangement& r) { return certify_restriction(r); };
  auto cert = replay(Base::from_catalog(start.key(), c->target, {c, id}), additions, certify);
  partial_.emplace(std::tuple{ell, m, n}, cert);
  return cert;
}

std::shared_ptr<const Certificate> PaperOrderBuilder::mixed(int ell, int m, int q) {
  return partial_mixed(ell, m, q * (ell - 1));
}

std::shared_ptr<const Certificate> PaperOrderBuilder::entry(const CatalogEntry& e) {
  if (e.pattern.kind == MultiplicityPattern::Kind::Mixed) return mixed(e.ell, e.pattern.m, e.pattern.q);
  return constant(e.ell, e.pattern.m);
}

}  // namespace multiarr
