#include "multiarr/induction.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace multiarr {

std::string to_string(BaseKind k) {
  switch (k) {
    case BaseKind::Empty: return "empty";
    case BaseKind::Rank2: return "rank2";
    case BaseKind::Product: return "product";
    case BaseKind::Catalog: return "catalog";
  }
  return "empty";
}

namespace {

BaseKind base_kind_from_string(const std::string& s) {
  if (s == "empty") return BaseKind::Empty;
  if (s == "rank2") return BaseKind::Rank2;
  if (s == "product") return BaseKind::Product;
  if (s == "catalog") return BaseKind::Catalog;
  throw std::invalid_argument("unknown base kind: " + s);
}

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Multiarrangement embed_block(const Multiarrangement& factor, const std::vector<int>& block, int dim) {
  std::vector<LinearForm> fs;
  for (const auto& f : factor.arrangement().forms()) {
    std::vector<long> g(dim, 0);
    for (std::size_t i = 0; i < block.size(); ++i) g[block[i]] = f[static_cast<int>(i)];
    fs.push_back(LinearForm::canonicalize(std::move(g)));
  }
  return Multiarrangement(Arrangement(dim, std::move(fs)), factor.multiplicity());
}

Multiarrangement add_one(const Multiarrangement& state, const LinearForm& f) {
  return state.with_multiplicity(f, state.multiplicity_of(f) + 1);
}

int center_dim(const Multiarrangement& m) { return m.dim() - m.rank(); }

ExponentMultiset strip_zeros(const ExponentMultiset& e, int n) { return e.without_zeros(std::min(n, e.count(0))); }

}  // namespace

Base Base::empty(int dim) {
  Base b;
  b.kind = BaseKind::Empty;
  b.start = Multiarrangement::empty(dim);
  return b;
}

Base Base::rank2(const Multiarrangement& m) {
  if (m.rank() > 2) throw std::invalid_argument("rank-2 base of rank above 2");
  Base b;
  b.kind = BaseKind::Rank2;
  b.start = m.normalized();
  return b;
}

Base Base::product(int dim, std::vector<ProductFactor> factors) {
  Base b;
  b.kind = BaseKind::Product;
  std::vector<LinearForm> fs;
  std::vector<int> ms;
  for (const auto& f : factors) {
    const Multiarrangement factor = relabel(f.ref.cert->target, [&] {
      std::vector<int> inv(f.ref.perm.size());
      for (std::size_t i = 0; i < inv.size(); ++i) inv[f.ref.perm[i]] = static_cast<int>(i);
      return inv;
    }());
    const Multiarrangement e = embed_block(factor, f.block, dim);
    fs.insert(fs.end(), e.arrangement().forms().begin(), e.arrangement().forms().end());
    ms.insert(ms.end(), e.multiplicity().begin(), e.multiplicity().end());
  }
  b.start = Multiarrangement(Arrangement(dim, std::move(fs)), std::move(ms));
  b.factors = std::move(factors);
  return b;
}

Base Base::from_catalog(std::string key, const Multiarrangement& start, CertRef ref) {
  Base b;
  b.kind = BaseKind::Catalog;
  b.start = start.normalized();
  b.catalog_key = std::move(key);
  b.catalog = std::move(ref);
  return b;
}

VerificationError::VerificationError(int step, const std::string& what)
    : std::runtime_error(step == 0 ? "base: " + what : "step " + std::to_string(step) + ": " + what), step_(step) {}

ProductSplit product_split(const Multiarrangement& input) {
  const Multiarrangement m = input.normalized();
  const int dim = m.dim();
  std::vector<int> parent = identity_perm(dim);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& f : m.arrangement().forms()) {
    int first = -1;
    for (int i = 0; i < dim; ++i) {
      if (f[i] == 0) continue;
      if (first < 0) first = i;
      else parent[find(i)] = find(first);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < dim; ++i) groups[find(i)].push_back(i);
  ProductSplit out;
  for (auto& [root, block] : groups) out.blocks.push_back(block);
  std::sort(out.blocks.begin(), out.blocks.end());
  for (const auto& block : out.blocks) out.factors.push_back(project_to_block(m, block));
  return out;
}

Multiarrangement project_to_block(const Multiarrangement& m, const std::vector<int>& block) {
  std::vector<LinearForm> fs;
  std::vector<int> ms;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const LinearForm& f = m.form(i);
    bool inside = true, touches = false;
    for (int c = 0; c < m.dim(); ++c) {
      if (f[c] == 0) continue;
      if (std::find(block.begin(), block.end(), c) == block.end()) inside = false;
      else touches = true;
    }
    if (!touches) continue;
    if (!inside) throw std::invalid_argument("project_to_block: form straddles the block");
    std::vector<long> g;
    for (int c : block) g.push_back(f[c]);
    fs.push_back(LinearForm::canonicalize(std::move(g)));
    ms.push_back(m.multiplicity(i));
  }
  return Multiarrangement(Arrangement(static_cast<int>(block.size()), std::move(fs)), std::move(ms)).normalized();
}

// ---------------------------------------------------------------------------
// Verification

ExponentMultiset Verifier::verify_shared(const std::shared_ptr<const Certificate>& cert) {
  auto it = cache_.find(cert.get());
  if (it != cache_.end()) return it->second.second;
  ExponentMultiset e = verify(*cert);
  cache_.emplace(cert.get(), std::make_pair(cert, e));
  return e;
}

ExponentMultiset Verifier::verify_ref(const CertRef& ref, const Multiarrangement& m, const std::string& what) {
  if (!ref.cert) throw std::invalid_argument(what + " certificate missing");
  if (static_cast<int>(ref.perm.size()) != m.dim()) throw std::invalid_argument(what + " relabeling has the wrong size");
  std::vector<int> seen(ref.perm);
  std::sort(seen.begin(), seen.end());
  if (seen != identity_perm(m.dim())) throw std::invalid_argument(what + " relabeling is not a permutation");
  if (!(relabel(m, ref.perm) == ref.cert->target)) throw std::invalid_argument(what + " certificate target differs");
  try {
    return verify_shared(ref.cert);
  } catch (const VerificationError& e) {
    throw std::invalid_argument(what + " certificate: " + e.what());
  }
}

ExponentMultiset Verifier::verify(const Certificate& cert) {
  const Base& base = cert.base;
  const int dim = cert.target.dim();
  if (base.start.dim() != dim) throw VerificationError(0, "base dimension differs from the target");

  ExponentMultiset exps;
  try {
    switch (base.kind) {
      case BaseKind::Empty:
        if (base.start.size() != 0) throw std::invalid_argument("empty base has hyperplanes");
        exps = ExponentMultiset().with_zeros(dim);
        break;
      case BaseKind::Rank2:
        if (base.start.rank() > 2) throw std::invalid_argument("rank-2 base has rank above 2");
        exps = rank2_exponents(base.start);
        break;
      case BaseKind::Product: {
        std::vector<int> covered;
        for (const auto& f : base.factors) covered.insert(covered.end(), f.block.begin(), f.block.end());
        std::sort(covered.begin(), covered.end());
        if (covered != identity_perm(dim)) throw std::invalid_argument("product blocks do not partition the coordinates");
        int forms_seen = 0;
        for (const auto& f : base.factors) {
          const Multiarrangement factor = project_to_block(base.start, f.block);
          forms_seen += static_cast<int>(factor.size());
          exps = exps + verify_ref(f.ref, factor, "product factor");
        }
        if (forms_seen != static_cast<int>(base.start.normalized().size()))
          throw std::invalid_argument("product base has a form outside every block");
        break;
      }
      case BaseKind::Catalog:
        exps = verify_ref(base.catalog, base.start, "catalog entry");
        break;
    }
  } catch (const std::invalid_argument& e) {
    throw VerificationError(0, e.what());
  }

  Multiarrangement state = base.start;
  for (std::size_t s = 0; s < cert.steps.size(); ++s) {
    const InductionStep& step = cert.steps[s];
    const int index = static_cast<int>(s) + 1;
    if (step.form.dim() != dim) throw VerificationError(index, "form dimension differs");
    if (!(step.exp_before == exps)) throw VerificationError(index, "recorded exp before is " + step.exp_before.to_string() + ", replay gives " + exps.to_string());
    state = add_one(state, step.form);
    const Triple t = restriction(state, *state.arrangement().index_of(step.form));
    if (!(t.restricted == step.restricted)) throw VerificationError(index, "recorded restriction differs from the Euler restriction");
    if (t.provenance != step.euler) throw VerificationError(index, "recorded Euler data differs");
    ExponentMultiset er;
    try {
      er = verify_ref(step.restriction, t.restricted, "restriction");
    } catch (const std::invalid_argument& e) {
      throw VerificationError(index, e.what());
    }
    if (!(er == step.exp_restricted)) throw VerificationError(index, "recorded restriction exponents differ");
    const auto after = addition_deletion_infer(exps, er);
    if (!after) throw VerificationError(index, "restriction exponents " + er.to_string() + " not contained in " + exps.to_string());
    if (!(*after == step.exp_after)) throw VerificationError(index, "recorded exp after differs");
    exps = *after;
  }
  const int last = static_cast<int>(cert.steps.size());
  if (!(state == cert.target)) throw VerificationError(last, "replay does not reach the target");
  if (!(exps == cert.exponents)) throw VerificationError(last, "recorded exponents differ from the replay");
  return exps;
}

ExponentMultiset verify(const Certificate& cert) {
  Verifier v;
  return v.verify(cert);
}

// ---------------------------------------------------------------------------
// Construction

namespace {

ExponentMultiset base_exponents(const Base& base) {
  switch (base.kind) {
    case BaseKind::Empty: return ExponentMultiset().with_zeros(base.start.dim());
    case BaseKind::Rank2: return rank2_exponents(base.start);
    case BaseKind::Product: {
      ExponentMultiset e;
      for (const auto& f : base.factors) e = e + f.ref.cert->exponents;
      return e;
    }
    case BaseKind::Catalog: return base.catalog.cert->exponents;
  }
  return {};
}

struct StepAttempt {
  std::optional<InductionStep> step;
  std::string failure;
};

StepAttempt try_step(const Multiarrangement& after_state, const LinearForm& form, const ExponentMultiset& before,
                     const RestrictionCertifier& certify) {
  const Triple t = restriction(after_state, *after_state.arrangement().index_of(form));
  auto ref = certify(t.restricted);
  if (!ref) return {std::nullopt, "restriction not certified: " + t.restricted.to_string()};
  const ExponentMultiset& er = ref->cert->exponents;
  auto after = addition_deletion_infer(before, er);
  if (!after) return {std::nullopt, "restriction exponents " + er.to_string() + " not contained in " + before.to_string()};
  InductionStep step{form, before, er, *after, t.provenance, t.restricted, std::move(*ref)};
  return {std::move(step), {}};
}

}  // namespace

std::shared_ptr<const Certificate> replay(Base base, const std::vector<LinearForm>& additions,
                                          const RestrictionCertifier& certify) {
  auto cert = std::make_shared<Certificate>();
  ExponentMultiset exps = base_exponents(base);
  Multiarrangement state = base.start;
  for (std::size_t i = 0; i < additions.size(); ++i) {
    state = add_one(state, additions[i]);
    StepAttempt a = try_step(state, additions[i], exps, certify);
    if (!a.step) throw VerificationError(static_cast<int>(i) + 1, a.failure);
    exps = a.step->exp_after;
    cert->steps.push_back(std::move(*a.step));
  }
  cert->target = state;
  cert->base = std::move(base);
  cert->exponents = exps;
  return cert;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::PaperOrder: return "paper-order";
    case Strategy::Greedy: return "greedy";
    case Strategy::Exhaustive: return "exhaustive";
  }
  return "greedy";
}

Strategy strategy_from_string(const std::string& s) {
  if (s == "paper-order") return Strategy::PaperOrder;
  if (s == "greedy") return Strategy::Greedy;
  if (s == "exhaustive") return Strategy::Exhaustive;
  throw std::invalid_argument("unknown strategy: " + s);
}

void SearchContext::clear_memo() {
  memo_.clear();
  failed_.clear();
}

void SearchContext::charge() {
  ++spent_;
  if (options_.budget && spent_ > *options_.budget) throw BudgetExceeded();
}

std::optional<CertRef> SearchContext::certify(const Multiarrangement& m) {
  const CanonicalForm c = canonical_form(m.normalized(), options_.permute);
  if (auto it = memo_.find(c.key); it != memo_.end()) return CertRef{it->second, c.perm};
  if (failed_.count(c.key)) return std::nullopt;
  auto cert = build(c.representative);
  if (!cert) {
    failed_.insert(c.key);
    return std::nullopt;
  }
  memo_.emplace(c.key, cert);
  return CertRef{cert, c.perm};
}

std::shared_ptr<const Certificate> SearchContext::build(const Multiarrangement& target) {
  auto leaf = [&](Base base) {
    auto cert = std::make_shared<Certificate>();
    cert->exponents = base_exponents(base);
    cert->target = target;
    cert->base = std::move(base);
    return cert;
  };
  if (target.size() == 0) return leaf(Base::empty(target.dim()));
  if (target.rank() <= 2) return leaf(Base::rank2(target));

  const ProductSplit split = product_split(target);
  if (split.blocks.size() > 1) {
    std::vector<ProductFactor> factors;
    for (std::size_t i = 0; i < split.blocks.size(); ++i) {
      auto ref = certify(split.factors[i]);
      if (!ref) return nullptr;
      factors.push_back({split.blocks[i], std::move(*ref)});
    }
    return leaf(Base::product(target.dim(), std::move(factors)));
  }
  return bottom_up(target);
}

bool SearchContext::extend(const Multiarrangement& target, Multiarrangement& state, ExponentMultiset& exps,
                           std::vector<InductionStep>& steps, std::set<std::string>& dead) {
  if (state == target) return true;
  const std::string key = to_json(state.sorted()).dump();
  if (dead.count(key)) return false;
  const RestrictionCertifier certifier = [this](const Multiarrangement& r) { return certify(r); };
  for (std::size_t i = 0; i < target.size(); ++i) {
    const LinearForm& f = target.form(i);
    if (state.multiplicity_of(f) >= target.multiplicity(i)) continue;
    charge();
    const Multiarrangement next = add_one(state, f);
    StepAttempt a = try_step(next, f, exps, certifier);
    if (!a.step) continue;
    const Multiarrangement saved_state = state;
    const ExponentMultiset saved_exps = exps;
    state = next;
    exps = a.step->exp_after;
    steps.push_back(std::move(*a.step));
    if (options_.strategy == Strategy::Greedy) return extend(target, state, exps, steps, dead);
    if (extend(target, state, exps, steps, dead)) return true;
    steps.pop_back();
    state = saved_state;
    exps = saved_exps;
  }
  dead.insert(key);
  return false;
}

std::shared_ptr<const Certificate> SearchContext::bottom_up(const Multiarrangement& target) {
  Base base = Base::empty(target.dim());
  Multiarrangement state = base.start;
  ExponentMultiset exps = base_exponents(base);
  std::vector<InductionStep> steps;
  std::set<std::string> dead;
  if (!extend(target, state, exps, steps, dead)) return nullptr;
  auto cert = std::make_shared<Certificate>();
  cert->target = target;
  cert->base = std::move(base);
  cert->steps = std::move(steps);
  cert->exponents = exps;
  return cert;
}

std::shared_ptr<const Certificate> search(const Multiarrangement& m, SearchContext& ctx) {
  if (ctx.options().strategy == Strategy::PaperOrder)
    throw std::invalid_argument("paper-order search needs a catalog addition sequence");
  const Multiarrangement target = m.normalized();
  auto ref = ctx.certify(target);
  if (!ref) return nullptr;
  if (ref->perm == identity_perm(target.dim()) && ref->cert->target == target) return ref->cert;
  // Present the result in the caller's coordinates through a catalog base.
  auto cert = std::make_shared<Certificate>();
  cert->target = target;
  cert->exponents = ref->cert->exponents;
  cert->base = Base::from_catalog("search", target, std::move(*ref));
  return cert;
}

// ---------------------------------------------------------------------------
// Tables and JSON

TableFormat table_format_from_string(const std::string& s) {
  if (s == "markdown") return TableFormat::Markdown;
  if (s == "tsv") return TableFormat::Tsv;
  if (s == "json") return TableFormat::Json;
  throw std::invalid_argument("unknown format: " + s);
}

std::string emit_table(const Certificate& cert, TableFormat format) {
  if (format == TableFormat::Json) return to_json(cert).dump(2) + "\n";

  const std::vector<std::string> header{"exp(A',nu')", "alpha_H", "exp(A'',nu*)", "k", "(nu0,nu1,nu_X,nu*)", "path"};
  std::vector<std::vector<std::string>> rows;
  const int strip = center_dim(cert.target);
  for (const auto& step : cert.steps) {
    std::string ks, data, paths;
    for (std::size_t i = 0; i < step.euler.size(); ++i) {
      const EulerData& d = step.euler[i];
      const std::string sep = i ? "; " : "";
      ks += sep + std::to_string(d.k);
      data += sep + "(" + std::to_string(d.nu0) + "," + std::to_string(d.nu1) + "," + std::to_string(d.nu_x) + "," +
              std::to_string(d.nu_star) + ")";
      paths += sep + to_string(d.path);
    }
    if (step.euler.empty()) ks = data = paths = "-";
    rows.push_back({strip_zeros(step.exp_before, strip).to_string(), step.form.to_string(),
                    strip_zeros(step.exp_restricted, center_dim(step.restricted)).to_string(), ks, data, paths});
  }

  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    if (format == TableFormat::Tsv) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "\t" : "") << cells[i];
    } else {
      os << "|";
      for (const auto& c : cells) os << " " << c << " |";
    }
    os << "\n";
  };
  line(header);
  if (format == TableFormat::Markdown) line(std::vector<std::string>(header.size(), "---"));
  for (const auto& r : rows) line(r);
  return os.str();
}

namespace {

nlohmann::json ref_json(const CertRef& ref) { return {{"perm", ref.perm}, {"certificate", to_json(*ref.cert)}}; }

}  // namespace

nlohmann::json to_json(const Certificate& cert) {
  nlohmann::json base{{"kind", to_string(cert.base.kind)}, {"start", to_json(cert.base.start)}};
  if (cert.base.kind == BaseKind::Product) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : cert.base.factors) {
      nlohmann::json j = ref_json(f.ref);
      j["block"] = f.block;
      factors.push_back(std::move(j));
    }
    base["factors"] = std::move(factors);
  }
  if (cert.base.kind == BaseKind::Catalog) {
    base["catalog"] = ref_json(cert.base.catalog);
    base["catalog"]["key"] = cert.base.catalog_key;
  }

  nlohmann::json steps = nlohmann::json::array();
  Multiarrangement state = cert.base.start;
  for (const auto& step : cert.steps) {
    state = add_one(state, step.form);
    nlohmann::json euler = nlohmann::json::array();
    for (const auto& d : step.euler) euler.push_back(to_json(d, state));
    nlohmann::json j = ref_json(step.restriction);
    j["form"] = step.form.coeffs();
    j["exp_before"] = step.exp_before.values();
    j["exp_restricted"] = step.exp_restricted.values();
    j["exp_after"] = step.exp_after.values();
    j["euler"] = std::move(euler);
    j["restricted"] = to_json(step.restricted);
    steps.push_back(std::move(j));
  }
  return {{"target", to_json(cert.target)}, {"exponents", cert.exponents.values()}, {"base", base}, {"steps", steps}};
}

namespace {

using ParseCache = std::map<std::string, std::shared_ptr<const Certificate>>;

std::shared_ptr<const Certificate> parse(const nlohmann::json& j, ParseCache& cache);

CertRef parse_ref(const nlohmann::json& j, ParseCache& cache) {
  return {parse(j.at("certificate"), cache), j.at("perm").get<std::vector<int>>()};
}

std::shared_ptr<const Certificate> parse(const nlohmann::json& j, ParseCache& cache) {
  const std::string text = j.dump();
  if (auto it = cache.find(text); it != cache.end()) return it->second;

  auto cert = std::make_shared<Certificate>();
  cert->target = multiarrangement_from_json(j.at("target"));
  cert->exponents = ExponentMultiset(j.at("exponents").get<std::vector<int>>());
  const auto& b = j.at("base");
  Base& base = cert->base;
  base.kind = base_kind_from_string(b.at("kind").get<std::string>());
  base.start = multiarrangement_from_json(b.at("start"));
  if (base.kind == BaseKind::Product)
    for (const auto& f : b.at("factors")) base.factors.push_back({f.at("block").get<std::vector<int>>(), parse_ref(f, cache)});
  if (base.kind == BaseKind::Catalog) {
    base.catalog = parse_ref(b.at("catalog"), cache);
    base.catalog_key = b.at("catalog").value("key", "");
  }

  Multiarrangement state = base.start;
  for (const auto& s : j.at("steps")) {
    InductionStep step;
    step.form = LinearForm::canonicalize(s.at("form").get<std::vector<long>>());
    state = add_one(state, step.form);
    step.exp_before = ExponentMultiset(s.at("exp_before").get<std::vector<int>>());
    step.exp_restricted = ExponentMultiset(s.at("exp_restricted").get<std::vector<int>>());
    step.exp_after = ExponentMultiset(s.at("exp_after").get<std::vector<int>>());
    step.restricted = multiarrangement_from_json(s.at("restricted"));
    for (const auto& e : s.at("euler")) {
      EulerData d;
      for (const auto& f : e.at("flat")) {
        auto idx = state.arrangement().index_of(LinearForm::canonicalize(f.get<std::vector<long>>()));
        if (!idx) throw std::invalid_argument("certificate JSON: Euler flat names a form outside the state");
        d.flat.push_back(*idx);
      }
      std::sort(d.flat.begin(), d.flat.end());
      d.k = e.at("k").get<int>();
      d.nu0 = e.at("nu0").get<int>();
      d.nu1 = e.at("nu1").get<int>();
      d.nu_x = e.at("nu_X").get<int>();
      d.nu_star = e.at("nu_star").get<int>();
      d.path = euler_path_from_string(e.at("euler_path").get<std::string>());
      step.euler.push_back(std::move(d));
    }
    step.restriction = parse_ref(s, cache);
    cert->steps.push_back(std::move(step));
  }
  cache.emplace(text, cert);
  return cert;
}

}  // namespace

std::shared_ptr<const Certificate> certificate_from_json(const nlohmann::json& j) {
  ParseCache cache;
  try {
    return parse(j, cache);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("certificate JSON: ") + e.what());
  }
}

}  // namespace multiarr
