#include "multiarr/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "multiarr/braid.hpp"

namespace multiarr {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string strategy;  // paper-order for catalog keys, greedy otherwise
  std::string format = "markdown";
  std::optional<int> degree_cap;
  std::optional<long> budget;
  bool no_perm_canon = false;
  int h0 = 1;
};

bool is_catalog_key(const std::string& s) { return s.rfind("braid:", 0) == 0 || s.rfind("mixed:", 0) == 0; }

nlohmann::json read_json(const std::string& input) {
  std::string text;
  if (!input.empty() && (input.front() == '{' || input.front() == '[')) {
    text = input;
  } else if (std::filesystem::is_regular_file(input)) {
    std::ifstream in(input);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    throw UsageError("input is neither inline JSON, a readable file, nor a catalog key: " + input);
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("malformed JSON: ") + e.what());
  }
}

Multiarrangement read_multiarrangement(const std::string& input) {
  if (is_catalog_key(input)) {
    const CatalogEntry e = parse_catalog_key(input);
    return build({e.ell, BraidKind::Full}, e.pattern);
  }
  try {
    return multiarrangement_from_json(read_json(input));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed multiarrangement: ") + e.what());
  }
}

TableFormat format_of(const Options& o) { return table_format_from_string(o.format); }

std::size_t h0_index(const Multiarrangement& m, int h0) {
  if (h0 < 1 || h0 > static_cast<int>(m.size())) throw UsageError("--h0 must lie between 1 and the number of hyperplanes");
  return static_cast<std::size_t>(h0 - 1);
}

ExponentMultiset expected_for(const CatalogEntry& e) {
  if (e.pattern.kind == MultiplicityPattern::Kind::Mixed) return expected_exponents_mixed(e.ell, e.pattern.m, e.pattern.q);
  return expected_exponents_constant(e.ell, e.pattern.m);
}

int cmd_exps(const Options& o, std::ostream& out, bool verbose) {
  const Multiarrangement m = read_multiarrangement(o.input);
  OracleResult r;
  try {
    r = oracle_exponents(m, o.degree_cap);
  } catch (const std::runtime_error& e) {
    if (format_of(o) == TableFormat::Json) out << nlohmann::json{{"free", nullptr}, {"status", "unknown"}}.dump(2) << "\n";
    else out << "unknown (inconclusive: " << e.what() << ")\n";
    return 1;
  }
  if (auto* w = std::get_if<FreenessWitness>(&r)) {
    if (format_of(o) == TableFormat::Json) {
      nlohmann::json j{{"free", true}, {"exponents", w->exponents.values()}};
      if (verbose) j["witness"] = to_json(*w);
      out << j.dump(2) << "\n";
    } else if (verbose) {
      out << "free\nexponents: " << w->exponents.to_string() << "\nsaito constant: " << w->saito_constant.get_str() << "\n";
      for (std::size_t i = 0; i < w->generators.size(); ++i) {
        out << "theta" << i + 1 << " =";
        for (int c = 0; c < m.dim(); ++c) out << (c ? ", " : " (") << w->generators[i][c].to_string();
        out << ")\n";
      }
    } else {
      out << w->exponents.to_string() << "\n";
    }
    return 0;
  }
  const auto& nf = std::get<NotFreeCertificate>(r);
  if (format_of(o) == TableFormat::Json) {
    out << nlohmann::json{{"free", false}, {"greedy_degrees", nf.greedy_degrees}}.dump(2) << "\n";
  } else {
    out << "not free (independent degrees";
    for (int d : nf.greedy_degrees) out << " " << d;
    out << " exceed |nu| = " << m.order() << ")\n";
  }
  return verbose ? 0 : 1;
}

int cmd_restrict(const Options& o, std::ostream& out, bool full) {
  const Multiarrangement m = read_multiarrangement(o.input);
  const Triple t = restriction(m, h0_index(m, o.h0));
  if (full || format_of(o) == TableFormat::Json) {
    nlohmann::json j = to_json(t);
    if (!full) j = {{"restricted", j["restricted"]}, {"provenance", j["provenance"]}};
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "H0: " << t.original.form(t.distinguished).to_string() << "\n";
  out << "restriction: " << t.restricted.to_string() << "\n";
  for (std::size_t i = 0; i < t.provenance.size(); ++i) {
    const EulerData& d = t.provenance[i];
    out << t.restricted.form(i).to_string() << "\tnu*=" << d.nu_star << "\tk=" << d.k << "\t(nu0,nu1,nu_X)=(" << d.nu0 << ","
        << d.nu1 << "," << d.nu_x << ")\t" << to_string(d.path) << "\n";
  }
  return 0;
}

SearchOptions search_options(const Options& o) {
  SearchOptions s;
  s.strategy = o.strategy.empty() ? (is_catalog_key(o.input) ? Strategy::PaperOrder : Strategy::Greedy)
                                  : strategy_from_string(o.strategy);
  s.permute = !o.no_perm_canon;
  s.budget = o.budget;
  return s;
}

/// Certificate for the input under the chosen strategy, or nothing.
std::shared_ptr<const Certificate> obtain(const Options& o, const Multiarrangement& m) {
  const SearchOptions s = search_options(o);
  if (s.strategy == Strategy::PaperOrder) {
    if (!is_catalog_key(o.input)) throw UsageError("paper-order needs a catalog key (braid:<ell>:<m> or mixed:<ell>:<m>:<q>)");
    PaperOrderBuilder builder;
    return builder.entry(parse_catalog_key(o.input));
  }
  SearchContext ctx(s);
  return search(m, ctx);
}

void print_certificate(const Certificate& c, const ExponentMultiset& exps, const Options& o, std::ostream& out) {
  out << emit_table(c, format_of(o));
  if (format_of(o) != TableFormat::Json)
    out << "exponents: " << exps.without_zeros(std::min(c.target.dim() - c.target.rank(), exps.count(0))).to_string() << "\n";
}

int cmd_induce(const Options& o, std::ostream& out) {
  const Multiarrangement m = read_multiarrangement(o.input);
  std::shared_ptr<const Certificate> c;
  try {
    c = obtain(o, m);
  } catch (const BudgetExceeded&) {
    out << "inconclusive: budget exceeded\n";
    return 1;
  }
  if (!c) {
    out << "inconclusive: no certificate found\n";
    return 1;
  }
  const ExponentMultiset exps = verify(*c);
  print_certificate(*c, exps, o, out);
  return 0;
}

int cmd_table(const Options& o, std::ostream& out) {
  if (is_catalog_key(o.input)) return cmd_induce(o, out);
  std::shared_ptr<const Certificate> c;
  try {
    c = certificate_from_json(read_json(o.input));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  out << emit_table(*c, format_of(o));
  return 0;
}

int cmd_catalog(const Options& o, std::ostream& out) {
  if (!is_catalog_key(o.input)) throw UsageError("catalog needs braid:<ell>:<m> or mixed:<ell>:<m>:<q>");
  const CatalogEntry e = parse_catalog_key(o.input);
  const Multiarrangement m = build({e.ell, BraidKind::Full}, e.pattern);
  const ExponentMultiset expected = expected_for(e);
  std::shared_ptr<const Certificate> c;
  try {
    c = obtain(o, m);
  } catch (const BudgetExceeded&) {
    c = nullptr;
  }
  std::optional<ExponentMultiset> computed;
  if (c) computed = verify(*c).without_zeros(1);
  const bool pass = computed && *computed == expected;
  if (format_of(o) == TableFormat::Json) {
    nlohmann::json j{{"key", e.key()}, {"expected", expected.values()}, {"pass", pass}};
    j["computed"] = computed ? nlohmann::json(computed->values()) : nlohmann::json(nullptr);
    if (c) j["certificate"] = to_json(*c);
    out << j.dump(2) << "\n";
  } else {
    if (c) out << emit_table(*c, format_of(o));
    out << "key: " << e.key() << "\n";
    out << "expected: " << expected.to_string() << "\n";
    out << "computed: " << (computed ? computed->to_string() : "inconclusive") << "\n";
    out << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? 0 : 1;
}

int cmd_verify(const Options& o, std::ostream& out) {
  std::shared_ptr<const Certificate> c;
  try {
    c = certificate_from_json(read_json(o.input));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  try {
    const ExponentMultiset exps = verify(*c);
    if (format_of(o) == TableFormat::Json) out << nlohmann::json{{"verified", true}, {"exponents", exps.values()}}.dump(2) << "\n";
    else out << "verified\nexponents: " << exps.to_string() << "\n";
    return 0;
  } catch (const VerificationError& e) {
    if (format_of(o) == TableFormat::Json)
      out << nlohmann::json{{"verified", false}, {"step", e.step()}, {"error", e.what()}}.dump(2) << "\n";
    else out << "verification failed: " << e.what() << "\n";
    return 1;
  }
}

std::optional<long> env_budget() {
  const char* v = std::getenv(kBudgetEnv);
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const long b = std::strtol(v, &end, 10);
  if (*end != '\0' || b <= 0) throw UsageError(std::string(kBudgetEnv) + " must be a positive integer");
  return b;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Freeness, Euler restrictions and inductive-freeness certificates for multiarrangements"};
  app.require_subcommand(1);
  Options o;

  struct Verb {
    const char* name;
    const char* help;
  };
  const std::vector<Verb> verbs{
      {"exps", "exponents from the derivation module"},
      {"free", "free / not free / unknown, with the witness"},
      {"restrict", "Euler restriction to a hyperplane with provenance"},
      {"triple", "deletion and restriction as JSON"},
      {"induce", "search for an inductive-freeness certificate"},
      {"table", "induction table of a certificate or catalog entry"},
      {"catalog", "compare a catalog entry with its expected exponents"},
      {"verify", "re-check a stored certificate"},
  };
  long budget = 0;
  int degree_cap = 0;
  std::vector<CLI::App*> subs;
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("input", o.input, "inline JSON, file path, or catalog key")->required();
    sub->add_option("--strategy", o.strategy)->check(CLI::IsMember({"paper-order", "greedy", "exhaustive"}));
    sub->add_option("--format", o.format)->check(CLI::IsMember({"markdown", "tsv", "json"}));
    sub->add_option("--degree-cap", degree_cap)->check(CLI::NonNegativeNumber);
    sub->add_option("--budget", budget)->check(CLI::PositiveNumber);
    sub->add_flag("--no-perm-canon", o.no_perm_canon, "disable permutation canonicalization of memo keys");
    sub->add_option("--h0", o.h0, "1-based index of the distinguished hyperplane");
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    o.budget = env_budget();
    for (auto* sub : subs) {
      if (!sub->parsed()) continue;
      if (sub->count("--budget")) o.budget = budget;
      if (sub->count("--degree-cap")) o.degree_cap = degree_cap;
      const std::string verb = sub->get_name();
      if (verb == "exps") return cmd_exps(o, out, false);
      if (verb == "free") return cmd_exps(o, out, true);
      if (verb == "restrict") return cmd_restrict(o, out, false);
      if (verb == "triple") return cmd_restrict(o, out, true);
      if (verb == "induce") return cmd_induce(o, out);
      if (verb == "table") return cmd_table(o, out);
      if (verb == "catalog") return cmd_catalog(o, out);
      if (verb == "verify") return cmd_verify(o, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const VerificationError& e) {
    err << "certificate failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace multiarr
