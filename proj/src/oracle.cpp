#include "multiarr/oracle.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace multiarr {

ExponentMultiset::ExponentMultiset(std::initializer_list<int> values) : ExponentMultiset(std::vector<int>(values)) {}

ExponentMultiset::ExponentMultiset(std::vector<int> values) : values_(std::move(values)) {
  for (int v : values_)
    if (v < 0) throw std::invalid_argument("ExponentMultiset: negative exponent");
  std::sort(values_.begin(), values_.end());
}

int ExponentMultiset::sum() const { return std::accumulate(values_.begin(), values_.end(), 0); }

int ExponentMultiset::count(int v) const { return static_cast<int>(std::count(values_.begin(), values_.end(), v)); }

bool ExponentMultiset::includes(const ExponentMultiset& sub) const {
  return std::includes(values_.begin(), values_.end(), sub.values_.begin(), sub.values_.end());
}

ExponentMultiset ExponentMultiset::operator+(const ExponentMultiset& other) const {
  std::vector<int> v(values_);
  v.insert(v.end(), other.values_.begin(), other.values_.end());
  return ExponentMultiset(std::move(v));
}

std::optional<ExponentMultiset> ExponentMultiset::minus(const ExponentMultiset& sub) const {
  if (!includes(sub)) return std::nullopt;
  std::vector<int> out;
  std::set_difference(values_.begin(), values_.end(), sub.values_.begin(), sub.values_.end(), std::back_inserter(out));
  return ExponentMultiset(std::move(out));
}

ExponentMultiset ExponentMultiset::with_zeros(int n) const {
  std::vector<int> v(values_);
  v.insert(v.end(), n, 0);
  return ExponentMultiset(std::move(v));
}

ExponentMultiset ExponentMultiset::without_zeros(int n) const {
  if (count(0) < n) throw std::invalid_argument("ExponentMultiset: not enough zeros to strip");
  return ExponentMultiset(std::vector<int>(values_.begin() + n, values_.end()));
}

std::string ExponentMultiset::to_string() const {
  if (values_.empty()) return "-";
  std::ostringstream os;
  for (std::size_t i = 0; i < values_.size(); ++i) os << (i ? "," : "") << values_[i];
  return os.str();
}

// ---------------------------------------------------------------------------

GradedPiece graded_piece(const Multiarrangement& input, int p) {
  if (p < 0) throw std::invalid_argument("graded_piece: negative degree");
  const Multiarrangement m = input.normalized();
  const int dim = m.dim();
  const std::size_t block = monomials_of_degree(dim, p).size();
  const std::size_t unknowns = block * dim;

  Matrix system(0, unknowns);
  for (std::size_t h = 0; h < m.size(); ++h) {
    const auto alpha = m.form(h).integers();
    const Matrix t = divisibility_conditions(dim, p, alpha, m.multiplicity(h));
    // theta(alpha) has coefficient vector sum_i alpha_i * block_i.
    Matrix rows(t.rows(), unknowns);
    for (int i = 0; i < dim; ++i) {
      if (sgn(alpha[i]) == 0) continue;
      const Scalar a(alpha[i]);
      for (std::size_t r = 0; r < t.rows(); ++r)
        for (std::size_t c = 0; c < block; ++c)
          if (sgn(t(r, c)) != 0) rows(r, i * block + c) = a * t(r, c);
    }
    system.append_rows(rows);
  }

  GradedPiece piece;
  piece.degree = p;
  std::vector<std::vector<Scalar>> basis;
  if (system.rows() == 0) {
    for (std::size_t c = 0; c < unknowns; ++c) {
      std::vector<Scalar> e(unknowns);
      e[c] = 1;
      basis.push_back(std::move(e));
    }
  } else {
    basis = kernel(system);
  }
  for (const auto& v : basis) piece.basis.push_back(Derivation::from_coefficients(dim, p, v));
  return piece;
}

std::pair<std::size_t, GradedPiece> graded_dimension(const Multiarrangement& m, int p) {
  GradedPiece piece = graded_piece(m, p);
  const std::size_t n = piece.basis.size();
  return {n, std::move(piece)};
}

namespace {

std::vector<std::vector<Scalar>> evaluation_points(int dim, int count) {
  // Distinct primes, alternating in sign, spread over the coordinates.
  std::vector<long> primes;
  for (long n = 2; static_cast<int>(primes.size()) < dim * count + 1; ++n) {
    bool prime = true;
    for (long d : primes) {
      if (d * d > n) break;
      if (n % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(n);
  }
  std::vector<std::vector<Scalar>> pts;
  for (int t = 0; t < count; ++t) {
    std::vector<Scalar> pt;
    for (int i = 0; i < dim; ++i) {
      long v = primes[t * dim + i];
      pt.emplace_back((i + t) % 2 ? -v : v);
    }
    pts.push_back(std::move(pt));
  }
  return pts;
}

std::vector<Scalar> evaluate(const Derivation& theta, const std::vector<Scalar>& pt) {
  std::vector<Scalar> v;
  for (const auto& c : theta.coefficients()) v.push_back(c.evaluate(pt));
  return v;
}

Poly coefficient_determinant(const std::vector<Derivation>& gens, int dim) {
  if (dim == 0) return Poly::constant(0, 1);
  std::vector<std::vector<Poly>> rows;
  for (const auto& g : gens) rows.push_back(g.coefficients());
  return determinant(rows);
}

/// c with det = c * q, or nothing.
std::optional<Scalar> ratio(const Poly& det, const Poly& q) {
  if (det.is_zero() || q.is_zero()) return std::nullopt;
  if (det.term_count() != q.term_count()) return std::nullopt;
  const Scalar c = det.terms().begin()->second / q.terms().begin()->second;
  if (det == q.scaled(c)) return c;
  return std::nullopt;
}

OracleResult greedy(const Multiarrangement& m, int cap, int point_count) {
  const int dim = m.dim();
  const auto points = evaluation_points(dim, point_count);
  std::vector<Derivation> selected;
  std::vector<int> degrees;
  std::vector<Matrix> evaluated(points.size(), Matrix(0, dim));

  for (int p = 0; p <= cap && static_cast<int>(selected.size()) < dim; ++p) {
    const GradedPiece piece = graded_piece(m, p);
    for (const auto& theta : piece.basis) {
      if (static_cast<int>(selected.size()) == dim) break;
      bool raises = false;
      std::vector<std::vector<Scalar>> values;
      for (std::size_t t = 0; t < points.size(); ++t) {
        values.push_back(evaluate(theta, points[t]));
        Matrix trial = evaluated[t];
        trial.append_row(values.back());
        if (rank(trial) == selected.size() + 1) raises = true;
      }
      if (!raises) continue;
      for (std::size_t t = 0; t < points.size(); ++t) evaluated[t].append_row(values[t]);
      selected.push_back(theta);
      degrees.push_back(p);
    }
  }
  if (static_cast<int>(selected.size()) < dim)
    throw std::runtime_error("oracle_exponents: degree cap exhausted before finding a full-rank set");

  const int total = std::accumulate(degrees.begin(), degrees.end(), 0);
  if (total > m.order()) return NotFreeCertificate{degrees, selected};
  if (total < m.order())
    throw std::logic_error("oracle_exponents: independent derivations with degree sum below |nu|");

  const Poly det = coefficient_determinant(selected, dim);
  const auto c = ratio(det, defining_polynomial(m));
  if (!c) throw std::logic_error("oracle_exponents: determinant is not a constant multiple of Q");
  return FreenessWitness{selected, ExponentMultiset(degrees), *c};
}

}  // namespace

OracleResult oracle_exponents(const Multiarrangement& input, std::optional<int> degree_cap) {
  const Multiarrangement m = input.normalized();
  const int cap = degree_cap.value_or(m.order());
  OracleResult r = greedy(m, cap, 3);
  // A non-freeness verdict rests on evaluation ranks; confirm it with more points.
  if (std::holds_alternative<NotFreeCertificate>(r)) r = greedy(m, cap, 12);
  return r;
}

std::optional<ExponentMultiset> free_exponents(const Multiarrangement& m) {
  auto r = oracle_exponents(m);
  if (auto* w = std::get_if<FreenessWitness>(&r)) return w->exponents;
  return std::nullopt;
}

ExponentMultiset rank2_exponents(const Multiarrangement& m) {
  static std::mutex mu;
  static std::map<std::string, ExponentMultiset> cache;
  const Multiarrangement normal = m.normalized();
  if (normal.rank() > 2) throw std::invalid_argument("rank2_exponents: rank exceeds 2");
  const Essentialization e = essentialize(normal);
  const std::string key = canonical_form(e.essential).key;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second.with_zeros(e.center_dim);
  }
  auto exps = free_exponents(e.essential);
  if (!exps) throw std::logic_error("rank2_exponents: oracle reports a rank-2 multiarrangement as not free");
  std::lock_guard lock(mu);
  cache.emplace(key, *exps);
  return exps->with_zeros(e.center_dim);
}

bool satisfies_condition(const Derivation& theta, const LinearForm& alpha, int power) {
  Poly g = apply_derivation(theta, alpha.poly());
  const auto a = alpha.integers();
  for (int i = 0; i < power && !g.is_zero(); ++i) {
    auto q = g.divide_linear(a);
    if (!q) return false;
    g = std::move(*q);
  }
  return true;
}

WitnessCheck verify_witness(const Multiarrangement& input, const FreenessWitness& w) {
  const Multiarrangement m = input.normalized();
  const int dim = m.dim();
  WitnessCheck out;
  if (static_cast<int>(w.generators.size()) != dim) {
    out.reason = "wrong generator count";
    return out;
  }
  for (const auto& g : w.generators) {
    if (g.dim() != dim) {
      out.reason = "dimension mismatch";
      return out;
    }
    for (std::size_t h = 0; h < m.size(); ++h) {
      if (!satisfies_condition(g, m.form(h), m.multiplicity(h))) {
        out.reason = "not in D(A,nu)";
        return out;
      }
    }
  }
  const Poly det = coefficient_determinant(w.generators, dim);
  if (det.is_zero()) {
    out.reason = "determinant zero";
    return out;
  }
  std::vector<int> degrees;
  for (const auto& g : w.generators) {
    auto d = g.polynomial_degree();
    if (!d) {
      out.reason = "generator not homogeneous";
      return out;
    }
    degrees.push_back(*d);
  }
  if (ExponentMultiset(degrees) != w.exponents) {
    out.reason = "exponents disagree with generator degrees";
    return out;
  }
  if (w.exponents.sum() != m.order()) {
    out.reason = "degree sum differs from |nu|";
    return out;
  }
  const auto c = ratio(det, defining_polynomial(m));
  if (!c) {
    out.reason = "determinant not a constant multiple of Q";
    return out;
  }
  out.ok = true;
  out.saito_constant = *c;
  return out;
}

nlohmann::json to_json(const Poly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mono, c] : p.terms()) terms.push_back({mono.exponents(), c.get_str()});
  return terms;
}

Poly poly_from_json(const nlohmann::json& j, int dim) {
  Poly p(dim);
  for (const auto& t : j) {
    Scalar c(t.at(1).get<std::string>());
    c.canonicalize();
    p.add_term(Monomial(t.at(0).get<std::vector<int>>()), c);
  }
  return p;
}

nlohmann::json to_json(const FreenessWitness& w) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : w.generators) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : g.coefficients()) coeffs.push_back(to_json(c));
    gens.push_back(coeffs);
  }
  return {{"exponents", w.exponents.values()}, {"generators", gens}, {"saito_constant", w.saito_constant.get_str()}};
}

FreenessWitness witness_from_json(const nlohmann::json& j, int dim) {
  FreenessWitness w;
  w.exponents = ExponentMultiset(j.at("exponents").get<std::vector<int>>());
  for (const auto& g : j.at("generators")) {
    std::vector<Poly> coeffs;
    for (const auto& c : g) coeffs.push_back(poly_from_json(c, dim));
    w.generators.emplace_back(std::move(coeffs));
  }
  w.saito_constant = Scalar(j.at("saito_constant").get<std::string>());
  w.saito_constant.canonicalize();
  return w;
}

}  // namespace multiarr
