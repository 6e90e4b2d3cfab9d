#include "multiarr/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace multiarr {

Monomial::Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw std::invalid_argument("Monomial: negative exponent");
    degree_ += e;
  }
}

Monomial Monomial::variable(int dim, int index) {
  std::vector<int> e(dim, 0);
  e.at(index) = 1;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("Monomial: dimension mismatch");
  std::vector<int> e(exps_);
  for (int i = 0; i < dim(); ++i) e[i] += other.exps_[i];
  return Monomial(std::move(e));
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  return a.exponents() > b.exponents();
}

namespace {

void enumerate(int dim, int remaining, int index, std::vector<int>& cur, std::vector<Monomial>& out) {
  if (index == dim - 1) {
    cur[index] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[index] = e;
    enumerate(dim, remaining - e, index + 1, cur, out);
  }
}

}  // namespace

std::vector<Monomial> monomials_of_degree(int dim, int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  if (dim == 0) {
    if (degree == 0) out.emplace_back(std::vector<int>{});
    return out;
  }
  std::vector<int> cur(dim, 0);
  enumerate(dim, degree, 0, cur, out);
  return out;
}

// ---------------------------------------------------------------------------

Poly Poly::constant(int dim, const Scalar& c) {
  Poly p(dim);
  p.add_term(Monomial::one(dim), c);
  return p;
}

Poly Poly::variable(int dim, int index) {
  Poly p(dim);
  p.add_term(Monomial::variable(dim, index), 1);
  return p;
}

Poly Poly::linear(std::span<const Integer> coeffs) {
  const int dim = static_cast<int>(coeffs.size());
  Poly p(dim);
  for (int i = 0; i < dim; ++i) p.add_term(Monomial::variable(dim, i), Scalar(coeffs[i]));
  return p;
}

Poly Poly::linear(std::span<const long> coeffs) {
  std::vector<Integer> z(coeffs.begin(), coeffs.end());
  return linear(z);
}

Poly Poly::from_coefficients(int dim, int degree, std::span<const Scalar> coeffs) {
  const auto basis = monomials_of_degree(dim, degree);
  if (coeffs.size() != basis.size()) throw std::invalid_argument("Poly: coefficient count mismatch");
  Poly p(dim);
  for (std::size_t i = 0; i < basis.size(); ++i) p.add_term(basis[i], coeffs[i]);
  return p;
}

int Poly::degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

Scalar Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

std::vector<Scalar> Poly::coefficients(int degree) const {
  const auto basis = monomials_of_degree(dim_, degree);
  std::vector<Scalar> out;
  out.reserve(basis.size());
  for (const auto& m : basis) out.push_back(coefficient(m));
  return out;
}

void Poly::add_term(const Monomial& m, const Scalar& c) {
  if (m.dim() != dim_) throw std::invalid_argument("Poly: monomial dimension mismatch");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void Poly::check_dim(const Poly& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("Poly: ambient dimension mismatch");
}

Poly& Poly::operator+=(const Poly& other) {
  check_dim(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_dim(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator+(const Poly& other) const {
  Poly r(*this);
  r += other;
  return r;
}

Poly Poly::operator-(const Poly& other) const {
  Poly r(*this);
  r -= other;
  return r;
}

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::operator*(const Poly& other) const {
  check_dim(other);
  Poly r(dim_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly Poly::scaled(const Scalar& c) const {
  Poly r(dim_);
  if (sgn(c) == 0) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, v * c);
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("Poly: negative power");
  Poly result = constant(dim_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::derivative(int index) const {
  Poly r(dim_);
  for (const auto& [m, c] : terms_) {
    const int e = m[index];
    if (e == 0) continue;
    std::vector<int> ex = m.exponents();
    --ex[index];
    r.add_term(Monomial(std::move(ex)), c * e);
  }
  return r;
}

Scalar Poly::evaluate(std::span<const Scalar> point) const {
  if (static_cast<int>(point.size()) != dim_) throw std::invalid_argument("Poly: evaluation point size");
  Scalar acc = 0;
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (int i = 0; i < dim_; ++i) {
      for (int k = 0; k < m[i]; ++k) t *= point[i];
    }
    acc += t;
  }
  return acc;
}

std::optional<Poly> Poly::divide_linear(std::span<const Integer> alpha) const {
  if (static_cast<int>(alpha.size()) != dim_) throw std::invalid_argument("Poly: divisor dimension mismatch");
  int k = -1;
  for (int i = 0; i < dim_; ++i)
    if (sgn(alpha[i]) != 0) k = i;
  if (k < 0) throw std::invalid_argument("Poly: division by the zero form");
  const Poly divisor = linear(alpha);
  Poly rest = *this;
  Poly quotient(dim_);
  // Lex order with x_k first: the term of highest x_k degree leads.
  while (!rest.is_zero()) {
    auto lead = std::max_element(rest.terms_.begin(), rest.terms_.end(), [k](const auto& a, const auto& b) {
      return a.first[k] < b.first[k];
    });
    if (lead->first[k] == 0) return std::nullopt;
    std::vector<int> ex = lead->first.exponents();
    --ex[k];
    Poly q(dim_);
    q.add_term(Monomial(std::move(ex)), lead->second / Scalar(alpha[k]));
    quotient += q;
    rest -= q * divisor;
  }
  return quotient;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Scalar mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1;
    if (!unit || m.degree() == 0) {
      os << mag.get_str();
      if (m.degree() > 0) os << "*";
    }
    bool first_var = true;
    for (int i = 0; i < m.dim(); ++i) {
      if (m[i] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << "x" << (i + 1);
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

Derivation::Derivation(std::vector<Poly> coefficients) : coeffs_(std::move(coefficients)) {
  for (const auto& p : coeffs_)
    if (p.dim() != dim()) throw std::invalid_argument("Derivation: coefficient dimension mismatch");
}

Derivation Derivation::zero(int dim) { return Derivation(std::vector<Poly>(dim, Poly(dim))); }

Derivation Derivation::constant(std::span<const Scalar> c) {
  const int dim = static_cast<int>(c.size());
  std::vector<Poly> coeffs;
  for (int i = 0; i < dim; ++i) coeffs.push_back(Poly::constant(dim, c[i]));
  return Derivation(std::move(coeffs));
}

Derivation Derivation::from_coefficients(int dim, int degree, std::span<const Scalar> coeffs) {
  const std::size_t block = monomials_of_degree(dim, degree).size();
  if (coeffs.size() != block * dim) throw std::invalid_argument("Derivation: coefficient count mismatch");
  std::vector<Poly> polys;
  for (int i = 0; i < dim; ++i) polys.push_back(Poly::from_coefficients(dim, degree, coeffs.subspan(i * block, block)));
  return Derivation(std::move(polys));
}

bool Derivation::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Poly& p) { return p.is_zero(); });
}

std::optional<int> Derivation::polynomial_degree() const {
  std::optional<int> deg;
  for (const auto& p : coeffs_) {
    if (p.is_zero()) continue;
    if (!p.is_homogeneous()) return std::nullopt;
    if (deg && *deg != p.degree()) return std::nullopt;
    deg = p.degree();
  }
  return deg;
}

Derivation Derivation::operator+(const Derivation& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("Derivation: dimension mismatch");
  std::vector<Poly> c;
  for (int i = 0; i < dim(); ++i) c.push_back(coeffs_[i] + other.coeffs_[i]);
  return Derivation(std::move(c));
}

Derivation Derivation::scaled(const Scalar& s) const {
  std::vector<Poly> c;
  for (const auto& p : coeffs_) c.push_back(p.scaled(s));
  return Derivation(std::move(c));
}

Derivation Derivation::multiplied(const Poly& f) const {
  std::vector<Poly> c;
  for (const auto& p : coeffs_) c.push_back(p * f);
  return Derivation(std::move(c));
}

Poly apply_derivation(const Derivation& theta, const Poly& f) {
  if (theta.dim() != f.dim()) throw std::invalid_argument("apply_derivation: dimension mismatch");
  Poly r(f.dim());
  for (int i = 0; i < theta.dim(); ++i) {
    if (theta[i].is_zero()) continue;
    Poly d = f.derivative(i);
    if (!d.is_zero()) r += theta[i] * d;
  }
  return r;
}

Matrix divisibility_conditions(int dim, int degree, std::span<const Integer> alpha, int power) {
  if (static_cast<int>(alpha.size()) != dim) throw std::invalid_argument("divisibility_conditions: dimension mismatch");
  if (power < 0) throw std::invalid_argument("divisibility_conditions: negative power");
  int k = -1;
  for (int i = 0; i < dim; ++i)
    if (sgn(alpha[i]) != 0) k = i;
  if (k < 0) throw std::invalid_argument("divisibility_conditions: zero form");

  const auto basis = monomials_of_degree(dim, degree);
  Matrix conditions(0, basis.size());
  if (power == 0 || basis.empty()) return conditions;

  // Variable k now stands for y = alpha(x), so x_k = (y - sum_{i != k} a_i x_i) / a_k.
  Poly substitute(dim);
  const Scalar inv = Scalar(1) / Scalar(alpha[k]);
  substitute.add_term(Monomial::variable(dim, k), inv);
  for (int i = 0; i < dim; ++i)
    if (i != k && sgn(alpha[i]) != 0) substitute.add_term(Monomial::variable(dim, i), -Scalar(alpha[i]) * inv);

  std::vector<Poly> powers{Poly::constant(dim, 1)};
  for (int e = 1; e <= degree; ++e) powers.push_back(powers.back() * substitute);

  std::map<Monomial, std::size_t, GrlexGreater> row_of;
  for (const auto& m : basis)
    if (m[k] < power) row_of.emplace(m, row_of.size());

  Matrix t(row_of.size(), basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    std::vector<int> rest = basis[col].exponents();
    const int ek = rest[k];
    rest[k] = 0;
    Poly image(dim);
    image.add_term(Monomial(std::move(rest)), 1);
    image = image * powers[ek];
    for (const auto& [m, c] : image.terms()) {
      auto it = row_of.find(m);
      if (it != row_of.end()) t(it->second, col) = c;
    }
  }
  return t;
}

Poly determinant(const std::vector<std::vector<Poly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("determinant: empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant: matrix not square");
  if (n > 20) throw std::invalid_argument("determinant: matrix too large for cofactor expansion");
  const int dim = m[0][0].dim();

  // minors[mask] = determinant of rows [n - popcount(mask), n) against the columns in mask.
  std::unordered_map<unsigned, Poly> minors;
  minors.emplace(0u, Poly::constant(dim, 1));
  for (std::size_t size = 1; size <= n; ++size) {
    const std::size_t row = n - size;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
      Poly acc(dim);
      int sign_pos = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (!(mask & (1u << c))) continue;
        const unsigned sub = mask & ~(1u << c);
        const Poly& entry = m[row][c];
        if (!entry.is_zero()) {
          const Poly& minor = minors.at(sub);
          if (!minor.is_zero()) {
            Poly term = entry * minor;
            if (sign_pos % 2) acc -= term;
            else acc += term;
          }
        }
        ++sign_pos;
      }
      minors.emplace(mask, std::move(acc));
    }
  }
  return minors.at((1u << n) - 1);
}

}  // namespace multiarr
