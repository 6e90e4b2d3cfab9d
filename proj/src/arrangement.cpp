#include "multiarr/arrangement.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace multiarr {

namespace {

Matrix rows_matrix(const std::vector<const LinearForm*>& forms, int dim) {
  Matrix m(forms.size(), dim);
  for (std::size_t r = 0; r < forms.size(); ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = (*forms[r])[c];
  return m;
}

std::size_t rank_of(const std::vector<const LinearForm*>& forms, int dim) {
  if (forms.empty()) return 0;
  return rank(rows_matrix(forms, dim));
}

}  // namespace

LinearForm LinearForm::canonicalize(std::vector<long> raw) {
  long g = 0;
  for (long v : raw) g = std::gcd(g, v);
  if (g == 0) throw std::invalid_argument("LinearForm: zero tuple does not define a hyperplane");
  auto first = std::find_if(raw.begin(), raw.end(), [](long v) { return v != 0; });
  if (*first < 0) g = -g;
  for (long& v : raw) v /= g;
  return LinearForm(std::move(raw));
}

std::vector<Integer> LinearForm::integers() const {
  std::vector<Integer> out;
  out.reserve(coeffs_.size());
  for (long v : coeffs_) out.emplace_back(v);
  return out;
}

Poly LinearForm::poly() const { return Poly::linear(std::span<const long>(coeffs_)); }

std::string LinearForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < dim(); ++i) {
    long c = coeffs_[i];
    if (c == 0) continue;
    if (c < 0) os << "-";
    else if (!first) os << "+";
    if (c != 1 && c != -1) os << (c < 0 ? -c : c) << "*";
    os << "x" << (i + 1);
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

Arrangement::Arrangement(int dim, std::vector<LinearForm> forms) : dim_(dim), forms_(std::move(forms)) {
  if (dim < 0) throw std::invalid_argument("Arrangement: negative dimension");
  std::vector<LinearForm> seen;
  for (const auto& f : forms_) {
    if (f.dim() != dim) throw std::invalid_argument("Arrangement: form dimension mismatch");
    if (std::find(seen.begin(), seen.end(), f) != seen.end())
      throw std::invalid_argument("Arrangement: repeated hyperplane " + f.to_string());
    seen.push_back(f);
  }
}

std::optional<std::size_t> Arrangement::index_of(const LinearForm& f) const {
  auto it = std::find(forms_.begin(), forms_.end(), f);
  if (it == forms_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - forms_.begin());
}

int Arrangement::rank() const {
  std::vector<const LinearForm*> ptrs;
  for (const auto& f : forms_) ptrs.push_back(&f);
  return static_cast<int>(rank_of(ptrs, dim_));
}

// ---------------------------------------------------------------------------

Multiarrangement::Multiarrangement(Arrangement arrangement, std::vector<int> multiplicity)
    : arr_(std::move(arrangement)), mult_(std::move(multiplicity)) {
  if (mult_.size() != arr_.size()) throw std::invalid_argument("Multiarrangement: multiplicity length mismatch");
  for (int v : mult_)
    if (v < 0) throw std::invalid_argument("Multiarrangement: negative multiplicity");
}

Multiarrangement Multiarrangement::simple(Arrangement arrangement) {
  std::vector<int> ones(arrangement.size(), 1);
  return Multiarrangement(std::move(arrangement), std::move(ones));
}

Multiarrangement Multiarrangement::from_forms(int dim, const std::vector<std::vector<long>>& forms,
                                              std::vector<int> mult) {
  std::vector<LinearForm> fs;
  for (const auto& f : forms) {
    if (static_cast<int>(f.size()) != dim) throw std::invalid_argument("Multiarrangement: form dimension mismatch");
    fs.push_back(LinearForm::canonicalize(f));
  }
  return Multiarrangement(Arrangement(dim, std::move(fs)), std::move(mult));
}

int Multiarrangement::multiplicity_of(const LinearForm& f) const {
  auto idx = arr_.index_of(f);
  return idx ? mult_[*idx] : 0;
}

int Multiarrangement::order() const { return std::accumulate(mult_.begin(), mult_.end(), 0); }

bool Multiarrangement::is_simple() const {
  return std::all_of(mult_.begin(), mult_.end(), [](int v) { return v == 1; });
}

Multiarrangement Multiarrangement::normalized() const {
  std::vector<LinearForm> fs;
  std::vector<int> ms;
  for (std::size_t i = 0; i < size(); ++i) {
    if (mult_[i] == 0) continue;
    fs.push_back(arr_[i]);
    ms.push_back(mult_[i]);
  }
  return Multiarrangement(Arrangement(dim(), std::move(fs)), std::move(ms));
}

Multiarrangement Multiarrangement::with_multiplicity(const LinearForm& f, int value) const {
  if (value < 0) throw std::invalid_argument("Multiarrangement: negative multiplicity");
  std::vector<LinearForm> fs = arr_.forms();
  std::vector<int> ms = mult_;
  auto idx = arr_.index_of(f);
  if (idx) {
    ms[*idx] = value;
  } else {
    fs.push_back(f);
    ms.push_back(value);
  }
  return Multiarrangement(Arrangement(dim(), std::move(fs)), std::move(ms)).normalized();
}

Multiarrangement Multiarrangement::sorted() const {
  std::vector<std::pair<LinearForm, int>> items;
  for (std::size_t i = 0; i < size(); ++i)
    if (mult_[i] > 0) items.emplace_back(arr_[i], mult_[i]);
  std::sort(items.begin(), items.end());
  std::vector<LinearForm> fs;
  std::vector<int> ms;
  for (auto& [f, v] : items) {
    fs.push_back(f);
    ms.push_back(v);
  }
  return Multiarrangement(Arrangement(dim(), std::move(fs)), std::move(ms));
}

bool Multiarrangement::is_submultiarrangement_of(const Multiarrangement& other) const {
  if (dim() != other.dim()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (mult_[i] > other.multiplicity_of(arr_[i])) return false;
  return true;
}

bool Multiarrangement::operator==(const Multiarrangement& other) const {
  if (dim() != other.dim()) return false;
  const Multiarrangement a = sorted();
  const Multiarrangement b = other.sorted();
  return a.arr_.forms() == b.arr_.forms() && a.mult_ == b.mult_;
}

std::string Multiarrangement::to_string() const {
  std::ostringstream os;
  os << "dim " << dim() << " [";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) os << ", ";
    os << "(" << arr_[i].to_string() << ")^" << mult_[i];
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------

Flat flat_of(const Arrangement& a, const std::vector<std::size_t>& hyperplanes) {
  std::vector<const LinearForm*> rows;
  for (std::size_t i : hyperplanes) rows.push_back(&a[i]);
  const std::size_t r = rank_of(rows, a.dim());
  Flat flat;
  flat.rank = static_cast<int>(r);
  for (std::size_t k = 0; k < a.size(); ++k) {
    rows.push_back(&a[k]);
    if (rank_of(rows, a.dim()) == r) flat.containing.push_back(k);
    rows.pop_back();
  }
  if (rows.empty()) {
    for (int i = 0; i < a.dim(); ++i) {
      std::vector<Scalar> e(a.dim());
      e[i] = 1;
      flat.basis.push_back(std::move(e));
    }
  } else {
    flat.basis = kernel(rows_matrix(rows, a.dim()));
  }
  return flat;
}

std::vector<Flat> rank2_flats(const Arrangement& a) {
  std::vector<Flat> flats;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const bool known = std::any_of(flats.begin(), flats.end(), [&](const Flat& f) {
        return std::binary_search(f.containing.begin(), f.containing.end(), i) &&
               std::binary_search(f.containing.begin(), f.containing.end(), j);
      });
      if (!known) flats.push_back(flat_of(a, {i, j}));
    }
  }
  return flats;
}

Multiarrangement localization(const Multiarrangement& m, const Flat& x) {
  const Flat closed = flat_of(m.arrangement(), x.containing);
  if (closed.containing != x.containing || closed.rank != x.rank)
    throw std::invalid_argument("localization: not a flat of the arrangement");
  std::vector<LinearForm> fs;
  std::vector<int> ms;
  for (std::size_t i : x.containing) {
    fs.push_back(m.form(i));
    ms.push_back(m.multiplicity(i));
  }
  return Multiarrangement(Arrangement(m.dim(), std::move(fs)), std::move(ms));
}

SimpleRestriction restrict_simple(const Arrangement& a, std::size_t h0) {
  if (h0 >= a.size()) throw std::out_of_range("restrict_simple: hyperplane index");
  const LinearForm& alpha = a[h0];
  int k = -1;
  for (int i = 0; i < a.dim(); ++i)
    if (alpha[i] != 0) k = i;

  SimpleRestriction out;
  out.dropped_coordinate = k;
  std::vector<LinearForm> images;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (j == h0) continue;
    const LinearForm& beta = a[j];
    std::vector<long> img;
    for (int i = 0; i < a.dim(); ++i) {
      if (i == k) continue;
      img.push_back(beta[i] * alpha[k] - beta[k] * alpha[i]);
    }
    LinearForm f = LinearForm::canonicalize(std::move(img));
    auto it = std::find(images.begin(), images.end(), f);
    if (it == images.end()) {
      images.push_back(f);
      out.preimages.push_back({h0, j});
    } else {
      out.preimages[it - images.begin()].push_back(j);
    }
  }
  for (auto& p : out.preimages) std::sort(p.begin(), p.end());
  out.restricted = Arrangement(a.dim() - 1, std::move(images));
  return out;
}

Essentialization essentialize(const Multiarrangement& m) {
  if (m.size() == 0) return {Multiarrangement::empty(0), m.dim()};
  std::vector<const LinearForm*> rows;
  for (const auto& f : m.arrangement().forms()) rows.push_back(&f);
  const Echelon e = row_reduce(rows_matrix(rows, m.dim()));
  const int r = static_cast<int>(e.pivots.size());
  std::vector<LinearForm> fs;
  for (const auto& f : m.arrangement().forms()) {
    std::vector<long> c;
    for (std::size_t p : e.pivots) c.push_back(f[static_cast<int>(p)]);
    fs.push_back(LinearForm::canonicalize(std::move(c)));
  }
  return {Multiarrangement(Arrangement(r, std::move(fs)), m.multiplicity()), m.dim() - r};
}

Multiarrangement change_coordinates(const Multiarrangement& m, const std::vector<std::vector<long>>& basis) {
  const int r = static_cast<int>(basis.size());
  std::vector<LinearForm> fs;
  for (const auto& f : m.arrangement().forms()) {
    // Solve sum_i c_i basis_i = f via the augmented system [B^T | f].
    Matrix aug(m.dim(), r + 1);
    for (int row = 0; row < m.dim(); ++row) {
      for (int i = 0; i < r; ++i) aug(row, i) = basis[i].at(row);
      aug(row, r) = f[row];
    }
    const Echelon e = row_reduce(aug);
    if (!e.pivots.empty() && e.pivots.back() == static_cast<std::size_t>(r))
      throw std::invalid_argument("change_coordinates: form outside the span of the basis");
    if (static_cast<int>(e.pivots.size()) != r)
      throw std::invalid_argument("change_coordinates: basis vectors are dependent");
    std::vector<Scalar> c(r);
    for (int i = 0; i < r; ++i) c[e.pivots[i]] = e.reduced(i, r);
    Integer l = 1;
    for (const auto& v : c) l = lcm(l, Integer(v.get_den()));
    std::vector<long> ints;
    for (const auto& v : c) {
      Integer z = Integer(v.get_num()) * (l / Integer(v.get_den()));
      if (!z.fits_slong_p()) throw std::overflow_error("change_coordinates: coefficient overflow");
      ints.push_back(z.get_si());
    }
    fs.push_back(LinearForm::canonicalize(std::move(ints)));
  }
  return Multiarrangement(Arrangement(r, std::move(fs)), m.multiplicity());
}

Poly defining_polynomial(const Multiarrangement& m) {
  Poly q = Poly::constant(m.dim(), 1);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.multiplicity(i) > 0) q = q * m.form(i).poly().pow(m.multiplicity(i));
  return q;
}

LinearForm relabel(const LinearForm& f, const std::vector<int>& perm) {
  std::vector<long> g(f.dim(), 0);
  for (int i = 0; i < f.dim(); ++i) g[perm[i]] = f[i];
  return LinearForm::canonicalize(std::move(g));
}

Multiarrangement relabel(const Multiarrangement& m, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != m.dim()) throw std::invalid_argument("relabel: permutation size");
  std::vector<LinearForm> fs;
  for (const auto& f : m.arrangement().forms()) fs.push_back(relabel(f, perm));
  return Multiarrangement(Arrangement(m.dim(), std::move(fs)), m.multiplicity());
}

CanonicalForm canonical_form(const Multiarrangement& m, bool permute, int max_perm_dim) {
  const Multiarrangement base = m.normalized();
  using Entry = std::pair<std::vector<long>, int>;
  auto listing = [&](const std::vector<int>& perm) {
    std::vector<Entry> items;
    for (std::size_t i = 0; i < base.size(); ++i) items.emplace_back(relabel(base.form(i), perm).coeffs(), base.multiplicity(i));
    std::sort(items.begin(), items.end());
    return items;
  };
  std::vector<int> perm(base.dim());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_perm = perm;
  std::vector<Entry> best = listing(perm);
  if (permute && base.dim() <= max_perm_dim) {
    while (std::next_permutation(perm.begin(), perm.end())) {
      auto cand = listing(perm);
      if (cand < best) {
        best = std::move(cand);
        best_perm = perm;
      }
    }
  }
  std::ostringstream key;
  key << base.dim() << ":";
  for (const auto& [f, v] : best) {
    key << "(";
    for (std::size_t i = 0; i < f.size(); ++i) key << (i ? "," : "") << f[i];
    key << ")^" << v << ";";
  }
  return {key.str(), best_perm, relabel(base, best_perm).sorted()};
}

nlohmann::json to_json(const Multiarrangement& m) {
  nlohmann::json forms = nlohmann::json::array();
  for (const auto& f : m.arrangement().forms()) forms.push_back(f.coeffs());
  return {{"dim", m.dim()}, {"forms", forms}, {"mult", m.multiplicity()}};
}

Multiarrangement multiarrangement_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("forms"))
    throw std::invalid_argument("multiarrangement JSON needs \"dim\" and \"forms\"");
  const int dim = j.at("dim").get<int>();
  const auto forms = j.at("forms").get<std::vector<std::vector<long>>>();
  std::vector<int> mult = j.contains("mult") ? j.at("mult").get<std::vector<int>>() : std::vector<int>(forms.size(), 1);
  return Multiarrangement::from_forms(dim, forms, std::move(mult));
}

}  // namespace multiarr
