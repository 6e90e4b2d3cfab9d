#include <doctest.h>

#include <random>
#include <set>

#include "multiarr/arrangement.hpp"

using namespace multiarr;

namespace {

Multiarrangement braid(int l, int m) {
  std::vector<std::vector<long>> forms;
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      std::vector<long> f(l, 0);
      f[i] = 1;
      f[j] = -1;
      forms.push_back(f);
    }
  return Multiarrangement::from_forms(l, forms, std::vector<int>(forms.size(), m));
}

// Brute force: group all hyperplane pairs by the subspace they cut out, where
// the subspace is identified by the set of all hyperplanes containing it.
std::size_t brute_force_rank2_count(const Arrangement& a) {
  std::set<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      std::vector<std::size_t> group;
      for (std::size_t k = 0; k < a.size(); ++k) {
        Matrix m(3, a.dim());
        for (int c = 0; c < a.dim(); ++c) {
          m(0, c) = a[i][c];
          m(1, c) = a[j][c];
          m(2, c) = a[k][c];
        }
        if (rank(m) == 2) group.push_back(k);
      }
      groups.insert(group);
    }
  return groups.size();
}

}  // namespace

TEST_CASE("canonicalize") {
  CHECK(LinearForm::canonicalize({-2, 2, 0}).coeffs() == std::vector<long>{1, -1, 0});
  CHECK(LinearForm::canonicalize({0, 3, -3}).coeffs() == std::vector<long>{0, 1, -1});
  CHECK(LinearForm::canonicalize({1, -1, 0}).coeffs() == std::vector<long>{1, -1, 0});
  CHECK_THROWS_AS(LinearForm::canonicalize({0, 0}), std::invalid_argument);

  std::mt19937 rng(5);
  std::uniform_int_distribution<long> coef(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<long> v(4);
    for (auto& e : v) e = coef(rng);
    if (std::all_of(v.begin(), v.end(), [](long e) { return e == 0; })) continue;
    const long c = coef(rng);
    if (c == 0) continue;
    const LinearForm f = LinearForm::canonicalize(v);
    CHECK(LinearForm::canonicalize(f.coeffs()) == f);
    std::vector<long> scaled(v);
    for (auto& e : scaled) e *= c;
    CHECK(LinearForm::canonicalize(scaled) == f);
  }
}

TEST_CASE("arrangement construction rejects duplicates") {
  CHECK_THROWS_AS(Multiarrangement::from_forms(2, {{1, -1}, {-2, 2}}, {1, 1}), std::invalid_argument);
}

TEST_CASE("rank2_flats") {
  SUBCASE("braid 3: one flat with all three") {
    const auto flats = rank2_flats(braid(3, 1).arrangement());
    REQUIRE(flats.size() == 1);
    CHECK(flats[0].containing.size() == 3);
    CHECK(flats[0].rank == 2);
    CHECK(flats[0].basis.size() == 1);
  }
  SUBCASE("braid 4: four triple flats and three pair flats") {
    const auto flats = rank2_flats(braid(4, 1).arrangement());
    REQUIRE(flats.size() == 7);
    int triples = 0, pairs = 0;
    for (const auto& f : flats) {
      if (f.containing.size() == 3) ++triples;
      if (f.containing.size() == 2) ++pairs;
    }
    CHECK(triples == 4);
    CHECK(pairs == 3);
  }
  SUBCASE("two generic planes in 3 space") {
    const auto m = Multiarrangement::from_forms(3, {{1, 2, 3}, {0, 1, 5}}, {1, 1});
    const auto flats = rank2_flats(m.arrangement());
    REQUIRE(flats.size() == 1);
    CHECK(flats[0].containing == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("braid counts match brute force and the closed formula") {
    for (int l = 2; l <= 6; ++l) {
      const auto a = braid(l, 1).arrangement();
      CHECK(a.size() == static_cast<std::size_t>(l * (l - 1) / 2));
      const long triples = static_cast<long>(l) * (l - 1) * (l - 2) / 6;
      const long quads = static_cast<long>(l) * (l - 1) * (l - 2) * (l - 3) / 24;
      const auto flats = rank2_flats(a);
      CHECK(static_cast<long>(flats.size()) == triples + 3 * quads);
      CHECK(flats.size() == brute_force_rank2_count(a));
    }
  }
}

TEST_CASE("localization") {
  const auto m = braid(4, 2);
  SUBCASE("triple flat") {
    const Flat x = flat_of(m.arrangement(), {0, 1});  // x1=x2=x3
    const auto loc = localization(m, x);
    CHECK(loc.size() == 3);
    CHECK(loc.order() == 6);
    CHECK(loc.is_submultiarrangement_of(m));
  }
  SUBCASE("whole space") {
    const Flat v = flat_of(m.arrangement(), {});
    CHECK(v.rank == 0);
    CHECK(localization(m, v).size() == 0);
  }
  SUBCASE("mixed center of the rank-2 braid") {
    for (int mm = 1; mm <= 4; ++mm) {
      const auto mixed = Multiarrangement::from_forms(3, {{1, -1, 0}, {1, 0, -1}, {0, 1, -1}}, {mm + 1, mm, mm});
      const auto loc = localization(mixed, flat_of(mixed.arrangement(), {0, 1}));
      CHECK(loc.order() == 3 * mm + 1);
    }
  }
  SUBCASE("not a flat") {
    Flat bogus = flat_of(m.arrangement(), {0, 1});
    bogus.containing.pop_back();
    CHECK_THROWS_AS(localization(m, bogus), std::invalid_argument);
  }
  SUBCASE("random localizations are submultiarrangements") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
      auto b = braid(5, 1);
      std::vector<int> mult;
      for (std::size_t i = 0; i < b.size(); ++i) mult.push_back(1 + static_cast<int>(rng() % 4));
      const Multiarrangement r(b.arrangement(), mult);
      for (const auto& f : rank2_flats(r.arrangement())) CHECK(localization(r, f).is_submultiarrangement_of(r));
    }
  }
}

TEST_CASE("restrict_simple") {
  SUBCASE("braid 3 onto x1 = x2") {
    const auto r = restrict_simple(braid(3, 1).arrangement(), 0);
    CHECK(r.restricted.dim() == 2);
    REQUIRE(r.restricted.size() == 1);
    CHECK(r.preimages[0] == std::vector<std::size_t>{0, 1, 2});
    CHECK(r.dropped_coordinate == 1);
  }
  SUBCASE("braid 4 onto x1 = x2 is braid on three coordinates") {
    const auto r = restrict_simple(braid(4, 1).arrangement(), 0);
    CHECK(r.restricted.dim() == 3);
    CHECK(Multiarrangement::simple(r.restricted) == braid(3, 1));
  }
  SUBCASE("single hyperplane") {
    const auto m = Multiarrangement::from_forms(3, {{1, 1, 1}}, {1});
    const auto r = restrict_simple(m.arrangement(), 0);
    CHECK(r.restricted.empty());
    CHECK(r.restricted.dim() == 2);
  }
}

TEST_CASE("essentialize") {
  SUBCASE("braid 3") {
    for (int mm = 1; mm <= 3; ++mm) {
      const auto e = essentialize(braid(3, mm));
      CHECK(e.center_dim == 1);
      CHECK(e.essential.dim() == 2);
      CHECK(e.essential.rank() == 2);
      CHECK(e.essential.order() == 3 * mm);
    }
  }
  SUBCASE("already essential") {
    const auto m = Multiarrangement::from_forms(2, {{1, 0}, {0, 1}, {1, -1}}, {2, 1, 1});
    const auto e = essentialize(m);
    CHECK(e.center_dim == 0);
    CHECK(e.essential == m);
  }
  SUBCASE("empty arrangement") {
    const auto e = essentialize(Multiarrangement::empty(4));
    CHECK(e.center_dim == 4);
    CHECK(e.essential.dim() == 0);
  }
}

TEST_CASE("defining_polynomial") {
  const Poly x1 = Poly::variable(3, 0), x2 = Poly::variable(3, 1), x3 = Poly::variable(3, 2);
  CHECK(defining_polynomial(braid(3, 1)) == (x1 - x2) * (x1 - x3) * (x2 - x3));
  CHECK(defining_polynomial(Multiarrangement::empty(3)) == Poly::constant(3, 1));
  const auto mixed = Multiarrangement::from_forms(3, {{1, -1, 0}, {1, 0, -1}, {0, 1, -1}}, {2, 2, 1});
  CHECK(defining_polynomial(mixed) == (x1 - x2).pow(2) * (x1 - x3).pow(2) * (x2 - x3));

  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> mult;
    const auto b = braid(4, 1);
    for (std::size_t i = 0; i < b.size(); ++i) mult.push_back(static_cast<int>(rng() % 3));
    const Multiarrangement r(b.arrangement(), mult);
    const Poly q = defining_polynomial(r);
    CHECK(q.degree() == r.order());
  }
}

TEST_CASE("canonical form under coordinate permutation") {
  const auto a = Multiarrangement::from_forms(3, {{1, -1, 0}, {1, 0, -1}, {0, 1, -1}}, {3, 2, 2});
  const auto b = Multiarrangement::from_forms(3, {{1, -1, 0}, {1, 0, -1}, {0, 1, -1}}, {2, 2, 3});
  const auto ca = canonical_form(a);
  const auto cb = canonical_form(b);
  CHECK(ca.key == cb.key);
  CHECK(relabel(a, ca.perm).sorted() == ca.representative);
  CHECK(canonical_form(a, false).key != canonical_form(b, false).key);
}

TEST_CASE("json interchange") {
  const auto j = nlohmann::json::parse(R"({"dim": 3, "forms": [[1,-1,0],[1,0,-1],[0,1,-1]], "mult": [2,2,2]})");
  const auto m = multiarrangement_from_json(j);
  CHECK(m == braid(3, 2));
  CHECK(multiarrangement_from_json(to_json(m)) == m);
  CHECK_THROWS(multiarrangement_from_json(nlohmann::json::parse(R"({"dim": 2, "forms": [[1,-1],[2,-2]], "mult": [1,1]})")));
}
