#include <doctest.h>

#include <random>

#include "multiarr/euler.hpp"

using namespace multiarr;

namespace {

std::vector<long> diff(int l, int i, int j) {
  std::vector<long> f(l, 0);
  f[i] = 1;
  f[j] = -1;
  return f;
}

Multiarrangement braid(int l, int m) {
  std::vector<std::vector<long>> forms;
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) forms.push_back(diff(l, i, j));
  return Multiarrangement::from_forms(l, forms, std::vector<int>(forms.size(), m));
}

Flat whole_flat(const Multiarrangement& m, std::size_t a, std::size_t b) { return flat_of(m.arrangement(), {a, b}); }

// Random rank-2 multiarrangement in two variables.
Multiarrangement random_plane(std::mt19937& rng, int max_lines, int max_mult) {
  std::uniform_int_distribution<int> count(2, max_lines), coef(-3, 3), mult(1, max_mult);
  const int n = count(rng);
  std::vector<LinearForm> forms;
  while (static_cast<int>(forms.size()) < n) {
    long a = coef(rng), b = coef(rng);
    if (a == 0 && b == 0) continue;
    auto f = LinearForm::canonicalize({a, b});
    if (std::find(forms.begin(), forms.end(), f) == forms.end()) forms.push_back(f);
  }
  std::vector<int> ms;
  for (int i = 0; i < n; ++i) ms.push_back(mult(rng));
  return Multiarrangement(Arrangement(2, forms), ms);
}

}  // namespace

TEST_CASE("deletion") {
  SUBCASE("simple hyperplane is dropped") {
    const auto d = deletion(braid(3, 1), 0);
    CHECK(d.size() == 2);
    CHECK(d == Multiarrangement::from_forms(3, {diff(3, 0, 2), diff(3, 1, 2)}, {1, 1}));
  }
  SUBCASE("multiplicity is decremented") {
    const auto d = deletion(braid(3, 2), 0);
    CHECK(d == Multiarrangement::from_forms(3, {diff(3, 0, 1), diff(3, 0, 2), diff(3, 1, 2)}, {1, 2, 2}));
  }
  SUBCASE("re-adding H0 recovers the original") {
    const auto m = braid(4, 3);
    const auto d = deletion(m, 2);
    CHECK(d.with_multiplicity(m.form(2), d.multiplicity_of(m.form(2)) + 1) == m);
  }
  SUBCASE("zero multiplicity is rejected") {
    const auto m = Multiarrangement::from_forms(2, {{1, 0}, {0, 1}}, {0, 1});
    CHECK_THROWS_AS(deletion(m, 0), std::invalid_argument);
  }
}

TEST_CASE("euler_general") {
  SUBCASE("dominant H0 on three concurrent lines") {
    for (int m = 1; m <= 5; ++m) {
      const auto a = Multiarrangement::from_forms(3, {diff(3, 0, 1), diff(3, 0, 2), diff(3, 1, 2)}, {m + 1, m, m});
      CHECK(euler_general(a, 0, whole_flat(a, 0, 1)) == (3 * m + 1) / 2);
    }
  }
  SUBCASE("two hyperplanes through Y") {
    for (int m = 1; m <= 4; ++m) {
      const auto a = Multiarrangement::from_forms(4, {diff(4, 0, 1), diff(4, 2, 3)}, {m + 1, m});
      CHECK(euler_general(a, 0, whole_flat(a, 0, 1)) == m);
    }
  }
  SUBCASE("flat checks") {
    const auto a = braid(4, 1);
    CHECK_THROWS_AS(euler_general(a, 0, flat_of(a.arrangement(), {0})), std::invalid_argument);
    CHECK_THROWS_AS(euler_general(a, 5, whole_flat(a, 0, 1)), std::invalid_argument);
  }
  SUBCASE("independent of the coordinate completion") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
      const auto p = random_plane(rng, 5, 4);
      const Flat y = whole_flat(p, 0, 1);
      for (std::size_t h = 0; h < p.size(); ++h)
        CHECK(euler_general(p, h, y, Completion::FirstOther) == euler_general(p, h, y, Completion::LastOther));
    }
  }
}

TEST_CASE("euler_fast_path") {
  SUBCASE("balanced triple") {
    const int m = 2;
    const auto a = Multiarrangement::from_forms(3, {diff(3, 0, 1), diff(3, 0, 2), diff(3, 1, 2)}, {m + 1, m, m});
    const auto v = euler_fast_path(a, 0, whole_flat(a, 0, 1));
    REQUIRE(v);
    CHECK(v->value == 3);
    CHECK(v->path == EulerPath::Fast1);
  }
  SUBCASE("pair") {
    const auto a = Multiarrangement::from_forms(4, {diff(4, 0, 1), diff(4, 2, 3)}, {4, 3});
    const auto v = euler_fast_path(a, 0, whole_flat(a, 0, 1));
    REQUIRE(v);
    CHECK(v->value == 3);
    CHECK(v->path == EulerPath::Fast2);
  }
  SUBCASE("four simple lines: no rule applies") {
    const auto a = Multiarrangement::from_forms(2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}}, {1, 1, 1, 1});
    CHECK_FALSE(euler_fast_path(a, 0, whole_flat(a, 0, 1)));
  }
  SUBCASE("one heavy line") {
    const auto a = Multiarrangement::from_forms(2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}}, {1, 5, 1, 1});
    const auto v = euler_fast_path(a, 0, whole_flat(a, 0, 1));
    REQUIRE(v);
    CHECK(v->path == EulerPath::Fast3);
    CHECK(v->value == 5);
  }
  SUBCASE("agrees with the general computation on random planes") {
    std::mt19937 rng(5);
    int applied = 0;
    for (int trial = 0; trial < 150; ++trial) {
      const auto p = random_plane(rng, 5, 5);
      const Flat y = whole_flat(p, 0, 1);
      for (std::size_t h = 0; h < p.size(); ++h) {
        const auto v = euler_fast_path(p, h, y);
        if (!v) continue;
        ++applied;
        CHECK(v->value == euler_general(p, h, y));
      }
    }
    CHECK(applied > 50);
  }
}

TEST_CASE("restriction") {
  SUBCASE("braid on three coordinates") {
    const Triple simple = restriction(braid(3, 1), 0);
    REQUIRE(simple.restricted.size() == 1);
    CHECK(simple.restricted.dim() == 2);
    CHECK(simple.restricted.multiplicity(0) == 1);
    CHECK(simple.deleted.order() == 2);
    const Multiarrangement raised = braid(3, 1).with_multiplicity(braid(3, 1).form(0), 2);
    const Triple t = restriction(raised, 0);
    CHECK(t.restricted.multiplicity(0) == 2);
    CHECK(t.provenance[0].path == EulerPath::Fast1);
  }
  SUBCASE("four coordinates with H0 raised by one") {
    for (int m = 1; m <= 4; ++m) {
      Multiarrangement a = braid(4, m);
      a = a.with_multiplicity(a.form(0), m + 1);
      const Triple t = restriction(a, 0);
      REQUIRE(t.restricted.size() == 3);
      std::vector<int> triples, pairs;
      for (std::size_t i = 0; i < t.provenance.size(); ++i)
        (t.provenance[i].k == 3 ? triples : pairs).push_back(t.restricted.multiplicity(i));
      CHECK(triples == std::vector<int>{(3 * m + 1) / 2, (3 * m + 1) / 2});
      CHECK(pairs == std::vector<int>{m});
    }
  }
  SUBCASE("forced general path gives the same multiplicities") {
    for (int m = 1; m <= 3; ++m) {
      const Multiarrangement a = braid(4, m);
      for (std::size_t h = 0; h < a.size(); ++h) {
        const Triple fast = restriction(a, h);
        const Triple slow = restriction(a, h, {.force_general = true});
        CHECK(fast.restricted == slow.restricted);
        for (const auto& d : slow.provenance) CHECK(d.path == EulerPath::General);
      }
    }
  }
  SUBCASE("provenance flats have rank 2 and order drops by one") {
    const Multiarrangement a = braid(5, 2);
    const Triple t = restriction(a, 3);
    CHECK(t.deleted.order() + 1 == a.order());
    for (const auto& d : t.provenance) CHECK(flat_of(a.arrangement(), d.flat).rank == 2);
  }
  SUBCASE("json carries the path") {
    const auto j = to_json(restriction(braid(3, 2), 1));
    REQUIRE(j["provenance"].size() == 1);
    CHECK(j["provenance"][0]["euler_path"] == "fast1");
    CHECK(j["provenance"][0]["nu_star"] == 3);
  }
}

TEST_CASE("addition_deletion_infer") {
  CHECK(*addition_deletion_infer({2, 3}, {3}) == ExponentMultiset{3, 3});
  CHECK(*addition_deletion_infer({1, 2}, {2}) == ExponentMultiset{2, 2});
  CHECK_FALSE(addition_deletion_infer({1, 3}, {2}));
  CHECK_THROWS_AS(addition_deletion_infer({1, 3}, {1, 3}), std::invalid_argument);
}

TEST_CASE("triples agree with the oracle") {
  // Every braid sub-multiarrangement on three or four coordinates with small order.
  for (int l = 3; l <= 4; ++l) {
    const Multiarrangement full = braid(l, 1);
    const std::size_t n = full.size();
    const int max_mult = l == 3 ? 3 : 2;
    std::vector<int> mult(n, 0);
    int checked = 0;
    while (true) {
      std::size_t pos = 0;
      while (pos < n && mult[pos] == max_mult) mult[pos++] = 0;
      if (pos == n) break;
      ++mult[pos];
      const Multiarrangement a = Multiarrangement(full.arrangement(), mult).normalized();
      if (a.order() > (l == 3 ? 9 : 6)) continue;
      for (std::size_t h = 0; h < a.size(); ++h) {
        const Triple t = restriction(a, h);
        const auto e = free_exponents(a);
        const auto ed = free_exponents(t.deleted);
        const auto er = free_exponents(t.restricted);
        if (!ed || !er || !ed->includes(*er)) continue;
        REQUIRE(e);
        CHECK(*addition_deletion_infer(*ed, *er) == *e);
        ++checked;
      }
    }
    CHECK(checked > 0);
  }
}
