#include <doctest.h>

#include <random>

#include "multiarr/linalg.hpp"
#include "multiarr/poly.hpp"

using namespace multiarr;

namespace {

Poly x(int dim, int i) { return Poly::variable(dim, i); }

// Number of monomials of degree d in n variables.
long count_monomials(int n, int d) {
  if (d < 0) return 0;
  long c = 1;
  for (int k = 1; k <= n - 1; ++k) c = c * (d + k) / k;
  return c;
}

Poly random_poly(std::mt19937& rng, int dim, int degree) {
  std::uniform_int_distribution<int> coef(-3, 3);
  Poly p(dim);
  for (const auto& m : monomials_of_degree(dim, degree)) p.add_term(m, coef(rng));
  return p;
}

}  // namespace

TEST_CASE("poly arithmetic") {
  const Poly a = x(3, 0) - x(3, 1);
  SUBCASE("binomial square") {
    const Poly sq = a * a;
    Poly expected(3);
    expected.add_term(Monomial({2, 0, 0}), 1);
    expected.add_term(Monomial({1, 1, 0}), -2);
    expected.add_term(Monomial({0, 2, 0}), 1);
    CHECK(sq == expected);
    CHECK(sq.to_string() == "x1^2 - 2*x1*x2 + x2^2");
  }
  SUBCASE("additive identity") { CHECK(a + Poly(3) == a); }
  SUBCASE("vandermonde product has six terms") {
    const Poly v = (x(3, 0) - x(3, 1)) * (x(3, 0) - x(3, 2)) * (x(3, 1) - x(3, 2));
    // Expanded by hand: x1^2 x2 - x1^2 x3 - x1 x2^2 + x1 x3^2 + x2^2 x3 - x2 x3^2.
    Poly hand(3);
    hand.add_term(Monomial({2, 1, 0}), 1);
    hand.add_term(Monomial({2, 0, 1}), -1);
    hand.add_term(Monomial({1, 2, 0}), -1);
    hand.add_term(Monomial({1, 0, 2}), 1);
    hand.add_term(Monomial({0, 2, 1}), 1);
    hand.add_term(Monomial({0, 1, 2}), -1);
    CHECK(v.term_count() == 6);
    CHECK(v.degree() == 3);
    CHECK(v.is_homogeneous());
    CHECK(v == hand);
  }
  SUBCASE("dimension mismatch") { CHECK_THROWS_AS(a + x(2, 0), std::invalid_argument); }
  SUBCASE("scale by zero prunes") { CHECK(a.scaled(0).is_zero()); }
}

TEST_CASE("exact division by a linear form") {
  const Poly a = x(3, 0) - x(3, 2);
  const Poly f = a * a * (x(3, 1) + x(3, 2).scaled(2));
  const std::vector<Integer> alpha{1, 0, -1};
  auto q = f.divide_linear(alpha);
  REQUIRE(q);
  CHECK(*q == a * (x(3, 1) + x(3, 2).scaled(2)));
  CHECK_FALSE((x(3, 0) + x(3, 1)).divide_linear(alpha));
}

TEST_CASE("apply_derivation") {
  const int l = 3;
  const Poly f = x(l, 0) - x(l, 1);
  SUBCASE("x1 D1 on x1 - x2") {
    Derivation theta({x(l, 0), Poly(l), Poly(l)});
    CHECK(apply_derivation(theta, f) == x(l, 0));
  }
  SUBCASE("sum of all D_i kills braid forms") {
    const std::vector<Scalar> ones(l, 1);
    const Derivation theta = Derivation::constant(ones);
    for (int i = 0; i < l; ++i)
      for (int j = i + 1; j < l; ++j) CHECK(apply_derivation(theta, x(l, i) - x(l, j)).is_zero());
  }
  SUBCASE("factor pull-out") {
    Derivation theta({f * f, Poly(l), Poly(l)});
    CHECK(apply_derivation(theta, f) == f * f);
  }
  SUBCASE("bilinear over the rationals") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const Derivation t1({random_poly(rng, l, 2), random_poly(rng, l, 2), random_poly(rng, l, 2)});
      const Derivation t2({random_poly(rng, l, 2), random_poly(rng, l, 2), random_poly(rng, l, 2)});
      const Poly g1 = random_poly(rng, l, 3);
      const Poly g2 = random_poly(rng, l, 3);
      Scalar c(trial - 10, 3);
      c.canonicalize();
      CHECK(apply_derivation(t1 + t2.scaled(c), g1) == apply_derivation(t1, g1) + apply_derivation(t2, g1).scaled(c));
      CHECK(apply_derivation(t1, g1 + g2.scaled(c)) == apply_derivation(t1, g1) + apply_derivation(t1, g2).scaled(c));
    }
  }
  SUBCASE("dimension mismatch") { CHECK_THROWS_AS(apply_derivation(Derivation::zero(2), f), std::invalid_argument); }
}

TEST_CASE("divisibility_conditions") {
  SUBCASE("x1 - x2, power 1, degree 1") {
    const std::vector<Integer> alpha{1, -1};
    const Matrix t = divisibility_conditions(2, 1, alpha, 1);
    CHECK(t.rows() == 1);
    const auto k = kernel(t);
    REQUIRE(k.size() == 1);
    REQUIRE(sgn(k[0][0]) != 0);
    CHECK(Poly::from_coefficients(2, 1, k[0]).scaled(1 / k[0][0]) == x(2, 0) - x(2, 1));
  }
  SUBCASE("power 0 imposes nothing") {
    const std::vector<Integer> alpha{1, -1, 0};
    CHECK(divisibility_conditions(3, 4, alpha, 0).rows() == 0);
  }
  SUBCASE("square of x1 - x2 among binary quadratics") {
    // Enumerating a x1^2 + b x1 x2 + c x2^2: divisibility by (x1-x2)^2 forces
    // g(t,t) = a + b + c = 0 and the derivative condition 2a + b = 0, so the
    // kernel is spanned by (1, -2, 1).
    const std::vector<Integer> alpha{1, -1};
    const auto k = kernel(divisibility_conditions(2, 2, alpha, 2));
    REQUIRE(k.size() == 1);
    const Scalar s = k[0][0];
    REQUIRE(sgn(s) != 0);
    CHECK(k[0][1] / s == -2);
    CHECK(k[0][2] / s == 1);
  }
  SUBCASE("power above the degree forces zero") {
    const std::vector<Integer> alpha{2, 1, -1};
    CHECK(kernel(divisibility_conditions(3, 2, alpha, 3)).empty());
  }
  SUBCASE("kernel dimension equals dim S_{d-m}") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> coef(-3, 3);
    for (int l = 1; l <= 4; ++l) {
      for (int d = 0; d <= 6; ++d) {
        for (int m = 0; m <= d; ++m) {
          std::vector<Integer> alpha(l);
          do {
            for (auto& a : alpha) a = coef(rng);
          } while (std::all_of(alpha.begin(), alpha.end(), [](const Integer& a) { return sgn(a) == 0; }));
          const Matrix t = divisibility_conditions(l, d, alpha, m);
          const long dim_kernel = count_monomials(l, d) - static_cast<long>(rank(t));
          CHECK(dim_kernel == count_monomials(l, d - m));
        }
      }
    }
  }
}

TEST_CASE("kernel") {
  SUBCASE("identity") { CHECK(kernel(Matrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}).empty()); }
  SUBCASE("zero matrix") { CHECK(kernel(Matrix(2, 3)).size() == 3); }
  SUBCASE("rank one") {
    const auto k = kernel(Matrix{{1, 1}, {2, 2}});
    REQUIRE(k.size() == 1);
    CHECK(k[0] == std::vector<Scalar>{-1, 1});
  }
  SUBCASE("kernel vectors are annihilated") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> coef(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
      Matrix m(1 + trial % 5, 2 + trial % 7);
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = coef(rng) / (1 + trial % 3);
      const auto k = kernel(m);
      CHECK(k.size() + rank(m) == m.cols());
      for (const auto& v : k)
        for (const auto& e : m.apply(v)) CHECK(sgn(e) == 0);
    }
  }
}

TEST_CASE("polynomial determinant") {
  // det [[x1, x2], [x2, x1]] = x1^2 - x2^2
  const std::vector<std::vector<Poly>> m{{x(2, 0), x(2, 1)}, {x(2, 1), x(2, 0)}};
  CHECK(determinant(m) == x(2, 0) * x(2, 0) - x(2, 1) * x(2, 1));
}
