#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nilsep/errors.hpp"
#include "nilsep/group_context.hpp"
#include "nilsep/heisenberg.hpp"

using namespace nilsep;

namespace {

using Rows = std::vector<std::vector<Int>>;

// Schoolbook product, independent of ut_multiply.
Rows naive_mul(const Rows& a, const Rows& b) {
  const std::size_t d = a.size();
  Rows c(d, std::vector<Int>(d, 0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

UTElement random_ut(std::mt19937_64& rng, std::size_t d, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  UTElement g(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) g.set(i, j, dist(rng));
  return g;
}

UTElement h3(long x, long y, long z) { return h_to_ut({{x}, {y}, z}); }

}  // namespace

TEST_CASE("arith helpers") {
  CHECK(*smallest_non_divisor(Int(6)) == 4);
  CHECK(*smallest_prime_non_divisor(Int(6)) == 5);
  CHECK(*smallest_prime_non_divisor(Int(60)) == 7);
  CHECK(!smallest_non_divisor(Int(0)));
  CHECK(valuation(Int(48), 2) == 4);
  CHECK(mod(Int(-7), 5) == 3);
  CHECK(next_prime(7) == 11);
  CHECK_THROWS_AS(valuation(Int(0), 3), ContractViolation);
  const auto f = factor(Int(360));
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<std::uint64_t, unsigned>{2, 3});
  CHECK(f[2] == std::pair<std::uint64_t, unsigned>{5, 1});
}

TEST_CASE("product matches schoolbook multiplication") {
  std::mt19937_64 rng(7);
  for (std::size_t d = 2; d <= 5; ++d)
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = random_ut(rng, d, 1000), b = random_ut(rng, d, 1000);
      CHECK(ut_multiply(a, b).rows() == naive_mul(a.rows(), b.rows()));
    }
}

TEST_CASE("Heisenberg examples of the product") {
  const auto alpha = h3(1, 0, 0), beta = h3(0, 1, 0);
  CHECK(UTElement(3) * alpha == alpha);
  CHECK(alpha * beta == h3(1, 1, 1));
  CHECK(beta * alpha == h3(1, 1, 0));
  CHECK(ut_commutator(alpha, beta) == h3(0, 0, 1));
  CHECK(ut_commutator(alpha, alpha).is_identity());
  CHECK(ut_power(alpha, -2) == h3(-2, 0, 0));
  CHECK(ut_power(alpha, 0).is_identity());
}

TEST_CASE("group axioms on random samples") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_ut(rng, 4, 50), b = random_ut(rng, 4, 50), c = random_ut(rng, 4, 50);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * ut_inverse(a)).is_identity());
    CHECK((ut_inverse(a) * a).is_identity());
    CHECK(ut_commutator(a, b) == ut_inverse(a) * ut_inverse(b) * a * b);
    CHECK(ut_power(a, 5) * ut_power(a, -3) == ut_power(a, 2));
  }
}

TEST_CASE("construction and dimension errors") {
  CHECK_THROWS(UTElement::from_rows({{1, 2}, {1, 1}}));
  CHECK_THROWS(UTElement::from_rows({{2, 0}, {0, 1}}));
  CHECK_THROWS(ut_multiply(UTElement(3), UTElement(4)));
  CHECK(format_matrix(UTElement(2)) == "[[1,0],[0,1]]");
}

TEST_CASE("built-in contexts") {
  const auto h = make_group("h3");
  CHECK(h.hirsch() == 3);
  CHECK(h.nilpotency_class() == 2);
  CHECK(h.center_rank() == 1);
  const auto u = make_group("ut4");
  CHECK(u.hirsch() == 6);
  CHECK(u.nilpotency_class() == 3);
  CHECK(u.center_rank() == 1);
  const auto hz = make_group("h3xz");
  CHECK(hz.center_rank() == 2);
  CHECK(make_group("z3").center_rank() == 3);
  CHECK_THROWS(make_group("q8"));
  for (const auto& name : builtin_group_names()) {
    const auto ctx = make_group(name);
    CHECK(ctx.nilpotency_class() <= static_cast<int>(ctx.dim()) - 1);
    // compatibility: <xi_1..xi_j> normal, xi_j central modulo Delta_{j-1}
    for (std::size_t j = 0; j < ctx.hirsch(); ++j)
      for (const auto& s : ctx.generators()) {
        const auto c = ctx.coordinates(ut_commutator(ctx.generator(j), s));
        for (std::size_t t = j; t < c.size(); ++t) CHECK(c[t] == 0);
      }
  }
}

TEST_CASE("Mal'tsev coordinates round trip") {
  std::mt19937_64 rng(3);
  for (const char* name : {"h3", "h5", "ut4", "ut5", "h3xz", "z3"}) {
    const auto ctx = make_group(name);
    std::uniform_int_distribution<long> dist(-30, 30);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Int> a(ctx.hirsch());
      for (auto& v : a) v = dist(rng);
      const auto g = ctx.from_coordinates(a);
      CHECK(ctx.coordinates(g) == a);
      // independent oracle: product of generator powers
      UTElement w = ctx.identity();
      for (std::size_t i = 0; i < a.size(); ++i) w = w * ut_power(ctx.generator(i), a[i]);
      CHECK(w == g);
    }
  }
  const auto h = make_group("h3");
  CHECK_THROWS_AS(h.coordinates(UTElement(4)), std::exception);
  CHECK_FALSE(make_group("h5").contains(UTElement::from_rows({{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})));
}

TEST_CASE("element text format") {
  const auto h = make_group("h3");
  CHECK(h.parse_element("h3:(5;0;1)") == h3(5, 0, 1));
  CHECK(h.format_element(h3(-2, 3, 7)) == "h3:(-2;3;7)");
  const auto h5 = make_group("h5");
  const auto g = h5.parse_element("h5:(1,2;3,4;5)");
  CHECK(h5.format_element(g) == "h5:(1,2;3,4;5)");
  const auto u = make_group("ut4");
  const auto m = u.parse_element("ut4:[[1,2,3,4],[0,1,5,6],[0,0,1,7],[0,0,0,1]]");
  CHECK(m.at(1, 3) == 6);
  CHECK(u.parse_element(u.format_element(m)) == m);
  CHECK(make_group("z2").parse_element("z2:(3,-4)") == make_group("z2").from_coordinates({3, -4}));
  CHECK_THROWS_AS(h.parse_element("h5:(1,2;3,4;5)"), ParseError);
  CHECK_THROWS_AS(h.parse_element("h3:(1;2)"), ParseError);
  CHECK_THROWS_AS(h.parse_element("h3:(a;2;3)"), ParseError);
}
