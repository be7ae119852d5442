#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nilsep/ball.hpp"
#include "nilsep/errors.hpp"
#include "nilsep/heisenberg.hpp"
#include "nilsep/lie.hpp"
#include "nilsep/modular.hpp"
#include "nilsep/witness.hpp"

using namespace nilsep;

namespace {

UTElement h3(long x, long y, long z) { return h_to_ut({{x}, {y}, z}); }

UTElement random_element(const GroupContext& ctx, std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  std::vector<Int> a(ctx.hirsch());
  for (auto& v : a) v = dist(rng);
  return ctx.from_coordinates(a);
}

// gcd of the xi_1-exponents of [g, u] over u in the ball with [g, u] in <xi_1>.
Int brute_tau(const GroupContext& ctx, const UTElement& g, const Ball& ball) {
  Int t = 0;
  for (const auto& u : ball.elements()) {
    const auto c = ctx.coordinates(ut_commutator(g, u));
    bool inside = true;
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i] != 0) inside = false;
    if (inside) t = gcd(t, c[0]);
  }
  return t;
}

// Non-conjugacy certified in some Gamma / Gamma(m), m <= bound.
bool separated_somewhere(const GroupContext& ctx, const UTElement& g, const UTElement& h, std::uint64_t bound) {
  for (std::uint64_t m = 2; m <= bound; ++m) {
    const ModQuotient q(ctx, static_cast<std::int64_t>(m));
    if (q.order() > 300000) break;
    if (!q.is_conjugate(q.reduce(g), q.reduce(h), 300000)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("centralizer preimage in H3") {
  // H3 / Delta_1 is abelian, so the preimage is all of H3 and tau = gcd of the images
  const auto ctx = make_group("h3");
  const auto g = h3(4, 6, 1);
  const auto c = centralizer_preimage(ctx, g);
  REQUIRE(c.generators.size() == 3);
  CHECK(c.generators[0] == ctx.generator(0));
  Int t = 0;
  for (std::size_t i = 0; i < c.generators.size(); ++i) {
    const auto k = ctx.coordinates(ut_commutator(g, c.generators[i]));
    CHECK(k[1] == 0);
    CHECK(k[2] == 0);
    CHECK(k[0] == c.commutator_exponents[i]);
    t = gcd(t, k[0]);
  }
  CHECK(t == 2);
  CHECK_THROWS_AS(centralizer_preimage(ctx, h3(1, 0, 0), 3), ContractViolation);
}

TEST_CASE("centralizer preimage in UT4 is a proper sublattice") {
  const auto u = make_group("ut4");
  const auto g = u.generator(3);  // E12
  const auto c = centralizer_preimage(u, g);
  for (const auto& x : c.generators) {
    const auto k = u.coordinates(ut_commutator(g, x));
    for (std::size_t i = 1; i < k.size(); ++i) CHECK(k[i] == 0);
  }
  // E23 does not centralize E12 modulo Delta_1
  CHECK(c.generators.size() < u.hirsch());
}

TEST_CASE("tau agrees with the closed form and brute force") {
  const auto h = make_group("h3");
  const auto ball = ball_enumerate(h, 4);
  for (const auto& g : ball.elements()) CHECK(tau_general(h, g) == h_tau(h_from_ut(g)));
  const auto h5 = make_group("h5");
  const auto b5 = ball_enumerate(h5, 2);
  for (const auto& g : b5.elements()) CHECK(tau_general(h5, g) == h_tau(h_from_ut(g)));
  CHECK(tau_general(h, h.identity()) == 0);

  const auto u = make_group("ut4");
  const auto b3 = ball_enumerate(u, 3);
  const auto sample = ball_enumerate(u, 2);
  for (std::size_t i = 0; i < sample.size(); i += 7) {
    const auto& g = sample.elements()[i];
    CHECK(tau_general(u, g) == brute_tau(u, g, b3));
  }
}

TEST_CASE("e exponent") {
  const auto z = make_group("z2");
  CHECK(e_exponent(z, z.from_coordinates({4, 6}), 2) == 0);
  const auto h = make_group("h3");
  CHECK(e_exponent(h, h3(4, 6, 0), 2) == 1);
  CHECK(e_exponent(h, h3(4, 6, 0), 3) == 0);
  CHECK(e_exponent(h, h3(0, 0, 8), 2) == 0);
  CHECK(e_exponent(h, h3(8, 0, 0), 2) == 3);
  std::mt19937_64 rng(9);
  const auto u = make_group("ut4");
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_element(u, rng, 4);
    for (std::uint64_t p : {2, 3}) CHECK(e_exponent(u, g, p, 0) >= e_exponent(u, g, p, 1));
  }
}

TEST_CASE("exact conjugacy") {
  const auto h = make_group("h3");
  const auto ball = ball_enumerate(h, 2);
  for (const auto& a : ball.elements())
    for (const auto& b : ball.elements()) {
      const bool expect = h_is_conjugate(h_from_ut(a), h_from_ut(b));
      CHECK(is_conjugate(h, a, b) == expect);
      if (expect) {
        const auto x = find_conjugator(h, a, b);
        REQUIRE(x);
        CHECK(ut_inverse(*x) * a * *x == b);
      }
    }

  std::mt19937_64 rng(4);
  const auto u = make_group("ut4");
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_element(u, rng, 3), c = random_element(u, rng, 3);
    const auto target = ut_inverse(c) * g * c;
    const auto x = find_conjugator(u, g, target);
    REQUIRE(x);
    CHECK(ut_inverse(*x) * g * *x == target);
  }
  // E12^2 vs E12^2 E14: tau = 2 does not divide the offset 1
  const auto g = ut_power(u.generator(3), 2);
  CHECK(tau_general(u, g) == brute_tau(u, g, ball_enumerate(u, 3)));
  CHECK(tau_general(u, g) == 2);
  const auto shifted = g * u.generator(0);
  CHECK_FALSE(is_conjugate(u, g, shifted));
  CHECK(separated_somewhere(u, g, shifted, 4));
  CHECK(is_conjugate(u, g, g * ut_power(u.generator(0), 4)));
}

TEST_CASE("Lambda subgroups") {
  const auto h = make_group("h3");
  const auto l = lambda_subgroup(h, ut_power(h.generator(0), 5));
  CHECK(l.generators.empty());
  CHECK(l.quotient_hirsch == 3);

  const auto z = make_group("z2");
  const auto lz = lambda_subgroup(z, z.from_coordinates({1, 0}));
  REQUIRE(lz.generators.size() == 1);
  const auto c = z.coordinates(lz.generators[0]);
  CHECK(c[0] == 0);
  CHECK(abs(c[1]) == 1);
  CHECK(lz.quotient_hirsch == 1);

  const auto hz = make_group("h3xz");
  const auto lh = lambda_subgroup(hz, hz.generator(0));
  REQUIRE(lh.generators.size() == 1);
  CHECK((lh.generators[0] == hz.generator(1) || lh.generators[0] == ut_inverse(hz.generator(1))));
  CHECK(lh.quotient_hirsch == 3);
  CHECK(lambda_subgroup(hz, hz.generator(1)).quotient_hirsch == 1);

  CHECK_THROWS_AS(lambda_subgroup(h, h.generator(1)), ContractViolation);
  CHECK_THROWS_AS(lambda_subgroup(h, h.identity()), ContractViolation);

  // g must survive: no power of g lies in Lambda, and Lambda is normal
  const auto lz2 = lambda_subgroup(z, z.from_coordinates({2, 3}));
  REQUIRE(lz2.generators.size() == 1);
  const auto w = z.coordinates(lz2.generators[0]);
  CHECK(w[0] * 3 - w[1] * 2 != 0);
}

TEST_CASE("psi invariants") {
  CHECK(psi_invariants(make_group("z")).rf == 1);
  CHECK(psi_invariants(make_group("z3")).rf == 1);
  CHECK_FALSE(psi_invariants(make_group("z2")).conj);
  for (std::size_t k : {1, 2}) {
    const auto p = psi_invariants(make_heisenberg(k));
    CHECK(p.rf == 2 * k + 1);
    REQUIRE(p.conj);
    CHECK(*p.conj == 2 * k + 1);
  }
  const auto hz = psi_invariants(make_group("h3xz"));
  CHECK(hz.rf == 3);
  CHECK(hz.conj == std::optional<std::size_t>(3));
  CHECK(psi_invariants(make_group("ut4")).rf == 6);
}

TEST_CASE("conjugacy witnesses") {
  const auto h = make_group("h3");
  for (std::uint64_t p : {2, 3, 5, 7}) {
    const auto [g, e] = h_lower_bound_pair(p, 1);
    const auto c = conjugacy_witness(h, h_to_ut(g), h_to_ut(e));
    CHECK(c.spec.modulus == p);
    CHECK(c.spec.order == ipow(p, 3u));
    CHECK(c.verified);
    CHECK(c.method == VerificationMethod::OrbitOracle);
    CHECK(c.case_tag.front() == 'B');
    CHECK(c.min_modulus == p);
  }
  const auto c = conjugacy_witness(h, h3(0, 0, 1), h3(0, 0, 2));
  CHECK(c.spec.modulus == 2);
  CHECK(c.spec.order == 8);
  CHECK(c.verified);
  CHECK(c.case_tag.front() == 'C');
  const auto a = conjugacy_witness(h, h3(1, 0, 0), h3(3, 0, 0));
  CHECK(a.case_tag.front() == 'A');
  CHECK(a.verified);
  CHECK_THROWS_AS(conjugacy_witness(h, h3(2, 0, 1), h3(2, 0, 3)), ContractViolation);

  std::mt19937_64 rng(12);
  const auto u = make_group("ut4");
  int done = 0;
  for (int trial = 0; trial < 60 && done < 10; ++trial) {
    const auto g = random_element(u, rng, 2), k = random_element(u, rng, 2);
    if (is_conjugate(u, g, k)) continue;
    const auto w = conjugacy_witness(u, g, k, 300000);
    if (ipow(w.spec.modulus, 6u) > 300000) continue;
    ++done;
    CHECK(w.verified);
    const ModQuotient q(u, static_cast<std::int64_t>(w.spec.modulus));
    CHECK_FALSE(q.is_conjugate(q.reduce(g), q.reduce(k), 300000));
  }
  CHECK(done > 0);
}

TEST_CASE("residual finiteness witnesses") {
  const auto h = make_group("h3");
  const auto l = rf_witness(h, h.generator(0));
  CHECK(l.spec.modulus == 2);
  CHECK(l.spec.lambda_gens.empty());
  CHECK(l.spec.order == 8);
  CHECK(l.verified);
  const auto l60 = rf_witness(h, ut_power(h.generator(0), 60));
  CHECK(l60.spec.modulus == 7);
  CHECK(l60.spec.order == 343);
  CHECK(l60.verified);
  const auto a = rf_witness(h, h.generator(1));
  CHECK(a.spec.order == 2);
  CHECK(a.verified);
  CHECK_THROWS_AS(rf_witness(h, h.identity()), ContractViolation);

  // every nontrivial element of small balls gets a verified certificate
  for (const char* name : {"h3", "ut4", "h3xz", "z2"}) {
    const auto ctx = make_group(name);
    const auto ball = ball_enumerate(ctx, 2);
    for (const auto& g : ball.elements()) {
      if (g.is_identity()) continue;
      const auto w = rf_witness(ctx, g);
      CHECK(w.verified);
      // independent image check: g is not a product of Lambda generators mod p
      const ModQuotient q(ctx, static_cast<std::int64_t>(w.spec.modulus));
      std::vector<ModElement> gens;
      for (const auto& x : w.spec.lambda_gens) gens.push_back(q.reduce(x));
      CHECK_FALSE(q.closure(gens, 1'000'000).count(q.reduce(g)));
    }
  }
}

TEST_CASE("certificates round-trip through JSON and re-verify") {
  const auto h = make_group("h3");
  const auto [g, e] = h_lower_bound_pair(5, 1);
  const auto c = conjugacy_witness(h, h_to_ut(g), h_to_ut(e));
  const auto line = certificate_to_json(h, c);
  CHECK(line.find("\"quotient_order\":125") != std::string::npos);
  CHECK(line.find("\"case\":\"B\"") != std::string::npos);
  const auto back = certificate_from_json(line);
  CHECK(back.inputs == c.inputs);
  CHECK(back.spec.modulus == 5);
  CHECK(back.spec.order == 125);
  CHECK(back.case_tag == c.case_tag);
  CHECK(verify_certificate(h, back).ok);

  auto forged = back;
  forged.spec.modulus = 3;
  CHECK_FALSE(verify_certificate(h, forged).ok);

  const auto r = rf_witness(h, h.generator(1));
  const auto rb = certificate_from_json(certificate_to_json(h, r));
  CHECK(rb.spec.lambda_gens == r.spec.lambda_gens);
  CHECK(verify_certificate(h, rb).ok);
  auto wrong_order = rb;
  wrong_order.spec.order = 4;
  CHECK_FALSE(verify_certificate(h, wrong_order).ok);

  CHECK_THROWS_AS(certificate_from_json("{not json"), ParseError);
  CHECK_THROWS_AS(certificate_from_json("{\"group\":\"h3\"}"), ParseError);
}
