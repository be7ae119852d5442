#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nilsep/ball.hpp"
#include "nilsep/errors.hpp"
#include "nilsep/growth.hpp"
#include "nilsep/heisenberg.hpp"
#include "nilsep/witness.hpp"

using namespace nilsep;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<GrowthSample> synthetic(double (*f)(double)) {
  std::vector<GrowthSample> out;
  for (int n = 1; n <= 12; ++n) out.push_back({n, Int(std::lround(f(n))), 0, true});
  return out;
}

std::uint64_t least_non_divisor(long v) {
  v = std::labs(v);
  std::uint64_t m = 2;
  while (v % static_cast<long>(m) == 0) ++m;
  return m;
}

}  // namespace

TEST_CASE("fits on synthetic data") {
  const auto cube = synthetic([](double n) { return n * n * n; });
  const auto f = fit_exponent(cube, FitModel::PowerLaw);
  CHECK(f.exponent == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(f.residual == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(f.n_min == 3);
  CHECK(f.n_max == 12);
  CHECK(f.samples_used == 10);

  std::vector<GrowthSample> logs;
  for (int n = 3; n <= 400; n += 7) {
    const double l = std::log(double(n));
    logs.push_back({n, Int(std::lround(5e6 * l * l * l)), 0, true});
  }
  CHECK(fit_exponent(logs, FitModel::PolyLog).exponent == doctest::Approx(3.0).epsilon(1e-3));

  CHECK_THROWS_AS(fit_exponent({cube.begin(), cube.begin() + 5}, FitModel::PowerLaw), ContractViolation);
  auto bad = cube;
  bad[5].value = 0;
  CHECK_THROWS_AS(fit_exponent(bad, FitModel::PowerLaw), ContractViolation);
  CHECK(fit_model_from_string(to_string(FitModel::PolyLog)) == FitModel::PolyLog);
}

TEST_CASE("reports") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "nilsep_report_test";
  fs::remove_all(dir);
  const auto empty = emit_report({}, {}, dir.string(), "empty");
  CHECK(slurp(empty.csv) == "n,value,witness_count,restricted\n");
  CHECK(fs::exists(empty.json));
  CHECK(fs::exists(empty.gnuplot));

  const auto run = measure_conj_growth(make_group("h3"), 4);
  const std::vector<FitReport> fits{fit_exponent(run.samples, FitModel::PowerLaw, 1)};
  const auto a = emit_report(run.samples, fits, dir.string(), "a");
  const auto b = emit_report(run.samples, fits, dir.string(), "b");
  CHECK(slurp(a.csv) == slurp(b.csv));
  CHECK(slurp(a.json) == slurp(b.json));
  CHECK(slurp(a.csv).rfind("n,value,witness_count,restricted\n1,27,", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("restricted D of single elements") {
  const auto z = make_group("z");
  // lcm(1..j) for j where the smallest non-divisor is prime
  const std::vector<std::pair<long, long>> cases{{1, 2}, {2, 3}, {12, 5}, {60, 7}};
  for (const auto& [k, p] : cases) CHECK(restricted_rf_value(z, z.from_coordinates({k})) == p);
  CHECK(restricted_rf_value(z, z.from_coordinates({6})) == 5);
  const auto h = make_group("h3");
  CHECK(restricted_rf_value(h, ut_power(h.generator(0), 60)) == 343);
  CHECK(restricted_rf_value(h, h.generator(0)) == 8);
  CHECK(restricted_rf_value(h, h.generator(1)) == 2);
  // consistent with the witness construction
  const auto ball = ball_enumerate(h, 3);
  for (const auto& g : ball.elements())
    if (!g.is_identity()) CHECK(restricted_rf_value(h, g) <= rf_witness(h, g).spec.order);
}

TEST_CASE("RF growth") {
  const auto h = make_group("h3");
  const auto run = measure_rf_growth(h, 4);
  REQUIRE(run.samples.size() == 4);
  CHECK(run.samples[0].value == 8);
  CHECK(run.samples[0].witness_count == 6);
  const auto ball = ball_enumerate(h, 4);
  for (const auto& s : run.samples) CHECK(s.witness_count + 1 == ball.within(s.n).size());
  for (std::size_t i = 1; i < run.samples.size(); ++i) CHECK(run.samples[i - 1].value <= run.samples[i].value);

  for (const char* name : {"h3", "z2", "ut4", "h3xz"}) {
    const auto ctx = make_group(name);
    GrowthOptions raw;
    raw.raw_oracle = true;
    const auto fast = measure_rf_growth(ctx, 2);
    CHECK(fast.samples == measure_rf_growth(ctx, 2, raw).samples);
  }
  const auto z = measure_rf_growth(make_group("z"), 12);
  CHECK(z.samples[11].value == 5);
  CHECK(z.samples[5].value == 5);
  CHECK(z.samples[1].value == 3);
  CHECK_FALSE(z.partial);
}

TEST_CASE("Conj growth agrees with the raw pair oracle") {
  GrowthOptions raw;
  raw.raw_oracle = true;
  for (const char* name : {"h3", "z", "z2"}) {
    const auto ctx = make_group(name);
    CHECK(measure_conj_growth(ctx, 3).samples == measure_conj_growth(ctx, 3, raw).samples);
  }
  const auto h5 = make_group("h5");
  CHECK(measure_conj_growth(h5, 2).samples == measure_conj_growth(h5, 2, raw).samples);
  CHECK_THROWS_AS(measure_conj_growth(make_group("h3"), 4, raw), ContractViolation);
}

TEST_CASE("Conj growth on the integers is the D of differences") {
  const auto z = make_group("z");
  const auto run = measure_conj_growth(z, 10);
  for (const auto& s : run.samples) {
    std::uint64_t best = 0;
    for (long a = -s.n; a <= s.n; ++a)
      for (long b = a + 1; b <= s.n; ++b) best = std::max(best, least_non_divisor(b - a));
    CHECK(s.value == best);
    CHECK(s.witness_count == std::uint64_t((2 * s.n + 1) * (2 * s.n)) / 2);
  }
}

TEST_CASE("Heisenberg Conj samples dominate the lower-bound pairs") {
  const auto h = make_group("h3");
  const auto run = measure_conj_growth(h, 7);
  const auto ball = ball_enumerate(h, 7);
  for (std::uint64_t p : {2, 3, 5}) {
    const auto [g, e] = h_lower_bound_pair(p, 1);
    const int r = std::max(*ball.length_of(h_to_ut(g)), *ball.length_of(h_to_ut(e)));
    CHECK(run.samples[r - 1].value >= ipow(p, 3u));
  }
  // non-conjugate pair counts match a direct count
  for (int n = 1; n <= 3; ++n) {
    const auto el = ball.within(n);
    std::uint64_t count = 0;
    for (std::size_t a = 0; a < el.size(); ++a)
      for (std::size_t b = a + 1; b < el.size(); ++b)
        if (!h_is_conjugate(h_from_ut(el[a]), h_from_ut(el[b]))) ++count;
    CHECK(run.samples[n - 1].witness_count == count);
  }
}

TEST_CASE("witness orders bound the measured CD") {
  const auto h = make_group("h3");
  const auto ball = ball_enumerate(h, 2);
  Int worst = 0;
  for (const auto& a : ball.elements())
    for (const auto& b : ball.elements()) {
      if (is_conjugate(h, a, b)) continue;
      const auto c = conjugacy_witness(h, a, b);
      CHECK(c.min_modulus);
      CHECK(*c.min_modulus <= c.spec.modulus);
      worst = std::max(worst, ipow(*c.min_modulus, 3u));
    }
  CHECK(measure_conj_growth(h, 2).samples.back().value == worst);
}

TEST_CASE("budget stops runs with a flag") {
  GrowthOptions small;
  small.budget = 200;
  const auto run = measure_rf_growth(make_group("h3"), 8, small);
  CHECK(run.partial);
  CHECK(!run.samples.empty());
  CHECK(run.samples.size() < 8);
  const auto pairs = measure_conj_growth(make_group("ut4"), 3, small);
  CHECK(pairs.partial);
}
