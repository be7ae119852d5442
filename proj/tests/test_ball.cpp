#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <deque>
#include <map>

#include "nilsep/ball.hpp"
#include "nilsep/errors.hpp"
#include "nilsep/heisenberg.hpp"

using namespace nilsep;

namespace {

// Plain BFS on the Cayley graph keyed by the entry tuple.
std::map<UTElement, int> bfs_oracle(const GroupContext& ctx, int n) {
  std::vector<UTElement> gens;
  for (const auto& s : ctx.word_generators()) {
    gens.push_back(s);
    gens.push_back(ut_inverse(s));
  }
  std::map<UTElement, int> dist{{ctx.identity(), 0}};
  std::deque<UTElement> q{ctx.identity()};
  while (!q.empty()) {
    const auto g = q.front();
    q.pop_front();
    const int d = dist[g];
    if (d == n) continue;
    for (const auto& s : gens) {
      const auto h = g * s;
      if (dist.emplace(h, d + 1).second) q.push_back(h);
    }
  }
  return dist;
}

}  // namespace

TEST_CASE("small balls") {
  const auto h = make_group("h3");
  const auto b0 = ball_enumerate(h, 0);
  CHECK(b0.size() == 1);
  CHECK(b0.elements()[0].is_identity());
  CHECK(ball_enumerate(h, 1).size() == 7);
  CHECK(ball_enumerate(make_group("z"), 5).size() == 11);
  CHECK(ball_enumerate(make_group("z2"), 3).size() == 25);
}

TEST_CASE("ball agrees with the BFS oracle") {
  for (const char* name : {"h3", "h5", "ut4", "h3xz"}) {
    const auto ctx = make_group(name);
    const int n = std::string(name) == "h3" ? 5 : 3;
    const auto ball = ball_enumerate(ctx, n);
    const auto oracle = bfs_oracle(ctx, n);
    REQUIRE(ball.size() == oracle.size());
    for (std::size_t i = 0; i < ball.size(); ++i) CHECK(oracle.at(ball.elements()[i]) == ball.lengths()[i]);
  }
}

TEST_CASE("balls are nested and deterministic") {
  const auto ctx = make_group("h3");
  const auto b4 = ball_enumerate(ctx, 4), b3 = ball_enumerate(ctx, 3);
  CHECK(b4.within(3) == b3.elements());
  CHECK(ball_enumerate(ctx, 4).elements() == b4.elements());
  for (std::size_t i = 1; i < b4.size(); ++i) CHECK(b4.lengths()[i - 1] <= b4.lengths()[i]);
}

TEST_CASE("word lengths") {
  const auto ctx = make_group("h3");
  const auto lambda = ctx.generator(0);
  CHECK(word_length(ctx, ctx.identity(), 5) == 0);
  CHECK(word_length(ctx, lambda, 5) == 1);
  const auto oracle = bfs_oracle(ctx, 10);
  CHECK(word_length(ctx, ut_power(lambda, 4), 10) == oracle.at(ut_power(lambda, 4)));
  CHECK(!word_length(ctx, ut_power(lambda, 40), 3));
}

TEST_CASE("triangle inequality on B(4)") {
  const auto ctx = make_group("h3");
  const auto b4 = ball_enumerate(ctx, 4);
  const auto b8 = ball_enumerate(ctx, 8);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < b4.size(); ++i)
    for (std::size_t j = 0; j < b4.size(); ++j) {
      const auto l = b8.length_of(b4.elements()[i] * b4.elements()[j]);
      if (!l || *l > b4.lengths()[i] + b4.lengths()[j]) ++violations;
    }
  CHECK(violations == 0);
}

TEST_CASE("coordinate growth is polynomial of degree class") {
  for (const char* name : {"h3", "ut4"}) {
    const auto ctx = make_group(name);
    const auto ball = ball_enumerate(ctx, std::string(name) == "h3" ? 8 : 5);
    const int c = ctx.nilpotency_class();
    std::vector<double> ratio(ball.radius() + 1, 0);
    for (std::size_t i = 1; i < ball.size(); ++i) {
      const int n = ball.lengths()[i];
      for (const auto& a : ctx.coordinates(ball.elements()[i]))
        ratio[n] = std::max(ratio[n], abs(a).get_d() / std::pow(n, c));
    }
    double cmax = 0;
    for (int n = 1; n <= ball.radius(); ++n) cmax = std::max(cmax, ratio[n]);
    MESSAGE(std::string(name) << ": measured C = " << cmax);
    CHECK(ratio[ball.radius()] <= cmax);
    CHECK(cmax <= 2.0);
  }
}

TEST_CASE("budget is enforced") {
  CHECK_THROWS_AS(ball_enumerate(make_group("ut4"), 6, 100), BudgetExceeded);
}
