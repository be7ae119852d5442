#include "nilsep/ball.hpp"

#include <string>

#include "nilsep/errors.hpp"

namespace nilsep {

std::optional<int> Ball::length_of(const UTElement& g) const {
  const auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return lengths_[it->second];
}

std::vector<UTElement> Ball::within(int r) const {
  std::vector<UTElement> out;
  for (std::size_t i = 0; i < elements_.size() && lengths_[i] <= r; ++i) out.push_back(elements_[i]);
  return out;
}

std::vector<UTElement> symmetric_generators(const GroupContext& ctx) {
  std::vector<UTElement> out;
  auto push = [&](const UTElement& g) {
    if (g.is_identity()) return;
    for (const auto& h : out)
      if (h == g) return;
    out.push_back(g);
  };
  for (const auto& s : ctx.word_generators()) {
    push(s);
    push(ut_inverse(s));
  }
  return out;
}

Ball ball_enumerate(const GroupContext& ctx, int n, std::uint64_t budget) {
  if (n < 0) throw ContractViolation("ball radius must be nonnegative");
  const auto gens = symmetric_generators(ctx);
  Ball ball;
  ball.radius_ = n;
  auto add = [&](UTElement g, int len) {
    if (ball.elements_.size() >= budget)
      throw BudgetExceeded("ball of radius " + std::to_string(n) + " in " + ctx.name() + " exceeds budget " +
                           std::to_string(budget));
    ball.index_.emplace(g, ball.elements_.size());
    ball.elements_.push_back(std::move(g));
    ball.lengths_.push_back(len);
  };
  add(ctx.identity(), 0);
  std::size_t layer_begin = 0;
  for (int len = 1; len <= n; ++len) {
    const std::size_t layer_end = ball.elements_.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto& s : gens) {
        UTElement next = ut_multiply(ball.elements_[i], s);
        if (!ball.index_.count(next)) add(std::move(next), len);
      }
    }
    if (ball.elements_.size() == layer_end) break;  // finite group exhausted
    layer_begin = layer_end;
  }
  return ball;
}

std::optional<int> word_length(const GroupContext& ctx, const UTElement& g, int bound, std::uint64_t budget) {
  if (g.is_identity()) return 0;
  const auto gens = symmetric_generators(ctx);
  std::unordered_map<UTElement, int, UTElementHash> seen;
  std::vector<UTElement> frontier{ctx.identity()};
  seen.emplace(ctx.identity(), 0);
  for (int len = 1; len <= bound; ++len) {
    std::vector<UTElement> next;
    for (const auto& x : frontier) {
      for (const auto& s : gens) {
        UTElement y = ut_multiply(x, s);
        if (seen.count(y)) continue;
        if (y == g) return len;
        if (seen.size() >= budget) throw BudgetExceeded("word_length search exceeds budget");
        seen.emplace(y, len);
        next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace nilsep
