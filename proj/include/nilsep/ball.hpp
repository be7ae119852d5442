#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "nilsep/group_context.hpp"

namespace nilsep {

/// The n-ball of the word metric for S ∪ S^-1, with exact word lengths.
/// Elements are stored in BFS order (layer by layer, generator order within a
/// layer), which is deterministic.
class Ball {
 public:
  int radius() const { return radius_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<UTElement>& elements() const { return elements_; }
  const std::vector<int>& lengths() const { return lengths_; }
  std::optional<int> length_of(const UTElement& g) const;
  bool contains(const UTElement& g) const { return index_.count(g) != 0; }
  /// Elements with word length <= r, in BFS order.
  std::vector<UTElement> within(int r) const;

 private:
  friend Ball ball_enumerate(const GroupContext&, int, std::uint64_t);
  int radius_ = 0;
  std::vector<UTElement> elements_;
  std::vector<int> lengths_;
  std::unordered_map<UTElement, std::size_t, UTElementHash> index_;
};

/// S ∪ S^-1 without duplicates or the identity, in a fixed order.
std::vector<UTElement> symmetric_generators(const GroupContext& ctx);

/// Throws BudgetExceeded if the ball would hold more than `budget` elements.
Ball ball_enumerate(const GroupContext& ctx, int n, std::uint64_t budget = default_budget());

/// ||g||_S if it is at most `bound`, otherwise nullopt.
std::optional<int> word_length(const GroupContext& ctx, const UTElement& g, int bound,
                               std::uint64_t budget = default_budget());

}  // namespace nilsep
