#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <unordered_set>
#include <vector>

#include "nilsep/group_context.hpp"

namespace nilsep {

/// Image of a unitriangular matrix in UT(d, Z/m), d <= 8. Used by the
/// exhaustive oracles; entries are kept in [0, m).
struct ModElement {
  static constexpr std::size_t kMaxDim = 8;
  std::uint8_t dim = 0;
  std::array<std::int64_t, kMaxDim * (kMaxDim - 1) / 2> upper{};

  std::int64_t at(std::size_t i, std::size_t j) const;
  std::int64_t& ref(std::size_t i, std::size_t j);
  bool is_identity() const;
  friend bool operator==(const ModElement& a, const ModElement& b) {
    return a.dim == b.dim && a.upper == b.upper;
  }
};

struct ModElementHash {
  std::size_t operator()(const ModElement& g) const;
};

using ModSet = std::unordered_set<ModElement, ModElementHash>;

/// Congruence quotient Gamma / Gamma(m): entry-wise reduction of the matrix model.
class ModQuotient {
 public:
  ModQuotient(const GroupContext& ctx, std::int64_t m);

  std::int64_t modulus() const { return m_; }
  ModElement identity() const;
  ModElement reduce(const UTElement& g) const;
  ModElement multiply(const ModElement& a, const ModElement& b) const;
  ModElement inverse(const ModElement& a) const;
  /// u^-1 g u
  ModElement conjugate(const ModElement& g, const ModElement& u) const;

  /// m^h, or nullopt on overflow.
  std::uint64_t order() const;
  /// Visits every element xi_1^{a_1} ... xi_h^{a_h}, 0 <= a_i < m. Throws BudgetExceeded above `budget`.
  void for_each_element(const std::function<void(const ModElement&)>& visit, std::uint64_t budget) const;

  ModSet conjugacy_class(const ModElement& g, std::uint64_t budget) const;
  bool is_conjugate(const ModElement& g, const ModElement& h, std::uint64_t budget) const;
  /// Subgroup generated by `gens`, by closure under right multiplication.
  ModSet closure(const std::vector<ModElement>& gens, std::uint64_t budget) const;

 private:
  const GroupContext* ctx_;
  std::int64_t m_;
  std::vector<ModElement> generators_;
};

}  // namespace nilsep
