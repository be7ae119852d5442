#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "nilsep/arith.hpp"

namespace nilsep {

/// Upper unitriangular d x d matrix with arbitrary-precision integer entries.
/// The diagonal is fixed at 1 and the lower triangle at 0; only the strict
/// upper triangle is stored.
class UTElement {
 public:
  UTElement() = default;
  explicit UTElement(std::size_t dim);  // identity

  /// Rows must form an upper unitriangular matrix.
  static UTElement from_rows(const std::vector<std::vector<Int>>& rows);
  /// Identity plus `value` at (row, col), row < col.
  static UTElement elementary(std::size_t dim, std::size_t row, std::size_t col, const Int& value = 1);

  std::size_t dim() const { return dim_; }
  /// Entry (i, j) for any 0 <= i, j < dim.
  Int at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Int& v);

  bool is_identity() const;
  std::vector<std::vector<Int>> rows() const;

  friend bool operator==(const UTElement& a, const UTElement& b) {
    return a.dim_ == b.dim_ && a.upper_ == b.upper_;
  }
  friend bool operator!=(const UTElement& a, const UTElement& b) { return !(a == b); }
  /// Lexicographic on stored entries; gives deterministic orderings.
  friend bool operator<(const UTElement& a, const UTElement& b);

  std::size_t hash() const;

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  std::size_t dim_ = 0;
  std::vector<Int> upper_;  // (i, j), i < j, row-major
};

UTElement ut_multiply(const UTElement& a, const UTElement& b);
UTElement ut_inverse(const UTElement& a);
/// a^-1 b^-1 a b
UTElement ut_commutator(const UTElement& a, const UTElement& b);
UTElement ut_power(const UTElement& a, const Int& k);

UTElement operator*(const UTElement& a, const UTElement& b);

std::string format_matrix(const UTElement& a);

struct UTElementHash {
  std::size_t operator()(const UTElement& g) const { return g.hash(); }
};

}  // namespace nilsep
