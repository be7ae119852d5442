#pragma once

#include <vector>

#include "nilsep/arith.hpp"

namespace nilsep {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row-major
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

/// Column echelon form of M obtained with unimodular column operations:
/// M * transform = echelon. Zero columns of `echelon` come last.
struct ColumnEchelon {
  IntMat echelon;
  IntMat transform;
  std::size_t rank = 0;
};
ColumnEchelon column_echelon(const IntMat& m, std::size_t cols);

/// A Z-basis of {v in Z^cols : M v = 0}.
std::vector<IntVec> integer_kernel(const IntMat& m, std::size_t cols);

/// Generator g >= 0 of the ideal {sum c_i a_i} plus coefficients with sum c_i a_i = g.
struct GcdCombination {
  Int gcd;
  IntVec coefficients;
};
GcdCombination gcd_combination(const IntVec& a);

/// For primitive v in Z^r, vectors w_2..w_r with {v, w_2, ..., w_r} a basis of Z^r.
std::vector<IntVec> unimodular_complement(const IntVec& v);

IntVec primitive_part(const IntVec& v);
Int content(const IntVec& v);

/// Reduced row echelon basis of the span of `vectors` (each of length n).
RatMat row_basis(const RatMat& vectors, std::size_t n);
std::size_t rational_rank(const RatMat& vectors, std::size_t n);
bool in_span(const RatMat& basis, const RatVec& v, std::size_t n);
/// Basis of {x : M x = 0} over Q.
RatMat rational_kernel(const RatMat& m, std::size_t cols);

/// Scales a rational vector to a primitive integer vector with the same direction.
IntVec clear_denominators(const RatVec& v);

RatMat mat_mul(const RatMat& a, const RatMat& b);
RatMat identity_matrix(std::size_t n);

}  // namespace nilsep
