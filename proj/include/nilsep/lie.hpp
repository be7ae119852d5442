#pragma once

#include <optional>
#include <vector>

#include "nilsep/ball.hpp"
#include "nilsep/group_context.hpp"
#include "nilsep/intlinalg.hpp"

namespace nilsep {

/// Exact d x d rational matrix.
using RationalMatrix = RatMat;
/// Coordinates in the induced basis nu_i = Log(xi_i).
using LieVector = RatVec;

RationalMatrix to_rational(const UTElement& g);
RationalMatrix zero_matrix(std::size_t d);
RationalMatrix mat_add(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix mat_sub(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix mat_scale(const RationalMatrix& a, const Rat& s);
/// [A, B] = AB - BA
RationalMatrix bracket(const RationalMatrix& a, const RationalMatrix& b);
bool is_strictly_upper(const RationalMatrix& a);

/// Log of a unitriangular matrix: sum_{j>=1} (-1)^{j+1} N^j / j with N = g - I.
RationalMatrix mat_log(const UTElement& g);
RationalMatrix mat_log(const RationalMatrix& unipotent);
/// exp of a strictly upper triangular matrix: sum_j A^j / j!.
RationalMatrix mat_exp(const RationalMatrix& a);
/// The integer unitriangular matrix equal to `m`, if there is one.
std::optional<UTElement> to_integer_ut(const RationalMatrix& m);

/// Log(exp A exp B), computed on matrices. Authoritative BCH route.
RationalMatrix bch_matrix(const RationalMatrix& a, const RationalMatrix& b);
/// BCH series truncated after brackets of length `nilpotency_class`, from the
/// fixed coefficient table (supports class <= 5).
RationalMatrix bch_product(const RationalMatrix& a, const RationalMatrix& b, int nilpotency_class);

/// Coordinates of a strictly upper triangular matrix in the basis {nu_i}.
/// Throws ContractViolation if the matrix is outside span{nu_i}.
LieVector to_lie_vector(const GroupContext& ctx, const RationalMatrix& a);
RationalMatrix from_lie_vector(const GroupContext& ctx, const LieVector& v);
LieVector log_coordinates(const GroupContext& ctx, const UTElement& g);

enum class AdjointMethod { Series, Conjugation };

/// Matrix of Ad(g) in the basis {nu_i}; column j holds Ad(g)(nu_j).
RatMat adjoint_matrix(const GroupContext& ctx, const UTElement& g, AdjointMethod method = AdjointMethod::Series);
/// Matrix of ad_A in the basis {nu_i}.
RatMat ad_matrix(const GroupContext& ctx, const LieVector& a);
LieVector lie_bracket(const GroupContext& ctx, const LieVector& a, const LieVector& b);

/// ||A||_X = sum |alpha_i|
Rat lie_norm(const LieVector& a);
Rat lie_norm(const GroupContext& ctx, const RationalMatrix& a);

/// Basis of the ideal {A : [A, g] subset of n} for an ideal n (basis vectors
/// in nu-coordinates); i.e. the preimage of the centre of g / n.
RatMat center_preimage(const GroupContext& ctx, const RatMat& ideal_basis);

struct DistortionRow {
  int n = 0;
  Rat max_log_norm;
  Rat max_ad_coeff;
};
/// Per radius n = 0..ball.radius(): max ||Log g||_X and max |Ad(g)_ij| over B(n).
std::vector<DistortionRow> distortion_diagnostics(const GroupContext& ctx, const Ball& ball);

}  // namespace nilsep
