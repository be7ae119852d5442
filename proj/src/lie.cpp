#include "nilsep/lie.hpp"

#include <functional>

#include "nilsep/errors.hpp"

namespace nilsep {

RationalMatrix to_rational(const UTElement& g) {
  const std::size_t d = g.dim();
  RationalMatrix m(d, RatVec(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) m[i][j] = Rat(g.at(i, j));
  return m;
}

RationalMatrix zero_matrix(std::size_t d) { return RationalMatrix(d, RatVec(d)); }

RationalMatrix mat_add(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c[i][j] += b[i][j];
  return c;
}

RationalMatrix mat_sub(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c[i][j] -= b[i][j];
  return c;
}

RationalMatrix mat_scale(const RationalMatrix& a, const Rat& s) {
  RationalMatrix c = a;
  for (auto& row : c)
    for (auto& x : row) x *= s;
  return c;
}

RationalMatrix bracket(const RationalMatrix& a, const RationalMatrix& b) { return mat_sub(mat_mul(a, b), mat_mul(b, a)); }

bool is_strictly_upper(const RationalMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (a[i][j] != 0) return false;
  return true;
}

RationalMatrix mat_log(const RationalMatrix& unipotent) {
  const std::size_t d = unipotent.size();
  const RationalMatrix n = mat_sub(unipotent, identity_matrix(d));
  if (!is_strictly_upper(n)) throw ContractViolation("mat_log: matrix is not unitriangular");
  RationalMatrix result = zero_matrix(d);
  RationalMatrix power = n;
  for (std::size_t j = 1; j < d; ++j) {
    const Rat coeff = Rat(j % 2 == 1 ? 1 : -1, static_cast<long>(j));
    result = mat_add(result, mat_scale(power, coeff));
    power = mat_mul(power, n);
  }
  return result;
}

RationalMatrix mat_log(const UTElement& g) { return mat_log(to_rational(g)); }

RationalMatrix mat_exp(const RationalMatrix& a) {
  if (!is_strictly_upper(a)) throw ContractViolation("mat_exp: matrix is not strictly upper triangular");
  const std::size_t d = a.size();
  RationalMatrix result = identity_matrix(d);
  RationalMatrix term = identity_matrix(d);
  for (std::size_t j = 1; j < d; ++j) {
    term = mat_scale(mat_mul(term, a), Rat(1, static_cast<long>(j)));
    result = mat_add(result, term);
  }
  return result;
}

std::optional<UTElement> to_integer_ut(const RationalMatrix& m) {
  const std::size_t d = m.size();
  UTElement g(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Rat& v = m[i][j];
      if (v.get_den() != 1) return std::nullopt;
      if (i == j && v != 1) return std::nullopt;
      if (i > j && v != 0) return std::nullopt;
      if (i < j) g.set(i, j, v.get_num());
    }
  return g;
}

RationalMatrix bch_matrix(const RationalMatrix& a, const RationalMatrix& b) {
  return mat_log(mat_mul(mat_exp(a), mat_exp(b)));
}

RationalMatrix bch_product(const RationalMatrix& x, const RationalMatrix& y, int nilpotency_class) {
  if (nilpotency_class > 5) throw Unsupported("BCH coefficient table stops at class 5");
  const auto br = [](const RationalMatrix& p, const RationalMatrix& q) { return bracket(p, q); };
  RationalMatrix z = mat_add(x, y);
  if (nilpotency_class < 2) return z;
  const RationalMatrix xy = br(x, y);
  const RationalMatrix yx = br(y, x);
  z = mat_add(z, mat_scale(xy, Rat(1, 2)));
  if (nilpotency_class < 3) return z;
  const RationalMatrix x_xy = br(x, xy);
  const RationalMatrix y_yx = br(y, yx);
  z = mat_add(z, mat_scale(mat_add(x_xy, y_yx), Rat(1, 12)));
  if (nilpotency_class < 4) return z;
  const RationalMatrix y_x_xy = br(y, x_xy);
  z = mat_sub(z, mat_scale(y_x_xy, Rat(1, 24)));
  if (nilpotency_class < 5) return z;
  const RationalMatrix y4 = br(y, br(y, y_yx));
  const RationalMatrix x4 = br(x, br(x, x_xy));
  const RationalMatrix x_y_y_yx = br(x, br(y, y_yx));
  const RationalMatrix y_x_x_xy = br(y, br(x, x_xy));
  const RationalMatrix y_x_y_xy = br(y, br(x, br(y, xy)));
  const RationalMatrix x_y_x_yx = br(x, br(y, br(x, yx)));
  z = mat_sub(z, mat_scale(mat_add(y4, x4), Rat(1, 720)));
  z = mat_add(z, mat_scale(mat_add(x_y_y_yx, y_x_x_xy), Rat(1, 360)));
  z = mat_add(z, mat_scale(mat_add(y_x_y_xy, x_y_x_yx), Rat(1, 120)));
  return z;
}

LieVector to_lie_vector(const GroupContext& ctx, const RationalMatrix& a) {
  // Every nu_i is an elementary matrix, so coordinates sit at the pivots.
  const auto& piv = ctx.pivots();
  LieVector v(piv.size());
  std::vector<std::vector<bool>> used(ctx.dim(), std::vector<bool>(ctx.dim(), false));
  for (std::size_t i = 0; i < piv.size(); ++i) {
    v[i] = a[piv[i].first][piv[i].second];
    used[piv[i].first][piv[i].second] = true;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!used[i][j] && a[i][j] != 0) throw ContractViolation("matrix is outside the Lie algebra of " + ctx.name());
  return v;
}

RationalMatrix from_lie_vector(const GroupContext& ctx, const LieVector& v) {
  RationalMatrix a = zero_matrix(ctx.dim());
  const auto& piv = ctx.pivots();
  for (std::size_t i = 0; i < piv.size(); ++i) a[piv[i].first][piv[i].second] = v[i];
  return a;
}

LieVector log_coordinates(const GroupContext& ctx, const UTElement& g) { return to_lie_vector(ctx, mat_log(g)); }

RatMat adjoint_matrix(const GroupContext& ctx, const UTElement& g, AdjointMethod method) {
  const std::size_t h = ctx.hirsch();
  RatMat ad(h, RatVec(h));
  const RationalMatrix log_g = mat_log(g);
  const RationalMatrix gm = to_rational(g);
  const RationalMatrix gi = to_rational(ut_inverse(g));
  for (std::size_t j = 0; j < h; ++j) {
    LieVector e(h);
    e[j] = 1;
    const RationalMatrix nu = from_lie_vector(ctx, e);
    RationalMatrix image;
    if (method == AdjointMethod::Conjugation) {
      image = mat_mul(mat_mul(gm, nu), gi);
    } else {
      // sum_k ad_{Log g}^k (nu) / k!, finite because ad is nilpotent
      image = nu;
      RationalMatrix term = nu;
      for (std::size_t k = 1; k < ctx.dim(); ++k) {
        term = mat_scale(bracket(log_g, term), Rat(1, static_cast<long>(k)));
        image = mat_add(image, term);
      }
    }
    const LieVector col = to_lie_vector(ctx, image);
    for (std::size_t i = 0; i < h; ++i) ad[i][j] = col[i];
  }
  return ad;
}

LieVector lie_bracket(const GroupContext& ctx, const LieVector& a, const LieVector& b) {
  return to_lie_vector(ctx, bracket(from_lie_vector(ctx, a), from_lie_vector(ctx, b)));
}

RatMat ad_matrix(const GroupContext& ctx, const LieVector& a) {
  const std::size_t h = ctx.hirsch();
  RatMat m(h, RatVec(h));
  for (std::size_t j = 0; j < h; ++j) {
    LieVector e(h);
    e[j] = 1;
    const LieVector col = lie_bracket(ctx, a, e);
    for (std::size_t i = 0; i < h; ++i) m[i][j] = col[i];
  }
  return m;
}

Rat lie_norm(const LieVector& a) {
  Rat s = 0;
  for (const auto& x : a) s += ::abs(x);
  return s;
}

Rat lie_norm(const GroupContext& ctx, const RationalMatrix& a) { return lie_norm(to_lie_vector(ctx, a)); }

RatMat center_preimage(const GroupContext& ctx, const RatMat& ideal_basis) {
  const std::size_t h = ctx.hirsch();
  // Linear functionals vanishing on the ideal.
  const RatMat annihilator = rational_kernel(ideal_basis, h);
  RatMat conditions;
  for (std::size_t j = 0; j < h; ++j) {
    LieVector e(h);
    e[j] = 1;
    const RatMat ad_e = ad_matrix(ctx, e);  // A -> [nu_j, A]
    for (const auto& w : annihilator) {
      RatVec row(h);
      for (std::size_t c = 0; c < h; ++c)
        for (std::size_t r = 0; r < h; ++r) row[c] += w[r] * ad_e[r][c];
      conditions.push_back(std::move(row));
    }
  }
  if (conditions.empty()) return identity_matrix(h);
  return rational_kernel(conditions, h);
}

std::vector<DistortionRow> distortion_diagnostics(const GroupContext& ctx, const Ball& ball) {
  std::vector<DistortionRow> rows(static_cast<std::size_t>(ball.radius()) + 1);
  for (std::size_t n = 0; n < rows.size(); ++n) rows[n].n = static_cast<int>(n);
  for (std::size_t idx = 0; idx < ball.size(); ++idx) {
    const auto& g = ball.elements()[idx];
    const auto n = static_cast<std::size_t>(ball.lengths()[idx]);
    const Rat norm = lie_norm(log_coordinates(ctx, g));
    Rat coeff = 0;
    for (const auto& row : adjoint_matrix(ctx, g))
      for (const auto& x : row) coeff = std::max(coeff, Rat(::abs(x)));
    if (norm > rows[n].max_log_norm) rows[n].max_log_norm = norm;
    if (coeff > rows[n].max_ad_coeff) rows[n].max_ad_coeff = coeff;
  }
  for (std::size_t n = 1; n < rows.size(); ++n) {
    rows[n].max_log_norm = std::max(rows[n].max_log_norm, rows[n - 1].max_log_norm);
    rows[n].max_ad_coeff = std::max(rows[n].max_ad_coeff, rows[n - 1].max_ad_coeff);
  }
  return rows;
}

}  // namespace nilsep
