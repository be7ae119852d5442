#include "nilsep/intlinalg.hpp"

#include <utility>

#include "nilsep/errors.hpp"

namespace nilsep {

ColumnEchelon column_echelon(const IntMat& m, std::size_t cols) {
  ColumnEchelon out;
  out.echelon = m;
  out.transform.assign(cols, IntVec(cols));
  for (std::size_t i = 0; i < cols; ++i) out.transform[i][i] = 1;
  auto& a = out.echelon;
  auto& u = out.transform;
  const std::size_t rows = m.size();

  auto col_sub = [&](std::size_t dst, std::size_t src, const Int& q) {  // col dst -= q col src
    if (q == 0) return;
    for (std::size_t r = 0; r < rows; ++r) a[r][dst] -= q * a[r][src];
    for (std::size_t r = 0; r < cols; ++r) u[r][dst] -= q * u[r][src];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][x], a[r][y]);
    for (std::size_t r = 0; r < cols; ++r) std::swap(u[r][x], u[r][y]);
  };

  std::size_t pivot_col = 0;
  for (std::size_t r = 0; r < rows && pivot_col < cols; ++r) {
    // Euclid across columns pivot_col.. on row r until one nonzero entry remains.
    for (;;) {
      std::size_t best = cols;
      for (std::size_t c = pivot_col; c < cols; ++c)
        if (a[r][c] != 0 && (best == cols || abs(a[r][c]) < abs(a[r][best]))) best = c;
      if (best == cols) break;
      col_swap(pivot_col, best);
      bool done = true;
      for (std::size_t c = pivot_col + 1; c < cols; ++c) {
        if (a[r][c] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a[r][c].get_mpz_t(), a[r][pivot_col].get_mpz_t());
        col_sub(c, pivot_col, q);
        if (a[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (a[r][pivot_col] != 0) {
      if (a[r][pivot_col] < 0) {
        for (std::size_t rr = 0; rr < rows; ++rr) a[rr][pivot_col] = -a[rr][pivot_col];
        for (std::size_t rr = 0; rr < cols; ++rr) u[rr][pivot_col] = -u[rr][pivot_col];
      }
      ++pivot_col;
    }
  }
  out.rank = pivot_col;
  return out;
}

std::vector<IntVec> integer_kernel(const IntMat& m, std::size_t cols) {
  const auto ce = column_echelon(m, cols);
  std::vector<IntVec> basis;
  for (std::size_t c = ce.rank; c < cols; ++c) {
    IntVec v(cols);
    for (std::size_t r = 0; r < cols; ++r) v[r] = ce.transform[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

GcdCombination gcd_combination(const IntVec& a) {
  const auto ce = column_echelon(IntMat{a}, a.size());
  GcdCombination out;
  out.coefficients.assign(a.size(), 0);
  if (a.empty() || ce.rank == 0) return out;
  out.gcd = ce.echelon[0][0];
  for (std::size_t r = 0; r < a.size(); ++r) out.coefficients[r] = ce.transform[r][0];
  return out;
}

Int content(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

IntVec primitive_part(const IntVec& v) {
  const Int g = content(v);
  if (g == 0) return v;
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

std::vector<IntVec> unimodular_complement(const IntVec& v) {
  const std::size_t r = v.size();
  if (content(v) != 1) throw ContractViolation("unimodular_complement needs a primitive vector");
  // v * U = e_1 with U unimodular; the rows of U^-1 form a basis whose first row is v.
  const auto ce = column_echelon(IntMat{v}, r);
  // Invert the unimodular transform exactly over Q (entries stay integral).
  RatMat aug(r, RatVec(2 * r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug[i][j] = Rat(ce.transform[i][j]);
    aug[i][r + i] = 1;
  }
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t p = c;
    while (aug[p][c] == 0) ++p;
    std::swap(aug[p], aug[c]);
    const Rat inv = 1 / aug[c][c];
    for (auto& x : aug[c]) x *= inv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == c || aug[i][c] == 0) continue;
      const Rat f = aug[i][c];
      for (std::size_t j = 0; j < 2 * r; ++j) aug[i][j] -= f * aug[c][j];
    }
  }
  std::vector<IntVec> out;
  for (std::size_t i = 1; i < r; ++i) {
    IntVec w(r);
    for (std::size_t j = 0; j < r; ++j) {
      const Rat& x = aug[i][r + j];
      if (x.get_den() != 1) throw ContractViolation("unimodular_complement: non-integral inverse");
      w[j] = x.get_num();
    }
    out.push_back(std::move(w));
  }
  return out;
}

RatMat row_basis(const RatMat& vectors, std::size_t n) {
  RatMat a = vectors;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const Rat inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][c] == 0) continue;
      const Rat f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
    }
    ++row;
  }
  a.resize(row);
  return a;
}

std::size_t rational_rank(const RatMat& vectors, std::size_t n) { return row_basis(vectors, n).size(); }

bool in_span(const RatMat& basis, const RatVec& v, std::size_t n) {
  RatMat ext = basis;
  ext.push_back(v);
  return rational_rank(ext, n) == rational_rank(basis, n);
}

RatMat rational_kernel(const RatMat& m, std::size_t cols) {
  const RatMat r = row_basis(m, cols);
  std::vector<std::size_t> pivot_of_row;
  std::vector<bool> is_pivot(cols, false);
  for (const auto& row : r) {
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    pivot_of_row.push_back(c);
    is_pivot[c] = true;
  }
  RatMat kernel;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < r.size(); ++i) v[pivot_of_row[i]] = -r[i][free];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

IntVec clear_denominators(const RatVec& v) {
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * Rat(l);
    out[i] = s.get_num();
  }
  return primitive_part(out);
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RatMat c(n, RatVec(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

RatMat identity_matrix(std::size_t n) {
  RatMat m(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace nilsep
