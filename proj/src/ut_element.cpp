#include "nilsep/ut_element.hpp"

#include <sstream>

#include "nilsep/errors.hpp"

namespace nilsep {

UTElement::UTElement(std::size_t dim) : dim_(dim), upper_(dim * (dim > 0 ? dim - 1 : 0) / 2) {}

std::size_t UTElement::index(std::size_t i, std::size_t j) const {
  // rows 0..i-1 hold (d-1) + (d-2) + ... entries
  return i * (2 * dim_ - i - 1) / 2 + (j - i - 1);
}

UTElement UTElement::from_rows(const std::vector<std::vector<Int>>& rows) {
  const std::size_t d = rows.size();
  UTElement g(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (rows[i].size() != d) throw ParseError("matrix is not square");
    for (std::size_t j = 0; j < d; ++j) {
      const Int& v = rows[i][j];
      if (i == j && v != 1) throw ParseError("diagonal entry is not 1");
      if (i > j && v != 0) throw ParseError("entry below the diagonal is not 0");
      if (i < j) g.upper_[g.index(i, j)] = v;
    }
  }
  return g;
}

UTElement UTElement::elementary(std::size_t dim, std::size_t row, std::size_t col, const Int& value) {
  UTElement g(dim);
  g.set(row, col, value);
  return g;
}

Int UTElement::at(std::size_t i, std::size_t j) const {
  if (i == j) return 1;
  if (i > j) return 0;
  return upper_[index(i, j)];
}

void UTElement::set(std::size_t i, std::size_t j, const Int& v) {
  if (i >= j || j >= dim_) throw ContractViolation("UTElement::set outside strict upper triangle");
  upper_[index(i, j)] = v;
}

bool UTElement::is_identity() const {
  for (const auto& v : upper_)
    if (v != 0) return false;
  return true;
}

std::vector<std::vector<Int>> UTElement::rows() const {
  std::vector<std::vector<Int>> out(dim_, std::vector<Int>(dim_));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out[i][j] = at(i, j);
  return out;
}

bool operator<(const UTElement& a, const UTElement& b) {
  if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
  for (std::size_t k = 0; k < a.upper_.size(); ++k) {
    const int c = cmp(a.upper_[k], b.upper_[k]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::size_t UTElement::hash() const {
  std::size_t h = dim_;
  for (const auto& v : upper_) {
    const std::size_t x = mpz_fits_slong_p(v.get_mpz_t()) ? static_cast<std::size_t>(v.get_si())
                                                           : mpz_get_ui(v.get_mpz_t()) ^ 0x9e3779b97f4a7c15ULL;
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

UTElement ut_multiply(const UTElement& a, const UTElement& b) {
  if (a.dim() != b.dim()) throw ContractViolation("ut_multiply: dimension mismatch");
  const std::size_t d = a.dim();
  UTElement c(d);
  Int acc;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      // (ab)_ij = a_ij + b_ij + sum_{i<k<j} a_ik b_kj
      acc = a.at(i, j) + b.at(i, j);
      for (std::size_t k = i + 1; k < j; ++k) acc += a.at(i, k) * b.at(k, j);
      c.set(i, j, acc);
    }
  }
  return c;
}

UTElement ut_inverse(const UTElement& a) {
  const std::size_t d = a.dim();
  UTElement inv(d);
  // a * inv = I, solved column by column from the diagonal upward.
  Int acc;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t ii = j; ii-- > 0;) {
      acc = -a.at(ii, j);
      for (std::size_t k = ii + 1; k < j; ++k) acc -= a.at(ii, k) * inv.at(k, j);
      inv.set(ii, j, acc);
    }
  }
  return inv;
}

UTElement ut_commutator(const UTElement& a, const UTElement& b) {
  return ut_multiply(ut_multiply(ut_inverse(a), ut_inverse(b)), ut_multiply(a, b));
}

UTElement ut_power(const UTElement& a, const Int& k) {
  UTElement base = k < 0 ? ut_inverse(a) : a;
  Int e = abs(k);
  UTElement result(a.dim());
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = ut_multiply(result, base);
    e >>= 1;
    if (e > 0) base = ut_multiply(base, base);
  }
  return result;
}

UTElement operator*(const UTElement& a, const UTElement& b) { return ut_multiply(a, b); }

std::string format_matrix(const UTElement& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (j) os << ',';
      os << a.at(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace nilsep
