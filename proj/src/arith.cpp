#include "nilsep/arith.hpp"

#include <cstdlib>

#include "nilsep/errors.hpp"

namespace nilsep {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("NILSEP_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 2'000'000;
}

Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

unsigned valuation(const Int& n, std::uint64_t p) {
  if (n == 0) throw ContractViolation("valuation of zero");
  Int x = abs(n);
  unsigned v = 0;
  while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
    x /= static_cast<unsigned long>(p);
    ++v;
  }
  return v;
}

std::optional<std::uint64_t> smallest_non_divisor(const Int& n) {
  if (n == 0) return std::nullopt;
  for (std::uint64_t m = 2;; ++m)
    if (!mpz_divisible_ui_p(n.get_mpz_t(), m)) return m;
}

std::optional<std::uint64_t> smallest_prime_non_divisor(const Int& n) {
  if (n == 0) return std::nullopt;
  for (std::uint64_t p = 2;; p = next_prime(p))
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) return p;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor(const Int& n) {
  if (n == 0) throw ContractViolation("factor of zero");
  Int x = abs(n);
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; Int(p) * Int(p) <= x; ++p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
      x /= static_cast<unsigned long>(p);
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (x > 1) out.emplace_back(x.get_ui(), 1);
  return out;
}

Int ipow(const Int& base, unsigned e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int ipow(std::uint64_t base, unsigned e) { return ipow(Int(static_cast<unsigned long>(base)), e); }

std::int64_t mod(const Int& a, std::int64_t m) {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
  return static_cast<std::int64_t>(r.get_si());
}

std::string to_string(const Int& a) { return a.get_str(); }
std::string to_string(const Rat& a) { return a.get_str(); }

}  // namespace nilsep
