#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nilsep {

using Int = mpz_class;
using Rat = mpq_class;

/// Enumeration cap used when the caller does not pass one. Honors NILSEP_BUDGET.
std::uint64_t default_budget();

Int gcd(const Int& a, const Int& b);
Int abs(const Int& a);

bool is_prime(std::uint64_t n);
std::uint64_t next_prime(std::uint64_t n);  // smallest prime > n

/// Exponent of p in n; n must be nonzero.
unsigned valuation(const Int& n, std::uint64_t p);

/// Smallest m >= 2 with m not dividing n (n = 0 has no such m; returns nullopt).
std::optional<std::uint64_t> smallest_non_divisor(const Int& n);
/// Smallest prime not dividing n (n = 0: nullopt).
std::optional<std::uint64_t> smallest_prime_non_divisor(const Int& n);

/// Prime factorisation by trial division; n must be nonzero.
std::vector<std::pair<std::uint64_t, unsigned>> factor(const Int& n);

Int ipow(const Int& base, unsigned e);
Int ipow(std::uint64_t base, unsigned e);

/// Floor-style modulus into [0, m).
std::int64_t mod(const Int& a, std::int64_t m);

std::string to_string(const Int& a);
std::string to_string(const Rat& a);

}  // namespace nilsep
