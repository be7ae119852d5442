#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nilsep/group_context.hpp"
#include "nilsep/quotient.hpp"

namespace nilsep {

/// (x, y, z) coordinates of H_{2k+1}(Z) in the matrix model
///   [1  x  z]
///   [0  I  y]
///   [0  0  1]
struct HeisenbergElement {
  std::vector<Int> x;
  std::vector<Int> y;
  Int z;

  std::size_t k() const { return x.size(); }
  bool is_central() const;
  static HeisenbergElement identity(std::size_t k);
  friend bool operator==(const HeisenbergElement&, const HeisenbergElement&) = default;
};

HeisenbergElement h_from_ut(const UTElement& g);
UTElement h_to_ut(const HeisenbergElement& g);
std::string h_format(const HeisenbergElement& g);

/// (x_a + x_b, y_a + y_b, z_a + z_b + <x_a, y_b>)
HeisenbergElement h_compose(const HeisenbergElement& a, const HeisenbergElement& b);
HeisenbergElement h_inverse(const HeisenbergElement& a);

/// gcd of all x and y entries; 0 for central elements.
Int h_tau(const HeisenbergElement& g);

/// Canonical representative of the conjugacy class: z reduced into [0, tau) when tau != 0.
HeisenbergElement h_canonical(const HeisenbergElement& g);

bool h_is_conjugate(const HeisenbergElement& g, const HeisenbergElement& h);
/// Conjugacy of the images in H_{2k+1}(Z/m), by the gcd(tau, m) closed form.
bool h_is_conjugate_mod(const HeisenbergElement& g, const HeisenbergElement& h, std::uint64_t m);
/// Same question answered by enumerating every conjugator in H_{2k+1}(Z/m).
bool h_orbit_conjugate_mod(const HeisenbergElement& g, const HeisenbergElement& h, std::uint64_t m,
                           std::uint64_t budget = 1'000'000);

/// gamma_p = (p e_1, 0, 1), eta_p = (p e_1, 0, 2).
std::pair<HeisenbergElement, HeisenbergElement> h_lower_bound_pair(std::uint64_t p, std::size_t k);

struct HeisenbergSeparation {
  QuotientSpec spec;
  char case_tag = 'A';  // A: abelianization, B: prime power of tau, C: tau = 0
  Int t;                // offset h ~ g * lambda^t for cases B and C
};

/// Separating modulus built the way the upper-bound argument builds it.
/// Throws ContractViolation when g and h are conjugate.
HeisenbergSeparation h_separating_modulus(const HeisenbergElement& g, const HeisenbergElement& h);

/// Smallest m in [2, max_m] with the images non-conjugate in H(Z/m), by the closed form.
std::optional<std::uint64_t> h_minimal_separating_modulus(const HeisenbergElement& g, const HeisenbergElement& h,
                                                          std::uint64_t max_m = 1'000'000);

}  // namespace nilsep
