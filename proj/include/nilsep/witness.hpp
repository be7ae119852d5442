#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilsep/group_context.hpp"
#include "nilsep/intlinalg.hpp"
#include "nilsep/quotient.hpp"

namespace nilsep {

// Throughout, `level` s selects the quotient Gamma / Delta_s, where
// Delta_s = <xi_1, ..., xi_s>; its first compatible generator is xi_{s+1}.
// All routines require Gamma / Delta_{s+1} to have class <= 2, which holds
// for every built-in family of class <= 3.

/// Generators of pi^{-1}(C_{Gamma/Delta_{s+1}}(g)) modulo Delta_s, together
/// with the xi_{s+1}-exponent of [g, u] for each generator u.
struct CentralizerPreimage {
  std::vector<UTElement> generators;
  std::vector<Int> commutator_exponents;
};
CentralizerPreimage centralizer_preimage(const GroupContext& ctx, const UTElement& g, std::size_t level = 0);

/// tau(Gamma / Delta_s, g): the nonnegative generator of Im(phi_g), read off the
/// nu_{s+1}-component of (I - Ad(g^-1)) Log(u) over the centralizer-preimage
/// generators u.
Int tau_general(const GroupContext& ctx, const UTElement& g, std::size_t level = 0);

/// e(Gamma / Delta_s, g) for the prime p: sum over levels t >= s of v_p(tau_t)
/// for the nonzero tau_t.
unsigned e_exponent(const GroupContext& ctx, const UTElement& g, std::uint64_t p, std::size_t level = 0);

/// x with x^-1 g x = h modulo Delta_s, or nullopt when g and h are not conjugate there.
std::optional<UTElement> find_conjugator(const GroupContext& ctx, const UTElement& g, const UTElement& h,
                                         std::size_t level = 0);
bool is_conjugate(const GroupContext& ctx, const UTElement& g, const UTElement& h);

struct LambdaSubgroup {
  RatMat ideal_basis;                 // Log(Lambda) spanned in nu-coordinates (integer vectors)
  std::vector<UTElement> generators;  // group elements exp(basis vector)
  std::size_t quotient_hirsch = 0;    // h(Gamma / Lambda)
};
/// Normal Lambda of maximal Hirsch length with Gamma/Lambda torsion-free,
/// rank-one centre, and g surviving. g must be central and nontrivial.
LambdaSubgroup lambda_subgroup(const GroupContext& ctx, const UTElement& g);

struct PsiInvariants {
  std::size_t rf = 0;
  std::optional<std::size_t> conj;  // undefined when no central commutator was found
  std::size_t commutators_examined = 0;
};
PsiInvariants psi_invariants(const GroupContext& ctx, int search_radius = 2);

/// Separating congruence quotient for non-conjugate g, h.
/// Throws ContractViolation when g and h are conjugate.
SeparabilityCertificate conjugacy_witness(const GroupContext& ctx, const UTElement& g, const UTElement& h,
                                          std::uint64_t budget = 1'000'000);

/// Finite quotient Gamma / (Lambda * Gamma(p)) in which g survives. g must be nontrivial.
SeparabilityCertificate rf_witness(const GroupContext& ctx, const UTElement& g, std::uint64_t budget = 1'000'000);

struct VerificationResult {
  bool ok = false;
  VerificationMethod method = VerificationMethod::None;
  std::string detail;
};
/// Re-checks a certificate by enumeration in the named finite quotient.
VerificationResult verify_certificate(const GroupContext& ctx, const SeparabilityCertificate& cert,
                                      std::uint64_t budget = 1'000'000);

/// One JSON object, no trailing newline.
std::string certificate_to_json(const GroupContext& ctx, const SeparabilityCertificate& cert);
/// Parses a line produced by certificate_to_json; the group is rebuilt from its name.
SeparabilityCertificate certificate_from_json(const std::string& line);

}  // namespace nilsep
