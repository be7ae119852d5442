#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilsep/ut_element.hpp"

namespace nilsep {

/// Finite quotient Gamma / (Lambda * Gamma(m)), where Gamma(m) is the kernel of
/// entry-wise reduction mod m and Lambda is the normal subgroup generated by
/// `lambda_gens` (empty: Lambda = 1).
struct QuotientSpec {
  std::uint64_t modulus = 1;
  std::vector<UTElement> lambda_gens;
  Int order = 1;
};

enum class CertificateKind { ResidualFiniteness, Conjugacy };
enum class VerificationMethod { ClosedForm, OrbitOracle, ImageCheck, None };

std::string to_string(CertificateKind k);
std::string to_string(VerificationMethod m);
CertificateKind certificate_kind_from_string(const std::string& s);
VerificationMethod verification_method_from_string(const std::string& s);

struct SeparabilityCertificate {
  CertificateKind kind = CertificateKind::Conjugacy;
  std::string group;
  std::vector<UTElement> inputs;
  QuotientSpec spec;
  std::string case_tag;
  bool verified = false;
  VerificationMethod method = VerificationMethod::None;
  /// Smallest congruence modulus that separates, when a scan was affordable.
  std::optional<std::uint64_t> min_modulus;
};

}  // namespace nilsep
