#include "nilsep/witness.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

#include "nilsep/ball.hpp"
#include "nilsep/errors.hpp"
#include "nilsep/heisenberg.hpp"
#include "nilsep/lie.hpp"
#include "nilsep/modular.hpp"

namespace nilsep {

namespace {

using IndexSet = std::vector<bool>;

// Coordinate ideal <xi_i : i in set>; x lies in it iff its coordinates outside the set vanish.
bool in_coordinate_ideal(const GroupContext& ctx, const UTElement& x, const IndexSet& ideal) {
  const auto c = ctx.coordinates(x);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!ideal[i] && c[i] != 0) return false;
  return true;
}

bool central_modulo(const GroupContext& ctx, std::size_t j, const IndexSet& ideal) {
  for (const auto& s : ctx.generators())
    if (!in_coordinate_ideal(ctx, ut_commutator(ctx.generator(j), s), ideal)) return false;
  return true;
}

IndexSet prefix_set(std::size_t h, std::size_t s) {
  IndexSet out(h, false);
  for (std::size_t i = 0; i < s && i < h; ++i) out[i] = true;
  return out;
}

std::size_t count(const IndexSet& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), true)); }

UTElement product_of_powers(const GroupContext& ctx, std::size_t first, const IntVec& exps) {
  UTElement u = ctx.identity();
  for (std::size_t j = 0; j < exps.size(); ++j)
    if (exps[j] != 0) u = ut_multiply(u, ut_power(ctx.generator(first + j), exps[j]));
  return u;
}

void require_level(const GroupContext& ctx, std::size_t level) {
  if (level >= ctx.hirsch()) throw ContractViolation("level must be below the Hirsch length");
}

}  // namespace

CentralizerPreimage centralizer_preimage(const GroupContext& ctx, const UTElement& g, std::size_t level) {
  require_level(ctx, level);
  const std::size_t h = ctx.hirsch();
  const std::size_t s = level;
  const std::size_t rest = h - s - 1;  // coordinates of Gamma / Delta_{s+1}
  const IndexSet below_next = prefix_set(h, s + 1);

  // eta -> [g, eta] is a homomorphism Gamma/Delta_{s+1} -> centre; tabulate it on xi_{s+2}, ..., xi_h.
  IntMat m(rest, IntVec(rest));
  for (std::size_t j = 0; j < rest; ++j) {
    const auto c = ctx.coordinates(ut_commutator(g, ctx.generator(s + 1 + j)));
    for (std::size_t t = 0; t < rest; ++t) {
      m[t][j] = c[s + 1 + t];
      if (m[t][j] != 0 && !central_modulo(ctx, s + 1 + t, below_next))
        throw Unsupported(ctx.name() + ": quotient by Delta_" + std::to_string(s + 1) + " has class > 2");
    }
  }

  CentralizerPreimage out;
  out.generators.push_back(ctx.generator(s));
  for (const auto& b : integer_kernel(m, rest)) out.generators.push_back(product_of_powers(ctx, s + 1, b));
  for (const auto& u : out.generators) {
    const auto c = ctx.coordinates(ut_commutator(g, u));
    for (std::size_t t = s + 1; t < h; ++t)
      if (c[t] != 0) throw Unsupported(ctx.name() + ": commutator map is not linear at this level");
    out.commutator_exponents.push_back(c[s]);
  }
  return out;
}

Int tau_general(const GroupContext& ctx, const UTElement& g, std::size_t level) {
  if (ctx.nilpotency_class() > 3) throw Unsupported("tau_general supports class <= 3");
  const auto pre = centralizer_preimage(ctx, g, level);
  const RatMat ad_inv = adjoint_matrix(ctx, ut_inverse(g));
  const std::size_t h = ctx.hirsch();
  Int tau = 0;
  for (const auto& u : pre.generators) {
    const LieVector x = log_coordinates(ctx, u);
    // (I - Ad(g^-1)) x
    LieVector w = x;
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) w[i] -= ad_inv[i][j] * x[j];
    for (std::size_t t = level + 1; t < h; ++t)
      if (w[t] != 0) throw Unsupported("tau_general: image leaves Delta_{s+1}");
    if (w[level].get_den() != 1) throw Unsupported("tau_general: non-integral image coefficient");
    tau = gcd(tau, w[level].get_num());
  }
  return tau;
}

unsigned e_exponent(const GroupContext& ctx, const UTElement& g, std::uint64_t p, std::size_t level) {
  if (!is_prime(p)) throw ContractViolation("e_exponent needs a prime");
  unsigned e = 0;
  for (std::size_t s = ctx.hirsch(); s-- > level;) {
    const Int tau = tau_general(ctx, g, s);
    if (tau != 0) e += valuation(tau, p);
  }
  return e;
}

std::optional<UTElement> find_conjugator(const GroupContext& ctx, const UTElement& g, const UTElement& h,
                                         std::size_t level) {
  const std::size_t hl = ctx.hirsch();
  if (level >= hl) return ctx.identity();
  auto x = find_conjugator(ctx, g, h, level + 1);
  if (!x) return std::nullopt;
  const UTElement g1 = ut_multiply(ut_multiply(ut_inverse(*x), g), *x);
  const auto r = ctx.coordinates(ut_multiply(ut_inverse(g1), h));
  for (std::size_t t = level + 1; t < hl; ++t)
    if (r[t] != 0) throw ContractViolation("find_conjugator: inconsistent lift");
  const Int t = r[level];
  if (t == 0) return x;
  const auto pre = centralizer_preimage(ctx, g1, level);
  const auto comb = gcd_combination(pre.commutator_exponents);
  if (comb.gcd == 0 || !mpz_divisible_p(t.get_mpz_t(), comb.gcd.get_mpz_t())) return std::nullopt;
  const Int k = t / comb.gcd;
  UTElement u = ctx.identity();
  for (std::size_t i = 0; i < pre.generators.size(); ++i)
    if (comb.coefficients[i] != 0) u = ut_multiply(u, ut_power(pre.generators[i], comb.coefficients[i] * k));
  return ut_multiply(*x, u);
}

bool is_conjugate(const GroupContext& ctx, const UTElement& g, const UTElement& h) {
  return find_conjugator(ctx, g, h, 0).has_value();
}

LambdaSubgroup lambda_subgroup(const GroupContext& ctx, const UTElement& g) {
  if (g.is_identity()) throw ContractViolation("lambda_subgroup: element is trivial");
  if (!ctx.is_central(g)) throw ContractViolation("lambda_subgroup: element is not central");
  const std::size_t h = ctx.hirsch();
  const LieVector v = log_coordinates(ctx, g);

  auto unit = [&](std::size_t i) {
    RatVec e(h);
    e[i] = 1;
    return e;
  };

  RatMat ideal;
  // First step on the centre lattice: complete v to a basis {z_1 = v/content, z_2, ...} and drop z_1.
  {
    const std::size_t r = ctx.center_rank();
    IntVec centre_part(r);
    for (std::size_t i = 0; i < r; ++i) centre_part[i] = v[i].get_num();
    for (std::size_t i = r; i < h; ++i)
      if (v[i] != 0) throw Unsupported("central element outside the leading generators");
    const IntVec prim = primitive_part(centre_part);
    std::vector<IntVec> complement;
    const auto unit_pos = std::find_if(prim.begin(), prim.end(), [](const Int& a) { return abs(a) == 1; });
    if (unit_pos != prim.end()) {
      const auto skip = static_cast<std::size_t>(unit_pos - prim.begin());
      for (std::size_t i = 0; i < r; ++i)
        if (i != skip) {
          IntVec e(r);
          e[i] = 1;
          complement.push_back(e);
        }
    } else {
      complement = unimodular_complement(prim);
    }
    for (const auto& w : complement) {
      RatVec row(h);
      for (std::size_t i = 0; i < r; ++i) row[i] = Rat(w[i]);
      ideal.push_back(row);
    }
  }

  // Further steps: while the centre of g/ideal has dimension > 1, absorb a
  // complement of v inside it, preferring coordinate directions.
  for (;;) {
    const RatMat centre = center_preimage(ctx, ideal);
    const std::size_t dim_ideal = rational_rank(ideal, h);
    const std::size_t dim_centre = rational_rank(centre, h);
    if (dim_centre - dim_ideal <= 1) break;
    std::vector<RatVec> candidates;
    for (std::size_t i = 0; i < h; ++i)
      if (in_span(centre, unit(i), h)) candidates.push_back(unit(i));
    for (const auto& c : centre) {
      const IntVec iv = clear_denominators(c);
      RatVec rv(h);
      for (std::size_t i = 0; i < h; ++i) rv[i] = Rat(iv[i]);
      candidates.push_back(rv);
    }
    for (const auto& c : candidates) {
      if (rational_rank(ideal, h) == dim_centre - 1) break;
      RatMat with = ideal;
      with.push_back(c);
      const std::size_t rk = rational_rank(with, h);
      if (rk == rational_rank(ideal, h)) continue;
      RatMat with_v = with;
      with_v.push_back(v);
      if (rational_rank(with_v, h) == rk) continue;  // would swallow g
      ideal = std::move(with);
    }
  }

  LambdaSubgroup out;
  for (const auto& row : row_basis(ideal, h)) {
    const IntVec iv = clear_denominators(row);
    RatVec rv(h);
    for (std::size_t i = 0; i < h; ++i) rv[i] = Rat(iv[i]);
    out.ideal_basis.push_back(rv);
    std::optional<UTElement> elem;
    for (long k = 1; k <= 720 && !elem; ++k) {
      RatVec scaled = rv;
      for (auto& x : scaled) x *= k;
      elem = to_integer_ut(mat_exp(from_lie_vector(ctx, scaled)));
    }
    if (!elem) throw Unsupported("lambda_subgroup: no integral point on an ideal direction");
    out.generators.push_back(*elem);
  }
  out.quotient_hirsch = h - out.ideal_basis.size();
  return out;
}

PsiInvariants psi_invariants(const GroupContext& ctx, int search_radius) {
  PsiInvariants out;
  for (std::size_t i = 0; i < ctx.center_rank(); ++i)
    out.rf = std::max(out.rf, lambda_subgroup(ctx, ctx.generator(i)).quotient_hirsch);

  const Ball ball = ball_enumerate(ctx, search_radius);
  std::set<UTElement> commutators;
  for (const auto& x : ball.elements())
    for (const auto& y : ball.elements()) {
      ++out.commutators_examined;
      UTElement c = ut_commutator(x, y);
      if (!c.is_identity()) commutators.insert(std::move(c));
    }
  for (const auto& c : commutators) {
    if (!ctx.is_central(c)) continue;
    const std::size_t q = lambda_subgroup(ctx, c).quotient_hirsch;
    if (!out.conj || q > *out.conj) out.conj = q;
  }
  return out;
}

namespace {

struct ConjugacyChoice {
  std::uint64_t modulus = 0;
  std::size_t level = 0;
  bool tau_zero = false;
  Int tau;
  Int t;
};

// Mirrors the inductive construction: descend while the images in
// Gamma/Delta_{s+1} are already non-conjugate; otherwise h ~ g xi_{s+1}^t and a
// prime power p^alpha | tau, p^alpha !| t lifted by e(Gamma/Delta_{s+1}, g)
// separates.
ConjugacyChoice choose_modulus(const GroupContext& ctx, const UTElement& g, const UTElement& h, std::size_t level) {
  const std::size_t hl = ctx.hirsch();
  if (level >= hl) throw ContractViolation("conjugacy_witness: inputs are conjugate");
  const auto x = find_conjugator(ctx, g, h, level + 1);
  if (!x) return choose_modulus(ctx, g, h, level + 1);

  const UTElement g1 = ut_multiply(ut_multiply(ut_inverse(*x), g), *x);
  ConjugacyChoice out;
  out.level = level;
  out.t = ctx.coordinates(ut_multiply(ut_inverse(g1), h))[level];
  out.tau = tau_general(ctx, g1, level);
  out.tau_zero = out.tau == 0;

  Int best = 0;
  auto consider = [&](std::uint64_t p, unsigned alpha) {
    const unsigned omega = alpha + (level + 1 < hl ? e_exponent(ctx, g1, p, level + 1) : 0);
    const Int m = ipow(p, omega);
    if (best == 0 || m < best) best = m;
  };
  if (!out.tau_zero) {
    for (const auto& [p, e] : factor(out.tau)) {
      const unsigned vt = out.t == 0 ? e : valuation(out.t, p);
      if (out.t != 0 && vt < e) consider(p, vt + 1);
    }
  } else {
    if (out.t == 0) throw ContractViolation("conjugacy_witness: inputs are conjugate");
    const std::uint64_t last = *smallest_prime_non_divisor(out.t);
    for (std::uint64_t p = 2; p <= last; p = next_prime(p)) consider(p, valuation(out.t, p) + 1);
  }
  if (best == 0) throw ContractViolation("conjugacy_witness: inputs are conjugate");
  if (!best.fits_ulong_p()) throw Unsupported("separating modulus too large");
  out.modulus = best.get_ui();
  return out;
}

std::string letter_for(const ConjugacyChoice& c) {
  if (c.level > 0) return "A";
  return c.tau_zero ? "C" : "B";
}

}  // namespace

SeparabilityCertificate conjugacy_witness(const GroupContext& ctx, const UTElement& g, const UTElement& h,
                                          std::uint64_t budget) {
  if (is_conjugate(ctx, g, h)) throw ContractViolation("conjugacy_witness: inputs are conjugate");
  const ConjugacyChoice choice = choose_modulus(ctx, g, h, 0);

  SeparabilityCertificate cert;
  cert.kind = CertificateKind::Conjugacy;
  cert.group = ctx.name();
  cert.inputs = {g, h};
  cert.spec.modulus = choice.modulus;
  cert.spec.order = ipow(choice.modulus, static_cast<unsigned>(ctx.hirsch()));
  cert.case_tag = letter_for(choice) + ":level=" + std::to_string(choice.level) + ":tau=" + choice.tau.get_str() +
                  ":t=" + choice.t.get_str();

  const auto result = verify_certificate(ctx, cert, budget);
  cert.verified = result.ok;
  cert.method = result.method;

  // Smallest separating congruence modulus, for measuring slack.
  if (ctx.family() == Family::Heisenberg) {
    cert.min_modulus = h_minimal_separating_modulus(h_from_ut(g), h_from_ut(h), choice.modulus);
  } else {
    for (std::uint64_t m = 2; m <= choice.modulus; ++m) {
      const ModQuotient q(ctx, static_cast<std::int64_t>(m));
      if (q.order() > budget) break;
      if (!q.is_conjugate(q.reduce(g), q.reduce(h), budget)) {
        cert.min_modulus = m;
        break;
      }
    }
  }
  return cert;
}

SeparabilityCertificate rf_witness(const GroupContext& ctx, const UTElement& g, std::uint64_t budget) {
  if (g.is_identity()) throw ContractViolation("rf_witness: element is trivial");
  const std::size_t h = ctx.hirsch();
  const auto a = ctx.coordinates(g);

  // Pass to Gamma / Z(Gamma) (as a coordinate ideal) until g becomes central.
  IndexSet ideal(h, false);
  std::size_t depth = 0;
  std::vector<std::size_t> centre;
  for (;;) {
    centre.clear();
    IndexSet with_centre = ideal;
    for (std::size_t j = 0; j < h; ++j)
      if (!ideal[j] && central_modulo(ctx, j, ideal)) {
        centre.push_back(j);
        with_centre[j] = true;
      }
    bool central = true;
    for (std::size_t j = 0; j < h; ++j)
      if (!with_centre[j] && a[j] != 0) central = false;
    if (central) break;
    ideal = with_centre;
    ++depth;
  }

  // For every centre coordinate a_j != 0: Lambda_j kills the other centre
  // coordinates (and recursively any centre they leave behind).
  struct Candidate {
    std::uint64_t p;
    std::size_t j;
    IndexSet lambda;
    Int order;
  };
  std::optional<Candidate> best;
  for (const std::size_t j : centre) {
    if (a[j] == 0) continue;
    IndexSet lam = ideal;
    for (const std::size_t i : centre)
      if (i != j) lam[i] = true;
    for (;;) {
      std::vector<std::size_t> extra;
      for (std::size_t i = 0; i < h; ++i)
        if (!lam[i] && i != j && central_modulo(ctx, i, lam)) extra.push_back(i);
      if (extra.empty()) break;
      for (const auto i : extra) lam[i] = true;
    }
    const std::uint64_t p = *smallest_prime_non_divisor(a[j]);
    Candidate c{p, j, lam, ipow(p, static_cast<unsigned>(h - count(lam)))};
    if (!best || c.order < best->order || (c.order == best->order && c.p < best->p)) best = c;
  }
  if (!best) throw ContractViolation("rf_witness: element lies in the quotiented subgroup");

  SeparabilityCertificate cert;
  cert.kind = CertificateKind::ResidualFiniteness;
  cert.group = ctx.name();
  cert.inputs = {g};
  cert.spec.modulus = best->p;
  for (std::size_t i = 0; i < h; ++i)
    if (best->lambda[i]) cert.spec.lambda_gens.push_back(ctx.generator(i));
  cert.spec.order = best->order;
  cert.case_tag = std::string(depth == 0 ? "central" : "quotient") + ":depth=" + std::to_string(depth) +
                  ":coordinate=" + ctx.generator_names()[best->j] + ":alpha=" + a[best->j].get_str();
  const auto result = verify_certificate(ctx, cert, budget);
  cert.verified = result.ok;
  cert.method = result.method;
  return cert;
}

VerificationResult verify_certificate(const GroupContext& ctx, const SeparabilityCertificate& cert,
                                      std::uint64_t budget) {
  VerificationResult out;
  if (cert.spec.modulus < 2) throw ContractViolation("certificate modulus must be at least 2");
  const Int total = ipow(cert.spec.modulus, static_cast<unsigned>(ctx.hirsch()));
  if (cert.kind == CertificateKind::Conjugacy) {
    if (cert.inputs.size() != 2) throw ContractViolation("conjugacy certificate needs two inputs");
    if (!cert.spec.lambda_gens.empty()) throw Unsupported("conjugacy certificates use plain congruence quotients");
    if (total <= budget) {
      const ModQuotient q(ctx, static_cast<std::int64_t>(cert.spec.modulus));
      out.method = VerificationMethod::OrbitOracle;
      out.ok = !q.is_conjugate(q.reduce(cert.inputs[0]), q.reduce(cert.inputs[1]), budget);
      out.detail = out.ok ? "images non-conjugate" : "images conjugate";
    } else if (ctx.family() == Family::Heisenberg) {
      out.method = VerificationMethod::ClosedForm;
      out.ok = !h_is_conjugate_mod(h_from_ut(cert.inputs[0]), h_from_ut(cert.inputs[1]), cert.spec.modulus);
      out.detail = "orbit beyond budget; closed form used";
    } else {
      out.detail = "orbit beyond budget";
    }
    return out;
  }
  if (cert.inputs.size() != 1) throw ContractViolation("residual-finiteness certificate needs one input");
  if (total > budget) {
    out.detail = "quotient beyond budget";
    return out;
  }
  const ModQuotient q(ctx, static_cast<std::int64_t>(cert.spec.modulus));
  std::vector<ModElement> gens;
  for (const auto& l : cert.spec.lambda_gens) gens.push_back(q.reduce(l));
  std::uint64_t image_cap = budget;
  const ModSet image = q.closure(gens, image_cap);
  out.method = VerificationMethod::ImageCheck;
  out.ok = image.count(q.reduce(cert.inputs[0])) == 0;
  // |Gamma/Gamma(m)| / |image of Lambda| must match the recorded order.
  if (total % Int(static_cast<unsigned long>(image.size())) != 0 ||
      total / Int(static_cast<unsigned long>(image.size())) != cert.spec.order) {
    out.ok = false;
    out.detail = "recorded order disagrees with the quotient";
  } else {
    out.detail = out.ok ? "image nontrivial" : "image trivial";
  }
  return out;
}

std::string to_string(CertificateKind k) {
  return k == CertificateKind::Conjugacy ? "conjugacy" : "residual-finiteness";
}

std::string to_string(VerificationMethod m) {
  switch (m) {
    case VerificationMethod::ClosedForm: return "closed-form";
    case VerificationMethod::OrbitOracle: return "orbit-oracle";
    case VerificationMethod::ImageCheck: return "image-check";
    case VerificationMethod::None: break;
  }
  return "none";
}

CertificateKind certificate_kind_from_string(const std::string& s) {
  if (s == "conjugacy") return CertificateKind::Conjugacy;
  if (s == "residual-finiteness") return CertificateKind::ResidualFiniteness;
  throw ParseError("unknown certificate kind '" + s + "'");
}

VerificationMethod verification_method_from_string(const std::string& s) {
  if (s == "closed-form") return VerificationMethod::ClosedForm;
  if (s == "orbit-oracle") return VerificationMethod::OrbitOracle;
  if (s == "image-check") return VerificationMethod::ImageCheck;
  if (s == "none") return VerificationMethod::None;
  throw ParseError("unknown verification method '" + s + "'");
}

namespace {

nlohmann::json big_number(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Int parse_big(const nlohmann::json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw ParseError("expected an integer");
}

}  // namespace

std::string certificate_to_json(const GroupContext& ctx, const SeparabilityCertificate& cert) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(cert.kind);
  j["group"] = cert.group;
  j["inputs"] = nlohmann::json::array();
  for (const auto& g : cert.inputs) j["inputs"].push_back(ctx.format_element(g));
  j["modulus"] = cert.spec.modulus;
  j["lambda_gens"] = nlohmann::json::array();
  for (const auto& g : cert.spec.lambda_gens) j["lambda_gens"].push_back(ctx.format_element(g));
  j["order"] = big_number(cert.spec.order);
  j["quotient_order"] = big_number(cert.spec.order);
  j["case"] = cert.case_tag.substr(0, cert.case_tag.find(':'));
  j["case_tag"] = cert.case_tag;
  j["verified"] = cert.verified;
  j["method"] = to_string(cert.method);
  if (cert.min_modulus)
    j["min_modulus"] = *cert.min_modulus;
  else
    j["min_modulus"] = nullptr;
  return j.dump();
}

SeparabilityCertificate certificate_from_json(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("certificate is not valid JSON: ") + e.what());
  }
  try {
    SeparabilityCertificate cert;
    cert.group = j.at("group").get<std::string>();
    const GroupContext ctx = make_group(cert.group);
    cert.kind = certificate_kind_from_string(j.at("kind").get<std::string>());
    for (const auto& s : j.at("inputs")) cert.inputs.push_back(ctx.parse_element(s.get<std::string>()));
    cert.spec.modulus = j.at("modulus").get<std::uint64_t>();
    for (const auto& s : j.at("lambda_gens")) cert.spec.lambda_gens.push_back(ctx.parse_element(s.get<std::string>()));
    cert.spec.order = parse_big(j.at("order"));
    cert.case_tag = j.value("case_tag", std::string());
    cert.verified = j.value("verified", false);
    cert.method = verification_method_from_string(j.value("method", std::string("none")));
    if (j.contains("min_modulus") && !j["min_modulus"].is_null()) cert.min_modulus = j["min_modulus"].get<std::uint64_t>();
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace nilsep
