#include "nilsep/heisenberg.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "nilsep/errors.hpp"
#include "nilsep/modular.hpp"

namespace nilsep {

namespace {

void require_same_rank(const HeisenbergElement& a, const HeisenbergElement& b) {
  if (a.k() != b.k() || a.y.size() != b.y.size() || a.x.size() != a.y.size())
    throw ContractViolation("Heisenberg elements of different rank");
}

const GroupContext& heisenberg_context(std::size_t k) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<GroupContext>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[k];
  if (!slot) slot = std::make_unique<GroupContext>(make_heisenberg(k));
  return *slot;
}

Int pairing(const std::vector<Int>& a, const std::vector<Int>& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

bool HeisenbergElement::is_central() const {
  for (const auto& v : x)
    if (v != 0) return false;
  for (const auto& v : y)
    if (v != 0) return false;
  return true;
}

HeisenbergElement HeisenbergElement::identity(std::size_t k) { return {std::vector<Int>(k), std::vector<Int>(k), 0}; }

HeisenbergElement h_from_ut(const UTElement& g) {
  if (g.dim() < 3) throw ContractViolation("not a Heisenberg matrix");
  const std::size_t k = g.dim() - 2;
  HeisenbergElement e = HeisenbergElement::identity(k);
  for (std::size_t i = 0; i < k; ++i) {
    e.x[i] = g.at(0, 1 + i);
    e.y[i] = g.at(1 + i, k + 1);
    for (std::size_t j = i + 1; j < k; ++j)
      if (g.at(1 + i, 1 + j) != 0) throw ContractViolation("not a Heisenberg matrix");
  }
  e.z = g.at(0, k + 1);
  return e;
}

UTElement h_to_ut(const HeisenbergElement& g) {
  const std::size_t k = g.k();
  UTElement m(k + 2);
  for (std::size_t i = 0; i < k; ++i) {
    m.set(0, 1 + i, g.x[i]);
    m.set(1 + i, k + 1, g.y[i]);
  }
  m.set(0, k + 1, g.z);
  return m;
}

std::string h_format(const HeisenbergElement& g) { return heisenberg_context(g.k()).format_element(h_to_ut(g)); }

HeisenbergElement h_compose(const HeisenbergElement& a, const HeisenbergElement& b) {
  require_same_rank(a, b);
  HeisenbergElement c = a;
  for (std::size_t i = 0; i < a.k(); ++i) {
    c.x[i] += b.x[i];
    c.y[i] += b.y[i];
  }
  c.z = a.z + b.z + pairing(a.x, b.y);
  return c;
}

HeisenbergElement h_inverse(const HeisenbergElement& a) {
  HeisenbergElement c = a;
  for (std::size_t i = 0; i < a.k(); ++i) {
    c.x[i] = -a.x[i];
    c.y[i] = -a.y[i];
  }
  c.z = -a.z + pairing(a.x, a.y);
  return c;
}

Int h_tau(const HeisenbergElement& g) {
  Int t = 0;
  for (const auto& v : g.x) t = gcd(t, v);
  for (const auto& v : g.y) t = gcd(t, v);
  return t;
}

HeisenbergElement h_canonical(const HeisenbergElement& g) {
  HeisenbergElement c = g;
  const Int tau = h_tau(g);
  if (tau != 0) mpz_fdiv_r(c.z.get_mpz_t(), g.z.get_mpz_t(), tau.get_mpz_t());
  return c;
}

bool h_is_conjugate(const HeisenbergElement& g, const HeisenbergElement& h) {
  require_same_rank(g, h);
  if (g.x != h.x || g.y != h.y) return false;
  const Int tau = h_tau(g);
  const Int t = h.z - g.z;
  if (tau == 0) return t == 0;
  return mpz_divisible_p(t.get_mpz_t(), tau.get_mpz_t()) != 0;
}

bool h_is_conjugate_mod(const HeisenbergElement& g, const HeisenbergElement& h, std::uint64_t m) {
  require_same_rank(g, h);
  if (m == 0) throw ContractViolation("modulus must be positive");
  if (m == 1) return true;
  const auto mm = static_cast<std::int64_t>(m);
  for (std::size_t i = 0; i < g.k(); ++i)
    if (mod(g.x[i] - h.x[i], mm) != 0 || mod(g.y[i] - h.y[i], mm) != 0) return false;
  const Int step = gcd(h_tau(g), Int(static_cast<unsigned long>(m)));
  const Int t = h.z - g.z;
  return mpz_divisible_p(t.get_mpz_t(), step.get_mpz_t()) != 0;
}

bool h_orbit_conjugate_mod(const HeisenbergElement& g, const HeisenbergElement& h, std::uint64_t m,
                           std::uint64_t budget) {
  require_same_rank(g, h);
  const ModQuotient q(heisenberg_context(g.k()), static_cast<std::int64_t>(m));
  return q.is_conjugate(q.reduce(h_to_ut(g)), q.reduce(h_to_ut(h)), budget);
}

std::pair<HeisenbergElement, HeisenbergElement> h_lower_bound_pair(std::uint64_t p, std::size_t k) {
  if (!is_prime(p)) throw ContractViolation("h_lower_bound_pair needs a prime, got " + std::to_string(p));
  if (k == 0) throw ContractViolation("rank must be positive");
  HeisenbergElement gamma = HeisenbergElement::identity(k);
  gamma.x[0] = static_cast<unsigned long>(p);
  gamma.z = 1;
  HeisenbergElement eta = gamma;
  eta.z = 2;
  return {gamma, eta};
}

HeisenbergSeparation h_separating_modulus(const HeisenbergElement& g, const HeisenbergElement& h) {
  require_same_rank(g, h);
  if (h_is_conjugate(g, h)) throw ContractViolation("h_separating_modulus: inputs are conjugate");
  const std::size_t k = g.k();
  HeisenbergSeparation out;
  if (g.x != h.x || g.y != h.y) {
    Int d = 0;
    for (std::size_t i = 0; i < k; ++i) {
      d = gcd(d, g.x[i] - h.x[i]);
      d = gcd(d, g.y[i] - h.y[i]);
    }
    out.case_tag = 'A';
    out.spec.modulus = *smallest_non_divisor(d);
  } else {
    const Int tau = h_tau(g);
    const HeisenbergElement gc = h_canonical(g), hc = h_canonical(h);
    out.t = hc.z - gc.z;
    if (tau == 0) {
      out.case_tag = 'C';
      out.spec.modulus = *smallest_prime_non_divisor(out.t);
    } else {
      out.case_tag = 'B';
      Int best = 0;
      for (const auto& [p, e] : factor(tau)) {
        const unsigned vt = valuation(out.t, p);  // t != 0 since tau does not divide it
        if (vt >= e) continue;
        const Int candidate = ipow(p, vt + 1);
        if (best == 0 || candidate < best) best = candidate;
      }
      out.spec.modulus = best.get_ui();
    }
  }
  out.spec.order = ipow(out.spec.modulus, static_cast<unsigned>(2 * k + 1));
  return out;
}

std::optional<std::uint64_t> h_minimal_separating_modulus(const HeisenbergElement& g, const HeisenbergElement& h,
                                                          std::uint64_t max_m) {
  for (std::uint64_t m = 2; m <= max_m; ++m)
    if (!h_is_conjugate_mod(g, h, m)) return m;
  return std::nullopt;
}

}  // namespace nilsep
