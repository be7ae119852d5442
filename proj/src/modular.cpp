#include "nilsep/modular.hpp"

#include <string>

#include "nilsep/errors.hpp"

namespace nilsep {

namespace {
inline std::size_t upper_index(std::size_t d, std::size_t i, std::size_t j) { return i * (2 * d - i - 1) / 2 + (j - i - 1); }
}  // namespace

std::int64_t ModElement::at(std::size_t i, std::size_t j) const {
  if (i == j) return 1;
  if (i > j) return 0;
  return upper[upper_index(dim, i, j)];
}

std::int64_t& ModElement::ref(std::size_t i, std::size_t j) { return upper[upper_index(dim, i, j)]; }

bool ModElement::is_identity() const {
  for (auto v : upper)
    if (v != 0) return false;
  return true;
}

std::size_t ModElementHash::operator()(const ModElement& g) const {
  std::size_t h = g.dim;
  for (auto v : g.upper) h = h * 1000003u ^ static_cast<std::size_t>(v);
  return h;
}

ModQuotient::ModQuotient(const GroupContext& ctx, std::int64_t m) : ctx_(&ctx), m_(m) {
  if (m < 1) throw ContractViolation("modulus must be positive");
  if (ctx.dim() > ModElement::kMaxDim) throw Unsupported("matrix too large for modular oracle");
  if (m > (std::int64_t{1} << 24)) throw Unsupported("modulus too large for modular oracle");
  for (const auto& g : ctx.generators()) generators_.push_back(reduce(g));
}

ModElement ModQuotient::identity() const {
  ModElement e;
  e.dim = static_cast<std::uint8_t>(ctx_->dim());
  return e;
}

ModElement ModQuotient::reduce(const UTElement& g) const {
  ModElement e = identity();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) e.ref(i, j) = mod(g.at(i, j), m_);
  return e;
}

ModElement ModQuotient::multiply(const ModElement& a, const ModElement& b) const {
  ModElement c = identity();
  const std::size_t d = a.dim;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      std::int64_t acc = a.at(i, j) + b.at(i, j);
      for (std::size_t k = i + 1; k < j; ++k) acc += a.at(i, k) * b.at(k, j);
      c.ref(i, j) = acc % m_;
    }
  return c;
}

ModElement ModQuotient::inverse(const ModElement& a) const {
  ModElement inv = identity();
  const std::size_t d = a.dim;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = j; i-- > 0;) {
      std::int64_t acc = -a.at(i, j);
      for (std::size_t k = i + 1; k < j; ++k) acc -= a.at(i, k) * inv.at(k, j);
      acc %= m_;
      if (acc < 0) acc += m_;
      inv.ref(i, j) = acc;
    }
  return inv;
}

ModElement ModQuotient::conjugate(const ModElement& g, const ModElement& u) const {
  return multiply(multiply(inverse(u), g), u);
}

std::uint64_t ModQuotient::order() const {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < ctx_->hirsch(); ++i) {
    if (r > UINT64_MAX / static_cast<std::uint64_t>(m_)) return UINT64_MAX;
    r *= static_cast<std::uint64_t>(m_);
  }
  return r;
}

void ModQuotient::for_each_element(const std::function<void(const ModElement&)>& visit, std::uint64_t budget) const {
  if (order() > budget)
    throw BudgetExceeded("quotient of " + ctx_->name() + " mod " + std::to_string(m_) + " exceeds budget");
  const std::size_t h = generators_.size();
  // prefix[i] = xi_1^{a_1} ... xi_i^{a_i}
  std::vector<ModElement> prefix(h + 1, identity());
  std::vector<std::int64_t> a(h, 0);
  for (std::size_t i = 0; i < h; ++i) prefix[i + 1] = prefix[i];
  for (;;) {
    visit(prefix[h]);
    std::size_t i = h;
    while (i > 0) {
      --i;
      if (++a[i] < m_) {
        prefix[i + 1] = multiply(prefix[i + 1], generators_[i]);
        for (std::size_t j = i + 1; j < h; ++j) prefix[j + 1] = prefix[j];
        break;
      }
      a[i] = 0;
      prefix[i + 1] = prefix[i];
      if (i == 0) return;
    }
    if (h == 0) return;
  }
}

ModSet ModQuotient::conjugacy_class(const ModElement& g, std::uint64_t budget) const {
  ModSet cls;
  for_each_element([&](const ModElement& u) { cls.insert(conjugate(g, u)); }, budget);
  return cls;
}

bool ModQuotient::is_conjugate(const ModElement& g, const ModElement& h, std::uint64_t budget) const {
  bool found = false;
  for_each_element(
      [&](const ModElement& u) {
        if (!found && conjugate(g, u) == h) found = true;
      },
      budget);
  return found;
}

ModSet ModQuotient::closure(const std::vector<ModElement>& gens, std::uint64_t budget) const {
  ModSet seen{identity()};
  std::vector<ModElement> frontier{identity()};
  while (!frontier.empty()) {
    std::vector<ModElement> next;
    for (const auto& x : frontier)
      for (const auto& s : gens) {
        ModElement y = multiply(x, s);
        if (seen.insert(y).second) {
          if (seen.size() > budget) throw BudgetExceeded("subgroup closure exceeds budget");
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace nilsep
