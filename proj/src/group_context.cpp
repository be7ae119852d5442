#include "nilsep/group_context.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "nilsep/errors.hpp"

namespace nilsep {

GroupContext::GroupContext(std::string name, Family family, std::size_t dim, std::vector<Pivot> pivots,
                           std::vector<std::string> generator_names, int nilpotency_class,
                           std::size_t rank_param)
    : name_(std::move(name)),
      family_(family),
      dim_(dim),
      pivots_(std::move(pivots)),
      generator_names_(std::move(generator_names)),
      class_(nilpotency_class),
      rank_param_(rank_param) {
  for (const auto& [r, c] : pivots_) generators_.push_back(UTElement::elementary(dim_, r, c));
  word_generators_ = generators_;
  check_compatible();
  while (center_rank_ < generators_.size() && is_central(generators_[center_rank_])) ++center_rank_;
}

void GroupContext::set_word_generators(std::vector<UTElement> s) {
  for (const auto& g : s)
    if (g.dim() != dim_ || !contains(g)) throw ContractViolation("word generator outside the group");
  word_generators_ = std::move(s);
}

void GroupContext::check_compatible() const {
  if (class_ > static_cast<int>(dim_) - 1 && dim_ > 1)
    throw ContractViolation("nilpotency class exceeds matrix size - 1");
  // [xi_j, xi_i] must lie in Delta_{j-1}: no coordinate at index >= j.
  for (std::size_t j = 0; j < generators_.size(); ++j) {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const auto c = coordinates(ut_commutator(generators_[j], generators_[i]));
      for (std::size_t t = j; t < c.size(); ++t)
        if (c[t] != 0) throw ContractViolation(name_ + ": generating set is not compatible with a central series");
    }
  }
}

std::vector<Int> GroupContext::coordinates(const UTElement& g) const {
  if (g.dim() != dim_) throw ContractViolation("coordinates: dimension mismatch");
  UTElement cur = g;
  const std::size_t h = generators_.size();
  std::vector<Int> a(h);
  Int delta;
  for (std::size_t k = h; k-- > 0;) {
    const auto [pr, pc] = pivots_[k];
    a[k] = cur.at(pr, pc);
    if (a[k] == 0) continue;
    // cur <- cur * (I - a E_{pr,pc}): column pc loses a * column pr
    for (std::size_t row = 0; row <= pr; ++row) {
      const Int src = cur.at(row, pr);
      if (src == 0) continue;
      cur.set(row, pc, cur.at(row, pc) - a[k] * src);
    }
  }
  if (!cur.is_identity()) throw ContractViolation(name_ + ": element is not in the lattice");
  return a;
}

UTElement GroupContext::from_coordinates(const std::vector<Int>& a) const {
  if (a.size() != generators_.size()) throw ContractViolation("from_coordinates: wrong length");
  UTElement g(dim_);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    const auto [pr, pc] = pivots_[k];
    g = ut_multiply(g, UTElement::elementary(dim_, pr, pc, a[k]));
  }
  return g;
}

bool GroupContext::contains(const UTElement& g) const {
  if (g.dim() != dim_) return false;
  try {
    coordinates(g);
    return true;
  } catch (const ContractViolation&) {
    return false;
  }
}

bool GroupContext::is_central(const UTElement& g) const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [&](const UTElement& s) { return ut_multiply(g, s) == ut_multiply(s, g); });
}

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  return out;
}

std::vector<Int> parse_int_list(const std::string& s) {
  std::vector<Int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    Int v;
    if (tok.empty() || v.set_str(tok, 10) != 0) throw ParseError("bad integer '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::string join(const std::vector<Int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i].get_str();
  }
  return out;
}

std::vector<std::vector<Int>> parse_matrix(const std::string& body) {
  // [[a,b],[c,d]]
  if (body.size() < 4 || body.front() != '[' || body.back() != ']') throw ParseError("bad matrix '" + body + "'");
  std::vector<std::vector<Int>> rows;
  std::size_t pos = 1;
  while (pos < body.size() - 1) {
    if (body[pos] == ',') {
      ++pos;
      continue;
    }
    if (body[pos] != '[') throw ParseError("bad matrix row in '" + body + "'");
    const auto close = body.find(']', pos);
    if (close == std::string::npos) throw ParseError("unterminated matrix row");
    rows.push_back(parse_int_list(body.substr(pos + 1, close - pos - 1)));
    pos = close + 1;
  }
  return rows;
}

}  // namespace

UTElement GroupContext::parse_element(const std::string& text) const {
  const std::string s = strip(text);
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ParseError("element '" + text + "' lacks a group prefix");
  const std::string prefix = s.substr(0, colon);
  if (prefix != name_) throw ParseError("element prefix '" + prefix + "' does not match group '" + name_ + "'");
  const std::string body = s.substr(colon + 1);
  if (!body.empty() && body.front() == '[') {
    auto g = UTElement::from_rows(parse_matrix(body));
    if (!contains(g)) throw ParseError("matrix is not an element of " + name_);
    return g;
  }
  if (body.size() < 2 || body.front() != '(' || body.back() != ')') throw ParseError("bad element body '" + body + "'");
  const std::string inner = body.substr(1, body.size() - 2);
  if (family_ == Family::Heisenberg) {
    const std::size_t k = rank_param_;
    std::vector<std::string> parts;
    std::stringstream ss(inner);
    std::string part;
    while (std::getline(ss, part, ';')) parts.push_back(part);
    if (parts.size() != 3) throw ParseError("Heisenberg element needs x;y;z");
    const auto x = parse_int_list(parts[0]);
    const auto y = parse_int_list(parts[1]);
    const auto z = parse_int_list(parts[2]);
    if (x.size() != k || y.size() != k || z.size() != 1) throw ParseError("Heisenberg element has wrong rank");
    UTElement g(dim_);
    for (std::size_t i = 0; i < k; ++i) {
      g.set(0, 1 + i, x[i]);
      g.set(1 + i, k + 1, y[i]);
    }
    g.set(0, k + 1, z[0]);
    return g;
  }
  if (family_ == Family::Abelian) {
    const auto a = parse_int_list(inner);
    if (a.size() != hirsch()) throw ParseError("abelian element has wrong length");
    return from_coordinates(a);
  }
  throw ParseError("group " + name_ + " only accepts the matrix form");
}

std::string GroupContext::format_element(const UTElement& g) const {
  if (family_ == Family::Heisenberg) {
    const std::size_t k = rank_param_;
    std::vector<Int> x(k), y(k);
    for (std::size_t i = 0; i < k; ++i) {
      x[i] = g.at(0, 1 + i);
      y[i] = g.at(1 + i, k + 1);
    }
    return name_ + ":(" + join(x) + ";" + join(y) + ";" + g.at(0, k + 1).get_str() + ")";
  }
  if (family_ == Family::Abelian) return name_ + ":(" + join(coordinates(g)) + ")";
  return name_ + ":" + format_matrix(g);
}

GroupContext make_abelian(std::size_t d) {
  if (d == 0) throw Unsupported("Z^0");
  std::vector<GroupContext::Pivot> piv;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d; ++i) {
    piv.emplace_back(0, i + 1);
    names.push_back("e" + std::to_string(i + 1));
  }
  return GroupContext(d == 1 ? "z" : "z" + std::to_string(d), Family::Abelian, d + 1, piv, names, 1, d);
}

GroupContext make_heisenberg(std::size_t k) {
  if (k == 0) throw Unsupported("H_1");
  const std::size_t dim = k + 2;
  std::vector<GroupContext::Pivot> piv{{0, k + 1}};
  std::vector<std::string> names{"lambda"};
  for (std::size_t i = 0; i < k; ++i) {
    piv.emplace_back(0, 1 + i);
    names.push_back(k == 1 ? "alpha" : "alpha" + std::to_string(i + 1));
  }
  for (std::size_t i = 0; i < k; ++i) {
    piv.emplace_back(1 + i, k + 1);
    names.push_back(k == 1 ? "beta" : "beta" + std::to_string(i + 1));
  }
  return GroupContext("h" + std::to_string(2 * k + 1), Family::Heisenberg, dim, piv, names, 2, k);
}

GroupContext make_unitriangular(std::size_t d) {
  if (d < 2) throw Unsupported("UT(d) needs d >= 2");
  std::vector<GroupContext::Pivot> piv;
  std::vector<std::string> names;
  for (std::size_t level = d - 1; level >= 1; --level) {
    for (std::size_t i = 0; i + level < d; ++i) {
      piv.emplace_back(i, i + level);
      names.push_back("E" + std::to_string(i + 1) + std::to_string(i + level + 1));
    }
  }
  return GroupContext("ut" + std::to_string(d), Family::Unitriangular, d, piv, names, static_cast<int>(d) - 1, d);
}

GroupContext make_heisenberg_times_z() {
  // H_3 in the top-left 3x3 block, Z in the bottom-right 2x2 block.
  return GroupContext("h3xz", Family::HeisenbergTimesZ, 5, {{0, 2}, {3, 4}, {0, 1}, {1, 2}},
                      {"lambda", "zeta", "alpha", "beta"}, 2, 1);
}

GroupContext make_group(const std::string& name) {
  if (name == "h3xz") return make_heisenberg_times_z();
  if (name == "z") return make_abelian(1);
  auto number = [&](std::size_t from) -> std::size_t {
    const std::string rest = name.substr(from);
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(c); }))
      throw Unsupported("unknown group '" + name + "'");
    return std::stoul(rest);
  };
  if (name.rfind("ut", 0) == 0) {
    const auto d = number(2);
    if (d < 2 || d > 6) throw Unsupported("ut" + std::to_string(d) + " not built in (2..6)");
    return make_unitriangular(d);
  }
  if (name.rfind("h", 0) == 0) {
    const auto n = number(1);
    if (n % 2 == 0 || n < 3 || n > 7) throw Unsupported("h" + std::to_string(n) + " not built in (h3, h5, h7)");
    return make_heisenberg((n - 1) / 2);
  }
  if (name.rfind("z", 0) == 0) {
    const auto d = number(1);
    if (d < 1 || d > 8) throw Unsupported("z" + std::to_string(d) + " not built in (z1..z8)");
    return make_abelian(d);
  }
  throw Unsupported("unknown group '" + name + "'");
}

std::vector<std::string> builtin_group_names() {
  return {"z", "z2", "z3", "h3", "h5", "h7", "ut3", "ut4", "ut5", "h3xz"};
}

}  // namespace nilsep
