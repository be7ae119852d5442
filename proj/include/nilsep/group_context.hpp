#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nilsep/ut_element.hpp"

namespace nilsep {

enum class Family { Abelian, Heisenberg, Unitriangular, HeisenbergTimesZ };

/// A torsion-free nilpotent group realised as a lattice of unitriangular
/// integer matrices, together with a compatible generating set
/// xi_1, ..., xi_h (xi_1 central, each xi_{j} central modulo
/// Delta_{j-1} = <xi_1, ..., xi_{j-1}>).
///
/// Every built-in generator is an elementary matrix I + E_{(r,c)}; the position
/// (r,c) is its pivot. Mal'tsev coordinates are read off pivots by peeling
/// xi_h, xi_{h-1}, ..., xi_1 from the right, so g = xi_1^{a_1} ... xi_h^{a_h}.
class GroupContext {
 public:
  using Pivot = std::pair<std::size_t, std::size_t>;

  GroupContext(std::string name, Family family, std::size_t dim, std::vector<Pivot> pivots,
               std::vector<std::string> generator_names, int nilpotency_class, std::size_t rank_param);

  const std::string& name() const { return name_; }
  Family family() const { return family_; }
  std::size_t dim() const { return dim_; }
  std::size_t hirsch() const { return generators_.size(); }
  int nilpotency_class() const { return class_; }
  /// Number of leading generators that are central; they span Z(Gamma).
  std::size_t center_rank() const { return center_rank_; }
  /// k for H_{2k+1}, d for Z^d, matrix size for UT(d).
  std::size_t rank_param() const { return rank_param_; }
  bool is_abelian() const { return class_ <= 1; }

  const std::vector<UTElement>& generators() const { return generators_; }
  const UTElement& generator(std::size_t i) const { return generators_[i]; }
  const std::vector<Pivot>& pivots() const { return pivots_; }
  const std::vector<std::string>& generator_names() const { return generator_names_; }

  /// Word generating set S used by the word metric (defaults to the Mal'tsev basis).
  const std::vector<UTElement>& word_generators() const { return word_generators_; }
  void set_word_generators(std::vector<UTElement> s);

  UTElement identity() const { return UTElement(dim_); }

  /// Exponents a_1..a_h with g = xi_1^{a_1} ... xi_h^{a_h}. Throws if g is not in the lattice.
  std::vector<Int> coordinates(const UTElement& g) const;
  UTElement from_coordinates(const std::vector<Int>& a) const;

  bool contains(const UTElement& g) const;
  bool is_central(const UTElement& g) const;

  /// Parses `h3:(x;y;z)`, `h5:(x1,x2;y1,y2;z)`, `z2:(a,b)` or `<name>:[[row],...]`.
  UTElement parse_element(const std::string& text) const;
  /// Compact form for Heisenberg and abelian families, matrix form otherwise.
  std::string format_element(const UTElement& g) const;

 private:
  void check_compatible() const;

  std::string name_;
  Family family_;
  std::size_t dim_;
  std::vector<Pivot> pivots_;
  std::vector<std::string> generator_names_;
  std::vector<UTElement> generators_;
  std::vector<UTElement> word_generators_;
  int class_;
  std::size_t rank_param_;
  std::size_t center_rank_ = 0;
};

GroupContext make_abelian(std::size_t d);
GroupContext make_heisenberg(std::size_t k);
GroupContext make_unitriangular(std::size_t d);
GroupContext make_heisenberg_times_z();

/// z, z2, zN, h3, h5, h7, ut3..ut6, h3xz.
GroupContext make_group(const std::string& name);
std::vector<std::string> builtin_group_names();

}  // namespace nilsep
