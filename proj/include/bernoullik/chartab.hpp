#ifndef BERNOULLIK_CHARTAB_HPP
#define BERNOULLIK_CHARTAB_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bernoullik/cyclotomic.hpp"
#include "bernoullik/perm.hpp"

namespace bernoullik {

inline constexpr std::size_t kDefaultCharacterTableCap = 500;

/// Exact complex character table. Columns follow the group's class order;
/// rows are sorted by degree, trivial character first.
struct CharacterTable {
  PermGroup group;
  std::size_t conductor = 1;  // exponent of the group; every value lies in Z[zeta_conductor]
  std::size_t prime = 0;      // the prime field used during the computation
  std::vector<std::size_t> class_sizes{};
  std::vector<std::size_t> inverse_class{};
  std::vector<std::size_t> degrees{};
  std::vector<std::vector<Cyclotomic>> values{};  // values[irreducible][class]

  std::size_t size() const { return degrees.size(); }
  /// Value of irreducible i at the group element with index g.
  const Cyclotomic& at_element(std::size_t i, std::size_t g) const;
};

/// Dixon's method: class multiplication matrices are simultaneously
/// diagonalized over F_p and each character is lifted through the
/// eigenvalue multiplicities of every class representative.
CharacterTable character_table(const PermGroup& g, std::size_t cap = kDefaultCharacterTableCap);

/// Class-weighted inner product (1/|G|) sum |C| a conj(b) over the class columns.
/// Throws Internal if the result is not a rational integer.
std::int64_t inner_product(const CharacterTable& t, const std::vector<Cyclotomic>& a,
                           const std::vector<Cyclotomic>& b);

using SmallMatrix = std::vector<std::vector<std::int64_t>>;

/// Rows are irreducibles of H1, columns irreducibles of H0; entry (i, j) is the
/// multiplicity of the i-th irreducible of H1 in the induction of the j-th of H0.
/// H0 is a subgroup of H1 (its parent must be H1).
SmallMatrix induction_matrix(const Subgroup& h0, const PermGroup& h1);

/// Rows are irreducibles of H0, columns irreducibles of H1; entry (j, i) is the
/// multiplicity of the j-th irreducible of H0 in the restriction of the i-th of H1.
SmallMatrix restriction_matrix(const Subgroup& h0, const PermGroup& h1);

}  // namespace bernoullik

#endif  // BERNOULLIK_CHARTAB_HPP
