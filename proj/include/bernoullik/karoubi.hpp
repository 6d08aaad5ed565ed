#ifndef BERNOULLIK_KAROUBI_HPP
#define BERNOULLIK_KAROUBI_HPP

#include <cstddef>
#include <vector>

#include "bernoullik/abgrp.hpp"
#include "bernoullik/gset.hpp"
#include "bernoullik/perm.hpp"

namespace bernoullik {

enum class OrientationCheck {
  AllElements,  // every centralizer element
  Generators,   // a generating set of the centralizer; the sign map is a homomorphism
};

struct KaroubiClass {
  Perm representative;     // element of the acting group
  std::size_t class_size;  // size of the class within H
  std::size_t fixed_dim;   // number of <g>-orbits on X
  bool oriented;
};

/// Ranks of K^0 and K^1 of H-equivariant K-theory of R^X.
struct KaroubiRank {
  std::size_t rank0 = 0;
  std::size_t rank1 = 0;
  std::vector<KaroubiClass> per_class{};

  GradedAb graded() const { return GradedAb::free(rank0, rank1); }
};

/// H permutes the coordinates of R^X; X must be H-stable. A class [g] counts
/// when the centralizer of g permutes the <g>-orbits of X by even permutations;
/// it lands in K^0 or K^1 by the parity of the orbit count.
KaroubiRank euclidean_rank(const FiniteAction& action, const Subgroup& h, const Subset& x,
                           OrientationCheck check = OrientationCheck::AllElements);

/// H acting on R^H by translating coordinates.
KaroubiRank euclidean_rank_regular(const PermGroup& h, OrientationCheck check = OrientationCheck::AllElements);

/// H acting on R^degree through its permutation representation.
KaroubiRank euclidean_rank_natural(const PermGroup& h, OrientationCheck check = OrientationCheck::AllElements);

/// For a free H-set X: (Z^{c(H)}, 0) if |X/H| is even, the regular-set ranks
/// if it is odd. Throws ActionNotFree otherwise.
GradedAb free_action_reduction(const FiniteAction& action, const Subgroup& h, const Subset& x);

bool acts_freely(const FiniteAction& action, const Subgroup& h, const Subset& x);

}  // namespace bernoullik

#endif  // BERNOULLIK_KAROUBI_HPP
