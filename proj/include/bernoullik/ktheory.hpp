#ifndef BERNOULLIK_KTHEORY_HPP
#define BERNOULLIK_KTHEORY_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bernoullik/abgrp.hpp"
#include "bernoullik/gset.hpp"
#include "bernoullik/karoubi.hpp"
#include "bernoullik/perm.hpp"

namespace bernoullik {

struct KTerm {
  std::string key;
  GradedAb value;
  friend bool operator==(const KTerm&, const KTerm&) = default;
};

/// Result of evaluating one closed formula. Terms are in enumeration order
/// and their keys do not change when the truncation grows.
struct KReport {
  std::string formula;
  std::map<std::string, std::string> params;
  GradedAb total;
  std::vector<KTerm> terms;
  bool complete = true;
  bool determined = true;  // false when a hypothesis could not be established
  std::optional<std::size_t> max_subset_size;
  std::string window = "none";
  std::vector<std::string> notes;

  void add(std::string key, const GradedAb& value);
  /// Banner line for incomplete reports, empty otherwise.
  std::string banner() const;
  std::string to_text() const;
  friend bool operator==(const KReport&, const KReport&) = default;
};

/// K-theory of the reduced group algebra of a finite group.
GradedAb group_ktheory(const PermGroup& g);
GradedAb group_ktheory(const Subgroup& h);

/// Sum over [F] in G\FIN(Z) and [S] in G_F\{1..n}^F of K(C*_r(G_S)).
KReport cantor_orbit_form(const GSetSpec& z, std::size_t n, const Truncation& trunc = {});

/// The same sum for Z = G, reorganized by conjugacy classes [C] of subgroups,
/// N_C-orbits of coset sets X whose union C.X has setwise stabilizer exactly C,
/// and C-orbits of labellings of C.X.
KReport cantor_conjugacy_form(const PermGroup& g, std::size_t n);

/// Per subgroup class (in subgroup_classes order): the number of N_C-orbits of
/// coset sets with exact stabilizer C.
std::vector<std::size_t> exact_stabilizer_counts(const PermGroup& g);

/// Direct sum of matrix algebras of sizes k over an infinite Z. For a single
/// block the total is exact; otherwise the terms follow the truncation.
KReport finite_dim(const GSetSpec& z, const std::vector<Int>& k, const Truncation& trunc = {});

KReport fibonacci_like(const GSetSpec& z, const Truncation& trunc = {});
KReport circle(const GSetSpec& z, const Truncation& trunc = {});
KReport rotation(const GSetSpec& z, const Truncation& trunc = {});

/// H finite: Z = G regular and n = c(H) - 1 labels per point.
KReport wreath(const PermGroup& h, const PermGroup& g);
/// H free on `generators` letters: B is a sum of that many copies of C_0(R).
KReport wreath_free(std::size_t generators, const PermGroup& g, const Truncation& trunc = {});
/// G torsion-free, given by its K-theory and the sizes of the enumerated orbit
/// representatives of nonempty finite subsets.
KReport wreath_free_symbolic(std::size_t generators, const GradedAb& group_k,
                             const std::vector<std::size_t>& subset_sizes);

KReport cuntz_o_infinity(const PermGroup& g);
KReport cuntz_o2(const PermGroup& g);
/// Stored values for O_{n+1} tensored over Z/2, optionally with C_0(R).
KReport cuntz_z2_table(std::size_t n, bool suspended);
/// A = C + O_n. Terms with nontrivial stabilizer are NotComputable unless the
/// stabilizer has order two and acts on F simply transitively.
KReport cuntz_one_plus_on(std::size_t n, const GSetSpec& z, const Truncation& trunc = {});

/// Vanishing criterion for unital A with [1]^{(x) r} = 0 in K_0(A^{(x) r}).
KReport zero_theorem(const Ab& k0, const std::vector<Int>& unit, std::size_t r_max, const GSetSpec& z);

/// K-theory of B for the UCT reduction.
struct BSpec {
  std::optional<std::pair<std::size_t, std::size_t>> free;  // copies of C and of C_0(R)
  GradedAb custom;

  static BSpec free_b(std::size_t c_copies, std::size_t line_copies) { return {std::pair{c_copies, line_copies}, {}}; }
  static BSpec custom_b(const GradedAb& k) { return {std::nullopt, k}; }
};

KReport localized_uct(const GSetSpec& z, const BSpec& b, const Supernatural& n, const Truncation& trunc = {});

/// Colimit over the orbit category of a finite group of K(C*_r(H)).
GradedAb orbit_colim(const PermGroup& g);
/// The arrows used by orbit_colim, one object per conjugacy class of subgroups.
Diagram orbit_diagram(const PermGroup& g);

/// Pushout of colim_shift <- colim_group -> k_group with the two outer
/// corners localized at s. f maps into colim_shift, g into k_group.
GradedAb af_pushout(const GradedAb& colim_group, const GradedAb& colim_shift, const GradedAb& k_group,
                    const Supernatural& s, const IntMatrix& f0, const IntMatrix& f1, const IntMatrix& g0,
                    const IntMatrix& g1);
/// Torsion-free G: reduced K(C*_r(G)) localized at s plus the coinvariants.
GradedAb af_pushout_torsion_free(const GradedAb& reduced_group_k, const GradedAb& coinvariants,
                                 const Supernatural& s);

}  // namespace bernoullik

#endif  // BERNOULLIK_KTHEORY_HPP
