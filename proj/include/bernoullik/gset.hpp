#ifndef BERNOULLIK_GSET_HPP
#define BERNOULLIK_GSET_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bernoullik/perm.hpp"

namespace bernoullik {

/// A finite group acting on the points {0, ..., size-1}.
///
/// images[g][x] is the image of x under the group element with index g.
struct FiniteAction {
  PermGroup group;
  std::size_t size = 0;
  std::vector<std::vector<Point>> images;

  /// The group acting on its own degree points.
  static FiniteAction natural(const PermGroup& g);
  /// Left translation of the group on its elements, in element order.
  static FiniteAction regular(const PermGroup& g);

  Point apply(std::size_t g, Point x) const { return images[g][x]; }
};

struct GSetPiece {
  Subgroup stabilizer;
  std::optional<std::size_t> multiplicity;  // nullopt is omega
};

/// A countable G-set given by its transitive pieces G/H_i with multiplicities.
struct GSetSpec {
  PermGroup group;
  std::vector<GSetPiece> pieces;

  /// One trivial-stabilizer piece of multiplicity one: G acting on itself.
  static GSetSpec regular(const PermGroup& g);
  bool infinite() const;
};

/// Finite multiplicities substituted for omega pieces.
struct Window {
  std::optional<std::size_t> uniform;         // applies to every omega piece
  std::map<std::size_t, std::size_t> pieces;  // per piece index, overrides uniform

  bool empty() const { return !uniform && pieces.empty(); }
  /// "3" sets the uniform value; "0:2,1:5" sets per-piece values.
  static Window parse(const std::string& text);
  std::string to_string() const;
};

struct Truncation {
  std::optional<std::size_t> max_subset_size;  // nullopt means the realized size
  Window window;
};

/// A finite window of a GSetSpec realized as a concrete action.
///
/// Points are laid out piece by piece in spec order; within a piece copy by
/// copy; within a copy the cosets gH in order of first appearance of g in
/// the group's element order.
struct RealizedGSet {
  FiniteAction action;
  std::vector<std::size_t> piece_of_point;
  std::vector<std::size_t> realized_multiplicity;
  bool fully_realized = true;
};

/// Throws WindowRequired if an omega piece has no window value.
RealizedGSet realize(const GSetSpec& spec, const Window& window = {});

using Subset = std::vector<Point>;  // ascending points
using Labelling = std::vector<std::size_t>;  // values aligned with the ascending domain

struct DisjointPair {
  Subset first;
  Subset second;
  friend bool operator==(const DisjointPair&, const DisjointPair&) = default;
};

template <class Rep>
struct OrbitEntry {
  Rep representative;
  Subgroup stabilizer;  // subgroup of the acting group's parent
  std::size_t orbit_size;
};

struct SubsetOrbits {
  std::vector<OrbitEntry<Subset>> orbits;
  bool complete = false;
  std::size_t realized_size = 0;
};

/// Orbits of subsets of the realized G-set with at most max_size points.
/// Representatives are lexicographic minima, listed by size then lex order.
SubsetOrbits subset_orbits(const GSetSpec& spec, std::size_t max_size, const Window& window = {});
std::vector<OrbitEntry<Subset>> subset_orbits(const FiniteAction& action, std::size_t max_size);

/// Setwise stabilizer in the group of a point set.
Subgroup setwise_stabilizer(const FiniteAction& action, const Subset& points);

/// Orbits of H on labellings F -> {1, ..., alphabet}. F must be H-stable.
std::vector<OrbitEntry<Labelling>> function_orbits(const FiniteAction& action, const Subgroup& h,
                                                   const Subset& domain, std::size_t alphabet);

/// Orbits of H on ordered pairs of disjoint subsets of F.
std::vector<OrbitEntry<DisjointPair>> disjoint_pair_orbits(const FiniteAction& action,
                                                           const Subgroup& h,
                                                           const Subset& domain);

/// Labellings with values in {0, ..., values-1}; shared by the two functions above.
std::vector<OrbitEntry<Labelling>> labelling_orbits(const FiniteAction& action, const Subgroup& h,
                                                    const Subset& domain, std::size_t values);

std::string subset_to_string(const Subset& s);

}  // namespace bernoullik

#endif  // BERNOULLIK_GSET_HPP
