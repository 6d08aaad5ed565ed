#ifndef BERNOULLIK_PERM_HPP
#define BERNOULLIK_PERM_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bernoullik {

using Point = std::uint32_t;

/// A permutation of {0, ..., degree-1} stored by its image sequence.
///
/// Products compose right to left: (a * b)[x] == a[b[x]]. The ordering is
/// lexicographic on the image sequence, so the identity is the least
/// permutation of any given degree.
class Perm {
public:
  Perm() = default;
  explicit Perm(std::size_t degree);
  explicit Perm(std::vector<Point> images);

  static Perm from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const;
  Perm inverse() const;
  /// +1 for even permutations, -1 for odd ones.
  int sign() const;
  std::string to_string() const;

  friend Perm operator*(const Perm& lhs, const Perm& rhs);
  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

private:
  std::vector<Point> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

inline constexpr std::size_t kDefaultClosureCap = 100000;
inline constexpr std::size_t kDefaultSubgroupCap = 384;

/// Closure cap honouring the BERNOULLIK_CAP environment override.
std::size_t default_closure_cap();

class Subgroup;
struct SubgroupClassEntry;

struct ConjugacyClass {
  Perm representative;                 // lexicographically least member
  std::vector<std::size_t> members;    // element indices, ascending
  std::size_t size() const { return members.size(); }
};

namespace detail {
struct GroupData;
struct SubgroupData;
}  // namespace detail

/// A finite group given by permutation generators.
///
/// Handles are cheap to copy and share one lazily filled cache; the cache
/// is populated under std::call_once so concurrent readers are safe.
class PermGroup {
public:
  PermGroup(std::size_t degree, std::vector<Perm> generators,
            std::size_t cap = default_closure_cap());

  static PermGroup trivial(std::size_t degree = 1);
  static PermGroup cyclic(std::size_t m);
  static PermGroup symmetric(std::size_t n);
  /// Symmetries of the regular n-gon, order 2n, acting on n vertices.
  static PermGroup dihedral(std::size_t n);
  static PermGroup direct_product(const PermGroup& a, const PermGroup& b);
  /// base^{top} semidirect top, with top acting on itself by left translation.
  static PermGroup wreath(const PermGroup& base, const PermGroup& top);
  /// Left-regular representation of g on its own elements.
  static PermGroup regular(const PermGroup& g);

  std::size_t degree() const;
  const std::vector<Perm>& generators() const;
  std::size_t cap() const;

  /// Breadth-first closure from the identity; each BFS layer is sorted by
  /// image sequence. Throws CapExceeded when the closure outgrows the cap.
  const std::vector<Perm>& elements() const;
  std::size_t order() const { return elements().size(); }
  std::optional<std::size_t> index_of(const Perm& p) const;
  bool contains(const Perm& p) const { return index_of(p).has_value(); }
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;
  std::size_t identity_index() const { return 0; }

  /// Classes sorted by representative; the identity class comes first.
  const std::vector<ConjugacyClass>& conjugacy_classes() const;
  const std::vector<std::size_t>& class_of() const;
  std::size_t class_count() const { return conjugacy_classes().size(); }
  std::size_t exponent() const;
  std::size_t element_order(std::size_t index) const;

  Subgroup whole() const;
  Subgroup trivial_subgroup() const;
  /// Throws NotASubgroup if a generator lies outside this group.
  Subgroup subgroup(const std::vector<Perm>& generators) const;
  /// `indices` must be closed under multiplication (checked).
  Subgroup subgroup_from_indices(std::vector<std::size_t> indices) const;
  Subgroup subgroup_generated_by_indices(const std::vector<std::size_t>& gens) const;

  Subgroup centralizer(const Perm& g) const;
  Subgroup normalizer(const Subgroup& h) const;
  /// Conjugacy classes of subgroups by cyclic extension; sorted by order then
  /// by the least conjugate's index set.
  std::vector<SubgroupClassEntry> subgroup_classes(std::size_t cap = kDefaultSubgroupCap) const;

  bool same_group(const PermGroup& other) const { return data_ == other.data_; }

private:
  friend class Subgroup;
  explicit PermGroup(std::shared_ptr<detail::GroupData> data) : data_(std::move(data)) {}
  std::shared_ptr<detail::GroupData> data_;
};

/// A subgroup of a PermGroup, identified by its set of parent element indices.
class Subgroup {
public:
  const PermGroup& parent() const;
  const std::vector<Perm>& generators() const;
  /// Parent element indices, ascending.
  const std::vector<std::size_t>& indices() const;
  std::size_t order() const;
  bool contains_index(std::size_t parent_index) const;
  bool contains(const Perm& p) const;
  /// Standalone group generated by the same permutations.
  const PermGroup& group() const;
  std::size_t class_count() const;
  bool is_trivial() const { return order() == 1; }

  friend bool operator==(const Subgroup& a, const Subgroup& b);

private:
  friend class PermGroup;
  Subgroup(PermGroup parent, std::shared_ptr<const detail::SubgroupData> data)
      : parent_(std::move(parent)), data_(std::move(data)) {}
  PermGroup parent_;
  std::shared_ptr<const detail::SubgroupData> data_;
};

struct SubgroupClassEntry {
  Subgroup representative;
  std::size_t class_size;
};

}  // namespace bernoullik

#endif  // BERNOULLIK_PERM_HPP
