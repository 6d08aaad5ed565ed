#include "bernoullik/perm.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "bernoullik/error.hpp"

namespace bernoullik {

// ---------------------------------------------------------------------------
// Perm

Perm::Perm(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x]) {
      throw Error(ErrorKind::InvalidInput, "image sequence is not a bijection");
    }
    seen[x] = true;
  }
}

Perm Perm::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> touched(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point from = cycle[i];
      Point to = cycle[(i + 1) % cycle.size()];
      if (from >= degree || to >= degree || touched[from]) {
        throw Error(ErrorKind::InvalidInput, "cycles overlap or exceed the degree");
      }
      touched[from] = true;
      images[from] = to;
    }
  }
  return Perm(std::move(images));
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Perm Perm::inverse() const {
  Perm inv;
  inv.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv.images_[images_[i]] = static_cast<Point>(i);
  return inv;
}

int Perm::sign() const {
  std::vector<bool> seen(images_.size(), false);
  std::size_t transpositions = 0;
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (std::size_t x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0 ? 1 : -1;
}

std::string Perm::to_string() const {
  std::ostringstream out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    out << '(';
    for (std::size_t x = start; !seen[x]; x = images_[x]) {
      if (x != start) out << ' ';
      out << x;
      seen[x] = true;
    }
    out << ')';
  }
  std::string s = out.str();
  return s.empty() ? "()" : s;
}

Perm operator*(const Perm& lhs, const Perm& rhs) {
  if (lhs.degree() != rhs.degree()) {
    throw Error(ErrorKind::InvalidInput, "degree mismatch in permutation product");
  }
  Perm out;
  out.images_.resize(rhs.images_.size());
  for (std::size_t i = 0; i < rhs.images_.size(); ++i) out.images_[i] = lhs.images_[rhs.images_[i]];
  return out;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t default_closure_cap() {
  if (const char* env = std::getenv("BERNOULLIK_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultClosureCap;
}

// ---------------------------------------------------------------------------
// Shared caches

namespace detail {

constexpr std::size_t kTableLimit = 1024;

struct GroupData {
  std::size_t degree = 0;
  std::vector<Perm> generators;
  std::size_t cap = kDefaultClosureCap;

  std::once_flag elements_once;
  std::vector<Perm> elements;
  std::unordered_map<Perm, std::size_t, PermHash> index;

  std::once_flag table_once;
  std::vector<std::uint32_t> table;  // empty when order exceeds kTableLimit
  std::vector<std::size_t> inverses;
  std::vector<std::size_t> generator_indices;

  std::once_flag classes_once;
  std::vector<ConjugacyClass> classes;
  std::vector<std::size_t> class_of;

  std::mutex subgroup_mutex;
  std::map<std::vector<std::size_t>, std::shared_ptr<const SubgroupData>> subgroup_cache;
};

struct SubgroupData {
  std::vector<Perm> generators;
  std::vector<std::size_t> indices;
  std::size_t degree = 0;
  mutable std::once_flag group_once;
  mutable std::optional<PermGroup> group;
};

}  // namespace detail

namespace {

void ensure_elements(detail::GroupData& d) {
  std::call_once(d.elements_once, [&d] {
    std::vector<Perm> elements;
    std::unordered_map<Perm, std::size_t, PermHash> index;
    Perm id(d.degree);
    elements.push_back(id);
    index.emplace(id, 0);
    std::size_t layer_begin = 0;
    while (layer_begin < elements.size()) {
      std::size_t layer_end = elements.size();
      std::vector<Perm> next;
      for (std::size_t i = layer_begin; i < layer_end; ++i) {
        for (const Perm& s : d.generators) {
          Perm y = s * elements[i];
          if (!index.contains(y)) next.push_back(std::move(y));
        }
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      for (Perm& y : next) {
        if (elements.size() >= d.cap) {
          throw Error(ErrorKind::CapExceeded,
                      "group closure exceeds cap " + std::to_string(d.cap));
        }
        index.emplace(y, elements.size());
        elements.push_back(std::move(y));
      }
      layer_begin = layer_end;
    }
    d.elements = std::move(elements);
    d.index = std::move(index);
  });
}

std::size_t lookup(const detail::GroupData& d, const Perm& p) {
  auto it = d.index.find(p);
  if (it == d.index.end()) throw Error(ErrorKind::Internal, "product left the group");
  return it->second;
}

void ensure_table(detail::GroupData& d) {
  ensure_elements(d);
  std::call_once(d.table_once, [&d] {
    const std::size_t n = d.elements.size();
    std::vector<std::size_t> inverses(n);
    for (std::size_t i = 0; i < n; ++i) inverses[i] = lookup(d, d.elements[i].inverse());
    std::vector<std::uint32_t> table;
    if (n <= detail::kTableLimit) {
      table.resize(n * n);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          table[a * n + b] = static_cast<std::uint32_t>(lookup(d, d.elements[a] * d.elements[b]));
        }
      }
    }
    std::vector<std::size_t> gen_idx;
    for (const Perm& s : d.generators) gen_idx.push_back(lookup(d, s));
    d.inverses = std::move(inverses);
    d.table = std::move(table);
    d.generator_indices = std::move(gen_idx);
  });
}

std::vector<std::size_t> closure_of(const PermGroup& g, const std::vector<std::size_t>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<std::size_t> out{g.identity_index()};
  in[g.identity_index()] = 1;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (std::size_t s : gens) {
      std::size_t y = g.multiply(out[head], s);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators, std::size_t cap)
    : data_(std::make_shared<detail::GroupData>()) {
  for (const Perm& g : generators) {
    if (g.degree() != degree) {
      throw Error(ErrorKind::InvalidInput, "generator degree differs from group degree");
    }
  }
  if (cap == 0) throw Error(ErrorKind::InvalidInput, "closure cap must be positive");
  data_->degree = degree;
  data_->generators = std::move(generators);
  data_->cap = cap;
}

PermGroup PermGroup::trivial(std::size_t degree) { return PermGroup(degree, {}); }

PermGroup PermGroup::cyclic(std::size_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidInput, "cyclic group order must be positive");
  if (m == 1) return trivial(1);
  std::vector<Point> img(m);
  for (std::size_t i = 0; i < m; ++i) img[i] = static_cast<Point>((i + 1) % m);
  return PermGroup(m, {Perm(std::move(img))});
}

PermGroup PermGroup::symmetric(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "symmetric group degree must be positive");
  if (n == 1) return trivial(1);
  std::vector<Perm> gens{Perm::from_cycles(n, {{0, 1}})};
  if (n > 2) {
    std::vector<Point> cyc(n);
    std::iota(cyc.begin(), cyc.end(), Point{0});
    gens.push_back(Perm::from_cycles(n, {cyc}));
  }
  return PermGroup(n, std::move(gens));
}

PermGroup PermGroup::dihedral(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "dihedral group needs n >= 2");
  if (n == 2) {
    // Klein four-group on four points keeps the order 2n convention.
    return PermGroup(4, {Perm::from_cycles(4, {{0, 1}, {2, 3}}), Perm::from_cycles(4, {{0, 2}, {1, 3}})});
  }
  std::vector<Point> rot(n), refl(n);
  for (std::size_t i = 0; i < n; ++i) {
    rot[i] = static_cast<Point>((i + 1) % n);
    refl[i] = static_cast<Point>((n - i) % n);
  }
  return PermGroup(n, {Perm(std::move(rot)), Perm(std::move(refl))});
}

PermGroup PermGroup::direct_product(const PermGroup& a, const PermGroup& b) {
  const std::size_t da = a.degree(), db = b.degree();
  std::vector<Perm> gens;
  for (const Perm& s : a.generators()) {
    std::vector<Point> img(da + db);
    for (std::size_t i = 0; i < da; ++i) img[i] = s[static_cast<Point>(i)];
    for (std::size_t i = 0; i < db; ++i) img[da + i] = static_cast<Point>(da + i);
    gens.emplace_back(std::move(img));
  }
  for (const Perm& s : b.generators()) {
    std::vector<Point> img(da + db);
    for (std::size_t i = 0; i < da; ++i) img[i] = static_cast<Point>(i);
    for (std::size_t i = 0; i < db; ++i) img[da + i] = static_cast<Point>(da + s[static_cast<Point>(i)]);
    gens.emplace_back(std::move(img));
  }
  return PermGroup(da + db, std::move(gens), std::max(a.cap(), b.cap()));
}

PermGroup PermGroup::wreath(const PermGroup& base, const PermGroup& top) {
  const std::size_t d = base.degree();
  const auto& top_elems = top.elements();
  const std::size_t blocks = top_elems.size();
  const std::size_t degree = d * blocks;
  std::vector<Perm> gens;
  // Base generators act on the block of the identity.
  for (const Perm& s : base.generators()) {
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    for (std::size_t i = 0; i < d; ++i) img[i] = s[static_cast<Point>(i)];
    gens.emplace_back(std::move(img));
  }
  // Top generators permute blocks by left translation.
  for (std::size_t gi : [&] {
         std::vector<std::size_t> v;
         for (const Perm& s : top.generators()) v.push_back(*top.index_of(s));
         return v;
       }()) {
    std::vector<Point> img(degree);
    for (std::size_t b = 0; b < blocks; ++b) {
      std::size_t target = top.multiply(gi, b);
      for (std::size_t i = 0; i < d; ++i) img[b * d + i] = static_cast<Point>(target * d + i);
    }
    gens.emplace_back(std::move(img));
  }
  return PermGroup(degree, std::move(gens), std::max(base.cap(), top.cap()));
}

PermGroup PermGroup::regular(const PermGroup& g) {
  const std::size_t n = g.order();
  std::vector<Perm> gens;
  for (const Perm& s : g.generators()) {
    std::size_t si = *g.index_of(s);
    std::vector<Point> img(n);
    for (std::size_t x = 0; x < n; ++x) img[x] = static_cast<Point>(g.multiply(si, x));
    gens.emplace_back(std::move(img));
  }
  return PermGroup(n, std::move(gens), g.cap());
}

std::size_t PermGroup::degree() const { return data_->degree; }
const std::vector<Perm>& PermGroup::generators() const { return data_->generators; }
std::size_t PermGroup::cap() const { return data_->cap; }

const std::vector<Perm>& PermGroup::elements() const {
  ensure_elements(*data_);
  return data_->elements;
}

std::optional<std::size_t> PermGroup::index_of(const Perm& p) const {
  ensure_elements(*data_);
  auto it = data_->index.find(p);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t PermGroup::multiply(std::size_t a, std::size_t b) const {
  ensure_table(*data_);
  const std::size_t n = data_->elements.size();
  if (!data_->table.empty()) return data_->table[a * n + b];
  return lookup(*data_, data_->elements[a] * data_->elements[b]);
}

std::size_t PermGroup::inverse(std::size_t a) const {
  ensure_table(*data_);
  return data_->inverses[a];
}

const std::vector<ConjugacyClass>& PermGroup::conjugacy_classes() const {
  ensure_table(*data_);
  std::call_once(data_->classes_once, [this] {
    auto& d = *data_;
    const std::size_t n = d.elements.size();
    const std::size_t unassigned = n;
    std::vector<std::size_t> owner(n, unassigned);
    std::vector<ConjugacyClass> classes;
    for (std::size_t start = 0; start < n; ++start) {
      if (owner[start] != unassigned) continue;
      std::vector<std::size_t> members{start};
      owner[start] = classes.size();
      for (std::size_t head = 0; head < members.size(); ++head) {
        for (std::size_t s : d.generator_indices) {
          std::size_t y = multiply(multiply(s, members[head]), inverse(s));
          if (owner[y] == unassigned) {
            owner[y] = classes.size();
            members.push_back(y);
          }
        }
      }
      std::sort(members.begin(), members.end());
      std::size_t best = members.front();
      for (std::size_t m : members) {
        if (d.elements[m] < d.elements[best]) best = m;
      }
      classes.push_back(ConjugacyClass{d.elements[best], std::move(members)});
    }
    std::vector<std::size_t> order(classes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return classes[a].representative < classes[b].representative;
    });
    std::vector<ConjugacyClass> sorted;
    std::vector<std::size_t> class_of(n);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t m : classes[order[i]].members) class_of[m] = i;
      sorted.push_back(std::move(classes[order[i]]));
    }
    d.classes = std::move(sorted);
    d.class_of = std::move(class_of);
  });
  return data_->classes;
}

const std::vector<std::size_t>& PermGroup::class_of() const {
  conjugacy_classes();
  return data_->class_of;
}

std::size_t PermGroup::element_order(std::size_t index) const {
  std::size_t k = 1;
  for (std::size_t x = index; x != identity_index(); x = multiply(x, index)) ++k;
  return k;
}

std::size_t PermGroup::exponent() const {
  std::size_t e = 1;
  for (const auto& c : conjugacy_classes()) e = std::lcm(e, element_order(c.members.front()));
  return e;
}

Subgroup PermGroup::whole() const {
  std::vector<std::size_t> all(order());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return subgroup_from_indices(std::move(all));
}

Subgroup PermGroup::trivial_subgroup() const { return subgroup_from_indices({identity_index()}); }

Subgroup PermGroup::subgroup(const std::vector<Perm>& generators) const {
  std::vector<std::size_t> gens;
  for (const Perm& p : generators) {
    auto idx = index_of(p);
    if (!idx) throw Error(ErrorKind::NotASubgroup, "generator " + p.to_string() + " is not in the group");
    gens.push_back(*idx);
  }
  auto data = std::make_shared<detail::SubgroupData>();
  data->generators = generators;
  data->indices = closure_of(*this, gens);
  data->degree = degree();
  return Subgroup(*this, std::move(data));
}

Subgroup PermGroup::subgroup_generated_by_indices(const std::vector<std::size_t>& gens) const {
  return subgroup_from_indices(closure_of(*this, gens));
}

Subgroup PermGroup::subgroup_from_indices(std::vector<std::size_t> indices) const {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  {
    std::lock_guard<std::mutex> lock(data_->subgroup_mutex);
    auto it = data_->subgroup_cache.find(indices);
    if (it != data_->subgroup_cache.end()) return Subgroup(*this, it->second);
  }
  if (indices.empty() || indices.front() != identity_index() || indices.back() >= order()) {
    throw Error(ErrorKind::NotASubgroup, "index set does not contain the identity");
  }
  // Greedy generating set: add each element not yet generated.
  std::vector<std::size_t> gens;
  std::vector<std::size_t> generated{identity_index()};
  for (std::size_t idx : indices) {
    if (std::binary_search(generated.begin(), generated.end(), idx)) continue;
    gens.push_back(idx);
    generated = closure_of(*this, gens);
  }
  if (generated != indices) {
    throw Error(ErrorKind::NotASubgroup, "index set is not closed under multiplication");
  }
  auto data = std::make_shared<detail::SubgroupData>();
  for (std::size_t g : gens) data->generators.push_back(elements()[g]);
  data->indices = indices;
  data->degree = degree();
  std::lock_guard<std::mutex> lock(data_->subgroup_mutex);
  auto [it, inserted] = data_->subgroup_cache.emplace(std::move(indices), std::move(data));
  return Subgroup(*this, it->second);
}

Subgroup PermGroup::centralizer(const Perm& g) const {
  auto gi = index_of(g);
  if (!gi) throw Error(ErrorKind::ElementNotInGroup, g.to_string() + " is not in the group");
  std::vector<std::size_t> idx;
  for (std::size_t c = 0; c < order(); ++c) {
    if (multiply(c, *gi) == multiply(*gi, c)) idx.push_back(c);
  }
  return subgroup_from_indices(std::move(idx));
}

Subgroup PermGroup::normalizer(const Subgroup& h) const {
  if (!h.parent().same_group(*this)) {
    throw Error(ErrorKind::NotASubgroup, "subgroup belongs to a different group");
  }
  std::vector<std::size_t> hgens;
  for (const Perm& p : h.generators()) hgens.push_back(*index_of(p));
  std::vector<std::size_t> idx;
  for (std::size_t g = 0; g < order(); ++g) {
    const std::size_t ginv = inverse(g);
    bool normalizes = true;
    for (std::size_t s : hgens) {
      if (!h.contains_index(multiply(multiply(g, s), ginv))) {
        normalizes = false;
        break;
      }
    }
    if (normalizes) idx.push_back(g);
  }
  return subgroup_from_indices(std::move(idx));
}

std::vector<SubgroupClassEntry> PermGroup::subgroup_classes(std::size_t cap) const {
  if (order() > cap) {
    throw Error(ErrorKind::CapExceeded,
                "subgroup enumeration limited to order " + std::to_string(cap));
  }
  const std::size_t n = order();
  using IndexSet = std::vector<std::size_t>;
  std::set<IndexSet> seen;

  auto conjugates = [&](const IndexSet& k) {
    std::set<IndexSet> out;
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t xinv = inverse(x);
      IndexSet c;
      c.reserve(k.size());
      for (std::size_t y : k) c.push_back(multiply(multiply(x, y), xinv));
      std::sort(c.begin(), c.end());
      out.insert(std::move(c));
    }
    return out;
  };

  struct Found {
    IndexSet least;
    std::size_t class_size;
  };
  std::vector<Found> found;
  std::vector<IndexSet> queue;

  auto add_class = [&](const IndexSet& k) {
    auto conj = conjugates(k);
    for (const auto& c : conj) seen.insert(c);
    found.push_back(Found{*conj.begin(), conj.size()});
    queue.push_back(*conj.begin());
  };

  add_class(IndexSet{identity_index()});
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const IndexSet h = queue[head];
    std::vector<std::size_t> hgens;
    // A subgroup generated by its own elements; recovering gens keeps joins cheap.
    {
      IndexSet generated{identity_index()};
      for (std::size_t idx : h) {
        if (std::binary_search(generated.begin(), generated.end(), idx)) continue;
        hgens.push_back(idx);
        generated = closure_of(*this, hgens);
      }
    }
    for (std::size_t g = 0; g < n; ++g) {
      if (std::binary_search(h.begin(), h.end(), g)) continue;
      auto gens = hgens;
      gens.push_back(g);
      IndexSet k = closure_of(*this, gens);
      if (!seen.contains(k)) add_class(k);
    }
  }

  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    if (a.least.size() != b.least.size()) return a.least.size() < b.least.size();
    return a.least < b.least;
  });
  std::vector<SubgroupClassEntry> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(SubgroupClassEntry{subgroup_from_indices(f.least), f.class_size});
  return out;
}

// ---------------------------------------------------------------------------
// Subgroup

const PermGroup& Subgroup::parent() const { return parent_; }
const std::vector<Perm>& Subgroup::generators() const { return data_->generators; }
const std::vector<std::size_t>& Subgroup::indices() const { return data_->indices; }
std::size_t Subgroup::order() const { return data_->indices.size(); }

bool Subgroup::contains_index(std::size_t parent_index) const {
  return std::binary_search(data_->indices.begin(), data_->indices.end(), parent_index);
}

bool Subgroup::contains(const Perm& p) const {
  auto idx = parent_.index_of(p);
  return idx && contains_index(*idx);
}

const PermGroup& Subgroup::group() const {
  std::call_once(data_->group_once, [this] {
    data_->group.emplace(data_->degree, data_->generators, parent_.cap());
  });
  return *data_->group;
}

std::size_t Subgroup::class_count() const { return group().class_count(); }

bool operator==(const Subgroup& a, const Subgroup& b) {
  return a.parent_.same_group(b.parent_) && a.indices() == b.indices();
}

}  // namespace bernoullik
