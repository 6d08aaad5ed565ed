#include "bernoullik/karoubi.hpp"

#include <algorithm>

#include "bernoullik/error.hpp"

namespace bernoullik {

namespace {

struct Domain {
  Subset points;                      // ascending
  std::vector<std::size_t> position;  // point -> position in `points`, or npos
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

Domain make_domain(const FiniteAction& action, const Subset& x) {
  Domain d{x, std::vector<std::size_t>(action.size, npos)};
  std::sort(d.points.begin(), d.points.end());
  d.points.erase(std::unique(d.points.begin(), d.points.end()), d.points.end());
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    if (d.points[i] >= action.size) throw Error(ErrorKind::InvalidInput, "point outside the G-set");
    d.position[d.points[i]] = i;
  }
  return d;
}

std::size_t parent_index(const FiniteAction& action, const Perm& p) {
  auto i = action.group.index_of(p);
  if (!i) throw Error(ErrorKind::ElementNotInGroup, p.to_string());
  return *i;
}

// Labels each point of the domain with the <g>-orbit containing it.
std::vector<std::size_t> cycle_labels(const FiniteAction& action, const Domain& d, std::size_t g,
                                      std::size_t& count) {
  std::vector<std::size_t> label(d.points.size(), npos);
  count = 0;
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    if (label[i] != npos) continue;
    std::size_t j = i;
    while (label[j] == npos) {
      label[j] = count;
      j = d.position[action.apply(g, d.points[j])];
      if (j == npos) throw Error(ErrorKind::InvalidInput, "point set is not stable under the subgroup");
    }
    ++count;
  }
  return label;
}

// Sign of the permutation c induces on the <g>-orbits.
int orbit_sign(const FiniteAction& action, const Domain& d, const std::vector<std::size_t>& label,
               std::size_t count, std::size_t c) {
  std::vector<std::size_t> image(count, npos);
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    std::size_t j = d.position[action.apply(c, d.points[i])];
    if (j == npos) throw Error(ErrorKind::InvalidInput, "point set is not stable under the subgroup");
    image[label[i]] = label[j];
  }
  std::vector<bool> seen(count, false);
  std::size_t cycles = 0;
  for (std::size_t k = 0; k < count; ++k) {
    if (seen[k]) continue;
    ++cycles;
    for (std::size_t m = k; !seen[m]; m = image[m]) seen[m] = true;
  }
  return (count - cycles) % 2 == 0 ? 1 : -1;
}

}  // namespace

KaroubiRank euclidean_rank(const FiniteAction& action, const Subgroup& h, const Subset& x,
                           OrientationCheck check) {
  if (!h.parent().same_group(action.group)) {
    throw Error(ErrorKind::NotASubgroup, "subgroup does not belong to the acting group");
  }
  const Domain d = make_domain(action, x);
  const PermGroup& hg = h.group();
  KaroubiRank out;
  for (const ConjugacyClass& cls : hg.conjugacy_classes()) {
    const std::size_t g = parent_index(action, cls.representative);
    std::size_t count = 0;
    const auto label = cycle_labels(action, d, g, count);

    const Subgroup cent = hg.centralizer(cls.representative);
    std::vector<std::size_t> witnesses;
    if (check == OrientationCheck::AllElements) {
      for (std::size_t i : cent.indices()) witnesses.push_back(parent_index(action, hg.elements()[i]));
    } else {
      for (const Perm& p : cent.generators()) witnesses.push_back(parent_index(action, p));
    }
    const bool oriented = std::all_of(witnesses.begin(), witnesses.end(), [&](std::size_t c) {
      return orbit_sign(action, d, label, count, c) == 1;
    });

    out.per_class.push_back({cls.representative, cls.size(), count, oriented});
    if (oriented) ++(count % 2 == 0 ? out.rank0 : out.rank1);
  }
  return out;
}

KaroubiRank euclidean_rank_regular(const PermGroup& h, OrientationCheck check) {
  FiniteAction a = FiniteAction::regular(h);
  Subset all(a.size);
  for (std::size_t i = 0; i < a.size; ++i) all[i] = static_cast<Point>(i);
  return euclidean_rank(a, h.whole(), all, check);
}

KaroubiRank euclidean_rank_natural(const PermGroup& h, OrientationCheck check) {
  FiniteAction a = FiniteAction::natural(h);
  Subset all(a.size);
  for (std::size_t i = 0; i < a.size; ++i) all[i] = static_cast<Point>(i);
  return euclidean_rank(a, h.whole(), all, check);
}

bool acts_freely(const FiniteAction& action, const Subgroup& h, const Subset& x) {
  for (std::size_t e : h.indices()) {
    if (e == action.group.identity_index()) continue;
    for (Point p : x) {
      if (action.apply(e, p) == p) return false;
    }
  }
  return true;
}

GradedAb free_action_reduction(const FiniteAction& action, const Subgroup& h, const Subset& x) {
  if (!acts_freely(action, h, x)) throw Error(ErrorKind::ActionNotFree, "a nontrivial element fixes a point");
  Subset pts = x;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t quotient = pts.size() / h.order();
  if (quotient % 2 == 0) return GradedAb::free(h.class_count(), 0);
  return euclidean_rank_regular(h.group()).graded();
}

}  // namespace bernoullik
