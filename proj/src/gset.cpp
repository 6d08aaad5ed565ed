#include "bernoullik/gset.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "bernoullik/error.hpp"

namespace bernoullik {

FiniteAction FiniteAction::natural(const PermGroup& g) {
  FiniteAction a{g, g.degree(), {}};
  a.images.reserve(g.order());
  for (const Perm& p : g.elements()) {
    auto img = p.images();
    a.images.emplace_back(img.begin(), img.end());
  }
  return a;
}

FiniteAction FiniteAction::regular(const PermGroup& g) {
  const std::size_t n = g.order();
  FiniteAction a{g, n, std::vector<std::vector<Point>>(n, std::vector<Point>(n))};
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) a.images[x][y] = static_cast<Point>(g.multiply(x, y));
  }
  return a;
}

GSetSpec GSetSpec::regular(const PermGroup& g) {
  return GSetSpec{g, {GSetPiece{g.trivial_subgroup(), 1}}};
}

bool GSetSpec::infinite() const {
  return std::any_of(pieces.begin(), pieces.end(), [](const GSetPiece& p) { return !p.multiplicity; });
}

namespace {

std::size_t parse_count(std::string_view s, const std::string& context) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorKind::InvalidInput, "bad number '" + std::string(s) + "' in " + context);
  }
  return v;
}

}  // namespace

Window Window::parse(const std::string& text) {
  Window w;
  if (text.find(':') == std::string::npos) {
    w.uniform = parse_count(text, "window");
    return w;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::InvalidInput, "window entry needs piece:count");
    w.pieces[parse_count(std::string_view(item).substr(0, colon), "window")] =
        parse_count(std::string_view(item).substr(colon + 1), "window");
  }
  return w;
}

std::string Window::to_string() const {
  if (empty()) return "none";
  std::ostringstream out;
  bool first = true;
  if (uniform) {
    out << *uniform;
    first = false;
  }
  for (const auto& [piece, count] : pieces) {
    if (!first) out << ',';
    out << piece << ':' << count;
    first = false;
  }
  return out.str();
}

RealizedGSet realize(const GSetSpec& spec, const Window& window) {
  const PermGroup& g = spec.group;
  const std::size_t order = g.order();
  RealizedGSet out{FiniteAction{g, 0, std::vector<std::vector<Point>>(order)}, {}, {}, true};

  for (std::size_t pi = 0; pi < spec.pieces.size(); ++pi) {
    const GSetPiece& piece = spec.pieces[pi];
    if (!piece.stabilizer.parent().same_group(g)) {
      throw Error(ErrorKind::NotASubgroup, "stabilizer of piece " + std::to_string(pi) +
                                               " is not a subgroup of the acting group");
    }
    std::size_t copies;
    auto it = window.pieces.find(pi);
    if (!piece.multiplicity) {
      if (it != window.pieces.end()) {
        copies = it->second;
      } else if (window.uniform) {
        copies = *window.uniform;
      } else {
        throw Error(ErrorKind::WindowRequired, "piece " + std::to_string(pi) + " has multiplicity omega");
      }
      out.fully_realized = false;
    } else {
      copies = *piece.multiplicity;
      if (it != window.pieces.end() && it->second < copies) {
        copies = it->second;
        out.fully_realized = false;
      }
    }
    out.realized_multiplicity.push_back(copies);

    // Coset labels: coset_of[x] is the index of xH in first-appearance order.
    const Subgroup& h = piece.stabilizer;
    std::vector<std::size_t> coset_of(order, order);
    std::size_t cosets = 0;
    for (std::size_t x = 0; x < order; ++x) {
      if (coset_of[x] != order) continue;
      for (std::size_t y : h.indices()) coset_of[g.multiply(x, y)] = cosets;
      ++cosets;
    }
    std::vector<std::size_t> coset_rep(cosets);
    for (std::size_t x = order; x-- > 0;) coset_rep[coset_of[x]] = x;

    for (std::size_t c = 0; c < copies; ++c) {
      const std::size_t base = out.action.size;
      for (std::size_t e = 0; e < order; ++e) {
        auto& img = out.action.images[e];
        for (std::size_t k = 0; k < cosets; ++k) {
          img.push_back(static_cast<Point>(base + coset_of[g.multiply(e, coset_rep[k])]));
        }
      }
      out.action.size += cosets;
      out.piece_of_point.insert(out.piece_of_point.end(), cosets, pi);
    }
  }
  return out;
}

namespace {

std::vector<std::size_t> acting_indices(const FiniteAction& action, const Subgroup& h) {
  if (!h.parent().same_group(action.group)) {
    throw Error(ErrorKind::NotASubgroup, "subgroup does not belong to the acting group");
  }
  return h.indices();
}

Subset image_of(const FiniteAction& action, std::size_t g, const Subset& s) {
  Subset out;
  out.reserve(s.size());
  for (Point x : s) out.push_back(action.apply(g, x));
  std::sort(out.begin(), out.end());
  return out;
}

// Advances s to the next k-subset of {0..n-1} in lex order.
bool next_combination(Subset& s, std::size_t n) {
  const std::size_t k = s.size();
  for (std::size_t i = k; i-- > 0;) {
    if (s[i] < n - k + i) {
      ++s[i];
      for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<OrbitEntry<Subset>> subset_orbits(const FiniteAction& action, std::size_t max_size) {
  const PermGroup& g = action.group;
  const std::size_t order = g.order();
  const std::size_t n = action.size;
  std::vector<OrbitEntry<Subset>> out;
  for (std::size_t k = 0; k <= std::min(max_size, n); ++k) {
    Subset s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = static_cast<Point>(i);
    do {
      bool canonical = true;
      std::vector<std::size_t> stab;
      for (std::size_t e = 0; e < order && canonical; ++e) {
        Subset t = image_of(action, e, s);
        if (t < s) canonical = false;
        else if (t == s) stab.push_back(e);
      }
      if (canonical) {
        std::size_t orbit = order / stab.size();
        out.push_back(OrbitEntry<Subset>{s, g.subgroup_from_indices(std::move(stab)), orbit});
      }
    } while (next_combination(s, n));
  }
  return out;
}

SubsetOrbits subset_orbits(const GSetSpec& spec, std::size_t max_size, const Window& window) {
  RealizedGSet z = realize(spec, window);
  SubsetOrbits out;
  out.orbits = subset_orbits(z.action, max_size);
  out.realized_size = z.action.size;
  out.complete = z.fully_realized && max_size >= z.action.size;
  return out;
}

Subgroup setwise_stabilizer(const FiniteAction& action, const Subset& points) {
  Subset s = points;
  std::sort(s.begin(), s.end());
  std::vector<std::size_t> stab;
  for (std::size_t e = 0; e < action.group.order(); ++e) {
    if (image_of(action, e, s) == s) stab.push_back(e);
  }
  return action.group.subgroup_from_indices(std::move(stab));
}

std::vector<OrbitEntry<Labelling>> labelling_orbits(const FiniteAction& action, const Subgroup& h,
                                                    const Subset& domain, std::size_t values) {
  if (values == 0) throw Error(ErrorKind::InvalidInput, "alphabet must be nonempty");
  const auto elems = acting_indices(action, h);
  Subset f = domain;
  std::sort(f.begin(), f.end());
  const std::size_t m = f.size();

  // position_map[j][i] = position of h_j applied to f[i].
  std::vector<std::vector<std::size_t>> position_map(elems.size(), std::vector<std::size_t>(m));
  for (std::size_t j = 0; j < elems.size(); ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      Point y = action.apply(elems[j], f[i]);
      auto it = std::lower_bound(f.begin(), f.end(), y);
      if (it == f.end() || *it != y) throw Error(ErrorKind::InvalidInput, "domain is not stable under the subgroup");
      position_map[j][i] = static_cast<std::size_t>(it - f.begin());
    }
  }

  std::vector<OrbitEntry<Labelling>> out;
  Labelling s(m, 0), t(m);
  while (true) {
    bool canonical = true;
    std::vector<std::size_t> stab;
    for (std::size_t j = 0; j < elems.size() && canonical; ++j) {
      for (std::size_t i = 0; i < m; ++i) t[position_map[j][i]] = s[i];
      if (t < s) canonical = false;
      else if (t == s) stab.push_back(elems[j]);
    }
    if (canonical) {
      std::size_t orbit = elems.size() / stab.size();
      out.push_back(OrbitEntry<Labelling>{s, action.group.subgroup_from_indices(std::move(stab)), orbit});
    }
    std::size_t i = m;
    while (i > 0 && s[i - 1] == values - 1) s[--i] = 0;
    if (i == 0) break;
    ++s[i - 1];
  }
  return out;
}

std::vector<OrbitEntry<Labelling>> function_orbits(const FiniteAction& action, const Subgroup& h,
                                                   const Subset& domain, std::size_t alphabet) {
  auto out = labelling_orbits(action, h, domain, alphabet);
  for (auto& e : out) {
    for (auto& v : e.representative) ++v;
  }
  return out;
}

std::vector<OrbitEntry<DisjointPair>> disjoint_pair_orbits(const FiniteAction& action,
                                                           const Subgroup& h,
                                                           const Subset& domain) {
  Subset f = domain;
  std::sort(f.begin(), f.end());
  std::vector<OrbitEntry<DisjointPair>> out;
  for (auto& e : labelling_orbits(action, h, f, 3)) {
    DisjointPair pair;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (e.representative[i] == 1) pair.first.push_back(f[i]);
      if (e.representative[i] == 2) pair.second.push_back(f[i]);
    }
    out.push_back(OrbitEntry<DisjointPair>{std::move(pair), std::move(e.stabilizer), e.orbit_size});
  }
  return out;
}

std::string subset_to_string(const Subset& s) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
  out << '}';
  return out.str();
}

}  // namespace bernoullik
