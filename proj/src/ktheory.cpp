#include "bernoullik/ktheory.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "bernoullik/chartab.hpp"
#include "bernoullik/error.hpp"

namespace bernoullik {

void KReport::add(std::string key, const GradedAb& value) {
  total += value;
  terms.push_back({std::move(key), value});
}

std::string KReport::banner() const {
  if (complete) return "";
  std::ostringstream out;
  out << "[truncated] partial sum over the enumerated orbits only (max_subset_size="
      << (max_subset_size ? std::to_string(*max_subset_size) : std::string("all")) << ", window=" << window << ")";
  return out.str();
}

std::string KReport::to_text() const {
  std::ostringstream out;
  if (!complete) out << banner() << '\n';
  out << "formula: " << formula;
  for (const auto& [k, v] : params) out << ' ' << k << '=' << v;
  out << '\n';
  for (const KTerm& t : terms) out << "term " << t.key << ": " << t.value.to_string() << '\n';
  for (const std::string& n : notes) out << "note: " << n << '\n';
  if (!determined) out << "total: undetermined\n";
  else out << "total: " << total.to_string() << '\n';
  return out.str();
}

GradedAb group_ktheory(const PermGroup& g) { return GradedAb::free(g.class_count(), 0); }
GradedAb group_ktheory(const Subgroup& h) { return GradedAb::free(h.class_count(), 0); }

namespace {

// A truncated G-set with printable point names that survive enlarging the window.
struct Enumeration {
  RealizedGSet z;
  SubsetOrbits orbits;
  std::vector<std::string> names;
};

Enumeration enumerate(const GSetSpec& spec, const Truncation& trunc) {
  Enumeration e{realize(spec, trunc.window), {}, {}};
  const std::size_t size = e.z.action.size;
  const std::size_t max = trunc.max_subset_size.value_or(size);
  e.orbits.orbits = subset_orbits(e.z.action, max);
  e.orbits.realized_size = size;
  e.orbits.complete = e.z.fully_realized && max >= size;

  const std::size_t order = spec.group.order();
  std::size_t point = 0;
  for (std::size_t pi = 0; pi < spec.pieces.size(); ++pi) {
    const std::size_t cosets = order / spec.pieces[pi].stabilizer.order();
    for (std::size_t c = 0; c < e.z.realized_multiplicity[pi]; ++c) {
      for (std::size_t k = 0; k < cosets; ++k, ++point) {
        if (spec.pieces.size() == 1) e.names.push_back(std::to_string(point));
        else e.names.push_back(std::to_string(pi) + "." + std::to_string(c) + "." + std::to_string(k));
      }
    }
  }
  return e;
}

std::string set_key(const Enumeration& e, const Subset& f) {
  std::string s = "F={";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + e.names[f[i]];
  return s + "}";
}

KReport start(const std::string& formula, const Enumeration& e, const Truncation& trunc) {
  KReport r;
  r.formula = formula;
  r.complete = e.orbits.complete;
  r.max_subset_size = trunc.max_subset_size;
  r.window = trunc.window.to_string();
  return r;
}

Subset points_with(const Subset& domain, const Labelling& s, std::size_t min_value) {
  Subset out;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (s[i] >= min_value) out.push_back(domain[i]);
  }
  return out;
}

// Karoubi ranks, cross-checked against the parity reduction when the action is free.
GradedAb euclidean_term(const FiniteAction& action, const Subgroup& h, const Subset& x) {
  GradedAb direct = euclidean_rank(action, h, x).graded();
  if (acts_freely(action, h, x) && free_action_reduction(action, h, x) != direct) {
    throw Error(ErrorKind::Internal, "parity reduction disagrees with the direct count on " + subset_to_string(x));
  }
  return direct;
}

// Labels per point with the first `trivial` values standing for C and the
// remaining ones for C_0(R).
GradedAb labelled_term(const FiniteAction& action, const Subgroup& h, const Subset& f, std::size_t trivial,
                       std::size_t lines) {
  GradedAb sum;
  if (trivial + lines == 0) return f.empty() ? group_ktheory(h) : sum;
  for (const auto& s : labelling_orbits(action, h, f, trivial + lines)) {
    sum += euclidean_term(action, s.stabilizer, points_with(f, s.representative, trivial));
  }
  return sum;
}

KReport cantor_impl(const std::string& name, const GSetSpec& z, std::size_t n, const Truncation& trunc) {
  Enumeration e = enumerate(z, trunc);
  KReport r = start(name, e, trunc);
  r.params["n"] = std::to_string(n);
  for (const auto& orbit : e.orbits.orbits) {
    const Subset& f = orbit.representative;
    if (!f.empty() && n == 0) continue;
    GradedAb term;
    if (f.empty()) {
      term = group_ktheory(orbit.stabilizer);
    } else {
      for (const auto& s : labelling_orbits(e.z.action, orbit.stabilizer, f, n)) term += group_ktheory(s.stabilizer);
    }
    r.add(set_key(e, f), term);
  }
  return r;
}

std::uint64_t to_u64(const Int& v, const char* what) {
  if (v < 1 || v > Int(std::numeric_limits<std::uint64_t>::max())) {
    throw Error(ErrorKind::InvalidInput, std::string(what) + " out of range");
  }
  return static_cast<std::uint64_t>(v);
}

void require_infinite(const GSetSpec& z) {
  if (!z.infinite()) throw Error(ErrorKind::ZNotInfinite, "the G-set needs a piece of multiplicity omega");
}

}  // namespace

KReport cantor_orbit_form(const GSetSpec& z, std::size_t n, const Truncation& trunc) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "need at least one nonzero label");
  return cantor_impl("cantor", z, n, trunc);
}

namespace {

struct CosetSpace {
  std::vector<std::size_t> coset_of;           // element -> right coset index
  std::vector<std::vector<std::size_t>> cosets;  // right coset -> elements, ascending
};

// Right cosets Cg, numbered by least element.
CosetSpace right_cosets(const PermGroup& g, const Subgroup& c) {
  const std::size_t order = g.order();
  CosetSpace cs{std::vector<std::size_t>(order, order), {}};
  for (std::size_t x = 0; x < order; ++x) {
    if (cs.coset_of[x] != order) continue;
    std::vector<std::size_t> members;
    for (std::size_t h : c.indices()) members.push_back(g.multiply(h, x));
    std::sort(members.begin(), members.end());
    for (std::size_t m : members) cs.coset_of[m] = cs.cosets.size();
    cs.cosets.push_back(std::move(members));
  }
  return cs;
}

// Calls visit(C index, C, union C.X as a subset of G) once per N_C-orbit of
// nonempty coset sets X with setwise stabilizer of C.X exactly C.
void for_each_exact_coset_set(const PermGroup& g,
                              const std::function<void(std::size_t, const Subgroup&, const Subset&)>& visit) {
  const FiniteAction regular = FiniteAction::regular(g);
  const auto classes = g.subgroup_classes();
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const Subgroup& c = classes[ci].representative;
    const Subgroup norm = g.normalizer(c);
    const CosetSpace cs = right_cosets(g, c);
    const std::size_t m = cs.cosets.size();
    if (m >= 63) throw Error(ErrorKind::CapExceeded, "too many cosets for coset-set enumeration");

    auto as_union = [&](std::uint64_t mask) {
      Subset u;
      for (std::size_t k = 0; k < m; ++k) {
        if (mask >> k & 1) u.insert(u.end(), cs.cosets[k].begin(), cs.cosets[k].end());
      }
      std::sort(u.begin(), u.end());
      return u;
    };
    auto translate = [&](std::size_t n, std::uint64_t mask) {
      std::uint64_t out = 0;
      for (std::size_t k = 0; k < m; ++k) {
        if (mask >> k & 1) out |= std::uint64_t{1} << cs.coset_of[g.multiply(n, cs.cosets[k].front())];
      }
      return out;
    };

    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      bool least = true;
      for (std::size_t n : norm.indices()) {
        if (translate(n, mask) < mask) {
          least = false;
          break;
        }
      }
      if (!least) continue;
      Subset u = as_union(mask);
      if (setwise_stabilizer(regular, u).order() != c.order()) continue;
      visit(ci, c, u);
    }
  }
}

}  // namespace

KReport cantor_conjugacy_form(const PermGroup& g, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "need at least one nonzero label");
  KReport r;
  r.formula = "cantor-conjugacy";
  r.params["n"] = std::to_string(n);
  r.add("K(C*_r(G))", group_ktheory(g));
  const FiniteAction regular = FiniteAction::regular(g);
  for_each_exact_coset_set(g, [&](std::size_t ci, const Subgroup& c, const Subset& u) {
    GradedAb term;
    for (const auto& s : labelling_orbits(regular, c, u, n)) term += group_ktheory(s.stabilizer);
    r.add("C" + std::to_string(ci) + " X=" + subset_to_string(u), term);
  });
  r.notes.push_back("coset sets X are restricted to those whose union C.X has stabilizer exactly C");
  return r;
}

std::vector<std::size_t> exact_stabilizer_counts(const PermGroup& g) {
  std::vector<std::size_t> counts(g.subgroup_classes().size(), 0);
  for_each_exact_coset_set(g, [&](std::size_t ci, const Subgroup&, const Subset&) { ++counts[ci]; });
  return counts;
}

KReport finite_dim(const GSetSpec& z, const std::vector<Int>& k, const Truncation& trunc) {
  require_infinite(z);
  if (k.empty()) throw Error(ErrorKind::InvalidInput, "need at least one block");
  Int n = 0;
  for (const Int& x : k) {
    if (x < 1) throw Error(ErrorKind::InvalidInput, "block sizes must be positive");
    n = boost::multiprecision::gcd(n, x);
  }
  const Supernatural loc = Supernatural::of(to_u64(n, "gcd of the block sizes"));
  std::string blocks;
  for (std::size_t i = 0; i < k.size(); ++i) blocks += (i ? "," : "") + k[i].str();

  KReport r;
  if (k.size() == 1) {
    r.formula = "findim";
    r.add("K(C*_r(G))", localize(group_ktheory(z.group), loc));
  } else {
    r = cantor_impl("findim", z, k.size() - 1, trunc);
    r.total = {};
    for (KTerm& t : r.terms) {
      t.value = localize(t.value, loc);
      r.total += t.value;
    }
  }
  r.params["k"] = blocks;
  r.params["gcd"] = n.str();
  return r;
}

KReport fibonacci_like(const GSetSpec& z, const Truncation& trunc) {
  Enumeration e = enumerate(z, trunc);
  KReport r = start("fibonacci", e, trunc);
  for (const auto& orbit : e.orbits.orbits) r.add(set_key(e, orbit.representative), group_ktheory(orbit.stabilizer));
  return r;
}

KReport circle(const GSetSpec& z, const Truncation& trunc) {
  Enumeration e = enumerate(z, trunc);
  KReport r = start("circle", e, trunc);
  for (const auto& orbit : e.orbits.orbits) {
    r.add(set_key(e, orbit.representative), euclidean_term(e.z.action, orbit.stabilizer, orbit.representative));
  }
  return r;
}

KReport rotation(const GSetSpec& z, const Truncation& trunc) {
  Enumeration e = enumerate(z, trunc);
  KReport r = start("rotation", e, trunc);
  for (const auto& orbit : e.orbits.orbits) {
    const Subset& f = orbit.representative;
    if (f.empty()) {
      r.add(set_key(e, f), group_ktheory(orbit.stabilizer));
      continue;
    }
    GradedAb term;
    for (const auto& pair : disjoint_pair_orbits(e.z.action, orbit.stabilizer, f)) {
      Subset x = pair.representative.first;
      x.insert(x.end(), pair.representative.second.begin(), pair.representative.second.end());
      std::sort(x.begin(), x.end());
      term += euclidean_term(e.z.action, pair.stabilizer, x);
    }
    r.add(set_key(e, f), term);
  }
  r.notes.push_back("pairs (X1, X2) range over disjoint subsets with X1 u X2 contained in or equal to F");
  return r;
}

KReport wreath(const PermGroup& h, const PermGroup& g) {
  KReport r = cantor_impl("wreath", GSetSpec::regular(g), h.class_count() - 1, {});
  r.params.erase("n");
  r.params["labels"] = std::to_string(h.class_count() - 1);
  return r;
}

KReport wreath_free(std::size_t generators, const PermGroup& g, const Truncation& trunc) {
  Enumeration e = enumerate(GSetSpec::regular(g), trunc);
  KReport r = start("wreath-free", e, trunc);
  r.params["generators"] = std::to_string(generators);
  for (const auto& orbit : e.orbits.orbits) {
    r.add(set_key(e, orbit.representative),
          labelled_term(e.z.action, orbit.stabilizer, orbit.representative, 0, generators));
  }
  return r;
}

KReport wreath_free_symbolic(std::size_t generators, const GradedAb& group_k,
                             const std::vector<std::size_t>& subset_sizes) {
  KReport r;
  r.formula = "wreath-free-symbolic";
  r.params["generators"] = std::to_string(generators);
  r.complete = false;
  r.add("K(C*_r(G))", group_k);
  for (std::size_t i = 0; i < subset_sizes.size(); ++i) {
    const std::size_t size = subset_sizes[i];
    if (size == 0) throw Error(ErrorKind::InvalidInput, "orbit representatives must be nonempty");
    Int copies = boost::multiprecision::pow(Int(generators), static_cast<unsigned>(size));
    std::size_t c = copies.convert_to<std::size_t>();
    GradedAb term = size % 2 == 0 ? GradedAb::free(c, 0) : GradedAb::free(0, c);
    r.add("orbit " + std::to_string(i) + " |F|=" + std::to_string(size), term);
  }
  return r;
}

KReport cuntz_o_infinity(const PermGroup& g) {
  KReport r;
  r.formula = "cuntz";
  r.params["variant"] = "o_infinity";
  r.add("K(C*_r(G))", group_ktheory(g));
  return r;
}

KReport cuntz_o2(const PermGroup&) {
  KReport r;
  r.formula = "cuntz";
  r.params["variant"] = "o2";
  r.notes.push_back("O_2 is KK-equivalent to zero");
  return r;
}

namespace {

GradedAb z2_values(std::size_t n, bool suspended) {
  Ab k;
  if (n % 2 == 1) k = Ab::cyclic(n) + Ab::cyclic(n);
  else k = Ab::cyclic(n / 2) + Ab::cyclic(2 * n);
  return suspended ? GradedAb{{}, k} : GradedAb{k, {}};
}

}  // namespace

KReport cuntz_z2_table(std::size_t n, bool suspended) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "the table covers O_{n+1} for n >= 2");
  KReport r;
  r.formula = "cuntz";
  r.params["variant"] = suspended ? "z2_table_suspended" : "z2_table";
  r.params["n"] = std::to_string(n);
  r.add(suspended ? "(C_0(R) (x) O_" + std::to_string(n + 1) + ")^{(x)Z/2} x Z/2"
                  : "O_" + std::to_string(n + 1) + "^{(x)Z/2} x Z/2",
        z2_values(n, suspended));
  return r;
}

KReport cuntz_one_plus_on(std::size_t n, const GSetSpec& z, const Truncation& trunc) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "O_n needs n >= 2");
  Enumeration e = enumerate(z, trunc);
  KReport r = start("cuntz", e, trunc);
  r.params["variant"] = "one_plus_on";
  r.params["n"] = std::to_string(n);
  const GradedAb on{Ab::cyclic(n - 1), {}};
  const GradedAb torus_factor = GradedAb::free(1, 1);
  for (const auto& orbit : e.orbits.orbits) {
    const Subset& f = orbit.representative;
    const std::string key = set_key(e, f);
    if (f.empty()) {
      r.add(key, group_ktheory(orbit.stabilizer));
    } else if (orbit.stabilizer.is_trivial()) {
      GradedAb term = on;
      for (std::size_t i = 1; i < f.size(); ++i) term = kunneth(term, torus_factor);
      r.add(key, term);
    } else if (orbit.stabilizer.order() == 2 && f.size() == 2) {
      r.add(key, n - 1 >= 2 ? z2_values(n - 1, false) : GradedAb{});
    } else {
      throw Error(ErrorKind::NotComputable,
                  "orbit " + key + " has a stabilizer of order " + std::to_string(orbit.stabilizer.order()));
    }
  }
  return r;
}

KReport zero_theorem(const Ab& k0, const std::vector<Int>& unit, std::size_t r_max, const GSetSpec& z) {
  require_infinite(z);
  KReport r;
  r.formula = "zero";
  r.params["K0"] = k0.to_string();
  r.params["r_max"] = std::to_string(r_max);
  auto power = unit_power_vanishes(k0, unit, r_max);
  if (power) {
    r.params["r"] = std::to_string(*power);
    r.notes.push_back("the unit vanishes in the " + std::to_string(*power) + "-fold tensor power");
  } else {
    r.determined = false;
    r.notes.push_back("no tensor power up to r_max kills the unit; no conclusion");
  }
  return r;
}

KReport localized_uct(const GSetSpec& z, const BSpec& b, const Supernatural& n, const Truncation& trunc) {
  std::optional<std::pair<std::size_t, std::size_t>> free = b.free;
  if (!free && b.custom.deg0.is_free() && b.custom.deg1.is_free()) {
    bool integral = true;
    for (const Ab* a : {&b.custom.deg0, &b.custom.deg1}) {
      for (const PrimeSet& s : a->free_summands()) integral = integral && s.empty();
    }
    if (integral) free = std::pair{b.custom.deg0.rank(), b.custom.deg1.rank()};
  }

  Enumeration e = enumerate(z, trunc);
  KReport r = start("localized-uct", e, trunc);
  r.params["localize"] = n.to_string();
  if (free) r.params["B"] = "C^" + std::to_string(free->first) + " + C_0(R)^" + std::to_string(free->second);
  else r.params["B"] = b.custom.to_string();

  for (const auto& orbit : e.orbits.orbits) {
    const Subset& f = orbit.representative;
    const std::string key = set_key(e, f);
    GradedAb term;
    if (f.empty()) {
      term = group_ktheory(orbit.stabilizer);
    } else if (free) {
      term = labelled_term(e.z.action, orbit.stabilizer, f, free->first, free->second);
    } else if (orbit.stabilizer.is_trivial()) {
      term = b.custom;
      for (std::size_t i = 1; i < f.size(); ++i) term = kunneth(term, b.custom);
    } else {
      throw Error(ErrorKind::NotComputable, "orbit " + key + " has nontrivial stabilizer and B has torsion");
    }
    r.add(key, localize(term, n));
  }
  return r;
}

Diagram orbit_diagram(const PermGroup& g) {
  const auto classes = g.subgroup_classes();
  Diagram d;
  for (const auto& c : classes) d.objects.push_back(group_ktheory(c.representative));

  std::vector<CharacterTable> tables;
  for (const auto& c : classes) tables.push_back(character_table(c.representative.group()));

  for (std::size_t j = 0; j < classes.size(); ++j) {
    const Subgroup& hj = classes[j].representative;
    const PermGroup& hj_group = hj.group();
    // One representative x per left coset x H_j.
    std::vector<bool> covered(g.order(), false);
    std::vector<std::size_t> reps;
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (covered[x]) continue;
      reps.push_back(x);
      for (std::size_t h : hj.indices()) covered[g.multiply(x, h)] = true;
    }
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const Subgroup& hi = classes[i].representative;
      if (hj.order() % hi.order() != 0) continue;
      const CharacterTable& ti = tables[i];
      for (std::size_t x : reps) {
        const Perm& xp = g.elements()[x];
        const Perm xinv = xp.inverse();
        std::vector<Perm> conj_gens;
        bool inside = true;
        for (std::size_t y : hi.indices()) {
          if (!hj.contains(xinv * g.elements()[y] * xp)) {
            inside = false;
            break;
          }
        }
        if (!inside) continue;
        for (const Perm& p : hi.generators()) conj_gens.push_back(xinv * p * xp);
        const Subgroup shifted = hj_group.subgroup(conj_gens);
        const SmallMatrix ind = induction_matrix(shifted, hj_group);
        const CharacterTable ts = character_table(shifted.group());

        // Irreducible a of H_i corresponds to b of x^-1 H_i x with psi_b(y) = psi_a(x y x^-1).
        IntMatrix m(hj.class_count(), hi.class_count());
        for (std::size_t a = 0; a < ti.size(); ++a) {
          std::optional<std::size_t> match;
          for (std::size_t b = 0; b < ts.size() && !match; ++b) {
            bool same = true;
            const auto& cls = shifted.group().conjugacy_classes();
            for (std::size_t k = 0; k < cls.size() && same; ++k) {
              const Perm y = xp * cls[k].representative * xinv;
              same = ti.at_element(a, *hi.group().index_of(y)) == ts.values[b][k];
            }
            if (same) match = b;
          }
          if (!match) throw Error(ErrorKind::Internal, "conjugated character not found");
          for (std::size_t row = 0; row < ind.size(); ++row) m(row, a) = ind[row][*match];
        }
        d.arrows.push_back({i, j, std::move(m), IntMatrix(0, 0)});
      }
    }
  }
  return d;
}

GradedAb orbit_colim(const PermGroup& g) { return colimit(orbit_diagram(g)); }

GradedAb af_pushout(const GradedAb& colim_group, const GradedAb& colim_shift, const GradedAb& k_group,
                    const Supernatural& s, const IntMatrix& f0, const IntMatrix& f1, const IntMatrix& g0,
                    const IntMatrix& g1) {
  return pushout(localize(colim_group, s), colim_shift, localize(k_group, s), f0, f1, g0, g1);
}

GradedAb af_pushout_torsion_free(const GradedAb& reduced_group_k, const GradedAb& coinvariants,
                                 const Supernatural& s) {
  return localize(reduced_group_k, s) + coinvariants;
}

}  // namespace bernoullik
