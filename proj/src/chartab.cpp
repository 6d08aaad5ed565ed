#include "bernoullik/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "bernoullik/error.hpp"

namespace bernoullik {

namespace {

using u64 = std::uint64_t;

struct PrimeField {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return (a * b) % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
};

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

u64 choose_prime(std::size_t exponent, std::size_t order) {
  const double bound = 2.0 * std::sqrt(static_cast<double>(order));
  for (u64 p = exponent + 1;; p += exponent) {
    if (static_cast<double>(p) > bound && is_prime(p)) return p;
  }
}

u64 primitive_root(const PrimeField& f) {
  std::vector<u64> factors;
  u64 m = f.p - 1;
  for (u64 d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) factors.push_back(m);
  for (u64 w = 2;; ++w) {
    bool ok = std::all_of(factors.begin(), factors.end(),
                          [&](u64 q) { return f.pow(w, (f.p - 1) / q) != 1; });
    if (ok) return w;
  }
}

using Vec = std::vector<u64>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<Vec>& rows, std::size_t cols, const PrimeField& f) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    u64 iv = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, iv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      u64 factor = rows[i][c];
      for (std::size_t k = 0; k < cols; ++k) rows[i][k] = f.sub(rows[i][k], f.mul(factor, rows[r][k]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

// Null space of a square matrix a (d x d) acting on column vectors.
std::vector<Vec> kernel(std::vector<Vec> a, const PrimeField& f) {
  const std::size_t d = a.size();
  auto pivots = rref(a, d, f);
  std::vector<bool> is_pivot(d, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<Vec> out;
  for (std::size_t free = 0; free < d; ++free) {
    if (is_pivot[free]) continue;
    Vec v(d, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.sub(0, a[i][free]);
    out.push_back(std::move(v));
  }
  return out;
}

struct Space {
  std::vector<Vec> basis;  // rows in reduced echelon form
  std::vector<std::size_t> pivots;
};

// Splits v into eigenspaces of m (m acts on column vectors: (m x)_k = sum_l m[k][l] x_l).
std::vector<Space> split(const Space& v, const std::vector<Vec>& m, const PrimeField& f) {
  const std::size_t d = v.basis.size();
  const std::size_t r = m.size();
  // Restricted operator: coordinates of m b_i in the echelon basis are its pivot entries.
  std::vector<Vec> restricted(d, Vec(d, 0));  // restricted[row][col], column i is image of b_i
  for (std::size_t i = 0; i < d; ++i) {
    Vec img(r, 0);
    for (std::size_t k = 0; k < r; ++k) {
      u64 s = 0;
      for (std::size_t l = 0; l < r; ++l) s = f.add(s, f.mul(m[k][l], v.basis[i][l]));
      img[k] = s;
    }
    for (std::size_t j = 0; j < d; ++j) restricted[j][i] = img[v.pivots[j]];
  }
  std::vector<Space> out;
  std::size_t found = 0;
  for (u64 lambda = 0; lambda < f.p && found < d; ++lambda) {
    auto a = restricted;
    for (std::size_t i = 0; i < d; ++i) a[i][i] = f.sub(a[i][i], lambda);
    auto ker = kernel(std::move(a), f);
    if (ker.empty()) continue;
    Space s;
    for (const Vec& c : ker) {
      Vec w(r, 0);
      for (std::size_t i = 0; i < d; ++i) {
        if (c[i] == 0) continue;
        for (std::size_t l = 0; l < r; ++l) w[l] = f.add(w[l], f.mul(c[i], v.basis[i][l]));
      }
      s.basis.push_back(std::move(w));
    }
    s.pivots = rref(s.basis, r, f);
    found += s.basis.size();
    out.push_back(std::move(s));
  }
  if (found != d) throw Error(ErrorKind::Internal, "class algebra not diagonalizable modulo p");
  return out;
}

std::int64_t symmetric_residue(u64 x, u64 p) {
  return x > p / 2 ? static_cast<std::int64_t>(x) - static_cast<std::int64_t>(p) : static_cast<std::int64_t>(x);
}

}  // namespace

const Cyclotomic& CharacterTable::at_element(std::size_t i, std::size_t g) const {
  return values[i][group.class_of()[g]];
}

CharacterTable character_table(const PermGroup& g, std::size_t cap) {
  const std::size_t order = g.order();
  if (order > cap) {
    throw Error(ErrorKind::CapExceeded, "character tables limited to order " + std::to_string(cap));
  }
  const auto& classes = g.conjugacy_classes();
  const auto& class_of = g.class_of();
  const std::size_t r = classes.size();
  const std::size_t e = g.exponent();

  CharacterTable t{.group = g};
  t.conductor = e;
  for (const auto& c : classes) {
    t.class_sizes.push_back(c.size());
    t.inverse_class.push_back(class_of[g.inverse(c.members.front())]);
  }

  const PrimeField f{choose_prime(e, order)};
  t.prime = f.p;

  // m_j[k][l] = #{x in C_j : x^{-1} z_l in C_k}
  std::vector<std::vector<Vec>> mats(r, std::vector<Vec>(r, Vec(r, 0)));
  for (std::size_t l = 0; l < r; ++l) {
    const std::size_t z = classes[l].members.front();
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t x : classes[j].members) ++mats[j][class_of[g.multiply(g.inverse(x), z)]][l];
    }
  }
  for (auto& m : mats) {
    for (auto& row : m) {
      for (auto& v : row) v %= f.p;
    }
  }

  std::vector<Space> spaces(1);
  for (std::size_t i = 0; i < r; ++i) {
    Vec v(r, 0);
    v[i] = 1;
    spaces[0].basis.push_back(v);
  }
  spaces[0].pivots.resize(r);
  std::iota(spaces[0].pivots.begin(), spaces[0].pivots.end(), std::size_t{0});
  for (std::size_t j = 1; j < r; ++j) {
    std::vector<Space> next;
    for (const Space& s : spaces) {
      if (s.basis.size() == 1) {
        next.push_back(s);
        continue;
      }
      for (Space& piece : split(s, mats[j], f)) next.push_back(std::move(piece));
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r) throw Error(ErrorKind::Internal, "simultaneous eigenspaces did not separate");

  // Roots of unity: zeta_e maps to w^{(p-1)/e}.
  const u64 w = primitive_root(f);
  const u64 zeta_e = f.pow(w, (f.p - 1) / e);

  std::vector<std::size_t> class_order(r);
  std::vector<std::vector<std::size_t>> power_classes(r);  // class of g^t, t = 0..o-1
  for (std::size_t k = 0; k < r; ++k) {
    const std::size_t rep = classes[k].members.front();
    std::size_t x = g.identity_index();
    do {
      power_classes[k].push_back(class_of[x]);
      x = g.multiply(x, rep);
    } while (x != g.identity_index());
    class_order[k] = power_classes[k].size();
  }

  struct Row {
    std::size_t degree;
    std::vector<std::int64_t> key;
    std::vector<Cyclotomic> values;
  };
  std::vector<Row> rows;
  for (const Space& s : spaces) {
    const Vec& v = s.basis.front();
    if (v[0] == 0) throw Error(ErrorKind::Internal, "eigenvector vanishes on the identity class");
    const u64 scale = f.inv(v[0]);
    Vec omega(r);
    for (std::size_t k = 0; k < r; ++k) omega[k] = f.mul(v[k], scale);

    u64 norm = 0;
    for (std::size_t k = 0; k < r; ++k) {
      norm = f.add(norm, f.mul(f.mul(omega[k], omega[t.inverse_class[k]]), f.inv(t.class_sizes[k] % f.p)));
    }
    const u64 deg_sq = f.mul(order % f.p, f.inv(norm));
    std::size_t degree = 0;
    for (std::size_t d = 1; d * d <= order; ++d) {
      if (f.mul(d, d) == deg_sq) {
        degree = d;
        break;
      }
    }
    if (degree == 0) throw Error(ErrorKind::Internal, "no degree matches the Dixon norm");

    Vec chi(r);
    for (std::size_t k = 0; k < r; ++k) {
      chi[k] = f.mul(f.mul(omega[k], degree % f.p), f.inv(t.class_sizes[k] % f.p));
    }

    Row row{degree, {}, {}};
    for (std::size_t k = 0; k < r; ++k) {
      const std::size_t o = class_order[k];
      const u64 zeta_o = f.pow(zeta_e, e / o);
      const u64 inv_o = f.inv(o % f.p);
      std::vector<std::int64_t> powers(e, 0);
      for (std::size_t l = 0; l < o; ++l) {
        u64 sum = 0;
        for (std::size_t tpow = 0; tpow < o; ++tpow) {
          u64 root = f.pow(zeta_o, (o - (tpow * l) % o) % o);
          sum = f.add(sum, f.mul(chi[power_classes[k][tpow]], root));
        }
        std::int64_t mult = symmetric_residue(f.mul(sum, inv_o), f.p);
        if (mult < 0 || static_cast<std::size_t>(mult) > degree) {
          throw Error(ErrorKind::Internal, "eigenvalue multiplicity out of range");
        }
        row.key.push_back(mult);
        powers[l * (e / o)] += mult;
      }
      row.values.emplace_back(e, powers);
    }
    rows.push_back(std::move(row));
  }

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.key > b.key;
  });
  for (Row& row : rows) {
    t.degrees.push_back(row.degree);
    t.values.push_back(std::move(row.values));
  }
  return t;
}

std::int64_t inner_product(const CharacterTable& t, const std::vector<Cyclotomic>& a,
                           const std::vector<Cyclotomic>& b) {
  Cyclotomic sum(t.conductor);
  for (std::size_t k = 0; k < t.class_sizes.size(); ++k) {
    sum = sum + static_cast<std::int64_t>(t.class_sizes[k]) * (a[k] * b[k].conjugate());
  }
  auto v = sum.as_integer();
  const auto order = static_cast<std::int64_t>(t.group.order());
  if (!v || *v % order != 0) throw Error(ErrorKind::Internal, "character inner product is not an integer");
  return *v / order;
}

namespace {

struct Pair {
  CharacterTable small;
  CharacterTable big;
  std::vector<std::size_t> small_to_big;  // element index in H0's own group -> H1 element index
};

Pair tables_for(const Subgroup& h0, const PermGroup& h1) {
  if (!h0.parent().same_group(h1)) {
    throw Error(ErrorKind::NotASubgroup, "subgroup does not belong to the target group");
  }
  Pair p{character_table(h0.group()), character_table(h1), {}};
  for (const Perm& x : h0.group().elements()) {
    auto idx = h1.index_of(x);
    if (!idx) throw Error(ErrorKind::NotASubgroup, "subgroup element missing from target");
    p.small_to_big.push_back(*idx);
  }
  return p;
}

}  // namespace

SmallMatrix induction_matrix(const Subgroup& h0, const PermGroup& h1) {
  Pair p = tables_for(h0, h1);
  const std::size_t e = p.big.conductor;
  const std::size_t r1 = p.big.size();
  const std::size_t r0 = p.small.size();
  const auto index = static_cast<std::int64_t>(h1.order() / h0.order());
  const auto& big_class_of = h1.class_of();
  SmallMatrix m(r1, std::vector<std::int64_t>(r0, 0));
  for (std::size_t j = 0; j < r0; ++j) {
    // |C_k| * Ind(psi)(g_k) = [H1:H0] * sum of psi over C_k intersect H0.
    std::vector<Cyclotomic> weighted(r1, Cyclotomic(e));
    for (std::size_t x = 0; x < p.small_to_big.size(); ++x) {
      std::size_t k = big_class_of[p.small_to_big[x]];
      weighted[k] = weighted[k] + index * p.small.at_element(j, x).lift(e);
    }
    for (std::size_t i = 0; i < r1; ++i) {
      Cyclotomic sum(e);
      for (std::size_t k = 0; k < r1; ++k) sum = sum + weighted[k] * p.big.values[i][k].conjugate();
      auto v = sum.as_integer();
      const auto order = static_cast<std::int64_t>(h1.order());
      if (!v || *v % order != 0) throw Error(ErrorKind::Internal, "induced multiplicity is not an integer");
      m[i][j] = *v / order;
    }
  }
  return m;
}

SmallMatrix restriction_matrix(const Subgroup& h0, const PermGroup& h1) {
  Pair p = tables_for(h0, h1);
  const std::size_t e = p.big.conductor;
  const std::size_t r1 = p.big.size();
  const std::size_t r0 = p.small.size();
  const auto& big_class_of = h1.class_of();
  // Restriction to the classes of H0, expressed on a representative of each.
  std::vector<std::size_t> rep_in_big(r0);
  for (std::size_t k = 0; k < r0; ++k) {
    rep_in_big[k] = p.small_to_big[p.small.group.conjugacy_classes()[k].members.front()];
  }
  SmallMatrix m(r0, std::vector<std::int64_t>(r1, 0));
  for (std::size_t i = 0; i < r1; ++i) {
    std::vector<Cyclotomic> res(r0);
    for (std::size_t k = 0; k < r0; ++k) res[k] = p.big.values[i][big_class_of[rep_in_big[k]]];
    for (std::size_t j = 0; j < r0; ++j) {
      std::vector<Cyclotomic> psi(r0);
      for (std::size_t k = 0; k < r0; ++k) psi[k] = p.small.values[j][k].lift(e);
      // Inner product over H0 with values living in the larger conductor.
      Cyclotomic sum(e);
      for (std::size_t k = 0; k < r0; ++k) {
        sum = sum + static_cast<std::int64_t>(p.small.class_sizes[k]) * (res[k] * psi[k].conjugate());
      }
      auto v = sum.as_integer();
      const auto order = static_cast<std::int64_t>(h0.order());
      if (!v || *v % order != 0) throw Error(ErrorKind::Internal, "restricted multiplicity is not an integer");
      m[j][i] = *v / order;
    }
  }
  return m;
}

}  // namespace bernoullik
