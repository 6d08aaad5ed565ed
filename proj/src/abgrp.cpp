#include "bernoullik/abgrp.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "bernoullik/error.hpp"

namespace bernoullik {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "ragged matrix literal");
    for (long long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::ShapeMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Int IntMatrix::determinant() const {
  if (rows_ != cols_) throw Error(ErrorKind::ShapeMismatch, "determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? "," : "") << '[';
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? "," : "") << (*this)(i, j);
    out << ']';
  }
  out << ']';
  return out.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::ShapeMismatch, "matrix product dimensions");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct Reducer {
  IntMatrix a, u, v;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
  }
  // row_i -= q * row_j
  void add_row(std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) -= q * a(j, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) -= q * u(j, c);
  }
  // col_i -= q * col_j
  void add_col(std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t r = 0; r < a.rows(); ++r) a(r, i) -= q * a(r, j);
    for (std::size_t r = 0; r < v.rows(); ++r) v(r, i) -= q * v(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  Reducer r{m, IntMatrix::identity(rows), IntMatrix::identity(cols)};
  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    // Pivot: least nonzero absolute value in the trailing block.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (r.a(i, j) != 0 && (!best || abs(r.a(i, j)) < abs(r.a(best->first, best->second)))) best = {i, j};
    if (!best) break;
    r.swap_rows(t, best->first);
    r.swap_cols(t, best->second);

    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (r.a(i, t) == 0) continue;
        r.add_row(i, t, r.a(i, t) / r.a(t, t));
        if (r.a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (r.a(t, j) == 0) continue;
        r.add_col(j, t, r.a(t, j) / r.a(t, t));
        if (r.a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived; make it the new pivot.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (r.a(i, t) != 0 && abs(r.a(i, t)) < abs(r.a(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < cols; ++j)
          if (r.a(t, j) != 0 && abs(r.a(t, j)) < abs(r.a(bi, bj))) bi = t, bj = j;
        r.swap_rows(t, bi);
        r.swap_cols(t, bj);
        continue;
      }
      // Divisibility: fold in any row whose entries the pivot does not divide.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (r.a(i, j) % r.a(t, t) != 0) {
            r.add_row(t, i, -1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (r.a(t, t) < 0) r.negate_row(t);
  }
  SmithForm out{{}, std::move(r.u), std::move(r.v)};
  for (std::size_t i = 0; i < n; ++i) out.diag.push_back(r.a(i, i));
  return out;
}

// ---------------------------------------------------------------------------
// Supernatural

std::vector<std::pair<std::uint64_t, std::uint64_t>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    std::uint64_t k = 0;
    while (n % d == 0) {
      n /= d;
      ++k;
    }
    out.emplace_back(d, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

namespace {

std::uint64_t parse_u64(std::string_view s, const char* what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::InvalidInput, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Supernatural Supernatural::of(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "supernatural number must be positive");
  Supernatural s;
  for (auto [p, k] : factorize(n)) s.exponents_[p] = k;
  return s;
}

Supernatural Supernatural::parse(const std::string& text) {
  Supernatural s;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto caret = item.find('^');
    std::uint64_t base = parse_u64(std::string_view(item).substr(0, caret), "supernatural base");
    if (base == 0) throw Error(ErrorKind::InvalidInput, "supernatural base must be positive");
    bool infinite = false;
    std::uint64_t e = 1;
    if (caret != std::string::npos) {
      std::string_view rest = std::string_view(item).substr(caret + 1);
      if (rest == "inf" || rest == "∞") infinite = true;
      else e = parse_u64(rest, "supernatural exponent");
    }
    for (auto [p, k] : factorize(base)) {
      auto cur = s.exponent(p);
      if (!infinite && cur) s.set(p, *cur + e * k);
      else s.set(p, std::nullopt);
    }
  }
  return s;
}

std::optional<std::uint64_t> Supernatural::exponent(std::uint64_t p) const {
  auto it = exponents_.find(p);
  return it == exponents_.end() ? std::optional<std::uint64_t>(0) : it->second;
}

void Supernatural::set(std::uint64_t p, std::optional<std::uint64_t> e) {
  if (e && *e == 0) exponents_.erase(p);
  else exponents_[p] = e;
}

PrimeSet Supernatural::support() const {
  PrimeSet s;
  for (const auto& [p, e] : exponents_) s.insert(p);
  return s;
}

bool Supernatural::infinite_type() const {
  if (exponents_.empty()) return false;
  return std::all_of(exponents_.begin(), exponents_.end(), [](const auto& kv) { return !kv.second; });
}

std::string Supernatural::to_string() const {
  if (exponents_.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, e] : exponents_) {
    out << (first ? "" : ",") << p;
    if (!e) out << "^inf";
    else if (*e != 1) out << '^' << *e;
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Ab

Ab Ab::free(std::size_t rank, const PrimeSet& inverted) {
  Ab a;
  a.free_.assign(rank, inverted);
  return a;
}

Ab Ab::cyclic(const Int& n) {
  Ab a;
  Int m = abs(n);
  if (m == 0) {
    a.free_.push_back({});
    return a;
  }
  if (m > std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorKind::InvalidInput, "torsion order exceeds 64 bits");
  }
  for (auto [p, k] : factorize(static_cast<std::uint64_t>(m))) a.torsion_.push_back({p, k});
  a.canonicalize();
  return a;
}

Int Ab::generator_order(std::size_t i) const {
  if (i < free_.size()) return 0;
  const Primary& t = torsion_.at(i - free_.size());
  return boost::multiprecision::pow(Int(t.p), static_cast<unsigned>(t.k));
}

void Ab::canonicalize() {
  std::sort(free_.begin(), free_.end());
  std::sort(torsion_.begin(), torsion_.end());
}

Ab& Ab::operator+=(const Ab& other) {
  free_.insert(free_.end(), other.free_.begin(), other.free_.end());
  torsion_.insert(torsion_.end(), other.torsion_.begin(), other.torsion_.end());
  canonicalize();
  return *this;
}

namespace {

std::uint64_t prime_product(const PrimeSet& s) {
  std::uint64_t v = 1;
  for (auto p : s) v *= p;
  return v;
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

std::string Ab::to_string() const {
  if (is_zero()) return "0";
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < free_.size();) {
    std::size_t j = i;
    while (j < free_.size() && free_[j] == free_[i]) ++j;
    std::string base = free_[i].empty() ? "Z" : "Z[1/" + std::to_string(prime_product(free_[i])) + "]";
    parts.push_back(j - i == 1 ? base : base + "^" + std::to_string(j - i));
    i = j;
  }
  for (std::size_t i = 0; i < torsion_.size();) {
    std::size_t j = i;
    while (j < torsion_.size() && torsion_[j] == torsion_[i]) ++j;
    std::string base = "Z/" + generator_order(free_.size() + i).str();
    parts.push_back(j - i == 1 ? base : "(" + base + ")^" + std::to_string(j - i));
    i = j;
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " ⊕ " : "") + parts[i];
  return out;
}

Ab Ab::parse(const std::string& text) {
  std::string normalized = text;
  for (std::size_t pos; (pos = normalized.find("⊕")) != std::string::npos;) {
    normalized.replace(pos, std::string("⊕").size(), "+");
  }
  Ab out;
  std::stringstream ss(normalized);
  std::string term;
  while (std::getline(ss, term, '+')) {
    term = trim(term);
    if (term.empty()) throw Error(ErrorKind::InvalidInput, "empty summand in '" + text + "'");
    if (term == "0") continue;
    if (term.rfind("Q", 0) == 0 || term.find("inf") != std::string::npos) {
      throw Error(ErrorKind::NotFinitelyGenerated, "'" + term + "' is not finitely generated");
    }
    std::size_t count = 1;
    std::string base = term;
    auto caret = term.rfind('^');
    if (caret != std::string::npos && term.back() != ')') {
      count = parse_u64(std::string_view(term).substr(caret + 1), "summand multiplicity");
      base = trim(term.substr(0, caret));
    }
    if (base.size() > 2 && base.front() == '(' && base.back() == ')') base = base.substr(1, base.size() - 2);
    if (base == "Z") {
      for (std::size_t i = 0; i < count; ++i) out.free_.push_back({});
    } else if (base.rfind("Z[1/", 0) == 0 && base.back() == ']') {
      std::uint64_t n = parse_u64(std::string_view(base).substr(4, base.size() - 5), "localization");
      PrimeSet s;
      for (auto [p, k] : factorize(n)) s.insert(p);
      for (std::size_t i = 0; i < count; ++i) out.free_.push_back(s);
    } else if (base.rfind("Z/", 0) == 0) {
      std::uint64_t n = parse_u64(std::string_view(base).substr(2), "torsion order");
      if (n == 0) throw Error(ErrorKind::InvalidInput, "Z/0 is written Z");
      for (std::size_t i = 0; i < count; ++i) out += cyclic(n);
    } else {
      throw Error(ErrorKind::InvalidInput, "cannot parse summand '" + term + "'");
    }
  }
  out.canonicalize();
  return out;
}

std::string GradedAb::to_string() const { return "K_0 = " + deg0.to_string() + "; K_1 = " + deg1.to_string(); }

// ---------------------------------------------------------------------------
// Localization and Künneth

Ab localize(const Ab& a, const PrimeSet& primes) {
  Ab out;
  for (PrimeSet s : a.free_summands()) {
    s.insert(primes.begin(), primes.end());
    out.add_free(s);
  }
  for (const auto& t : a.torsion()) {
    if (!primes.contains(t.p)) out.add_torsion(t.p, t.k);
  }
  return out;
}

Ab localize(const Ab& a, const Supernatural& n) { return localize(a, n.support()); }

GradedAb localize(const GradedAb& a, const Supernatural& n) { return {localize(a.deg0, n), localize(a.deg1, n)}; }

Ab tensor(const Ab& a, const Ab& b) {
  Ab out;
  for (const auto& s : a.free_summands()) {
    for (const auto& t : b.free_summands()) {
      PrimeSet u = s;
      u.insert(t.begin(), t.end());
      out.add_free(u);
    }
    for (const auto& q : b.torsion())
      if (!s.contains(q.p)) out.add_torsion(q.p, q.k);
  }
  for (const auto& q : a.torsion()) {
    for (const auto& t : b.free_summands())
      if (!t.contains(q.p)) out.add_torsion(q.p, q.k);
    for (const auto& r : b.torsion())
      if (q.p == r.p) out.add_torsion(q.p, std::min(q.k, r.k));
  }
  return out;
}

Ab tor(const Ab& a, const Ab& b) {
  Ab out;
  for (const auto& q : a.torsion())
    for (const auto& r : b.torsion())
      if (q.p == r.p) out.add_torsion(q.p, std::min(q.k, r.k));
  return out;
}

GradedAb kunneth(const GradedAb& a, const GradedAb& b) {
  GradedAb out;
  out.deg0 = tensor(a.deg0, b.deg0) + tensor(a.deg1, b.deg1) + tor(a.deg0, b.deg1) + tor(a.deg1, b.deg0);
  out.deg1 = tensor(a.deg0, b.deg1) + tensor(a.deg1, b.deg0) + tor(a.deg0, b.deg0) + tor(a.deg1, b.deg1);
  return out;
}

// ---------------------------------------------------------------------------
// Presentations

Ab cokernel(const IntMatrix& relations) {
  SmithForm s = smith_normal_form(relations);
  Ab out;
  for (std::size_t i = 0; i < relations.rows(); ++i) {
    Int d = i < s.diag.size() ? s.diag[i] : Int(0);
    if (d != 1) out += Ab::cyclic(d);
  }
  return out;
}

namespace {

// Common inversion set of every free summand; ShapeMismatch if they differ.
PrimeSet common_localization(const std::vector<const Ab*>& groups) {
  std::optional<PrimeSet> common;
  for (const Ab* a : groups) {
    for (const auto& s : a->free_summands()) {
      if (common && *common != s) {
        throw Error(ErrorKind::ShapeMismatch,
                    "free summands with different localizations cannot share one presentation");
      }
      common = s;
    }
  }
  return common.value_or(PrimeSet{});
}

void check_shape(const IntMatrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
  if (m.rows() == rows && m.cols() == cols) return;
  if (m.rows() == 0 && m.cols() == 0 && rows * cols == 0) return;
  throw Error(ErrorKind::ShapeMismatch, what + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                            ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
}

const Int& entry_or_zero(const IntMatrix& m, std::size_t i, std::size_t j) {
  static const Int zero = 0;
  return m.rows() == 0 ? zero : m(i, j);
}

// Column list accumulated into a relation matrix.
struct Relations {
  std::size_t generators;
  std::vector<std::vector<Int>> columns;

  void add_orders(const Ab& a, std::size_t offset) {
    for (std::size_t i = 0; i < a.generator_count(); ++i) {
      Int d = a.generator_order(i);
      if (d == 0) continue;
      std::vector<Int> col(generators);
      col[offset + i] = d;
      columns.push_back(std::move(col));
    }
  }
  IntMatrix matrix() const {
    IntMatrix m(generators, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (std::size_t i = 0; i < generators; ++i) m(i, j) = columns[j][i];
    return m;
  }
};

Ab colimit_degree(const std::vector<const Ab*>& values, const std::vector<Diagram::Arrow>& arrows, bool odd) {
  PrimeSet loc = common_localization(values);
  std::vector<std::size_t> offset(values.size() + 1, 0);
  for (std::size_t i = 0; i < values.size(); ++i) offset[i + 1] = offset[i] + values[i]->generator_count();
  Relations rel{offset.back(), {}};
  for (std::size_t i = 0; i < values.size(); ++i) rel.add_orders(*values[i], offset[i]);
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const auto& arrow = arrows[a];
    if (arrow.source >= values.size() || arrow.target >= values.size()) {
      throw Error(ErrorKind::ShapeMismatch, "arrow " + std::to_string(a) + " references a missing object");
    }
    const IntMatrix& m = odd ? arrow.deg1 : arrow.deg0;
    const std::size_t rows = values[arrow.target]->generator_count();
    const std::size_t cols = values[arrow.source]->generator_count();
    check_shape(m, rows, cols, "arrow " + std::to_string(a) + " degree " + (odd ? "1" : "0"));
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<Int> col(rel.generators);
      for (std::size_t i = 0; i < rows; ++i) col[offset[arrow.target] + i] += entry_or_zero(m, i, j);
      col[offset[arrow.source] + j] -= 1;
      rel.columns.push_back(std::move(col));
    }
  }
  return localize(cokernel(rel.matrix()), loc);
}

}  // namespace

GradedAb colimit(const Diagram& d) {
  std::vector<const Ab*> v0, v1;
  for (const auto& o : d.objects) {
    v0.push_back(&o.deg0);
    v1.push_back(&o.deg1);
  }
  return {colimit_degree(v0, d.arrows, false), colimit_degree(v1, d.arrows, true)};
}

Ab coinvariants(std::size_t rank, const std::vector<Int>& torsion, const std::vector<IntMatrix>& action) {
  const std::size_t n = rank + torsion.size();
  Relations rel{n, {}};
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    std::vector<Int> col(n);
    col[rank + i] = torsion[i];
    rel.columns.push_back(std::move(col));
  }
  for (std::size_t g = 0; g < action.size(); ++g) {
    check_shape(action[g], n, n, "action matrix " + std::to_string(g));
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Int> col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = entry_or_zero(action[g], i, j);
      col[j] -= 1;
      rel.columns.push_back(std::move(col));
    }
  }
  return cokernel(rel.matrix());
}

GradedAb pushout(const GradedAb& a, const GradedAb& b, const GradedAb& c, const IntMatrix& f0,
                 const IntMatrix& f1, const IntMatrix& g0, const IntMatrix& g1) {
  auto degree = [](const Ab& a, const Ab& b, const Ab& c, const IntMatrix& f, const IntMatrix& g, const char* deg) {
    PrimeSet loc = common_localization({&a, &b, &c});
    const std::size_t na = a.generator_count(), nb = b.generator_count(), nc = c.generator_count();
    check_shape(f, nb, na, std::string("map f in degree ") + deg);
    check_shape(g, nc, na, std::string("map g in degree ") + deg);
    Relations rel{nb + nc, {}};
    rel.add_orders(b, 0);
    rel.add_orders(c, nb);
    for (std::size_t j = 0; j < na; ++j) {
      std::vector<Int> col(nb + nc);
      for (std::size_t i = 0; i < nb; ++i) col[i] = entry_or_zero(f, i, j);
      for (std::size_t i = 0; i < nc; ++i) col[nb + i] = -entry_or_zero(g, i, j);
      rel.columns.push_back(std::move(col));
    }
    return localize(cokernel(rel.matrix()), loc);
  };
  return {degree(a.deg0, b.deg0, c.deg0, f0, g0, "0"), degree(a.deg1, b.deg1, c.deg1, f1, g1, "1")};
}

// ---------------------------------------------------------------------------
// Unit powers

std::optional<std::size_t> unit_power_vanishes(const Ab& k0, const std::vector<Int>& unit, std::size_t r_max) {
  const std::size_t m = k0.generator_count();
  if (unit.size() != m) {
    throw Error(ErrorKind::ShapeMismatch, "unit has " + std::to_string(unit.size()) + " coordinates, group has " +
                                              std::to_string(m) + " generators");
  }
  const std::size_t nfree = k0.rank();
  for (std::size_t r = 1; r <= r_max; ++r) {
    // The tensor of cyclic summands C_{i1} (x) ... (x) C_{ir} is cyclic; the
    // elementary tensor's component there is the product of coordinates.
    std::vector<std::size_t> idx(r, 0);
    bool vanishes = true;
    while (vanishes) {
      Int coeff = 1;
      PrimeSet inverted;
      std::optional<std::uint64_t> prime;
      std::uint64_t min_k = 0;
      bool zero_group = false;
      for (std::size_t i : idx) {
        coeff *= unit[i];
        if (i < nfree) {
          const auto& s = k0.free_summands()[i];
          inverted.insert(s.begin(), s.end());
        } else {
          const auto& t = k0.torsion()[i - nfree];
          if (prime && *prime != t.p) zero_group = true;
          min_k = prime ? std::min(min_k, t.k) : t.k;
          prime = t.p;
        }
      }
      if (prime && inverted.contains(*prime)) zero_group = true;
      if (!zero_group && coeff != 0) {
        if (!prime) vanishes = false;
        else if (coeff % boost::multiprecision::pow(Int(*prime), static_cast<unsigned>(min_k)) != 0) vanishes = false;
      }
      std::size_t pos = r;
      while (pos > 0 && idx[pos - 1] == m - 1) idx[--pos] = 0;
      if (pos == 0) break;
      ++idx[pos - 1];
    }
    if (m == 0 || vanishes) return r;
  }
  return std::nullopt;
}

}  // namespace bernoullik
