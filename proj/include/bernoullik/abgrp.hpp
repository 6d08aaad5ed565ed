#ifndef BERNOULLIK_ABGRP_HPP
#define BERNOULLIK_ABGRP_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bernoullik {

using Int = boost::multiprecision::cpp_int;

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transpose() const;
  Int determinant() const;  // Bareiss elimination; square matrices only
  std::string to_string() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

struct SmithForm {
  std::vector<Int> diag;  // min(rows, cols) entries, each dividing the next, all >= 0
  IntMatrix u;            // rows x rows, unimodular
  IntMatrix v;            // cols x cols, unimodular
};

/// U * M * V is the diagonal matrix with entries diag.
SmithForm smith_normal_form(const IntMatrix& m);

using PrimeSet = std::set<std::uint64_t>;

std::vector<std::pair<std::uint64_t, std::uint64_t>> factorize(std::uint64_t n);

/// Formal product of prime powers with exponents in N or infinity.
class Supernatural {
public:
  Supernatural() = default;
  static Supernatural one() { return {}; }
  static Supernatural of(std::uint64_t n);
  /// Accepts "1", "6", "2^inf,3", "2^3,5^inf".
  static Supernatural parse(const std::string& text);

  /// Exponent of p; nullopt is infinity, 0 when p is absent.
  std::optional<std::uint64_t> exponent(std::uint64_t p) const;
  void set(std::uint64_t p, std::optional<std::uint64_t> e);
  PrimeSet support() const;
  bool is_one() const { return exponents_.empty(); }
  bool infinite_type() const;
  std::string to_string() const;
  friend bool operator==(const Supernatural&, const Supernatural&) = default;

private:
  std::map<std::uint64_t, std::optional<std::uint64_t>> exponents_;  // no zero exponents stored
};

/// Finitely generated module over a localization of Z, split into cyclic summands.
class Ab {
public:
  struct Primary {
    std::uint64_t p;
    std::uint64_t k;
    friend auto operator<=>(const Primary&, const Primary&) = default;
  };

  Ab() = default;
  static Ab zero() { return {}; }
  static Ab free(std::size_t rank, const PrimeSet& inverted = {});
  /// Z/n split into primary parts; n = 0 gives Z, n = 1 gives 0.
  static Ab cyclic(const Int& n);
  /// Parses the display grammar ("Z^2 ⊕ Z[1/6] ⊕ Z/4", "+" also accepted).
  static Ab parse(const std::string& text);

  const std::vector<PrimeSet>& free_summands() const { return free_; }
  const std::vector<Primary>& torsion() const { return torsion_; }
  std::size_t rank() const { return free_.size(); }
  bool is_zero() const { return free_.empty() && torsion_.empty(); }
  bool is_free() const { return torsion_.empty(); }
  /// Number of cyclic generators: free summands first, then torsion, in canonical order.
  std::size_t generator_count() const { return free_.size() + torsion_.size(); }
  /// Order of generator i (0 for free generators).
  Int generator_order(std::size_t i) const;
  std::string to_string() const;

  Ab& operator+=(const Ab& other);
  friend Ab operator+(Ab a, const Ab& b) { return a += b; }
  friend bool operator==(const Ab&, const Ab&) = default;

  void add_free(const PrimeSet& s) { free_.push_back(s); canonicalize(); }
  void add_torsion(std::uint64_t p, std::uint64_t k) { torsion_.push_back({p, k}); canonicalize(); }

private:
  void canonicalize();
  std::vector<PrimeSet> free_;
  std::vector<Primary> torsion_;
};

struct GradedAb {
  Ab deg0;
  Ab deg1;

  static GradedAb free(std::size_t rank0, std::size_t rank1 = 0) { return {Ab::free(rank0), Ab::free(rank1)}; }
  bool is_zero() const { return deg0.is_zero() && deg1.is_zero(); }
  GradedAb shifted() const { return {deg1, deg0}; }
  /// "K_0 = Z^5; K_1 = 0"
  std::string to_string() const;

  GradedAb& operator+=(const GradedAb& o) {
    deg0 += o.deg0;
    deg1 += o.deg1;
    return *this;
  }
  friend GradedAb operator+(GradedAb a, const GradedAb& b) { return a += b; }
  friend bool operator==(const GradedAb&, const GradedAb&) = default;
};

Ab localize(const Ab& a, const PrimeSet& primes);
Ab localize(const Ab& a, const Supernatural& n);
GradedAb localize(const GradedAb& a, const Supernatural& n);

Ab tensor(const Ab& a, const Ab& b);
Ab tor(const Ab& a, const Ab& b);
/// Split Künneth: tensor in matching degrees plus Tor shifted by one.
GradedAb kunneth(const GradedAb& a, const GradedAb& b);

/// Abelian group presented by relation columns; rows index the generators.
Ab cokernel(const IntMatrix& relations);

/// A finite diagram of graded groups. Arrow matrices map source generator
/// coordinates to target generator coordinates (target rows, source columns).
struct Diagram {
  struct Arrow {
    std::size_t source;
    std::size_t target;
    IntMatrix deg0;
    IntMatrix deg1;
  };
  std::vector<GradedAb> objects;
  std::vector<Arrow> arrows;
};

/// Coequalizer of all arrows against the identity, per degree.
GradedAb colimit(const Diagram& d);

/// L / <x - g x> for L = Z^rank plus the given cyclic torsion summands.
Ab coinvariants(std::size_t rank, const std::vector<Int>& torsion, const std::vector<IntMatrix>& action);

/// Pushout of B <- A -> C, per degree.
GradedAb pushout(const GradedAb& a, const GradedAb& b, const GradedAb& c, const IntMatrix& f0,
                 const IntMatrix& f1, const IntMatrix& g0, const IntMatrix& g1);

/// Least r <= r_max with the r-th tensor power of `unit` zero in K0^{(x)r}.
std::optional<std::size_t> unit_power_vanishes(const Ab& k0, const std::vector<Int>& unit, std::size_t r_max);

}  // namespace bernoullik

#endif  // BERNOULLIK_ABGRP_HPP
