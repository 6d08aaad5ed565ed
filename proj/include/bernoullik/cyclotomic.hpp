#ifndef BERNOULLIK_CYCLOTOMIC_HPP
#define BERNOULLIK_CYCLOTOMIC_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bernoullik {

/// An element of Z[zeta_n], written in the power basis 1, zeta, ..., zeta^{phi(n)-1}.
class Cyclotomic {
public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(std::size_t n, std::int64_t value = 0);
  /// Reduces an arbitrary coefficient vector (index = power of zeta_n).
  Cyclotomic(std::size_t n, const std::vector<std::int64_t>& powers);

  static Cyclotomic root_power(std::size_t n, std::size_t k);

  std::size_t conductor() const { return n_; }
  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }

  std::optional<std::int64_t> as_integer() const;
  Cyclotomic conjugate() const;
  /// Re-expresses the value in Z[zeta_m]; n must divide m.
  Cyclotomic lift(std::size_t m) const;
  /// GAP-style rendering such as "1+2*E(5)^3"; integers print plainly.
  std::string to_string() const;

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(std::int64_t s, const Cyclotomic& a);
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) = default;

private:
  std::size_t n_;
  std::vector<std::int64_t> coeffs_;  // length phi(n)
};

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::size_t n);

}  // namespace bernoullik

#endif  // BERNOULLIK_CYCLOTOMIC_HPP
