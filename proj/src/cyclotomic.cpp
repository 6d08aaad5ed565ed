#include "bernoullik/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "bernoullik/error.hpp"

namespace bernoullik {

namespace {

// Exact quotient of monic integer polynomials.
std::vector<std::int64_t> divide_exact(std::vector<std::int64_t> num, const std::vector<std::int64_t>& den) {
  const std::size_t dd = den.size() - 1;
  std::vector<std::int64_t> quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    std::int64_t c = num[i];
    quot[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  for (std::int64_t r : num) {
    if (r != 0) throw Error(ErrorKind::Internal, "inexact cyclotomic polynomial division");
  }
  return quot;
}

void reduce(std::vector<std::int64_t>& a, const std::vector<std::int64_t>& phi) {
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = a.size(); i-- > deg;) {
    std::int64_t c = a[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) a[i - deg + j] -= c * phi[j];
  }
  a.resize(deg, 0);
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<std::int64_t>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  if (n == 0) throw Error(ErrorKind::InvalidInput, "cyclotomic order must be positive");
  std::vector<std::int64_t> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_exact(std::move(poly), cyclotomic_polynomial(d));
  }
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(n, std::move(poly)).first->second;
}

Cyclotomic::Cyclotomic(std::size_t n, std::int64_t value) : n_(n) {
  coeffs_.assign(cyclotomic_polynomial(n).size() - 1, 0);
  coeffs_[0] = value;
}

Cyclotomic::Cyclotomic(std::size_t n, const std::vector<std::int64_t>& powers) : n_(n) {
  std::vector<std::int64_t> a(n, 0);
  for (std::size_t k = 0; k < powers.size(); ++k) a[k % n] += powers[k];
  reduce(a, cyclotomic_polynomial(n));
  coeffs_ = std::move(a);
}

Cyclotomic Cyclotomic::root_power(std::size_t n, std::size_t k) {
  std::vector<std::int64_t> a(n, 0);
  a[k % n] = 1;
  return Cyclotomic(n, a);
}

std::optional<std::int64_t> Cyclotomic::as_integer() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return std::nullopt;
  }
  return coeffs_[0];
}

Cyclotomic Cyclotomic::conjugate() const {
  std::vector<std::int64_t> a(n_, 0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) a[(n_ - k) % n_] += coeffs_[k];
  return Cyclotomic(n_, a);
}

Cyclotomic Cyclotomic::lift(std::size_t m) const {
  if (m % n_ != 0) throw Error(ErrorKind::Internal, "cyclotomic lift to a non-multiple conductor");
  std::vector<std::int64_t> a(m, 0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) a[k * (m / n_)] += coeffs_[k];
  return Cyclotomic(m, a);
}

std::string Cyclotomic::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    std::int64_t c = coeffs_[k];
    if (c == 0) continue;
    if (k == 0) {
      out << c;
    } else {
      if (c < 0) out << '-';
      else if (!first) out << '+';
      std::int64_t mag = c < 0 ? -c : c;
      if (mag != 1) out << mag << '*';
      out << "E(" << n_ << ')';
      if (k > 1) out << '^' << k;
    }
    first = false;
  }
  return first ? "0" : out.str();
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.n_ != b.n_) throw Error(ErrorKind::Internal, "cyclotomic conductor mismatch");
  Cyclotomic r = a;
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
  return r;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-1) * b; }

Cyclotomic operator*(std::int64_t s, const Cyclotomic& a) {
  Cyclotomic r = a;
  for (auto& c : r.coeffs_) c *= s;
  return r;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.n_ != b.n_) throw Error(ErrorKind::Internal, "cyclotomic conductor mismatch");
  std::vector<std::int64_t> prod(a.coeffs_.size() + b.coeffs_.size(), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Cyclotomic(a.n_, prod);
}

}  // namespace bernoullik
