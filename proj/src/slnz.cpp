#include "bernoullik/slnz.hpp"

#include "bernoullik/error.hpp"

namespace bernoullik {

namespace {

Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

Int gcd_all(const std::vector<Int>& k) {
  Int g = 0;
  for (const Int& x : k) g = gcd(g, x);
  return g;
}

void require_positive(const std::vector<Int>& k) {
  if (k.empty()) throw Error(ErrorKind::InvalidInput, "need at least one block size");
  for (const Int& x : k) {
    if (x < 1) throw Error(ErrorKind::InvalidInput, "block sizes must be positive");
  }
}

// Multiplies m on the right by A^a or B^b in place.
void right_multiply(IntMatrix& m, char letter, const Int& count) {
  for (std::size_t i = 0; i < 2; ++i) {
    if (letter == 'A') m(i, 1) += count * m(i, 0);
    else m(i, 0) += count * m(i, 1);
  }
}

}  // namespace

void ABWord::push(char letter, const Int& count) {
  if (count == 0) return;
  if (!runs.empty() && runs.back().letter == letter) runs.back().count += count;
  else runs.push_back({letter, count});
}

Int ABWord::length() const {
  Int n = 0;
  for (const Run& r : runs) n += r.count;
  return n;
}

IntMatrix ABWord::evaluate() const {
  IntMatrix m = IntMatrix::identity(2);
  for (const Run& r : runs) right_multiply(m, r.letter, r.count);
  return m;
}

std::string ABWord::to_string() const {
  std::string out;
  for (const Run& r : runs) {
    out += r.letter;
    if (r.count != 1) out += "^" + r.count.str();
  }
  return out;
}

EuclidResult euclid_matrix_subtractive(const Int& k1, const Int& k2) {
  require_positive({k1, k2});
  Int a = k1, b = k2;
  EuclidResult r{IntMatrix::identity(2), {}};
  while (a != b) {
    if (a > b) {
      a -= b;
      r.word.push('A');
    } else {
      b -= a;
      r.word.push('B');
    }
  }
  r.matrix = r.word.evaluate();
  return r;
}

EuclidResult euclid_matrix(const Int& k1, const Int& k2) {
  require_positive({k1, k2});
  Int a = k1, b = k2;
  EuclidResult r{IntMatrix::identity(2), {}};
  while (a != b) {
    if (a > b) {
      Int q = (a - 1) / b;  // subtractions while a > b
      a -= q * b;
      r.word.push('A', q);
      right_multiply(r.matrix, 'A', q);
    } else {
      Int q = (b - 1) / a;
      b -= q * a;
      r.word.push('B', q);
      right_multiply(r.matrix, 'B', q);
    }
  }
  return r;
}

std::pair<IntMatrix, IntMatrix> gl2_solutions(const Int& k1, const Int& k2) {
  IntMatrix x = euclid_matrix(k1, k2).matrix;
  return {x, x * IntMatrix{{0, 1}, {1, 0}}};
}

IntMatrix slnz_matrix(const std::vector<Int>& k) {
  require_positive(k);
  const std::size_t dim = k.size();
  if (dim == 1) return IntMatrix{{1}};
  const std::size_t big_n = dim - 1;
  const Int n = gcd_all(k);
  const std::vector<Int> prefix(k.begin(), k.end() - 1);
  const Int l = gcd_all(prefix);
  const IntMatrix x_tilde = slnz_matrix(prefix);
  const IntMatrix x0 = euclid_matrix(l, n).matrix;
  const IntMatrix xn = euclid_matrix(l, k.back()).matrix;

  auto block = [&](std::size_t at, const IntMatrix& b) {
    IntMatrix y = IntMatrix::identity(dim);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) y(at + i, at + j) = b(i, j);
    return y;
  };

  IntMatrix y = IntMatrix::identity(dim);
  for (std::size_t i = 0; i < big_n; ++i)
    for (std::size_t j = 0; j < big_n; ++j) y(i, j) = x_tilde(i, j);

  // X = Y * Y_N * ... * Y_1, where Y_i carries X_0 on rows (i-1, i) for i < N.
  IntMatrix x = y * block(big_n - 1, xn);
  for (std::size_t i = big_n - 1; i >= 1; --i) x = x * block(i - 1, x0);
  return x;
}

EmbeddingMultiplicities embedding_multiplicities(const std::vector<Int>& k) {
  require_positive(k);
  if (gcd_all(k) != 1) throw Error(ErrorKind::GcdNotOne, "block sizes share the factor " + gcd_all(k).str());
  EmbeddingMultiplicities out{slnz_matrix(k), std::nullopt};
  if (k.size() == 2) out.gl2 = gl2_solutions(k[0], k[1]);
  return out;
}

bool is_nonneg_solution(const IntMatrix& x, const std::vector<Int>& k, int expected_det) {
  if (x.rows() != k.size() || x.cols() != k.size()) return false;
  const Int n = gcd_all(k);
  for (std::size_t i = 0; i < k.size(); ++i) {
    Int row = 0;
    for (std::size_t j = 0; j < k.size(); ++j) {
      if (x(i, j) < 0) return false;
      row += x(i, j);
    }
    if (row * n != k[i]) return false;
  }
  return x.determinant() == expected_det;
}

}  // namespace bernoullik
