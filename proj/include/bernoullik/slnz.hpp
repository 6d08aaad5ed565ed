#ifndef BERNOULLIK_SLNZ_HPP
#define BERNOULLIK_SLNZ_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bernoullik/abgrp.hpp"

namespace bernoullik {

/// A word in A = [[1,1],[0,1]] and B = [[1,0],[1,1]], stored run-length encoded.
struct ABWord {
  struct Run {
    char letter;  // 'A' or 'B'
    Int count;
    friend bool operator==(const Run&, const Run&) = default;
  };
  std::vector<Run> runs;

  void push(char letter, const Int& count = 1);
  Int length() const;
  bool empty() const { return runs.empty(); }
  IntMatrix evaluate() const;
  /// "ABA" for short runs; runs longer than one letter print as "A^12".
  std::string to_string() const;
  friend bool operator==(const ABWord&, const ABWord&) = default;
};

struct EuclidResult {
  IntMatrix matrix;  // in SL(2,Z), non-negative, maps (n,n) to (k1,k2)
  ABWord word;
};

/// Bulk exponents computed by division; emits the subtractive trace's word.
EuclidResult euclid_matrix(const Int& k1, const Int& k2);
/// One subtraction per letter. Only for checking the accelerated version.
EuclidResult euclid_matrix_subtractive(const Int& k1, const Int& k2);

/// The SL solution and its product with the swap [[0,1],[1,0]].
std::pair<IntMatrix, IntMatrix> gl2_solutions(const Int& k1, const Int& k2);

/// Non-negative X in SL(N+1,Z) with X (n,...,n)^T = k^T, n = gcd(k), built by
/// induction on N through prefix gcds and embedded 2x2 Euclid blocks.
IntMatrix slnz_matrix(const std::vector<Int>& k);

struct EmbeddingMultiplicities {
  IntMatrix sl;  // row sums equal k
  std::optional<std::pair<IntMatrix, IntMatrix>> gl2;  // both solutions when N = 1
};

/// Throws GcdNotOne unless gcd(k) = 1.
EmbeddingMultiplicities embedding_multiplicities(const std::vector<Int>& k);

/// det = expected_det, entries >= 0, and X (n,...,n)^T = k^T.
bool is_nonneg_solution(const IntMatrix& x, const std::vector<Int>& k, int expected_det = 1);

}  // namespace bernoullik

#endif  // BERNOULLIK_SLNZ_HPP
