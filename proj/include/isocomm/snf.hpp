#pragma once

#include <cstddef>
#include <vector>

#include "isocomm/ints.hpp"
#include "isocomm/presentation.hpp"

namespace isocomm {

// Dense matrix over the exact integers.
class IntegerMatrix {
 public:
  IntegerMatrix(std::size_t rows, std::size_t cols);
  IntegerMatrix(std::size_t rows, std::size_t cols, std::vector<Int> row_major);

  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Int> data_;
};

// Exact determinant (fraction-free Gaussian elimination); square input only.
Int determinant(const IntegerMatrix& m);

// Smith normal form: d = u * m * v with u, v unimodular, d diagonal with
// nonnegative entries forming a divisibility chain d1 | d2 | ... .
// Pivots are chosen by minimal nonzero absolute value to limit entry growth.
struct SmithDecomposition {
  IntegerMatrix d;
  IntegerMatrix u;
  IntegerMatrix v;
};

SmithDecomposition smith_normal_form(const IntegerMatrix& m);

// Relator-by-generator exponent-sum matrix of a presentation.
IntegerMatrix abelianization_matrix(const FinitePresentation& p);

// Invariant factors of the abelianized group: free rank plus the torsion
// chain (diagonal entries >= 2 of the Smith form, in divisibility order).
struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

AbelianInvariants abelian_invariants(const FinitePresentation& p);

}  // namespace isocomm
