#include "isocomm/snf.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace isocomm {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols, std::vector<Int> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument("matrix data size does not match dimensions");
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
  IntegerMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return out;
}

Int determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;

  // Bareiss fraction-free elimination: every division below is exact.
  IntegerMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a.at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
      }
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

namespace {

// Row/column operations applied simultaneously to the work matrix and the
// accumulating unimodular factor, maintaining d = u * m * v throughout.
struct SnfWork {
  IntegerMatrix a;
  IntegerMatrix u;
  IntegerMatrix v;

  explicit SnfWork(const IntegerMatrix& m)
      : a(m), u(IntegerMatrix::identity(m.rows())), v(IntegerMatrix::identity(m.cols())) {}

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a.at(i, c), a.at(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a.at(r, i), a.at(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
  }

  // row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) += q * a.at(j, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u.at(i, c) += q * u.at(j, c);
  }

  // col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < a.rows(); ++r) a.at(r, i) += q * a.at(r, j);
    for (std::size_t r = 0; r < v.rows(); ++r) v.at(r, i) += q * v.at(r, j);
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) = -a.at(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
  }
};

// Quotient rounded to nearest (ties toward zero), so remainders satisfy
// |r| <= |b|/2; this is what keeps pivot magnitudes shrinking fast.
Int rounded_quotient(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (r != 0) {
    Int twice = 2 * abs_int(r);
    if (twice > abs_int(b)) q += ((a < 0) == (b < 0)) ? 1 : -1;
  }
  return q;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& m) {
  SnfWork w(m);
  const std::size_t n = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Minimal nonzero |entry| of the trailing submatrix becomes the pivot.
      bool found = false;
      std::size_t pi = t;
      std::size_t pj = t;
      for (std::size_t i = t; i < m.rows(); ++i) {
        for (std::size_t j = t; j < m.cols(); ++j) {
          const Int& e = w.a.at(i, j);
          if (e == 0) continue;
          if (!found || abs_int(e) < abs_int(w.a.at(pi, pj))) {
            found = true;
            pi = i;
            pj = j;
          }
        }
      }
      if (!found) {
        // Trailing submatrix is zero; diagonal ends here.
        t = n;
        break;
      }
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m.rows(); ++i) {
        if (w.a.at(i, t) != 0) {
          w.add_row(i, t, -rounded_quotient(w.a.at(i, t), w.a.at(t, t)));
          if (w.a.at(i, t) != 0) clean = false;  // remainder became the smaller pivot
        }
      }
      for (std::size_t j = t + 1; j < m.cols(); ++j) {
        if (w.a.at(t, j) != 0) {
          w.add_col(j, t, -rounded_quotient(w.a.at(t, j), w.a.at(t, t)));
          if (w.a.at(t, j) != 0) clean = false;
        }
      }
      if (!clean) continue;

      // Divisibility: the pivot must divide the entire trailing submatrix,
      // or folding the offending row into row t shrinks the pivot next turn.
      bool divides = true;
      for (std::size_t i = t + 1; i < m.rows() && divides; ++i) {
        for (std::size_t j = t + 1; j < m.cols() && divides; ++j) {
          if (w.a.at(i, j) % w.a.at(t, t) != 0) {
            w.add_row(t, i, Int(1));
            divides = false;
          }
        }
      }
      if (divides) break;
    }
    if (t == n) break;
  }

  for (std::size_t t = 0; t < n; ++t) {
    if (w.a.at(t, t) < 0) w.negate_row(t);
  }
  return SmithDecomposition{std::move(w.a), std::move(w.u), std::move(w.v)};
}

IntegerMatrix abelianization_matrix(const FinitePresentation& p) {
  IntegerMatrix m(p.relators().size(), p.generators().size());
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    for (std::size_t j = 0; j < p.generators().size(); ++j) {
      m.at(i, j) = exponent_sum(p.relators()[i], p.generators()[j]);
    }
  }
  return m;
}

AbelianInvariants abelian_invariants(const FinitePresentation& p) {
  SmithDecomposition snf = smith_normal_form(abelianization_matrix(p));
  AbelianInvariants out;
  const std::size_t n = std::min(snf.d.rows(), snf.d.cols());
  std::size_t rank = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const Int& d = snf.d.at(t, t);
    if (d == 0) break;
    ++rank;
    if (d >= 2) out.torsion.push_back(d);
  }
  out.free_rank = p.generators().size() - rank;
  return out;
}

}  // namespace isocomm
