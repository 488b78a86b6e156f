#pragma once

// Exact integer and rational matrix arithmetic.
//
// Every routine here works over GMP integers or rationals; nothing rounds.
// Elimination is fraction-free (Bareiss) wherever only rank, determinant or
// an echelon form is needed; rational back-substitution is used only for the
// final reduced forms.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

namespace nhodge {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (long v : row) data_.emplace_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds a matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(std::size_t rows, std::span<const std::vector<T>> columns) {
    Matrix m(rows, columns.size(), T(0));
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  static Matrix from_rows(std::size_t cols, std::span<const std::vector<T>> rows) {
    Matrix m(rows.size(), cols, T(0));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (v != 0) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x) {
    if (a.cols_ != x.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
    std::vector<T> y(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (x[j] != 0) y[i] += a(i, j) * x[j];
    return y;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? " [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

/// num/den in canonical form (den > 0, lowest terms).
inline Rational ratio(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);

/// Scales every row by the lcm of its denominators; row space is unchanged.
IntMatrix clear_row_denominators(const RatMatrix& m);

/// A = U·S·V with U, V unimodular and S diagonal with d_1 | d_2 | ... (d_i >= 0).
/// `left` and `right` are the inverses of U and V: left·A·right = S.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  IntMatrix left;
  IntMatrix right;

  std::vector<Integer> diagonal() const;
  /// Number of nonzero invariant factors.
  std::size_t rank() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Fraction-free (Bareiss) row echelon form. Rows below `rank` are zero.
struct EchelonForm {
  IntMatrix matrix;
  std::vector<std::size_t> pivot_cols;
  int sign = 1;  // parity of the row swaps performed
  std::size_t rank() const { return pivot_cols.size(); }
};

EchelonForm bareiss_echelon(IntMatrix a);

std::size_t rank(const IntMatrix& a);
std::size_t rank(const RatMatrix& a);

/// Rank modulo a word-size prime; a lower bound for the rational rank.
std::size_t rank_mod_p(const IntMatrix& a, std::uint64_t prime);
std::size_t rank_mod_p(const RatMatrix& a, std::uint64_t prime);

struct RankNullspace {
  std::size_t rank = 0;
  RatMatrix nullspace;  // columns form a basis of ker(A)
};

RankNullspace rank_and_nullspace(const RatMatrix& a);

/// Returns x with A·x = b exactly, or nullopt when the system is inconsistent.
std::optional<RatVector> solve_exact(const RatMatrix& a, const RatVector& b);

/// Throws std::invalid_argument for non-square input.
Integer integer_determinant(const IntMatrix& a);
Rational determinant(const RatMatrix& a);

/// Inverse of a square nonsingular matrix; throws std::domain_error when singular.
RatMatrix inverse(const RatMatrix& a);

/// Reduced row echelon form over Q (first stage fraction-free).
struct ReducedEchelon {
  RatMatrix matrix;  // only the nonzero rows
  std::vector<std::size_t> pivot_cols;
};

ReducedEchelon reduced_row_echelon(const RatMatrix& a);

/// Incrementally maintained reduced row basis of a subspace of Q^n.
///
/// `reduce` returns the normal form of a vector modulo the span: the unique
/// representative whose pivot coordinates are zero.
class RowReducer {
 public:
  explicit RowReducer(std::size_t ambient) : ambient_(ambient) {}

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<RatVector>& rows() const { return rows_; }

  /// Adds v to the span; returns true when v was independent.
  bool insert(RatVector v);
  RatVector reduce(RatVector v) const;
  bool contains(const RatVector& v) const;

  /// Coordinates that are not pivots, in increasing order.
  std::vector<std::size_t> free_columns() const;

 private:
  std::size_t ambient_;
  std::vector<RatVector> rows_;        // fully reduced, pivot entry 1
  std::vector<std::size_t> pivots_;
};

Integer gcd_of_entries(const IntVector& v);
Rational dot(const RatVector& a, const RatVector& b);
Integer dot(const IntVector& a, const IntVector& b);

}  // namespace nhodge
