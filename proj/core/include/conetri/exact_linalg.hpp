#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace conetri {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

// Dense integer matrix with arbitrary-precision entries, stored row-major.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::span<const IntVector> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  IntVector row(std::size_t r) const;
  void set_row(std::size_t r, const IntVector& values);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  IntMatrix transposed() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Integer> entries_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

// left * A * right == diag(diag), each diag entry divides the next.
struct SNFDecomposition {
  IntVector diag;
  IntMatrix left;
  IntMatrix right;
};

// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);

// Smith normal form with unimodular transforms. Throws SingularMatrixError
// when det(m) == 0.
SNFDecomposition smith_normal_form(const IntMatrix& m);

// Returns q with sum_k q[k] * row_k(m) == b, i.e. solves m^T q = b.
RationalVector solve_rational(const IntMatrix& m, const RationalVector& b);

// adj(m), so that m * adj(m) == det(m) * I.
IntMatrix adjugate(const IntMatrix& m);

// Inverse of a unimodular matrix (|det| == 1).
IntMatrix unimodular_inverse(const IntMatrix& m);

// gcd of the coordinates (0 for the zero vector).
Integer content(std::span<const Integer> v);
// v / content(v); the zero vector is returned unchanged.
IntVector primitive_part(std::span<const Integer> v);
bool is_primitive(std::span<const Integer> v);
bool is_zero(std::span<const Integer> v);

IntVector row_times(std::span<const Integer> v, const IntMatrix& m);
RationalVector to_rational(std::span<const Integer> v);

std::string to_string(std::span<const Integer> v);
std::string to_string(const Rational& q);  // always "num/den"

}  // namespace conetri
