#include "conetri/exact_linalg.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

#include "conetri/errors.hpp"

namespace conetri {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("IntMatrix: rows and cols must be positive");
  }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  if (rows_ == 0 || cols_ == 0) {
    throw DimensionError("IntMatrix: rows and cols must be positive");
  }
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw DimensionError("IntMatrix: ragged initializer");
    }
    for (long v : r) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::span<const IntVector> rows) {
  if (rows.empty()) throw DimensionError("IntMatrix: no rows");
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void IntMatrix::set_row(std::size_t r, const IntVector& values) {
  if (values.size() != cols_) {
    throw DimensionError("IntMatrix::set_row: length mismatch");
  }
  std::copy(values.begin(), values.end(),
            entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) swap((*this)(r, a), (*this)(r, b));
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("IntMatrix product: shape mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ", ";
    os << to_string(m.row(r));
  }
  return os << ']';
}

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant: matrix is not square");
  const std::size_t n = m.rows();
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && a(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return 0;
      a.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(t);
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  Integer det = a(n - 1, n - 1);
  return sign > 0 ? det : Integer(-det);
}

namespace {

// Locates the entry of minimal nonzero absolute value in the trailing
// submatrix starting at (t, t).
bool find_min_pivot(const IntMatrix& a, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Integer v = abs(a(i, j));
      if (!found || v < best) {
        found = true;
        best = std::move(v);
        pi = i;
        pj = j;
      }
    }
  return found;
}

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) += k * m(src, c);
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) += k * m(r, src);
}

}  // namespace

SNFDecomposition smith_normal_form(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionError("smith_normal_form: matrix is not square");
  if (determinant(m) == 0) throw SingularMatrixError("smith_normal_form: singular matrix");

  const std::size_t n = m.rows();
  IntMatrix a = m;
  IntMatrix left = IntMatrix::identity(n);
  IntMatrix right = IntMatrix::identity(n);

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::size_t pi = t, pj = t;
      find_min_pivot(a, t, pi, pj);
      a.swap_rows(t, pi);
      left.swap_rows(t, pi);
      a.swap_cols(t, pj);
      right.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        Integer neg_q = -q;
        add_row_multiple(a, i, t, neg_q);
        add_row_multiple(left, i, t, neg_q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        Integer neg_q = -q;
        add_col_multiple(a, j, t, neg_q);
        add_col_multiple(right, j, t, neg_q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility chain: the pivot must divide the whole trailing block.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < n && divides_all; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            add_row_multiple(a, t, i, Integer(1));
            add_row_multiple(left, t, i, Integer(1));
            divides_all = false;
            break;
          }
        }
      if (divides_all) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t c = 0; c < n; ++c) {
        a(t, c) = -a(t, c);
        left(t, c) = -left(t, c);
      }
    }
  }

  SNFDecomposition out{IntVector(n), std::move(left), std::move(right)};
  for (std::size_t i = 0; i < n; ++i) out.diag[i] = a(i, i);
  return out;
}

RationalVector solve_rational(const IntMatrix& m, const RationalVector& b) {
  if (!m.is_square()) throw DimensionError("solve_rational: matrix is not square");
  const std::size_t n = m.rows();
  if (b.size() != n) throw DimensionError("solve_rational: right-hand side length mismatch");

  // Augmented system [m^T | b].
  std::vector<RationalVector> aug(n, RationalVector(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m(j, i);
    aug[i][n] = b[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && aug[piv][col] == 0) ++piv;
    if (piv == n) throw SingularMatrixError("solve_rational: singular matrix");
    std::swap(aug[col], aug[piv]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || aug[i][col] == 0) continue;
      Rational f = aug[i][col] / aug[col][col];
      for (std::size_t j = col; j <= n; ++j) aug[i][j] -= f * aug[col][j];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n] / aug[i][i];
  return x;
}

IntMatrix adjugate(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionError("adjugate: matrix is not square");
  const std::size_t n = m.rows();
  const Integer det = determinant(m);
  if (det == 0) throw SingularMatrixError("adjugate: singular matrix");

  // Row i of m^{-1} solves m^T y = e_i transposed; collect columns instead.
  IntMatrix adj(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector e(n);
    e[i] = 1;
    // q with sum_k q_k row_k(m) = e_i  <=>  q = e_i * m^{-1}, i.e. row i of m^{-1}.
    RationalVector q = solve_rational(m, e);
    for (std::size_t k = 0; k < n; ++k) {
      Rational scaled = q[k] * det;
      if (scaled.get_den() != 1) throw InvariantViolation("adjugate: non-integral entry");
      adj(i, k) = scaled.get_num();
    }
  }
  return adj;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  const Integer det = determinant(m);
  if (abs(det) != 1) throw DomainError("unimodular_inverse: |det| != 1");
  IntMatrix adj = adjugate(m);
  if (det < 0) {
    for (std::size_t r = 0; r < adj.rows(); ++r)
      for (std::size_t c = 0; c < adj.cols(); ++c) adj(r, c) = -adj(r, c);
  }
  return adj;
}

Integer content(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntVector primitive_part(std::span<const Integer> v) {
  IntVector out(v.begin(), v.end());
  Integer g = content(v);
  if (g > 1)
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

bool is_primitive(std::span<const Integer> v) { return content(v) == 1; }

bool is_zero(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

IntVector row_times(std::span<const Integer> v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw DimensionError("row_times: length mismatch");
  IntVector out(m.cols());
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[k] * m(k, j);
  }
  return out;
}

RationalVector to_rational(std::span<const Integer> v) {
  return RationalVector(v.begin(), v.end());
}

std::string to_string(std::span<const Integer> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i].get_str();
  }
  os << ')';
  return os.str();
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace conetri
