#pragma once

// Brute-force reference implementations used only by tests. They share no
// code with the library beyond the Integer/Rational types.

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "conetri/exact_linalg.hpp"

namespace oracle {

using conetri::Integer;
using conetri::IntMatrix;
using conetri::IntVector;
using conetri::Rational;
using conetri::RationalVector;

using Rows = std::vector<std::vector<long>>;

inline IntMatrix to_matrix(const Rows& rows) {
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

// Laplace expansion along the first row.
inline Integer cofactor_determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    const Integer term = m(0, c) * cofactor_determinant(minor);
    total += (c % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

// Cramer's rule for q with sum_k q_k row_k(m) = b.
inline RationalVector cramer_solve(const IntMatrix& m, const IntVector& b) {
  const std::size_t n = m.rows();
  const Integer det = cofactor_determinant(m);
  RationalVector q(n);
  for (std::size_t k = 0; k < n; ++k) {
    IntMatrix replaced = m;
    replaced.set_row(k, b);
    q[k] = Rational(cofactor_determinant(replaced), det);
    q[k].canonicalize();
  }
  return q;
}

inline Rational floor_frac(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - fl;
}

// Every integer point of the half-open parallelepiped, found by scanning
// the bounding box of the parallelepiped's vertices.
inline std::vector<IntVector> par_points_by_scan(const IntMatrix& gens) {
  const std::size_t d = gens.rows();
  std::vector<Integer> lo(d, 0), hi(d, 0);
  for (std::size_t mask = 0; mask < (1u << d); ++mask) {
    for (std::size_t j = 0; j < d; ++j) {
      Integer s = 0;
      for (std::size_t i = 0; i < d; ++i)
        if (mask & (1u << i)) s += gens(i, j);
      lo[j] = std::min(lo[j], s);
      hi[j] = std::max(hi[j], s);
    }
  }
  std::vector<IntVector> out;
  IntVector x = lo;
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == d) {
      const RationalVector q = cramer_solve(gens, x);
      if (std::all_of(q.begin(), q.end(), [](const Rational& v) { return v >= 0 && v < 1; })) out.push_back(x);
      return;
    }
    for (Integer v = lo[j]; v <= hi[j]; ++v) {
      x[j] = v;
      rec(j + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::pair<long, unsigned>> trial_division(long n) {
  std::vector<std::pair<long, unsigned>> out;
  for (long p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_prime_naive(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

inline Rational coordinate_sum(const IntMatrix& gens, const IntVector& x) {
  const RationalVector q = cramer_solve(gens, x);
  return std::accumulate(q.begin(), q.end(), Rational(0));
}

}  // namespace oracle
