#pragma once

#include <compare>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "conetri/exact_linalg.hpp"

namespace conetri {

// 50 significant decimal digits; every transcendental comparison in the
// library runs at this precision.
using HighPrecision = boost::multiprecision::cpp_bin_float_50;

HighPrecision to_high_precision(const Integer& n);
HighPrecision to_high_precision(const Rational& q);
std::string to_decimal_string(const HighPrecision& x, int digits = 30);

struct PrimePower {
  Integer prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Prime powers in strictly increasing order of the prime.
using Factorization = std::vector<PrimePower>;

// Trial division below 10^6, then Miller-Rabin and Brent's variant of
// Pollard rho for the cofactor. Throws DomainError for n <= 0.
Factorization factorize(const Integer& n);

// Deterministic for n < 3.3 * 10^24 (first 13 prime bases); above that a
// strong-probable-prime test with 24 bases.
bool is_prime(const Integer& n);

// Largest prime divisor. Throws DomainError for n < 2.
Integer p_max(const Integer& n);

// Number of prime factors counted with multiplicity.
long prime_omega(const Integer& n);

// The potential ld(n) - eta(n) held exactly as (num, den, eta) with value
// ld(num / den) - eta. Sums, differences and integer offsets stay exact;
// ordering reduces to comparing num_a * den_b * 2^eta_b against
// num_b * den_a * 2^eta_a.
class Phi {
 public:
  Phi(Integer num, Integer den, long eta);

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }
  long eta() const { return eta_; }

  Phi operator+(const Phi& other) const;
  Phi operator-(const Phi& other) const;
  Phi operator+(long c) const;
  Phi operator-(long c) const;

  friend std::strong_ordering operator<=>(const Phi& a, const Phi& b);
  friend bool operator==(const Phi& a, const Phi& b);

  // Display only.
  HighPrecision approx() const;

 private:
  Integer num_;
  Integer den_;
  long eta_;
};

// phi(n) = ld(n) - eta(n). Throws DomainError for n <= 0.
Phi phi(const Integer& n);

struct ThresholdCheck {
  bool exceeded = false;
  // |ln(p) - f_log| < 1e-20: the decision rests on the last digits.
  bool near_tie = false;
};

// Compares ln(p) >= f_log at 50-digit precision.
ThresholdCheck compare_log_threshold(const Integer& p, const HighPrecision& f_log);

// ln(p) >= tau * d. A near tie is reported on std::clog.
bool threshold_exceeded(const Integer& p, unsigned d);

// tau * d at working precision.
HighPrecision threshold_log(unsigned d);

// h_k = 1 for k <= -1, h_k = h_{k-1} + ... + h_{k-d} for k >= 0.
Integer h_sequence(unsigned d, long k);

struct BoundConstants {
  static HighPrecision tau();      // 1.25506
  static HighPrecision epsilon();  // 5 + (3/2) ld(3/2)
  static HighPrecision rho();      // (1/2) ld(3/2)
  static HighPrecision gamma();    // rho * tau * ld(e)
  static HighPrecision kappa();    // epsilon - 5
};

}  // namespace conetri
