#include "conetri/numtheory.hpp"

#include <algorithm>
#include <array>
#include <iostream>
#include <map>
#include <sstream>

#include "conetri/errors.hpp"

namespace conetri {

namespace {

constexpr unsigned kTrialLimit = 1000000;

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<bool> composite(kTrialLimit, false);
    std::vector<unsigned> out;
    for (unsigned i = 2; i < kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = static_cast<unsigned long>(i) * i; j < kTrialLimit; j += i)
        composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool strong_probable_prime(const Integer& n, const Integer& n_minus_1, const Integer& odd,
                           unsigned long twos, unsigned long base) {
  Integer a = base;
  a %= n;
  if (a == 0) return true;
  Integer x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), odd.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < twos; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Brent's cycle-finding variant of Pollard rho; n composite, odd, no small factors.
Integer pollard_brent(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    unsigned long r = 1;
    constexpr unsigned long m = 128;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = q * abs(Integer(x - y)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = abs(Integer(x - ys));
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(const Integer& n, std::map<Integer, unsigned>& acc) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++acc[n];
    return;
  }
  Integer d = pollard_brent(n);
  split_large(d, acc);
  split_large(Integer(n / d), acc);
}

}  // namespace

HighPrecision to_high_precision(const Integer& n) { return HighPrecision(n.get_str()); }

HighPrecision to_high_precision(const Rational& q) {
  return to_high_precision(q.get_num()) / to_high_precision(q.get_den());
}

std::string to_decimal_string(const HighPrecision& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  static constexpr std::array<unsigned long, 24> kBases = {
      2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
  for (unsigned long b : kBases) {
    if (n == b) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
  }
  static const Integer kDeterministicBound("3317044064679887385961981");
  const std::size_t base_count = n < kDeterministicBound ? 13 : kBases.size();

  const Integer n_minus_1 = n - 1;
  Integer odd = n_minus_1;
  unsigned long twos = mpz_scan1(odd.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), twos);
  for (std::size_t i = 0; i < base_count; ++i) {
    if (!strong_probable_prime(n, n_minus_1, odd, twos, kBases[i])) return false;
  }
  return true;
}

Factorization factorize(const Integer& n) {
  if (n <= 0) throw DomainError("factorize: n must be positive, got " + n.get_str());
  Factorization out;
  Integer rest = n;
  const auto& primes = small_primes();
  for (std::size_t k = 0; k < primes.size(); ++k) {
    const unsigned long p = primes[k];
    if (rest.fits_ulong_p() ? p * p > rest.get_ui() : false) break;
    // A prime cofactor would otherwise be trial-divided up to 10^6.
    if (k % 512 == 511 && is_prime(rest)) break;
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    out.push_back({Integer(p), e});
  }
  if (rest == 1) return out;

  std::map<Integer, unsigned> large;
  split_large(rest, large);
  for (auto& [p, e] : large) out.push_back({p, e});
  return out;
}

Integer p_max(const Integer& n) {
  if (n < 2) throw DomainError("p_max: n must be at least 2, got " + n.get_str());
  return factorize(n).back().prime;
}

long prime_omega(const Integer& n) {
  long total = 0;
  for (const auto& pp : factorize(n)) total += pp.exponent;
  return total;
}

Phi::Phi(Integer num, Integer den, long eta)
    : num_(std::move(num)), den_(std::move(den)), eta_(eta) {
  if (num_ <= 0 || den_ <= 0) throw DomainError("Phi: argument must be positive");
  Integer g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g > 1) {
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

Phi Phi::operator+(const Phi& o) const { return Phi(num_ * o.num_, den_ * o.den_, eta_ + o.eta_); }
Phi Phi::operator-(const Phi& o) const { return Phi(num_ * o.den_, den_ * o.num_, eta_ - o.eta_); }
Phi Phi::operator+(long c) const { return Phi(num_, den_, eta_ - c); }
Phi Phi::operator-(long c) const { return Phi(num_, den_, eta_ + c); }

std::strong_ordering operator<=>(const Phi& a, const Phi& b) {
  // ld(na/da) - ea  vs  ld(nb/db) - eb  <=>  na*db*2^eb  vs  nb*da*2^ea
  Integer lhs = a.num_ * b.den_;
  Integer rhs = b.num_ * a.den_;
  const long shift = b.eta_ - a.eta_;
  if (shift >= 0)
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<unsigned long>(shift));
  else
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<unsigned long>(-shift));
  const int c = cmp(lhs, rhs);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool operator==(const Phi& a, const Phi& b) { return (a <=> b) == 0; }

HighPrecision Phi::approx() const {
  using boost::multiprecision::log;
  return log(to_high_precision(num_) / to_high_precision(den_)) / log(HighPrecision(2)) -
         HighPrecision(eta_);
}

Phi phi(const Integer& n) {
  if (n <= 0) throw DomainError("phi: n must be positive");
  return Phi(n, Integer(1), n == 1 ? 0 : prime_omega(n));
}

ThresholdCheck compare_log_threshold(const Integer& p, const HighPrecision& f_log) {
  using boost::multiprecision::abs;
  using boost::multiprecision::log;
  const HighPrecision diff = log(to_high_precision(p)) - f_log;
  static const HighPrecision kTieBand("1e-20");
  return ThresholdCheck{diff >= 0, abs(diff) < kTieBand};
}

HighPrecision threshold_log(unsigned d) { return BoundConstants::tau() * d; }

bool threshold_exceeded(const Integer& p, unsigned d) {
  // Smallest integer with ln(N) >= tau*d, computed once per dimension.
  thread_local std::map<unsigned, Integer> cutoffs;
  auto it = cutoffs.find(d);
  if (it == cutoffs.end()) {
    using boost::multiprecision::ceil;
    using boost::multiprecision::exp;
    const HighPrecision f_log = threshold_log(d);
    std::string digits = ceil(exp(f_log)).str(0, std::ios_base::fixed);
    digits = digits.substr(0, digits.find('.'));
    Integer n(digits);
    while (n > 1 && compare_log_threshold(n - 1, f_log).exceeded) n -= 1;
    while (!compare_log_threshold(n, f_log).exceeded) n += 1;
    for (const Integer& probe : {Integer(n - 1), n}) {
      if (probe > 0 && compare_log_threshold(probe, f_log).near_tie) {
        std::clog << "conetri: near tie between ln(" << probe.get_str() << ") and tau*" << d
                  << '\n';
      }
    }
    it = cutoffs.emplace(d, n).first;
  }
  return p >= it->second;
}

Integer h_sequence(unsigned d, long k) {
  if (d == 0) throw DomainError("h_sequence: d must be positive");
  if (k < -static_cast<long>(d)) throw DomainError("h_sequence: k must be >= -d");
  if (k < 0) return 1;
  // Sliding window over the last d values, starting from h_{-d..-1} = 1.
  std::vector<Integer> window(d, Integer(1));
  Integer sum = d;
  Integer current;
  for (long i = 0; i <= k; ++i) {
    current = sum;
    const std::size_t slot = static_cast<std::size_t>(i) % d;
    sum += current - window[slot];
    window[slot] = current;
  }
  return current;
}

HighPrecision BoundConstants::tau() { return HighPrecision("1.25506"); }

HighPrecision BoundConstants::epsilon() {
  using boost::multiprecision::log;
  return HighPrecision(5) + HighPrecision(3) / 2 * (log(HighPrecision(3) / 2) / log(HighPrecision(2)));
}

HighPrecision BoundConstants::rho() {
  using boost::multiprecision::log;
  return (log(HighPrecision(3) / 2) / log(HighPrecision(2))) / 2;
}

HighPrecision BoundConstants::gamma() {
  using boost::multiprecision::log;
  return rho() * tau() / log(HighPrecision(2));
}

HighPrecision BoundConstants::kappa() { return epsilon() - 5; }

}  // namespace conetri
