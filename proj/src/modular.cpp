#include "binomod/modular.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace binomod {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::ModulusPowerMismatch: return "ModulusPowerMismatch";
    case Errc::ModulusMismatch: return "ModulusMismatch";
    case Errc::DigitOutOfRange: return "DigitOutOfRange";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ModulusTooSmall: return "ModulusTooSmall";
    case Errc::OddPrimeRequired: return "OddPrimeRequired";
    case Errc::BadParamsShape: return "BadParamsShape";
    case Errc::SizeLimit: return "SizeLimit";
    case Errc::NegativeExponent: return "NegativeExponent";
    case Errc::UnboundVariable: return "UnboundVariable";
    case Errc::DuplicateBinder: return "DuplicateBinder";
    case Errc::ModulusNotInteger: return "ModulusNotInteger";
    case Errc::SyntaxError: return "SyntaxError";
  }
  return "Unknown";
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod_u64(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Square-and-multiply with an arbitrary-precision exponent.
u64 pow_mod_bigexp(u64 base, const Int& exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  Int e = exp;
  while (e > 0) {
    if ((e & 1) != 0) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

// Inverse of a mod m for gcd(a, m) = 1, by the extended Euclid algorithm.
u64 inv_mod(u64 a, u64 m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m),
               new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<u64>(t);
}

constexpr std::int64_t kPrimeCap = std::int64_t(1) << 31;
constexpr std::int64_t kLucasCacheLimit = 1'000'000;

// C(c, d) mod p for digits 0 <= d <= c < p. With tables this is three
// lookups; without, an incremental product with a single inverse of the
// running factorial denominator.
u64 small_binomial_mod_p(u64 c, u64 d, u64 p, const detail::LucasTables* t) {
  if (d > c) return 0;
  if (d == 0 || d == c) return 1 % p;
  if (t != nullptr) {
    u64 r = mul_mod(t->fact[c], t->inv_fact[d], p);
    return mul_mod(r, t->inv_fact[c - d], p);
  }
  u64 r = std::min(d, c - d);
  u64 num = 1, den = 1;
  for (u64 i = 1; i <= r; ++i) {
    num = mul_mod(num, c - r + i, p);
    den = mul_mod(den, i, p);
  }
  return mul_mod(num, inv_mod(den, p), p);
}

std::unique_ptr<detail::LucasTables> build_lucas_tables(u64 p) {
  auto t = std::make_unique<detail::LucasTables>();
  t->p = p;
  t->fact.resize(p);
  t->inv_fact.resize(p);
  u64 f = 1 % p;
  t->fact[0] = static_cast<std::uint32_t>(f);
  for (u64 i = 1; i < p; ++i) {
    f = mul_mod(f, i, p);
    t->fact[i] = static_cast<std::uint32_t>(f);
  }
  u64 inv = inv_mod(f, p);
  t->inv_fact[p - 1] = static_cast<std::uint32_t>(inv);
  for (u64 i = p - 1; i >= 1; --i) {
    inv = mul_mod(inv, i, p);
    t->inv_fact[i - 1] = static_cast<std::uint32_t>(inv);
  }
  return t;
}

inline bool fits_u64(const Int& x) {
  return x >= 0 && x <= std::numeric_limits<u64>::max();
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set decides primality for every n < 2^64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = pow_mod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::int64_t p, int power) : p_(p), power_(power) {
  if (power != 1 && power != 2)
    throw Error(Errc::OutOfRange,
                "PrimeModulus: power must be 1 or 2, got " +
                    std::to_string(power));
  if (p < 2 || p >= kPrimeCap)
    throw Error(Errc::OutOfRange,
                "PrimeModulus: p must satisfy 2 <= p < 2^31, got " +
                    std::to_string(p));
  if (!is_prime_u64(static_cast<u64>(p)))
    throw Error(Errc::NotPrime,
                "PrimeModulus: " + std::to_string(p) + " is not prime");
  modulus_ = power == 1 ? p : p * p;
  if (p <= kLucasCacheLimit) cache_ = std::make_shared<detail::LucasCacheSlot>();
}

const detail::LucasTables* PrimeModulus::lucas_tables_for_query() const {
  if (!cache_) return nullptr;
  const detail::LucasTables* ready =
      cache_->ready.load(std::memory_order_acquire);
  if (ready != nullptr) return ready;
  // First query stays on the incremental path; the table is built once a
  // second query shows up.
  if (!cache_->queried.exchange(true, std::memory_order_acq_rel))
    return nullptr;
  std::call_once(cache_->build_once, [this] {
    cache_->storage = build_lucas_tables(static_cast<u64>(p_));
    cache_->ready.store(cache_->storage.get(), std::memory_order_release);
  });
  return cache_->ready.load(std::memory_order_acquire);
}

Residue::Residue(std::int64_t value, PrimeModulus modulus)
    : value_(value), modulus_(std::move(modulus)) {
  if (value_ < 0 || value_ >= modulus_.modulus())
    throw std::invalid_argument("Residue: value out of canonical range");
}

namespace {

void require_same_modulus(const Residue& a, const Residue& b) {
  if (!(a.modulus() == b.modulus()))
    throw Error(Errc::ModulusMismatch,
                "Residue: operands have different moduli");
}

}  // namespace

bool operator==(const Residue& a, const Residue& b) {
  require_same_modulus(a, b);
  return a.value() == b.value();
}

Residue Residue::operator+(const Residue& other) const {
  require_same_modulus(*this, other);
  const u64 m = static_cast<u64>(modulus_.modulus());
  return Residue(static_cast<std::int64_t>(
                     (static_cast<u64>(value_) + static_cast<u64>(other.value_)) % m),
                 modulus_);
}

Residue Residue::operator-(const Residue& other) const {
  require_same_modulus(*this, other);
  const std::int64_t m = modulus_.modulus();
  std::int64_t v = value_ - other.value_;
  if (v < 0) v += m;
  return Residue(v, modulus_);
}

Residue Residue::operator*(const Residue& other) const {
  require_same_modulus(*this, other);
  const u64 m = static_cast<u64>(modulus_.modulus());
  return Residue(static_cast<std::int64_t>(mul_mod(
                     static_cast<u64>(value_), static_cast<u64>(other.value_), m)),
                 modulus_);
}

Residue mod_reduce(const Int& x, const PrimeModulus& m) {
  Int r = x % m.modulus();
  if (r < 0) r += m.modulus();
  return Residue(r.convert_to<std::int64_t>(), m);
}

Residue pow_mod(const Int& a, const Int& k, const PrimeModulus& m) {
  if (k < 0) throw std::invalid_argument("pow_mod: exponent must be nonnegative");
  const u64 base = static_cast<u64>(mod_reduce(a, m).value());
  return Residue(static_cast<std::int64_t>(
                     pow_mod_bigexp(base, k, static_cast<u64>(m.modulus()))),
                 m);
}

namespace {

void require_power(const PrimeModulus& m, int power, const char* op) {
  if (m.power() != power)
    throw Error(Errc::ModulusPowerMismatch,
                std::string(op) + ": requires a modulus with power " +
                    std::to_string(power));
}

// Shared digit loop; n and k nonnegative.
u64 lucas_digits(const Int& n, const Int& k, u64 p,
                 const detail::LucasTables* tables) {
  u64 acc = 1 % p;
  if (fits_u64(n) && fits_u64(k)) {
    u64 a = n.convert_to<u64>(), b = k.convert_to<u64>();
    while (acc != 0 && (a != 0 || b != 0)) {
      u64 c = a % p, d = b % p;
      if (d > c) return 0;
      acc = mul_mod(acc, small_binomial_mod_p(c, d, p, tables), p);
      a /= p;
      b /= p;
    }
    return acc;
  }
  Int a = n, b = k, q, r;
  while (acc != 0 && (a != 0 || b != 0)) {
    divide_qr(a, Int(p), q, r);
    const u64 c = r.convert_to<u64>();
    a.swap(q);
    divide_qr(b, Int(p), q, r);
    const u64 d = r.convert_to<u64>();
    b.swap(q);
    if (d > c) return 0;
    acc = mul_mod(acc, small_binomial_mod_p(c, d, p, tables), p);
  }
  return acc;
}

}  // namespace

Residue binomial_mod_p(const Int& n, const Int& k, const PrimeModulus& m) {
  require_power(m, 1, "binomial_mod_p");
  if (n < 0 || k < 0)
    throw std::invalid_argument("binomial_mod_p: arguments must be nonnegative");
  const u64 p = static_cast<u64>(m.prime());
  if (k > n) return Residue(0, m);
  const detail::LucasTables* tables = m.lucas_tables_for_query();
  return Residue(static_cast<std::int64_t>(lucas_digits(n, k, p, tables)), m);
}

Residue binomial_mod_p_general(const Int& upper, const Int& lower,
                               const PrimeModulus& m) {
  require_power(m, 1, "binomial_mod_p_general");
  if (lower < 0) return Residue(0, m);
  if (upper >= 0) return binomial_mod_p(upper, lower, m);
  // C(m,n) = (-1)^n C(n-m-1, n) moves the digit decomposition onto a
  // nonnegative upper argument.
  const Residue flipped = binomial_mod_p(lower - upper - 1, lower, m);
  if ((lower & 1) == 0 || flipped.value() == 0) return flipped;
  return Residue(m.modulus() - flipped.value(), m);
}

Residue lucas_rhs(const Int& upper_quotient, const Int& lower_quotient,
                  std::int64_t upper_digit, std::int64_t lower_digit,
                  const PrimeModulus& m) {
  require_power(m, 1, "lucas_rhs");
  const std::int64_t p = m.prime();
  if (upper_digit < 0 || upper_digit >= p || lower_digit < 0 ||
      lower_digit >= p)
    throw Error(Errc::DigitOutOfRange,
                "lucas_rhs: digits must lie in [0, p-1]");
  const Residue quotient_part =
      binomial_mod_p_general(upper_quotient, lower_quotient, m);
  const u64 digit_part =
      small_binomial_mod_p(static_cast<u64>(upper_digit),
                           static_cast<u64>(lower_digit),
                           static_cast<u64>(p), m.lucas_tables_for_query());
  return Residue(static_cast<std::int64_t>(
                     mul_mod(static_cast<u64>(quotient_part.value()), digit_part,
                             static_cast<u64>(p))),
                 m);
}

Residue binomial_ap_bp_mod_p2(const Int& upper_multiple,
                              const Int& lower_multiple,
                              const PrimeModulus& m) {
  require_power(m, 2, "binomial_ap_bp_mod_p2");
  return mod_reduce(binomial(upper_multiple, lower_multiple), m);
}

Residue bailey_mod_p2(const Int& upper_multiple, const Int& lower_multiple,
                      std::int64_t offset, BaileySign sign,
                      const PrimeModulus& m) {
  require_power(m, 2, "bailey_mod_p2");
  const std::int64_t p = m.prime();
  if (offset < 1 || offset > p - 1)
    throw Error(Errc::IndexOutOfRange,
                "bailey_mod_p2: offset must lie in [1, p-1]");
  const Int reduced_lower =
      sign == BaileySign::Plus ? lower_multiple : lower_multiple - 1;
  const Int coefficient =
      upper_multiple * binomial(upper_multiple - 1, reduced_lower);
  // C(p,i) mod p^2 through the absorption identity i C(p,i) = p C(p-1,i-1):
  // C(p-1,i-1) enters only mod p, and i is invertible mod p^2.
  const u64 pu = static_cast<u64>(p);
  const u64 p2 = static_cast<u64>(m.modulus());
  const u64 digit = small_binomial_mod_p(pu - 1, static_cast<u64>(offset - 1),
                                         pu, m.lucas_tables_for_query());
  u64 central = mul_mod(pu, digit, p2);
  central = mul_mod(central, inv_mod(static_cast<u64>(offset), p2), p2);
  const u64 coeff = static_cast<u64>(mod_reduce(coefficient, m).value());
  return Residue(static_cast<std::int64_t>(mul_mod(coeff, central, p2)), m);
}

Residue power_sum_mod_p(const Int& k, const PrimeModulus& m) {
  require_power(m, 1, "power_sum_mod_p");
  if (k < 0)
    throw std::invalid_argument("power_sum_mod_p: k must be nonnegative");
  const u64 p = static_cast<u64>(m.prime());
  Int exponent = k;
  if (p >= 3 && k >= p - 1) {
    const FermatReduction r = fermat_reduce(k, m);
    if (r.applicable) exponent = r.remainder;
  }
  u64 acc = 0;
  for (u64 l = 0; l < p; ++l)
    acc = (acc + pow_mod_bigexp(l, exponent, p)) % p;
  return Residue(static_cast<std::int64_t>(acc), m);
}

FermatReduction fermat_reduce(const Int& k, const PrimeModulus& m) {
  if (m.prime() == 2)
    throw Error(Errc::ModulusTooSmall,
                "fermat_reduce: p = 2 makes every positive k a multiple of p-1");
  if (k < 1)
    throw std::invalid_argument("fermat_reduce: k must be positive");
  const std::int64_t r = (k % (m.prime() - 1)).convert_to<std::int64_t>();
  return {r, r != 0};
}

CongruenceWindowReport check_pascal_congruence_window(
    const std::function<Int(std::int64_t, std::int64_t)>& table,
    const Int& modulus, const Int& scale, std::int64_t a_max,
    std::int64_t b_lo, std::int64_t b_hi) {
  if (modulus < 1)
    throw std::invalid_argument(
        "check_pascal_congruence_window: modulus must be positive");
  if (a_max < 0 || b_lo > b_hi)
    throw std::invalid_argument(
        "check_pascal_congruence_window: window is empty");

  CongruenceWindowReport report;
  report.conditions_hold = {true, true, true, true};
  report.conclusion_holds = true;

  const auto congruent = [&](const Int& x, const Int& y) {
    return (x - y) % modulus == 0;
  };

  // Smallest failing (a, b) per check, indices 0..3 hypotheses, 4 conclusion.
  std::array<std::optional<CongruenceWindowReport::Failure>, 5> failures;
  const auto record_failure = [&](std::int64_t a, std::int64_t b, int cond) {
    if (!failures[cond - 1])
      failures[cond - 1] = CongruenceWindowReport::Failure{a, b, cond};
  };

  for (std::int64_t a = 0; a <= a_max; ++a) {
    for (std::int64_t b = b_lo; b <= b_hi; ++b) {
      const Int value = table(a, b);
      if (a >= 1 && b - 1 >= b_lo &&
          !congruent(value, table(a - 1, b) + table(a - 1, b - 1)))
        record_failure(a, b, 1);
      if (a == 0 && b == 0 && !congruent(value, scale)) record_failure(a, b, 2);
      if (b < 0 && !congruent(value, 0)) record_failure(a, b, 3);
      if (a == 0 && b > 0 && !congruent(value, 0)) record_failure(a, b, 4);
      if (!congruent(value, scale * binomial(a, b))) record_failure(a, b, 5);
    }
  }

  for (int cond = 1; cond <= 4; ++cond)
    report.conditions_hold[cond - 1] = !failures[cond - 1].has_value();
  report.conclusion_holds = !failures[4].has_value();
  // Hypothesis failures take precedence over conclusion failures, lowest
  // condition first; within a condition the scan order is already (a, b)
  // lexicographic.
  for (const auto& f : failures) {
    if (f) {
      report.first_failure = f;
      break;
    }
  }
  return report;
}

}  // namespace binomod
