#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "binomod/errors.hpp"
#include "binomod/exact.hpp"

namespace binomod {

/// Deterministic Miller-Rabin, valid for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

namespace detail {

/// Factorial and inverse-factorial tables mod p for the Lucas digit path.
struct LucasTables {
  std::uint64_t p = 0;
  std::vector<std::uint32_t> fact;
  std::vector<std::uint32_t> inv_fact;
};

/// Shared, lazily built cache. The table is only constructed once a second
/// digit query arrives, and construction is guarded so concurrent readers
/// either see the fully built table or fall back to the incremental path.
struct LucasCacheSlot {
  std::atomic<bool> queried{false};
  std::once_flag build_once;
  std::unique_ptr<LucasTables> storage;
  std::atomic<const LucasTables*> ready{nullptr};
};

}  // namespace detail

/// A validated prime p together with a power (1 or 2); the working modulus
/// is p^power and always fits a 64-bit word because p < 2^31 is enforced.
/// Immutable after construction and freely shareable across threads.
class PrimeModulus {
 public:
  /// Throws Errc::NotPrime or Errc::OutOfRange.
  PrimeModulus(std::int64_t p, int power);

  std::int64_t prime() const noexcept { return p_; }
  int power() const noexcept { return power_; }
  std::int64_t modulus() const noexcept { return modulus_; }

  friend bool operator==(const PrimeModulus& a, const PrimeModulus& b) {
    return a.p_ == b.p_ && a.power_ == b.power_;
  }

  /// Cache policy hook for the Lucas path: returns the factorial tables if
  /// they exist or should now be built, nullptr to use the incremental path.
  const detail::LucasTables* lucas_tables_for_query() const;

 private:
  std::int64_t p_;
  int power_;
  std::int64_t modulus_;
  std::shared_ptr<detail::LucasCacheSlot> cache_;
};

inline PrimeModulus make_prime_modulus(std::int64_t p, int power) {
  return PrimeModulus(p, power);
}

/// Canonical least-nonnegative representative attached to its modulus.
/// Residues combine and compare only when their moduli agree.
class Residue {
 public:
  Residue(std::int64_t value, PrimeModulus modulus);

  std::int64_t value() const noexcept { return value_; }
  const PrimeModulus& modulus() const noexcept { return modulus_; }

  friend bool operator==(const Residue& a, const Residue& b);
  Residue operator+(const Residue& other) const;
  Residue operator-(const Residue& other) const;
  Residue operator*(const Residue& other) const;

 private:
  std::int64_t value_;
  PrimeModulus modulus_;
};

/// Least nonnegative representative of x mod m.modulus().
Residue mod_reduce(const Int& x, const PrimeModulus& m);

/// a^k mod m.modulus() by repeated squaring; k must be nonnegative.
Residue pow_mod(const Int& a, const Int& k, const PrimeModulus& m);

/// C(n, k) mod p for nonnegative n, k via the base-p digit decomposition,
/// O(log_p n) digit steps. Requires power 1.
Residue binomial_mod_p(const Int& n, const Int& k, const PrimeModulus& m);

/// C(m, n) mod p for arbitrary integer arguments: zero for n < 0, the digit
/// path for m >= 0, and the upper-negation rewrite (-1)^n C(n-m-1, n) for
/// negative m. Requires power 1.
Residue binomial_mod_p_general(const Int& upper, const Int& lower,
                               const PrimeModulus& m);

/// The digit-product side C(a,b) C(c,d) mod p of the Lucas congruence for
/// the decomposition (ap+c, bp+d); c and d must lie in [0, p-1].
Residue lucas_rhs(const Int& upper_quotient, const Int& lower_quotient,
                  std::int64_t upper_digit, std::int64_t lower_digit,
                  const PrimeModulus& m);

/// C(ap, bp) mod p^2, collapsed to C(a, b) mod p^2. Requires power 2 and
/// desk-scale a, b (the exact binomial is evaluated).
Residue binomial_ap_bp_mod_p2(const Int& upper_multiple,
                              const Int& lower_multiple,
                              const PrimeModulus& m);

enum class BaileySign { Plus, Minus };

/// C(Np, Kp+i) mod p^2 (sign Plus) or C(Np, Kp-i) mod p^2 (sign Minus),
/// evaluated through N C(N-1, K) C(p,i) resp. N C(N-1, K-1) C(p,i).
/// Requires power 2 and i in [1, p-1].
Residue bailey_mod_p2(const Int& upper_multiple, const Int& lower_multiple,
                      std::int64_t offset, BaileySign sign,
                      const PrimeModulus& m);

/// Sum of l^k over l in [0, p-1], mod p, with the exponent reduced mod p-1
/// first whenever that reduction is valid. Requires power 1.
Residue power_sum_mod_p(const Int& k, const PrimeModulus& m);

struct FermatReduction {
  std::int64_t remainder;  // k mod (p-1)
  bool applicable;         // false when k is a multiple of p-1
};

/// Exponent reduction a^k == a^(k mod (p-1)) mod p, valid for every integer
/// a when k is not a multiple of p-1. Rejects p = 2 (Errc::ModulusTooSmall).
FermatReduction fermat_reduce(const Int& k, const PrimeModulus& m);

/// Outcome of checking the four Pascal-style congruence hypotheses and the
/// conclusion A(a,b) == scale * C(a,b) mod modulus on a finite window.
struct CongruenceWindowReport {
  /// Per-hypothesis verdicts, index i for hypothesis i+1:
  ///   1: A(a,b) == A(a-1,b) + A(a-1,b-1)   (where all three points fit)
  ///   2: A(0,0) == scale
  ///   3: A(a,b) == 0 for b < 0
  ///   4: A(0,b) == 0 for b > 0
  std::array<bool, 4> conditions_hold{};
  bool conclusion_holds = false;

  struct Failure {
    std::int64_t a;
    std::int64_t b;
    int condition;  // 1..4 for hypotheses, 5 for the conclusion
  };
  /// Smallest failing (a, b) in lexicographic order, hypotheses checked
  /// before the conclusion at each point.
  std::optional<Failure> first_failure;
};

/// Checks the congruence-table hypotheses for `table` on the window
/// a in [0, a_max], b in [b_lo, b_hi]. `modulus` must be positive.
/// Failures are data, not errors.
CongruenceWindowReport check_pascal_congruence_window(
    const std::function<Int(std::int64_t, std::int64_t)>& table,
    const Int& modulus, const Int& scale, std::int64_t a_max,
    std::int64_t b_lo, std::int64_t b_hi);

}  // namespace binomod
