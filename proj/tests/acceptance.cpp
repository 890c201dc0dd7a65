// Acceptance suite: one test case per criterion, each printing a single
// pass/fail line with the check count and wall time.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <exception>
#include <random>
#include <string>

#include "binomod/claims.hpp"
#include "binomod/modular.hpp"
#include "binomod/suite.hpp"
#include "binomod/supercong.hpp"

using namespace binomod;

namespace {

using clock_type = std::chrono::steady_clock;

struct Criterion {
  int number;
  const char* name;
  double budget_seconds;  // 0 = no stated budget
  clock_type::time_point start = clock_type::now();
  std::size_t checked = 0;
  std::size_t failed = 0;

  void expect(bool ok) {
    ++checked;
    if (!ok) ++failed;
  }

  ~Criterion() {
    const double seconds =
        std::chrono::duration<double>(clock_type::now() - start).count();
    const bool in_budget = budget_seconds <= 0.0 || seconds < budget_seconds;
    const bool aborted = std::uncaught_exceptions() > 0;
    const bool pass = failed == 0 && in_budget && !aborted;
    std::printf("criterion %2d (%s): %s — %zu checks, %zu failures, %.2fs%s%s\n",
                number, name, pass ? "PASS" : "FAIL", checked, failed, seconds,
                in_budget ? "" : " (over budget)",
                aborted ? " (aborted by exception)" : "");
    std::fflush(stdout);
    if (!aborted) {
      CHECK(failed == 0);
      CHECK(in_budget);
    }
  }
};

Int exact_mod(const Int& x, const Int& m) {
  Int r = x % m;
  if (r < 0) r += m;
  return r;
}

std::string claims_path(const char* file) {
  return std::string(BINOMOD_CLAIMS_DIR) + "/" + file;
}

}  // namespace

TEST_CASE("criterion 1: Z1 reproduction") {
  Criterion crit{1, "Z1 reproduction, odd primes up to 500", 60.0};
  for (const std::int64_t p : primes_in_range(3, 500, true)) {
    const PrimeModulus m(p, 2);
    crit.expect(central_sum_mod_p2(1, m, SumMode::Direct).value() ==
                mod_reduce(Int(eta(p)), m).value());
  }
}

TEST_CASE("criterion 2: Z2 reproduction") {
  Criterion crit{2, "Z2 reproduction, odd primes up to 31, r in [0,8]", 30.0};
  for (const std::int64_t p : primes_in_range(3, 31, true)) {
    const PrimeModulus m(p, 2);
    for (int r = 0; r <= 8; ++r)
      crit.expect(central_sum_mod_p2(r, m, SumMode::Direct) ==
                  central_sum_mod_p2(r, m, SumMode::Fast));
  }
}

TEST_CASE("criterion 3: Z3 reproduction") {
  Criterion crit{3, "Z3 reproduction, odd primes up to 11, r,s in [0,4]", 60.0};
  for (const std::int64_t p : primes_in_range(3, 11, true)) {
    const PrimeModulus m(p, 2);
    for (int r = 0; r <= 4; ++r)
      for (int s = 0; s <= 4; ++s)
        crit.expect(double_sum_mod_p2(r, s, m, SumMode::Direct) ==
                    double_sum_mod_p2(r, s, m, SumMode::Fast));
  }
  // Spot value: the raw 3x3 table for (r,s,p) = (1,1,3) sums to 63.
  Int raw = 0;
  for (int n = 0; n < 3; ++n)
    for (int m = 0; m < 3; ++m) {
      const Int b = binomial(n + m, m);
      raw += b * b;
    }
  crit.expect(raw == 63);
  crit.expect(double_sum_mod_p2(1, 1, PrimeModulus(3, 2), SumMode::Direct)
                  .value() == 0);
}

TEST_CASE("criterion 4: Lucas oracle equivalence") {
  Criterion crit{4, "Lucas digit path vs exact, p in {2,3,5,7}", 10.0};
  for (const std::int64_t p : {2, 3, 5, 7}) {
    const PrimeModulus m(p, 1);
    for (std::int64_t a = -10; a <= 10; ++a)
      for (std::int64_t b = -10; b <= 10; ++b)
        for (std::int64_t c = 0; c < p; ++c)
          for (std::int64_t d = 0; d < p; ++d)
            crit.expect(mod_reduce(binomial(Int(a) * p + c, Int(b) * p + d),
                                   m) == lucas_rhs(a, b, c, d, m));
  }
}

TEST_CASE("criterion 5: Babbage oracle equivalence") {
  Criterion crit{5, "Babbage collapse vs exact, p in {2,...,11}", 10.0};
  for (const std::int64_t p : {2, 3, 5, 7, 11}) {
    const PrimeModulus m(p, 2);
    for (std::int64_t a = -8; a <= 8; ++a)
      for (std::int64_t b = -8; b <= 8; ++b)
        crit.expect(mod_reduce(binomial(Int(a) * p, Int(b) * p), m) ==
                    binomial_ap_bp_mod_p2(a, b, m));
  }
}

TEST_CASE("criterion 6: Bailey oracle equivalence") {
  Criterion crit{6, "Bailey parts (a)(b)(c) vs exact, p in {3,5,7}", 10.0};
  for (const std::int64_t p : {3, 5, 7}) {
    const PrimeModulus m(p, 2);
    for (std::int64_t n = -6; n <= 6; ++n)
      for (std::int64_t k = -6; k <= 6; ++k)
        for (std::int64_t i = 1; i < p; ++i) {
          const Int plus = binomial(Int(n) * p, Int(k) * p + i);
          const Int minus = binomial(Int(n) * p, Int(k) * p - i);
          crit.expect(mod_reduce(plus, m) ==
                      bailey_mod_p2(n, k, i, BaileySign::Plus, m));
          crit.expect(mod_reduce(minus, m) ==
                      bailey_mod_p2(n, k, i, BaileySign::Minus, m));
          crit.expect(
              mod_reduce(plus + minus, m).value() ==
              mod_reduce(Int(n) * binomial(n, k) * binomial(p, i), m).value());
        }
  }
}

TEST_CASE("criterion 7: power sums vanish mod p") {
  Criterion crit{7, "power sums mod p, primes up to 97", 10.0};
  for (const std::int64_t p : primes_in_range(2, 97, false)) {
    const PrimeModulus m(p, 1);
    for (std::int64_t k = 0; k <= 2 * (p - 1); ++k) {
      if (k > 0 && k % (p - 1) == 0) continue;
      crit.expect(power_sum_mod_p(k, m).value() == 0);
    }
  }
}

TEST_CASE("criterion 8: Stirling power-sum formula") {
  Criterion crit{8, "power_sum vs direct summation, h<=30, m<=8", 0.0};
  for (long long h = 0; h <= 30; ++h)
    for (long long m = 0; m <= 8; ++m) {
      Int direct = 0;
      for (long long x = 0; x <= h; ++x) {
        Int term = 1;
        for (long long i = 0; i < m; ++i) term *= x;
        direct += term;
      }
      crit.expect(power_sum(h, m) == direct);
    }
}

TEST_CASE("criterion 9: Lucas fast path, exhaustive and timed") {
  Criterion crit{9, "binomial_mod_p exhaustive to 2000 plus sub-ms huge eval",
                 0.0};
  const std::vector<std::int64_t> primes = {2, 3, 5, 7, 11, 13};
  std::vector<PrimeModulus> moduli;
  for (const std::int64_t p : primes) moduli.emplace_back(p, 1);

  // Exact oracle: big-integer Pascal rows, reduced per prime.
  std::vector<Int> row;
  for (int n = 0; n <= 2000; ++n) {
    row.push_back(1);
    for (int k = n - 1; k >= 1; --k) row[k] += row[k - 1];
    std::size_t mismatches = 0;
    for (int k = 0; k <= n; ++k) {
      for (std::size_t pi = 0; pi < moduli.size(); ++pi) {
        const std::int64_t expected =
            (row[k] % primes[pi]).convert_to<std::int64_t>();
        if (binomial_mod_p(n, k, moduli[pi]).value() != expected) ++mismatches;
      }
    }
    // Above the diagonal the value is zero.
    for (int k = n + 1; k <= 2000; ++k)
      for (const auto& m : moduli)
        if (binomial_mod_p(n, k, m).value() != 0) ++mismatches;
    crit.checked += 2001 * moduli.size();
    crit.failed += mismatches;
  }

  // Timed huge evaluation: n = 10^18, k = 10^17, p = 1009.
  const PrimeModulus m1009(1009, 1);
  const Int n_huge = Int("1000000000000000000");
  const Int k_huge = Int("100000000000000000");
  const std::int64_t reference = binomial_mod_p(n_huge, k_huge, m1009).value();
  double best_seconds = 1e9;
  for (int rep = 0; rep < 32; ++rep) {
    const auto t0 = clock_type::now();
    const std::int64_t value = binomial_mod_p(n_huge, k_huge, m1009).value();
    const double seconds =
        std::chrono::duration<double>(clock_type::now() - t0).count();
    crit.expect(value == reference);
    best_seconds = std::min(best_seconds, seconds);
  }
  crit.expect(best_seconds < 0.001);
}

TEST_CASE("criterion 10: identity suites") {
  Criterion crit{10, "exact identity suites over the stated windows", 0.0};
  // Pascal recurrence.
  for (int m = -12; m <= 12; ++m)
    for (int n = -12; n <= 12; ++n)
      crit.expect(binomial(m, n) == binomial(m - 1, n - 1) + binomial(m - 1, n));
  // Symmetry and diagonal.
  for (int m = 0; m <= 20; ++m)
    for (int n = 0; n <= m; ++n)
      crit.expect(binomial(m, n) == binomial(m, m - n));
  for (int m = 0; m <= 30; ++m) crit.expect(binomial(m, m) == 1);
  // Upper negation.
  for (int m = -10; m <= 10; ++m)
    for (int n = 0; n <= 10; ++n)
      crit.expect(binomial(m, n) ==
                  binomial(n - m - 1, n) * (n % 2 == 0 ? 1 : -1));
  // Absorption.
  for (int n = -10; n <= 10; ++n)
    for (int k = -10; k <= 10; ++k)
      crit.expect(Int(k) * binomial(n, k) == Int(n) * binomial(n - 1, k - 1));
  // Vandermonde.
  for (int x = -8; x <= 8; ++x)
    for (int y = -8; y <= 8; ++y)
      for (int n = 0; n <= 10; ++n) {
        Int sum = 0;
        for (int k = 0; k <= n; ++k) sum += binomial(x, k) * binomial(y, n - k);
        crit.expect(binomial(Int(x) + y, n) == sum);
      }
  // Hockey stick.
  for (int j = 0; j <= 12; ++j)
    for (int h = 0; h <= 12; ++h) {
      Int sum = 0;
      for (int x = 0; x <= h; ++x) sum += binomial(x, j);
      crit.expect(sum == binomial(h + 1, j + 1));
    }
  // Split identity.
  for (int u = -8; u <= 8; ++u)
    for (int w = 0; w <= 5; ++w)
      for (int l = 0; l <= 5; ++l) {
        Int sum = binomial(u, w) * binomial(2 * l, l);
        for (int i = 1; i <= l; ++i)
          sum += (binomial(u, w + i) + binomial(u, w - i)) *
                 binomial(2 * l, l - i);
        crit.expect(binomial(Int(u) + 2 * l, Int(w) + l) == sum);
      }
  // Truncation identities.
  for (const int p : {2, 3, 5, 7}) {
    for (int c = -3; c <= 3; ++c)
      for (int l = 0; l <= p - 1; ++l) {
        Int sum = 0;
        for (int k = 0; k <= p - 1; ++k)
          sum += binomial(Int(c) * p + l, k) * binomial(l, k);
        crit.expect(binomial(Int(c) * p + 2 * l, l) == sum);
      }
    for (int l = 0; l <= 8; ++l) {
      Int sum = 0;
      for (int i = 1; i <= l; ++i)
        sum += binomial(p, i) * binomial(2 * l, l - i);
      crit.expect(sum == binomial(Int(p) + 2 * l, l) - binomial(2 * l, l));
    }
  }
  // Polynomial shift sums on 50 random polynomials per (p, c) cell.
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<int> coeff(-50, 50);
  for (const std::int64_t p : {3, 5, 7, 11}) {
    const Int p2 = Int(p) * p;
    for (int c = -3; c <= 3; ++c)
      for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> deg_a(0, static_cast<int>(2 * p - 2));
        std::vector<Int> ca(deg_a(rng) + 1);
        for (auto& x : ca) x = coeff(rng);
        const IntPolynomial pa(ca);
        Int sum_a = 0;
        for (std::int64_t l = 0; l < p; ++l) sum_a += pa(Int(c) * p + l) - pa(l);
        crit.expect(sum_a % p2 == 0);

        std::uniform_int_distribution<int> deg_b(0, static_cast<int>(p - 1));
        std::vector<Int> cb(deg_b(rng) + 1);
        for (auto& x : cb) x = coeff(rng);
        const IntPolynomial pb(cb);
        Int sum_b = 0;
        for (std::int64_t l = 0; l < p; ++l)
          sum_b += (pb(Int(c) * p + l) - pb(l)) * pb(l);
        crit.expect(sum_b % p2 == 0);
      }
  }
}

TEST_CASE("criterion 11: lemma ladder") {
  Criterion crit{11, "stepping-stone lemma sums at p in {3,5,7}", 60.0};
  for (const std::int64_t p : {3, 5, 7}) {
    const PrimeModulus m(p, 2);
    for (int c = -3; c <= 3; ++c) {
      for (std::int64_t k = 0; k < p; ++k)
        crit.expect(lemma_sum(LemmaId::A5, {c, k}, m).agree);
      crit.expect(lemma_sum(LemmaId::A6, {c}, m).agree);
    }
    for (int n = -5; n <= 5; ++n)
      for (int k = 0; k <= 5; ++k) {
        crit.expect(lemma_sum(LemmaId::C1, {n, k}, m).agree);
        crit.expect(lemma_sum(LemmaId::A8, {n, k}, m).agree);
        crit.expect(lemma_sum(LemmaId::A9, {n, k}, m).agree);
      }
    // Single-step and triangular congruences feeding Z2 and Z3.
    const Int p2 = Int(p) * p;
    for (int n = -4; n <= 4; ++n)
      for (int k = 0; k <= 4; ++k) {
        for (std::int64_t l = 0; l < p; ++l) {
          const Int lhs = binomial(Int(n) * p + 2 * l, Int(k) * p + l) -
                          binomial(n, k) * binomial(2 * l, l);
          const Int rhs = Int(n) * binomial(n, k) *
                          (binomial(Int(p) + 2 * l, l) - binomial(2 * l, l));
          crit.expect(exact_mod(lhs, p2) == exact_mod(rhs, p2));
        }
        Int sum = 0;
        for (std::int64_t l = 0; l < p; ++l)
          for (std::int64_t mm = 0; mm <= l; ++mm) {
            const Int base = binomial(l, mm);
            sum += (binomial(Int(n) * p + l, Int(k) * p + mm) -
                    binomial(n, k) * base) *
                   base;
          }
        crit.expect(sum % p2 == 0);
      }
  }
}

TEST_CASE("criterion 12: DSL round trip of criteria 1-7") {
  Criterion crit{12, "claim files reproduce the built-in outcomes", 0.0};
  const struct {
    const char* file;
    std::vector<VerificationRecord> (*builtin)();
  } cases[] = {
      {"z1.claims", [] { return builtin_z1(3, 500); }},
      {"z2.claims", [] { return builtin_z2(3, 31, 0, 8); }},
      {"z3.claims", [] { return builtin_z3(3, 11, 0, 4, 0, 4); }},
      {"lucas.claims", [] { return builtin_lucas(2, 7); }},
      {"babbage.claims", [] { return builtin_babbage(2, 11); }},
      {"bailey.claims", [] { return builtin_bailey(3, 7); }},
      {"powersum.claims", [] { return builtin_powersum(2, 97); }},
  };
  for (const auto& c : cases) {
    const auto claims = parse_claim_file(claims_path(c.file));
    const auto sequential = run_suite(claims, 1);
    const auto parallel = run_suite(claims, 8);
    const std::string bytes_sequential = jsonl_report(sequential);
    const std::string bytes_parallel = jsonl_report(parallel);
    crit.expect(bytes_sequential == bytes_parallel);

    const auto builtin = c.builtin();
    crit.expect(builtin.size() == sequential.size());
    std::size_t dsl_passed = 0, builtin_passed = 0;
    for (const auto& r : sequential) dsl_passed += r.pass;
    for (const auto& r : builtin) builtin_passed += r.pass;
    crit.expect(dsl_passed == builtin_passed);
    crit.expect(dsl_passed == sequential.size());
  }
}
