#include "binomod/supercong.hpp"

#include <stdexcept>
#include <string>

namespace binomod {

namespace {

constexpr std::int64_t kCentralTermLimit = 10'000;
constexpr std::int64_t kDoubleTermLimit = 1'000'000;

void require_odd_power2(const PrimeModulus& m, const char* op) {
  if (m.power() != 2)
    throw Error(Errc::ModulusPowerMismatch,
                std::string(op) + ": requires a modulus with power 2");
  if (m.prime() == 2)
    throw Error(Errc::OddPrimeRequired,
                std::string(op) + ": requires an odd prime");
}

// Exact sum_{n=0}^{terms-1} C(2n,n), stepping the central binomial by the
// ratio 2(2n+1)/(n+1), which divides exactly.
Int central_binomial_sum(std::int64_t terms) {
  Int sum = 0;
  Int central = 1;  // C(0,0)
  for (std::int64_t n = 0; n < terms; ++n) {
    sum += central;
    central *= 2 * (2 * n + 1);
    central /= n + 1;
  }
  return sum;
}

// Exact sum_{n<n_count} sum_{m<m_count} C(n+m,m)^2, stepping each row by
// the exact ratio (n+m+1)/(m+1).
Int squared_binomial_table_sum(std::int64_t n_count, std::int64_t m_count) {
  Int total = 0;
  for (std::int64_t n = 0; n < n_count; ++n) {
    Int entry = 1;  // C(n+0, 0)
    for (std::int64_t m = 0; m < m_count; ++m) {
      total += entry * entry;
      entry *= n + m + 1;
      entry /= m + 1;
    }
  }
  return total;
}

}  // namespace

int eta(const Int& p) {
  int r = (p % 3).convert_to<int>();
  if (r < 0) r += 3;
  return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

Int alpha(const Int& r) {
  if (r < 0) throw std::invalid_argument("alpha: r must be nonnegative");
  return central_binomial_sum(r.convert_to<std::int64_t>());
}

Int epsilon(const Int& r, const Int& s) {
  if (r < 0 || s < 0)
    throw std::invalid_argument("epsilon: r and s must be nonnegative");
  // epsilon sums over m < r and n < s.
  return squared_binomial_table_sum(s.convert_to<std::int64_t>(),
                                    r.convert_to<std::int64_t>());
}

Residue central_sum_mod_p2(const Int& r, const PrimeModulus& m, SumMode mode) {
  require_odd_power2(m, "central_sum_mod_p2");
  if (r < 0)
    throw std::invalid_argument("central_sum_mod_p2: r must be nonnegative");
  if (mode == SumMode::Fast) return mod_reduce(Int(eta(m.prime())) * alpha(r), m);
  const Int terms = r * m.prime();
  if (terms > kCentralTermLimit)
    throw Error(Errc::SizeLimit,
                "central_sum_mod_p2: direct mode capped at " +
                    std::to_string(kCentralTermLimit) + " terms");
  return mod_reduce(central_binomial_sum(terms.convert_to<std::int64_t>()), m);
}

Residue double_sum_mod_p2(const Int& r, const Int& s, const PrimeModulus& m,
                          SumMode mode) {
  require_odd_power2(m, "double_sum_mod_p2");
  if (r < 0 || s < 0)
    throw std::invalid_argument("double_sum_mod_p2: r, s must be nonnegative");
  if (mode == SumMode::Fast)
    return mod_reduce(Int(eta(m.prime())) * epsilon(r, s), m);
  const Int n_count = r * m.prime();
  const Int m_count = s * m.prime();
  if (n_count * m_count > kDoubleTermLimit)
    throw Error(Errc::SizeLimit,
                "double_sum_mod_p2: direct mode capped at " +
                    std::to_string(kDoubleTermLimit) + " terms");
  return mod_reduce(
      squared_binomial_table_sum(n_count.convert_to<std::int64_t>(),
                                 m_count.convert_to<std::int64_t>()),
      m);
}

SumEvaluation lemma_sum(LemmaId id, const std::vector<Int>& params,
                        const PrimeModulus& m) {
  require_odd_power2(m, "lemma_sum");
  const std::int64_t p = m.prime();

  const auto require_params = [&](std::size_t count) {
    if (params.size() != count)
      throw Error(Errc::BadParamsShape,
                  "lemma_sum: expected " + std::to_string(count) +
                      " parameters, got " + std::to_string(params.size()));
  };

  Int direct_sum = 0;
  Int fast_value = 0;
  switch (id) {
    case LemmaId::A5: {
      require_params(2);
      const Int& c = params[0];
      const Int& k = params[1];
      if (k < 0 || k > p - 1)
        throw Error(Errc::BadParamsShape, "lemma_sum A5: k must lie in [0, p-1]");
      for (std::int64_t l = 0; l < p; ++l) {
        const Int base = binomial(l, k);
        direct_sum += (binomial(c * p + l, k) - base) * base;
      }
      break;
    }
    case LemmaId::A6: {
      require_params(1);
      const Int& c = params[0];
      for (std::int64_t l = 0; l < p; ++l)
        direct_sum += binomial(c * p + 2 * l, l) - binomial(2 * l, l);
      break;
    }
    case LemmaId::C1: {
      require_params(2);
      const Int& big_n = params[0];
      const Int& big_k = params[1];
      if (big_k < 0)
        throw Error(Errc::BadParamsShape, "lemma_sum C1: K must be nonnegative");
      for (std::int64_t l = 0; l < p; ++l)
        direct_sum += binomial(big_n * p + 2 * l, big_k * p + l);
      fast_value = binomial(big_n, big_k) * eta(p);
      break;
    }
    case LemmaId::A8: {
      require_params(2);
      const Int& big_n = params[0];
      const Int& big_k = params[1];
      if (big_k < 0)
        throw Error(Errc::BadParamsShape, "lemma_sum A8: K must be nonnegative");
      for (std::int64_t l = 0; l < p; ++l)
        for (std::int64_t mm = 0; mm <= l; ++mm) {
          const Int term = binomial(big_n * p + l, big_k * p + mm);
          direct_sum += term * term;
        }
      const Int scale = binomial(big_n, big_k);
      fast_value = scale * scale * eta(p);
      break;
    }
    case LemmaId::A9: {
      require_params(2);
      const Int& big_n = params[0];
      const Int& big_k = params[1];
      if (big_k < 0)
        throw Error(Errc::BadParamsShape, "lemma_sum A9: K must be nonnegative");
      for (std::int64_t u = 0; u < p; ++u)
        for (std::int64_t v = 0; v < p; ++v) {
          const Int term = binomial(big_n * p + u + v, big_k * p + u);
          direct_sum += term * term;
        }
      const Int scale = binomial(big_n, big_k);
      fast_value = scale * scale * eta(p);
      break;
    }
  }

  SumEvaluation result{mod_reduce(direct_sum, m), mod_reduce(fast_value, m),
                       false};
  result.agree = result.direct.value() == result.fast.value();
  return result;
}

}  // namespace binomod
