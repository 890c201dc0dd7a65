#pragma once

#include <vector>

#include "binomod/exact.hpp"
#include "binomod/modular.hpp"

namespace binomod {

/// The quadratic character of p modulo 3: 0, 1, or -1 according to
/// p mod 3 = 0, 1, 2. Defined for every integer p.
int eta(const Int& p);

/// Partial sum of central binomial coefficients, sum_{n<r} C(2n, n).
Int alpha(const Int& r);

/// Double sum of squared binomials, sum_{m<r} sum_{n<s} C(n+m, m)^2.
Int epsilon(const Int& r, const Int& s);

enum class SumMode { Direct, Fast };

/// sum_{n=0}^{rp-1} C(2n,n) mod p^2. Direct mode accumulates the exact sum
/// and reduces once (guarded at 10^4 terms); fast mode evaluates the
/// congruent value eta(p) * alpha(r). Odd p and power 2 required.
Residue central_sum_mod_p2(const Int& r, const PrimeModulus& m, SumMode mode);

/// sum_{n<rp} sum_{m<sp} C(n+m,m)^2 mod p^2. Direct mode is guarded at 10^6
/// terms; fast mode evaluates eta(p) * epsilon(r, s). Odd p, power 2.
Residue double_sum_mod_p2(const Int& r, const Int& s, const PrimeModulus& m,
                          SumMode mode);

/// Which stepping-stone sum to evaluate. Parameter shapes:
///   A5: (c, k) with k in [0, p-1]   A6: (c)   C1/A8/A9: (N, K) with K >= 0
enum class LemmaId { A5, A6, C1, A8, A9 };

/// Both sides of a congruence: the brute-force reduction of the exact sum
/// and the predicted value. For inputs meeting the hypotheses the two agree.
struct SumEvaluation {
  Residue direct;
  Residue fast;
  bool agree;
};

SumEvaluation lemma_sum(LemmaId id, const std::vector<Int>& params,
                        const PrimeModulus& m);

}  // namespace binomod
