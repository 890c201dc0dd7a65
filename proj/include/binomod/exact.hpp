#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <vector>

namespace binomod {

/// All exact values are arbitrary-precision integers.
using Int = boost::multiprecision::cpp_int;

/// Extended binomial coefficient C(m, n), defined for all integer m and n:
/// the falling-factorial quotient m(m-1)...(m-n+1)/n! for n >= 0 (always an
/// integer), and 0 for n < 0.
Int binomial(const Int& m, const Int& n);

/// Stirling number of the second kind S(m, n) for m >= 0, defined by
/// S(0, n) = [n = 0] and S(m, n) = n S(m-1, n) + S(m-1, n-1); zero whenever
/// n lies outside {0, ..., m}.
Int stirling2(const Int& m, const Int& n);

/// Row m of the Stirling triangle: row[n] = S(m, n) for n in [0, m].
std::vector<Int> stirling2_row(unsigned long m);

/// Sum of x^m for x in [0, h], with the convention 0^0 = 1, evaluated through
/// the closed form sum_j j! S(m, j) C(h+1, j+1).
Int power_sum(const Int& h, const Int& m);

/// The alternating shallow-diagonal sum sum_{i=0}^{n-1} (-1)^i C(n-1-i, i),
/// evaluated by its closed form keyed on n mod 3.
Int alternating_diagonal(const Int& n);

/// A fixed-length prefix of a formal power series over the integers.
struct SeriesPrefix {
  std::vector<Int> coefficients;
};

/// First `count` coefficients of (1+X)^n; index m holds C(n, m). Negative n
/// goes through the truncated inverse of (1+X).
SeriesPrefix series_coefficients(const Int& n, std::size_t count);

/// Dense integer-coefficient polynomial. The coefficient list is kept
/// normalized: the highest stored coefficient is nonzero, and the zero
/// polynomial stores nothing.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coefficients)
      : coeffs_(std::move(coefficients)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  const std::vector<Int>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Degree, with nullopt standing in for the zero polynomial's degree,
  /// which compares below every integer.
  std::optional<std::size_t> degree() const noexcept {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }

  /// True when the degree is strictly below `bound`; the zero polynomial
  /// satisfies every bound.
  bool degree_less_than(long long bound) const noexcept {
    if (coeffs_.empty()) return true;
    return static_cast<long long>(coeffs_.size()) - 1 < bound;
  }

  /// Horner evaluation in exact integers.
  Int operator()(const Int& x) const {
    Int acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * x + *it;
    return acc;
  }

 private:
  std::vector<Int> coeffs_;
};

inline Int poly_eval(const IntPolynomial& p, const Int& x) { return p(x); }

}  // namespace binomod
