#include "binomod/exact.hpp"

#include <stdexcept>

namespace binomod {

Int binomial(const Int& m, const Int& n) {
  if (n < 0) return 0;
  if (n == 0) return 1;
  Int k = n;
  if (m >= 0) {
    if (m < n) return 0;
    if (m - n < k) k = m - n;  // symmetry: C(m,n) = C(m,m-n)
    if (k == 0) return 1;
  }
  // Incremental product: after the i-th step the accumulator is C(m, i),
  // an integer, so the division is exact at every step.
  Int result = 1;
  for (Int i = 1; i <= k; ++i) {
    result *= m - i + 1;
    result /= i;
  }
  return result;
}

std::vector<Int> stirling2_row(unsigned long m) {
  std::vector<Int> row(m + 1, Int(0));
  row[0] = 1;
  for (unsigned long i = 1; i <= m; ++i) {
    for (unsigned long j = i; j >= 1; --j) row[j] = Int(j) * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row;
}

Int stirling2(const Int& m, const Int& n) {
  if (m < 0) throw std::invalid_argument("stirling2: m must be nonnegative");
  if (n < 0 || n > m) return 0;
  auto row = stirling2_row(m.convert_to<unsigned long>());
  return row[n.convert_to<unsigned long>()];
}

Int power_sum(const Int& h, const Int& m) {
  if (h < 0) throw std::invalid_argument("power_sum: h must be nonnegative");
  if (m < 0) throw std::invalid_argument("power_sum: m must be nonnegative");
  const unsigned long mu = m.convert_to<unsigned long>();
  const auto stir = stirling2_row(mu);
  Int total = 0;
  Int factorial = 1;            // j!
  Int binom = h + 1;            // C(h+1, j+1), starting at j = 0
  for (unsigned long j = 0; j <= mu; ++j) {
    if (j > 0) {
      factorial *= j;
      binom *= h + 1 - Int(j);  // C(h+1,j) -> C(h+1,j+1), exact division
      binom /= Int(j) + 1;
    }
    total += factorial * stir[j] * binom;
  }
  return total;
}

Int alternating_diagonal(const Int& n) {
  if (n < 0)
    throw std::invalid_argument("alternating_diagonal: n must be nonnegative");
  const int r = (n % 3).convert_to<int>();
  const int base = r == 0 ? 0 : (r == 1 ? -1 : 1);
  const bool odd = (n % 2) != 0;
  return Int(odd ? -base : base);
}

namespace {

std::vector<Int> multiply_truncated(const std::vector<Int>& a,
                                    const std::vector<Int>& b) {
  std::vector<Int> out(a.size(), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < out.size() && j < b.size(); ++j)
      out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

SeriesPrefix series_coefficients(const Int& n, std::size_t count) {
  std::vector<Int> coeffs(count, Int(0));
  if (count == 0) return {std::move(coeffs)};
  coeffs[0] = 1;
  if (n >= 0) {
    // Repeatedly multiply by (1+X), dropping everything past the prefix.
    for (Int t = 0; t < n; ++t)
      for (std::size_t i = count - 1; i >= 1; --i) coeffs[i] += coeffs[i - 1];
  } else {
    // The truncated inverse of (1+X) is the alternating-sign prefix.
    std::vector<Int> inverse(count);
    for (std::size_t i = 0; i < count; ++i) inverse[i] = (i % 2 == 0) ? 1 : -1;
    for (Int t = 0; t < -n; ++t) coeffs = multiply_truncated(coeffs, inverse);
  }
  return {std::move(coeffs)};
}

}  // namespace binomod
