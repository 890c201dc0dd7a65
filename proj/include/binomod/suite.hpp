#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "binomod/claims.hpp"
#include "binomod/exact.hpp"

namespace binomod {

/// Per-binding verification evidence. Residues are canonical, in
/// [0, modulus). `elapsed_micros` is wall time for this binding; serialized
/// reports zero it so identical runs produce identical bytes.
struct VerificationRecord {
  std::string claim_id;
  std::vector<std::pair<std::string, std::int64_t>> bindings;  // binder order
  Int lhs_residue;
  Int rhs_residue;
  Int modulus;
  bool pass = false;
  std::uint64_t elapsed_micros = 0;
};

/// Primes in [lo, hi], optionally restricted to odd primes. Bounds at or
/// above 2^31 are rejected (Errc::OutOfRange).
std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi,
                                          bool odd_only);

/// Evaluates every claim at every binding in the Cartesian product of its
/// binder ranges, on up to `jobs` worker threads. The returned list is
/// sorted by (claim_id, binding tuple) regardless of evaluation order.
/// Throws Error with Errc::ModulusTooSmall when some binding produces a
/// modulus below 2.
std::vector<VerificationRecord> run_suite(const std::vector<ClaimAst>& claims,
                                          unsigned jobs);

/// JSON Lines serialization, one record per line, keys
/// claim_id/bindings/lhs/rhs/modulus/pass/micros. Byte-deterministic.
std::string jsonl_report(const std::vector<VerificationRecord>& records);
void write_jsonl(const std::vector<VerificationRecord>& records,
                 std::ostream& out);

/// Built-in verification suites for the named theorems. Each returns
/// records in the same sorted order run_suite uses, with all side
/// computations going through the library fast paths.
std::vector<VerificationRecord> builtin_z1(std::int64_t p_lo, std::int64_t p_hi);
std::vector<VerificationRecord> builtin_z2(std::int64_t p_lo, std::int64_t p_hi,
                                           std::int64_t r_lo, std::int64_t r_hi);
std::vector<VerificationRecord> builtin_z3(std::int64_t p_lo, std::int64_t p_hi,
                                           std::int64_t r_lo, std::int64_t r_hi,
                                           std::int64_t s_lo, std::int64_t s_hi);
std::vector<VerificationRecord> builtin_lucas(std::int64_t p_lo,
                                              std::int64_t p_hi);
std::vector<VerificationRecord> builtin_babbage(std::int64_t p_lo,
                                                std::int64_t p_hi);
std::vector<VerificationRecord> builtin_bailey(std::int64_t p_lo,
                                               std::int64_t p_hi);
std::vector<VerificationRecord> builtin_powersum(std::int64_t p_lo,
                                                 std::int64_t p_hi);

/// Dispatch by theorem name {z1,z2,z3,lucas,babbage,bailey,powersum}; the
/// r/s ranges apply to z2 and z3 and default to the ranges these theorems
/// are verified at.
std::vector<VerificationRecord> builtin_suite(const std::string& theorem,
                                              std::int64_t p_lo,
                                              std::int64_t p_hi,
                                              std::int64_t r_lo = 0,
                                              std::int64_t r_hi = 8,
                                              std::int64_t s_lo = 0,
                                              std::int64_t s_hi = 4);

}  // namespace binomod
