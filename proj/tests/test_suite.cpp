#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "binomod/suite.hpp"

using namespace binomod;

TEST_CASE("prime enumeration") {
  CHECK(primes_in_range(3, 50, true) ==
        std::vector<std::int64_t>{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
                                  43, 47});
  CHECK(primes_in_range(2, 11, false) ==
        std::vector<std::int64_t>{2, 3, 5, 7, 11});
  CHECK(primes_in_range(8, 10, false).empty());
  CHECK_THROWS_AS(primes_in_range(2, std::int64_t(1) << 31, false), Error);
}

TEST_CASE("Z1 claim over odd primes up to 50") {
  const auto claims = std::vector<ClaimAst>{parse_claim(
      "[z1] forall p in odd_primes(3..50): sum(n,0,p-1,C(2*n,n)) === eta(p) "
      "(mod p^2)")};
  const auto records = run_suite(claims, 1);
  REQUIRE(records.size() == 14);
  for (const auto& rec : records) {
    CHECK(rec.pass);
    CHECK(rec.lhs_residue >= 0);
    CHECK(rec.lhs_residue < rec.modulus);
    CHECK(rec.rhs_residue >= 0);
    CHECK(rec.rhs_residue < rec.modulus);
  }
  CHECK(records.front().bindings ==
        std::vector<std::pair<std::string, std::int64_t>>{{"p", 3}});
  CHECK(records.back().bindings.front().second == 47);
}

TEST_CASE("trivial multiple-of-p claim") {
  const auto claims = std::vector<ClaimAst>{
      parse_claim("forall p in primes(2..7): C(p,1) === 0 (mod p)")};
  const auto records = run_suite(claims, 1);
  REQUIRE(records.size() == 4);
  for (const auto& rec : records) {
    CHECK(rec.pass);
    CHECK(rec.lhs_residue == 0);
  }
}

TEST_CASE("a deliberately false claim yields a failing record") {
  const auto claims = std::vector<ClaimAst>{parse_claim(
      "forall p in odd_primes(5..5): sum(n,0,p-1,C(2*n,n)) === 1 (mod p^2)")};
  const auto records = run_suite(claims, 1);
  REQUIRE(records.size() == 1);
  CHECK_FALSE(records[0].pass);
  CHECK(records[0].lhs_residue == 24);
  CHECK(records[0].rhs_residue == 1);
  CHECK(records[0].modulus == 25);
}

TEST_CASE("records are sorted by claim id then binding tuple") {
  const auto claims = std::vector<ClaimAst>{
      parse_claim("[zz] forall a in 1..2, b in 1..2: a+b === a+b (mod 5)"),
      parse_claim("[aa] forall a in 2..3: a === a (mod 7)"),
  };
  const auto records = run_suite(claims, 1);
  REQUIRE(records.size() == 6);
  CHECK(records[0].claim_id == "aa");
  CHECK(records[0].bindings[0].second == 2);
  CHECK(records[1].claim_id == "aa");
  CHECK(records[2].claim_id == "zz");
  CHECK(records[2].bindings ==
        std::vector<std::pair<std::string, std::int64_t>>{{"a", 1}, {"b", 1}});
  CHECK(records[3].bindings ==
        std::vector<std::pair<std::string, std::int64_t>>{{"a", 1}, {"b", 2}});
}

TEST_CASE("suite output is byte-identical across job counts") {
  std::vector<ClaimAst> claims;
  claims.push_back(parse_claim(
      "[z1] forall p in odd_primes(3..60): sum(n,0,p-1,C(2*n,n)) === eta(p) "
      "(mod p^2)"));
  claims.push_back(parse_claim(
      "[pascal] forall m in -6..6, n in -6..6: C(m,n) === C(m-1,n-1)+C(m-1,n) "
      "(mod 1000003)"));
  const std::string one = jsonl_report(run_suite(claims, 1));
  for (const unsigned jobs : {2u, 3u, 8u})
    CHECK(jsonl_report(run_suite(claims, jobs)) == one);
}

TEST_CASE("modulus below 2 is rejected") {
  const auto claims =
      std::vector<ClaimAst>{parse_claim("forall p in 0..1: p === p (mod p)")};
  try {
    run_suite(claims, 1);
    FAIL("expected ModulusTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ModulusTooSmall);
  }
}

TEST_CASE("empty binder ranges produce no records") {
  const auto claims = std::vector<ClaimAst>{
      parse_claim("forall p in primes(24..28): 1 === 1 (mod 2)")};
  CHECK(run_suite(claims, 1).empty());
}

TEST_CASE("jsonl serialization shape") {
  const auto claims = std::vector<ClaimAst>{
      parse_claim("[demo] forall p in odd_primes(5..5): C(2*p,p) === 2 (mod "
                  "p^3)")};
  const auto records = run_suite(claims, 1);
  REQUIRE(records.size() == 1);
  // Wolstenholme for p = 5: C(10,5) = 252 == 2 mod 125.
  CHECK(records[0].pass);
  CHECK(jsonl_report(records) ==
        "{\"claim_id\":\"demo\",\"bindings\":{\"p\":5},\"lhs\":2,\"rhs\":2,"
        "\"modulus\":125,\"pass\":true,\"micros\":0}\n");
}

TEST_CASE("built-in suites all pass on small ranges") {
  for (const auto& records :
       {builtin_z1(3, 60), builtin_z2(3, 11, 0, 4), builtin_z3(3, 7, 0, 2, 0, 2),
        builtin_lucas(2, 3), builtin_babbage(2, 5), builtin_bailey(3, 5),
        builtin_powersum(2, 13)}) {
    CHECK_FALSE(records.empty());
    for (const auto& rec : records) CHECK(rec.pass);
  }
  CHECK_THROWS_AS(builtin_suite("wolstenholme", 3, 7), std::invalid_argument);
}

TEST_CASE("built-in and DSL routes agree on pass counts") {
  const auto builtin = builtin_powersum(2, 13);
  std::istringstream file(
      "[powersum_p2] forall k in 0..0: sum(l,0,1,l^k) === 0 (mod 2)\n"
      "[powersum_p3] forall k in 0..1: sum(l,0,2,l^k) === 0 (mod 3)\n"
      "[powersum_p3b] forall k in 3..3: sum(l,0,2,l^k) === 0 (mod 3)\n"
      "[powersum_p5] forall k in 0..3: sum(l,0,4,l^k) === 0 (mod 5)\n"
      "[powersum_p5b] forall k in 5..7: sum(l,0,4,l^k) === 0 (mod 5)\n"
      "[powersum_p7] forall k in 0..5: sum(l,0,6,l^k) === 0 (mod 7)\n"
      "[powersum_p7b] forall k in 7..11: sum(l,0,6,l^k) === 0 (mod 7)\n"
      "[powersum_p11] forall k in 0..9: sum(l,0,10,l^k) === 0 (mod 11)\n"
      "[powersum_p11b] forall k in 11..19: sum(l,0,10,l^k) === 0 (mod 11)\n"
      "[powersum_p13] forall k in 0..11: sum(l,0,12,l^k) === 0 (mod 13)\n"
      "[powersum_p13b] forall k in 13..23: sum(l,0,12,l^k) === 0 (mod 13)\n");
  const auto dsl = run_suite(parse_claim_file(file), 2);
  CHECK(builtin.size() == dsl.size());
  const auto all_pass = [](const std::vector<VerificationRecord>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](const VerificationRecord& r) { return r.pass; });
  };
  CHECK(all_pass(builtin));
  CHECK(all_pass(dsl));
}
