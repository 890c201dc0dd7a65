// Command-line front end: one-shot expression evaluation, built-in theorem
// suites, claim-file verification, and microbenchmarks of the fast paths.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "binomod/claims.hpp"
#include "binomod/modular.hpp"
#include "binomod/suite.hpp"
#include "binomod/supercong.hpp"

namespace {

using binomod::Int;

struct PrimeRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

// Parses "lo..hi" with optional signs.
PrimeRange parse_range(const std::string& text) {
  const std::size_t dots = text.find("..");
  if (dots == std::string::npos)
    throw CLI::ValidationError("range must look like <lo>..<hi>");
  PrimeRange r;
  r.lo = std::stoll(text.substr(0, dots));
  r.hi = std::stoll(text.substr(dots + 2));
  return r;
}

int emit_records(const std::vector<binomod::VerificationRecord>& records,
                 const std::string& out_path) {
  const std::string report = binomod::jsonl_report(records);
  if (out_path.empty()) {
    std::cout << report;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open output file: " << out_path << "\n";
      return 2;
    }
    out << report;
  }
  std::size_t passed = 0;
  for (const auto& rec : records) passed += rec.pass ? 1 : 0;
  std::cerr << passed << "/" << records.size() << " bindings passed\n";
  return passed == records.size() ? 0 : 1;
}

int run_compute(const std::string& expr_text, const std::string& mod_text) {
  binomod::Env env;
  const Int value =
      binomod::eval_expr(*binomod::parse_expression(expr_text), env);
  if (mod_text.empty()) {
    std::cout << value.str() << "\n";
    return 0;
  }
  const Int modulus =
      binomod::eval_expr(*binomod::parse_expression(mod_text), env);
  if (modulus < 1) {
    std::cerr << "modulus must be positive\n";
    return 2;
  }
  Int residue = value % modulus;
  if (residue < 0) residue += modulus;
  std::cout << residue.str() << "\n";
  return 0;
}

int run_bench(const std::string& op, std::int64_t p, std::int64_t n) {
  using clock = std::chrono::steady_clock;
  std::string result;
  clock::time_point start;
  if (op == "lucas") {
    const binomod::PrimeModulus m(p, 1);
    const Int upper = n, lower = Int(n) / 2;
    start = clock::now();
    result = std::to_string(binomod::binomial_mod_p(upper, lower, m).value());
  } else if (op == "babbage") {
    const binomod::PrimeModulus m(p, 2);
    start = clock::now();
    result = std::to_string(
        binomod::binomial_ap_bp_mod_p2(n, Int(n) / 2, m).value());
  } else if (op == "central-sum") {
    const binomod::PrimeModulus m(p, 2);
    start = clock::now();
    result = std::to_string(
        binomod::central_sum_mod_p2(n, m, binomod::SumMode::Fast).value());
  } else {
    std::cerr << "unknown op: " << op << "\n";
    return 2;
  }
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
                          clock::now() - start)
                          .count();
  std::cout << op << " p=" << p << " n=" << n << " result=" << result
            << " micros=" << micros << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and modular binomial congruence toolkit"};
  app.require_subcommand(1);

  auto* compute = app.add_subcommand("compute", "Evaluate an expression exactly");
  std::string expr_text, mod_text;
  compute->add_option("--expr", expr_text, "Expression to evaluate")->required();
  compute->add_option("--mod", mod_text, "Reduce modulo this expression");

  auto* verify = app.add_subcommand("verify", "Run a built-in theorem suite");
  std::string theorem, primes_text, r_text, s_text, out_path;
  verify->add_option("--theorem", theorem, "z1|z2|z3|lucas|babbage|bailey|powersum")
      ->required();
  verify->add_option("--primes", primes_text, "Prime range lo..hi")->required();
  verify->add_option("--r", r_text, "r range lo..hi (z2, z3)");
  verify->add_option("--s", s_text, "s range lo..hi (z3)");
  verify->add_option("--out", out_path, "Write the JSONL report here");

  auto* suite = app.add_subcommand("suite", "Parse and run a claim file");
  std::string claims_path;
  unsigned jobs = 1;
  std::string suite_out;
  suite->add_option("--file", claims_path, "Claim file")->required();
  suite->add_option("--jobs", jobs, "Worker threads");
  suite->add_option("--out", suite_out, "Write the JSONL report here");

  auto* bench = app.add_subcommand("bench", "Time one fast-path evaluation");
  std::string bench_op;
  std::int64_t bench_p = 0, bench_n = 0;
  bench->add_option("--op", bench_op, "lucas|babbage|central-sum")->required();
  bench->add_option("--p", bench_p, "Prime")->required();
  bench->add_option("--n", bench_n, "Argument size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (compute->parsed()) return run_compute(expr_text, mod_text);
    if (verify->parsed()) {
      const PrimeRange primes = parse_range(primes_text);
      std::int64_t r_lo = 0, r_hi = 8, s_lo = 0, s_hi = 4;
      if (!r_text.empty()) {
        const PrimeRange r = parse_range(r_text);
        r_lo = r.lo;
        r_hi = r.hi;
      }
      if (theorem == "z3" && r_text.empty()) r_hi = 4;
      if (!s_text.empty()) {
        const PrimeRange s = parse_range(s_text);
        s_lo = s.lo;
        s_hi = s.hi;
      }
      return emit_records(binomod::builtin_suite(theorem, primes.lo, primes.hi,
                                                 r_lo, r_hi, s_lo, s_hi),
                          out_path);
    }
    if (suite->parsed()) {
      const auto claims = binomod::parse_claim_file(claims_path);
      return emit_records(binomod::run_suite(claims, jobs), suite_out);
    }
    if (bench->parsed()) return run_bench(bench_op, bench_p, bench_n);
  } catch (const binomod::ParseError& e) {
    std::cerr << "parse error at " << e.line() << ":" << e.column() << ": "
              << e.what() << "\n";
    return 2;
  } catch (const binomod::Error& e) {
    std::cerr << binomod::errc_name(e.code()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
