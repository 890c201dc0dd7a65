#include "binomod/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <sstream>
#include <thread>

#include "binomod/modular.hpp"
#include "binomod/supercong.hpp"

namespace binomod {

std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi,
                                          bool odd_only) {
  if (hi >= (std::int64_t(1) << 31))
    throw Error(Errc::OutOfRange, "prime range bound must be below 2^31");
  std::vector<std::int64_t> out;
  for (std::int64_t p = std::max<std::int64_t>(lo, 2); p <= hi; ++p) {
    if (odd_only && p == 2) continue;
    if (is_prime_u64(static_cast<std::uint64_t>(p))) out.push_back(p);
  }
  return out;
}

namespace {

std::vector<std::int64_t> binder_values(const Binder& b) {
  switch (b.kind) {
    case RangeKind::Primes:
      return primes_in_range(b.lo, b.hi, false);
    case RangeKind::OddPrimes:
      return primes_in_range(b.lo, b.hi, true);
    case RangeKind::IntRange: {
      std::vector<std::int64_t> out;
      for (std::int64_t v = b.lo; v <= b.hi; ++v) out.push_back(v);
      return out;
    }
  }
  return {};
}

struct WorkItem {
  const ClaimAst* claim;
  std::vector<std::int64_t> binding;
};

VerificationRecord evaluate_binding(const WorkItem& item) {
  const auto start = std::chrono::steady_clock::now();
  Env env;
  VerificationRecord rec;
  rec.claim_id = item.claim->id;
  for (std::size_t i = 0; i < item.claim->binders.size(); ++i) {
    const std::string& name = item.claim->binders[i].name;
    env[name] = item.binding[i];
    rec.bindings.emplace_back(name, item.binding[i]);
  }
  rec.modulus = eval_expr(*item.claim->modulus, env);
  if (rec.modulus < 2)
    throw Error(Errc::ModulusTooSmall,
                "claim '" + item.claim->id + "': modulus " + rec.modulus.str() +
                    " is below 2");
  const auto reduce = [&](const Int& x) {
    Int r = x % rec.modulus;
    if (r < 0) r += rec.modulus;
    return r;
  };
  rec.lhs_residue = reduce(eval_expr(*item.claim->lhs, env));
  rec.rhs_residue = reduce(eval_expr(*item.claim->rhs, env));
  rec.pass = rec.lhs_residue == rec.rhs_residue;
  rec.elapsed_micros = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(
          std::chrono::steady_clock::now() - start)
          .count());
  return rec;
}

void sort_records(std::vector<VerificationRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const VerificationRecord& a, const VerificationRecord& b) {
                     if (a.claim_id != b.claim_id) return a.claim_id < b.claim_id;
                     const std::size_t n =
                         std::min(a.bindings.size(), b.bindings.size());
                     for (std::size_t i = 0; i < n; ++i) {
                       if (a.bindings[i].second != b.bindings[i].second)
                         return a.bindings[i].second < b.bindings[i].second;
                     }
                     return a.bindings.size() < b.bindings.size();
                   });
}

}  // namespace

std::vector<VerificationRecord> run_suite(const std::vector<ClaimAst>& claims,
                                          unsigned jobs) {
  if (jobs == 0) throw std::invalid_argument("run_suite: jobs must be positive");

  std::vector<WorkItem> items;
  for (const ClaimAst& claim : claims) {
    std::vector<std::vector<std::int64_t>> ranges;
    ranges.reserve(claim.binders.size());
    for (const Binder& b : claim.binders) ranges.push_back(binder_values(b));
    // Cartesian product in binder order, first binder slowest.
    std::vector<std::size_t> idx(ranges.size(), 0);
    const bool empty = std::any_of(ranges.begin(), ranges.end(),
                                   [](const auto& r) { return r.empty(); });
    if (empty) continue;
    while (true) {
      WorkItem item;
      item.claim = &claim;
      for (std::size_t i = 0; i < ranges.size(); ++i)
        item.binding.push_back(ranges[i][idx[i]]);
      items.push_back(std::move(item));
      std::size_t i = ranges.size();
      while (i > 0) {
        --i;
        if (++idx[i] < ranges[i].size()) break;
        idx[i] = 0;
        if (i == 0) goto done;
      }
    }
  done:;
  }

  std::vector<VerificationRecord> records(items.size());
  std::vector<std::exception_ptr> errors(items.size());

  if (jobs == 1 || items.size() <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i)
      records[i] = evaluate_binding(items[i]);
  } else {
    std::atomic<std::size_t> next{0};
    const unsigned worker_count =
        std::min<std::size_t>(jobs, items.size());
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (unsigned w = 0; w < worker_count; ++w) {
      workers.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= items.size()) return;
          try {
            records[i] = evaluate_binding(items[i]);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : workers) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  sort_records(records);
  return records;
}

namespace {

void append_json_string(const std::string& s, std::string& out) {
  out += '"';
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += ch;
    }
  }
  out += '"';
}

}  // namespace

std::string jsonl_report(const std::vector<VerificationRecord>& records) {
  std::string out;
  for (const VerificationRecord& rec : records) {
    out += "{\"claim_id\":";
    append_json_string(rec.claim_id, out);
    out += ",\"bindings\":{";
    for (std::size_t i = 0; i < rec.bindings.size(); ++i) {
      if (i > 0) out += ',';
      append_json_string(rec.bindings[i].first, out);
      out += ':';
      out += std::to_string(rec.bindings[i].second);
    }
    out += "},\"lhs\":" + rec.lhs_residue.str();
    out += ",\"rhs\":" + rec.rhs_residue.str();
    out += ",\"modulus\":" + rec.modulus.str();
    out += rec.pass ? ",\"pass\":true" : ",\"pass\":false";
    // Zeroed so reruns and different job counts emit identical bytes.
    out += ",\"micros\":0}\n";
  }
  return out;
}

void write_jsonl(const std::vector<VerificationRecord>& records,
                 std::ostream& out) {
  out << jsonl_report(records);
}

// ---------------------------------------------------------------------------
// Built-in theorem suites

namespace {

VerificationRecord make_record(
    std::string claim_id,
    std::vector<std::pair<std::string, std::int64_t>> bindings,
    const Residue& lhs, const Residue& rhs) {
  VerificationRecord rec;
  rec.claim_id = std::move(claim_id);
  rec.bindings = std::move(bindings);
  rec.lhs_residue = lhs.value();
  rec.rhs_residue = rhs.value();
  rec.modulus = lhs.modulus().modulus();
  rec.pass = lhs.value() == rhs.value();
  return rec;
}

}  // namespace

std::vector<VerificationRecord> builtin_z1(std::int64_t p_lo, std::int64_t p_hi) {
  std::vector<VerificationRecord> records;
  for (const std::int64_t p : primes_in_range(p_lo, p_hi, true)) {
    const PrimeModulus m(p, 2);
    records.push_back(make_record(
        "z1", {{"p", p}}, central_sum_mod_p2(1, m, SumMode::Direct),
        mod_reduce(Int(eta(p)), m)));
  }
  sort_records(records);
  return records;
}

std::vector<VerificationRecord> builtin_z2(std::int64_t p_lo, std::int64_t p_hi,
                                           std::int64_t r_lo, std::int64_t r_hi) {
  std::vector<VerificationRecord> records;
  for (const std::int64_t p : primes_in_range(p_lo, p_hi, true)) {
    const PrimeModulus m(p, 2);
    for (std::int64_t r = std::max<std::int64_t>(r_lo, 0); r <= r_hi; ++r)
      records.push_back(make_record(
          "z2", {{"p", p}, {"r", r}}, central_sum_mod_p2(r, m, SumMode::Direct),
          central_sum_mod_p2(r, m, SumMode::Fast)));
  }
  sort_records(records);
  return records;
}

std::vector<VerificationRecord> builtin_z3(std::int64_t p_lo, std::int64_t p_hi,
                                           std::int64_t r_lo, std::int64_t r_hi,
                                           std::int64_t s_lo, std::int64_t s_hi) {
  std::vector<VerificationRecord> records;
  for (const std::int64_t p : primes_in_range(p_lo, p_hi, true)) {
    const PrimeModulus m(p, 2);
    for (std::int64_t r = std::max<std::int64_t>(r_lo, 0); r <= r_hi; ++r)
      for (std::int64_t s = std::max<std::int64_t>(s_lo, 0); s <= s_hi; ++s)
        records.push_back(make_record(
            "z3", {{"p", p}, {"r", r}, {"s", s}},
            double_sum_mod_p2(r, s, m, SumMode::Direct),
            double_sum_mod_p2(r, s, m, SumMode::Fast)));
  }
  sort_records(records);
  return records;
}

std::vector<VerificationRecord> builtin_lucas(std::int64_t p_lo,
                                              std::int64_t p_hi) {
  std::vector<VerificationRecord> records;
  for (const std::int64_t p : primes_in_range(p_lo, p_hi, false)) {
    const PrimeModulus m(p, 1);
    for (std::int64_t a = -10; a <= 10; ++a)
      for (std::int64_t b = -10; b <= 10; ++b)
        for (std::int64_t c = 0; c < p; ++c)
          for (std::int64_t d = 0; d < p; ++d)
            records.push_back(make_record(
                "lucas",
                {{"p", p}, {"a", a}, {"b", b}, {"c", c}, {"d", d}},
                mod_reduce(binomial(Int(a) * p + c, Int(b) * p + d), m),
                lucas_rhs(a, b, c, d, m)));
  }
  sort_records(records);
  return records;
}

std::vector<VerificationRecord> builtin_babbage(std::int64_t p_lo,
                                                std::int64_t p_hi) {
  std::vector<VerificationRecord> records;
  for (const std::int64_t p : primes_in_range(p_lo, p_hi, false)) {
    const PrimeModulus m(p, 2);
    for (std::int64_t a = -8; a <= 8; ++a)
      for (std::int64_t b = -8; b <= 8; ++b)
        records.push_back(make_record(
            "babbage", {{"p", p}, {"a", a}, {"b", b}},
            mod_reduce(binomial(Int(a) * p, Int(b) * p), m),
            binomial_ap_bp_mod_p2(a, b, m)));
  }
  sort_records(records);
  return records;
}

std::vector<VerificationRecord> builtin_bailey(std::int64_t p_lo,
                                               std::int64_t p_hi) {
  std::vector<VerificationRecord> records;
  for (const std::int64_t p : primes_in_range(p_lo, p_hi, true)) {
    const PrimeModulus m(p, 2);
    for (std::int64_t n = -6; n <= 6; ++n)
      for (std::int64_t k = -6; k <= 6; ++k)
        for (std::int64_t i = 1; i < p; ++i) {
          const std::vector<std::pair<std::string, std::int64_t>> bindings = {
              {"p", p}, {"N", n}, {"K", k}, {"i", i}};
          const Int plus_exact = binomial(Int(n) * p, Int(k) * p + i);
          const Int minus_exact = binomial(Int(n) * p, Int(k) * p - i);
          records.push_back(make_record(
              "bailey_a", bindings, mod_reduce(plus_exact, m),
              bailey_mod_p2(n, k, i, BaileySign::Plus, m)));
          records.push_back(make_record(
              "bailey_b", bindings, mod_reduce(minus_exact, m),
              bailey_mod_p2(n, k, i, BaileySign::Minus, m)));
          records.push_back(make_record(
              "bailey_c", bindings, mod_reduce(plus_exact + minus_exact, m),
              mod_reduce(Int(n) * binomial(n, k) * binomial(p, i), m)));
        }
  }
  sort_records(records);
  return records;
}

std::vector<VerificationRecord> builtin_powersum(std::int64_t p_lo,
                                                 std::int64_t p_hi) {
  std::vector<VerificationRecord> records;
  for (const std::int64_t p : primes_in_range(p_lo, p_hi, false)) {
    const PrimeModulus m(p, 1);
    for (std::int64_t k = 0; k <= 2 * (p - 1); ++k) {
      if (k > 0 && k % (p - 1) == 0) continue;  // theorem hypothesis
      records.push_back(make_record("powersum", {{"p", p}, {"k", k}},
                                    power_sum_mod_p(k, m), Residue(0, m)));
    }
  }
  sort_records(records);
  return records;
}

std::vector<VerificationRecord> builtin_suite(const std::string& theorem,
                                              std::int64_t p_lo,
                                              std::int64_t p_hi,
                                              std::int64_t r_lo,
                                              std::int64_t r_hi,
                                              std::int64_t s_lo,
                                              std::int64_t s_hi) {
  if (theorem == "z1") return builtin_z1(p_lo, p_hi);
  if (theorem == "z2") return builtin_z2(p_lo, p_hi, r_lo, r_hi);
  if (theorem == "z3") return builtin_z3(p_lo, p_hi, r_lo, r_hi, s_lo, s_hi);
  if (theorem == "lucas") return builtin_lucas(p_lo, p_hi);
  if (theorem == "babbage") return builtin_babbage(p_lo, p_hi);
  if (theorem == "bailey") return builtin_bailey(p_lo, p_hi);
  if (theorem == "powersum") return builtin_powersum(p_lo, p_hi);
  throw std::invalid_argument("unknown theorem: " + theorem);
}

}  // namespace binomod
