#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "binomod/errors.hpp"
#include "binomod/exact.hpp"

namespace binomod {

/// Expression node of the claim language. Trees are immutable and shared.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    Literal,   // value
    Variable,  // name
    Add,       // lhs + rhs
    Sub,       // lhs - rhs
    Mul,       // lhs * rhs
    Pow,       // lhs ^ rhs, rhs must evaluate to a natural
    Binomial,  // C(lhs, rhs)
    Stirling,  // S(lhs, rhs)
    Eta,       // eta(lhs)
    Sum,       // sum(name, lhs, rhs, body), bounds inclusive
  };

  Kind kind;
  Int value;
  std::string name;
  ExprPtr lhs, rhs, body;
};

ExprPtr make_literal(Int value);
ExprPtr make_variable(std::string name);
ExprPtr make_binary(Expr::Kind kind, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_eta(ExprPtr arg);
ExprPtr make_sum(std::string var, ExprPtr lo, ExprPtr hi, ExprPtr body);

enum class RangeKind { IntRange, Primes, OddPrimes };

struct Binder {
  std::string name;
  RangeKind kind;
  std::int64_t lo;
  std::int64_t hi;
};

/// A parsed congruence claim: quantified binders, two sides, and a modulus
/// expression that is re-evaluated per binding.
struct ClaimAst {
  std::string id;  // explicit [tag], or a content hash of the claim text
  bool id_explicit = false;
  std::vector<Binder> binders;
  ExprPtr lhs, rhs, modulus;
  std::string text;  // source text the claim was parsed from
};

/// Parses one claim. Throws ParseError (with position and expected tokens),
/// or Error with Errc::DuplicateBinder / Errc::UnboundVariable.
ClaimAst parse_claim(const std::string& text);

/// Parses a bare expression (no binders, no congruence).
ExprPtr parse_expression(const std::string& text);

/// Parses a claim file: one claim per line, '#' starts a comment, blank
/// lines ignored. Parse errors are rethrown with the file line number.
std::vector<ClaimAst> parse_claim_file(std::istream& in);
std::vector<ClaimAst> parse_claim_file(const std::string& path);

using Env = std::map<std::string, Int>;

/// Exact big-integer evaluation. Throws Error with Errc::UnboundVariable or
/// Errc::NegativeExponent.
Int eval_expr(const Expr& e, const Env& env);

/// Pretty-printers; the printed form re-parses to a structurally equal tree.
std::string to_string(const Expr& e);
std::string to_string(const ClaimAst& claim);

bool structurally_equal(const Expr& a, const Expr& b);
/// Compares binders and the three expressions (claim ids do not take part).
bool structurally_equal(const ClaimAst& a, const ClaimAst& b);

/// FNV-1a hash of the claim text, as 16 hex digits; the default claim id.
std::string claim_content_hash(const std::string& text);

}  // namespace binomod
