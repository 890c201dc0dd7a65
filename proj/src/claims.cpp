#include "binomod/claims.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "binomod/supercong.hpp"

namespace binomod {

ExprPtr make_literal(Int value) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Literal;
  e->value = std::move(value);
  return e;
}

ExprPtr make_variable(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Variable;
  e->name = std::move(name);
  return e;
}

ExprPtr make_binary(Expr::Kind kind, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

ExprPtr make_eta(ExprPtr arg) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Eta;
  e->lhs = std::move(arg);
  return e;
}

ExprPtr make_sum(std::string var, ExprPtr lo, ExprPtr hi, ExprPtr body) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Sum;
  e->name = std::move(var);
  e->lhs = std::move(lo);
  e->rhs = std::move(hi);
  e->body = std::move(body);
  return e;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  Ident,
  Integer,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Colon,
  Plus,
  Minus,
  Star,
  Caret,
  DotDot,
  CongEq,  // ===
  End,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Integer: return "integer";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Caret: return "'^'";
    case Tok::DotDot: return "'..'";
    case Tok::CongEq: return "'==='";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  const auto push = [&](Tok kind, std::string text, int c) {
    out.push_back({kind, std::move(text), line, c});
  };
  while (i < src.size()) {
    const char ch = src[i];
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++col;
      ++i;
      continue;
    }
    const int start_col = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      push(Tok::Ident, src.substr(i, j - i), start_col);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      push(Tok::Integer, src.substr(i, j - i), start_col);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (ch == '=' && i + 2 < src.size() && src[i + 1] == '=' && src[i + 2] == '=') {
      push(Tok::CongEq, "===", start_col);
      i += 3;
      col += 3;
      continue;
    }
    if (ch == '.' && i + 1 < src.size() && src[i + 1] == '.') {
      push(Tok::DotDot, "..", start_col);
      i += 2;
      col += 2;
      continue;
    }
    Tok kind;
    switch (ch) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case ',': kind = Tok::Comma; break;
      case ':': kind = Tok::Colon; break;
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '^': kind = Tok::Caret; break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", line,
                         start_col, {});
    }
    push(kind, std::string(1, ch), start_col);
    ++i;
    ++col;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "forall", "in", "primes", "odd_primes", "mod", "C", "S", "eta", "sum"};
  return words;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(lex(text)) {}

  ClaimAst parse_claim_body(const std::string& original_text) {
    ClaimAst claim;
    claim.text = original_text;

    if (peek().kind == Tok::LBracket) {
      advance();
      claim.id = expect(Tok::Ident, "claim id").text;
      claim.id_explicit = true;
      expect(Tok::RBracket, "']' after claim id");
    }
    expect_keyword("forall");
    claim.binders.push_back(parse_binder());
    while (peek().kind == Tok::Comma) {
      advance();
      claim.binders.push_back(parse_binder());
    }
    expect(Tok::Colon, "':' after binders");
    claim.lhs = parse_expr();
    expect(Tok::CongEq, "'==='");
    claim.rhs = parse_expr();
    expect(Tok::LParen, "'(mod ...)'");
    expect_keyword("mod");
    claim.modulus = parse_expr();
    expect(Tok::RParen, "')' closing the modulus");
    if (peek().kind != Tok::End) fail({"end of input"});

    check_binders(claim);
    if (!claim.id_explicit) claim.id = claim_content_hash(claim.text);
    return claim;
  }

  ExprPtr parse_standalone_expr() {
    ExprPtr e = parse_expr();
    if (peek().kind != Tok::End) fail({"end of input"});
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string what = "syntax error: unexpected ";
    what += t.kind == Tok::End ? "end of input"
                               : "'" + t.text + "'";
    if (!expected.empty()) {
      what += ", expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) what += i + 1 == expected.size() ? " or " : ", ";
        what += expected[i];
      }
    }
    throw ParseError(what, t.line, t.column, std::move(expected));
  }

  Token expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail({what});
    return advance();
  }

  void expect_keyword(const std::string& word) {
    if (peek().kind != Tok::Ident || peek().text != word) fail({"'" + word + "'"});
    advance();
  }

  std::int64_t parse_signed_int() {
    bool negative = false;
    if (peek().kind == Tok::Minus) {
      advance();
      negative = true;
    }
    const Token t = expect(Tok::Integer, "integer");
    try {
      const std::int64_t v = std::stoll(t.text);
      return negative ? -v : v;
    } catch (const std::out_of_range&) {
      throw ParseError("integer bound out of range", t.line, t.column,
                       {"integer"});
    }
  }

  std::string parse_new_name(const char* role) {
    const Token t = expect(Tok::Ident, role);
    if (reserved_words().count(t.text))
      throw ParseError("'" + t.text + "' is a reserved word", t.line, t.column,
                       {role});
    return t.text;
  }

  Binder parse_binder() {
    Binder b;
    b.name = parse_new_name("binder name");
    expect_keyword("in");
    if (peek().kind == Tok::Ident &&
        (peek().text == "primes" || peek().text == "odd_primes")) {
      b.kind = peek().text == "primes" ? RangeKind::Primes : RangeKind::OddPrimes;
      advance();
      expect(Tok::LParen, "'('");
      b.lo = parse_signed_int();
      expect(Tok::DotDot, "'..'");
      b.hi = parse_signed_int();
      expect(Tok::RParen, "')'");
    } else {
      b.kind = RangeKind::IntRange;
      b.lo = parse_signed_int();
      expect(Tok::DotDot, "'..'");
      b.hi = parse_signed_int();
    }
    return b;
  }

  // expr := term { (+|-) term }
  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Tok op = advance().kind;
      e = make_binary(op == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub, e,
                      parse_term());
    }
    return e;
  }

  // term := factor { * factor }
  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    while (peek().kind == Tok::Star) {
      advance();
      e = make_binary(Expr::Kind::Mul, e, parse_factor());
    }
    return e;
  }

  // factor := atom [ ^ factor ]   (right-associative)
  ExprPtr parse_factor() {
    ExprPtr base = parse_atom();
    if (peek().kind == Tok::Caret) {
      advance();
      return make_binary(Expr::Kind::Pow, base, parse_factor());
    }
    return base;
  }

  ExprPtr parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Integer: {
        advance();
        return make_literal(Int(t.text));
      }
      case Tok::LParen: {
        advance();
        ExprPtr e = parse_expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        if (t.text == "C" || t.text == "S") {
          const Expr::Kind kind =
              t.text == "C" ? Expr::Kind::Binomial : Expr::Kind::Stirling;
          advance();
          expect(Tok::LParen, "'('");
          ExprPtr a = parse_expr();
          expect(Tok::Comma, "','");
          ExprPtr b = parse_expr();
          expect(Tok::RParen, "')'");
          return make_binary(kind, a, b);
        }
        if (t.text == "eta") {
          advance();
          expect(Tok::LParen, "'('");
          ExprPtr a = parse_expr();
          expect(Tok::RParen, "')'");
          return make_eta(a);
        }
        if (t.text == "sum") {
          advance();
          expect(Tok::LParen, "'('");
          std::string var = parse_new_name("summation variable");
          expect(Tok::Comma, "','");
          ExprPtr lo = parse_expr();
          expect(Tok::Comma, "','");
          ExprPtr hi = parse_expr();
          expect(Tok::Comma, "','");
          ExprPtr body = parse_expr();
          expect(Tok::RParen, "')'");
          return make_sum(std::move(var), lo, hi, body);
        }
        if (reserved_words().count(t.text))
          throw ParseError("'" + t.text + "' is a reserved word", t.line,
                           t.column, {"identifier"});
        advance();
        return make_variable(t.text);
      }
      default:
        fail({"integer", "identifier", "'('"});
    }
  }

  void check_binders(const ClaimAst& claim) {
    std::set<std::string> names;
    for (const Binder& b : claim.binders) {
      if (!names.insert(b.name).second)
        throw Error(Errc::DuplicateBinder,
                    "duplicate binder '" + b.name + "'");
    }
    check_bound(*claim.lhs, names);
    check_bound(*claim.rhs, names);
    check_bound(*claim.modulus, names);
  }

  static void check_bound(const Expr& e, std::set<std::string>& bound) {
    switch (e.kind) {
      case Expr::Kind::Literal:
        return;
      case Expr::Kind::Variable:
        if (!bound.count(e.name))
          throw Error(Errc::UnboundVariable,
                      "unbound variable '" + e.name + "'");
        return;
      case Expr::Kind::Eta:
        check_bound(*e.lhs, bound);
        return;
      case Expr::Kind::Sum: {
        check_bound(*e.lhs, bound);
        check_bound(*e.rhs, bound);
        const bool shadowed = bound.count(e.name) > 0;
        bound.insert(e.name);
        check_bound(*e.body, bound);
        if (!shadowed) bound.erase(e.name);
        return;
      }
      default:
        check_bound(*e.lhs, bound);
        check_bound(*e.rhs, bound);
        return;
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

ClaimAst parse_claim(const std::string& text) {
  return Parser(text).parse_claim_body(text);
}

ExprPtr parse_expression(const std::string& text) {
  return Parser(text).parse_standalone_expr();
}

std::vector<ClaimAst> parse_claim_file(std::istream& in) {
  std::vector<ClaimAst> claims;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto is_blank = std::all_of(line.begin(), line.end(), [](char ch) {
      return std::isspace(static_cast<unsigned char>(ch));
    });
    if (is_blank) continue;
    // Trim so the stored claim text (and its content hash) is stable.
    const std::size_t first = line.find_first_not_of(" \t\r");
    const std::size_t last = line.find_last_not_of(" \t\r");
    const std::string trimmed = line.substr(first, last - first + 1);
    try {
      claims.push_back(parse_claim(trimmed));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(),
                       line_no, e.column(), e.expected());
    }
  }
  return claims;
}

std::vector<ClaimAst> parse_claim_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open claim file: " + path);
  return parse_claim_file(in);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Int eval_impl(const Expr& e, Env& env) {
  switch (e.kind) {
    case Expr::Kind::Literal:
      return e.value;
    case Expr::Kind::Variable: {
      const auto it = env.find(e.name);
      if (it == env.end())
        throw Error(Errc::UnboundVariable, "unbound variable '" + e.name + "'");
      return it->second;
    }
    case Expr::Kind::Add:
      return eval_impl(*e.lhs, env) + eval_impl(*e.rhs, env);
    case Expr::Kind::Sub:
      return eval_impl(*e.lhs, env) - eval_impl(*e.rhs, env);
    case Expr::Kind::Mul:
      return eval_impl(*e.lhs, env) * eval_impl(*e.rhs, env);
    case Expr::Kind::Pow: {
      const Int base = eval_impl(*e.lhs, env);
      const Int exponent = eval_impl(*e.rhs, env);
      if (exponent < 0)
        throw Error(Errc::NegativeExponent,
                    "exponent evaluates to " + exponent.str());
      if (base == 0) return exponent == 0 ? 1 : 0;
      if (base == 1) return 1;
      if (base == -1) return (exponent & 1) != 0 ? -1 : 1;
      if (exponent > 1'000'000)
        throw Error(Errc::SizeLimit, "exponent too large: " + exponent.str());
      return boost::multiprecision::pow(base, exponent.convert_to<unsigned>());
    }
    case Expr::Kind::Binomial:
      return binomial(eval_impl(*e.lhs, env), eval_impl(*e.rhs, env));
    case Expr::Kind::Stirling:
      return stirling2(eval_impl(*e.lhs, env), eval_impl(*e.rhs, env));
    case Expr::Kind::Eta:
      return Int(eta(eval_impl(*e.lhs, env)));
    case Expr::Kind::Sum: {
      const Int lo = eval_impl(*e.lhs, env);
      const Int hi = eval_impl(*e.rhs, env);
      Int total = 0;
      const auto it = env.find(e.name);
      std::optional<Int> saved;
      if (it != env.end()) saved = it->second;
      for (Int v = lo; v <= hi; ++v) {
        env[e.name] = v;
        total += eval_impl(*e.body, env);
      }
      if (saved)
        env[e.name] = *saved;
      else
        env.erase(e.name);
      return total;
    }
  }
  throw std::logic_error("eval_impl: unreachable");
}

}  // namespace

Int eval_expr(const Expr& e, const Env& env) {
  Env mutable_env = env;
  return eval_impl(e, mutable_env);
}

// ---------------------------------------------------------------------------
// Printing and structural comparison

namespace {

// Precedence levels: Add/Sub 1, Mul 2, Pow 3, atoms 4.
int level_of(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul: return 2;
    case Expr::Kind::Pow: return 3;
    default: return 4;
  }
}

void print_expr(const Expr& e, int min_level, std::string& out) {
  const int level = level_of(e);
  const bool parens = level < min_level;
  if (parens) out += '(';
  switch (e.kind) {
    case Expr::Kind::Literal:
      if (e.value < 0) {
        // The grammar has no unary minus; render as a subtraction.
        out += "(0-" + Int(-e.value).str() + ")";
      } else {
        out += e.value.str();
      }
      break;
    case Expr::Kind::Variable:
      out += e.name;
      break;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      print_expr(*e.lhs, 1, out);
      out += e.kind == Expr::Kind::Add ? "+" : "-";
      print_expr(*e.rhs, 2, out);
      break;
    case Expr::Kind::Mul:
      print_expr(*e.lhs, 2, out);
      out += "*";
      print_expr(*e.rhs, 3, out);
      break;
    case Expr::Kind::Pow:
      print_expr(*e.lhs, 4, out);
      out += "^";
      print_expr(*e.rhs, 3, out);
      break;
    case Expr::Kind::Binomial:
    case Expr::Kind::Stirling:
      out += e.kind == Expr::Kind::Binomial ? "C(" : "S(";
      print_expr(*e.lhs, 1, out);
      out += ",";
      print_expr(*e.rhs, 1, out);
      out += ")";
      break;
    case Expr::Kind::Eta:
      out += "eta(";
      print_expr(*e.lhs, 1, out);
      out += ")";
      break;
    case Expr::Kind::Sum:
      out += "sum(" + e.name + ",";
      print_expr(*e.lhs, 1, out);
      out += ",";
      print_expr(*e.rhs, 1, out);
      out += ",";
      print_expr(*e.body, 1, out);
      out += ")";
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print_expr(e, 1, out);
  return out;
}

std::string to_string(const ClaimAst& claim) {
  std::string out;
  if (claim.id_explicit) out += "[" + claim.id + "] ";
  out += "forall ";
  for (std::size_t i = 0; i < claim.binders.size(); ++i) {
    if (i > 0) out += ", ";
    const Binder& b = claim.binders[i];
    out += b.name + " in ";
    switch (b.kind) {
      case RangeKind::IntRange:
        out += std::to_string(b.lo) + ".." + std::to_string(b.hi);
        break;
      case RangeKind::Primes:
        out += "primes(" + std::to_string(b.lo) + ".." + std::to_string(b.hi) + ")";
        break;
      case RangeKind::OddPrimes:
        out += "odd_primes(" + std::to_string(b.lo) + ".." + std::to_string(b.hi) + ")";
        break;
    }
  }
  out += ": " + to_string(*claim.lhs) + " === " + to_string(*claim.rhs) +
         " (mod " + to_string(*claim.modulus) + ")";
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Literal:
      return a.value == b.value;
    case Expr::Kind::Variable:
      return a.name == b.name;
    case Expr::Kind::Eta:
      return structurally_equal(*a.lhs, *b.lhs);
    case Expr::Kind::Sum:
      return a.name == b.name && structurally_equal(*a.lhs, *b.lhs) &&
             structurally_equal(*a.rhs, *b.rhs) &&
             structurally_equal(*a.body, *b.body);
    default:
      return structurally_equal(*a.lhs, *b.lhs) &&
             structurally_equal(*a.rhs, *b.rhs);
  }
}

bool structurally_equal(const ClaimAst& a, const ClaimAst& b) {
  if (a.binders.size() != b.binders.size()) return false;
  for (std::size_t i = 0; i < a.binders.size(); ++i) {
    const Binder &x = a.binders[i], &y = b.binders[i];
    if (x.name != y.name || x.kind != y.kind || x.lo != y.lo || x.hi != y.hi)
      return false;
  }
  return structurally_equal(*a.lhs, *b.lhs) &&
         structurally_equal(*a.rhs, *b.rhs) &&
         structurally_equal(*a.modulus, *b.modulus);
}

std::string claim_content_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (const char ch : text) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace binomod
