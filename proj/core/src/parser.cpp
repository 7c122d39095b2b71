#include "cotype/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cotype/error.hpp"

namespace cotype {

namespace {

struct Token {
  enum class Kind {
    Ident, LBrace, RBrace, LParen, RParen, Comma, Semi, Slash, Eq, Bar, Amp,
    ArrowL,  // <-
    ArrowR,  // ->
    End,
  };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1, col = 1;
};

[[noreturn]] void syntax_error(const Token& t, const std::string& msg) {
  throw Error(ErrorCode::SyntaxError,
              std::to_string(t.line) + ":" + std::to_string(t.col) + ": " +
                  msg + (t.kind == Token::Kind::End
                             ? " (at end of input)"
                             : " (at '" + t.text + "')"));
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::string s) {
    out.push_back({k, std::move(s), line, col});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_'))
        ++j;
      push(Token::Kind::Ident, text.substr(i, j - i));
      col += j - i;
      i = j;
      continue;
    }
    switch (c) {
      case '{': push(Token::Kind::LBrace, "{"); break;
      case '}': push(Token::Kind::RBrace, "}"); break;
      case '(': push(Token::Kind::LParen, "("); break;
      case ')': push(Token::Kind::RParen, ")"); break;
      case ',': push(Token::Kind::Comma, ","); break;
      case ';': push(Token::Kind::Semi, ";"); break;
      case '/': push(Token::Kind::Slash, "/"); break;
      case '=': push(Token::Kind::Eq, "="); break;
      case '|': push(Token::Kind::Bar, "|"); break;
      case '&': push(Token::Kind::Amp, "&"); break;
      case '<':
        if (i + 1 < text.size() && text[i + 1] == '-') {
          push(Token::Kind::ArrowL, "<-");
          ++i;
          ++col;
        } else {
          push(Token::Kind::Ident, "<");
          syntax_error(out.back(), "expected '<-'");
        }
        break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(Token::Kind::ArrowR, "->");
          ++i;
          ++col;
        } else {
          push(Token::Kind::Ident, "-");
          syntax_error(out.back(), "expected '->'");
        }
        break;
      default: {
        push(Token::Kind::Ident, std::string(1, c));
        syntax_error(out.back(), "unexpected character");
      }
    }
    ++i;
    ++col;
  }
  Token end;
  end.kind = Token::Kind::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

const std::set<std::string> kKeywords = {
    "constructors", "system",    "program", "inductive",
    "coinductive",  "bundle",    "type",    "with",
    "principal"};

// Raw (unresolved) syntax for one equation.
struct RawEquation {
  std::string fn;
  std::size_t fn_line = 0, fn_col = 0;
  std::vector<TermPtr> patterns;       // resolved against vocab only
  std::size_t rhs_begin = 0, rhs_end = 0;  // token span
};

struct RawProgram {
  std::string name;
  std::optional<std::string> principal;
  std::vector<RawEquation> equations;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Session run();

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool at(Token::Kind k) const { return peek().kind == k; }
  bool at_ident(const std::string& s) const {
    return peek().kind == Token::Kind::Ident && peek().text == s;
  }
  const Token& expect(Token::Kind k, const std::string& what) {
    if (!at(k)) syntax_error(peek(), "expected " + what);
    return next();
  }
  std::string expect_ident(const std::string& what) {
    if (!at(Token::Kind::Ident)) syntax_error(peek(), "expected " + what);
    return next().text;
  }

  void parse_constructors();
  DataSystem parse_system();
  Bundle parse_bundle(Polarity pol);
  RawProgram parse_program_block();
  TermPtr parse_pattern(const Vocabulary& v);
  ConstructorStatement statement_from_pattern(
      const TermPtr& pat, const std::map<std::string, std::string>& typing,
      const Token& where);
  void skip_to_semi(RawEquation& eq);
  TermPtr parse_rhs(std::size_t& pos, std::size_t end,
                    const std::map<std::string, std::size_t>& signatures,
                    const Vocabulary& v);

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::optional<Vocabulary> vocab_;
  std::vector<DataSystem> systems_;
  std::vector<RawProgram> programs_;
};

void Parser::parse_constructors() {
  expect(Token::Kind::LBrace, "'{'");
  std::vector<Constructor> ctors;
  while (!at(Token::Kind::RBrace)) {
    std::string name = expect_ident("constructor name");
    expect(Token::Kind::Slash, "'/'");
    const Token& ar = toks_[pos_];
    std::string arity = expect_ident("arity");
    std::size_t val = 0;
    for (char c : arity) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        syntax_error(ar, "arity must be a number");
      val = val * 10 + static_cast<std::size_t>(c - '0');
    }
    ctors.push_back({name, val});
    if (at(Token::Kind::Comma)) next();
  }
  next();  // }
  if (vocab_.has_value())
    syntax_error(peek(), "duplicate constructors block");
  vocab_ = Vocabulary(std::move(ctors));
}

TermPtr Parser::parse_pattern(const Vocabulary& v) {
  const Token& tok = peek();
  std::string name = expect_ident("pattern");
  std::vector<TermPtr> args;
  bool parens = false;
  if (at(Token::Kind::LParen)) {
    parens = true;
    next();
    while (!at(Token::Kind::RParen)) {
      args.push_back(parse_pattern(v));
      if (at(Token::Kind::Comma)) next();
    }
    next();
  }
  if (auto c = v.find(name)) {
    if (c->arity != args.size())
      syntax_error(tok, "constructor " + name + " has arity " +
                            std::to_string(c->arity));
    return make_ctor(*c, std::move(args));
  }
  if (parens) syntax_error(tok, "unknown constructor " + name);
  return make_var(name);
}

ConstructorStatement Parser::statement_from_pattern(
    const TermPtr& pat, const std::map<std::string, std::string>& typing,
    const Token& where) {
  if (pat->kind != Term::Kind::Ctor)
    syntax_error(where, "rule pattern must start with a constructor");
  ConstructorStatement stmt;
  stmt.ctor = {pat->name, pat->args.size()};
  for (const TermPtr& a : pat->args) {
    if (a->kind != Term::Kind::Variable)
      syntax_error(where,
                   "rule pattern components must be variables (got " +
                       to_string(a) + ")");
    auto it = typing.find(a->name);
    if (it == typing.end())
      syntax_error(where, "component variable " + a->name + " is untyped");
    stmt.component_types.push_back(it->second);
  }
  return stmt;
}

Bundle Parser::parse_bundle(Polarity pol) {
  Bundle b;
  b.polarity = pol;
  if (!at_ident("bundle")) syntax_error(peek(), "expected 'bundle'");
  next();
  expect(Token::Kind::LBrace, "'{'");
  const Vocabulary& v = *vocab_;
  while (!at(Token::Kind::RBrace)) {
    if (at_ident("type")) {
      next();
      b.types.push_back(expect_ident("type name"));
      expect(Token::Kind::Semi, "';'");
      continue;
    }
    const Token& head_tok = peek();
    std::string type = expect_ident("type name");
    expect(Token::Kind::LParen, "'('");
    TermPtr pat = parse_pattern(v);
    expect(Token::Kind::RParen, "')'");

    auto parse_typing_atom = [&](std::map<std::string, std::string>& typing) {
      std::string t = expect_ident("type name");
      expect(Token::Kind::LParen, "'('");
      std::string var = expect_ident("variable");
      expect(Token::Kind::RParen, "')'");
      if (!typing.emplace(var, t).second)
        syntax_error(head_tok, "variable " + var + " typed twice");
    };

    if (pol == Polarity::Inductive) {
      std::map<std::string, std::string> typing;
      if (at(Token::Kind::ArrowL)) {
        next();
        parse_typing_atom(typing);
        while (at(Token::Kind::Amp)) {
          next();
          parse_typing_atom(typing);
        }
      }
      expect(Token::Kind::Semi, "';'");
      b.inductive_rules.push_back(
          {statement_from_pattern(pat, typing, head_tok), type});
    } else {
      if (pat->kind != Term::Kind::Variable)
        syntax_error(head_tok, "coinductive rule head must be T(x)");
      expect(Token::Kind::ArrowR, "'->'");
      std::vector<ConstructorStatement> disjuncts;
      while (true) {
        const Token& dtok = peek();
        TermPtr dpat = parse_pattern(v);
        std::map<std::string, std::string> typing;
        if (at_ident("with")) {
          next();
          parse_typing_atom(typing);
          while (at(Token::Kind::Amp)) {
            next();
            parse_typing_atom(typing);
          }
        }
        disjuncts.push_back(statement_from_pattern(dpat, typing, dtok));
        if (at(Token::Kind::Bar)) {
          next();
          continue;
        }
        break;
      }
      expect(Token::Kind::Semi, "';'");
      auto& slot = b.coinductive_rules[type];
      if (!slot.empty())
        syntax_error(head_tok, "second deconstruction rule for " + type);
      slot = std::move(disjuncts);
    }
  }
  next();  // }
  return b;
}

DataSystem Parser::parse_system() {
  DataSystem ds{expect_ident("system name"), *vocab_, {}};
  expect(Token::Kind::LBrace, "'{'");
  while (!at(Token::Kind::RBrace)) {
    if (at_ident("inductive")) {
      next();
      ds.bundles.push_back(parse_bundle(Polarity::Inductive));
    } else if (at_ident("coinductive")) {
      next();
      ds.bundles.push_back(parse_bundle(Polarity::Coinductive));
    } else {
      syntax_error(peek(), "expected 'inductive' or 'coinductive'");
    }
  }
  next();  // }
  return ds;
}

void Parser::skip_to_semi(RawEquation& eq) {
  eq.rhs_begin = pos_;
  int depth = 0;
  while (!at(Token::Kind::End)) {
    if (at(Token::Kind::LParen)) ++depth;
    if (at(Token::Kind::RParen)) --depth;
    if (at(Token::Kind::Semi) && depth == 0) break;
    ++pos_;
  }
  eq.rhs_end = pos_;
  expect(Token::Kind::Semi, "';'");
}

RawProgram Parser::parse_program_block() {
  RawProgram rp;
  rp.name = expect_ident("program name");
  expect(Token::Kind::LBrace, "'{'");
  const Vocabulary& v = *vocab_;
  while (!at(Token::Kind::RBrace)) {
    if (at_ident("principal")) {
      next();
      rp.principal = expect_ident("function name");
      expect(Token::Kind::Semi, "';'");
      continue;
    }
    RawEquation eq;
    const Token& ftok = peek();
    eq.fn = expect_ident("function name");
    eq.fn_line = ftok.line;
    eq.fn_col = ftok.col;
    if (v.contains(eq.fn) || kKeywords.count(eq.fn))
      syntax_error(ftok, "function name clashes with " + eq.fn);
    if (at(Token::Kind::LParen)) {
      next();
      while (!at(Token::Kind::RParen)) {
        eq.patterns.push_back(parse_pattern(v));
        if (at(Token::Kind::Comma)) next();
      }
      next();
    }
    expect(Token::Kind::Eq, "'='");
    skip_to_semi(eq);
    rp.equations.push_back(std::move(eq));
  }
  next();  // }
  return rp;
}

TermPtr Parser::parse_rhs(std::size_t& pos, std::size_t end,
                          const std::map<std::string, std::size_t>& signatures,
                          const Vocabulary& v) {
  if (pos >= end) syntax_error(toks_[pos], "expected a term");
  const Token& tok = toks_[pos];
  if (tok.kind != Token::Kind::Ident) syntax_error(tok, "expected a term");
  std::string name = tok.text;
  ++pos;
  std::vector<TermPtr> args;
  bool parens = false;
  if (pos < end && toks_[pos].kind == Token::Kind::LParen) {
    parens = true;
    ++pos;
    while (pos < end && toks_[pos].kind != Token::Kind::RParen) {
      args.push_back(parse_rhs(pos, end, signatures, v));
      if (pos < end && toks_[pos].kind == Token::Kind::Comma) ++pos;
    }
    if (pos >= end || toks_[pos].kind != Token::Kind::RParen)
      syntax_error(toks_[pos < toks_.size() ? pos : toks_.size() - 1],
                   "expected ')'");
    ++pos;
  }
  if (auto c = v.find(name)) {
    if (c->arity != args.size())
      syntax_error(tok, "constructor " + name + " has arity " +
                            std::to_string(c->arity));
    return make_ctor(*c, std::move(args));
  }
  auto sig = signatures.find(name);
  if (sig != signatures.end()) {
    if (sig->second != args.size())
      syntax_error(tok, "function " + name + " has arity " +
                            std::to_string(sig->second));
    return make_fun(name, sig->second, std::move(args));
  }
  if (parens) syntax_error(tok, "unknown identifier " + name);
  return make_var(name);
}

Session Parser::run() {
  while (!at(Token::Kind::End)) {
    if (at_ident("constructors")) {
      next();
      parse_constructors();
    } else if (at_ident("system")) {
      if (!vocab_) syntax_error(peek(), "constructors block must come first");
      next();
      systems_.push_back(parse_system());
    } else if (at_ident("program")) {
      if (!vocab_) syntax_error(peek(), "constructors block must come first");
      next();
      programs_.push_back(parse_program_block());
    } else {
      syntax_error(peek(), "expected 'constructors', 'system' or 'program'");
    }
  }
  if (!vocab_)
    throw Error(ErrorCode::SyntaxError, "missing constructors block");

  Session s;
  s.vocabulary = *vocab_;
  for (DataSystem& ds : systems_) {
    std::string name = ds.name;
    s.systems.emplace(name, validate(std::move(ds)));
  }

  // All program blocks share one function space; collect signatures first,
  // then resolve right-hand sides.
  std::map<std::string, std::size_t> signatures;
  const std::size_t m = std::max<std::size_t>(1, vocab_->max_arity());
  for (std::size_t i = 1; i <= m; ++i) signatures[destructor_name(i, m)] = 1;
  signatures[discriminator_name()] = vocab_->size() + 1;
  for (const RawProgram& rp : programs_) {
    for (const RawEquation& eq : rp.equations) {
      auto [it, inserted] = signatures.emplace(eq.fn, eq.patterns.size());
      if (!inserted && it->second != eq.patterns.size())
        throw Error(ErrorCode::ArityMismatch,
                    std::to_string(eq.fn_line) + ":" +
                        std::to_string(eq.fn_col) + ": function " + eq.fn +
                        " redefined with different arity");
    }
  }

  Program merged;
  merged.vocabulary = *vocab_;
  for (const RawProgram& rp : programs_) {
    std::optional<FunctionId> first;
    for (const RawEquation& eq : rp.equations) {
      std::size_t pos = eq.rhs_begin;
      TermPtr rhs = parse_rhs(pos, eq.rhs_end, signatures, *vocab_);
      if (pos != eq.rhs_end) syntax_error(toks_[pos], "trailing tokens in rhs");
      FunctionId fid{eq.fn, eq.patterns.size()};
      if (!first) first = fid;
      merged.equations.push_back({fid, eq.patterns, rhs});
    }
    FunctionId principal;
    if (rp.principal) {
      auto it = signatures.find(*rp.principal);
      if (it == signatures.end())
        throw Error(ErrorCode::UnknownIdentifier,
                    "principal " + *rp.principal + " is not defined");
      principal = {*rp.principal, it->second};
    } else if (first) {
      principal = *first;
    } else {
      principal = {discriminator_name(), vocab_->size() + 1};
    }
    s.program_principals.emplace(rp.name, principal);
  }
  merged.principal = s.program_principals.empty()
                         ? FunctionId{discriminator_name(), vocab_->size() + 1}
                         : s.program_principals.begin()->second;
  s.program = check_wellformed(std::move(merged));
  return s;
}

}  // namespace

const ValidatedSystem& Session::system(const std::string& name) const {
  auto it = systems.find(name);
  if (it == systems.end())
    throw Error(ErrorCode::UnknownIdentifier, "unknown system: " + name);
  return it->second;
}

FunctionId Session::principal_of(const std::string& name) const {
  auto it = program_principals.find(name);
  if (it == program_principals.end())
    throw Error(ErrorCode::UnknownIdentifier, "unknown program: " + name);
  return it->second;
}

Session parse_session(const std::string& text) { return Parser(text).run(); }

Session parse_session_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::SyntaxError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_session(buf.str());
}

TermPtr parse_term(const Session& s, const std::string& text) {
  struct TermParser {
    const Session& s;
    const std::string& text;
    std::size_t i = 0;

    void skip_ws() {
      while (i < text.size() &&
             std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
    }
    TermPtr parse() {
      skip_ws();
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) ||
              text[i] == '_'))
        ++i;
      if (i == start)
        throw Error(ErrorCode::SyntaxError,
                    "expected an identifier in term at offset " +
                        std::to_string(i));
      std::string name = text.substr(start, i - start);
      std::vector<TermPtr> args;
      bool parens = false;
      skip_ws();
      if (i < text.size() && text[i] == '(') {
        parens = true;
        ++i;
        skip_ws();
        while (i < text.size() && text[i] != ')') {
          args.push_back(parse());
          skip_ws();
          if (i < text.size() && text[i] == ',') {
            ++i;
            skip_ws();
          }
        }
        if (i >= text.size())
          throw Error(ErrorCode::SyntaxError, "unbalanced '(' in term");
        ++i;
      }
      if (auto c = s.vocabulary.find(name)) {
        if (c->arity != args.size())
          throw Error(ErrorCode::ArityMismatch,
                      "constructor " + name + " has arity " +
                          std::to_string(c->arity));
        return make_ctor(*c, std::move(args));
      }
      if (auto f = s.program.find_function(name)) {
        if (f->arity != args.size())
          throw Error(ErrorCode::ArityMismatch,
                      "function " + name + " has arity " +
                          std::to_string(f->arity));
        return make_fun(f->name, f->arity, std::move(args));
      }
      if (parens)
        throw Error(ErrorCode::UnknownIdentifier,
                    "unknown identifier " + name);
      return make_var(name);
    }
  };
  TermParser tp{s, text};
  TermPtr t = tp.parse();
  tp.skip_ws();
  if (tp.i != text.size())
    throw Error(ErrorCode::SyntaxError, "trailing characters in term");
  return t;
}

}  // namespace cotype
