#include <doctest.h>

#include "cotype/parser.hpp"
#include "cotype/typecheck.hpp"
#include "helpers.hpp"

using namespace cotype;
using namespace cotype::testing;

TEST_SUITE("parser") {
  TEST_CASE("all shipped fixture files parse and validate") {
    for (const char* f : {"alt.ct", "dt.ct", "omega.ct", "running.ct",
                          "words.ct", "ze.ct"}) {
      CAPTURE(f);
      CHECK_NOTHROW(parse_session_file(fixture(f)));
    }
  }

  TEST_CASE("vocabulary, systems and principals land where expected") {
    Session s = parse_session_file(fixture("words.ct"));
    CHECK(s.vocabulary.size() == 3);
    CHECK(s.vocabulary.index_of("e") == 0);
    CHECK(s.systems.count("Words") == 1);
    CHECK(s.systems.count("WOmega") == 1);
    CHECK(s.system("Words").polarity_of("W") == Polarity::Inductive);
    CHECK(s.system("WOmega").polarity_of("W") == Polarity::Coinductive);
    CHECK(s.principal_of("Tl") == FunctionId{"tl", 1});
    CHECK(s.principal_of("Cat") == FunctionId{"cat", 2});
    CHECK_THROWS_AS(s.principal_of("Nope"), Error);
    CHECK_THROWS_AS(s.system("Nope"), Error);
  }

  TEST_CASE("program blocks share one equation space") {
    Session s = parse_session_file(fixture("words.ct"));
    // tl (block Tl) applied to w01 (block W01) in a single term.
    TermPtr t = parse_term(s, "tl(w01)");
    CHECK(t->kind == Term::Kind::Fun);
    CHECK(t->args[0]->kind == Term::Kind::Fun);
    EvalConfig cfg;
    ConstructorQuery q = eval_head(s.program, {}, t, cfg);
    REQUIRE(q.is_known());
    CHECK(q.ctor->name == "1");
  }

  TEST_CASE("an explicit principal declaration wins") {
    Session s = parse_session(
        "constructors { 0/0, s/1 }\n"
        "program P { principal h; f(x) = h(x); h(x) = x; }\n");
    CHECK(s.principal_of("P") == FunctionId{"h", 1});
  }

  TEST_CASE("without a declaration the first equation names the principal") {
    Session s = parse_session(
        "constructors { 0/0, s/1 }\n"
        "program P { f(x) = x; h(x) = f(x); }\n");
    CHECK(s.principal_of("P") == FunctionId{"f", 1});
  }

  TEST_CASE("digit-led identifiers are ordinary constructors") {
    Session s = parse_session_file(fixture("ze.ct"));
    CHECK(s.vocabulary.find("0")->arity == 1);
    TermPtr t = parse_term(s, "0(1(e))");
    CHECK(is_data_term(t));
    CHECK(to_string(t) == "0(1(e))");
  }

  TEST_CASE("syntax errors carry line and column") {
    try {
      parse_session("constructors { 0/0 }\nsystem X {\n  wat;\n}\n");
      FAIL("expected SyntaxError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SyntaxError);
      CHECK(std::string(e.what()).find("3:") != std::string::npos);
    }
  }

  TEST_CASE("semantic errors from nested modules pass through") {
    // Pattern non-linearity is a program-level error, not a parse error.
    try {
      parse_session(
          "constructors { 0/0, s/1 }\n"
          "program P { f(x, x) = x; }\n");
      FAIL("expected NonLinearPattern");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonLinearPattern);
    }
    // Unknown constructor in a rule.
    CHECK_THROWS_AS(parse_session("constructors { 0/0 }\n"
                                  "system S { inductive bundle { type N; "
                                  "N(q(x)) <- N(x); } }\n"),
                    Error);
  }

  TEST_CASE("incompatible equations across blocks are rejected") {
    try {
      parse_session(
          "constructors { 0/0, s/1 }\n"
          "program A { f(x) = x; }\n"
          "program B { f(0) = 0; }\n");
      FAIL("expected IncompatiblePair");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IncompatiblePair);
    }
  }

  TEST_CASE("parse_term resolves constructors, functions and variables") {
    Session s = parse_session_file(fixture("omega.ct"));
    TermPtr t = parse_term(s, "add(s(x), i)");
    CHECK(t->kind == Term::Kind::Fun);
    CHECK(t->args[0]->name == "s");
    CHECK(t->args[0]->args[0]->kind == Term::Kind::Variable);
    CHECK(t->args[1]->kind == Term::Kind::Fun);  // nullary program function
    CHECK_THROWS_AS(parse_term(s, "add(s(x)"), Error);   // unbalanced
    CHECK_THROWS_AS(parse_term(s, "s(0, 0)"), Error);    // arity
  }

  TEST_CASE("standard functions are available to parsed terms") {
    Session s = parse_session_file(fixture("omega.ct"));
    TermPtr t = parse_term(s, "pi1_1(s(0))");
    EvalConfig cfg;
    ConstructorQuery q = eval_head(s.program, {}, t, cfg);
    REQUIRE(q.is_known());
    CHECK(q.ctor->name == "0");
  }

  TEST_CASE("parsed systems typecheck like hand-built ones") {
    Session s = parse_session_file(fixture("ze.ct"));
    CheckParams params;
    CHECK(check_type(s.system("ZE"), "Z", literal_source(word("010")), params)
              .kind == MembershipVerdict::Kind::Derived);
    EvalConfig cfg;
    cfg.max_depth = 128;
    SourcePtr w01 = as_source(s.program, {}, parse_term(s, "w01"), cfg);
    CHECK(check_type(s.system("ZEW"), "Z", w01, params).positive());
  }
}
