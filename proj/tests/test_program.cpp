#include <doctest.h>

#include "cotype/program.hpp"
#include "helpers.hpp"

using namespace cotype;
using namespace cotype::testing;

namespace {

/// Observer backed by literal sources for the given argument terms.
ArgObserver observe_terms(const std::vector<TermPtr>& args) {
  std::vector<SourcePtr> srcs;
  for (const TermPtr& t : args) srcs.push_back(literal_source(t));
  return [srcs](std::size_t i, const Address& a) {
    return srcs.at(i)->query(a);
  };
}

ArgObserver observe_unknown() {
  return [](std::size_t, const Address&) { return ConstructorQuery::unknown(); };
}

}  // namespace

TEST_SUITE("program") {
  TEST_CASE("standard equation counts: k*m destructor + k discriminator") {
    // [DERIVED] {0/0, s/1}: m = 1, k = 2 -> 2 + 2 = 4 equations.
    CHECK(standard_equations(nat_vocab()).size() == 4);
    // [DERIVED] the 5-constructor vocabulary with m = 2: 10 + 5 = 15.
    CHECK(standard_equations(alt_vocab()).size() == 15);
    // [DERIVED] {e/0}: m is taken as at least 1 -> 1 + 1 = 2.
    CHECK(standard_equations(Vocabulary({{"e", 0}})).size() == 2);
  }

  TEST_CASE("standard equations implement the destructor convention") {
    // pi_{1,1}(s(x)) = x and pi_{1,1}(0) = 0 (identity past the arity).
    CertifiedProgram p = add_program();
    CHECK(p.find_function(destructor_name(1, 1)).has_value());
    CHECK(p.find_function(discriminator_name()).has_value());
    CHECK(p.find_function(discriminator_name())->arity == 3);  // delta(x,b0,bs)
    CHECK(p.equations_for(destructor_name(1, 1)).size() == 2);
    CHECK(p.equations_for(discriminator_name()).size() == 2);
  }

  TEST_CASE("check_wellformed certifies add") {
    CertifiedProgram p = add_program();
    CHECK(p.principal().name == "add");
    CHECK(p.equations_for("add").size() == 2);
    CHECK(p.find_function("add")->arity == 2);
    CHECK(!p.find_function("mul").has_value());
  }

  TEST_CASE("non-left-linear patterns are rejected") {
    Program p;
    p.vocabulary = nat_vocab();
    FunctionId g{"g", 2};
    p.principal = g;
    p.equations = {{g, {make_var("x"), make_var("x")}, make_var("x")}};
    try {
      check_wellformed(p);
      FAIL("expected NonLinearPattern");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonLinearPattern);
    }
  }

  TEST_CASE("rhs variables must occur in the patterns") {
    Program p;
    p.vocabulary = nat_vocab();
    FunctionId f{"f", 1};
    p.principal = f;
    p.equations = {{f, {make_var("x")}, make_var("y")}};
    try {
      check_wellformed(p);
      FAIL("expected UnboundRhsVariable");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnboundRhsVariable);
    }
  }

  TEST_CASE("overlapping equations are rejected with a unifier witness") {
    // f(x) and f(0) unify under {x -> 0}.
    Program p;
    p.vocabulary = nat_vocab();
    FunctionId f{"f", 1};
    p.principal = f;
    p.equations = {{f, {make_var("x")}, make_var("x")},
                   {f, {make_ctor({"0", 0}, {})}, make_ctor({"0", 0}, {})}};
    try {
      check_wellformed(p);
      FAIL("expected IncompatiblePair");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IncompatiblePair);
      CHECK(std::string(e.what()).find("f") != std::string::npos);
    }
  }

  TEST_CASE("identical duplicate equations collapse instead of clashing") {
    Program p;
    p.vocabulary = nat_vocab();
    FunctionId f{"f", 1};
    p.principal = f;
    p.equations = {{f, {make_var("x")}, make_var("x")},
                   {f, {make_var("y")}, make_var("y")}};
    CertifiedProgram cp = check_wellformed(p);
    CHECK(cp.equations_for("f").size() == 1);
  }

  TEST_CASE("unify: basic behaviors") {
    TermPtr x = make_var("x");
    TermPtr sx = make_ctor({"s", 1}, {x});
    TermPtr zero = make_ctor({"0", 0}, {});
    TermPtr s0 = make_ctor({"s", 1}, {zero});
    auto u = unify(sx, s0);
    REQUIRE(u.has_value());
    CHECK(term_equal(apply_subst(sx, *u), s0));
    CHECK(!unify(zero, s0).has_value());
    CHECK(!unify(x, sx).has_value());  // occurs check
    auto v = unify(x, zero);
    REQUIRE(v.has_value());
    CHECK(term_equal(v->at("x"), zero));
  }

  TEST_CASE("match_equation selects by observed head") {
    CertifiedProgram p = add_program();
    MatchOutcome m = match_equation(p, "add", observe_terms({nat(2), nat(1)}));
    REQUIRE(m.kind == MatchOutcome::Kind::Selected);
    CHECK(m.equation->patterns[0]->name == "s");
    // Bindings point into the arguments: x at argument 0, address <0>.
    REQUIRE(m.bindings.count("x") == 1);
    CHECK(m.bindings.at("x") == std::pair<std::size_t, Address>{0, Address({0})});
    CHECK(m.bindings.at("y") == std::pair<std::size_t, Address>{1, Address{}});
  }

  TEST_CASE("match_equation reports the shallowest needed address") {
    CertifiedProgram p = add_program();
    MatchOutcome m = match_equation(p, "add", observe_unknown());
    REQUIRE(m.kind == MatchOutcome::Kind::NeedMore);
    CHECK(m.need_arg == 0);
    CHECK(m.need_addr == Address{});
  }

  TEST_CASE("match_equation: definite NoMatch") {
    CertifiedProgram p = word_programs();
    // tl has equations only for 0(_) and 1(_): the word e matches neither.
    MatchOutcome m = match_equation(p, "tl", observe_terms({word("")}));
    CHECK(m.kind == MatchOutcome::Kind::NoMatch);
  }

  TEST_CASE("match determinism: at most one equation fires (exhaustive)") {
    // [DERIVED] compatibility makes the selected equation unique; check by
    // matching every word of length <= 4 against cat's three equations.
    CertifiedProgram p = word_programs();
    for (std::size_t len = 0; len <= 4; ++len) {
      for (const std::string& bits : all_bit_strings(len)) {
        MatchOutcome m =
            match_equation(p, "cat", observe_terms({word(bits), word("")}));
        REQUIRE(m.kind == MatchOutcome::Kind::Selected);
        std::string expect = bits.empty() ? "e" : std::string(1, bits[0]);
        CHECK(m.equation->patterns[0]->name == expect);
      }
    }
  }

  TEST_CASE("certified copies share storage and stay valid") {
    CertifiedProgram p = add_program();
    const ProgramEquation* before = p.equations_for("add")[0];
    CertifiedProgram q = p;  // cheap copy
    CHECK(q.equations_for("add")[0] == before);
  }
}
