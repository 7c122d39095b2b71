#ifndef COTYPE_TESTS_HELPERS_HPP
#define COTYPE_TESTS_HELPERS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cotype/datasystem.hpp"
#include "cotype/evaluator.hpp"
#include "cotype/program.hpp"
#include "cotype/source.hpp"
#include "cotype/term.hpp"
#include "cotype/vocab.hpp"

namespace cotype::testing {

inline std::string fixture(const std::string& name) {
  return std::string(COTYPE_FIXTURE_DIR) + "/" + name;
}

// --- vocabularies ---------------------------------------------------------

inline Vocabulary nat_vocab() { return Vocabulary({{"0", 0}, {"s", 1}}); }

inline Vocabulary word_vocab() {
  return Vocabulary({{"e", 0}, {"0", 1}, {"1", 1}});
}

inline Vocabulary alt_vocab() {
  return Vocabulary({{"0", 0}, {"1", 0}, {"e", 0}, {"s", 1}, {"p", 2}});
}

inline Vocabulary run_vocab() {
  return Vocabulary({{"z", 0}, {"s", 1}, {"p", 2}, {"f", 1}});
}

// --- terms ----------------------------------------------------------------

inline TermPtr nat(std::size_t n) {
  TermPtr t = make_ctor({"0", 0}, {});
  for (std::size_t i = 0; i < n; ++i) t = make_ctor({"s", 1}, {t});
  return t;
}

inline std::size_t nat_value(const TermPtr& t) {
  std::size_t n = 0;
  const Term* cur = t.get();
  while (cur->name == "s") {
    ++n;
    cur = cur->args[0].get();
  }
  return n;
}

/// "010" -> 0(1(0(e))), left character outermost.
inline TermPtr word(const std::string& bits) {
  TermPtr t = make_ctor({"e", 0}, {});
  for (auto it = bits.rbegin(); it != bits.rend(); ++it)
    t = make_ctor({std::string(1, *it), 1}, {t});
  return t;
}

inline std::string word_string(const TermPtr& t) {
  std::string s;
  const Term* cur = t.get();
  while (cur->name != "e") {
    s += cur->name;
    cur = cur->args[0].get();
  }
  return s;
}

/// The infinite word `prefix . cycle^omega` as a source.
inline SourcePtr cyclic_word(const std::string& head, const std::string& cycle) {
  return stream_source([head, cycle](std::size_t n) -> Constructor {
    char c = n < head.size() ? head[n]
                             : cycle[(n - head.size()) % cycle.size()];
    return {std::string(1, c), 1};
  });
}

/// All finite 0/1-words of the given length.
inline std::vector<std::string> all_bit_strings(std::size_t len) {
  std::vector<std::string> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
    std::string s(len, '0');
    for (std::size_t i = 0; i < len; ++i)
      if (bits >> i & 1) s[i] = '1';
    out.push_back(s);
  }
  return out;
}

/// A uniform random data term over `v` with height at most `max_height`.
inline TermPtr random_term(const Vocabulary& v, std::size_t max_height,
                           std::mt19937& rng) {
  std::vector<Constructor> nullary, any;
  for (const Constructor& c : v.constructors()) {
    any.push_back(c);
    if (c.arity == 0) nullary.push_back(c);
  }
  const std::vector<Constructor>& pool = max_height == 0 ? nullary : any;
  const Constructor& c =
      pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
  std::vector<TermPtr> args;
  for (std::size_t i = 0; i < c.arity; ++i)
    args.push_back(random_term(v, max_height - 1, rng));
  return make_ctor(c, args);
}

// --- systems --------------------------------------------------------------

/// ZE: inductive 0/1-words with no adjacent 1s, read from the e-end.
inline ValidatedSystem ze_system() {
  Bundle b;
  b.polarity = Polarity::Inductive;
  b.types = {"Z", "E"};
  b.inductive_rules = {
      {{{"e", 0}, {}}, "Z"},
      {{{"0", 1}, {"Z"}}, "Z"},
      {{{"0", 1}, {"E"}}, "Z"},
      {{{"1", 1}, {"Z"}}, "E"},
  };
  return validate({"ZE", word_vocab(), {b}});
}

/// ZEW: the coinductive (omega-word) version of ZE.
inline ValidatedSystem zew_system() {
  Bundle b;
  b.polarity = Polarity::Coinductive;
  b.types = {"Z", "E"};
  b.coinductive_rules["Z"] = {{{"0", 1}, {"Z"}}, {{"0", 1}, {"E"}}};
  b.coinductive_rules["E"] = {{{"1", 1}, {"Z"}}};
  return validate({"ZEW", word_vocab(), {b}});
}

/// WOmega: all infinite 0/1-words.
inline ValidatedSystem womega_system() {
  Bundle b;
  b.polarity = Polarity::Coinductive;
  b.types = {"W"};
  b.coinductive_rules["W"] = {{{"0", 1}, {"W"}}, {{"1", 1}, {"W"}}};
  return validate({"WOmega", word_vocab(), {b}});
}

/// Alt: ((B),(N),(F,S),(L)) — rank Sigma 3.
inline DataSystem alt_datasystem() {
  Bundle bb;
  bb.types = {"B"};
  bb.inductive_rules = {{{{"0", 0}, {}}, "B"}, {{{"1", 0}, {}}, "B"}};
  Bundle bn;
  bn.types = {"N"};
  bn.inductive_rules = {{{{"0", 0}, {}}, "N"}, {{{"s", 1}, {"N"}}, "N"}};
  Bundle bfs;
  bfs.polarity = Polarity::Coinductive;
  bfs.types = {"F", "S"};
  bfs.coinductive_rules["F"] = {{{"p", 2}, {"B", "S"}}};
  bfs.coinductive_rules["S"] = {{{"p", 2}, {"N", "F"}}};
  Bundle bl;
  bl.types = {"L"};
  bl.inductive_rules = {{{{"e", 0}, {}}, "L"},
                        {{{"p", 2}, {"F", "L"}}, "L"},
                        {{{"p", 2}, {"S", "L"}}, "L"}};
  return {"Alt", alt_vocab(), {bb, bn, bfs, bl}};
}

inline ValidatedSystem alt_system() { return validate(alt_datasystem()); }

/// Run: inductive T (unary numerals over z/s) below coinductive (D, E).
inline ValidatedSystem run_system() {
  Bundle bt;
  bt.types = {"T"};
  bt.inductive_rules = {{{{"z", 0}, {}}, "T"}, {{{"s", 1}, {"T"}}, "T"}};
  Bundle bde;
  bde.polarity = Polarity::Coinductive;
  bde.types = {"D", "E"};
  bde.coinductive_rules["D"] = {{{"p", 2}, {"D", "E"}},
                                {{"p", 2}, {"T", "D"}},
                                {{"f", 1}, {"E"}}};
  bde.coinductive_rules["E"] = {{{"p", 2}, {"E", "D"}}};
  return validate({"Run", run_vocab(), {bt, bde}});
}

// --- programs -------------------------------------------------------------

/// add over unary numerals.
inline CertifiedProgram add_program() {
  Program p;
  p.vocabulary = nat_vocab();
  FunctionId add{"add", 2};
  p.principal = add;
  p.equations = {
      {add, {make_ctor({"0", 0}, {}), make_var("y")}, make_var("y")},
      {add,
       {make_ctor({"s", 1}, {make_var("x")}), make_var("y")},
       make_ctor({"s", 1},
                 {make_fun("add", 2, {make_var("x"), make_var("y")})})},
  };
  return check_wellformed(p);
}

/// i = s(i) over the numeral vocabulary; principal i.
inline CertifiedProgram omega_program() {
  Program p;
  p.vocabulary = nat_vocab();
  FunctionId i{"i", 0};
  p.principal = i;
  p.equations = {{i, {}, make_ctor({"s", 1}, {make_fun("i", 0, {})})}};
  return check_wellformed(p);
}

/// Word programs: w01, zeros, tl, g (loops), cat — one shared program.
inline CertifiedProgram word_programs() {
  Program p;
  p.vocabulary = word_vocab();
  FunctionId w01{"w01", 0}, zeros{"zeros", 0}, tl{"tl", 1}, g{"g", 1},
      cat{"cat", 2};
  p.principal = tl;
  auto c0 = [](TermPtr t) { return make_ctor({"0", 1}, {std::move(t)}); };
  auto c1 = [](TermPtr t) { return make_ctor({"1", 1}, {std::move(t)}); };
  p.equations = {
      {w01, {}, c0(c1(make_fun("w01", 0, {})))},
      {zeros, {}, c0(make_fun("zeros", 0, {}))},
      {tl, {c0(make_var("y"))}, make_var("y")},
      {tl, {c1(make_var("y"))}, make_var("y")},
      {g, {c0(make_var("y"))}, make_fun("g", 1, {make_var("y")})},
      {g, {c1(make_var("y"))}, make_fun("g", 1, {make_var("y")})},
      {cat, {make_ctor({"e", 0}, {}), make_var("y")}, make_var("y")},
      {cat,
       {c0(make_var("x")), make_var("y")},
       c0(make_fun("cat", 2, {make_var("x"), make_var("y")}))},
      {cat,
       {c1(make_var("x")), make_var("y")},
       c1(make_fun("cat", 2, {make_var("x"), make_var("y")}))},
  };
  return check_wellformed(p);
}

}  // namespace cotype::testing

#endif
