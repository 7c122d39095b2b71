#ifndef COTYPE_TERM_HPP
#define COTYPE_TERM_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cotype/vocab.hpp"

namespace cotype {

/// A 0-based child-index path into a tree; the empty path is the root.
struct Address {
  std::vector<std::size_t> steps;

  Address() = default;
  explicit Address(std::vector<std::size_t> s) : steps(std::move(s)) {}

  bool is_root() const { return steps.empty(); }
  std::size_t length() const { return steps.size(); }

  Address child(std::size_t i) const {
    Address a = *this;
    a.steps.push_back(i);
    return a;
  }
  /// Everything after the first step; requires a nonempty address.
  Address tail() const {
    return Address(std::vector<std::size_t>(steps.begin() + 1, steps.end()));
  }

  friend bool operator==(const Address&, const Address&) = default;
  friend auto operator<=>(const Address&, const Address&) = default;
};

std::string to_string(const Address& a);

/// Terms come in three nested strata: data-terms (constructors only),
/// base-terms (plus variables), program-terms (plus program functions).
/// One node type covers all three; predicates below check the stratum.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Variable, Ctor, Fun };

  Kind kind;
  std::string name;
  std::size_t arity = 0;  // meaningful for Ctor/Fun
  std::vector<TermPtr> args;
};

TermPtr make_var(std::string name);
TermPtr make_ctor(const Constructor& c, std::vector<TermPtr> args);
TermPtr make_fun(std::string name, std::size_t arity, std::vector<TermPtr> args);

bool is_data_term(const TermPtr& t);
bool is_base_term(const TermPtr& t);

/// Height of a finite term; a leaf measures 0.
std::size_t term_height(const TermPtr& t);

bool term_equal(const TermPtr& a, const TermPtr& b);
std::string to_string(const TermPtr& t);

/// Collects free variable names left to right (with duplicates).
void collect_vars(const TermPtr& t, std::vector<std::string>& out);

}  // namespace cotype

#endif
