#ifndef COTYPE_DATASYSTEM_HPP
#define COTYPE_DATASYSTEM_HPP

#include <map>
#include <string>
#include <vector>

#include "cotype/vocab.hpp"

namespace cotype {

enum class Polarity { Inductive, Coinductive };

/// "x = c(y1..yr) with each yi of a stated type" — the atom of both
/// construction and deconstruction rules.  Component variables are
/// positional; component_types[i] types the i-th child.
struct ConstructorStatement {
  Constructor ctor;
  std::vector<std::string> component_types;

  friend bool operator==(const ConstructorStatement&,
                         const ConstructorStatement&) = default;
};

struct InductiveRule {
  ConstructorStatement stmt;
  std::string target;
};

struct Bundle {
  Polarity polarity = Polarity::Inductive;
  std::vector<std::string> types;
  std::vector<InductiveRule> inductive_rules;             // when inductive
  std::map<std::string, std::vector<ConstructorStatement>>
      coinductive_rules;                                  // when coinductive
};

struct DataSystem {
  std::string name;
  Vocabulary vocabulary;
  std::vector<Bundle> bundles;
};

struct Rank {
  enum class Side { Sigma, Pi };
  Side side = Side::Sigma;
  std::size_t level = 1;

  friend bool operator==(const Rank&, const Rank&) = default;
};

std::string to_string(const Rank& r);

/// Groups all inductive rules of a bundle by target type: the normalized
/// per-type disjunct lists.  Polarity error if the bundle is coinductive.
std::map<std::string, std::vector<ConstructorStatement>> package_inductive(
    const Bundle& b);

/// A data-system certified for stratification, arity-correctness and name
/// uniqueness, with per-type rule lookup and rank precomputed.
class ValidatedSystem {
 public:
  const DataSystem& system() const { return sys_; }
  const Vocabulary& vocabulary() const { return sys_.vocabulary; }

  bool has_type(const std::string& type) const;
  Polarity polarity_of(const std::string& type) const;
  std::size_t bundle_of(const std::string& type) const;

  /// Packaged disjuncts: construction disjuncts for inductive types,
  /// the deconstruction disjunct list for coinductive types.
  const std::vector<ConstructorStatement>& disjuncts(
      const std::string& type) const;

  Rank rank() const { return rank_; }
  std::size_t rank_of_type(const std::string& type) const;

  /// Types flagged as empty (inductive, no disjunct) — legal but suspect.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend ValidatedSystem validate(DataSystem ds);

  DataSystem sys_{"", Vocabulary({{"o", 0}}), {}};
  std::map<std::string, std::size_t> bundle_index_;
  std::map<std::string, std::vector<ConstructorStatement>> disjuncts_;
  std::vector<Rank> prefix_ranks_;  // rank of bundles[0..i]
  Rank rank_;
  std::vector<std::string> warnings_;
};

/// Certifies the system; throws Error with StratificationViolation,
/// ArityMismatch, DuplicateTypeName or CoinductiveRuleMissing.
ValidatedSystem validate(DataSystem ds);

/// The alternation recursion over bundle polarities; the per-type rank of a
/// validated system is the rank of the prefix ending at its bundle.
Rank classify_rank(const ValidatedSystem& ds);
Rank rank_of_polarities(const std::vector<Polarity>& ps);

}  // namespace cotype

#endif
