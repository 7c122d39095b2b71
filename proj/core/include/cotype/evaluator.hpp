#ifndef COTYPE_EVALUATOR_HPP
#define COTYPE_EVALUATOR_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "cotype/program.hpp"
#include "cotype/source.hpp"
#include "cotype/term.hpp"

namespace cotype {

/// Binds free variables of a program term to hyper-term sources.
struct Valuation {
  std::map<std::string, SourcePtr> bindings;
};

struct EvalConfig {
  std::size_t fuel = 10000;      // max rewrite steps per head query
  std::size_t max_depth = 32;    // deepest address a session resolves
  bool memo = true;              // cache resolved heads across queries
};

enum class UnknownReason { Fuel, Depth };

struct Verdict3 {
  enum class Kind { Yes, No, Unknown };

  Kind kind = Kind::Unknown;
  std::optional<Address> witness;  // No: the disagreeing address
  std::string note;
  UnknownReason reason = UnknownReason::Fuel;

  static Verdict3 yes() { return {Kind::Yes, {}, "", UnknownReason::Fuel}; }
  static Verdict3 no(Address w, std::string note = "") {
    return {Kind::No, std::move(w), std::move(note), UnknownReason::Fuel};
  }
  static Verdict3 unknown(UnknownReason r) {
    return {Kind::Unknown, {}, "", r};
  }
};

/// Head constructor of t under outermost rewriting with env's diagram.
ConstructorQuery eval_head(const CertifiedProgram& p, const Valuation& env,
                           const TermPtr& t, const EvalConfig& cfg);

/// Head constructor of the subterm of t at address a.
ConstructorQuery eval_at(const CertifiedProgram& p, const Valuation& env,
                         const TermPtr& t, const Address& a,
                         const EvalConfig& cfg);

/// Reifies evaluation as a source: query(a) = eval_at(p, env, t, a, cfg).
/// With cfg.memo, resolved heads are shared across queries.
SourcePtr as_source(const CertifiedProgram& p, const Valuation& env,
                    const TermPtr& t, const EvalConfig& cfg);

/// Finite-term evaluation: outermost rewriting of f(args) until a data-term
/// is reached; nullopt when step_bound is exhausted (or the term is stuck).
std::optional<TermPtr> finite_eval(const CertifiedProgram& p,
                                   const std::string& fn,
                                   const std::vector<TermPtr>& args,
                                   std::size_t step_bound);

/// Agreement of t and q at every address of length <= depth.
Verdict3 locally_equal(const CertifiedProgram& p, const Valuation& env,
                       const TermPtr& t, const TermPtr& q, std::size_t depth,
                       const EvalConfig& cfg);

}  // namespace cotype

#endif
