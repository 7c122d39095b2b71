#ifndef COTYPE_PROGRAM_HPP
#define COTYPE_PROGRAM_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cotype/source.hpp"
#include "cotype/term.hpp"

namespace cotype {

struct FunctionId {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const FunctionId&, const FunctionId&) = default;
};

/// f(t1..tk) = q with left-linear base-term patterns and a program-term rhs.
struct ProgramEquation {
  FunctionId fn;
  std::vector<TermPtr> patterns;
  TermPtr rhs;
};

struct Program {
  std::vector<ProgramEquation> equations;
  FunctionId principal;
  Vocabulary vocabulary;
};

/// Names used for the standard destructor/discriminator functions.
std::string destructor_name(std::size_t i, std::size_t m);
inline const char* discriminator_name() { return "delta"; }

/// The standard equations over a vocabulary with k constructors and maximal
/// arity m (taken as at least 1): pi_i_m selects child i (1-based) and acts
/// as the identity past the arity; delta selects the branch of the root.
std::vector<ProgramEquation> standard_equations(const Vocabulary& v);

using Subst = std::map<std::string, TermPtr>;

/// Syntactic first-order unification over base terms, with occurs check.
std::optional<Subst> unify(const TermPtr& a, const TermPtr& b);
std::optional<Subst> unify_tuples(const std::vector<TermPtr>& a,
                                  const std::vector<TermPtr>& b);
TermPtr apply_subst(const TermPtr& t, const Subst& s);

/// A program whose equations are certified left-linear, rhs-closed and
/// pairwise compatible, with the standard equations merged in.  Copies share
/// the immutable equation storage, so copies are cheap and pointer-stable.
class CertifiedProgram {
 public:
  const Vocabulary& vocabulary() const { return vocab_; }
  const FunctionId& principal() const { return principal_; }
  const std::vector<ProgramEquation>& equations() const { return *equations_; }

  const std::vector<const ProgramEquation*>& equations_for(
      const std::string& fn) const;
  std::optional<FunctionId> find_function(const std::string& name) const;

 private:
  friend CertifiedProgram check_wellformed(Program p);

  Vocabulary vocab_{{{"o", 0}}};
  FunctionId principal_;
  std::shared_ptr<const std::vector<ProgramEquation>> equations_ =
      std::make_shared<std::vector<ProgramEquation>>();
  std::map<std::string, std::vector<const ProgramEquation*>> by_function_;
  std::vector<const ProgramEquation*> empty_;
};

/// Certifies a program; throws Error with NonLinearPattern,
/// UnboundRhsVariable or IncompatiblePair (message carries the unifier).
CertifiedProgram check_wellformed(Program p);

/// Observes the constructor prefix of argument `arg` at `addr`.
using ArgObserver =
    std::function<ConstructorQuery(std::size_t arg, const Address& addr)>;

struct MatchOutcome {
  enum class Kind { Selected, NoMatch, NeedMore };

  Kind kind = Kind::NoMatch;
  const ProgramEquation* equation = nullptr;        // Selected
  std::map<std::string, std::pair<std::size_t, Address>>
      bindings;                                     // var -> (arg, address)
  std::size_t need_arg = 0;                         // NeedMore
  Address need_addr;                                // NeedMore
};

/// Pattern dispatch: selects the unique equation of `fn` matching the
/// observed prefix (uniqueness from compatibility).  NeedMore names the
/// shallowest unresolved address that would discriminate; NoMatch means no
/// equation can apply no matter what is observed further.
MatchOutcome match_equation(const CertifiedProgram& p, const std::string& fn,
                            const ArgObserver& observe);

}  // namespace cotype

#endif
