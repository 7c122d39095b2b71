#ifndef COTYPE_SOURCE_HPP
#define COTYPE_SOURCE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "cotype/term.hpp"

namespace cotype {

enum class QueryState { Known, OutOfRange, Unknown };

/// Three-valued answer to "which constructor sits at this address".
/// OutOfRange: the address falls outside the tree.  Unknown: the bounded
/// computation budget ran out before an answer was found.
struct ConstructorQuery {
  QueryState state = QueryState::Unknown;
  std::optional<Constructor> ctor;

  static ConstructorQuery known(Constructor c) {
    return {QueryState::Known, std::move(c)};
  }
  static ConstructorQuery out_of_range() { return {QueryState::OutOfRange, {}}; }
  static ConstructorQuery unknown() { return {QueryState::Unknown, {}}; }

  bool is_known() const { return state == QueryState::Known; }
};

/// An address-indexed producer of constructors: the computational stand-in
/// for a (possibly infinite) hyper-term.  Implementations must be
/// deterministic and prefix-consistent: if the child address answers Known,
/// the parent answers Known with a large enough arity.
class HyperTermSource {
 public:
  virtual ~HyperTermSource() = default;
  virtual ConstructorQuery query(const Address& a) const = 0;
};

using SourcePtr = std::shared_ptr<const HyperTermSource>;

/// The syntax tree of a finite closed data-term.
SourcePtr literal_source(TermPtr data_term);

/// A stream of unary constructors: symbol_at(n) is the constructor at depth n
/// along the unique spine.  All constructors returned must be unary.
SourcePtr stream_source(std::function<Constructor(std::size_t)> symbol_at);

/// A source that answers Unknown everywhere.
SourcePtr unknown_source();

/// The subtree of `src` rooted at `a` (queries are address-translated).
SourcePtr subtree_source(SourcePtr src, Address a);

inline ConstructorQuery query_at(const HyperTermSource& src, const Address& a) {
  return src.query(a);
}

/// Depth-bounded view: Known iff the node is resolved, Unexplored at the
/// frontier (or wherever the budget ran out).
struct FinitePrefix {
  std::optional<Constructor> ctor;  // nullopt = Unexplored
  std::vector<FinitePrefix> children;

  bool is_unexplored() const { return !ctor.has_value(); }
  friend bool operator==(const FinitePrefix&, const FinitePrefix&) = default;
};

FinitePrefix prefix(const HyperTermSource& src, std::size_t depth);
std::string to_string(const FinitePrefix& p);

/// The 1-based destructor: child i of the root when i <= arity, the source
/// itself when i > arity.  Requires 1 <= i <= m.
SourcePtr semantic_destruct(SourcePtr src, std::size_t i, std::size_t m);

/// Selects the branch of the root constructor; branches are given in
/// vocabulary order, one per constructor.  nullopt when the root is Unknown.
template <typename V>
std::optional<V> semantic_discriminate(const HyperTermSource& src,
                                       const Vocabulary& vocab,
                                       const std::vector<V>& branches) {
  ConstructorQuery q = src.query(Address{});
  if (!q.is_known()) return std::nullopt;
  return branches.at(vocab.index_of(q.ctor->name));
}

}  // namespace cotype

#endif
