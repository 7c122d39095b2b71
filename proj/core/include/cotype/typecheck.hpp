#ifndef COTYPE_TYPECHECK_HPP
#define COTYPE_TYPECHECK_HPP

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "cotype/datasystem.hpp"
#include "cotype/evaluator.hpp"
#include "cotype/source.hpp"

namespace cotype {

struct CheckParams {
  std::size_t height = 32;  // coinductive expansion level to certify
  std::size_t fuel = 10000; // derivation height bound / per-query budget
  std::size_t node_budget = 200000;  // expansion nodes visited per search
};

/// A finite inductive derivation: at each node, the disjunct index used and
/// the sub-derivations for same-bundle components.  Lower-rank components
/// are recorded by type name only (they were checked separately).
struct Derivation {
  std::string type;
  std::size_t disjunct = 0;
  Constructor ctor;
  std::vector<Derivation> subs;           // same-bundle components, in order
  std::vector<std::string> lower_rank;    // per-child: type name or ""
};

struct MembershipVerdict {
  enum class Kind { Derived, VerifiedToHeight, Refuted, Unknown };

  Kind kind = Kind::Unknown;
  std::size_t height = 0;                 // VerifiedToHeight / Refuted level
  std::optional<Derivation> witness;      // Derived
  std::optional<Address> witness_addr;    // Refuted: conflicting address
  std::string note;

  bool positive() const {
    return kind == Kind::Derived || kind == Kind::VerifiedToHeight;
  }
};

std::string to_string(const MembershipVerdict& v);

/// A finite partial typing: internal nodes carry (type, constructor), leaves
/// carry a type — same-bundle leaves await expansion, lower-rank leaves are
/// terminal.  Unexpanded same-bundle leaves are kept in breadth-first
/// (creation) order; the front of the queue is the next one expanded.
struct ExpansionNode {
  struct Node {
    std::string type;
    std::optional<Constructor> ctor;  // nullopt = leaf
    std::vector<Node> children;
  };

  Node root;
  std::deque<Address> pending;  // addresses of unexpanded same-bundle leaves
  std::size_t height = 0;       // expansion steps taken from the bare root

  bool terminal() const { return pending.empty(); }
};

/// Deterministic expansion-tree generator for one coinductive root type.
class TDTree {
 public:
  TDTree(const ValidatedSystem& ds, std::string root_type);

  /// Node reached by taking the given disjunct choices at successive
  /// expansion steps; empty path is the bare leaf.  Throws ChoiceOutOfRange.
  ExpansionNode node(const std::vector<std::size_t>& path) const;

  /// Number of children of the given node (0 when terminal).
  std::size_t child_count(const ExpansionNode& n) const;

  /// The node obtained by expanding n's front pending leaf with disjunct i.
  ExpansionNode expand(const ExpansionNode& n, std::size_t choice) const;

 private:
  const ValidatedSystem* ds_;
  std::string root_;
};

ExpansionNode td_node(const ValidatedSystem& ds, const std::string& type,
                      const std::vector<std::size_t>& path);

/// Consistency of a source with a partial typing: constructors must agree at
/// every internal address, and lower-rank leaves must type-check.
Verdict3 consistent(const ValidatedSystem& ds, const ExpansionNode& node,
                    const SourcePtr& src, const CheckParams& params);

MembershipVerdict check_inductive(const ValidatedSystem& ds,
                                  const std::string& type,
                                  const SourcePtr& src,
                                  const CheckParams& params);

MembershipVerdict check_coinductive(const ValidatedSystem& ds,
                                    const std::string& type,
                                    const SourcePtr& src,
                                    const CheckParams& params);

/// Dispatches on the polarity of `type`.
MembershipVerdict check_type(const ValidatedSystem& ds,
                             const std::string& type, const SourcePtr& src,
                             const CheckParams& params);

/// Re-checks a Derived witness against the packaged rules, independently of
/// the search that produced it.
bool verify_derivation(const ValidatedSystem& ds, const Derivation& d,
                       const SourcePtr& src, const CheckParams& params);

/// Typed equality via the merging program: builds eq over the vocabulary
/// extended with a fresh nullary xi, runs eq(a, b) as a source, and checks
/// it against `type`.  A Refuted verdict's witness address is where xi (or a
/// plain disagreement) surfaced.
MembershipVerdict typed_eq(const ValidatedSystem& ds, const std::string& type,
                           const SourcePtr& a, const SourcePtr& b,
                           const CheckParams& params);

struct SampleReport {
  MembershipVerdict input_check;
  MembershipVerdict output_check;
};

/// Desk-scale check of a typing claim from_type -> to_type for the unary
/// program function fn: per sample, verifies the input type, then checks the
/// output of fn applied to the sample.  Throws SampleNotOfClaimedInputType
/// when a sample fails its input check definitively.
std::vector<SampleReport> check_program_type(
    const ValidatedSystem& ds, const CertifiedProgram& p,
    const std::string& fn, const std::string& from_type,
    const std::string& to_type, const std::vector<SourcePtr>& samples,
    const CheckParams& params, const EvalConfig& eval_cfg);

/// The eq merging program over `vocab` plus a fresh nullary xi; returns the
/// certified program and the xi constructor actually used.
std::pair<CertifiedProgram, Constructor> eq_program(const Vocabulary& vocab);

}  // namespace cotype

#endif
