#ifndef COTYPE_ARITH_HPP
#define COTYPE_ARITH_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cotype/source.hpp"
#include "cotype/term.hpp"
#include "cotype/vocab.hpp"

namespace cotype {

/// Self-delimiting address code.  Layout (frozen; see README):
///   encode(<>) = 0
///   encode(a0..ak) = 1 + cantor(B - 1, V)   where
///     B = max(ai) + 1,
///     V = sum of (ai + 1) * (B+1)^(k-i)  (base B+1 digits, values 1..B),
///     cantor(x, y) = (x+y)(x+y+1)/2 + y.
/// Canonical: some digit must equal B, so decode can reject non-image values.
using AddressCode = std::uint64_t;

AddressCode encode_address(const Address& a);
/// Throws Error(DecodeError) on values outside the code image.
Address decode_address(AddressCode n);

/// Injective constructor codes: 1-based position in vocabulary order;
/// 0 is reserved for "no constructor".
class ConstructorCodeTable {
 public:
  explicit ConstructorCodeTable(const Vocabulary& v);

  std::uint64_t code_of(const std::string& name) const;
  /// nullopt for 0 or codes beyond the vocabulary.
  std::optional<Constructor> constructor_of(std::uint64_t code) const;
  const Vocabulary& vocabulary() const { return vocab_; }

 private:
  Vocabulary vocab_;
};

/// A partial numeric function g : N -> N representing a hyper-term:
/// g(encode(a)) is the code of the constructor at address a when one exists.
/// Undefined is "no value there" (the representation leaves it open);
/// Unknown is budget exhaustion.
struct FuncValue {
  enum class State { Defined, Undefined, Unknown };
  State state = State::Undefined;
  std::uint64_t value = 0;

  static FuncValue defined(std::uint64_t v) { return {State::Defined, v}; }
  static FuncValue undefined() { return {State::Undefined, 0}; }
  static FuncValue unknown() { return {State::Unknown, 0}; }

  friend bool operator==(const FuncValue&, const FuncValue&) = default;
};

using FuncRepr = std::function<FuncValue(AddressCode)>;

FuncRepr term_to_funcrepr(SourcePtr src, const ConstructorCodeTable& table);

/// Reconstructs the depth-d prefix from a representation, validating
/// arity-consistency; throws Error(InvalidRepresentation) when a child is
/// defined where the parent's constructor forbids one.
FinitePrefix funcrepr_to_prefix(const FuncRepr& g,
                                const ConstructorCodeTable& table,
                                std::size_t depth);

/// The rooting functional: result(<>) = c's code, result(<i>*a) = args[i](a).
FuncRepr apply_chat(const Constructor& c, const std::vector<FuncRepr>& args,
                    const ConstructorCodeTable& table);

/// Dump lines "addrcode<TAB>ctorcode" for all defined addresses up to the
/// given depth, sorted by address code.  Bit-exact format; see README.
std::string dump_funcrepr(const FuncRepr& g, const ConstructorCodeTable& table,
                          std::size_t depth);

}  // namespace cotype

#endif
