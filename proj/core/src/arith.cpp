#include "cotype/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cotype/error.hpp"

namespace cotype {

namespace {

using u128 = unsigned __int128;

u128 triangle(std::uint64_t s) { return u128(s) * (u128(s) + 1) / 2; }

std::uint64_t cantor_pair(std::uint64_t x, std::uint64_t y) {
  u128 z = triangle(x + y) + y;
  if (x + y < x || z > std::numeric_limits<std::uint64_t>::max() - 1)
    throw Error(ErrorCode::DecodeError,
                "address code exceeds the 64-bit range");
  return static_cast<std::uint64_t>(z);
}

// Inverse of cantor_pair: s from an integer square root, then correct.
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z) {
  auto s = static_cast<std::uint64_t>(
      (std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L);
  while (triangle(s + 1) <= z) ++s;
  while (triangle(s) > z) --s;
  std::uint64_t y = z - static_cast<std::uint64_t>(triangle(s));
  return {s - y, y};
}

}  // namespace

AddressCode encode_address(const Address& a) {
  if (a.steps.empty()) return 0;
  std::uint64_t maxd = *std::max_element(a.steps.begin(), a.steps.end());
  std::uint64_t base = maxd + 2;  // digits take values 1..maxd+1
  std::uint64_t v = 0;
  for (std::size_t step : a.steps) {
    u128 next = u128(v) * base + (static_cast<std::uint64_t>(step) + 1);
    if (next > std::numeric_limits<std::uint64_t>::max())
      throw Error(ErrorCode::DecodeError,
                  "address code exceeds the 64-bit range");
    v = static_cast<std::uint64_t>(next);
  }
  return 1 + cantor_pair(maxd, v);
}

Address decode_address(AddressCode n) {
  if (n == 0) return Address{};
  auto [maxd, v] = cantor_unpair(n - 1);
  std::uint64_t base = maxd + 2;
  if (v == 0)
    throw Error(ErrorCode::DecodeError, "zero digit string");
  std::vector<std::size_t> rev;
  bool saw_max = false;
  while (v > 0) {
    std::uint64_t digit = v % base;
    if (digit == 0)
      throw Error(ErrorCode::DecodeError, "zero digit in address code");
    if (digit - 1 == maxd) saw_max = true;
    rev.push_back(static_cast<std::size_t>(digit - 1));
    v /= base;
  }
  // Canonicality: the recorded maximum must actually occur.
  if (!saw_max)
    throw Error(ErrorCode::DecodeError, "non-canonical address code");
  std::reverse(rev.begin(), rev.end());
  return Address(std::move(rev));
}

ConstructorCodeTable::ConstructorCodeTable(const Vocabulary& v) : vocab_(v) {}

std::uint64_t ConstructorCodeTable::code_of(const std::string& name) const {
  return vocab_.index_of(name) + 1;  // 0 reserved
}

std::optional<Constructor> ConstructorCodeTable::constructor_of(
    std::uint64_t code) const {
  if (code == 0 || code > vocab_.size()) return std::nullopt;
  return vocab_.constructors()[code - 1];
}

FuncRepr term_to_funcrepr(SourcePtr src, const ConstructorCodeTable& table) {
  return [src, table](AddressCode n) -> FuncValue {
    Address a;
    try {
      a = decode_address(n);
    } catch (const Error&) {
      return FuncValue::undefined();  // not an address code
    }
    ConstructorQuery q = src->query(a);
    switch (q.state) {
      case QueryState::Known:
        return FuncValue::defined(table.code_of(q.ctor->name));
      case QueryState::OutOfRange:
        return FuncValue::undefined();
      case QueryState::Unknown:
        return FuncValue::unknown();
    }
    return FuncValue::unknown();
  };
}

namespace {

FinitePrefix prefix_from_repr(const FuncRepr& g,
                              const ConstructorCodeTable& table,
                              const Address& at, std::size_t depth) {
  FuncValue fv = g(encode_address(at));
  if (fv.state == FuncValue::State::Unknown) return FinitePrefix{};
  if (fv.state == FuncValue::State::Undefined) {
    // Nothing here: a defined child would violate prefix-consistency.
    FuncValue probe = g(encode_address(at.child(0)));
    if (probe.state == FuncValue::State::Defined)
      throw Error(ErrorCode::InvalidRepresentation,
                  "child defined below undefined node at " +
                      to_string(at.child(0)));
    return FinitePrefix{};
  }
  auto ctor = table.constructor_of(fv.value);
  if (!ctor)
    throw Error(ErrorCode::InvalidRepresentation,
                "constructor code " + std::to_string(fv.value) + " at " +
                    to_string(at));
  // A defined child past the arity is inconsistent with the parent.
  FuncValue past = g(encode_address(at.child(ctor->arity)));
  if (past.state == FuncValue::State::Defined)
    throw Error(ErrorCode::InvalidRepresentation,
                "child defined past arity of " + ctor->name + " at " +
                    to_string(at.child(ctor->arity)));
  if (depth == 0) return FinitePrefix{};
  FinitePrefix p;
  p.ctor = *ctor;
  for (std::size_t i = 0; i < ctor->arity; ++i)
    p.children.push_back(prefix_from_repr(g, table, at.child(i), depth - 1));
  return p;
}

}  // namespace

FinitePrefix funcrepr_to_prefix(const FuncRepr& g,
                                const ConstructorCodeTable& table,
                                std::size_t depth) {
  return prefix_from_repr(g, table, Address{}, depth);
}

FuncRepr apply_chat(const Constructor& c, const std::vector<FuncRepr>& args,
                    const ConstructorCodeTable& table) {
  if (args.size() != c.arity)
    throw Error(ErrorCode::ArityMismatch,
                "apply_chat: " + c.name + "/" + std::to_string(c.arity) +
                    " with " + std::to_string(args.size()) + " arguments");
  std::uint64_t root_code = table.code_of(c.name);
  std::size_t arity = c.arity;
  return [root_code, arity, args](AddressCode n) -> FuncValue {
    Address a;
    try {
      a = decode_address(n);
    } catch (const Error&) {
      return FuncValue::undefined();
    }
    if (a.is_root()) return FuncValue::defined(root_code);
    std::size_t i = a.steps[0];
    if (i >= arity) return FuncValue::undefined();
    return args[i](encode_address(a.tail()));
  };
}

namespace {

void dump_walk(const FuncRepr& g, const ConstructorCodeTable& table,
               const Address& at, std::size_t depth,
               std::vector<std::pair<AddressCode, std::uint64_t>>& out) {
  FuncValue fv = g(encode_address(at));
  if (fv.state != FuncValue::State::Defined) return;
  out.emplace_back(encode_address(at), fv.value);
  if (depth == 0) return;
  auto ctor = table.constructor_of(fv.value);
  if (!ctor) return;
  for (std::size_t i = 0; i < ctor->arity; ++i)
    dump_walk(g, table, at.child(i), depth - 1, out);
}

}  // namespace

std::string dump_funcrepr(const FuncRepr& g, const ConstructorCodeTable& table,
                          std::size_t depth) {
  std::vector<std::pair<AddressCode, std::uint64_t>> rows;
  dump_walk(g, table, Address{}, depth, rows);
  std::sort(rows.begin(), rows.end());
  std::ostringstream os;
  for (const auto& [a, c] : rows) os << a << "\t" << c << "\n";
  return os.str();
}

}  // namespace cotype
