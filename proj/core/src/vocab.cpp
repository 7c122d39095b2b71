#include "cotype/vocab.hpp"

#include <algorithm>
#include <set>

namespace cotype {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::StratificationViolation: return "StratificationViolation";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DuplicateTypeName: return "DuplicateTypeName";
    case ErrorCode::CoinductiveRuleMissing: return "CoinductiveRuleMissing";
    case ErrorCode::PolarityError: return "PolarityError";
    case ErrorCode::NonLinearPattern: return "NonLinearPattern";
    case ErrorCode::UnboundRhsVariable: return "UnboundRhsVariable";
    case ErrorCode::IncompatiblePair: return "IncompatiblePair";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::ChoiceOutOfRange: return "ChoiceOutOfRange";
    case ErrorCode::DecodeError: return "DecodeError";
    case ErrorCode::InvalidRepresentation: return "InvalidRepresentation";
    case ErrorCode::SampleNotOfClaimedInputType:
      return "SampleNotOfClaimedInputType";
    case ErrorCode::SyntaxError: return "SyntaxError";
  }
  return "Error";
}

Vocabulary::Vocabulary(std::vector<Constructor> constructors)
    : ctors_(std::move(constructors)) {
  std::set<std::string> names;
  for (const Constructor& c : ctors_) {
    if (c.name.empty())
      throw Error(ErrorCode::UnknownIdentifier, "empty constructor name");
    if (!names.insert(c.name).second)
      throw Error(ErrorCode::DuplicateTypeName,
                  "duplicate constructor name: " + c.name);
  }
  auto nullary = std::find_if(ctors_.begin(), ctors_.end(),
                              [](const Constructor& c) { return c.arity == 0; });
  if (nullary == ctors_.end()) {
    // Auto-pad with a fresh nullary; "o" unless taken.
    std::string name = "o";
    while (names.count(name)) name += "_";
    ctors_.push_back({name, 0});
    padding_ = ctors_.size() - 1;
  } else {
    padding_ = static_cast<std::size_t>(nullary - ctors_.begin());
  }
  for (const Constructor& c : ctors_) max_arity_ = std::max(max_arity_, c.arity);
}

std::optional<Constructor> Vocabulary::find(const std::string& name) const {
  for (const Constructor& c : ctors_)
    if (c.name == name) return c;
  return std::nullopt;
}

std::size_t Vocabulary::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < ctors_.size(); ++i)
    if (ctors_[i].name == name) return i;
  throw Error(ErrorCode::UnknownIdentifier, "unknown constructor: " + name);
}

Vocabulary Vocabulary::extended_with(const Constructor& extra) const {
  std::vector<Constructor> cs = ctors_;
  cs.push_back(extra);
  return Vocabulary(std::move(cs));
}

}  // namespace cotype
