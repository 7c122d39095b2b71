#ifndef COTYPE_VOCAB_HPP
#define COTYPE_VOCAB_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cotype/error.hpp"

namespace cotype {

struct Constructor {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Constructor&, const Constructor&) = default;
};

/// An ordered constructor vocabulary.  A nullary padding constructor is
/// guaranteed to be present: if none of the declared constructors is nullary,
/// a fresh "o" is appended.
class Vocabulary {
 public:
  Vocabulary() : Vocabulary(std::vector<Constructor>{}) {}
  explicit Vocabulary(std::vector<Constructor> constructors);

  const std::vector<Constructor>& constructors() const { return ctors_; }
  const Constructor& padding_nullary() const { return ctors_[padding_]; }

  std::optional<Constructor> find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name).has_value(); }

  /// 0-based position in declaration order; throws UnknownIdentifier.
  std::size_t index_of(const std::string& name) const;

  std::size_t max_arity() const { return max_arity_; }
  std::size_t size() const { return ctors_.size(); }

  /// Same constructors plus `extra` appended (name must be fresh).
  Vocabulary extended_with(const Constructor& extra) const;

 private:
  std::vector<Constructor> ctors_;
  std::size_t padding_ = 0;
  std::size_t max_arity_ = 0;
};

}  // namespace cotype

#endif
