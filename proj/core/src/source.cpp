#include "cotype/source.hpp"

#include "cotype/error.hpp"

namespace cotype {

namespace {

class LiteralSource final : public HyperTermSource {
 public:
  explicit LiteralSource(TermPtr t) : root_(std::move(t)) {
    if (!is_data_term(root_))
      throw Error(ErrorCode::UnknownIdentifier,
                  "literal source needs a closed data-term");
  }

  ConstructorQuery query(const Address& a) const override {
    const Term* node = root_.get();
    for (std::size_t step : a.steps) {
      if (step >= node->args.size()) return ConstructorQuery::out_of_range();
      node = node->args[step].get();
    }
    return ConstructorQuery::known({node->name, node->args.size()});
  }

 private:
  TermPtr root_;
};

class StreamSource final : public HyperTermSource {
 public:
  explicit StreamSource(std::function<Constructor(std::size_t)> f)
      : symbol_(std::move(f)) {}

  ConstructorQuery query(const Address& a) const override {
    // Spine of unary constructors: only all-zero addresses are inside.
    for (std::size_t step : a.steps)
      if (step != 0) return ConstructorQuery::out_of_range();
    return ConstructorQuery::known(symbol_(a.steps.size()));
  }

 private:
  std::function<Constructor(std::size_t)> symbol_;
};

class UnknownSource final : public HyperTermSource {
 public:
  ConstructorQuery query(const Address&) const override {
    return ConstructorQuery::unknown();
  }
};

class SubtreeSource final : public HyperTermSource {
 public:
  SubtreeSource(SourcePtr src, Address base)
      : src_(std::move(src)), base_(std::move(base)) {}

  ConstructorQuery query(const Address& a) const override {
    Address full = base_;
    full.steps.insert(full.steps.end(), a.steps.begin(), a.steps.end());
    return src_->query(full);
  }

 private:
  SourcePtr src_;
  Address base_;
};

}  // namespace

SourcePtr literal_source(TermPtr data_term) {
  return std::make_shared<LiteralSource>(std::move(data_term));
}

SourcePtr stream_source(std::function<Constructor(std::size_t)> symbol_at) {
  return std::make_shared<StreamSource>(std::move(symbol_at));
}

SourcePtr unknown_source() { return std::make_shared<UnknownSource>(); }

SourcePtr subtree_source(SourcePtr src, Address a) {
  if (a.is_root()) return src;
  return std::make_shared<SubtreeSource>(std::move(src), std::move(a));
}

namespace {

FinitePrefix prefix_from(const HyperTermSource& src, const Address& at,
                         std::size_t depth) {
  if (depth == 0) return FinitePrefix{};
  ConstructorQuery q = src.query(at);
  if (!q.is_known()) return FinitePrefix{};  // Unknown surfaces as Unexplored
  FinitePrefix p;
  p.ctor = q.ctor;
  p.children.reserve(q.ctor->arity);
  for (std::size_t i = 0; i < q.ctor->arity; ++i)
    p.children.push_back(prefix_from(src, at.child(i), depth - 1));
  return p;
}

}  // namespace

FinitePrefix prefix(const HyperTermSource& src, std::size_t depth) {
  return prefix_from(src, Address{}, depth);
}

std::string to_string(const FinitePrefix& p) {
  if (p.is_unexplored()) return "...";
  std::string s = p.ctor->name;
  if (!p.children.empty()) {
    s += "(";
    for (std::size_t i = 0; i < p.children.size(); ++i) {
      if (i) s += ",";
      s += to_string(p.children[i]);
    }
    s += ")";
  }
  return s;
}

SourcePtr semantic_destruct(SourcePtr src, std::size_t i, std::size_t m) {
  if (i < 1 || i > m)
    throw Error(ErrorCode::ChoiceOutOfRange,
                "destructor index " + std::to_string(i) + " out of 1.." +
                    std::to_string(m));
  ConstructorQuery root = src->query(Address{});
  if (root.state == QueryState::Unknown) return unknown_source();
  if (root.state == QueryState::OutOfRange) return src;
  if (i > root.ctor->arity) return src;  // identity past the arity
  return subtree_source(std::move(src), Address{}.child(i - 1));
}

}  // namespace cotype
