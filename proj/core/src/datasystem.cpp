#include "cotype/datasystem.hpp"

#include <set>

#include "cotype/error.hpp"

namespace cotype {

std::string to_string(const Rank& r) {
  return (r.side == Rank::Side::Sigma ? "Sigma " : "Pi ") +
         std::to_string(r.level);
}

std::map<std::string, std::vector<ConstructorStatement>> package_inductive(
    const Bundle& b) {
  if (b.polarity != Polarity::Inductive)
    throw Error(ErrorCode::PolarityError,
                "package_inductive on a coinductive bundle");
  std::map<std::string, std::vector<ConstructorStatement>> out;
  for (const std::string& t : b.types) out[t];  // empty lists are legal
  for (const InductiveRule& r : b.inductive_rules)
    out[r.target].push_back(r.stmt);
  return out;
}

Rank rank_of_polarities(const std::vector<Polarity>& ps) {
  Rank r;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    Rank::Side side =
        ps[i] == Polarity::Inductive ? Rank::Side::Sigma : Rank::Side::Pi;
    if (i == 0) {
      r = Rank{side, 1};
    } else if (side != r.side) {
      r = Rank{side, r.level + 1};
    }
  }
  return r;
}

bool ValidatedSystem::has_type(const std::string& type) const {
  return bundle_index_.count(type) > 0;
}

Polarity ValidatedSystem::polarity_of(const std::string& type) const {
  return sys_.bundles[bundle_of(type)].polarity;
}

std::size_t ValidatedSystem::bundle_of(const std::string& type) const {
  auto it = bundle_index_.find(type);
  if (it == bundle_index_.end())
    throw Error(ErrorCode::UnknownIdentifier, "unknown type: " + type);
  return it->second;
}

const std::vector<ConstructorStatement>& ValidatedSystem::disjuncts(
    const std::string& type) const {
  bundle_of(type);  // existence check
  return disjuncts_.at(type);
}

std::size_t ValidatedSystem::rank_of_type(const std::string& type) const {
  return prefix_ranks_[bundle_of(type)].level;
}

ValidatedSystem validate(DataSystem ds) {
  ValidatedSystem v;

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ds.bundles.size(); ++i) {
    const Bundle& b = ds.bundles[i];
    if (b.types.empty())
      throw Error(ErrorCode::DuplicateTypeName,
                  "bundle " + std::to_string(i) + " declares no types");
    for (const std::string& t : b.types)
      if (!index.emplace(t, i).second)
        throw Error(ErrorCode::DuplicateTypeName, "duplicate type name: " + t);
  }

  auto check_statement = [&](const ConstructorStatement& s,
                             std::size_t bundle) {
    if (!ds.vocabulary.contains(s.ctor.name) ||
        ds.vocabulary.find(s.ctor.name)->arity != s.ctor.arity)
      throw Error(ErrorCode::UnknownIdentifier,
                  "constructor not in vocabulary: " + s.ctor.name + "/" +
                      std::to_string(s.ctor.arity));
    if (s.component_types.size() != s.ctor.arity)
      throw Error(ErrorCode::ArityMismatch,
                  "statement for " + s.ctor.name + " has " +
                      std::to_string(s.component_types.size()) +
                      " component types, arity is " +
                      std::to_string(s.ctor.arity));
    for (const std::string& q : s.component_types) {
      auto it = index.find(q);
      if (it == index.end())
        throw Error(ErrorCode::UnknownIdentifier, "unknown type: " + q);
      // Same-bundle references are joint generation; later bundles are not
      // allowed ("from the types in D_j, j < i", stratification).
      if (it->second > bundle)
        throw Error(ErrorCode::StratificationViolation,
                    "type " + q + " of bundle " + std::to_string(it->second) +
                        " referenced from bundle " + std::to_string(bundle));
    }
  };

  for (std::size_t i = 0; i < ds.bundles.size(); ++i) {
    const Bundle& b = ds.bundles[i];
    std::set<std::string> own(b.types.begin(), b.types.end());
    if (b.polarity == Polarity::Inductive) {
      if (!b.coinductive_rules.empty())
        throw Error(ErrorCode::PolarityError,
                    "inductive bundle carries deconstruction rules");
      for (const InductiveRule& r : b.inductive_rules) {
        if (!own.count(r.target))
          throw Error(ErrorCode::UnknownIdentifier,
                      "rule targets " + r.target + " outside its bundle");
        check_statement(r.stmt, i);
      }
      for (auto& [t, ds_list] : package_inductive(b)) {
        if (ds_list.empty()) v.warnings_.push_back("empty inductive type " + t);
        v.disjuncts_[t] = ds_list;
      }
    } else {
      if (!b.inductive_rules.empty())
        throw Error(ErrorCode::PolarityError,
                    "coinductive bundle carries construction rules");
      for (const std::string& t : b.types) {
        auto it = b.coinductive_rules.find(t);
        if (it == b.coinductive_rules.end() || it->second.empty())
          throw Error(ErrorCode::CoinductiveRuleMissing,
                      "coinductive type " + t + " has no deconstruction rule");
        for (const ConstructorStatement& s : it->second) check_statement(s, i);
        v.disjuncts_[t] = it->second;
      }
      for (const auto& [t, _] : b.coinductive_rules)
        if (!own.count(t))
          throw Error(ErrorCode::UnknownIdentifier,
                      "deconstruction rule for " + t + " outside its bundle");
    }
  }

  std::vector<Polarity> ps;
  for (const Bundle& b : ds.bundles) {
    ps.push_back(b.polarity);
    v.prefix_ranks_.push_back(rank_of_polarities(ps));
  }
  v.rank_ = ds.bundles.empty() ? Rank{} : v.prefix_ranks_.back();
  v.bundle_index_ = std::move(index);
  v.sys_ = std::move(ds);
  return v;
}

Rank classify_rank(const ValidatedSystem& ds) { return ds.rank(); }

}  // namespace cotype
