#include "cotype/typecheck.hpp"

#include <algorithm>

#include "cotype/error.hpp"

namespace cotype {

std::string to_string(const MembershipVerdict& v) {
  switch (v.kind) {
    case MembershipVerdict::Kind::Derived:
      return "Derived";
    case MembershipVerdict::Kind::VerifiedToHeight:
      return "VerifiedToHeight(" + std::to_string(v.height) + ")";
    case MembershipVerdict::Kind::Refuted: {
      std::string s = "Refuted(" + std::to_string(v.height) + ")";
      if (v.witness_addr) s += " at " + to_string(*v.witness_addr);
      if (!v.note.empty()) s += ": " + v.note;
      return s;
    }
    case MembershipVerdict::Kind::Unknown:
      return v.note.empty() ? "Unknown" : "Unknown: " + v.note;
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// T_D expansion tree

TDTree::TDTree(const ValidatedSystem& ds, std::string root_type)
    : ds_(&ds), root_(std::move(root_type)) {
  if (ds.polarity_of(root_) != Polarity::Coinductive)
    throw Error(ErrorCode::PolarityError,
                "expansion tree root " + root_ + " is not coinductive");
}

namespace {

ExpansionNode::Node* node_at(ExpansionNode::Node& root, const Address& a) {
  ExpansionNode::Node* n = &root;
  for (std::size_t step : a.steps) n = &n->children[step];
  return n;
}

const ExpansionNode::Node* node_at(const ExpansionNode::Node& root,
                                   const Address& a) {
  const ExpansionNode::Node* n = &root;
  for (std::size_t step : a.steps) n = &n->children[step];
  return n;
}

}  // namespace

std::size_t TDTree::child_count(const ExpansionNode& n) const {
  if (n.pending.empty()) return 0;
  const ExpansionNode::Node* leaf = node_at(n.root, n.pending.front());
  return ds_->disjuncts(leaf->type).size();
}

ExpansionNode TDTree::expand(const ExpansionNode& n, std::size_t choice) const {
  if (n.pending.empty())
    throw Error(ErrorCode::ChoiceOutOfRange, "node is terminal");
  ExpansionNode out = n;
  Address at = out.pending.front();
  out.pending.pop_front();
  ExpansionNode::Node* leaf = node_at(out.root, at);
  const auto& rules = ds_->disjuncts(leaf->type);
  if (choice >= rules.size())
    throw Error(ErrorCode::ChoiceOutOfRange,
                "disjunct " + std::to_string(choice) + " of " + leaf->type +
                    " (has " + std::to_string(rules.size()) + ")");
  const ConstructorStatement& stmt = rules[choice];
  leaf->ctor = stmt.ctor;
  std::size_t bundle = ds_->bundle_of(leaf->type);
  for (std::size_t i = 0; i < stmt.component_types.size(); ++i) {
    leaf->children.push_back({stmt.component_types[i], std::nullopt, {}});
    // Same-bundle leaves queue up for breadth-first expansion; lower-rank
    // leaves are terminal.
    if (ds_->bundle_of(stmt.component_types[i]) == bundle)
      out.pending.push_back(at.child(i));
  }
  out.height = n.height + 1;
  return out;
}

ExpansionNode TDTree::node(const std::vector<std::size_t>& path) const {
  ExpansionNode n;
  n.root = {root_, std::nullopt, {}};
  n.pending.push_back(Address{});
  n.height = 0;
  for (std::size_t choice : path) n = expand(n, choice);
  return n;
}

ExpansionNode td_node(const ValidatedSystem& ds, const std::string& type,
                      const std::vector<std::size_t>& path) {
  return TDTree(ds, type).node(path);
}

// ---------------------------------------------------------------------------
// Consistency

namespace {

struct Consist {
  bool no = false;
  Address witness;
  std::string note;
  bool unknown = false;
};

void consistent_walk(const ValidatedSystem& ds, const ExpansionNode::Node& n,
                     std::size_t bundle, const SourcePtr& src,
                     const Address& at, const CheckParams& params,
                     Consist& st) {
  if (st.no) return;
  if (!n.ctor.has_value()) {
    // Leaf: same-bundle leaves are unconstrained; lower-rank leaves must
    // type-check with a fraction of the parent budget.
    if (ds.bundle_of(n.type) == bundle) return;
    CheckParams sub = params;
    sub.fuel = std::max<std::size_t>(1, params.fuel / 2);
    MembershipVerdict v =
        check_type(ds, n.type, subtree_source(src, at), sub);
    if (v.kind == MembershipVerdict::Kind::Refuted) {
      st.no = true;
      st.witness = at;
      st.note = "component of type " + n.type + " refuted";
    } else if (!v.positive()) {
      st.unknown = true;
    }
    return;
  }
  ConstructorQuery q = src->query(at);
  if (q.state == QueryState::Unknown) {
    st.unknown = true;
    return;
  }
  if (q.state == QueryState::OutOfRange) {
    st.no = true;
    st.witness = at;
    st.note = "no constructor where " + n.ctor->name + " is required";
    return;
  }
  if (!(*q.ctor == *n.ctor)) {
    st.no = true;
    st.witness = at;
    st.note = q.ctor->name + " vs required " + n.ctor->name;
    return;
  }
  for (std::size_t i = 0; i < n.children.size() && !st.no; ++i)
    consistent_walk(ds, n.children[i], bundle, src, at.child(i), params, st);
}

}  // namespace

Verdict3 consistent(const ValidatedSystem& ds, const ExpansionNode& node,
                    const SourcePtr& src, const CheckParams& params) {
  Consist st;
  consistent_walk(ds, node.root, ds.bundle_of(node.root.type), src, Address{},
                  params, st);
  if (st.no) return Verdict3::no(st.witness, st.note);
  if (st.unknown) return Verdict3::unknown(UnknownReason::Fuel);
  return Verdict3::yes();
}

// ---------------------------------------------------------------------------
// Inductive membership

namespace {

MembershipVerdict check_inductive_at(const ValidatedSystem& ds,
                                     const std::string& type,
                                     const SourcePtr& root, const Address& at,
                                     std::size_t hfuel,
                                     const CheckParams& params);

// Outcome of one disjunct at one address.
MembershipVerdict try_disjunct(const ValidatedSystem& ds,
                               const ConstructorStatement& stmt,
                               std::size_t disjunct_index,
                               const std::string& type, const SourcePtr& root,
                               const Address& at, const Constructor& head,
                               std::size_t hfuel, const CheckParams& params) {
  MembershipVerdict out;
  if (!(stmt.ctor == head)) {
    out.kind = MembershipVerdict::Kind::Refuted;
    out.witness_addr = at;
    out.note = "head " + head.name + " vs " + stmt.ctor.name;
    return out;
  }
  Derivation wit;
  wit.type = type;
  wit.disjunct = disjunct_index;
  wit.ctor = head;
  wit.lower_rank.assign(stmt.component_types.size(), "");
  bool unknown = false;
  std::size_t bundle = ds.bundle_of(type);
  for (std::size_t i = 0; i < stmt.component_types.size(); ++i) {
    const std::string& comp = stmt.component_types[i];
    MembershipVerdict sub;
    if (ds.bundle_of(comp) == bundle) {
      sub = check_inductive_at(ds, comp, root, at.child(i), hfuel - 1, params);
      if (sub.kind == MembershipVerdict::Kind::Derived)
        wit.subs.push_back(*sub.witness);
    } else {
      CheckParams lower = params;
      lower.fuel = std::max<std::size_t>(1, params.fuel / 2);
      sub = check_type(ds, comp, subtree_source(root, at.child(i)), lower);
      wit.lower_rank[i] = comp;
    }
    if (sub.kind == MembershipVerdict::Kind::Refuted) {
      out.kind = MembershipVerdict::Kind::Refuted;
      out.witness_addr = sub.witness_addr;
      out.note = sub.note;
      return out;
    }
    if (!sub.positive()) unknown = true;
  }
  if (unknown) {
    out.kind = MembershipVerdict::Kind::Unknown;
    return out;
  }
  out.kind = MembershipVerdict::Kind::Derived;
  out.witness = std::move(wit);
  return out;
}

MembershipVerdict check_inductive_at(const ValidatedSystem& ds,
                                     const std::string& type,
                                     const SourcePtr& root, const Address& at,
                                     std::size_t hfuel,
                                     const CheckParams& params) {
  MembershipVerdict out;
  if (hfuel == 0) {
    out.kind = MembershipVerdict::Kind::Unknown;
    out.note = "derivation height bound reached";
    return out;
  }
  ConstructorQuery q = root->query(at);
  if (q.state == QueryState::Unknown) {
    out.kind = MembershipVerdict::Kind::Unknown;
    out.note = "head not resolved at " + to_string(at);
    return out;
  }
  if (q.state == QueryState::OutOfRange) {
    out.kind = MembershipVerdict::Kind::Refuted;
    out.witness_addr = at;
    out.note = "no constructor at " + to_string(at);
    return out;
  }
  const auto& rules = ds.disjuncts(type);
  bool any_unknown = false;
  std::size_t refuted_count = 0;
  std::optional<Address> refuted_at;
  std::string refuted_note;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    MembershipVerdict r = try_disjunct(ds, rules[i], i, type, root, at,
                                       *q.ctor, hfuel, params);
    if (r.kind == MembershipVerdict::Kind::Derived) return r;
    if (r.kind == MembershipVerdict::Kind::Refuted) {
      ++refuted_count;
      if (!refuted_at) {
        refuted_at = r.witness_addr;
        refuted_note = r.note;
      }
    } else {
      any_unknown = true;
    }
  }
  if (!any_unknown) {
    out.kind = MembershipVerdict::Kind::Refuted;
    out.witness_addr = refuted_at;
    out.note = rules.empty() ? "empty inductive type" : refuted_note;
    return out;
  }
  out.kind = MembershipVerdict::Kind::Unknown;
  return out;
}

}  // namespace

MembershipVerdict check_inductive(const ValidatedSystem& ds,
                                  const std::string& type,
                                  const SourcePtr& src,
                                  const CheckParams& params) {
  if (ds.polarity_of(type) == Polarity::Coinductive)
    throw Error(ErrorCode::PolarityError,
                "check_inductive on coinductive type " + type);
  return check_inductive_at(ds, type, src, Address{}, params.fuel, params);
}

bool verify_derivation(const ValidatedSystem& ds, const Derivation& d,
                       const SourcePtr& src, const CheckParams& params) {
  const auto& rules = ds.disjuncts(d.type);
  if (d.disjunct >= rules.size()) return false;
  const ConstructorStatement& stmt = rules[d.disjunct];
  if (!(stmt.ctor == d.ctor)) return false;
  ConstructorQuery q = src->query(Address{});
  if (!q.is_known() || !(*q.ctor == d.ctor)) return false;
  std::size_t bundle = ds.bundle_of(d.type);
  std::size_t sub_index = 0;
  for (std::size_t i = 0; i < stmt.component_types.size(); ++i) {
    const std::string& comp = stmt.component_types[i];
    SourcePtr child = subtree_source(src, Address{}.child(i));
    if (ds.bundle_of(comp) == bundle) {
      if (sub_index >= d.subs.size()) return false;
      if (d.subs[sub_index].type != comp) return false;
      if (!verify_derivation(ds, d.subs[sub_index], child, params))
        return false;
      ++sub_index;
    } else {
      if (!check_type(ds, comp, child, params).positive()) return false;
    }
  }
  return sub_index == d.subs.size();
}

// ---------------------------------------------------------------------------
// Coinductive membership: per-level search of T_D

MembershipVerdict check_coinductive(const ValidatedSystem& ds,
                                    const std::string& type,
                                    const SourcePtr& src,
                                    const CheckParams& params) {
  if (ds.polarity_of(type) == Polarity::Inductive)
    throw Error(ErrorCode::PolarityError,
                "check_coinductive on inductive type " + type);
  TDTree tree(ds, type);

  struct Entry {
    ExpansionNode node;
    bool definite;  // consistency was a definite Yes
  };

  std::vector<Entry> frontier;
  frontier.push_back({tree.node({}), true});  // bare leaf: no constraints
  std::size_t visited = 0;

  MembershipVerdict out;
  for (std::size_t level = 1; level <= params.height; ++level) {
    std::vector<Entry> next;
    for (const Entry& e : frontier) {
      if (e.node.terminal()) {
        // A terminating branch is a complete typing: definite consistency
        // proves membership outright.
        if (e.definite) {
          out.kind = MembershipVerdict::Kind::VerifiedToHeight;
          out.height = params.height;
          out.note = "complete typing at height " +
                     std::to_string(e.node.height);
          return out;
        }
        next.push_back(e);
        continue;
      }
      std::size_t n = tree.child_count(e.node);
      for (std::size_t choice = 0; choice < n; ++choice) {
        if (++visited > params.node_budget) {
          out.kind = MembershipVerdict::Kind::Unknown;
          out.note = "node budget exhausted at level " + std::to_string(level);
          return out;
        }
        ExpansionNode child = tree.expand(e.node, choice);
        Verdict3 v = consistent(ds, child, src, params);
        if (v.kind == Verdict3::Kind::No) continue;
        next.push_back({std::move(child), v.kind == Verdict3::Kind::Yes});
      }
    }
    if (next.empty()) {
      out.kind = MembershipVerdict::Kind::Refuted;
      out.height = level;
      out.note = "no consistent node at level " + std::to_string(level);
      // Recover one concrete mismatch for diagnostics.
      for (const Entry& e : frontier) {
        if (e.node.terminal()) continue;
        for (std::size_t c = 0; c < tree.child_count(e.node); ++c) {
          Verdict3 v = consistent(ds, tree.expand(e.node, c), src, params);
          if (v.kind == Verdict3::Kind::No) {
            out.witness_addr = v.witness;
            out.note += "; e.g. " + v.note;
            return out;
          }
        }
      }
      return out;
    }
    frontier = std::move(next);
  }
  for (const Entry& e : frontier) {
    if (e.definite) {
      out.kind = MembershipVerdict::Kind::VerifiedToHeight;
      out.height = params.height;
      return out;
    }
  }
  out.kind = MembershipVerdict::Kind::Unknown;
  out.note = "no definitely consistent node at level " +
             std::to_string(params.height);
  return out;
}

MembershipVerdict check_type(const ValidatedSystem& ds,
                             const std::string& type, const SourcePtr& src,
                             const CheckParams& params) {
  return ds.polarity_of(type) == Polarity::Inductive
             ? check_inductive(ds, type, src, params)
             : check_coinductive(ds, type, src, params);
}

// ---------------------------------------------------------------------------
// Typed equality

std::pair<CertifiedProgram, Constructor> eq_program(const Vocabulary& vocab) {
  std::string xi_name = "xi";
  while (vocab.contains(xi_name)) xi_name += "_";
  Constructor xi{xi_name, 0};
  Vocabulary ext = vocab.extended_with(xi);

  Program p;
  p.vocabulary = ext;
  p.principal = {"eq", 2};
  for (const Constructor& c : ext.constructors()) {
    for (const Constructor& d : ext.constructors()) {
      std::vector<TermPtr> xs, ys;
      for (std::size_t i = 0; i < c.arity; ++i)
        xs.push_back(make_var("x" + std::to_string(i)));
      for (std::size_t i = 0; i < d.arity; ++i)
        ys.push_back(make_var("y" + std::to_string(i)));
      TermPtr lhs_a = make_ctor(c, xs);
      TermPtr lhs_b = make_ctor(d, ys);
      TermPtr rhs;
      if (c.name == d.name) {
        std::vector<TermPtr> kids;
        for (std::size_t i = 0; i < c.arity; ++i)
          kids.push_back(make_fun("eq", 2, {xs[i], ys[i]}));
        rhs = make_ctor(c, std::move(kids));
      } else {
        rhs = make_ctor(xi, {});
      }
      p.equations.push_back({{"eq", 2}, {lhs_a, lhs_b}, rhs});
    }
  }
  return {check_wellformed(std::move(p)), xi};
}

MembershipVerdict typed_eq(const ValidatedSystem& ds, const std::string& type,
                           const SourcePtr& a, const SourcePtr& b,
                           const CheckParams& params) {
  auto [eqp, xi] = eq_program(ds.vocabulary());
  Valuation env;
  env.bindings["a"] = a;
  env.bindings["b"] = b;
  TermPtr call = make_fun("eq", 2, {make_var("a"), make_var("b")});
  EvalConfig cfg;
  cfg.fuel = params.fuel;
  cfg.max_depth = params.height + 64;
  SourcePtr merged = as_source(eqp, env, call, cfg);
  MembershipVerdict v = check_type(ds, type, merged, params);
  if (v.kind == MembershipVerdict::Kind::Refuted && v.witness_addr) {
    ConstructorQuery q = merged->query(*v.witness_addr);
    if (q.is_known() && q.ctor->name == xi.name)
      v.note += " (xi: inputs disagree at or below this address)";
  }
  return v;
}

// ---------------------------------------------------------------------------
// Program typing claims

std::vector<SampleReport> check_program_type(
    const ValidatedSystem& ds, const CertifiedProgram& p,
    const std::string& fn, const std::string& from_type,
    const std::string& to_type, const std::vector<SourcePtr>& samples,
    const CheckParams& params, const EvalConfig& eval_cfg) {
  auto id = p.find_function(fn);
  if (!id || id->arity != 1)
    throw Error(ErrorCode::UnknownIdentifier,
                "claim needs a unary program function, got " + fn);
  std::vector<SampleReport> out;
  for (const SourcePtr& s : samples) {
    SampleReport rep;
    rep.input_check = check_type(ds, from_type, s, params);
    if (rep.input_check.kind == MembershipVerdict::Kind::Refuted)
      throw Error(ErrorCode::SampleNotOfClaimedInputType,
                  "sample refuted for input type " + from_type + ": " +
                      to_string(rep.input_check));
    Valuation env;
    env.bindings["v"] = s;
    TermPtr call = make_fun(id->name, 1, {make_var("v")});
    SourcePtr output = as_source(p, env, call, eval_cfg);
    rep.output_check = check_type(ds, to_type, output, params);
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace cotype
