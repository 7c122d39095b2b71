#include "cotype/program.hpp"

#include <algorithm>
#include <set>

#include "cotype/error.hpp"

namespace cotype {

std::string destructor_name(std::size_t i, std::size_t m) {
  return "pi" + std::to_string(i) + "_" + std::to_string(m);
}

std::vector<ProgramEquation> standard_equations(const Vocabulary& v) {
  std::vector<ProgramEquation> out;
  // m is at least 1 so the destructor family is nonempty even for
  // all-nullary vocabularies; pi then acts as the identity everywhere.
  const std::size_t m = std::max<std::size_t>(1, v.max_arity());
  const std::size_t k = v.size();

  auto fresh_vars = [](std::size_t n, const std::string& stem) {
    std::vector<TermPtr> vs;
    for (std::size_t i = 0; i < n; ++i)
      vs.push_back(make_var(stem + std::to_string(i)));
    return vs;
  };

  for (std::size_t i = 1; i <= m; ++i) {
    for (const Constructor& c : v.constructors()) {
      std::vector<TermPtr> xs = fresh_vars(c.arity, "x");
      TermPtr pat = make_ctor(c, xs);
      TermPtr rhs = i <= c.arity ? xs[i - 1] : pat;
      out.push_back({{destructor_name(i, m), 1}, {pat}, rhs});
    }
  }
  for (std::size_t ci = 0; ci < k; ++ci) {
    const Constructor& c = v.constructors()[ci];
    std::vector<TermPtr> pats;
    pats.push_back(make_ctor(c, fresh_vars(c.arity, "y")));
    std::vector<TermPtr> branches = fresh_vars(k, "b");
    pats.insert(pats.end(), branches.begin(), branches.end());
    out.push_back({{discriminator_name(), k + 1}, pats, branches[ci]});
  }
  return out;
}

namespace {

TermPtr walk(TermPtr t, const Subst& s) {
  while (t->kind == Term::Kind::Variable) {
    auto it = s.find(t->name);
    if (it == s.end()) break;
    t = it->second;
  }
  return t;
}

bool occurs(const std::string& var, const TermPtr& t, const Subst& s) {
  TermPtr w = walk(t, s);
  if (w->kind == Term::Kind::Variable) return w->name == var;
  for (const TermPtr& a : w->args)
    if (occurs(var, a, s)) return true;
  return false;
}

bool unify_into(const TermPtr& a, const TermPtr& b, Subst& s) {
  TermPtr x = walk(a, s), y = walk(b, s);
  if (x->kind == Term::Kind::Variable) {
    if (y->kind == Term::Kind::Variable && y->name == x->name) return true;
    if (occurs(x->name, y, s)) return false;
    s[x->name] = y;
    return true;
  }
  if (y->kind == Term::Kind::Variable) return unify_into(y, x, s);
  if (x->name != y->name || x->args.size() != y->args.size()) return false;
  for (std::size_t i = 0; i < x->args.size(); ++i)
    if (!unify_into(x->args[i], y->args[i], s)) return false;
  return true;
}

}  // namespace

std::optional<Subst> unify(const TermPtr& a, const TermPtr& b) {
  Subst s;
  if (!unify_into(a, b, s)) return std::nullopt;
  return s;
}

std::optional<Subst> unify_tuples(const std::vector<TermPtr>& a,
                                  const std::vector<TermPtr>& b) {
  if (a.size() != b.size()) return std::nullopt;
  Subst s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!unify_into(a[i], b[i], s)) return std::nullopt;
  return s;
}

TermPtr apply_subst(const TermPtr& t, const Subst& s) {
  if (t->kind == Term::Kind::Variable) {
    auto it = s.find(t->name);
    if (it == s.end()) return t;
    return apply_subst(it->second, s);
  }
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (const TermPtr& a : t->args) {
    args.push_back(apply_subst(a, s));
    changed = changed || args.back() != a;
  }
  if (!changed) return t;
  auto copy = std::make_shared<Term>(*t);
  copy->args = std::move(args);
  return copy;
}

namespace {

TermPtr rename_vars(const TermPtr& t, const std::string& suffix) {
  if (t->kind == Term::Kind::Variable) return make_var(t->name + suffix);
  auto copy = std::make_shared<Term>(*t);
  for (TermPtr& a : copy->args) a = rename_vars(a, suffix);
  return copy;
}

/// Renames variables to their order of first occurrence, so alpha-variant
/// equations compare equal.
TermPtr canonicalize(const TermPtr& t, std::map<std::string, std::string>& m) {
  if (t->kind == Term::Kind::Variable) {
    auto [it, fresh] = m.emplace(t->name, "#" + std::to_string(m.size()));
    (void)fresh;
    return make_var(it->second);
  }
  std::vector<TermPtr> args;
  for (const TermPtr& a : t->args) args.push_back(canonicalize(a, m));
  if (t->kind == Term::Kind::Ctor)
    return make_ctor({t->name, t->arity}, std::move(args));
  return make_fun(t->name, t->arity, std::move(args));
}

bool same_equation(const ProgramEquation& a, const ProgramEquation& b) {
  if (!(a.fn == b.fn) || a.patterns.size() != b.patterns.size()) return false;
  std::map<std::string, std::string> ma, mb;
  for (std::size_t i = 0; i < a.patterns.size(); ++i)
    if (!term_equal(canonicalize(a.patterns[i], ma),
                    canonicalize(b.patterns[i], mb)))
      return false;
  return term_equal(canonicalize(a.rhs, ma), canonicalize(b.rhs, mb));
}

}  // namespace

const std::vector<const ProgramEquation*>& CertifiedProgram::equations_for(
    const std::string& fn) const {
  auto it = by_function_.find(fn);
  return it == by_function_.end() ? empty_ : it->second;
}

std::optional<FunctionId> CertifiedProgram::find_function(
    const std::string& name) const {
  auto it = by_function_.find(name);
  if (it == by_function_.end()) return std::nullopt;
  return it->second.front()->fn;
}

CertifiedProgram check_wellformed(Program p) {
  // The standard destructor/discriminator equations are always present.
  for (ProgramEquation& eq : standard_equations(p.vocabulary))
    p.equations.push_back(std::move(eq));

  // Collapse duplicates (order is irrelevant under compatibility).
  std::vector<ProgramEquation> eqs;
  for (ProgramEquation& eq : p.equations) {
    bool dup = std::any_of(eqs.begin(), eqs.end(), [&](const ProgramEquation& e) {
      return same_equation(e, eq);
    });
    if (!dup) eqs.push_back(std::move(eq));
  }

  for (const ProgramEquation& eq : eqs) {
    if (eq.patterns.size() != eq.fn.arity)
      throw Error(ErrorCode::ArityMismatch,
                  "equation for " + eq.fn.name + " has " +
                      std::to_string(eq.patterns.size()) + " patterns");
    std::vector<std::string> vars;
    for (const TermPtr& pat : eq.patterns) {
      if (!is_base_term(pat))
        throw Error(ErrorCode::ArityMismatch,
                    "pattern of " + eq.fn.name + " is not a base term");
      collect_vars(pat, vars);
    }
    std::set<std::string> seen;
    for (const std::string& v : vars)
      if (!seen.insert(v).second)
        throw Error(ErrorCode::NonLinearPattern,
                    "variable " + v + " repeats in the patterns of " +
                        eq.fn.name);
    std::vector<std::string> rhs_vars;
    collect_vars(eq.rhs, rhs_vars);
    for (const std::string& v : rhs_vars)
      if (!seen.count(v))
        throw Error(ErrorCode::UnboundRhsVariable,
                    "variable " + v + " free in the rhs of " + eq.fn.name);
  }

  for (std::size_t i = 0; i < eqs.size(); ++i) {
    for (std::size_t j = i + 1; j < eqs.size(); ++j) {
      if (!(eqs[i].fn == eqs[j].fn)) continue;
      std::vector<TermPtr> left, right;
      for (const TermPtr& t : eqs[i].patterns)
        left.push_back(rename_vars(t, "#l"));
      for (const TermPtr& t : eqs[j].patterns)
        right.push_back(rename_vars(t, "#r"));
      if (auto mgu = unify_tuples(left, right)) {
        std::string witness;
        for (const auto& [v, t] : *mgu)
          witness += " " + v + "->" + to_string(apply_subst(t, *mgu));
        throw Error(ErrorCode::IncompatiblePair,
                    "equations for " + eqs[i].fn.name +
                        " have unifiable left-hand sides; unifier:" + witness);
      }
    }
  }

  CertifiedProgram cp;
  cp.vocab_ = p.vocabulary;
  cp.principal_ = p.principal;
  cp.equations_ = std::make_shared<std::vector<ProgramEquation>>(std::move(eqs));
  for (const ProgramEquation& eq : *cp.equations_)
    cp.by_function_[eq.fn.name].push_back(&eq);
  return cp;
}

namespace {

enum class PatMatch { Yes, No, Indeterminate };

// Matches one pattern against the observed prefix of argument `arg` rooted
// at `at`.  On Yes, variable bindings name subtree positions.
PatMatch match_pattern(const TermPtr& pat, std::size_t arg, const Address& at,
                       const ArgObserver& observe, MatchOutcome& out,
                       bool& saw_need, std::size_t& need_arg,
                       Address& need_addr) {
  if (pat->kind == Term::Kind::Variable) {
    out.bindings[pat->name] = {arg, at};
    return PatMatch::Yes;
  }
  ConstructorQuery q = observe(arg, at);
  if (q.state == QueryState::Unknown) {
    if (!saw_need) {
      saw_need = true;
      need_arg = arg;
      need_addr = at;
    }
    return PatMatch::Indeterminate;
  }
  if (q.state == QueryState::OutOfRange) return PatMatch::No;
  if (q.ctor->name != pat->name || q.ctor->arity != pat->args.size())
    return PatMatch::No;
  for (std::size_t i = 0; i < pat->args.size(); ++i) {
    PatMatch m = match_pattern(pat->args[i], arg, at.child(i), observe, out,
                               saw_need, need_arg, need_addr);
    if (m != PatMatch::Yes) return m;
  }
  return PatMatch::Yes;
}

}  // namespace

MatchOutcome match_equation(const CertifiedProgram& p, const std::string& fn,
                            const ArgObserver& observe) {
  bool any_indeterminate = false;
  std::size_t first_need_arg = 0;
  Address first_need_addr;
  bool have_need = false;

  for (const ProgramEquation* eq : p.equations_for(fn)) {
    MatchOutcome out;
    bool saw_need = false;
    std::size_t need_arg = 0;
    Address need_addr;
    PatMatch all = PatMatch::Yes;
    for (std::size_t i = 0; i < eq->patterns.size() && all == PatMatch::Yes;
         ++i)
      all = match_pattern(eq->patterns[i], i, Address{}, observe, out,
                          saw_need, need_arg, need_addr);
    if (all == PatMatch::Yes) {
      out.kind = MatchOutcome::Kind::Selected;
      out.equation = eq;
      return out;
    }
    if (all == PatMatch::Indeterminate) {
      any_indeterminate = true;
      // Report the shallowest unresolved address across equations.
      if (!have_need || need_addr.length() < first_need_addr.length()) {
        have_need = true;
        first_need_arg = need_arg;
        first_need_addr = need_addr;
      }
    }
  }

  MatchOutcome out;
  if (any_indeterminate) {
    out.kind = MatchOutcome::Kind::NeedMore;
    out.need_arg = first_need_arg;
    out.need_addr = first_need_addr;
  } else {
    out.kind = MatchOutcome::Kind::NoMatch;
  }
  return out;
}

}  // namespace cotype
