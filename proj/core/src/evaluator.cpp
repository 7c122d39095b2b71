#include "cotype/evaluator.hpp"

#include <cassert>
#include <variant>

#include "cotype/error.hpp"

namespace cotype {

namespace {

// Lazy evaluation cells.  A cell moves monotonically towards Forced (head
// constructor known) or a stuck state; fuel-limited answers never overwrite
// a cell, so raising the budget can only resolve Unknown.
struct ValueCell;
using Value = std::shared_ptr<ValueCell>;

struct Env {
  std::map<std::string, Value> vars;
};
using EnvPtr = std::shared_ptr<const Env>;

struct Thunk {
  TermPtr term;
  EnvPtr env;
};
struct SourceRefV {
  SourcePtr src;
  Address at;
};
struct Forced {
  Constructor ctor;
  std::vector<Value> children;
};
struct Indirect {
  Value target;
};
struct StuckNoRule {};   // no equation can ever apply
struct PastLeaf {};      // a source answered OutOfRange here

struct ValueCell {
  std::variant<Thunk, SourceRefV, Forced, Indirect, StuckNoRule, PastLeaf> v;
};

Value mk(ValueCell cell) { return std::make_shared<ValueCell>(std::move(cell)); }

struct Fuel {
  std::size_t left;
  bool spend() {
    if (left == 0) return false;
    --left;
    return true;
  }
};

struct HeadResult {
  ConstructorQuery q;
  const std::vector<Value>* children = nullptr;  // valid when Known
};

class Machine {
 public:
  explicit Machine(const CertifiedProgram& p) : p_(p) {}

  HeadResult force_head(const Value& cell, Fuel& fuel);

 private:
  enum class PatMatch { Yes, No, Indeterminate };

  PatMatch match_value(const TermPtr& pat, const Value& v,
                       std::map<std::string, Value>& bindings, Fuel& fuel);

  const CertifiedProgram& p_;
};

Machine::PatMatch Machine::match_value(const TermPtr& pat, const Value& v,
                                       std::map<std::string, Value>& bindings,
                                       Fuel& fuel) {
  if (pat->kind == Term::Kind::Variable) {
    bindings[pat->name] = v;
    return PatMatch::Yes;
  }
  HeadResult h = force_head(v, fuel);
  if (h.q.state == QueryState::Unknown) return PatMatch::Indeterminate;
  if (h.q.state == QueryState::OutOfRange) return PatMatch::No;
  if (h.q.ctor->name != pat->name || h.q.ctor->arity != pat->args.size())
    return PatMatch::No;
  for (std::size_t i = 0; i < pat->args.size(); ++i) {
    PatMatch m = match_value(pat->args[i], (*h.children)[i], bindings, fuel);
    if (m != PatMatch::Yes) return m;
  }
  return PatMatch::Yes;
}

HeadResult Machine::force_head(const Value& cell, Fuel& fuel) {
  Value cur = cell;
  while (true) {
    if (auto* f = std::get_if<Forced>(&cur->v))
      return {ConstructorQuery::known(f->ctor), &f->children};
    if (std::get_if<StuckNoRule>(&cur->v))
      return {ConstructorQuery::unknown(), nullptr};
    if (std::get_if<PastLeaf>(&cur->v))
      return {ConstructorQuery::out_of_range(), nullptr};
    if (auto* ind = std::get_if<Indirect>(&cur->v)) {
      cur = ind->target;
      continue;
    }
    if (auto* sr = std::get_if<SourceRefV>(&cur->v)) {
      ConstructorQuery q = sr->src->query(sr->at);
      if (q.state == QueryState::Unknown)
        return {ConstructorQuery::unknown(), nullptr};
      if (q.state == QueryState::OutOfRange) {
        cur->v = PastLeaf{};
        continue;
      }
      std::vector<Value> kids;
      kids.reserve(q.ctor->arity);
      for (std::size_t i = 0; i < q.ctor->arity; ++i)
        kids.push_back(mk({SourceRefV{sr->src, sr->at.child(i)}}));
      cur->v = Forced{*q.ctor, std::move(kids)};
      continue;
    }

    auto& th = std::get<Thunk>(cur->v);
    const TermPtr t = th.term;
    const EnvPtr env = th.env;
    switch (t->kind) {
      case Term::Kind::Variable: {
        auto it = env->vars.find(t->name);
        if (it == env->vars.end())
          throw Error(ErrorCode::UnboundRhsVariable,
                      "unbound variable during evaluation: " + t->name);
        Value target = it->second;
        cur->v = Indirect{target};
        continue;
      }
      case Term::Kind::Ctor: {
        std::vector<Value> kids;
        kids.reserve(t->args.size());
        for (const TermPtr& a : t->args) kids.push_back(mk({Thunk{a, env}}));
        cur->v = Forced{Constructor{t->name, t->args.size()}, std::move(kids)};
        continue;
      }
      case Term::Kind::Fun: {
        std::vector<Value> args;
        args.reserve(t->args.size());
        for (const TermPtr& a : t->args) args.push_back(mk({Thunk{a, env}}));

        bool indeterminate = false;
        const ProgramEquation* selected = nullptr;
        std::map<std::string, Value> bindings;
        for (const ProgramEquation* eq : p_.equations_for(t->name)) {
          std::map<std::string, Value> b;
          PatMatch all = PatMatch::Yes;
          for (std::size_t i = 0;
               i < eq->patterns.size() && all == PatMatch::Yes; ++i)
            all = match_value(eq->patterns[i], args[i], b, fuel);
          if (all == PatMatch::Yes) {
            selected = eq;
            bindings = std::move(b);
            break;
          }
          if (all == PatMatch::Indeterminate) indeterminate = true;
        }
        if (selected == nullptr) {
          if (!indeterminate) cur->v = StuckNoRule{};
          return {ConstructorQuery::unknown(), nullptr};
        }
        if (!fuel.spend()) return {ConstructorQuery::unknown(), nullptr};
        auto newenv = std::make_shared<Env>();
        newenv->vars = std::move(bindings);
        cur->v = Thunk{selected->rhs, newenv};
        continue;
      }
    }
  }
}

EnvPtr env_from_valuation(const Valuation& val) {
  auto env = std::make_shared<Env>();
  for (const auto& [name, src] : val.bindings)
    env->vars[name] = mk({SourceRefV{src, Address{}}});
  return env;
}

// Descends from a root value along an address, then reads the head.
ConstructorQuery head_at(Machine& m, const Value& root, const Address& a,
                         Fuel& fuel) {
  Value cur = root;
  for (std::size_t step : a.steps) {
    HeadResult h = m.force_head(cur, fuel);
    if (h.q.state == QueryState::Unknown) return ConstructorQuery::unknown();
    if (h.q.state == QueryState::OutOfRange)
      return ConstructorQuery::out_of_range();
    if (step >= h.q.ctor->arity) return ConstructorQuery::out_of_range();
    cur = (*h.children)[step];
  }
  return m.force_head(cur, fuel).q;
}

}  // namespace

ConstructorQuery eval_head(const CertifiedProgram& p, const Valuation& env,
                           const TermPtr& t, const EvalConfig& cfg) {
  return eval_at(p, env, t, Address{}, cfg);
}

ConstructorQuery eval_at(const CertifiedProgram& p, const Valuation& env,
                         const TermPtr& t, const Address& a,
                         const EvalConfig& cfg) {
  if (a.length() > cfg.max_depth) return ConstructorQuery::unknown();
  Machine m(p);
  Value root = mk({Thunk{t, env_from_valuation(env)}});
  Fuel fuel{cfg.fuel};
  return head_at(m, root, a, fuel);
}

namespace {

class EvalSource final : public HyperTermSource {
 public:
  EvalSource(const CertifiedProgram& p, const Valuation& env, TermPtr t,
             EvalConfig cfg)
      : program_(p), term_(std::move(t)), cfg_(cfg),
        env_(env_from_valuation(env)) {
    root_ = mk({Thunk{term_, env_}});
  }

  ConstructorQuery query(const Address& a) const override {
    if (a.length() > cfg_.max_depth) return ConstructorQuery::unknown();
    Machine m(program_);
    Fuel fuel{cfg_.fuel};
    if (cfg_.memo) return head_at(m, root_, a, fuel);
    Value fresh = mk({Thunk{term_, env_}});
    return head_at(m, fresh, a, fuel);
  }

 private:
  CertifiedProgram program_;  // shared equation storage; cheap copy
  TermPtr term_;
  EvalConfig cfg_;
  EnvPtr env_;
  Value root_;
};

}  // namespace

SourcePtr as_source(const CertifiedProgram& p, const Valuation& env,
                    const TermPtr& t, const EvalConfig& cfg) {
  return std::make_shared<EvalSource>(p, env, t, cfg);
}

namespace {

std::optional<TermPtr> force_data(Machine& m, const Value& v, Fuel& fuel) {
  HeadResult h = m.force_head(v, fuel);
  if (h.q.state != QueryState::Known) return std::nullopt;
  std::vector<TermPtr> kids;
  kids.reserve(h.q.ctor->arity);
  for (const Value& c : *h.children) {
    auto sub = force_data(m, c, fuel);
    if (!sub) return std::nullopt;
    kids.push_back(*sub);
  }
  return make_ctor(*h.q.ctor, std::move(kids));
}

}  // namespace

std::optional<TermPtr> finite_eval(const CertifiedProgram& p,
                                   const std::string& fn,
                                   const std::vector<TermPtr>& args,
                                   std::size_t step_bound) {
  auto id = p.find_function(fn);
  if (!id)
    throw Error(ErrorCode::UnknownIdentifier, "unknown function: " + fn);
  TermPtr call = make_fun(id->name, id->arity, args);
  Machine m(p);
  Value root = mk({Thunk{call, std::make_shared<Env>()}});
  Fuel fuel{step_bound};
  return force_data(m, root, fuel);
}

namespace {

struct CmpState {
  bool found_no = false;
  Address witness;
  std::string note;
  bool any_unknown = false;
};

void compare_values(Machine& m, const EvalConfig& cfg, const Value& a,
                    const Value& b, const Address& at, std::size_t depth_left,
                    CmpState& st) {
  if (st.found_no) return;
  Fuel fuel{cfg.fuel};
  HeadResult ha = m.force_head(a, fuel);
  HeadResult hb = m.force_head(b, fuel);
  if (ha.q.state == QueryState::Unknown || hb.q.state == QueryState::Unknown) {
    st.any_unknown = true;
    return;
  }
  if (ha.q.state != hb.q.state) {
    st.found_no = true;
    st.witness = at;
    st.note = "presence mismatch";
    return;
  }
  if (ha.q.state == QueryState::OutOfRange) return;
  if (!(*ha.q.ctor == *hb.q.ctor)) {
    st.found_no = true;
    st.witness = at;
    st.note = ha.q.ctor->name + " vs " + hb.q.ctor->name;
    return;
  }
  if (depth_left == 0) return;
  for (std::size_t i = 0; i < ha.q.ctor->arity && !st.found_no; ++i)
    compare_values(m, cfg, (*ha.children)[i], (*hb.children)[i], at.child(i),
                   depth_left - 1, st);
}

}  // namespace

Verdict3 locally_equal(const CertifiedProgram& p, const Valuation& env,
                       const TermPtr& t, const TermPtr& q, std::size_t depth,
                       const EvalConfig& cfg) {
  Machine m(p);
  EnvPtr e = env_from_valuation(env);
  Value va = mk({Thunk{t, e}});
  Value vb = mk({Thunk{q, e}});
  CmpState st;
  compare_values(m, cfg, va, vb, Address{}, depth, st);
  if (st.found_no) return Verdict3::no(st.witness, st.note);
  if (st.any_unknown) return Verdict3::unknown(UnknownReason::Fuel);
  return Verdict3::yes();
}

}  // namespace cotype
