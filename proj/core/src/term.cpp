#include "cotype/term.hpp"

#include <algorithm>
#include <sstream>

#include "cotype/error.hpp"

namespace cotype {

std::string to_string(const Address& a) {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    if (i) os << ",";
    os << a.steps[i];
  }
  os << ">";
  return os.str();
}

TermPtr make_var(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Variable;
  t->name = std::move(name);
  return t;
}

TermPtr make_ctor(const Constructor& c, std::vector<TermPtr> args) {
  if (args.size() != c.arity)
    throw Error(ErrorCode::ArityMismatch,
                "constructor " + c.name + "/" + std::to_string(c.arity) +
                    " applied to " + std::to_string(args.size()) + " args");
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Ctor;
  t->name = c.name;
  t->arity = c.arity;
  t->args = std::move(args);
  return t;
}

TermPtr make_fun(std::string name, std::size_t arity,
                 std::vector<TermPtr> args) {
  if (args.size() != arity)
    throw Error(ErrorCode::ArityMismatch,
                "function " + name + "/" + std::to_string(arity) +
                    " applied to " + std::to_string(args.size()) + " args");
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Fun;
  t->name = std::move(name);
  t->arity = arity;
  t->args = std::move(args);
  return t;
}

bool is_data_term(const TermPtr& t) {
  if (t->kind != Term::Kind::Ctor) return false;
  return std::all_of(t->args.begin(), t->args.end(), is_data_term);
}

bool is_base_term(const TermPtr& t) {
  if (t->kind == Term::Kind::Variable) return true;
  if (t->kind != Term::Kind::Ctor) return false;
  return std::all_of(t->args.begin(), t->args.end(), is_base_term);
}

std::size_t term_height(const TermPtr& t) {
  std::size_t h = 0;
  for (const TermPtr& a : t->args) h = std::max(h, term_height(a) + 1);
  return h;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->name != b->name ||
      a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!term_equal(a->args[i], b->args[i])) return false;
  return true;
}

std::string to_string(const TermPtr& t) {
  std::string s = t->name;
  if (!t->args.empty()) {
    s += "(";
    for (std::size_t i = 0; i < t->args.size(); ++i) {
      if (i) s += ",";
      s += to_string(t->args[i]);
    }
    s += ")";
  }
  return s;
}

void collect_vars(const TermPtr& t, std::vector<std::string>& out) {
  if (t->kind == Term::Kind::Variable) {
    out.push_back(t->name);
    return;
  }
  for (const TermPtr& a : t->args) collect_vars(a, out);
}

}  // namespace cotype
