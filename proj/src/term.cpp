#include "stc/term.hpp"

#include <sstream>

namespace stc {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::unbound_variable: return "unbound_variable";
    case Errc::not_a_function: return "not_a_function";
    case Errc::not_a_type: return "not_a_type";
    case Errc::motive_mismatch: return "motive_mismatch";
    case Errc::cannot_infer: return "cannot_infer";
    case Errc::type_mismatch: return "type_mismatch";
    case Errc::not_closed: return "not_closed";
    case Errc::stuck_term: return "stuck_term";
    case Errc::fuel_exhausted: return "fuel_exhausted";
    case Errc::scope_underflow: return "scope_underflow";
    case Errc::sort_mismatch: return "sort_mismatch";
    case Errc::glue_formation: return "glue_formation";
    case Errc::section_violation: return "section_violation";
    case Errc::parse_error: return "parse_error";
    case Errc::io_error: return "io_error";
    case Errc::usage_error: return "usage_error";
  }
  return "unknown";
}

bool errc_is_usage(Errc c) {
  return c == Errc::parse_error || c == Errc::io_error || c == Errc::usage_error;
}

Term Term::make(Tag t, uint32_t index, std::vector<Term> kids) {
  auto n = std::make_shared<Node>();
  n->tag = t;
  n->index = index;
  n->kids = std::move(kids);
  return Term(std::move(n));
}

Term Term::var(uint32_t index) { return make(Tag::Var, index, {}); }
Term Term::tp() { static const Term t = make(Tag::Tp, 0, {}); return t; }
Term Term::tm(Term of) { return make(Tag::Tm, 0, {std::move(of)}); }
Term Term::boolean() { static const Term t = make(Tag::Bool, 0, {}); return t; }
Term Term::tru() { static const Term t = make(Tag::True, 0, {}); return t; }
Term Term::fls() { static const Term t = make(Tag::False, 0, {}); return t; }
Term Term::ifelim(Term motive, Term scrut, Term tbranch, Term fbranch) {
  return make(Tag::If, 0, {std::move(motive), std::move(scrut), std::move(tbranch), std::move(fbranch)});
}
Term Term::pi(Term dom, Term cod) { return make(Tag::Pi, 0, {std::move(dom), std::move(cod)}); }
Term Term::lam(Term body) { return make(Tag::Lam, 0, {std::move(body)}); }
Term Term::app(Term fun, Term arg) { return make(Tag::App, 0, {std::move(fun), std::move(arg)}); }
Term Term::u0() { static const Term t = make(Tag::U0, 0, {}); return t; }
Term Term::u1() { static const Term t = make(Tag::U1, 0, {}); return t; }

bool kid_binds(Tag t, size_t i) {
  switch (t) {
    case Tag::If: return i == 0;   // motive
    case Tag::Pi: return i == 1;   // codomain
    case Tag::Lam: return i == 0;  // body
    default: return false;
  }
}

bool alpha_eq(const Term& a, const Term& b) {
  if (a.ptr_eq(b)) return true;
  if (a.tag() != b.tag()) return false;
  if (a.tag() == Tag::Var) return a.index() == b.index();
  if (a.arity() != b.arity()) return false;
  for (size_t i = 0; i < a.arity(); ++i)
    if (!alpha_eq(a.kid(i), b.kid(i))) return false;
  return true;
}

Term shift(const Term& t, uint32_t cutoff, int64_t amount) {
  if (amount == 0) return t;
  switch (t.tag()) {
    case Tag::Var: {
      if (t.index() < cutoff) return t;
      int64_t moved = static_cast<int64_t>(t.index()) + amount;
      if (moved < static_cast<int64_t>(cutoff))
        throw Error(Errc::scope_underflow, "shift underflow at index " + std::to_string(t.index()));
      return Term::var(static_cast<uint32_t>(moved));
    }
    case Tag::Tp:
    case Tag::Bool:
    case Tag::True:
    case Tag::False:
    case Tag::U0:
    case Tag::U1:
      return t;
    default: {
      std::vector<Term> kids;
      kids.reserve(t.arity());
      bool changed = false;
      for (size_t i = 0; i < t.arity(); ++i) {
        uint32_t c = cutoff + (kid_binds(t.tag(), i) ? 1 : 0);
        kids.push_back(shift(t.kid(i), c, amount));
        changed = changed || !kids.back().ptr_eq(t.kid(i));
      }
      if (!changed) return t;
      switch (t.tag()) {
        case Tag::Tm: return Term::tm(kids[0]);
        case Tag::If: return Term::ifelim(kids[0], kids[1], kids[2], kids[3]);
        case Tag::Pi: return Term::pi(kids[0], kids[1]);
        case Tag::Lam: return Term::lam(kids[0]);
        case Tag::App: return Term::app(kids[0], kids[1]);
        default: return t;
      }
    }
  }
}

Term subst(const Term& t, uint32_t target, const Term& u) {
  switch (t.tag()) {
    case Tag::Var: {
      if (t.index() == target) return shift(u, 0, static_cast<int64_t>(target));
      if (t.index() > target) return Term::var(t.index() - 1);
      return t;
    }
    case Tag::Tp:
    case Tag::Bool:
    case Tag::True:
    case Tag::False:
    case Tag::U0:
    case Tag::U1:
      return t;
    default: {
      std::vector<Term> kids;
      kids.reserve(t.arity());
      for (size_t i = 0; i < t.arity(); ++i) {
        uint32_t tg = target + (kid_binds(t.tag(), i) ? 1 : 0);
        kids.push_back(subst(t.kid(i), tg, u));
      }
      switch (t.tag()) {
        case Tag::Tm: return Term::tm(kids[0]);
        case Tag::If: return Term::ifelim(kids[0], kids[1], kids[2], kids[3]);
        case Tag::Pi: return Term::pi(kids[0], kids[1]);
        case Tag::Lam: return Term::lam(kids[0]);
        case Tag::App: return Term::app(kids[0], kids[1]);
        default: return t;
      }
    }
  }
}

bool well_scoped(const Term& t, size_t depth) {
  switch (t.tag()) {
    case Tag::Var:
      return t.index() < depth;
    default: {
      for (size_t i = 0; i < t.arity(); ++i) {
        size_t d = depth + (kid_binds(t.tag(), i) ? 1 : 0);
        if (!well_scoped(t.kid(i), d)) return false;
      }
      return true;
    }
  }
}

std::string debug_str(const Term& t) {
  if (!t.valid()) return "<null>";
  std::ostringstream os;
  switch (t.tag()) {
    case Tag::Var: os << '#' << t.index(); break;
    case Tag::Tp: os << "tp"; break;
    case Tag::Tm: os << "(tm " << debug_str(t.tm_of()) << ')'; break;
    case Tag::Bool: os << "bool"; break;
    case Tag::True: os << "true"; break;
    case Tag::False: os << "false"; break;
    case Tag::If:
      os << "(if ." << debug_str(t.if_motive()) << ' ' << debug_str(t.if_scrut()) << ' '
         << debug_str(t.if_true()) << ' ' << debug_str(t.if_false()) << ')';
      break;
    case Tag::Pi: os << "(pi " << debug_str(t.pi_dom()) << " ." << debug_str(t.pi_cod()) << ')'; break;
    case Tag::Lam: os << "(lam ." << debug_str(t.lam_body()) << ')'; break;
    case Tag::App: os << "(app " << debug_str(t.app_fun()) << ' ' << debug_str(t.app_arg()) << ')'; break;
    case Tag::U0: os << "u0"; break;
    case Tag::U1: os << "u1"; break;
  }
  return os.str();
}

Context Context::extended(std::string name, Term type) const {
  Context out = *this;
  out.entries_.push_back({std::move(name), std::move(type)});
  return out;
}

Term Context::type_of(uint32_t index) const {
  if (index >= entries_.size())
    throw Error(Errc::unbound_variable, "variable #" + std::to_string(index) +
                                            " in context of size " + std::to_string(entries_.size()));
  const Entry& e = entries_[entries_.size() - 1 - index];
  return shift(e.type, 0, static_cast<int64_t>(index) + 1);
}

const std::string& Context::name_of(uint32_t index) const {
  if (index >= entries_.size())
    throw Error(Errc::unbound_variable, "variable #" + std::to_string(index));
  return entries_[entries_.size() - 1 - index].name;
}

const EquationTable& EquationTable::signature() {
  static const EquationTable table = [] {
    EquationTable t;
    auto need = [](const std::vector<Term>& args, size_t n, const char* who) {
      if (args.size() != n)
        throw Error(Errc::usage_error, std::string(who) + ": expected " + std::to_string(n) + " arguments");
    };
    t.axioms.push_back({"ifelim_beta1",
                        "(if (x ?C) true ?t ?f)", "?t", 3,
                        [need](const std::vector<Term>& a) {
                          need(a, 3, "ifelim_beta1");
                          return std::make_pair(Term::ifelim(a[0], Term::tru(), a[1], a[2]), a[1]);
                        }});
    t.axioms.push_back({"ifelim_beta2",
                        "(if (x ?C) false ?t ?f)", "?f", 3,
                        [need](const std::vector<Term>& a) {
                          need(a, 3, "ifelim_beta2");
                          return std::make_pair(Term::ifelim(a[0], Term::fls(), a[1], a[2]), a[2]);
                        }});
    t.axioms.push_back({"pitp_beta",
                        "(app (lam x ?b) ?a)", "?b[x := ?a]", 2,
                        [need](const std::vector<Term>& a) {
                          need(a, 2, "pitp_beta");
                          return std::make_pair(Term::app(Term::lam(a[0]), a[1]), subst(a[0], 0, a[1]));
                        }});
    t.axioms.push_back({"pitp_eta",
                        "(lam x (app ?f x))", "?f", 1,
                        [need](const std::vector<Term>& a) {
                          need(a, 1, "pitp_eta");
                          return std::make_pair(Term::lam(Term::app(shift(a[0], 0, 1), Term::var(0))), a[0]);
                        }});
    t.aliases.emplace_back("app_of_lam", "pitp_beta");
    return t;
  }();
  return table;
}

const EquationAxiom& EquationTable::by_name(const std::string& name) const {
  std::string resolved = name;
  for (const auto& [alias, canon] : aliases)
    if (alias == name) resolved = canon;
  for (const auto& ax : axioms)
    if (ax.name == resolved) return ax;
  throw Error(Errc::usage_error, "unknown equation: " + name);
}

}  // namespace stc
