#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "stc/error.hpp"

namespace stc {

// Object-theory terms over de Bruijn indices.  The grammar is closed: these
// twelve constructors are all there is, and every consumer switches on the
// tag exhaustively.  Types live in the same tree (tp, tm A, pi, u0, u1).
enum class Tag : uint8_t {
  Var,    // de Bruijn index, 0 = innermost binder
  Tp,     // universe of small type codes
  Tm,     // tm A: elements of the code A; erased before conversion
  Bool,   // code
  True,
  False,
  If,     // if (x.C) b t f; the motive binds one variable
  Pi,     // pi A (x.B)
  Lam,    // lam (x.b); unannotated, checkable only
  App,
  U0,
  U1,
};

// Immutable shared tree.  Copying a Term copies a pointer.
class Term {
 public:
  Term() = default;

  static Term var(uint32_t index);
  static Term tp();
  static Term tm(Term of);
  static Term boolean();
  static Term tru();
  static Term fls();
  static Term ifelim(Term motive, Term scrut, Term tbranch, Term fbranch);
  static Term pi(Term dom, Term cod);
  static Term lam(Term body);
  static Term app(Term fun, Term arg);
  static Term u0();
  static Term u1();

  bool valid() const { return node_ != nullptr; }
  Tag tag() const { return node_->tag; }
  uint32_t index() const { return node_->index; }
  size_t arity() const { return node_->kids.size(); }
  const Term& kid(size_t i) const { return node_->kids[i]; }

  // positional accessors, named for readability at use sites
  const Term& tm_of() const { return kid(0); }
  const Term& if_motive() const { return kid(0); }
  const Term& if_scrut() const { return kid(1); }
  const Term& if_true() const { return kid(2); }
  const Term& if_false() const { return kid(3); }
  const Term& pi_dom() const { return kid(0); }
  const Term& pi_cod() const { return kid(1); }
  const Term& lam_body() const { return kid(0); }
  const Term& app_fun() const { return kid(0); }
  const Term& app_arg() const { return kid(1); }

  bool ptr_eq(const Term& o) const { return node_ == o.node_; }

 private:
  struct Node {
    Tag tag;
    uint32_t index = 0;
    std::vector<Term> kids;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(Tag t, uint32_t index, std::vector<Term> kids);

  std::shared_ptr<const Node> node_;
};

// Does kid i of a node with this tag sit under one extra binder?
bool kid_binds(Tag t, size_t i);

// Structural equality.  De Bruijn representation makes this alpha-equivalence.
bool alpha_eq(const Term& a, const Term& b);

// Add `amount` to every free index >= cutoff.  Negative amounts must not
// underflow; an underflow means a scope bug in the caller and throws.
Term shift(const Term& t, uint32_t cutoff, int64_t amount);

// Capture-avoiding substitution of u for index `target`; free indices above
// the target are decremented.
Term subst(const Term& t, uint32_t target, const Term& u);

// All free indices < depth.
bool well_scoped(const Term& t, size_t depth);

// Raw de Bruijn rendering for diagnostics and traces, e.g. "(app (lam #0) true)".
std::string debug_str(const Term& t);

// Typing telescope.  Entry types are scoped in the prefix before them; the
// name is a printing hint only and never affects semantics.
class Context {
 public:
  Context() = default;

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  Context extended(std::string name, Term type) const;

  // Type of de Bruijn index i, shifted so it is well-scoped in the whole
  // context.  Throws unbound_variable when i is out of range.
  Term type_of(uint32_t index) const;

  const std::string& name_of(uint32_t index) const;
  const Term& raw_type(size_t slot) const { return entries_[slot].type; }
  const std::string& raw_name(size_t slot) const { return entries_[slot].name; }

 private:
  struct Entry {
    std::string name;
    Term type;
  };
  std::vector<Entry> entries_;  // entries_[0] is outermost
};

// The definitional equations of the theory, as instantiable schemas.
// Argument conventions:
//   ifelim_beta1(motive_body, t, f)   motive_body has one free index
//   ifelim_beta2(motive_body, t, f)
//   pitp_beta(lam_body, arg)          lam_body has one free index
//   pitp_eta(fun)
// The generic beta step for application-of-lambda is not a fifth axiom: it
// coincides with pitp_beta, recorded in `aliases`.
struct EquationAxiom {
  std::string name;
  std::string lhs_display;
  std::string rhs_display;
  size_t arity;
  std::function<std::pair<Term, Term>(const std::vector<Term>&)> instantiate;
};

struct EquationTable {
  std::vector<EquationAxiom> axioms;
  std::vector<std::pair<std::string, std::string>> aliases;

  static const EquationTable& signature();
  const EquationAxiom& by_name(const std::string& name) const;
};

}  // namespace stc
