#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stc/calf.hpp"
#include "stc/term.hpp"

namespace stc {

struct Span {
  int line = 1;
  int col = 1;
};

// Surface syntax tree: atoms and lists with source spans.  Atom spelling is
// preserved exactly, so printing a parsed tree loses nothing but layout.
struct Sexp {
  enum class Kind { Atom, List };
  Kind kind = Kind::Atom;
  std::string atom;
  std::vector<Sexp> items;
  Span span;
};

// One datum per input (comments with ';' and whitespace allowed around it).
Sexp parse_sexpr(std::string_view text);
// Canonical layout: single spaces, no comments.
std::string print_sexpr(const Sexp& s);

// Object-theory surface forms:
//   true false bool tp u0 u1 x
//   (tm A) (lam x b) (app f a) (pi (x A) B) (if (x C) b t f)
Term lower_term(const Sexp& s);
Sexp raise_term(const Term& t);
Term parse_term(std::string_view text);
std::string print_term(const Term& t);

// Computation surface forms:
//   true false x (thunk m)
//   (ret v) (bind m (x n)) (step m) (force v) (lam x m) (app m v) (if v m1 m2)
calf::CbpvTerm lower_calf(const Sexp& s);
Sexp raise_calf(const calf::CbpvTerm& t);
calf::CbpvTerm parse_calf(std::string_view text);
std::string print_calf(const calf::CbpvTerm& t);

// Deterministic binder names used when raising de Bruijn trees.
std::string binder_name(size_t depth);

}  // namespace stc
