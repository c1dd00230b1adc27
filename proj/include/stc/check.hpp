#pragma once

#include "stc/eval.hpp"
#include "stc/term.hpp"

namespace stc {

// A checking judgment that can be replayed: check(ctx, term, type) succeeds.
struct TypedTerm {
  Context ctx;
  Term term;
  Term type;
};

// Synthesize a type.  Unannotated lambdas cannot synthesize and report
// cannot_infer; u1 sits at the top of the hierarchy and has no type.
Term infer(const Context& ctx, const Term& t, Fuel& fuel);

// Check against a type the caller already knows is well formed.  On mismatch
// the diagnostic carries both normal forms.  An application whose head fails
// to synthesize is retried at the simple function type built from the
// argument's type, so beta-redexes with unannotated lambdas still check.
TypedTerm check(const Context& ctx, const Term& t, const Term& at, Fuel& fuel);

// `a` names a type in ctx: either a universe or a term of type tp (after
// erasure, u0 also classifies codes of the form tm A).
bool is_type(const Context& ctx, const Term& a, Fuel& fuel);

// Entry point of the pipeline: t must be closed and check at bool.
TypedTerm check_closed_bool(const Term& t, Fuel& fuel);

Term infer(const Context& ctx, const Term& t);
TypedTerm check(const Context& ctx, const Term& t, const Term& at);
TypedTerm check_closed_bool(const Term& t);

}  // namespace stc
