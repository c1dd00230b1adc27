#include "stc/check.hpp"

namespace stc {

namespace {

// whnf-style view of a type term: normalize and look at the head
Term type_view(const Context& ctx, const Term& ty, Fuel& fuel) {
  return normalize_type(ctx, ty, fuel);
}

Error mismatch(const Context& ctx, const Term& t, const Term& expected, const Term& actual, Fuel& fuel) {
  Term en = normalize_type(ctx, expected, fuel);
  Term an = normalize_type(ctx, actual, fuel);
  Error e(Errc::type_mismatch,
          "term " + debug_str(t) + " has type " + debug_str(an) + ", expected " + debug_str(en));
  e.with("expected", debug_str(en));
  e.with("actual", debug_str(an));
  // a one-line conversion trace: both sides to normal form, then compare
  e.with("trace", "normalize(expected) = " + debug_str(en) + "; normalize(actual) = " + debug_str(an) +
                      "; alpha-distinct");
  return e;
}

}  // namespace

bool is_type(const Context& ctx, const Term& a, Fuel& fuel) {
  if (a.tag() == Tag::U1) return true;
  Term ty;
  try {
    ty = infer(ctx, a, fuel);
  } catch (const Error&) {
    return false;
  }
  Term v = type_view(ctx, ty, fuel);
  return v.tag() == Tag::Tp || v.tag() == Tag::U0 || v.tag() == Tag::U1;
}

Term infer(const Context& ctx, const Term& t, Fuel& fuel) {
  switch (t.tag()) {
    case Tag::Var:
      return ctx.type_of(t.index());
    case Tag::Tp:
      return Term::u0();
    case Tag::U0:
      return Term::u1();
    case Tag::U1:
      throw Error(Errc::cannot_infer, "u1 has no type");
    case Tag::Tm:
      check(ctx, t.tm_of(), Term::tp(), fuel);
      return Term::u0();
    case Tag::Bool:
      return Term::tp();
    case Tag::True:
    case Tag::False:
      return Term::boolean();
    case Tag::Pi: {
      check(ctx, t.pi_dom(), Term::tp(), fuel);
      check(ctx.extended("", t.pi_dom()), t.pi_cod(), Term::tp(), fuel);
      return Term::tp();
    }
    case Tag::Lam:
      throw Error(Errc::cannot_infer, "unannotated lambda needs a checking type");
    case Tag::App: {
      Term fty = infer(ctx, t.app_fun(), fuel);
      Term v = type_view(ctx, fty, fuel);
      if (v.tag() != Tag::Pi)
        throw Error(Errc::not_a_function,
                    "application head " + debug_str(t.app_fun()) + " has type " + debug_str(v));
      check(ctx, t.app_arg(), v.pi_dom(), fuel);
      return subst(v.pi_cod(), 0, t.app_arg());
    }
    case Tag::If: {
      check(ctx, t.if_scrut(), Term::boolean(), fuel);
      Context inner = ctx.extended("", Term::boolean());
      if (!is_type(inner, t.if_motive(), fuel))
        throw Error(Errc::motive_mismatch, "motive " + debug_str(t.if_motive()) + " is not a type family over bool");
      check(ctx, t.if_true(), subst(t.if_motive(), 0, Term::tru()), fuel);
      check(ctx, t.if_false(), subst(t.if_motive(), 0, Term::fls()), fuel);
      return subst(t.if_motive(), 0, t.if_scrut());
    }
  }
  throw Error(Errc::cannot_infer, "unreachable term tag");
}

TypedTerm check(const Context& ctx, const Term& t, const Term& at, Fuel& fuel) {
  Term v = type_view(ctx, at, fuel);
  switch (t.tag()) {
    case Tag::Lam: {
      if (v.tag() != Tag::Pi)
        throw Error(Errc::type_mismatch, "lambda checked at non-function type " + debug_str(v));
      check(ctx.extended("", v.pi_dom()), t.lam_body(), v.pi_cod(), fuel);
      return {ctx, t, at};
    }
    case Tag::App: {
      try {
        Term ty = infer(ctx, t, fuel);
        if (!types_convertible(ctx, ty, v, fuel)) throw mismatch(ctx, t, v, ty, fuel);
        return {ctx, t, at};
      } catch (const Error& e) {
        if (e.code() != Errc::cannot_infer) throw;
      }
      // head is an unannotated lambda: type it at the simple function type
      // argument-type -> goal (goal shifted under the fresh binder); both
      // sides must be codes or the pi would fall outside the theory
      Term aty = infer(ctx, t.app_arg(), fuel);
      try {
        check(ctx, aty, Term::tp(), fuel);
        check(ctx, v, Term::tp(), fuel);
      } catch (const Error& guard) {
        if (guard.code() == Errc::fuel_exhausted) throw;
        throw Error(Errc::cannot_infer,
                    "application head " + debug_str(t.app_fun()) + " cannot synthesize a function type");
      }
      check(ctx, t.app_fun(), Term::pi(aty, shift(v, 0, 1)), fuel);
      return {ctx, t, at};
    }
    default: {
      Term ty = infer(ctx, t, fuel);
      if (!types_convertible(ctx, ty, v, fuel)) throw mismatch(ctx, t, v, ty, fuel);
      return {ctx, t, at};
    }
  }
}

TypedTerm check_closed_bool(const Term& t, Fuel& fuel) {
  if (!well_scoped(t, 0))
    throw Error(Errc::not_closed, "term has free variables: " + debug_str(t));
  return check(Context{}, t, Term::boolean(), fuel);
}

Term infer(const Context& ctx, const Term& t) {
  Fuel fuel;
  return infer(ctx, t, fuel);
}

TypedTerm check(const Context& ctx, const Term& t, const Term& at) {
  Fuel fuel;
  return check(ctx, t, at, fuel);
}

TypedTerm check_closed_bool(const Term& t) {
  Fuel fuel;
  return check_closed_bool(t, fuel);
}

}  // namespace stc
