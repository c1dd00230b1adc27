#include "stc/eval.hpp"

namespace stc {

NeutralPtr NeutralV::var(uint32_t level, ValuePtr type) {
  auto n = std::make_shared<NeutralV>();
  n->tag = Tag::Var;
  n->level = level;
  n->var_type = std::move(type);
  return n;
}

NeutralPtr NeutralV::app(NeutralPtr fun, ValuePtr arg) {
  auto n = std::make_shared<NeutralV>();
  n->tag = Tag::App;
  n->fun = std::move(fun);
  n->arg = std::move(arg);
  return n;
}

NeutralPtr NeutralV::ifelim(Closure motive, NeutralPtr scrut, ValuePtr t, ValuePtr f) {
  auto n = std::make_shared<NeutralV>();
  n->tag = Tag::If;
  n->motive = std::move(motive);
  n->scrut = std::move(scrut);
  n->tbranch = std::move(t);
  n->fbranch = std::move(f);
  return n;
}

namespace {
ValuePtr make_leaf(Value::Tag t) {
  auto v = std::make_shared<Value>();
  v->tag = t;
  return v;
}
}  // namespace

ValuePtr Value::tru() { static const ValuePtr v = make_leaf(Tag::True); return v; }
ValuePtr Value::fls() { static const ValuePtr v = make_leaf(Tag::False); return v; }
ValuePtr Value::boolean() { static const ValuePtr v = make_leaf(Tag::Bool); return v; }
ValuePtr Value::tp() { static const ValuePtr v = make_leaf(Tag::Tp); return v; }
ValuePtr Value::u0() { static const ValuePtr v = make_leaf(Tag::U0); return v; }
ValuePtr Value::u1() { static const ValuePtr v = make_leaf(Tag::U1); return v; }

ValuePtr Value::pi(ValuePtr dom, Closure cod) {
  auto v = std::make_shared<Value>();
  v->tag = Tag::Pi;
  v->dom = std::move(dom);
  v->clo = std::move(cod);
  return v;
}

ValuePtr Value::lam(Closure body) {
  auto v = std::make_shared<Value>();
  v->tag = Tag::Lam;
  v->clo = std::move(body);
  return v;
}

ValuePtr Value::neutral(NeutralPtr n) {
  auto v = std::make_shared<Value>();
  v->tag = Tag::Neutral;
  v->neut = std::move(n);
  return v;
}

ValuePtr instantiate(const Closure& c, const ValuePtr& v, Fuel& fuel, TraceSink* trace) {
  std::vector<ValuePtr> env = c.env;
  env.push_back(v);
  return eval(env, c.body, fuel, trace);
}

namespace {

ValuePtr if_value(const Closure& motive, const ValuePtr& scrut, const ValuePtr& tb, const ValuePtr& fb,
                  Fuel& fuel, TraceSink* trace) {
  switch (scrut->tag) {
    case Value::Tag::True:
      if (trace) trace->push_back("ifelim_beta1");
      return tb;
    case Value::Tag::False:
      if (trace) trace->push_back("ifelim_beta2");
      return fb;
    case Value::Tag::Neutral:
      return Value::neutral(NeutralV::ifelim(motive, scrut->neut, tb, fb));
    default:
      throw Error(Errc::stuck_term, "boolean elimination of a non-boolean value");
  }
}

}  // namespace

ValuePtr apply_value(const ValuePtr& fun, const ValuePtr& arg, Fuel& fuel, TraceSink* trace) {
  fuel.tick();
  switch (fun->tag) {
    case Value::Tag::Lam:
      if (trace) trace->push_back("pitp_beta");
      return instantiate(*fun->clo, arg, fuel, trace);
    case Value::Tag::Neutral:
      return Value::neutral(NeutralV::app(fun->neut, arg));
    default:
      throw Error(Errc::stuck_term, "application head is not a function");
  }
}

ValuePtr eval(const std::vector<ValuePtr>& env, const Term& t, Fuel& fuel, TraceSink* trace) {
  fuel.tick();
  switch (t.tag()) {
    case Tag::Var: {
      if (t.index() >= env.size())
        throw Error(Errc::unbound_variable, "evaluation of unbound " + debug_str(t));
      return env[env.size() - 1 - t.index()];
    }
    case Tag::Tp: return Value::tp();
    case Tag::Tm: return eval(env, t.tm_of(), fuel, trace);  // tm is erased before conversion
    case Tag::Bool: return Value::boolean();
    case Tag::True: return Value::tru();
    case Tag::False: return Value::fls();
    case Tag::U0: return Value::u0();
    case Tag::U1: return Value::u1();
    case Tag::Pi: {
      ValuePtr dom = eval(env, t.pi_dom(), fuel, trace);
      return Value::pi(std::move(dom), Closure{t.pi_cod(), env});
    }
    case Tag::Lam: return Value::lam(Closure{t.lam_body(), env});
    case Tag::App: {
      ValuePtr f = eval(env, t.app_fun(), fuel, trace);
      ValuePtr a = eval(env, t.app_arg(), fuel, trace);
      return apply_value(f, a, fuel, trace);
    }
    case Tag::If: {
      ValuePtr b = eval(env, t.if_scrut(), fuel, trace);
      ValuePtr tb = eval(env, t.if_true(), fuel, trace);
      ValuePtr fb = eval(env, t.if_false(), fuel, trace);
      return if_value(Closure{t.if_motive(), env}, b, tb, fb, fuel, trace);
    }
  }
  throw Error(Errc::stuck_term, "unreachable term tag");
}

namespace {

// Readback of a blocked spine returns both the term and the type value of
// the whole spine, inferred structurally from the head variable's type.
std::pair<Term, ValuePtr> readback_neutral(uint32_t depth, const NeutralPtr& n, Fuel& fuel) {
  fuel.tick();
  switch (n->tag) {
    case NeutralV::Tag::Var: {
      if (n->level >= depth)
        throw Error(Errc::scope_underflow, "neutral level beyond binder depth");
      return {Term::var(depth - 1 - n->level), n->var_type};
    }
    case NeutralV::Tag::App: {
      auto [ft, fty] = readback_neutral(depth, n->fun, fuel);
      if (fty->tag != Value::Tag::Pi)
        throw Error(Errc::not_a_function, "blocked application head has a non-function type");
      Term at = readback(depth, n->arg, fty->dom, fuel);
      ValuePtr rty = instantiate(*fty->clo, n->arg, fuel);
      return {Term::app(ft, at), rty};
    }
    case NeutralV::Tag::If: {
      auto [st, sty] = readback_neutral(depth, n->scrut, fuel);
      (void)sty;
      ValuePtr fresh = Value::neutral(NeutralV::var(depth, Value::boolean()));
      Term motive = readback_type(depth + 1, instantiate(*n->motive, fresh, fuel), fuel);
      Term tb = readback(depth, n->tbranch, instantiate(*n->motive, Value::tru(), fuel), fuel);
      Term fb = readback(depth, n->fbranch, instantiate(*n->motive, Value::fls(), fuel), fuel);
      ValuePtr rty = instantiate(*n->motive, Value::neutral(n->scrut), fuel);
      return {Term::ifelim(motive, st, tb, fb), rty};
    }
  }
  throw Error(Errc::stuck_term, "unreachable neutral tag");
}

}  // namespace

Term readback_type(uint32_t depth, const ValuePtr& v, Fuel& fuel) {
  fuel.tick();
  switch (v->tag) {
    case Value::Tag::Bool: return Term::boolean();
    case Value::Tag::Tp: return Term::tp();
    case Value::Tag::U0: return Term::u0();
    case Value::Tag::U1: return Term::u1();
    case Value::Tag::Pi: {
      Term dom = readback_type(depth, v->dom, fuel);
      ValuePtr fresh = Value::neutral(NeutralV::var(depth, v->dom));
      Term cod = readback_type(depth + 1, instantiate(*v->clo, fresh, fuel), fuel);
      return Term::pi(dom, cod);
    }
    case Value::Tag::Neutral: return readback_neutral(depth, v->neut, fuel).first;
    default:
      throw Error(Errc::not_a_type, "value in type position is not a type");
  }
}

Term readback(uint32_t depth, const ValuePtr& v, const ValuePtr& at, Fuel& fuel) {
  fuel.tick();
  switch (at->tag) {
    case Value::Tag::Pi: {
      // eta-long: every inhabitant of a pi reads back as a lambda
      ValuePtr fresh = Value::neutral(NeutralV::var(depth, at->dom));
      ValuePtr body = apply_value(v, fresh, fuel);
      ValuePtr bodyty = instantiate(*at->clo, fresh, fuel);
      return Term::lam(readback(depth + 1, body, bodyty, fuel));
    }
    case Value::Tag::Bool: {
      switch (v->tag) {
        case Value::Tag::True: return Term::tru();
        case Value::Tag::False: return Term::fls();
        case Value::Tag::Neutral: return readback_neutral(depth, v->neut, fuel).first;
        default: throw Error(Errc::stuck_term, "non-boolean value at type bool");
      }
    }
    case Value::Tag::Tp:
    case Value::Tag::U0:
    case Value::Tag::U1:
      return readback_type(depth, v, fuel);
    case Value::Tag::Neutral: {
      // stuck type: the value must itself be blocked
      if (v->tag == Value::Tag::Neutral) return readback_neutral(depth, v->neut, fuel).first;
      throw Error(Errc::stuck_term, "canonical value at a blocked type");
    }
    default:
      throw Error(Errc::not_a_type, "readback at a non-type value");
  }
}

std::vector<ValuePtr> env_of_context(const Context& ctx, Fuel& fuel) {
  std::vector<ValuePtr> env;
  env.reserve(ctx.size());
  for (size_t i = 0; i < ctx.size(); ++i) {
    ValuePtr ty = eval(env, ctx.raw_type(i), fuel);
    env.push_back(Value::neutral(NeutralV::var(static_cast<uint32_t>(i), std::move(ty))));
  }
  return env;
}

Term normalize(const Context& ctx, const Term& at, const Term& t, Fuel& fuel, TraceSink* trace) {
  std::vector<ValuePtr> env = env_of_context(ctx, fuel);
  ValuePtr tv = eval(env, t, fuel, trace);
  ValuePtr atv = eval(env, at, fuel);
  return readback(static_cast<uint32_t>(ctx.size()), tv, atv, fuel);
}

Term normalize_type(const Context& ctx, const Term& ty, Fuel& fuel) {
  std::vector<ValuePtr> env = env_of_context(ctx, fuel);
  return readback_type(static_cast<uint32_t>(ctx.size()), eval(env, ty, fuel), fuel);
}

bool convertible(const Context& ctx, const Term& at, const Term& lhs, const Term& rhs, Fuel& fuel) {
  return alpha_eq(normalize(ctx, at, lhs, fuel), normalize(ctx, at, rhs, fuel));
}

bool types_convertible(const Context& ctx, const Term& a, const Term& b, Fuel& fuel) {
  return alpha_eq(normalize_type(ctx, a, fuel), normalize_type(ctx, b, fuel));
}

Term normalize(const Context& ctx, const Term& at, const Term& t) {
  Fuel fuel;
  return normalize(ctx, at, t, fuel);
}

bool convertible(const Context& ctx, const Term& at, const Term& lhs, const Term& rhs) {
  Fuel fuel;
  return convertible(ctx, at, lhs, rhs, fuel);
}

bool types_convertible(const Context& ctx, const Term& a, const Term& b) {
  Fuel fuel;
  return types_convertible(ctx, a, b, fuel);
}

}  // namespace stc
