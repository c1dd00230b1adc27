#include "stc/calf.hpp"

#include <sstream>

namespace stc::calf {

CbpvTerm CbpvTerm::make(Tag t, uint32_t index, std::vector<CbpvTerm> kids) {
  auto n = std::make_shared<Node>();
  n->tag = t;
  n->index = index;
  n->kids = std::move(kids);
  return CbpvTerm(std::move(n));
}

CbpvTerm CbpvTerm::var(uint32_t index) { return make(Tag::Var, index, {}); }
CbpvTerm CbpvTerm::tru() { static const CbpvTerm t = make(Tag::True, 0, {}); return t; }
CbpvTerm CbpvTerm::fls() { static const CbpvTerm t = make(Tag::False, 0, {}); return t; }
CbpvTerm CbpvTerm::thunk(CbpvTerm comp) { return make(Tag::Thunk, 0, {std::move(comp)}); }
CbpvTerm CbpvTerm::ret(CbpvTerm v) { return make(Tag::Ret, 0, {std::move(v)}); }
CbpvTerm CbpvTerm::bind(CbpvTerm m, CbpvTerm n) { return make(Tag::Bind, 0, {std::move(m), std::move(n)}); }
CbpvTerm CbpvTerm::step(CbpvTerm m) { return make(Tag::Step, 0, {std::move(m)}); }
CbpvTerm CbpvTerm::force(CbpvTerm v) { return make(Tag::Force, 0, {std::move(v)}); }
CbpvTerm CbpvTerm::lam(CbpvTerm body) { return make(Tag::Lam, 0, {std::move(body)}); }
CbpvTerm CbpvTerm::app(CbpvTerm m, CbpvTerm v) { return make(Tag::App, 0, {std::move(m), std::move(v)}); }
CbpvTerm CbpvTerm::ifc(CbpvTerm v, CbpvTerm m1, CbpvTerm m2) {
  return make(Tag::If, 0, {std::move(v), std::move(m1), std::move(m2)});
}

Sort CbpvTerm::sort() const {
  switch (tag()) {
    case Tag::Var:
    case Tag::True:
    case Tag::False:
    case Tag::Thunk:
      return Sort::Value;
    default:
      return Sort::Comp;
  }
}

bool kid_binds(CbpvTerm::Tag t, size_t i) {
  switch (t) {
    case CbpvTerm::Tag::Bind: return i == 1;
    case CbpvTerm::Tag::Lam: return i == 0;
    default: return false;
  }
}

bool alpha_eq(const CbpvTerm& a, const CbpvTerm& b) {
  if (a.ptr_eq(b)) return true;
  if (a.tag() != b.tag()) return false;
  if (a.tag() == CbpvTerm::Tag::Var) return a.index() == b.index();
  if (a.arity() != b.arity()) return false;
  for (size_t i = 0; i < a.arity(); ++i)
    if (!alpha_eq(a.kid(i), b.kid(i))) return false;
  return true;
}

namespace {

CbpvTerm rebuild(const CbpvTerm& t, std::vector<CbpvTerm> kids) {
  switch (t.tag()) {
    case CbpvTerm::Tag::Thunk: return CbpvTerm::thunk(kids[0]);
    case CbpvTerm::Tag::Ret: return CbpvTerm::ret(kids[0]);
    case CbpvTerm::Tag::Bind: return CbpvTerm::bind(kids[0], kids[1]);
    case CbpvTerm::Tag::Step: return CbpvTerm::step(kids[0]);
    case CbpvTerm::Tag::Force: return CbpvTerm::force(kids[0]);
    case CbpvTerm::Tag::Lam: return CbpvTerm::lam(kids[0]);
    case CbpvTerm::Tag::App: return CbpvTerm::app(kids[0], kids[1]);
    case CbpvTerm::Tag::If: return CbpvTerm::ifc(kids[0], kids[1], kids[2]);
    default: return t;
  }
}

}  // namespace

CbpvTerm shift(const CbpvTerm& t, uint32_t cutoff, int64_t amount) {
  if (amount == 0) return t;
  switch (t.tag()) {
    case CbpvTerm::Tag::Var: {
      if (t.index() < cutoff) return t;
      int64_t moved = static_cast<int64_t>(t.index()) + amount;
      if (moved < static_cast<int64_t>(cutoff))
        throw Error(Errc::scope_underflow, "shift underflow in computation term");
      return CbpvTerm::var(static_cast<uint32_t>(moved));
    }
    case CbpvTerm::Tag::True:
    case CbpvTerm::Tag::False:
      return t;
    default: {
      std::vector<CbpvTerm> kids;
      kids.reserve(t.arity());
      for (size_t i = 0; i < t.arity(); ++i)
        kids.push_back(shift(t.kid(i), cutoff + (kid_binds(t.tag(), i) ? 1 : 0), amount));
      return rebuild(t, std::move(kids));
    }
  }
}

CbpvTerm subst(const CbpvTerm& t, uint32_t target, const CbpvTerm& u) {
  switch (t.tag()) {
    case CbpvTerm::Tag::Var: {
      if (t.index() == target) return shift(u, 0, static_cast<int64_t>(target));
      if (t.index() > target) return CbpvTerm::var(t.index() - 1);
      return t;
    }
    case CbpvTerm::Tag::True:
    case CbpvTerm::Tag::False:
      return t;
    default: {
      std::vector<CbpvTerm> kids;
      kids.reserve(t.arity());
      for (size_t i = 0; i < t.arity(); ++i)
        kids.push_back(subst(t.kid(i), target + (kid_binds(t.tag(), i) ? 1 : 0), u));
      return rebuild(t, std::move(kids));
    }
  }
}

bool well_scoped(const CbpvTerm& t, size_t depth) {
  if (t.tag() == CbpvTerm::Tag::Var) return t.index() < depth;
  for (size_t i = 0; i < t.arity(); ++i)
    if (!well_scoped(t.kid(i), depth + (kid_binds(t.tag(), i) ? 1 : 0))) return false;
  return true;
}

std::string debug_str(const CbpvTerm& t) {
  if (!t.valid()) return "<null>";
  std::ostringstream os;
  switch (t.tag()) {
    case CbpvTerm::Tag::Var: os << '#' << t.index(); break;
    case CbpvTerm::Tag::True: os << "true"; break;
    case CbpvTerm::Tag::False: os << "false"; break;
    case CbpvTerm::Tag::Thunk: os << "(thunk " << debug_str(t.kid(0)) << ')'; break;
    case CbpvTerm::Tag::Ret: os << "(ret " << debug_str(t.kid(0)) << ')'; break;
    case CbpvTerm::Tag::Bind:
      os << "(bind " << debug_str(t.kid(0)) << " ." << debug_str(t.kid(1)) << ')';
      break;
    case CbpvTerm::Tag::Step: os << "(step " << debug_str(t.kid(0)) << ')'; break;
    case CbpvTerm::Tag::Force: os << "(force " << debug_str(t.kid(0)) << ')'; break;
    case CbpvTerm::Tag::Lam: os << "(lam ." << debug_str(t.kid(0)) << ')'; break;
    case CbpvTerm::Tag::App: os << "(app " << debug_str(t.kid(0)) << ' ' << debug_str(t.kid(1)) << ')'; break;
    case CbpvTerm::Tag::If:
      os << "(if " << debug_str(t.kid(0)) << ' ' << debug_str(t.kid(1)) << ' ' << debug_str(t.kid(2)) << ')';
      break;
  }
  return os.str();
}

CbpvType CbpvType::make(Tag t, std::vector<CbpvType> kids) {
  auto n = std::make_shared<Node>();
  n->tag = t;
  n->kids = std::move(kids);
  return CbpvType(std::move(n));
}

CbpvType CbpvType::boolean() { static const CbpvType t = make(Tag::Bool, {}); return t; }
CbpvType CbpvType::u(CbpvType comp) { return make(Tag::U, {std::move(comp)}); }
CbpvType CbpvType::f(CbpvType val) { return make(Tag::F, {std::move(val)}); }
CbpvType CbpvType::arrow(CbpvType dom, CbpvType cod) {
  return make(Tag::Arrow, {std::move(dom), std::move(cod)});
}

Sort CbpvType::sort() const {
  return (tag() == Tag::Bool || tag() == Tag::U) ? Sort::Value : Sort::Comp;
}

std::string CbpvType::str() const {
  if (!valid()) return "<null>";
  switch (tag()) {
    case Tag::Bool: return "bool";
    case Tag::U: return "(u " + kid(0).str() + ")";
    case Tag::F: return "(f " + kid(0).str() + ")";
    case Tag::Arrow: return "(-> " + kid(0).str() + " " + kid(1).str() + ")";
  }
  return "?";
}

bool type_eq(const CbpvType& a, const CbpvType& b) {
  if (!a.valid() || !b.valid()) return a.valid() == b.valid();
  if (a.tag() != b.tag()) return false;
  switch (a.tag()) {
    case CbpvType::Tag::Bool: return true;
    case CbpvType::Tag::U:
    case CbpvType::Tag::F: return type_eq(a.kid(0), b.kid(0));
    case CbpvType::Tag::Arrow:
      return type_eq(a.kid(0), b.kid(0)) && type_eq(a.kid(1), b.kid(1));
  }
  return false;
}

CbpvType cbpv_infer(const CbpvCtx& ctx, const CbpvTerm& t, Fuel& fuel) {
  fuel.tick();
  switch (t.tag()) {
    case CbpvTerm::Tag::Var: {
      if (t.index() >= ctx.size())
        throw Error(Errc::unbound_variable, "value variable " + debug_str(t) + " out of scope");
      return ctx[ctx.size() - 1 - t.index()];
    }
    case CbpvTerm::Tag::True:
    case CbpvTerm::Tag::False:
      return CbpvType::boolean();
    case CbpvTerm::Tag::Thunk:
      return CbpvType::u(cbpv_infer(ctx, t.kid(0), fuel));
    case CbpvTerm::Tag::Ret:
      return CbpvType::f(cbpv_infer(ctx, t.kid(0), fuel));
    case CbpvTerm::Tag::Bind: {
      CbpvType mt = cbpv_infer(ctx, t.kid(0), fuel);
      if (mt.tag() != CbpvType::Tag::F)
        throw Error(Errc::sort_mismatch, "bind producer has type " + mt.str() + ", not a returner");
      CbpvCtx inner = ctx;
      inner.push_back(mt.kid(0));
      CbpvType nt = cbpv_infer(inner, t.kid(1), fuel);
      if (nt.sort() != Sort::Comp)
        throw Error(Errc::sort_mismatch, "bind continuation is not a computation");
      return nt;
    }
    case CbpvTerm::Tag::Step: {
      CbpvType mt = cbpv_infer(ctx, t.kid(0), fuel);
      if (mt.sort() != Sort::Comp)
        throw Error(Errc::sort_mismatch, "step applies to computations");
      return mt;
    }
    case CbpvTerm::Tag::Force: {
      CbpvType vt = cbpv_infer(ctx, t.kid(0), fuel);
      if (vt.tag() != CbpvType::Tag::U)
        throw Error(Errc::sort_mismatch, "force of a non-thunk of type " + vt.str());
      return vt.kid(0);
    }
    case CbpvTerm::Tag::Lam:
      throw Error(Errc::cannot_infer, "unannotated computation lambda needs a checking type");
    case CbpvTerm::Tag::App: {
      CbpvType mt = cbpv_infer(ctx, t.kid(0), fuel);
      if (mt.tag() != CbpvType::Tag::Arrow)
        throw Error(Errc::not_a_function, "application head has type " + mt.str());
      cbpv_check(ctx, t.kid(1), mt.kid(0), fuel);
      return mt.kid(1);
    }
    case CbpvTerm::Tag::If: {
      cbpv_check(ctx, t.kid(0), CbpvType::boolean(), fuel);
      CbpvType bt = cbpv_infer(ctx, t.kid(1), fuel);
      if (bt.sort() != Sort::Comp)
        throw Error(Errc::sort_mismatch, "branch is not a computation");
      cbpv_check(ctx, t.kid(2), bt, fuel);
      return bt;
    }
  }
  throw Error(Errc::cannot_infer, "unreachable computation tag");
}

void cbpv_check(const CbpvCtx& ctx, const CbpvTerm& t, const CbpvType& at, Fuel& fuel) {
  fuel.tick();
  if (!at.valid()) throw Error(Errc::usage_error, "checking against an invalid type");
  if (t.sort() != at.sort())
    throw Error(Errc::sort_mismatch,
                std::string(t.sort() == Sort::Value ? "value " : "computation ") + debug_str(t) +
                    " checked against " + (at.sort() == Sort::Value ? "value" : "computation") +
                    " type " + at.str());
  switch (t.tag()) {
    case CbpvTerm::Tag::Lam: {
      if (at.tag() != CbpvType::Tag::Arrow)
        throw Error(Errc::type_mismatch, "computation lambda checked at " + at.str());
      CbpvCtx inner = ctx;
      inner.push_back(at.kid(0));
      cbpv_check(inner, t.kid(0), at.kid(1), fuel);
      return;
    }
    case CbpvTerm::Tag::Thunk: {
      if (at.tag() != CbpvType::Tag::U)
        throw Error(Errc::type_mismatch, "thunk checked at " + at.str());
      cbpv_check(ctx, t.kid(0), at.kid(0), fuel);
      return;
    }
    case CbpvTerm::Tag::Ret: {
      if (at.tag() != CbpvType::Tag::F)
        throw Error(Errc::type_mismatch, "ret checked at " + at.str());
      cbpv_check(ctx, t.kid(0), at.kid(0), fuel);
      return;
    }
    case CbpvTerm::Tag::Step: {
      cbpv_check(ctx, t.kid(0), at, fuel);
      return;
    }
    case CbpvTerm::Tag::Bind: {
      CbpvType mt = cbpv_infer(ctx, t.kid(0), fuel);
      if (mt.tag() != CbpvType::Tag::F)
        throw Error(Errc::sort_mismatch, "bind producer has type " + mt.str() + ", not a returner");
      CbpvCtx inner = ctx;
      inner.push_back(mt.kid(0));
      cbpv_check(inner, t.kid(1), at, fuel);
      return;
    }
    case CbpvTerm::Tag::If: {
      cbpv_check(ctx, t.kid(0), CbpvType::boolean(), fuel);
      cbpv_check(ctx, t.kid(1), at, fuel);
      cbpv_check(ctx, t.kid(2), at, fuel);
      return;
    }
    case CbpvTerm::Tag::App: {
      try {
        CbpvType ty = cbpv_infer(ctx, t, fuel);
        if (!type_eq(ty, at))
          throw Error(Errc::type_mismatch,
                      debug_str(t) + " has type " + ty.str() + ", expected " + at.str());
        return;
      } catch (const Error& e) {
        if (e.code() != Errc::cannot_infer) throw;
      }
      CbpvType vt = cbpv_infer(ctx, t.kid(1), fuel);
      cbpv_check(ctx, t.kid(0), CbpvType::arrow(vt, at), fuel);
      return;
    }
    default: {
      CbpvType ty = cbpv_infer(ctx, t, fuel);
      if (!type_eq(ty, at))
        throw Error(Errc::type_mismatch, debug_str(t) + " has type " + ty.str() + ", expected " + at.str());
      return;
    }
  }
}

void cbpv_check(const CbpvCtx& ctx, const CbpvTerm& t, const CbpvType& at) {
  Fuel fuel;
  cbpv_check(ctx, t, at, fuel);
}

namespace {

// one small-step; nullopt when terminal
std::optional<CbpvTerm> machine_step(const CbpvTerm& t, uint64_t& cost) {
  switch (t.tag()) {
    case CbpvTerm::Tag::Ret:
    case CbpvTerm::Tag::Lam:
      return std::nullopt;
    case CbpvTerm::Tag::Step:
      ++cost;
      return t.kid(0);
    case CbpvTerm::Tag::Bind: {
      const CbpvTerm& m = t.kid(0);
      if (m.tag() == CbpvTerm::Tag::Ret) return subst(t.kid(1), 0, m.kid(0));
      if (m.tag() == CbpvTerm::Tag::Lam)
        throw Error(Errc::stuck_term, "bind of a non-returning computation");
      std::optional<CbpvTerm> m2 = machine_step(m, cost);
      if (!m2) throw Error(Errc::stuck_term, "bind producer is stuck");
      return CbpvTerm::bind(*m2, t.kid(1));
    }
    case CbpvTerm::Tag::Force: {
      const CbpvTerm& v = t.kid(0);
      if (v.tag() == CbpvTerm::Tag::Thunk) return v.kid(0);
      throw Error(Errc::stuck_term, "force of a non-thunk value " + debug_str(v));
    }
    case CbpvTerm::Tag::App: {
      const CbpvTerm& m = t.kid(0);
      if (m.tag() == CbpvTerm::Tag::Lam) return subst(m.kid(0), 0, t.kid(1));
      if (m.tag() == CbpvTerm::Tag::Ret)
        throw Error(Errc::stuck_term, "application of a returning computation");
      std::optional<CbpvTerm> m2 = machine_step(m, cost);
      if (!m2) throw Error(Errc::stuck_term, "application head is stuck");
      return CbpvTerm::app(*m2, t.kid(1));
    }
    case CbpvTerm::Tag::If: {
      const CbpvTerm& v = t.kid(0);
      if (v.tag() == CbpvTerm::Tag::True) return t.kid(1);
      if (v.tag() == CbpvTerm::Tag::False) return t.kid(2);
      throw Error(Errc::stuck_term, "branch on a non-boolean value " + debug_str(v));
    }
    default:
      throw Error(Errc::sort_mismatch, "cannot run a value: " + debug_str(t));
  }
}

}  // namespace

EvalResult cbpv_eval(const CbpvTerm& comp, Fuel& fuel) {
  if (!well_scoped(comp, 0))
    throw Error(Errc::not_closed, "machine runs closed computations only");
  EvalResult r;
  CbpvTerm cur = comp;
  for (;;) {
    fuel.tick();
    std::optional<CbpvTerm> next = machine_step(cur, r.cost);
    if (!next) {
      r.terminal = cur;
      return r;
    }
    cur = *next;
  }
}

EvalResult cbpv_eval(const CbpvTerm& comp) {
  Fuel fuel;
  return cbpv_eval(comp, fuel);
}

const char* world_name(World w) { return w == World::Beh ? "beh" : "top"; }

namespace {

CanonTag terminal_tag(const EvalResult& r) {
  if (r.terminal.tag() == CbpvTerm::Tag::Ret) {
    if (r.terminal.kid(0).tag() == CbpvTerm::Tag::True) return CanonTag::True;
    if (r.terminal.kid(0).tag() == CbpvTerm::Tag::False) return CanonTag::False;
  }
  throw Error(Errc::stuck_term, "computation did not return a boolean: " + debug_str(r.terminal));
}

}  // namespace

bool cbpv_equal(const CbpvTerm& m, const CbpvTerm& n, World w, Fuel& fuel) {
  EvalResult rm = cbpv_eval(m, fuel);
  EvalResult rn = cbpv_eval(n, fuel);
  if (terminal_tag(rm) != terminal_tag(rn)) return false;
  if (w == World::Top && rm.cost != rn.cost) return false;
  return true;
}

bool CbpvCert::replay(Fuel& fuel) const { return cbpv_equal(lhs, rhs, world, fuel); }

bool CbpvCert::replay() const {
  Fuel fuel;
  return replay(fuel);
}

KProof restrict_proof(const KProof& p, World target) {
  if (target == p.world) return p;
  if (p.world == World::Beh && target == World::Top)
    throw Error(Errc::usage_error, "evidence does not extend from beh to top");
  KProof out = p;
  out.world = World::Beh;
  if (out.retval) out.retval = std::make_shared<KProof>(restrict_proof(*out.retval, target));
  return out;
}

namespace {

CbpvTerm kenv_subst(const CbpvTerm& t, const KEnv& env) {
  CbpvTerm out = t;
  for (size_t i = env.size(); i-- > 0;) out = subst(out, 0, env[i].term);
  return out;
}

// charge `n` units to a computation proof at world w
KProof charge(KProof p, uint64_t n, World w) {
  if (n == 0) return p;
  switch (p.kind) {
    case KProof::Kind::FComp:
      if (w == World::Top) p.cost += n;
      return p;
    case KProof::Kind::FunComp: {
      KProof out = p;
      auto inner = p.apply;
      out.apply = [inner, n](World w2, const CbpvTerm& a, const KProof& pa) {
        return charge(inner(w2, a, pa), n, w2);
      };
      return out;
    }
    default:
      throw Error(Errc::sort_mismatch, "cost charged to a value proof");
  }
}

}  // namespace

KProof kripke_interp(const KripkeStatePtr& st, const CbpvCtx& ctx, const CbpvTerm& t,
                     const CbpvType& at, const KEnv& env, World w) {
  st->fuel.tick();
  ++st->nodes;
  switch (t.tag()) {
    case CbpvTerm::Tag::Var: {
      if (t.index() >= env.size())
        throw Error(Errc::unbound_variable, "value variable without environment entry");
      return restrict_proof(env[env.size() - 1 - t.index()].proof, w);
    }
    case CbpvTerm::Tag::True:
    case CbpvTerm::Tag::False: {
      KProof p;
      p.kind = KProof::Kind::BoolV;
      p.world = w;
      p.tag = t.tag() == CbpvTerm::Tag::True ? CanonTag::True : CanonTag::False;
      p.track = t;
      return p;
    }
    case CbpvTerm::Tag::Thunk: {
      if (at.tag() != CbpvType::Tag::U)
        throw Error(Errc::sort_mismatch, "thunk interpreted at " + at.str());
      KProof p;
      p.kind = KProof::Kind::ThunkV;
      p.world = w;
      p.track = kenv_subst(t, env);
      CbpvTerm body = t.kid(0);
      CbpvType inner_ty = at.kid(0);
      p.force = [st, ctx, body, inner_ty, env](World w2) {
        return kripke_interp(st, ctx, body, inner_ty, env, w2);
      };
      return p;
    }
    case CbpvTerm::Tag::Ret: {
      if (at.tag() != CbpvType::Tag::F)
        throw Error(Errc::sort_mismatch, "ret interpreted at " + at.str());
      KProof p;
      p.kind = KProof::Kind::FComp;
      p.world = w;
      p.track = kenv_subst(t, env);
      p.cost = 0;
      p.retval = std::make_shared<KProof>(kripke_interp(st, ctx, t.kid(0), at.kid(0), env, w));
      return p;
    }
    case CbpvTerm::Tag::Step: {
      KProof p = kripke_interp(st, ctx, t.kid(0), at, env, w);
      p = charge(std::move(p), 1, w);
      p.track = kenv_subst(t, env);
      return p;
    }
    case CbpvTerm::Tag::Bind: {
      CbpvType mt = cbpv_infer(ctx, t.kid(0), st->fuel);
      if (mt.tag() != CbpvType::Tag::F)
        throw Error(Errc::sort_mismatch, "bind producer has type " + mt.str());
      KProof pm = kripke_interp(st, ctx, t.kid(0), mt, env, w);
      if (pm.kind != KProof::Kind::FComp || !pm.retval)
        throw Error(Errc::section_violation, "bind producer proof is not a returner");
      CbpvCtx inner = ctx;
      inner.push_back(mt.kid(0));
      KEnv env2 = env;
      env2.push_back({pm.retval->track, *pm.retval});
      KProof pn = kripke_interp(st, inner, t.kid(1), at, env2, w);
      pn = charge(std::move(pn), pm.cost, w);
      pn.track = kenv_subst(t, env);
      return pn;
    }
    case CbpvTerm::Tag::Force: {
      CbpvType vt = cbpv_infer(ctx, t.kid(0), st->fuel);
      if (vt.tag() != CbpvType::Tag::U)
        throw Error(Errc::sort_mismatch, "force of a non-thunk");
      KProof pv = kripke_interp(st, ctx, t.kid(0), vt, env, w);
      if (pv.kind != KProof::Kind::ThunkV || !pv.force)
        throw Error(Errc::section_violation, "thunk proof has no force component");
      return pv.force(w);
    }
    case CbpvTerm::Tag::Lam: {
      if (at.tag() != CbpvType::Tag::Arrow)
        throw Error(Errc::sort_mismatch, "computation lambda interpreted at " + at.str());
      KProof p;
      p.kind = KProof::Kind::FunComp;
      p.world = w;
      p.track = kenv_subst(t, env);
      CbpvTerm body = t.kid(0);
      CbpvType cod = at.kid(1);
      CbpvType dom = at.kid(0);
      CbpvCtx inner = ctx;
      inner.push_back(dom);
      p.apply = [st, inner, body, cod, env](World w2, const CbpvTerm& a, const KProof& pa) {
        KEnv env2 = env;
        env2.push_back({a, pa});
        return kripke_interp(st, inner, body, cod, env2, w2);
      };
      return p;
    }
    case CbpvTerm::Tag::App: {
      CbpvType mt;
      try {
        mt = cbpv_infer(ctx, t.kid(0), st->fuel);
      } catch (const Error& e) {
        if (e.code() != Errc::cannot_infer) throw;
        mt = CbpvType::arrow(cbpv_infer(ctx, t.kid(1), st->fuel), at);
      }
      if (mt.tag() != CbpvType::Tag::Arrow)
        throw Error(Errc::not_a_function, "application head has type " + mt.str());
      KProof pm = kripke_interp(st, ctx, t.kid(0), mt, env, w);
      if (pm.kind != KProof::Kind::FunComp || !pm.apply)
        throw Error(Errc::section_violation, "function proof has no application component");
      KProof pa = kripke_interp(st, ctx, t.kid(1), mt.kid(0), env, w);
      return pm.apply(w, kenv_subst(t.kid(1), env), pa);
    }
    case CbpvTerm::Tag::If: {
      KProof pv = kripke_interp(st, ctx, t.kid(0), CbpvType::boolean(), env, w);
      if (pv.kind != KProof::Kind::BoolV)
        throw Error(Errc::section_violation, "branch scrutinee proof is not boolean");
      return kripke_interp(st, ctx, pv.tag == CanonTag::True ? t.kid(1) : t.kid(2), at, env, w);
    }
  }
  throw Error(Errc::stuck_term, "unreachable computation tag");
}

CbpvTerm steps_of(uint64_t n, CanonTag tag) {
  CbpvTerm t = CbpvTerm::ret(tag == CanonTag::True ? CbpvTerm::tru() : CbpvTerm::fls());
  for (uint64_t i = 0; i < n; ++i) t = CbpvTerm::step(t);
  return t;
}

CostResult extract_cost(const CbpvTerm& comp, uint64_t fuel_limit) {
  {
    Fuel fuel(fuel_limit);
    if (!well_scoped(comp, 0))
      throw Error(Errc::not_closed, "cost extraction needs a closed computation");
    cbpv_check(CbpvCtx{}, comp, CbpvType::f(CbpvType::boolean()), fuel);
  }
  auto st = std::make_shared<KripkeState>(fuel_limit);
  KProof p = kripke_interp(st, CbpvCtx{}, comp, CbpvType::f(CbpvType::boolean()), KEnv{}, World::Top);
  if (p.kind != KProof::Kind::FComp || !p.retval || p.retval->kind != KProof::Kind::BoolV)
    throw Error(Errc::section_violation, "cost interpretation did not produce a boolean returner");

  CostResult res;
  res.term = comp;
  res.cost = p.cost;
  res.tag = p.retval->tag;
  res.steps = st->nodes;
  res.top_wit = CbpvCert{comp, steps_of(res.cost, res.tag), World::Top};
  res.beh_wit = CbpvCert{comp, steps_of(0, res.tag), World::Beh};
  Fuel replay_fuel(fuel_limit);
  res.top_ok = res.top_wit.replay(replay_fuel);
  res.beh_ok = res.beh_wit.replay(replay_fuel);
  if (!res.top_ok || !res.beh_ok)
    throw Error(Errc::section_violation,
                "cost witnesses failed to replay for " + debug_str(comp) + " (cost " +
                    std::to_string(res.cost) + ", tag " + canon_name(res.tag) + ")");
  return res;
}

}  // namespace stc::calf
