#include "stc/model.hpp"

namespace stc {

bool ConvCert::replay(Fuel& fuel) const { return convertible(Context{}, type, lhs, rhs, fuel); }

bool ConvCert::replay() const {
  Fuel fuel;
  return replay(fuel);
}

Term canon_term(CanonTag tag) { return tag == CanonTag::True ? Term::tru() : Term::fls(); }
const char* canon_name(CanonTag tag) { return tag == CanonTag::True ? "true" : "false"; }

Term msubst(const Term& t, const SemEnv& env) {
  Term out = t;
  for (size_t i = env.entries.size(); i-- > 0;) out = subst(out, 0, env.entries[i].term);
  return out;
}

bool sem_inhabits(const SemType& ty, const Term& t, const SemProof& p, Fuel& fuel) {
  switch (ty.kind) {
    case SemType::Kind::Bool:
      return p.kind == SemProof::Kind::Bool && alpha_eq(p.wit.rhs, canon_term(p.tag)) &&
             p.wit.replay(fuel) && convertible(Context{}, Term::boolean(), p.track, t, fuel);
    case SemType::Kind::Fun:
      return p.kind == SemProof::Kind::Fun && convertible(Context{}, ty.code, p.track, t, fuel);
    case SemType::Kind::Univ:
      return p.kind == SemProof::Kind::Code && p.code != nullptr &&
             types_convertible(Context{}, p.code->code, t, fuel);
  }
  return false;
}

namespace {

SemTypePtr retarget(const SemTypePtr& ty, Term code) {
  auto out = std::make_shared<SemType>(*ty);
  out->code = std::move(code);
  return out;
}

SemProof bool_proof(const ModelStatePtr& st, CanonTag tag) {
  SemProof p;
  p.kind = SemProof::Kind::Bool;
  p.tag = tag;
  p.track = canon_term(tag);
  if (st->opts.fault == ModelFault::true_tracks_false && tag == CanonTag::True)
    p.track = Term::fls();
  if (st->opts.fault == ModelFault::swap_true_tag && tag == CanonTag::True) p.tag = CanonTag::False;
  p.wit = ConvCert{Term::boolean(), p.track, canon_term(p.tag), "reflexivity"};
  return p;
}

void note(const ModelStatePtr& st, const std::string& line) {
  if (st->opts.trace) st->trace.push_back(line);
}

}  // namespace

SemTypePtr interp_type(const ModelStatePtr& st, const Context& ctx, const Term& a, const SemEnv& env) {
  st->fuel.tick();
  switch (a.tag()) {
    case Tag::Bool: {
      auto ty = std::make_shared<SemType>();
      ty->kind = SemType::Kind::Bool;
      ty->code = Term::boolean();
      return ty;
    }
    case Tag::Tm:
      return retarget(interp_type(st, ctx, a.tm_of(), env), msubst(a, env));
    case Tag::Tp:
    case Tag::U0:
    case Tag::U1: {
      auto ty = std::make_shared<SemType>();
      ty->kind = SemType::Kind::Univ;
      ty->code = a;
      return ty;
    }
    case Tag::Pi: {
      auto ty = std::make_shared<SemType>();
      ty->kind = SemType::Kind::Fun;
      ty->code = msubst(a, env);
      ty->dom = interp_type(st, ctx, a.pi_dom(), env);
      Context inner = ctx.extended("", a.pi_dom());
      Term dom_term = a.pi_dom();
      Term cod_term = a.pi_cod();
      ty->cod = [st, inner, cod_term, env](const Term& arg, const SemProof& parg) {
        SemEnv env2 = env;
        env2.entries.push_back({arg, parg});
        return interp_type(st, inner, cod_term, env2);
      };
      return ty;
    }
    case Tag::If: {
      SemProof pb = interp_term(st, ctx, a.if_scrut(), Term::boolean(), env);
      if (pb.kind != SemProof::Kind::Bool)
        throw Error(Errc::section_violation, "type-level scrutinee did not interpret to a boolean proof");
      const Term& branch = pb.tag == CanonTag::True ? a.if_true() : a.if_false();
      Term branch_ty = subst(a.if_motive(), 0, canon_term(pb.tag));
      SemProof pc = interp_term(st, ctx, branch, branch_ty, env);
      if (pc.kind != SemProof::Kind::Code || !pc.code)
        throw Error(Errc::not_a_type, "type-level branch is not a code: " + debug_str(branch));
      note(st, std::string("type-level case split on ") + canon_name(pb.tag));
      return retarget(pc.code, msubst(a, env));
    }
    case Tag::Var: {
      if (a.index() >= env.entries.size())
        throw Error(Errc::unbound_variable, "type variable without environment entry");
      const SemEnvEntry& e = env.entries[env.entries.size() - 1 - a.index()];
      if (e.proof.kind != SemProof::Kind::Code || !e.proof.code)
        throw Error(Errc::not_a_type, "variable used as a type has a non-code proof");
      return retarget(e.proof.code, e.term);
    }
    default:
      throw Error(Errc::not_a_type, "no semantic type for " + debug_str(a));
  }
}

namespace {

SemProof interp_term_raw(const ModelStatePtr& st, const Context& ctx, const Term& t, const Term& at,
                         const SemEnv& env) {
  st->fuel.tick();
  switch (t.tag()) {
    case Tag::Var: {
      if (t.index() >= env.entries.size())
        throw Error(Errc::unbound_variable, "term variable without environment entry");
      return env.entries[env.entries.size() - 1 - t.index()].proof;
    }
    case Tag::True:
      return bool_proof(st, CanonTag::True);
    case Tag::False:
      return bool_proof(st, CanonTag::False);
    case Tag::Lam: {
      Term nf = normalize_type(ctx, at, st->fuel);
      if (nf.tag() != Tag::Pi)
        throw Error(Errc::section_violation, "lambda interpreted at non-function type " + debug_str(nf));
      SemProof p;
      p.kind = SemProof::Kind::Fun;
      p.track = msubst(t, env);
      if (st->opts.fault == ModelFault::fun_tracks_body) p.track = t.lam_body();
      Context inner = ctx.extended("", nf.pi_dom());
      Term body = t.lam_body();
      Term cod = nf.pi_cod();
      p.apply = [st, inner, body, cod, env](const Term& arg, const SemProof& parg) {
        SemEnv env2 = env;
        env2.entries.push_back({arg, parg});
        return interp_term(st, inner, body, cod, env2);
      };
      return p;
    }
    case Tag::App: {
      Term fty;
      try {
        fty = infer(ctx, t.app_fun(), st->fuel);
      } catch (const Error& e) {
        if (e.code() != Errc::cannot_infer) throw;
        fty = Term::pi(infer(ctx, t.app_arg(), st->fuel), shift(at, 0, 1));
      }
      Term nf = normalize_type(ctx, fty, st->fuel);
      if (nf.tag() != Tag::Pi)
        throw Error(Errc::not_a_function, "application head has type " + debug_str(nf));
      SemProof pf = interp_term(st, ctx, t.app_fun(), nf, env);
      if (pf.kind != SemProof::Kind::Fun)
        throw Error(Errc::section_violation, "application head did not interpret to a function proof");
      SemProof pa = interp_term(st, ctx, t.app_arg(), nf.pi_dom(), env);
      note(st, "apply " + debug_str(msubst(t.app_fun(), env)));
      return pf.apply(msubst(t.app_arg(), env), pa);
    }
    case Tag::If: {
      SemProof pb = interp_term(st, ctx, t.if_scrut(), Term::boolean(), env);
      if (pb.kind != SemProof::Kind::Bool)
        throw Error(Errc::section_violation, "scrutinee did not interpret to a boolean proof");
      note(st, std::string("case split: scrutinee is canonically ") + canon_name(pb.tag) +
                   ", witness " + debug_str(pb.track));
      if (pb.tag == CanonTag::True)
        return interp_term(st, ctx, t.if_true(), subst(t.if_motive(), 0, Term::tru()), env);
      return interp_term(st, ctx, t.if_false(), subst(t.if_motive(), 0, Term::fls()), env);
    }
    case Tag::Bool:
    case Tag::Pi:
    case Tag::Tp:
    case Tag::Tm:
    case Tag::U0: {
      SemProof p;
      p.kind = SemProof::Kind::Code;
      p.track = msubst(t, env);
      p.code = interp_type(st, ctx, t, env);
      return p;
    }
    default:
      throw Error(Errc::cannot_infer, "term has no interpretation: " + debug_str(t));
  }
}

}  // namespace

SemProof interp_term(const ModelStatePtr& st, const Context& ctx, const Term& t, const Term& at,
                     const SemEnv& env) {
  SemProof p = interp_term_raw(st, ctx, t, at, env);
  ++st->nodes;
  if (st->opts.audit) {
    Term inst = msubst(t, env);
    Term at_inst = msubst(at, env);
    bool ok = false;
    try {
      ok = convertible(Context{}, at_inst, p.track, inst, st->fuel);
    } catch (const Error& e) {
      // a track so corrupt it cannot even be evaluated is a violation, not a
      // crash; only budget exhaustion aborts the audit
      if (e.code() == Errc::fuel_exhausted) throw;
      ok = false;
    }
    if (!ok) st->violations.emplace_back(inst, p.track);
  }
  return p;
}

CanonResult extract_canonical(const Term& t, ModelOptions opts) {
  {
    Fuel fuel(opts.fuel_limit);
    check_closed_bool(t, fuel);
  }
  opts.audit = true;
  auto st = std::make_shared<ModelState>(opts);
  SemProof p = interp_term(st, Context{}, t, Term::boolean(), SemEnv{});
  if (p.kind != SemProof::Kind::Bool)
    throw Error(Errc::section_violation, "closed boolean interpreted to a non-boolean proof");

  CanonResult res;
  res.term = t;
  res.tag = p.tag;
  res.witness = ConvCert{Term::boolean(), t, canon_term(p.tag), "canonical extraction"};
  Fuel replay_fuel(opts.fuel_limit);
  if (!res.witness.replay(replay_fuel))
    throw Error(Errc::section_violation,
                "canonicity witness failed to replay: " + debug_str(t) + " vs " +
                    debug_str(canon_term(p.tag)))
        .with("lhs", debug_str(t))
        .with("rhs", debug_str(canon_term(p.tag)));
  res.tracking_ok = st->violations.empty();
  res.steps = st->nodes;
  res.trace = std::move(st->trace);
  return res;
}

bool verify_tracking(const TypedTerm& td, ModelOptions opts,
                     std::vector<std::pair<Term, Term>>* failures) {
  if (!td.ctx.empty())
    throw Error(Errc::usage_error, "tracking verification expects a closed judgment");
  opts.audit = true;
  auto st = std::make_shared<ModelState>(opts);
  interp_term(st, td.ctx, td.term, td.type, SemEnv{});
  if (failures) *failures = st->violations;
  return st->violations.empty();
}

}  // namespace stc
