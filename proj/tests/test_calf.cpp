#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "stc/calf.hpp"

using namespace stc;
using namespace stc::calf;

namespace {

CbpvType fbool() { return CbpvType::f(CbpvType::boolean()); }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::runtime_error("expected an engine error");
}

}  // namespace

TEST_CASE("terms know their sort") {
  CHECK(CbpvTerm::tru().sort() == Sort::Value);
  CHECK(CbpvTerm::var(0).sort() == Sort::Value);
  CHECK(CbpvTerm::thunk(CbpvTerm::ret(CbpvTerm::tru())).sort() == Sort::Value);
  CHECK(CbpvTerm::ret(CbpvTerm::tru()).sort() == Sort::Comp);
  CHECK(CbpvTerm::step(CbpvTerm::ret(CbpvTerm::tru())).sort() == Sort::Comp);
  CHECK(CbpvTerm::lam(CbpvTerm::ret(CbpvTerm::var(0))).sort() == Sort::Comp);

  CHECK(CbpvType::boolean().sort() == Sort::Value);
  CHECK(CbpvType::u(fbool()).sort() == Sort::Value);
  CHECK(fbool().sort() == Sort::Comp);
  CHECK(CbpvType::arrow(CbpvType::boolean(), fbool()).sort() == Sort::Comp);
}

TEST_CASE("binding structure mirrors the term side") {
  CHECK(kid_binds(CbpvTerm::Tag::Bind, 1));
  CHECK_FALSE(kid_binds(CbpvTerm::Tag::Bind, 0));
  CHECK(kid_binds(CbpvTerm::Tag::Lam, 0));
  CHECK_FALSE(kid_binds(CbpvTerm::Tag::App, 0));

  // bind (ret x0) (y. ret y): substituting for the free variable leaves the
  // bound one alone
  CbpvTerm t = CbpvTerm::bind(CbpvTerm::ret(CbpvTerm::var(0)), CbpvTerm::ret(CbpvTerm::var(0)));
  CbpvTerm r = subst(t, 0, CbpvTerm::tru());
  CHECK(alpha_eq(r, CbpvTerm::bind(CbpvTerm::ret(CbpvTerm::tru()), CbpvTerm::ret(CbpvTerm::var(0)))));
  CHECK(well_scoped(r, 0));
  CHECK_FALSE(well_scoped(t, 0));
  CHECK(well_scoped(t, 1));
  CHECK(alpha_eq(shift(t, 0, 2), CbpvTerm::bind(CbpvTerm::ret(CbpvTerm::var(2)),
                                                CbpvTerm::ret(CbpvTerm::var(0)))));
}

TEST_CASE("typing separates the sorts before anything else") {
  Fuel fuel;
  CHECK(code_of([&] { cbpv_check(CbpvCtx{}, CbpvTerm::tru(), fbool(), fuel); }) ==
        Errc::sort_mismatch);
  CHECK(code_of([&] {
          cbpv_check(CbpvCtx{}, CbpvTerm::ret(CbpvTerm::tru()), CbpvType::boolean(), fuel);
        }) == Errc::sort_mismatch);
  CHECK(code_of([&] {
          cbpv_check(CbpvCtx{}, CbpvTerm::thunk(CbpvTerm::ret(CbpvTerm::tru())), fbool(), fuel);
        }) == Errc::sort_mismatch);
}

TEST_CASE("bidirectional typing covers the fragment") {
  Fuel fuel;
  CHECK(type_eq(cbpv_infer(CbpvCtx{}, CbpvTerm::tru(), fuel), CbpvType::boolean()));
  CHECK(type_eq(cbpv_infer(CbpvCtx{}, CbpvTerm::ret(CbpvTerm::fls()), fuel), fbool()));
  CHECK(type_eq(cbpv_infer(CbpvCtx{}, CbpvTerm::thunk(CbpvTerm::ret(CbpvTerm::tru())), fuel),
                CbpvType::u(fbool())));

  // step preserves the type, bind extends the telescope
  CbpvTerm prog = CbpvTerm::bind(CbpvTerm::step(CbpvTerm::ret(CbpvTerm::tru())),
                                 CbpvTerm::step(CbpvTerm::ret(CbpvTerm::var(0))));
  CHECK(type_eq(cbpv_infer(CbpvCtx{}, prog, fuel), fbool()));

  // computation lambdas only check
  CbpvTerm id = CbpvTerm::lam(CbpvTerm::ret(CbpvTerm::var(0)));
  CHECK(code_of([&] { cbpv_infer(CbpvCtx{}, id, fuel); }) == Errc::cannot_infer);
  CHECK_NOTHROW(cbpv_check(CbpvCtx{}, id, CbpvType::arrow(CbpvType::boolean(), fbool()), fuel));
  CHECK(code_of([&] { cbpv_check(CbpvCtx{}, id, fbool(), fuel); }) == Errc::type_mismatch);

  // the application retry mirrors the term-level checker
  CbpvTerm redex = CbpvTerm::app(id, CbpvTerm::fls());
  CHECK(code_of([&] { cbpv_infer(CbpvCtx{}, redex, fuel); }) == Errc::cannot_infer);
  CHECK_NOTHROW(cbpv_check(CbpvCtx{}, redex, fbool(), fuel));

  CHECK(code_of([&] { cbpv_infer(CbpvCtx{}, CbpvTerm::var(3), fuel); }) == Errc::unbound_variable);
  CHECK(code_of([&] {
          cbpv_infer(CbpvCtx{}, CbpvTerm::force(CbpvTerm::tru()), fuel);
        }) == Errc::sort_mismatch);
  CHECK(code_of([&] {
          cbpv_infer(CbpvCtx{}, CbpvTerm::app(CbpvTerm::ret(CbpvTerm::tru()), CbpvTerm::tru()), fuel);
        }) == Errc::not_a_function);
}

TEST_CASE("the machine counts exactly the step instructions it executes") {
  CHECK(cbpv_eval(CbpvTerm::ret(CbpvTerm::tru())).cost == 0);
  CHECK(cbpv_eval(steps_of(5, CanonTag::True)).cost == 5);

  // bind runs the producer to a return, then the continuation
  CbpvTerm prog = CbpvTerm::bind(CbpvTerm::step(CbpvTerm::ret(CbpvTerm::tru())),
                                 CbpvTerm::step(CbpvTerm::ret(CbpvTerm::var(0))));
  EvalResult r = cbpv_eval(prog);
  CHECK(r.cost == 2);
  CHECK(alpha_eq(r.terminal, CbpvTerm::ret(CbpvTerm::tru())));

  // only the taken branch is paid for
  CbpvTerm br = CbpvTerm::ifc(CbpvTerm::tru(), CbpvTerm::step(CbpvTerm::ret(CbpvTerm::tru())),
                              steps_of(7, CanonTag::False));
  CHECK(cbpv_eval(br).cost == 1);
  br = CbpvTerm::ifc(CbpvTerm::fls(), CbpvTerm::step(CbpvTerm::ret(CbpvTerm::tru())),
                     steps_of(7, CanonTag::False));
  CHECK(cbpv_eval(br).cost == 7);

  // beta and force are free
  CbpvTerm beta = CbpvTerm::app(CbpvTerm::lam(CbpvTerm::ret(CbpvTerm::var(0))), CbpvTerm::fls());
  r = cbpv_eval(beta);
  CHECK(r.cost == 0);
  CHECK(alpha_eq(r.terminal, CbpvTerm::ret(CbpvTerm::fls())));
  CHECK(cbpv_eval(CbpvTerm::force(CbpvTerm::thunk(steps_of(3, CanonTag::True)))).cost == 3);

  // a computation lambda is terminal, not stuck
  CHECK(cbpv_eval(CbpvTerm::lam(CbpvTerm::ret(CbpvTerm::var(0)))).terminal.tag() ==
        CbpvTerm::Tag::Lam);
}

TEST_CASE("the machine reports stuck and open programs") {
  CHECK(code_of([] { cbpv_eval(CbpvTerm::ret(CbpvTerm::var(0))); }) == Errc::not_closed);
  CHECK(code_of([] { cbpv_eval(CbpvTerm::force(CbpvTerm::tru())); }) == Errc::stuck_term);
  CHECK(code_of([] {
          cbpv_eval(CbpvTerm::ifc(CbpvTerm::thunk(CbpvTerm::ret(CbpvTerm::tru())),
                                  CbpvTerm::ret(CbpvTerm::tru()), CbpvTerm::ret(CbpvTerm::fls())));
        }) == Errc::stuck_term);
  CHECK(code_of([] {
          cbpv_eval(CbpvTerm::bind(CbpvTerm::lam(CbpvTerm::ret(CbpvTerm::var(0))),
                                   CbpvTerm::ret(CbpvTerm::var(0))));
        }) == Errc::stuck_term);
  CHECK(code_of([] { cbpv_eval(CbpvTerm::tru()); }) == Errc::sort_mismatch);
  Fuel tiny(3);
  CHECK(code_of([&] { cbpv_eval(steps_of(10, CanonTag::True), tiny); }) == Errc::fuel_exhausted);
}

TEST_CASE("observational equality observes cost only above") {
  Fuel fuel;
  CbpvTerm cheap = CbpvTerm::ret(CbpvTerm::tru());
  CbpvTerm pricey = steps_of(4, CanonTag::True);
  CHECK(cbpv_equal(cheap, pricey, World::Beh, fuel));
  CHECK_FALSE(cbpv_equal(cheap, pricey, World::Top, fuel));
  CHECK(cbpv_equal(pricey, steps_of(4, CanonTag::True), World::Top, fuel));
  CHECK_FALSE(cbpv_equal(cheap, CbpvTerm::ret(CbpvTerm::fls()), World::Beh, fuel));

  CbpvCert beh_cert{cheap, pricey, World::Beh};
  CHECK(beh_cert.replay());
  CbpvCert top_cert{cheap, pricey, World::Top};
  CHECK_FALSE(top_cert.replay());
}

TEST_CASE("evidence restricts downward but never upward") {
  auto st = std::make_shared<KripkeState>(Fuel::kDefault);
  CbpvTerm prog = steps_of(2, CanonTag::True);
  KProof top = kripke_interp(st, CbpvCtx{}, prog, fbool(), KEnv{}, World::Top);
  REQUIRE(top.kind == KProof::Kind::FComp);
  CHECK(top.world == World::Top);
  CHECK(top.cost == 2);

  KProof beh = restrict_proof(top, World::Beh);
  CHECK(beh.world == World::Beh);
  CHECK(beh.retval->tag == CanonTag::True);

  KProof born_beh = kripke_interp(st, CbpvCtx{}, prog, fbool(), KEnv{}, World::Beh);
  CHECK(born_beh.cost == 0);  // the lower world does not see cost at all
  CHECK(born_beh.retval->tag == CanonTag::True);
  CHECK(code_of([&] { restrict_proof(born_beh, World::Top); }) == Errc::usage_error);
}

TEST_CASE("cost extraction produces machine-replayable witnesses at both worlds") {
  CbpvTerm prog = CbpvTerm::bind(CbpvTerm::step(CbpvTerm::ret(CbpvTerm::tru())),
                                 CbpvTerm::step(CbpvTerm::ret(CbpvTerm::var(0))));
  CostResult r = extract_cost(prog);
  CHECK(r.cost == 2);
  CHECK(r.tag == CanonTag::True);
  CHECK(r.top_ok);
  CHECK(r.beh_ok);
  CHECK(r.steps > 0);
  CHECK(alpha_eq(r.top_wit.rhs, steps_of(2, CanonTag::True)));
  CHECK(r.top_wit.world == World::Top);
  CHECK(r.beh_wit.world == World::Beh);
  CHECK(r.top_wit.replay());
  CHECK(r.beh_wit.replay());
}

TEST_CASE("cost extraction goes through charged function proofs") {
  // the step sits on the function itself, so the charge is deferred to the call
  CbpvTerm prog = CbpvTerm::app(CbpvTerm::step(CbpvTerm::lam(CbpvTerm::ret(CbpvTerm::var(0)))),
                                CbpvTerm::tru());
  CostResult r = extract_cost(prog);
  CHECK(r.cost == 1);
  CHECK(r.tag == CanonTag::True);
  CHECK(cbpv_eval(prog).cost == 1);
}

TEST_CASE("cost extraction rejects programs outside F bool") {
  CHECK(code_of([] { extract_cost(CbpvTerm::ret(CbpvTerm::var(0))); }) == Errc::not_closed);
  CHECK(code_of([] {
          extract_cost(CbpvTerm::lam(CbpvTerm::ret(CbpvTerm::var(0))));
        }) == Errc::type_mismatch);  // an arrow, not a returner; sorts agree
  CHECK(code_of([] {
          extract_cost(CbpvTerm::ret(CbpvTerm::thunk(CbpvTerm::ret(CbpvTerm::tru()))));
        }) == Errc::type_mismatch);
}

TEST_CASE("extracted cost equals machine cost on generated programs") {
  gen::Rng rng(0xca1f0001);
  for (int i = 0; i < 600; ++i) {
    CbpvTerm prog = gen::ct::closed_fbool(rng, 1 + rng.pick(5));
    EvalResult machine = cbpv_eval(prog);
    CostResult model = extract_cost(prog);
    REQUIRE_MESSAGE(model.cost == machine.cost, "cost mismatch on " << debug_str(prog));
    CHECK(model.top_ok);
    CHECK(model.beh_ok);
    CHECK(alpha_eq(model.top_wit.rhs, steps_of(machine.cost, model.tag)));
  }
}

TEST_CASE("inserting steps at the root adds exactly that many units") {
  gen::Rng rng(0xca1f0002);
  for (int i = 0; i < 150; ++i) {
    CbpvTerm prog = gen::ct::closed_fbool(rng, 1 + rng.pick(4));
    uint64_t base = extract_cost(prog).cost;
    uint64_t k = 1 + static_cast<uint64_t>(rng.pick(5));
    CbpvTerm wrapped = prog;
    for (uint64_t j = 0; j < k; ++j) wrapped = CbpvTerm::step(wrapped);
    CostResult r = extract_cost(wrapped);
    CHECK(r.cost == base + k);
    // behavior is untouched by the extra cost
    Fuel fuel;
    CHECK(cbpv_equal(prog, wrapped, World::Beh, fuel));
    CHECK((base == 0 && k == 0) == cbpv_equal(prog, wrapped, World::Top, fuel));
  }
}

TEST_CASE("steps inserted off the executed path are free") {
  // the dead branch can be arbitrarily expensive
  CbpvTerm dead = CbpvTerm::ifc(CbpvTerm::tru(), CbpvTerm::ret(CbpvTerm::tru()),
                                steps_of(50, CanonTag::True));
  CHECK(extract_cost(dead).cost == 0);
  // an un-forced thunk pays nothing
  CbpvTerm lazy = CbpvTerm::bind(CbpvTerm::ret(CbpvTerm::thunk(steps_of(9, CanonTag::True))),
                                 CbpvTerm::ret(CbpvTerm::fls()));
  CHECK(extract_cost(lazy).cost == 0);
  CHECK(extract_cost(lazy).tag == CanonTag::False);
}
