#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "stc/eval.hpp"
#include "stc/model.hpp"

namespace stc::calf {

// Call-by-push-value fragment with a step-counting effect.  Values and
// computations are disjoint sorts sharing one tree; variables range over
// values only.
enum class Sort { Value, Comp };

class CbpvTerm {
 public:
  enum class Tag : uint8_t {
    // values
    Var,
    True,
    False,
    Thunk,  // thunk M
    // computations
    Ret,    // ret V
    Bind,   // bind M (x.N)
    Step,   // step M: charge one unit, then M
    Force,  // force V
    Lam,    // lam (x.M)
    App,    // app M V
    If,     // if V M1 M2, computation-level branch
  };

  CbpvTerm() = default;

  static CbpvTerm var(uint32_t index);
  static CbpvTerm tru();
  static CbpvTerm fls();
  static CbpvTerm thunk(CbpvTerm comp);
  static CbpvTerm ret(CbpvTerm v);
  static CbpvTerm bind(CbpvTerm m, CbpvTerm n);  // n binds one value variable
  static CbpvTerm step(CbpvTerm m);
  static CbpvTerm force(CbpvTerm v);
  static CbpvTerm lam(CbpvTerm body);  // body binds one value variable
  static CbpvTerm app(CbpvTerm m, CbpvTerm v);
  static CbpvTerm ifc(CbpvTerm v, CbpvTerm m1, CbpvTerm m2);

  bool valid() const { return node_ != nullptr; }
  Tag tag() const { return node_->tag; }
  uint32_t index() const { return node_->index; }
  size_t arity() const { return node_->kids.size(); }
  const CbpvTerm& kid(size_t i) const { return node_->kids[i]; }
  Sort sort() const;
  bool ptr_eq(const CbpvTerm& o) const { return node_ == o.node_; }

 private:
  struct Node {
    Tag tag;
    uint32_t index = 0;
    std::vector<CbpvTerm> kids;
  };
  explicit CbpvTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static CbpvTerm make(Tag t, uint32_t index, std::vector<CbpvTerm> kids);
  std::shared_ptr<const Node> node_;
};

bool kid_binds(CbpvTerm::Tag t, size_t i);
bool alpha_eq(const CbpvTerm& a, const CbpvTerm& b);
CbpvTerm shift(const CbpvTerm& t, uint32_t cutoff, int64_t amount);
CbpvTerm subst(const CbpvTerm& t, uint32_t target, const CbpvTerm& u);
bool well_scoped(const CbpvTerm& t, size_t depth);
std::string debug_str(const CbpvTerm& t);

// Simple types: bool and U(X) classify values, F(A) and A -> X classify
// computations.  No type variables, so equality is structural.
class CbpvType {
 public:
  enum class Tag : uint8_t { Bool, U, F, Arrow };

  CbpvType() = default;
  static CbpvType boolean();
  static CbpvType u(CbpvType comp);
  static CbpvType f(CbpvType val);
  static CbpvType arrow(CbpvType dom, CbpvType cod);

  bool valid() const { return node_ != nullptr; }
  Tag tag() const { return node_->tag; }
  const CbpvType& kid(size_t i) const { return node_->kids[i]; }
  Sort sort() const;
  std::string str() const;

 private:
  struct Node {
    Tag tag;
    std::vector<CbpvType> kids;
  };
  explicit CbpvType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static CbpvType make(Tag t, std::vector<CbpvType> kids);
  std::shared_ptr<const Node> node_;
};

bool type_eq(const CbpvType& a, const CbpvType& b);

using CbpvCtx = std::vector<CbpvType>;  // value telescope, [0] outermost

// Bidirectional checking.  Sort confusion (a value at a computation type or
// vice versa) reports sort_mismatch before any structural analysis.
CbpvType cbpv_infer(const CbpvCtx& ctx, const CbpvTerm& t, Fuel& fuel);
void cbpv_check(const CbpvCtx& ctx, const CbpvTerm& t, const CbpvType& at, Fuel& fuel);
void cbpv_check(const CbpvCtx& ctx, const CbpvTerm& t, const CbpvType& at);

// Deterministic machine for closed computations.  The cost is the number of
// step instructions executed.
struct EvalResult {
  uint64_t cost = 0;
  CbpvTerm terminal;  // ret V or lam (x.M)
};
EvalResult cbpv_eval(const CbpvTerm& comp, Fuel& fuel);
EvalResult cbpv_eval(const CbpvTerm& comp);

// The two cost-sensitivity worlds: beh only observes behavior, top also
// observes cost.  beh is below top; evidence at top restricts to beh.
enum class World { Beh, Top };
const char* world_name(World w);

// Observational equality of closed boolean-returning computations at a
// world: same result tag, and at top also the same cost.
bool cbpv_equal(const CbpvTerm& m, const CbpvTerm& n, World w, Fuel& fuel);

struct CbpvCert {
  CbpvTerm lhs, rhs;
  World world = World::Beh;
  bool replay(Fuel& fuel) const;
  bool replay() const;
};

// World-indexed proof of the logical relation.  Proofs carry the closed
// term they track and restrict monotonely from top to beh.
struct KProof {
  enum class Kind { BoolV, ThunkV, FComp, FunComp };
  Kind kind;
  World world = World::Top;
  CbpvTerm track;
  // BoolV
  CanonTag tag = CanonTag::True;
  // FComp: cost counted when the world observes it, plus the returned value
  uint64_t cost = 0;
  std::shared_ptr<KProof> retval;
  // ThunkV: evidence at any world at or below the current one
  std::function<KProof(World)> force;
  // FunComp
  std::function<KProof(World, const CbpvTerm&, const KProof&)> apply;
};

KProof restrict_proof(const KProof& p, World target);

struct KEnvEntry {
  CbpvTerm term;  // closed value
  KProof proof;
};
using KEnv = std::vector<KEnvEntry>;

struct KripkeState {
  Fuel fuel;
  uint64_t nodes = 0;
  explicit KripkeState(uint64_t limit) : fuel(limit) {}
};
using KripkeStatePtr = std::shared_ptr<KripkeState>;

KProof kripke_interp(const KripkeStatePtr& st, const CbpvCtx& ctx, const CbpvTerm& t,
                     const CbpvType& at, const KEnv& env, World w);

// Cost extraction through the relation: interpret at top, read off cost and
// tag, and emit machine-replayable witnesses at both worlds.
struct CostResult {
  CbpvTerm term;
  uint64_t cost = 0;
  CanonTag tag = CanonTag::True;
  CbpvCert top_wit, beh_wit;
  bool top_ok = false;
  bool beh_ok = false;
  uint64_t steps = 0;
};
CostResult extract_cost(const CbpvTerm& comp, uint64_t fuel_limit = Fuel::kDefault);

// step^n (ret tag)
CbpvTerm steps_of(uint64_t n, CanonTag tag);

}  // namespace stc::calf
