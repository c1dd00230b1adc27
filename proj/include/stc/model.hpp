#pragma once

#include <functional>
#include <memory>

#include "stc/check.hpp"

namespace stc {

// A replayable conversion claim: lhs and rhs are definitionally equal at
// `type` in the empty context.  replay() re-runs the converter from scratch.
struct ConvCert {
  Term type;
  Term lhs;
  Term rhs;
  std::string rule;

  bool replay(Fuel& fuel) const;
  bool replay() const;
};

enum class CanonTag { True, False };
Term canon_term(CanonTag tag);
const char* canon_name(CanonTag tag);

struct SemType;
using SemTypePtr = std::shared_ptr<const SemType>;
struct SemProof;

// Proof that a closed term inhabits a semantic type.  Every proof carries
// the syntactic term it tracks; the section property says the tracked term
// is convertible with the term being interpreted.
struct SemProof {
  enum class Kind { Bool, Fun, Code };
  Kind kind;
  Term track;
  // Bool: a canonical tag plus the conversion certificate for it
  CanonTag tag = CanonTag::True;
  ConvCert wit;
  // Fun: semantic application; the argument comes with its own proof
  std::function<SemProof(const Term&, const SemProof&)> apply;
  // Code: the semantic type this code denotes
  SemTypePtr code;
};

// Semantic type: a closed syntactic code plus a proof space over closed
// terms.  The space is stable under conversion of the inhabitant, which the
// membership check below realizes by converting tracked terms.
struct SemType {
  enum class Kind { Bool, Fun, Univ };
  Kind kind;
  Term code;
  // Fun
  SemTypePtr dom;
  std::function<SemTypePtr(const Term&, const SemProof&)> cod;
};

bool sem_inhabits(const SemType& ty, const Term& t, const SemProof& p, Fuel& fuel);

struct SemEnvEntry {
  Term term;  // closed
  SemProof proof;
};

// Value environment for an open term: one closed term + proof per context
// entry, outermost first.
struct SemEnv {
  std::vector<SemEnvEntry> entries;
};

// Deliberate model corruptions, used to demonstrate that the tracking audit
// has teeth.  none is the production configuration.
enum class ModelFault {
  none,
  true_tracks_false,  // the interpretation of true tracks the term false
  fun_tracks_body,    // functions track their unsubstituted bodies
  swap_true_tag,      // the tag of true is reported as false
};

struct ModelOptions {
  uint64_t fuel_limit = Fuel::kDefault;
  bool audit = false;  // re-check the section property at every node
  bool trace = false;
  ModelFault fault = ModelFault::none;
};

// Interpretation state; proofs close over it, so it is shared.
struct ModelState {
  Fuel fuel;
  ModelOptions opts;
  uint64_t nodes = 0;
  std::vector<std::pair<Term, Term>> violations;  // (term instance, tracked term)
  std::vector<std::string> trace;

  explicit ModelState(ModelOptions o) : fuel(o.fuel_limit), opts(o) {}
};
using ModelStatePtr = std::shared_ptr<ModelState>;

// Simultaneous substitution of the environment's closed terms.
Term msubst(const Term& t, const SemEnv& env);

SemTypePtr interp_type(const ModelStatePtr& st, const Context& ctx, const Term& a, const SemEnv& env);
SemProof interp_term(const ModelStatePtr& st, const Context& ctx, const Term& t, const Term& at,
                     const SemEnv& env);

struct CanonResult {
  Term term;
  CanonTag tag;
  ConvCert witness;
  bool tracking_ok = false;
  uint64_t steps = 0;
  std::vector<std::string> trace;
};

// The canonicity pipeline for a closed boolean term: typecheck, interpret,
// and return the tag together with a replayable conversion witness.  A final
// witness that fails to replay is an internal soundness bug and raises
// section_violation.
CanonResult extract_canonical(const Term& t, ModelOptions opts = {});

// Replays the interpretation of a checked term with the audit on and reports
// whether every node tracked a convertible term.  The offending pairs land
// in `failures` when given.
bool verify_tracking(const TypedTerm& td, ModelOptions opts = {},
                     std::vector<std::pair<Term, Term>>* failures = nullptr);

}  // namespace stc
