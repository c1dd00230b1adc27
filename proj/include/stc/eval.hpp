#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "stc/term.hpp"

namespace stc {

struct Value;
struct NeutralV;
using ValuePtr = std::shared_ptr<const Value>;
using NeutralPtr = std::shared_ptr<const NeutralV>;

// Body paired with the environment it was closed over.
struct Closure {
  Term body;
  std::vector<ValuePtr> env;
};

// Blocked eliminations headed by a free variable.  Variables are de Bruijn
// levels here so values never need reindexing.  NVar carries its type so
// readback can eta-expand spines without a context lookup.
struct NeutralV {
  enum class Tag { Var, App, If };
  Tag tag;
  // Var
  uint32_t level = 0;
  ValuePtr var_type;
  // App
  NeutralPtr fun;
  ValuePtr arg;
  // If
  std::optional<Closure> motive;
  NeutralPtr scrut;
  ValuePtr tbranch;
  ValuePtr fbranch;

  static NeutralPtr var(uint32_t level, ValuePtr type);
  static NeutralPtr app(NeutralPtr fun, ValuePtr arg);
  static NeutralPtr ifelim(Closure motive, NeutralPtr scrut, ValuePtr t, ValuePtr f);
};

struct Value {
  enum class Tag { True, False, Bool, Tp, Pi, Lam, U0, U1, Neutral };
  Tag tag;
  // Pi: dom + clo(codomain); Lam: clo(body)
  ValuePtr dom;
  std::optional<Closure> clo;
  NeutralPtr neut;

  static ValuePtr tru();
  static ValuePtr fls();
  static ValuePtr boolean();
  static ValuePtr tp();
  static ValuePtr u0();
  static ValuePtr u1();
  static ValuePtr pi(ValuePtr dom, Closure cod);
  static ValuePtr lam(Closure body);
  static ValuePtr neutral(NeutralPtr n);
};

// Step budget shared across one evaluation/readback session.  Exhaustion is
// reported, never silently truncated.
struct Fuel {
  static constexpr uint64_t kDefault = 1'000'000;
  uint64_t limit = kDefault;
  uint64_t used = 0;

  Fuel() = default;
  explicit Fuel(uint64_t l) : limit(l) {}

  void tick() {
    if (++used > limit)
      throw Error(Errc::fuel_exhausted, "evaluation exceeded " + std::to_string(limit) + " steps");
  }
};

// Rule firings, for --trace output.
using TraceSink = std::vector<std::string>;

// Untyped evaluator.  env is indexed by level: env[0] is the outermost
// binding, so Var i reads env[env.size()-1-i].  A stuck non-neutral redex
// (e.g. applying true) reports stuck_term.
ValuePtr eval(const std::vector<ValuePtr>& env, const Term& t, Fuel& fuel, TraceSink* trace = nullptr);

ValuePtr apply_value(const ValuePtr& fun, const ValuePtr& arg, Fuel& fuel, TraceSink* trace = nullptr);
ValuePtr instantiate(const Closure& c, const ValuePtr& v, Fuel& fuel, TraceSink* trace = nullptr);

// Type-directed readback to beta-normal eta-long form.  depth is the number
// of binders in scope (next fresh level); `at` is the value of the type.
Term readback(uint32_t depth, const ValuePtr& v, const ValuePtr& at, Fuel& fuel);

// Readback of a value sitting in type position.
Term readback_type(uint32_t depth, const ValuePtr& v, Fuel& fuel);

// Environment of fresh typed neutrals for an open context.
std::vector<ValuePtr> env_of_context(const Context& ctx, Fuel& fuel);

// Normal form of t at type `at` in ctx.  Both must be well formed; garbage
// in yields a diagnostic out (stuck_term / fuel_exhausted), never silence.
Term normalize(const Context& ctx, const Term& at, const Term& t, Fuel& fuel, TraceSink* trace = nullptr);
Term normalize_type(const Context& ctx, const Term& ty, Fuel& fuel);

// Definitional equality at a type: evaluate both sides, read back, compare.
bool convertible(const Context& ctx, const Term& at, const Term& lhs, const Term& rhs, Fuel& fuel);
bool types_convertible(const Context& ctx, const Term& a, const Term& b, Fuel& fuel);

// Convenience overloads with a fresh default budget.
Term normalize(const Context& ctx, const Term& at, const Term& t);
bool convertible(const Context& ctx, const Term& at, const Term& lhs, const Term& rhs);
bool types_convertible(const Context& ctx, const Term& a, const Term& b);

}  // namespace stc
