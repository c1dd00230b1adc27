#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stc/error.hpp"

namespace stc::phase {

// Finite playground for the phase-distinction laws.  An object has a total
// carrier, the carrier of its syntactic stage, and a restriction map from
// total to syntactic elements.  Carriers are 0..n-1; atoms are interned ints.
//
// Construction is raw on purpose: the law checkers below take arbitrary data
// so corrupted inputs (mutation tests) reach them.  Use well_formed() to
// validate.
struct Obj {
  int total = 0;
  int syn = 0;
  std::vector<int> restr;  // size total, values in [0, syn)

  bool well_formed() const;
  bool operator==(const Obj&) const = default;
  std::string str() const;
};

// A map of objects: components on the total and syntactic carriers that
// commute with the restrictions.
struct Mor {
  Obj src, dst;
  std::vector<int> on_total;  // size src.total, values in [0, dst.total)
  std::vector<int> on_syn;    // size src.syn, values in [0, dst.syn)

  bool well_formed() const;  // includes naturality
  bool operator==(const Mor&) const = default;
  std::string str() const;
};

Mor identity(const Obj& x);
Mor compose(const Mor& g, const Mor& f);  // g after f

// The syntactic-stage classifier: empty total, one syntactic atom.  It is
// subterminal, so "being syntactic" behaves like a proposition.
Obj syn_obj();
Obj terminal_obj();

// Open modality: restrict to the syntactic stage and spread it back.
Obj open_mod(const Obj& x);
Mor open_eta(const Obj& x);         // x -> open_mod(x)
Mor open_action(const Mor& f);      // open_mod(src) -> open_mod(dst)
bool is_open_modal(const Obj& x);   // restriction is a bijection

// Closed modality: keep the total stage, collapse the syntactic stage.
Obj closed_mod(const Obj& x);
Mor closed_eta(const Obj& x);       // x -> closed_mod(x)
Mor closed_action(const Mor& f);
bool is_closed_modal(const Obj& x);  // syntactic carrier is a point

// Extension object: the elements of x whose restriction is the given point.
// The embed morphism exhibits it as a subobject of x.
struct ExtData {
  Obj base;
  int point = 0;
  Obj ext;
  Mor embed;  // ext -> base
};
ExtData make_ext(const Obj& base, int point);

// Glue object over an open-modal base with a closed-modal family: the total
// carrier is the disjoint sum of the family fibers, the syntactic carrier is
// the base's, and restriction factors through the first projection.
// fam is indexed by base total elements; offsets[i] is where fiber i starts.
struct GlueData {
  Obj base;
  std::vector<Obj> fam;
  Obj glue;
  std::vector<int> offsets;
  std::vector<std::vector<int>> intro;  // intro[i][b] = glue element
};
// Validates the side conditions (base open-modal, fibers closed-modal);
// throws glue_formation otherwise.
GlueData make_glue(const Obj& base, std::vector<Obj> fam);
int glue_intro(const GlueData& g, int base_elem, int fam_elem);
int proj_open(const GlueData& g, int elem);    // first projection, via restriction
int proj_closed(const GlueData& g, int elem);  // fiber component

// Single-rule checkers.  nullopt means the rule holds on the given data;
// otherwise a printable counterexample.
std::optional<std::string> rule_ext_formation(const ExtData& e);
std::optional<std::string> rule_ext_intro(const ExtData& e);
std::optional<std::string> rule_ext_elim(const ExtData& e);
std::optional<std::string> rule_ext_compute(const ExtData& e);

std::optional<std::string> rule_glue_formation(const GlueData& g);
std::optional<std::string> rule_glue_intro(const GlueData& g);
std::optional<std::string> rule_glue_elim_open(const GlueData& g);
std::optional<std::string> rule_glue_elim_closed(const GlueData& g);
std::optional<std::string> rule_glue_compute_open(const GlueData& g);
std::optional<std::string> rule_glue_compute_closed(const GlueData& g);
std::optional<std::string> rule_glue_unique(const GlueData& g);
std::optional<std::string> rule_glue_type_eq_syn(const GlueData& g);
std::optional<std::string> rule_glue_term_eq_syn(const GlueData& g);

struct RuleVerdict {
  std::string rule;
  bool pass = false;
  long checked = 0;  // instances exercised
  std::string counterexample;
  std::string note;
};

struct LawReport {
  int size_bound = 0;
  std::vector<RuleVerdict> rules;
  bool all_pass() const;
  const RuleVerdict& by_rule(const std::string& name) const;
};

// Exhaustive check of every law over all objects with carriers up to
// size_bound: the extension rules, the glue rules, the modality laws, and
// the classifier properties.  Deterministic enumeration order.
LawReport check_laws(int size_bound = 3);

std::vector<Obj> enumerate_objs(int size_bound);
std::vector<Mor> enumerate_mors(const Obj& a, const Obj& b);

}  // namespace stc::phase
