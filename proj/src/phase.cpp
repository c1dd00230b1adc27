#include "stc/phase.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace stc::phase {

namespace {

std::string vec_str(const std::vector<int>& v) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  os << ']';
  return os.str();
}

std::vector<int> zeros(size_t n) { return std::vector<int>(n, 0); }

std::vector<int> iota_vec(size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// all assignments of values [0,base) to `slots` positions, in lexicographic
// order; one empty assignment when slots == 0
bool next_odometer(std::vector<int>& digits, int base) {
  for (size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < base) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

bool Obj::well_formed() const {
  if (total < 0 || syn < 0) return false;
  if (static_cast<int>(restr.size()) != total) return false;
  for (int r : restr)
    if (r < 0 || r >= syn) return false;
  return true;
}

std::string Obj::str() const {
  std::ostringstream os;
  os << "(total=" << total << " syn=" << syn << " restr=" << vec_str(restr) << ')';
  return os.str();
}

bool Mor::well_formed() const {
  if (!src.well_formed() || !dst.well_formed()) return false;
  if (static_cast<int>(on_total.size()) != src.total) return false;
  if (static_cast<int>(on_syn.size()) != src.syn) return false;
  for (int v : on_total)
    if (v < 0 || v >= dst.total) return false;
  for (int v : on_syn)
    if (v < 0 || v >= dst.syn) return false;
  for (int e = 0; e < src.total; ++e)
    if (dst.restr[on_total[e]] != on_syn[src.restr[e]]) return false;  // naturality
  return true;
}

std::string Mor::str() const {
  std::ostringstream os;
  os << "{on_total=" << vec_str(on_total) << " on_syn=" << vec_str(on_syn) << " : " << src.str()
     << " -> " << dst.str() << '}';
  return os.str();
}

Mor identity(const Obj& x) { return {x, x, iota_vec(x.total), iota_vec(x.syn)}; }

Mor compose(const Mor& g, const Mor& f) {
  if (!(f.dst == g.src)) throw Error(Errc::usage_error, "composition of non-composable maps");
  Mor out{f.src, g.dst, {}, {}};
  out.on_total.reserve(f.on_total.size());
  for (int v : f.on_total) out.on_total.push_back(g.on_total[v]);
  out.on_syn.reserve(f.on_syn.size());
  for (int v : f.on_syn) out.on_syn.push_back(g.on_syn[v]);
  return out;
}

Obj syn_obj() { return {0, 1, {}}; }
Obj terminal_obj() { return {1, 1, {0}}; }

Obj open_mod(const Obj& x) { return {x.syn, x.syn, iota_vec(x.syn)}; }

Mor open_eta(const Obj& x) { return {x, open_mod(x), x.restr, iota_vec(x.syn)}; }

Mor open_action(const Mor& f) { return {open_mod(f.src), open_mod(f.dst), f.on_syn, f.on_syn}; }

bool is_open_modal(const Obj& x) {
  if (x.total != x.syn) return false;
  std::vector<bool> hit(x.syn, false);
  for (int r : x.restr) {
    if (r < 0 || r >= x.syn || hit[r]) return false;
    hit[r] = true;
  }
  return true;
}

Obj closed_mod(const Obj& x) { return {x.total, 1, zeros(x.total)}; }

Mor closed_eta(const Obj& x) { return {x, closed_mod(x), iota_vec(x.total), zeros(x.syn)}; }

Mor closed_action(const Mor& f) { return {closed_mod(f.src), closed_mod(f.dst), f.on_total, zeros(1)}; }

bool is_closed_modal(const Obj& x) { return x.syn == 1; }

ExtData make_ext(const Obj& base, int point) {
  if (!base.well_formed()) throw Error(Errc::usage_error, "extension over malformed object");
  if (point < 0 || point >= base.syn) throw Error(Errc::usage_error, "extension point out of range");
  ExtData e;
  e.base = base;
  e.point = point;
  std::vector<int> selected;
  for (int i = 0; i < base.total; ++i)
    if (base.restr[i] == point) selected.push_back(i);
  e.ext = {static_cast<int>(selected.size()), 1, zeros(selected.size())};
  e.embed = {e.ext, base, selected, {point}};
  return e;
}

GlueData make_glue(const Obj& base, std::vector<Obj> fam) {
  if (!base.well_formed() || !is_open_modal(base))
    throw Error(Errc::glue_formation, "glue base must be open-modal, got " + base.str());
  if (fam.size() != static_cast<size_t>(base.total))
    throw Error(Errc::glue_formation, "glue family must have one fiber per base element");
  for (const Obj& f : fam)
    if (!f.well_formed() || !is_closed_modal(f))
      throw Error(Errc::glue_formation, "glue fiber must be closed-modal, got " + f.str());
  GlueData g;
  g.base = base;
  g.fam = std::move(fam);
  g.offsets.resize(g.fam.size());
  int acc = 0;
  for (size_t i = 0; i < g.fam.size(); ++i) {
    g.offsets[i] = acc;
    acc += g.fam[i].total;
  }
  g.glue.total = acc;
  g.glue.syn = base.syn;
  g.glue.restr.resize(acc);
  g.intro.assign(g.fam.size(), {});
  for (size_t i = 0; i < g.fam.size(); ++i) {
    g.intro[i].resize(g.fam[i].total);
    for (int b = 0; b < g.fam[i].total; ++b) {
      int e = g.offsets[i] + b;
      g.intro[i][b] = e;
      g.glue.restr[e] = base.restr[i];
    }
  }
  return g;
}

int glue_intro(const GlueData& g, int base_elem, int fam_elem) {
  if (base_elem < 0 || base_elem >= static_cast<int>(g.intro.size()))
    throw Error(Errc::usage_error, "glue_intro: base element out of range");
  if (fam_elem < 0 || fam_elem >= static_cast<int>(g.intro[base_elem].size()))
    throw Error(Errc::usage_error, "glue_intro: fiber element out of range");
  return g.intro[base_elem][fam_elem];
}

int proj_open(const GlueData& g, int elem) {
  int found = -1;
  for (size_t i = 0; i < g.offsets.size(); ++i)
    if (g.offsets[i] <= elem) found = static_cast<int>(i);
  return found;
}

int proj_closed(const GlueData& g, int elem) {
  int block = proj_open(g, elem);
  if (block < 0) return -1;
  return elem - g.offsets[block];
}

std::optional<std::string> rule_ext_formation(const ExtData& e) {
  if (!e.ext.well_formed()) return "extension carrier malformed: " + e.ext.str();
  if (e.ext.syn != 1) return "extension must have a single syntactic atom, got " + e.ext.str();
  if (static_cast<int>(e.embed.on_total.size()) != e.ext.total)
    return "embedding arity mismatch: " + e.embed.str();
  for (int k = 0; k < e.ext.total; ++k) {
    int target = e.embed.on_total[k];
    if (target < 0 || target >= e.base.total)
      return "element " + std::to_string(k) + " embeds outside the base";
    if (e.base.restr[target] != e.point)
      return "element " + std::to_string(k) + " restricts to " + std::to_string(e.base.restr[target]) +
             ", not the extension point " + std::to_string(e.point);
  }
  return std::nullopt;
}

std::optional<std::string> rule_ext_intro(const ExtData& e) {
  for (int b = 0; b < e.base.total; ++b) {
    if (e.base.restr[b] != e.point) continue;
    bool present = std::find(e.embed.on_total.begin(), e.embed.on_total.end(), b) != e.embed.on_total.end();
    if (!present)
      return "base element " + std::to_string(b) + " restricts to the point but has no extension element";
  }
  return std::nullopt;
}

std::optional<std::string> rule_ext_elim(const ExtData& e) {
  if (!e.embed.well_formed()) return "embedding is not a natural map: " + e.embed.str();
  for (int i = 0; i < e.ext.total; ++i)
    for (int j = i + 1; j < e.ext.total; ++j)
      if (e.embed.on_total[i] == e.embed.on_total[j])
        return "embedding identifies elements " + std::to_string(i) + " and " + std::to_string(j);
  return std::nullopt;
}

std::optional<std::string> rule_ext_compute(const ExtData& e) {
  if (e.embed.on_syn.size() != 1 || e.embed.on_syn[0] != e.point)
    return "under the syntactic stage the embedding must be the point " + std::to_string(e.point) +
           ", got " + vec_str(e.embed.on_syn);
  for (int k = 0; k < e.ext.total; ++k)
    if (k < static_cast<int>(e.ext.restr.size()) && e.ext.restr[k] != 0)
      return "extension element " + std::to_string(k) + " does not restrict to the unique atom";
  return std::nullopt;
}

std::optional<std::string> rule_glue_formation(const GlueData& g) {
  if (!g.base.well_formed() || !is_open_modal(g.base))
    return "base is not open-modal: " + g.base.str();
  if (g.fam.size() != static_cast<size_t>(g.base.total)) return "family size does not match base";
  int total = 0;
  for (size_t i = 0; i < g.fam.size(); ++i) {
    if (!g.fam[i].well_formed() || !is_closed_modal(g.fam[i]))
      return "fiber " + std::to_string(i) + " is not closed-modal: " + g.fam[i].str();
    total += g.fam[i].total;
  }
  if (!g.glue.well_formed()) return "glue carrier malformed: " + g.glue.str();
  if (g.glue.total != total)
    return "glue carrier has " + std::to_string(g.glue.total) + " elements, fibers sum to " +
           std::to_string(total);
  return std::nullopt;
}

std::optional<std::string> rule_glue_intro(const GlueData& g) {
  if (g.intro.size() != g.fam.size()) return "intro table has wrong arity";
  std::vector<int> seen(std::max(g.glue.total, 0), 0);
  for (size_t i = 0; i < g.intro.size(); ++i) {
    if (g.intro[i].size() != static_cast<size_t>(g.fam[i].total))
      return "intro table row " + std::to_string(i) + " has wrong width";
    for (int b = 0; b < static_cast<int>(g.intro[i].size()); ++b) {
      int e = g.intro[i][b];
      if (e < 0 || e >= g.glue.total)
        return "intro(" + std::to_string(i) + "," + std::to_string(b) + ") lands outside the glue carrier";
      if (seen[e]++)
        return "intro is not injective at element " + std::to_string(e);
    }
  }
  for (int e = 0; e < g.glue.total; ++e)
    if (!seen[e]) return "glue element " + std::to_string(e) + " is not an intro image";
  return std::nullopt;
}

std::optional<std::string> rule_glue_elim_open(const GlueData& g) {
  for (int e = 0; e < g.glue.total; ++e) {
    int a = proj_open(g, e);
    if (a < 0 || a >= g.base.total)
      return "open projection of element " + std::to_string(e) + " is " + std::to_string(a);
  }
  return std::nullopt;
}

std::optional<std::string> rule_glue_elim_closed(const GlueData& g) {
  for (int e = 0; e < g.glue.total; ++e) {
    int a = proj_open(g, e);
    if (a < 0 || a >= static_cast<int>(g.fam.size())) continue;  // elim_open's complaint
    int b = proj_closed(g, e);
    if (b < 0 || b >= g.fam[a].total)
      return "closed projection of element " + std::to_string(e) + " is " + std::to_string(b) +
             ", outside fiber " + std::to_string(a);
  }
  return std::nullopt;
}

std::optional<std::string> rule_glue_compute_open(const GlueData& g) {
  for (size_t i = 0; i < g.intro.size(); ++i)
    for (int b = 0; b < static_cast<int>(g.intro[i].size()); ++b)
      if (proj_open(g, g.intro[i][b]) != static_cast<int>(i))
        return "open projection of intro(" + std::to_string(i) + "," + std::to_string(b) +
               ") is " + std::to_string(proj_open(g, g.intro[i][b]));
  return std::nullopt;
}

std::optional<std::string> rule_glue_compute_closed(const GlueData& g) {
  for (size_t i = 0; i < g.intro.size(); ++i)
    for (int b = 0; b < static_cast<int>(g.intro[i].size()); ++b)
      if (proj_closed(g, g.intro[i][b]) != b)
        return "closed projection of intro(" + std::to_string(i) + "," + std::to_string(b) +
               ") is " + std::to_string(proj_closed(g, g.intro[i][b]));
  return std::nullopt;
}

std::optional<std::string> rule_glue_unique(const GlueData& g) {
  for (int e = 0; e < g.glue.total; ++e) {
    int a = proj_open(g, e);
    int b = proj_closed(g, e);
    if (a < 0 || a >= static_cast<int>(g.intro.size()) || b < 0 ||
        b >= static_cast<int>(g.intro[a].size()))
      return "element " + std::to_string(e) + " has no projections to rebuild from";
    if (g.intro[a][b] != e)
      return "element " + std::to_string(e) + " rebuilds to " + std::to_string(g.intro[a][b]);
  }
  return std::nullopt;
}

std::optional<std::string> rule_glue_type_eq_syn(const GlueData& g) {
  if (g.glue.syn != g.base.syn)
    return "glue syntactic carrier has " + std::to_string(g.glue.syn) + " atoms, base has " +
           std::to_string(g.base.syn);
  return std::nullopt;
}

std::optional<std::string> rule_glue_term_eq_syn(const GlueData& g) {
  for (int e = 0; e < g.glue.total; ++e) {
    int a = proj_open(g, e);
    if (a < 0 || a >= g.base.total) continue;
    if (e >= static_cast<int>(g.glue.restr.size()) || g.glue.restr[e] != g.base.restr[a])
      return "element " + std::to_string(e) + " restricts differently from its open projection";
  }
  return std::nullopt;
}

bool LawReport::all_pass() const {
  for (const auto& r : rules)
    if (!r.pass) return false;
  return true;
}

const RuleVerdict& LawReport::by_rule(const std::string& name) const {
  for (const auto& r : rules)
    if (r.rule == name) return r;
  throw Error(Errc::usage_error, "no such rule in report: " + name);
}

std::vector<Obj> enumerate_objs(int size_bound) {
  std::vector<Obj> out;
  for (int syn = 0; syn <= size_bound; ++syn) {
    for (int total = 0; total <= size_bound; ++total) {
      if (total > 0 && syn == 0) continue;
      std::vector<int> restr(total, 0);
      do {
        out.push_back(Obj{total, syn, restr});
      } while (next_odometer(restr, syn));
    }
  }
  return out;
}

std::vector<Mor> enumerate_mors(const Obj& a, const Obj& b) {
  std::vector<Mor> out;
  if ((a.total > 0 && b.total == 0) || (a.syn > 0 && b.syn == 0)) return out;
  std::vector<int> on_total(a.total, 0);
  do {
    std::vector<int> on_syn(a.syn, 0);
    do {
      Mor m{a, b, on_total, on_syn};
      if (m.well_formed()) out.push_back(std::move(m));
    } while (next_odometer(on_syn, b.syn));
  } while (next_odometer(on_total, b.total));
  return out;
}

namespace {

struct RuleAcc {
  RuleVerdict v;
  explicit RuleAcc(std::string name, std::string note = "") {
    v.rule = std::move(name);
    v.pass = true;
    v.note = std::move(note);
  }
  template <typename F>
  void run(F&& f, const std::string& where) {
    if (!v.pass) return;  // keep the first counterexample
    ++v.checked;
    std::optional<std::string> bad = f();
    if (bad) {
      v.pass = false;
      v.counterexample = where + ": " + *bad;
    }
  }
  void expect(bool ok, const std::string& where) {
    run([&]() -> std::optional<std::string> {
      if (ok) return std::nullopt;
      return "law violated";
    }, where);
  }
};

// every family assignment of closed-modal fibers to base elements
std::vector<std::vector<Obj>> enumerate_families(int slots, const std::vector<Obj>& fibers) {
  std::vector<std::vector<Obj>> out;
  std::vector<int> idx(slots, 0);
  do {
    std::vector<Obj> fam;
    fam.reserve(slots);
    for (int i : idx) fam.push_back(fibers[i]);
    out.push_back(std::move(fam));
  } while (next_odometer(idx, static_cast<int>(fibers.size())));
  return out;
}

}  // namespace

LawReport check_laws(int size_bound) {
  if (size_bound < 1) throw Error(Errc::usage_error, "size bound must be at least 1");
  LawReport report;
  report.size_bound = size_bound;
  std::vector<Obj> objs = enumerate_objs(size_bound);

  RuleAcc ext_formation("ext_formation");
  RuleAcc ext_intro("ext_intro");
  RuleAcc ext_elim("ext_elim");
  RuleAcc ext_compute("ext_compute");
  for (const Obj& x : objs) {
    for (int p = 0; p < x.syn; ++p) {
      ExtData e = make_ext(x, p);
      std::string where = x.str() + " at " + std::to_string(p);
      ext_formation.run([&] { return rule_ext_formation(e); }, where);
      ext_intro.run([&] { return rule_ext_intro(e); }, where);
      ext_elim.run([&] { return rule_ext_elim(e); }, where);
      ext_compute.run([&] { return rule_ext_compute(e); }, where);
    }
  }

  RuleAcc glue_formation("glue_formation",
                         "side conditions: open-modal base, closed-modal fibers");
  RuleAcc glue_intro_r("glue_intro");
  RuleAcc glue_elim_open("glue_elim_open");
  RuleAcc glue_elim_closed("glue_elim_closed");
  RuleAcc glue_compute_open("glue_compute_open");
  RuleAcc glue_compute_closed("glue_compute_closed");
  RuleAcc glue_unique("glue_unique");
  RuleAcc glue_type_eq("glue_type_eq_syn");
  RuleAcc glue_term_eq("glue_term_eq_syn");
  std::vector<Obj> closed_fibers;
  for (const Obj& x : objs)
    if (is_closed_modal(x)) closed_fibers.push_back(x);
  for (const Obj& base : objs) {
    if (!is_open_modal(base)) continue;
    for (const auto& fam : enumerate_families(base.total, closed_fibers)) {
      GlueData g = make_glue(base, fam);
      std::string where = "base " + base.str() + " with " + std::to_string(fam.size()) + " fibers";
      glue_formation.run([&] { return rule_glue_formation(g); }, where);
      glue_intro_r.run([&] { return rule_glue_intro(g); }, where);
      glue_elim_open.run([&] { return rule_glue_elim_open(g); }, where);
      glue_elim_closed.run([&] { return rule_glue_elim_closed(g); }, where);
      glue_compute_open.run([&] { return rule_glue_compute_open(g); }, where);
      glue_compute_closed.run([&] { return rule_glue_compute_closed(g); }, where);
      glue_unique.run([&] { return rule_glue_unique(g); }, where);
      glue_type_eq.run([&] { return rule_glue_type_eq_syn(g); }, where);
      glue_term_eq.run([&] { return rule_glue_term_eq_syn(g); }, where);
    }
  }

  RuleAcc open_idem("open_idempotent");
  RuleAcc open_modal_of_open("open_modal_of_open");
  RuleAcc open_unit_iso("open_unit_iso_on_modal");
  RuleAcc closed_modal_of_closed("closed_modal_of_closed");
  RuleAcc contractible("open_closed_contractible");
  RuleAcc star_collapse("closed_star_collapse",
                        "the point constructor has an empty total-stage domain in this model, so its "
                        "equation is vacuous there; at the syntactic stage every element collapses to "
                        "the unique atom, which is checked");
  for (const Obj& x : objs) {
    open_idem.expect(open_mod(open_mod(x)) == open_mod(x), x.str());
    open_modal_of_open.expect(is_open_modal(open_mod(x)), x.str());
    if (is_open_modal(x)) {
      Mor eta = open_eta(x);
      bool iso = eta.well_formed();
      if (iso) {
        std::vector<bool> hit(eta.dst.total, false);
        for (int v : eta.on_total) {
          if (hit[v]) iso = false;
          hit[v] = true;
        }
        for (bool h : hit) iso = iso && h;
      }
      open_unit_iso.expect(iso, x.str());
    }
    closed_modal_of_closed.expect(is_closed_modal(closed_mod(x)), x.str());
    contractible.expect(open_mod(closed_mod(x)) == terminal_obj(), x.str());
    Mor eta = closed_eta(x);
    bool collapse = eta.well_formed();
    for (int v : eta.on_syn) collapse = collapse && v == 0;
    star_collapse.expect(collapse, x.str());
  }

  RuleAcc open_unit_nat("open_unit_natural");
  RuleAcc closed_unit_nat("closed_unit_natural");
  RuleAcc subterminal("syn_subterminal");
  for (const Obj& x : objs) {
    std::vector<Mor> to_syn = enumerate_mors(x, syn_obj());
    subterminal.expect(to_syn.size() <= 1, x.str());
    for (const Obj& y : objs) {
      for (const Mor& f : enumerate_mors(x, y)) {
        open_unit_nat.expect(compose(open_action(f), open_eta(x)) == compose(open_eta(y), f),
                             f.str());
        closed_unit_nat.expect(compose(closed_action(f), closed_eta(x)) == compose(closed_eta(y), f),
                               f.str());
      }
    }
  }

  RuleAcc closed_elim_u("closed_elim_unique");
  for (const Obj& x : objs) {
    for (const Obj& y : objs) {
      if (!is_closed_modal(y)) continue;
      Obj cx = closed_mod(x);
      std::vector<Mor> candidates = enumerate_mors(cx, y);
      Mor eta = closed_eta(x);
      for (const Mor& h : enumerate_mors(x, y)) {
        int matching = 0;
        for (const Mor& cand : candidates)
          if (compose(cand, eta) == h) ++matching;
        closed_elim_u.expect(matching == 1,
                             "map " + h.str() + " has " + std::to_string(matching) + " factorizations");
      }
    }
  }

  report.rules = {ext_formation.v,
                  ext_intro.v,
                  ext_elim.v,
                  ext_compute.v,
                  glue_formation.v,
                  glue_intro_r.v,
                  glue_elim_open.v,
                  glue_elim_closed.v,
                  glue_compute_open.v,
                  glue_compute_closed.v,
                  glue_unique.v,
                  glue_type_eq.v,
                  glue_term_eq.v,
                  open_idem.v,
                  open_modal_of_open.v,
                  open_unit_iso.v,
                  open_unit_nat.v,
                  closed_modal_of_closed.v,
                  closed_unit_nat.v,
                  closed_elim_u.v,
                  star_collapse.v,
                  contractible.v,
                  subterminal.v};
  return report;
}

}  // namespace stc::phase
