// End-to-end gate. Each criterion prints exactly one verdict line; the
// process exits nonzero when any fails.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "stc/calf.hpp"
#include "stc/check.hpp"
#include "stc/driver.hpp"
#include "stc/model.hpp"
#include "stc/phase.hpp"
#include "stc/sexpr.hpp"

using namespace stc;
namespace fs = std::filesystem;

namespace {

struct Gate {
  int failures = 0;

  void report(const std::string& name, bool pass, const std::string& detail, double secs) {
    std::printf("[%s] %s (%s, %.1fs)\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str(), secs);
    if (!pass) ++failures;
  }
};

double secs_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream buf;
  buf << f.rdbuf();
  std::string text = buf.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == ' ')) text.pop_back();
  return text;
}

Term pibb() { return Term::pi(Term::boolean(), Term::boolean()); }

// every closed boolean must extract to the tag the rewriting evaluator
// computes, with a replaying witness and a clean tracking audit
void criterion_canonicity(Gate& gate) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string why;
  int corpus_n = 0, large = 0, higher = 0;

  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(STC_CORPUS_DIR))
    if (e.path().extension() == ".stc") paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  for (const fs::path& p : paths) {
    std::string text = slurp(p);
    Term t = parse_term(text);
    if (print_term(t) != text) {
      ok = false;
      why = p.filename().string() + " is not in canonical layout";
      break;
    }
    CanonResult r = extract_canonical(t);
    auto expect = oracle::rw_eval_bool(t);
    bool agree = expect.has_value() && (r.tag == CanonTag::True) == *expect;
    if (!agree || !r.witness.replay() || !r.tracking_ok) {
      ok = false;
      why = p.filename().string() + " failed extraction";
      break;
    }
    ++corpus_n;
    if (p.filename().string().find("le_") != std::string::npos) ++large;
    if (p.filename().string().find("ho_") != std::string::npos) ++higher;
  }
  if (ok && (corpus_n < 50 || large < 10 || higher < 10)) {
    ok = false;
    why = "corpus too thin";
  }

  gen::Rng rng(0xACCE9701ULL);
  int generated = 0;
  for (int i = 0; ok && i < 1200; ++i) {
    Term t = gen::closed_bool(rng, 1 + rng.pick(6));
    CanonResult r = extract_canonical(t);
    auto expect = oracle::rw_eval_bool(t);
    bool agree = expect.has_value() && (r.tag == CanonTag::True) == *expect;
    if (!agree || !r.witness.replay() || !r.tracking_ok) {
      ok = false;
      why = "generated term " + debug_str(t);
      break;
    }
    ++generated;
  }

  double secs = secs_since(t0);
  ok = ok && secs < 30.0;
  std::string detail = ok ? std::to_string(corpus_n) + " corpus files (" + std::to_string(large) +
                                " large-elim, " + std::to_string(higher) + " higher-order) + " +
                                std::to_string(generated) + " generated, all tags match the oracle"
                          : why;
  gate.report("canonical boolean extraction with replayable witnesses", ok, detail, secs);
}

void criterion_tracking(Gate& gate) {
  auto t0 = std::chrono::steady_clock::now();
  gen::Rng rng(0xACCE9702ULL);
  int n = 1000, tracked = 0;
  std::string why;
  for (int i = 0; i < n; ++i) {
    Term t = gen::closed_bool(rng, 1 + rng.pick(6));
    TypedTerm td = check_closed_bool(t);
    if (verify_tracking(td)) {
      ++tracked;
    } else if (why.empty()) {
      why = debug_str(t);
    }
  }
  bool ok = tracked == n;
  gate.report("interpretation audit: every node tracks a convertible term", ok,
              ok ? std::to_string(tracked) + "/" + std::to_string(n) + " audits clean"
                 : "first failure on " + why,
              secs_since(t0));
}

void criterion_laws(Gate& gate) {
  using namespace stc::phase;
  auto t0 = std::chrono::steady_clock::now();

  LawReport rep = check_laws(3);
  bool ok = rep.rules.size() == 23 && rep.all_pass();
  std::string why = ok ? "" : "law sweep failed";

  auto base22 = [] { return Obj{2, 2, {0, 1}}; };
  auto fib2 = [] { return Obj{2, 1, {0, 0}}; };
  auto fib1 = [] { return Obj{1, 1, {0}}; };
  auto glue21 = [&] { return make_glue(base22(), {fib2(), fib1()}); };
  auto glue11 = [&] { return make_glue(base22(), {fib1(), fib1()}); };

  struct Mut {
    const char* rule;
    std::function<bool()> caught;
  };
  std::vector<Mut> muts = {
      {"ext_formation",
       [&] {
         ExtData e = make_ext(base22(), 0);
         e.embed.on_total = {1};
         return rule_ext_formation(e).has_value();
       }},
      {"ext_intro",
       [&] {
         ExtData e = make_ext(base22(), 0);
         e.ext.total = 0;
         e.ext.restr.clear();
         e.embed.on_total.clear();
         return rule_ext_intro(e).has_value();
       }},
      {"ext_elim",
       [&] {
         ExtData e = make_ext(Obj{2, 1, {0, 0}}, 0);
         e.ext.total = 3;
         e.ext.restr = {0, 0, 0};
         e.embed.src = e.ext;
         e.embed.on_total = {0, 1, 0};
         return rule_ext_elim(e).has_value();
       }},
      {"ext_compute",
       [&] {
         ExtData e = make_ext(base22(), 0);
         e.embed.on_syn = {1};
         return rule_ext_compute(e).has_value();
       }},
      {"glue_formation",
       [&] {
         GlueData g = glue21();
         g.base.restr = {0, 0};
         return rule_glue_formation(g).has_value();
       }},
      {"glue_intro",
       [&] {
         GlueData g = glue21();
         g.intro[0] = {0, 0};
         return rule_glue_intro(g).has_value();
       }},
      {"glue_elim_open",
       [&] {
         GlueData g = glue21();
         g.offsets = {3, 5};
         return rule_glue_elim_open(g).has_value();
       }},
      {"glue_elim_closed",
       [&] {
         GlueData g = glue21();
         g.offsets = {0, 1};
         return rule_glue_elim_closed(g).has_value();
       }},
      {"glue_compute_open",
       [&] {
         GlueData g = glue11();
         g.intro[0] = {1};
         g.intro[1] = {0};
         return rule_glue_compute_open(g).has_value();
       }},
      {"glue_compute_closed",
       [&] {
         GlueData g = glue21();
         g.intro[0] = {1, 0};
         return rule_glue_compute_closed(g).has_value();
       }},
      {"glue_unique",
       [&] {
         GlueData g = glue21();
         g.intro[0] = {0, 0};
         return rule_glue_unique(g).has_value();
       }},
      {"glue_type_eq_syn",
       [&] {
         GlueData g = glue21();
         g.glue.syn = g.base.syn + 1;
         return rule_glue_type_eq_syn(g).has_value();
       }},
      {"glue_term_eq_syn",
       [&] {
         GlueData g = glue11();
         g.glue.restr = {1, 0};
         return rule_glue_term_eq_syn(g).has_value();
       }},
  };
  int caught = 0;
  for (const Mut& m : muts) {
    if (m.caught()) {
      ++caught;
    } else if (ok) {
      ok = false;
      why = std::string("mutation not caught by ") + m.rule;
    }
  }

  double secs = secs_since(t0);
  ok = ok && caught == 13 && secs < 10.0;
  gate.report("phase-separation laws hold and targeted corruptions are caught", ok,
              ok ? "23/23 rules pass at size bound 3, 13/13 mutations caught" : why, secs);
}

void criterion_equations(Gate& gate) {
  auto t0 = std::chrono::steady_clock::now();
  const EquationTable& tab = EquationTable::signature();
  const int kPer = 1000;
  int b1 = 0, b2 = 0, beta = 0, eta = 0;
  std::string why;

  auto attest = [&](const Term& ty, const Term& l, const Term& r) {
    ConvCert cert{ty, l, r, "generated instance"};
    return convertible(Context{}, ty, l, r) && cert.replay();
  };

  gen::Rng rng(0xACCE9704ULL);
  for (int i = 0; i < kPer; ++i) {
    bool large = rng.coin(0.3);
    Term motive = large ? Term::ifelim(Term::tp(), Term::var(0), Term::boolean(), shift(pibb(), 0, 1))
                        : Term::boolean();
    gen::TypedGen g(rng);
    Term tb = g.term(Term::boolean(), rng.pick(3));
    Term fb = large ? g.term(pibb(), rng.pick(3)) : g.term(Term::boolean(), rng.pick(3));
    auto [l1, r1] = tab.by_name("ifelim_beta1").instantiate({motive, tb, fb});
    if (attest(subst(motive, 0, Term::tru()), l1, r1)) ++b1;
    auto [l2, r2] = tab.by_name("ifelim_beta2").instantiate({motive, tb, fb});
    if (attest(subst(motive, 0, Term::fls()), l2, r2)) ++b2;

    gen::TypedGen gb(rng);
    gb.ctx.push_back(Term::boolean());
    Term body = gb.term(Term::boolean(), rng.pick(4));
    gb.ctx.pop_back();
    Term arg = gb.term(Term::boolean(), rng.pick(3));
    auto [l3, r3] = tab.by_name("pitp_beta").instantiate({body, arg});
    if (attest(Term::boolean(), l3, r3)) ++beta;

    gen::TypedGen gf(rng);
    Term f = gf.term(pibb(), 1 + rng.pick(3));
    auto [l4, r4] = tab.by_name("pitp_eta").instantiate({f});
    if (attest(pibb(), l4, r4)) ++eta;
  }

  bool ok = b1 == kPer && b2 == kPer && beta == kPer && eta == kPer;
  std::ostringstream detail;
  if (ok) {
    detail << "4 equations x " << kPer << " instances, every witness replays";
  } else {
    detail << "ifelim_beta1 " << b1 << ", ifelim_beta2 " << b2 << ", pitp_beta " << beta
           << ", pitp_eta " << eta << " of " << kPer;
  }
  gate.report("definitional equations validated on random instances", ok, detail.str(),
              secs_since(t0));
}

void criterion_costs(Gate& gate) {
  using calf::CbpvTerm;
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string why;

  int corpus_n = 0;
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(STC_CORPUS_DIR))
    if (e.path().extension() == ".calf") paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  for (const fs::path& p : paths) {
    std::string text = slurp(p);
    CbpvTerm t = parse_calf(text);
    calf::CostResult r = calf::extract_cost(t);
    if (print_calf(t) != text || !r.top_ok || !r.beh_ok) {
      ok = false;
      why = p.filename().string() + " failed cost extraction";
      break;
    }
    ++corpus_n;
  }

  gen::Rng rng(0xACCE9705ULL);
  int agreed = 0;
  for (int i = 0; ok && i < 600; ++i) {
    CbpvTerm t = gen::ct::closed_fbool(rng, 1 + rng.pick(6));
    calf::CostResult r = calf::extract_cost(t);
    calf::EvalResult m = calf::cbpv_eval(t);
    bool tag_ok = m.terminal.tag() == CbpvTerm::Tag::Ret &&
                  (r.tag == CanonTag::True) == (m.terminal.kid(0).tag() == CbpvTerm::Tag::True);
    if (r.cost != m.cost || !tag_ok || !r.top_ok || !r.beh_ok) {
      ok = false;
      why = "cost disagreement on a generated program";
      break;
    }
    // inserting k steps at the root costs exactly k more
    uint64_t k = 1 + rng.pick(4);
    CbpvTerm wrapped = t;
    for (uint64_t j = 0; j < k; ++j) wrapped = CbpvTerm::step(wrapped);
    calf::CostResult rw = calf::extract_cost(wrapped);
    if (rw.cost != r.cost + k || !rw.beh_ok || !rw.beh_wit.replay()) {
      ok = false;
      why = "step insertion changed more than the cost";
      break;
    }
    ++agreed;
  }

  gate.report("cost extraction agrees exactly with the machine", ok,
              ok ? std::to_string(corpus_n) + " corpus programs + " + std::to_string(agreed) +
                       " generated, step insertion adds exactly k"
                 : why,
              secs_since(t0));
}

int run_installed(const std::string& args) {
  std::string cmd = std::string(STC_CLI_BIN) + " " + args + " >/dev/null 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

void criterion_cli(Gate& gate) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string why;

  gen::Rng rng(0xACCE9706ULL);
  const char* cmds[] = {"check", "canon", "calf"};
  int survived = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string input = gen::fuzz_input(rng);
    cli::RunResult r = cli::run_capture({cmds[rng.pick(3)], "-e", input});
    bool sane = (r.code == 0 || r.code == 1 || r.code == 2) &&
                r.err.find("internal error") == std::string::npos;
    if (!sane) {
      ok = false;
      why = "fuzz input escalated: " + input;
      break;
    }
    ++survived;
  }
  for (int i = 0; ok && i < 50; ++i) {
    cli::RunResult r = cli::run_capture({"laws", "--size", std::to_string(rng.pick(8))});
    if (r.code != 0 && r.code != 2) {
      ok = false;
      why = "laws exit code out of contract";
    }
  }
  for (int i = 0; ok && i < 50; ++i) {
    cli::RunResult r = cli::run_capture({"corpus", gen::fuzz_input(rng)});
    if (r.code != 0 && r.code != 1 && r.code != 2) {
      ok = false;
      why = "corpus exit code out of contract";
    }
  }

  // spot-check the installed binary end to end
  struct Probe {
    std::string args;
    int want;
  };
  Probe probes[] = {
      {"--version", 0},
      {"check -e '(app (lam x x) true)'", 0},
      {"canon -e '(if (x bool) true false true)'", 0},
      {"check -e '(app true true)'", 1},
      {"check -e '((('", 2},
      {"check", 2},
  };
  for (const Probe& p : probes) {
    int got = run_installed(p.args);
    if (got != p.want) {
      ok = false;
      why = "binary '" + p.args + "' exited " + std::to_string(got) + ", want " +
            std::to_string(p.want);
      break;
    }
  }

  gate.report("the command line survives fuzzing and honors its exit codes", ok,
              ok ? std::to_string(survived) + " fuzz inputs + 6 binary probes" : why,
              secs_since(t0));
}

}  // namespace

int main() {
  Gate gate;
  criterion_canonicity(gate);
  criterion_tracking(gate);
  criterion_laws(gate);
  criterion_equations(gate);
  criterion_costs(gate);
  criterion_cli(gate);
  if (gate.failures == 0) {
    std::printf("all 6 criteria passed\n");
  } else {
    std::printf("%d of 6 criteria FAILED\n", gate.failures);
  }
  return gate.failures;
}
