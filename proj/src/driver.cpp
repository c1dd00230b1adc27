#include "stc/driver.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "stc/check.hpp"
#include "stc/model.hpp"
#include "stc/phase.hpp"
#include "stc/sexpr.hpp"

namespace stc::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

#ifndef STC_VERSION
#define STC_VERSION "0.1.0"
#endif

constexpr const char* kSchema = "stc.report/1";

struct Input {
  std::string label;  // file path or "<expr>"
  std::string text;
};

std::vector<Input> gather_inputs(const std::vector<std::string>& files,
                                 const std::vector<std::string>& exprs) {
  std::vector<Input> inputs;
  for (const std::string& f : files) {
    if (!std::filesystem::is_regular_file(f)) throw Error(Errc::io_error, "not a readable file: " + f);
    std::ifstream in(f);
    if (!in) throw Error(Errc::io_error, "cannot open " + f);
    std::ostringstream buf;
    buf << in.rdbuf();
    inputs.push_back({f, buf.str()});
  }
  for (const std::string& e : exprs) inputs.push_back({"<expr>", e});
  if (inputs.empty()) throw Error(Errc::usage_error, "no inputs: pass files or -e expressions");
  return inputs;
}

uint64_t fuel_limit(uint64_t flag_value, bool flag_set) {
  if (flag_set) return flag_value;
  if (const char* env = std::getenv("STC_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw Error(Errc::usage_error, "STC_FUEL must be a positive integer");
  }
  return Fuel::kDefault;
}

ordered_json error_json(const Error& e) {
  ordered_json j;
  j["code"] = errc_name(e.code());
  j["message"] = e.what();
  for (const auto& [k, v] : e.details()) j[k] = v;
  return j;
}

ordered_json report_skeleton(const std::string& command) {
  ordered_json j;
  j["schema"] = kSchema;
  j["tool"] = {{"name", "stc"}, {"version", STC_VERSION}};
  j["command"] = command;
  return j;
}

// outcome of one input under any subcommand
struct ItemResult {
  ordered_json json;
  bool ok = false;
  bool usage = false;  // parse/io class failure
  std::string human;
};

ItemResult item_failure(const std::string& label, const Error& e) {
  ItemResult r;
  r.ok = false;
  r.usage = errc_is_usage(e.code());
  r.json["input"] = label;
  r.json["ok"] = false;
  r.json["error"] = error_json(e);
  r.human = label + ": error [" + errc_name(e.code()) + "] " + e.what();
  return r;
}

ItemResult run_check(const Input& in, uint64_t fuel, bool want_trace) {
  ItemResult r;
  r.json["input"] = in.label;
  try {
    Term t = parse_term(in.text);
    Fuel f(fuel);
    std::string type_str;
    try {
      Term ty = infer(Context{}, t, f);
      type_str = print_term(normalize_type(Context{}, ty, f));
    } catch (const Error& e) {
      if (e.code() != Errc::cannot_infer) throw;
      // unannotated lambdas do not synthesize; the pipeline checks at bool
      check_closed_bool(t, f);
      type_str = "bool";
    }
    r.ok = true;
    r.json["ok"] = true;
    r.json["term"] = print_term(t);
    r.json["type"] = type_str;
    if (want_trace) {
      TraceSink trace;
      Fuel f2(fuel);
      Term nf = normalize(Context{}, parse_term(type_str), t, f2, &trace);
      r.json["normal_form"] = print_term(nf);
      r.json["trace"] = trace;
    }
    r.human = in.label + ": ok, type " + type_str;
  } catch (const Error& e) {
    return item_failure(in.label, e);
  }
  return r;
}

ItemResult run_canon(const Input& in, uint64_t fuel, bool want_trace) {
  ItemResult r;
  r.json["input"] = in.label;
  try {
    Term t = parse_term(in.text);
    ModelOptions opts;
    opts.fuel_limit = fuel;
    opts.trace = want_trace;
    CanonResult res = extract_canonical(t, opts);
    Fuel f(fuel);
    bool witness_ok = res.witness.replay(f);
    r.ok = witness_ok && res.tracking_ok;
    r.json["ok"] = r.ok;
    r.json["term"] = print_term(res.term);
    r.json["tag"] = canon_name(res.tag);
    ordered_json wtrace = ordered_json::array();
    wtrace.push_back("convertible at " + print_term(res.witness.type) + ": " +
                     print_term(res.witness.lhs) + " == " + print_term(res.witness.rhs));
    for (const std::string& line : res.trace) wtrace.push_back(line);
    r.json["witness_trace"] = wtrace;
    r.json["tracking_ok"] = res.tracking_ok;
    r.json["steps"] = res.steps;
    r.human = in.label + ": " + canon_name(res.tag) + " (witness " + (witness_ok ? "ok" : "FAILED") +
              ", tracking " + (res.tracking_ok ? "ok" : "FAILED") + ", " + std::to_string(res.steps) +
              " steps)";
  } catch (const Error& e) {
    return item_failure(in.label, e);
  }
  return r;
}

ItemResult run_calf(const Input& in, uint64_t fuel, bool want_trace) {
  (void)want_trace;
  ItemResult r;
  r.json["input"] = in.label;
  try {
    calf::CbpvTerm t = parse_calf(in.text);
    calf::CostResult res = calf::extract_cost(t, fuel);
    r.ok = res.top_ok && res.beh_ok;
    r.json["ok"] = r.ok;
    r.json["term"] = print_calf(res.term);
    r.json["cost"] = res.cost;
    r.json["tag"] = canon_name(res.tag);
    r.json["beh_ok"] = res.beh_ok;
    r.json["top_ok"] = res.top_ok;
    r.human = in.label + ": cost " + std::to_string(res.cost) + ", returns " + canon_name(res.tag) +
              " (top " + (res.top_ok ? "ok" : "FAILED") + ", beh " + (res.beh_ok ? "ok" : "FAILED") +
              ")";
  } catch (const Error& e) {
    return item_failure(in.label, e);
  }
  return r;
}

int finish_report(ordered_json& report, std::vector<ItemResult>& items, bool json_out,
                  std::ostream& out) {
  size_t passed = 0;
  bool usage_failure = false;
  ordered_json jitems = ordered_json::array();
  for (ItemResult& it : items) {
    passed += it.ok ? 1 : 0;
    usage_failure = usage_failure || it.usage;
    jitems.push_back(std::move(it.json));
  }
  report["items"] = std::move(jitems);
  report["summary"] = {{"total", items.size()},
                       {"passed", passed},
                       {"failed", items.size() - passed}};
  if (json_out) {
    out << report.dump(2) << '\n';
  } else {
    for (const ItemResult& it : items) out << it.human << '\n';
    if (items.size() > 1)
      out << passed << '/' << items.size() << " inputs passed\n";
  }
  if (passed == items.size()) return 0;
  return usage_failure ? 2 : 1;
}

int cmd_over_inputs(const std::string& name, const std::vector<std::string>& files,
                    const std::vector<std::string>& exprs, uint64_t fuel, bool json_out,
                    bool want_trace, std::ostream& out) {
  std::vector<Input> inputs = gather_inputs(files, exprs);
  std::vector<ItemResult> items;
  for (const Input& in : inputs) {
    if (name == "check") items.push_back(run_check(in, fuel, want_trace));
    if (name == "canon") items.push_back(run_canon(in, fuel, want_trace));
    if (name == "calf") items.push_back(run_calf(in, fuel, want_trace));
  }
  ordered_json report = report_skeleton(name);
  return finish_report(report, items, json_out, out);
}

int cmd_laws(int size, bool json_out, std::ostream& out) {
  phase::LawReport rep = phase::check_laws(size);
  ordered_json report = report_skeleton("laws");
  report["size_bound"] = rep.size_bound;
  ordered_json rules = ordered_json::array();
  for (const phase::RuleVerdict& v : rep.rules) {
    ordered_json j;
    j["rule"] = v.rule;
    j["pass"] = v.pass;
    j["checked"] = v.checked;
    if (!v.counterexample.empty()) j["counterexample"] = v.counterexample;
    if (!v.note.empty()) j["note"] = v.note;
    rules.push_back(std::move(j));
  }
  report["rules"] = std::move(rules);
  report["all_pass"] = rep.all_pass();
  if (json_out) {
    out << report.dump(2) << '\n';
  } else {
    for (const phase::RuleVerdict& v : rep.rules) {
      out << (v.pass ? "[PASS] " : "[FAIL] ") << v.rule << " (" << v.checked << " instances)";
      if (!v.counterexample.empty()) out << "  counterexample: " << v.counterexample;
      out << '\n';
    }
    out << (rep.all_pass() ? "all laws hold" : "LAW VIOLATION") << " at size bound " << size << '\n';
  }
  return rep.all_pass() ? 0 : 1;
}

int cmd_corpus(const std::string& dir, uint64_t fuel, bool json_out, unsigned jobs,
               std::ostream& out) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error(Errc::io_error, dir + " is not a directory");
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    if (ext == ".stc" || ext == ".calf") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw Error(Errc::io_error, "no .stc or .calf files in " + dir);

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<ItemResult> items(paths.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= paths.size()) return;
      const fs::path& p = paths[i];
      Input in;
      in.label = p.string();
      try {
        std::ifstream f(p);
        if (!f) throw Error(Errc::io_error, "cannot open " + p.string());
        std::ostringstream buf;
        buf << f.rdbuf();
        in.text = buf.str();
        items[i] = p.extension() == ".stc" ? run_canon(in, fuel, false) : run_calf(in, fuel, false);
      } catch (const Error& e) {
        items[i] = item_failure(in.label, e);
      } catch (const std::exception& e) {
        items[i] = item_failure(in.label, Error(Errc::io_error, std::string("internal: ") + e.what()));
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i + 1 < jobs; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();

  ordered_json report = report_skeleton("corpus");
  report["directory"] = dir;
  report["jobs"] = jobs;
  return finish_report(report, items, json_out, out);
}

}  // namespace

const char* version() { return STC_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"canonicity engine for a small dependent type theory"};
  app.set_version_flag("--version", STC_VERSION);

  struct Common {
    std::vector<std::string> files;
    std::vector<std::string> exprs;
    uint64_t fuel = Fuel::kDefault;
    bool json = false;
    bool trace = false;
  };

  auto add_common = [](CLI::App* cmd, Common& c) {
    cmd->add_option("files", c.files, "input files");
    cmd->add_option("-e,--expr", c.exprs, "inline expression");
    cmd->add_option("--fuel", c.fuel, "evaluation step budget");
    cmd->add_flag("--json", c.json, "machine-readable report");
    cmd->add_flag("--trace", c.trace, "include rule-firing traces");
  };

  Common check_c, canon_c, calf_c;
  CLI::App* check_cmd = app.add_subcommand("check", "typecheck closed terms");
  add_common(check_cmd, check_c);
  CLI::App* canon_cmd = app.add_subcommand("canon", "extract canonical booleans with witnesses");
  add_common(canon_cmd, canon_c);
  CLI::App* calf_cmd = app.add_subcommand("calf", "extract costs of boolean computations");
  add_common(calf_cmd, calf_c);

  int laws_size = 3;
  bool laws_json = false;
  CLI::App* laws_cmd = app.add_subcommand("laws", "check the phase-distinction laws exhaustively");
  laws_cmd->add_option("--size", laws_size, "carrier size bound")->check(CLI::Range(1, 3));
  laws_cmd->add_flag("--json", laws_json, "machine-readable report");

  std::string corpus_dir;
  uint64_t corpus_fuel = Fuel::kDefault;
  bool corpus_json = false;
  unsigned corpus_jobs = 0;
  CLI::App* corpus_cmd = app.add_subcommand("corpus", "run every .stc and .calf file in a directory");
  corpus_cmd->add_option("dir", corpus_dir, "corpus directory")->required();
  corpus_cmd->add_option("--fuel", corpus_fuel, "evaluation step budget");
  corpus_cmd->add_flag("--json", corpus_json, "machine-readable report");
  corpus_cmd->add_option("-j,--jobs", corpus_jobs, "worker threads (0 = hardware)");

  app.require_subcommand(1);

  std::vector<std::string> argv = args;
  std::reverse(argv.begin(), argv.end());  // CLI11 wants reversed argv without argv[0]

  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << STC_VERSION << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*check_cmd)
      return cmd_over_inputs("check", check_c.files, check_c.exprs,
                             fuel_limit(check_c.fuel, check_cmd->count("--fuel") > 0), check_c.json,
                             check_c.trace, out);
    if (*canon_cmd)
      return cmd_over_inputs("canon", canon_c.files, canon_c.exprs,
                             fuel_limit(canon_c.fuel, canon_cmd->count("--fuel") > 0), canon_c.json,
                             canon_c.trace, out);
    if (*calf_cmd)
      return cmd_over_inputs("calf", calf_c.files, calf_c.exprs,
                             fuel_limit(calf_c.fuel, calf_cmd->count("--fuel") > 0), calf_c.json,
                             calf_c.trace, out);
    if (*laws_cmd) return cmd_laws(laws_size, laws_json, out);
    if (*corpus_cmd)
      return cmd_corpus(corpus_dir, fuel_limit(corpus_fuel, corpus_cmd->count("--fuel") > 0),
                        corpus_json, corpus_jobs, out);
    err << "usage error: no subcommand\n";
    return 2;
  } catch (const Error& e) {
    err << "error [" << errc_name(e.code()) << "] " << e.what() << '\n';
    return errc_is_usage(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

RunResult run_capture(const std::vector<std::string>& args) {
  RunResult r;
  std::ostringstream out, err;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace stc::cli
