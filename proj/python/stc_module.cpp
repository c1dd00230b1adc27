#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stc/calf.hpp"
#include "stc/check.hpp"
#include "stc/driver.hpp"
#include "stc/model.hpp"
#include "stc/sexpr.hpp"

namespace py = pybind11;

namespace {

// parse/io/usage errors become ValueError, semantic failures RuntimeError
void translate(const stc::Error& e) {
  if (stc::errc_is_usage(e.code()))
    PyErr_SetString(PyExc_ValueError, e.what());
  else
    PyErr_SetString(PyExc_RuntimeError, e.what());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "canonicity engine core";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const stc::Error& e) {
      translate(e);
    }
  });

  m.def("version", [] { return std::string(stc::cli::version()); });

  m.def("run", [](const std::vector<std::string>& args) {
    stc::cli::RunResult r = stc::cli::run_capture(args);
    py::dict d;
    d["code"] = r.code;
    d["out"] = r.out;
    d["err"] = r.err;
    return d;
  }, py::arg("args"), "run a CLI command in-process; returns code/out/err");

  m.def("reprint", [](const std::string& text) {
    return stc::print_sexpr(stc::parse_sexpr(text));
  }, py::arg("text"), "parse and reprint in canonical layout");

  m.def("infer_type", [](const std::string& text) {
    stc::Term t = stc::parse_term(text);
    stc::Fuel fuel;
    stc::Term ty = stc::infer(stc::Context{}, t, fuel);
    return stc::print_term(stc::normalize_type(stc::Context{}, ty, fuel));
  }, py::arg("text"), "type of a closed term");

  m.def("normalize", [](const std::string& text) {
    stc::Term t = stc::parse_term(text);
    stc::Fuel fuel;
    stc::Term ty;
    try {
      ty = stc::infer(stc::Context{}, t, fuel);
    } catch (const stc::Error& e) {
      if (e.code() != stc::Errc::cannot_infer) throw;
      stc::check_closed_bool(t, fuel);
      ty = stc::Term::boolean();
    }
    return stc::print_term(stc::normalize(stc::Context{}, ty, t, fuel));
  }, py::arg("text"), "beta-normal eta-long form of a closed term");

  m.def("convertible", [](const std::string& at, const std::string& lhs, const std::string& rhs) {
    stc::Fuel fuel;
    return stc::convertible(stc::Context{}, stc::parse_term(at), stc::parse_term(lhs),
                            stc::parse_term(rhs), fuel);
  }, py::arg("at"), py::arg("lhs"), py::arg("rhs"),
     "definitional equality of two closed terms at a type");

  m.def("canon", [](const std::string& text) {
    stc::CanonResult r = stc::extract_canonical(stc::parse_term(text));
    py::dict d;
    d["tag"] = std::string(stc::canon_name(r.tag));
    d["ok"] = r.witness.replay() && r.tracking_ok;
    d["steps"] = r.steps;
    d["term"] = stc::print_term(r.term);
    return d;
  }, py::arg("text"), "canonical form of a closed boolean with a replayed witness");

  m.def("cost", [](const std::string& text) {
    stc::calf::CostResult r = stc::calf::extract_cost(stc::parse_calf(text));
    py::dict d;
    d["cost"] = r.cost;
    d["tag"] = std::string(stc::canon_name(r.tag));
    d["ok"] = r.top_ok && r.beh_ok;
    d["term"] = stc::print_calf(r.term);
    return d;
  }, py::arg("text"), "cost and returned tag of a closed boolean computation");
}
