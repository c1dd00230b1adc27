#include "stc/sexpr.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace stc {

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char take() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  Span span() const { return {line, col}; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::parse_error,
                msg + " at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
};

bool atom_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ';';
}

void skip_trivia(Cursor& c) {
  while (!c.done()) {
    if (std::isspace(static_cast<unsigned char>(c.peek()))) {
      c.take();
    } else if (c.peek() == ';') {
      while (!c.done() && c.peek() != '\n') c.take();
    } else {
      return;
    }
  }
}

Sexp parse_datum(Cursor& c, int depth) {
  if (depth > 512) c.fail("nesting too deep");
  skip_trivia(c);
  if (c.done()) c.fail("unexpected end of input");
  Span here = c.span();
  if (c.peek() == ')') c.fail("unmatched ')'");
  if (c.peek() == '(') {
    c.take();
    Sexp s;
    s.kind = Sexp::Kind::List;
    s.span = here;
    for (;;) {
      skip_trivia(c);
      if (c.done()) c.fail("unterminated '('");
      if (c.peek() == ')') {
        c.take();
        return s;
      }
      s.items.push_back(parse_datum(c, depth + 1));
    }
  }
  Sexp s;
  s.kind = Sexp::Kind::Atom;
  s.span = here;
  while (!c.done() && atom_char(c.peek())) s.atom.push_back(c.take());
  if (s.atom.empty()) c.fail("expected an atom");
  return s;
}

[[noreturn]] void fail_at(const Sexp& s, const std::string& msg) {
  throw Error(Errc::parse_error, msg + " at line " + std::to_string(s.span.line) + ", column " +
                                     std::to_string(s.span.col));
}

const std::array<const char*, 17> kKeywords = {"true", "false", "bool", "tp",   "u0",    "u1",
                                               "tm",   "lam",   "app",  "pi",   "if",    "ret",
                                               "bind", "step",  "force", "thunk", "u"};

bool is_keyword(const std::string& a) {
  return std::find_if(kKeywords.begin(), kKeywords.end(),
                      [&](const char* k) { return a == k; }) != kKeywords.end();
}

std::string binder_of(const Sexp& s) {
  if (s.kind != Sexp::Kind::Atom) fail_at(s, "expected a binder name");
  if (is_keyword(s.atom)) fail_at(s, "'" + s.atom + "' cannot be a binder name");
  return s.atom;
}

uint32_t lookup(const Sexp& s, const std::vector<std::string>& names) {
  for (size_t i = names.size(); i-- > 0;)
    if (names[i] == s.atom) return static_cast<uint32_t>(names.size() - 1 - i);
  fail_at(s, "unbound variable '" + s.atom + "'");
}

const Sexp& arg(const Sexp& s, size_t i, size_t want, const char* form) {
  if (s.items.size() != want)
    fail_at(s, "'" + std::string(form) + "' takes " + std::to_string(want - 1) + " arguments, got " +
                   std::to_string(s.items.size() - 1));
  return s.items[i];
}

Term lower_term_in(const Sexp& s, std::vector<std::string>& names) {
  if (s.kind == Sexp::Kind::Atom) {
    const std::string& a = s.atom;
    if (a == "true") return Term::tru();
    if (a == "false") return Term::fls();
    if (a == "bool") return Term::boolean();
    if (a == "tp") return Term::tp();
    if (a == "u0") return Term::u0();
    if (a == "u1") return Term::u1();
    if (is_keyword(a)) fail_at(s, "'" + a + "' is not a term here");
    return Term::var(lookup(s, names));
  }
  if (s.items.empty()) fail_at(s, "empty form");
  const Sexp& head = s.items[0];
  if (head.kind != Sexp::Kind::Atom) fail_at(head, "form head must be an atom");
  const std::string& h = head.atom;
  if (h == "tm") return Term::tm(lower_term_in(arg(s, 1, 2, "tm"), names));
  if (h == "lam") {
    std::string x = binder_of(arg(s, 1, 3, "lam"));
    names.push_back(x);
    Term body = lower_term_in(s.items[2], names);
    names.pop_back();
    return Term::lam(body);
  }
  if (h == "app") {
    // arity first: argument evaluation order must not touch items[2] unchecked
    const Sexp& fun = arg(s, 1, 3, "app");
    return Term::app(lower_term_in(fun, names), lower_term_in(s.items[2], names));
  }
  if (h == "pi") {
    const Sexp& binder = arg(s, 1, 3, "pi");
    if (binder.kind != Sexp::Kind::List || binder.items.size() != 2)
      fail_at(binder, "pi binder must be (name domain)");
    std::string x = binder_of(binder.items[0]);
    Term dom = lower_term_in(binder.items[1], names);
    names.push_back(x);
    Term cod = lower_term_in(s.items[2], names);
    names.pop_back();
    return Term::pi(dom, cod);
  }
  if (h == "if") {
    const Sexp& binder = arg(s, 1, 5, "if");
    if (binder.kind != Sexp::Kind::List || binder.items.size() != 2)
      fail_at(binder, "if motive must be (name type)");
    std::string x = binder_of(binder.items[0]);
    names.push_back(x);
    Term motive = lower_term_in(binder.items[1], names);
    names.pop_back();
    Term scrut = lower_term_in(s.items[2], names);
    Term tb = lower_term_in(s.items[3], names);
    Term fb = lower_term_in(s.items[4], names);
    return Term::ifelim(motive, scrut, tb, fb);
  }
  fail_at(head, "unknown form '" + h + "'");
}

Sexp atom(std::string a) {
  Sexp s;
  s.kind = Sexp::Kind::Atom;
  s.atom = std::move(a);
  return s;
}

Sexp list(std::vector<Sexp> items) {
  Sexp s;
  s.kind = Sexp::Kind::List;
  s.items = std::move(items);
  return s;
}

Sexp raise_term_at(const Term& t, size_t depth) {
  switch (t.tag()) {
    case Tag::Var: {
      if (t.index() >= depth) return atom("?" + std::to_string(t.index() - depth));
      return atom(binder_name(depth - 1 - t.index()));
    }
    case Tag::Tp: return atom("tp");
    case Tag::Tm: return list({atom("tm"), raise_term_at(t.tm_of(), depth)});
    case Tag::Bool: return atom("bool");
    case Tag::True: return atom("true");
    case Tag::False: return atom("false");
    case Tag::U0: return atom("u0");
    case Tag::U1: return atom("u1");
    case Tag::Lam:
      return list({atom("lam"), atom(binder_name(depth)), raise_term_at(t.lam_body(), depth + 1)});
    case Tag::App:
      return list({atom("app"), raise_term_at(t.app_fun(), depth), raise_term_at(t.app_arg(), depth)});
    case Tag::Pi:
      return list({atom("pi"), list({atom(binder_name(depth)), raise_term_at(t.pi_dom(), depth)}),
                   raise_term_at(t.pi_cod(), depth + 1)});
    case Tag::If:
      return list({atom("if"),
                   list({atom(binder_name(depth)), raise_term_at(t.if_motive(), depth + 1)}),
                   raise_term_at(t.if_scrut(), depth), raise_term_at(t.if_true(), depth),
                   raise_term_at(t.if_false(), depth)});
  }
  throw Error(Errc::parse_error, "unreachable term tag");
}

calf::CbpvTerm lower_calf_in(const Sexp& s, std::vector<std::string>& names) {
  using CT = calf::CbpvTerm;
  if (s.kind == Sexp::Kind::Atom) {
    const std::string& a = s.atom;
    if (a == "true") return CT::tru();
    if (a == "false") return CT::fls();
    if (is_keyword(a)) fail_at(s, "'" + a + "' is not a value here");
    return CT::var(lookup(s, names));
  }
  if (s.items.empty()) fail_at(s, "empty form");
  const Sexp& head = s.items[0];
  if (head.kind != Sexp::Kind::Atom) fail_at(head, "form head must be an atom");
  const std::string& h = head.atom;
  if (h == "thunk") return CT::thunk(lower_calf_in(arg(s, 1, 2, "thunk"), names));
  if (h == "ret") return CT::ret(lower_calf_in(arg(s, 1, 2, "ret"), names));
  if (h == "step") return CT::step(lower_calf_in(arg(s, 1, 2, "step"), names));
  if (h == "force") return CT::force(lower_calf_in(arg(s, 1, 2, "force"), names));
  if (h == "bind") {
    const Sexp& k = arg(s, 2, 3, "bind");
    if (k.kind != Sexp::Kind::List || k.items.size() != 2)
      fail_at(k, "bind continuation must be (name body)");
    CT m = lower_calf_in(s.items[1], names);
    std::string x = binder_of(k.items[0]);
    names.push_back(x);
    CT n = lower_calf_in(k.items[1], names);
    names.pop_back();
    return CT::bind(m, n);
  }
  if (h == "lam") {
    std::string x = binder_of(arg(s, 1, 3, "lam"));
    names.push_back(x);
    CT body = lower_calf_in(s.items[2], names);
    names.pop_back();
    return CT::lam(body);
  }
  if (h == "app") {
    const Sexp& fun = arg(s, 1, 3, "app");
    return CT::app(lower_calf_in(fun, names), lower_calf_in(s.items[2], names));
  }
  if (h == "if") {
    arg(s, 1, 4, "if");
    return CT::ifc(lower_calf_in(s.items[1], names), lower_calf_in(s.items[2], names),
                   lower_calf_in(s.items[3], names));
  }
  fail_at(head, "unknown form '" + h + "'");
}

Sexp raise_calf_at(const calf::CbpvTerm& t, size_t depth) {
  using CT = calf::CbpvTerm;
  switch (t.tag()) {
    case CT::Tag::Var: {
      if (t.index() >= depth) return atom("?" + std::to_string(t.index() - depth));
      return atom(binder_name(depth - 1 - t.index()));
    }
    case CT::Tag::True: return atom("true");
    case CT::Tag::False: return atom("false");
    case CT::Tag::Thunk: return list({atom("thunk"), raise_calf_at(t.kid(0), depth)});
    case CT::Tag::Ret: return list({atom("ret"), raise_calf_at(t.kid(0), depth)});
    case CT::Tag::Step: return list({atom("step"), raise_calf_at(t.kid(0), depth)});
    case CT::Tag::Force: return list({atom("force"), raise_calf_at(t.kid(0), depth)});
    case CT::Tag::Bind:
      return list({atom("bind"), raise_calf_at(t.kid(0), depth),
                   list({atom(binder_name(depth)), raise_calf_at(t.kid(1), depth + 1)})});
    case CT::Tag::Lam:
      return list({atom("lam"), atom(binder_name(depth)), raise_calf_at(t.kid(0), depth + 1)});
    case CT::Tag::App:
      return list({atom("app"), raise_calf_at(t.kid(0), depth), raise_calf_at(t.kid(1), depth)});
    case CT::Tag::If:
      return list({atom("if"), raise_calf_at(t.kid(0), depth), raise_calf_at(t.kid(1), depth),
                   raise_calf_at(t.kid(2), depth)});
  }
  throw Error(Errc::parse_error, "unreachable computation tag");
}

}  // namespace

Sexp parse_sexpr(std::string_view text) {
  Cursor c{text};
  Sexp s = parse_datum(c, 0);
  skip_trivia(c);
  if (!c.done()) c.fail("trailing input after the term");
  return s;
}

std::string print_sexpr(const Sexp& s) {
  if (s.kind == Sexp::Kind::Atom) return s.atom;
  std::string out = "(";
  for (size_t i = 0; i < s.items.size(); ++i) {
    if (i) out += ' ';
    out += print_sexpr(s.items[i]);
  }
  out += ')';
  return out;
}

std::string binder_name(size_t depth) {
  static const std::array<const char*, 6> pool = {"x", "y", "z", "w", "v", "s"};
  if (depth < pool.size()) return pool[depth];
  return "x" + std::to_string(depth);
}

Term lower_term(const Sexp& s) {
  std::vector<std::string> names;
  return lower_term_in(s, names);
}

Sexp raise_term(const Term& t) { return raise_term_at(t, 0); }

Term parse_term(std::string_view text) { return lower_term(parse_sexpr(text)); }

std::string print_term(const Term& t) { return print_sexpr(raise_term(t)); }

calf::CbpvTerm lower_calf(const Sexp& s) {
  std::vector<std::string> names;
  return lower_calf_in(s, names);
}

Sexp raise_calf(const calf::CbpvTerm& t) { return raise_calf_at(t, 0); }

calf::CbpvTerm parse_calf(std::string_view text) { return lower_calf(parse_sexpr(text)); }

std::string print_calf(const calf::CbpvTerm& t) { return print_sexpr(raise_calf(t)); }

}  // namespace stc
