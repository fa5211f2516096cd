// Copyright 2026 The bidi-tc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <map>

#include "bidi/surface.hpp"

namespace bidi::surface {

namespace {

enum class Tok { Lower, Upper, Int, Keyword, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

const std::set<std::string> kKeywords = {"class", "instance", "data",
                                         "primitive", "let", "in",
                                         "forall", "where"};

[[noreturn]] void parse_fail(const std::string& msg, SourcePos pos) {
  Diagnostic d;
  d.code = codes::kParse;
  d.family = ErrorFamily::Parse;
  d.message = msg;
  d.pos = pos;
  throw ParseError(std::move(d));
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "--") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourcePos pos{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      Tok kind = kKeywords.count(word)                   ? Tok::Keyword
                 : std::isupper(static_cast<unsigned char>(c)) ? Tok::Upper
                                                               : Tok::Lower;
      out.push_back({kind, word, pos});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        ++j;
      }
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    static const char* kTwo[] = {"->", "=>", "::"};
    bool matched = false;
    for (const char* s : kTwo) {
      if (src.substr(i, 2) == s) {
        out.push_back({Tok::Sym, s, pos});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string("(){},;\\.=").find(c) != std::string::npos) {
      out.push_back({Tok::Sym, std::string(1, c), pos});
      advance(1);
      continue;
    }
    parse_fail(std::string("unexpected character '") + c + "'", pos);
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  SourceProgram program() {
    SourceProgram p;
    std::map<std::string, std::pair<PolyType, SourcePos>> pending;
    while (!at_end()) {
      if (is_sym(";")) {
        ++i_;
        continue;
      }
      if (peek().kind == Tok::Lower && peek(1).kind == Tok::Sym &&
          peek(1).text == "::") {
        Token name = next();
        ++i_;
        if (pending.count(name.text)) {
          parse_fail("duplicate type signature for '" + name.text + "'",
                     name.pos);
        }
        pending.emplace(name.text, std::make_pair(poly({}), name.pos));
        continue;
      }
      Decl d = decl();
      if (auto* v = std::get_if<ValDecl>(&d)) {
        auto it = pending.find(v->name);
        if (it != pending.end()) {
          if (v->sig) {
            parse_fail("binding '" + v->name +
                           "' has both a separate and an inline signature",
                       v->pos);
          }
          v->sig = it->second.first;
          pending.erase(it);
        }
      }
      p.decls.push_back(std::move(d));
    }
    if (!pending.empty()) {
      auto& [name, sig] = *pending.begin();
      parse_fail("type signature for '" + name + "' lacks an accompanying binding",
                 sig.second);
    }
    return p;
  }

  PolyType lone_poly() {
    PolyType p = poly({});
    expect_end();
    return p;
  }

  ExprPtr lone_expr() {
    ExprPtr e = expr();
    expect_end();
    return e;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  Token next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is_sym(const char* s) const {
    return peek().kind == Tok::Sym && peek().text == s;
  }
  bool is_kw(const char* s) const {
    return peek().kind == Tok::Keyword && peek().text == s;
  }
  // A token in column one starts a new top-level declaration.
  bool at_boundary() const { return peek().pos.col == 1 && i_ > 0; }

  void expect_sym(const char* s) {
    if (!is_sym(s)) {
      parse_fail(std::string("expected '") + s + "' but found " +
                     describe(peek()),
                 peek().pos);
    }
    ++i_;
  }
  void expect_kw(const char* s) {
    if (!is_kw(s)) {
      parse_fail(std::string("expected '") + s + "' but found " +
                     describe(peek()),
                 peek().pos);
    }
    ++i_;
  }
  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      parse_fail(std::string("expected ") + what + " but found " +
                     describe(peek()),
                 peek().pos);
    }
    return next();
  }
  void expect_end() {
    if (!at_end()) parse_fail("unexpected " + describe(peek()), peek().pos);
  }

  Decl decl() {
    const Token& t = peek();
    if (t.kind == Tok::Keyword) {
      if (t.text == "class") return class_decl();
      if (t.text == "instance") return instance_decl();
      if (t.text == "data") return data_decl();
      if (t.text == "primitive") return prim_decl();
      if (t.text == "let") return val_decl();
    }
    parse_fail("expected a declaration but found " + describe(t), t.pos);
  }

  ClassDecl class_decl() {
    ClassDecl c;
    c.pos = next().pos;
    if (auto ctx = try_context()) c.supers = std::move(*ctx);
    c.name = expect(Tok::Upper, "a class name").text;
    c.var = expect(Tok::Lower, "the class variable").text;
    expect_kw("where");
    expect_sym("{");
    c.method = expect(Tok::Lower, "a method name").text;
    expect_sym("::");
    c.method_sig = poly({c.var});
    if (is_sym(";")) ++i_;
    expect_sym("}");
    return c;
  }

  InstanceDecl instance_decl() {
    InstanceDecl ins;
    ins.pos = next().pos;
    bool explicit_vars = false;
    if (is_kw("forall")) {
      ++i_;
      ins.vars = binders();
      explicit_vars = true;
    }
    if (auto ctx = try_context()) ins.context = std::move(*ctx);
    ins.cls = expect(Tok::Upper, "a class name").text;
    ins.head = atype();
    if (!explicit_vars) {
      free_vars(ins.head, ins.vars);
      for (const auto& q : ins.context) free_vars(q.arg, ins.vars);
    }
    expect_kw("where");
    expect_sym("{");
    ins.method = expect(Tok::Lower, "a method name").text;
    expect_sym("=");
    ins.body = expr();
    if (is_sym(";")) ++i_;
    expect_sym("}");
    return ins;
  }

  DataDecl data_decl() {
    DataDecl d;
    d.pos = next().pos;
    d.name = expect(Tok::Upper, "a type constructor name").text;
    if (peek().kind == Tok::Int && !at_boundary()) {
      d.arity = std::stoi(next().text);
      return d;
    }
    std::set<std::string> seen;
    while (peek().kind == Tok::Lower && !at_boundary()) {
      Token p = next();
      if (!seen.insert(p.text).second) {
        parse_fail("duplicate parameter '" + p.text + "'", p.pos);
      }
      ++d.arity;
    }
    return d;
  }

  PrimDecl prim_decl() {
    PrimDecl p;
    p.pos = next().pos;
    p.name = expect(Tok::Lower, "a primitive name").text;
    expect_sym("::");
    p.sig = poly({});
    return p;
  }

  ValDecl val_decl() {
    ValDecl v;
    v.pos = next().pos;
    v.name = expect(Tok::Lower, "a binding name").text;
    if (is_sym("::")) {
      ++i_;
      v.sig = poly({});
    }
    expect_sym("=");
    v.body = expr();
    return v;
  }

  std::vector<std::string> binders() {
    std::vector<std::string> vars;
    do {
      Token v = expect(Tok::Lower, "a type variable");
      if (std::find(vars.begin(), vars.end(), v.text) != vars.end()) {
        parse_fail("duplicate quantified variable '" + v.text + "'", v.pos);
      }
      vars.push_back(v.text);
    } while (peek().kind == Tok::Lower);
    expect_sym(".");
    return vars;
  }

  // sigma. Without an explicit forall, every free variable except those in
  // `implicit_exclude` is quantified in order of first occurrence.
  PolyType poly(const std::vector<std::string>& implicit_exclude) {
    PolyType p;
    bool explicit_vars = false;
    while (is_kw("forall")) {
      ++i_;
      for (auto& v : binders()) {
        if (std::find(p.vars.begin(), p.vars.end(), v) != p.vars.end()) {
          parse_fail("duplicate quantified variable '" + v + "'", peek().pos);
        }
        p.vars.push_back(v);
      }
      explicit_vars = true;
    }
    while (auto ctx = try_context()) {
      for (auto& q : *ctx) p.body.context.push_back(std::move(q));
    }
    p.body.body = type();
    if (!explicit_vars) {
      std::vector<std::string> fvs;
      for (const auto& q : p.body.context) free_vars(q.arg, fvs);
      free_vars(p.body.body, fvs);
      for (auto& v : fvs) {
        if (std::find(implicit_exclude.begin(), implicit_exclude.end(), v) ==
            implicit_exclude.end()) {
          p.vars.push_back(v);
        }
      }
    }
    return p;
  }

  // Context followed by "=>", or nothing (position restored).
  std::optional<std::vector<ClassConstraint>> try_context() {
    std::size_t save = i_;
    try {
      std::vector<ClassConstraint> ctx;
      if (is_sym("(")) {
        ++i_;
        if (!is_sym(")")) {
          ctx.push_back(constraint());
          while (is_sym(",")) {
            ++i_;
            ctx.push_back(constraint());
          }
        }
        expect_sym(")");
      } else {
        ctx.push_back(constraint());
      }
      expect_sym("=>");
      return ctx;
    } catch (const ParseError&) {
      i_ = save;
      return std::nullopt;
    }
  }

  ClassConstraint constraint() {
    Token cls = expect(Tok::Upper, "a class name");
    return {cls.text, atype()};
  }

  MonoPtr type() {
    MonoPtr lhs = btype();
    if (is_sym("->")) {
      ++i_;
      return arrow(lhs, type());
    }
    return lhs;
  }

  MonoPtr btype() {
    if (peek().kind == Tok::Upper) {
      std::string name = next().text;
      std::vector<MonoPtr> args;
      while (starts_atype()) args.push_back(atype());
      return con(name, std::move(args));
    }
    return atype();
  }

  bool starts_atype() const {
    if (at_boundary()) return false;
    return peek().kind == Tok::Lower || peek().kind == Tok::Upper ||
           is_sym("(");
  }

  MonoPtr atype() {
    const Token& t = peek();
    if (t.kind == Tok::Lower) return tvar(next().text);
    if (t.kind == Tok::Upper) return con(next().text);
    if (is_sym("(")) {
      ++i_;
      MonoPtr inner = type();
      expect_sym(")");
      return inner;
    }
    parse_fail("expected a type but found " + describe(t), t.pos);
  }

  ExprPtr expr() {
    if (is_sym("\\")) {
      SourcePos pos = next().pos;
      std::vector<Token> xs;
      do {
        xs.push_back(expect(Tok::Lower, "a lambda binder"));
      } while (peek().kind == Tok::Lower);
      expect_sym(".");
      ExprPtr body = expr();
      for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
        body = lam(it->text, body, it == xs.rend() - 1 ? pos : it->pos);
      }
      return body;
    }
    if (is_kw("let")) {
      SourcePos pos = next().pos;
      std::string x = expect(Tok::Lower, "a let binder").text;
      expect_sym("=");
      ExprPtr bound = expr();
      expect_kw("in");
      ExprPtr body = expr();
      return let(x, bound, body, pos);
    }
    ExprPtr fn = aexpr();
    while (starts_aexpr()) {
      SourcePos pos = peek().pos;
      ExprPtr arg = starts_binder_expr() ? expr() : aexpr();
      fn = app(fn, arg, pos);
    }
    return fn;
  }

  bool starts_aexpr() const {
    if (at_boundary()) return false;
    return peek().kind == Tok::Lower || is_sym("(") || starts_binder_expr();
  }
  // Trailing lambda / let in argument position: "f \x. x".
  bool starts_binder_expr() const {
    if (at_boundary()) return false;
    return is_sym("\\") || is_kw("let");
  }

  ExprPtr aexpr() {
    const Token& t = peek();
    if (t.kind == Tok::Lower) {
      Token v = next();
      return var(v.text, v.pos);
    }
    if (is_sym("(")) {
      ++i_;
      ExprPtr e = expr();
      expect_sym(")");
      return e;
    }
    parse_fail("expected an expression but found " + describe(t), t.pos);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

SourceProgram parse_program(std::string_view text) {
  return Parser(text).program();
}

PolyType parse_poly_type(std::string_view text) {
  return Parser(text).lone_poly();
}

ExprPtr parse_expr(std::string_view text) { return Parser(text).lone_expr(); }

}  // namespace bidi::surface
