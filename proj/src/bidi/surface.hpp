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

// Source language: monotypes, qualified types, polytypes, class constraints,
// expressions and declarations, plus the concrete grammar for ".btc" files.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bidi/diagnostic.hpp"

namespace bidi::surface {

struct MonoType;
using MonoPtr = std::shared_ptr<const MonoType>;

// tau ::= a | tau -> tau | T tau1 .. tauk
struct MonoType {
  enum class Kind { Var, Arrow, Con };
  Kind kind;
  std::string name;           // variable or constructor name
  std::vector<MonoPtr> args;  // Arrow: {domain, codomain}; Con: arguments

  bool is_var() const { return kind == Kind::Var; }
  bool is_arrow() const { return kind == Kind::Arrow; }
  bool is_con() const { return kind == Kind::Con; }
};

MonoPtr tvar(std::string name);
MonoPtr arrow(MonoPtr domain, MonoPtr codomain);
MonoPtr con(std::string name, std::vector<MonoPtr> args = {});

bool equal(const MonoPtr& a, const MonoPtr& b);

// Free variables in order of first occurrence (left to right).
void free_vars(const MonoPtr& t, std::vector<std::string>& out);
std::vector<std::string> free_vars(const MonoPtr& t);
bool occurs(const std::string& var, const MonoPtr& t);
int count_occurrences(const std::string& var, const MonoPtr& t);

using MonoSubst = std::map<std::string, MonoPtr>;
MonoPtr substitute(const MonoSubst& s, const MonoPtr& t);

// Q ::= TC tau
struct ClassConstraint {
  std::string cls;
  MonoPtr arg;
};
bool equal(const ClassConstraint& a, const ClassConstraint& b);
ClassConstraint substitute(const MonoSubst& s, const ClassConstraint& q);

// rho ::= tau | Q => rho   (contexts are flattened into an ordered list)
struct QualType {
  std::vector<ClassConstraint> context;
  MonoPtr body;
};

// sigma ::= rho | forall a. sigma
struct PolyType {
  std::vector<std::string> vars;
  QualType body;
};
bool equal(const PolyType& a, const PolyType& b);
std::vector<std::string> free_vars(const PolyType& p);

// Capture-avoiding substitution; binders clashing with the range are renamed.
PolyType substitute(const MonoSubst& s, const PolyType& p);

// S ::= forall as. C => Q
struct ConstraintScheme {
  std::vector<std::string> vars;
  std::vector<ClassConstraint> context;
  ClassConstraint head;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// e ::= x | \x. e | e1 e2 | let x = e1 in e2
struct Expr {
  enum class Kind { Var, Lam, App, Let };
  Kind kind;
  std::string name;  // Var: the variable; Lam/Let: the binder
  std::vector<ExprPtr> kids;  // Lam: {body}; App: {fn, arg}; Let: {bound, body}
  SourcePos pos;
};

ExprPtr var(std::string name, SourcePos pos = {});
ExprPtr lam(std::string binder, ExprPtr body, SourcePos pos = {});
ExprPtr app(ExprPtr fn, ExprPtr arg, SourcePos pos = {});
ExprPtr let(std::string binder, ExprPtr bound, ExprPtr body,
            SourcePos pos = {});
bool equal(const ExprPtr& a, const ExprPtr& b);

struct ClassDecl {
  std::string var;
  std::vector<ClassConstraint> supers;
  std::string name;
  std::string method;
  PolyType method_sig;
  SourcePos pos;
};

struct InstanceDecl {
  std::vector<std::string> vars;
  std::vector<ClassConstraint> context;
  std::string cls;
  MonoPtr head;
  std::string method;
  ExprPtr body;
  SourcePos pos;

  ClassConstraint head_constraint() const { return {cls, head}; }
};

struct DataDecl {
  std::string name;
  int arity = 0;
  SourcePos pos;
};

struct PrimDecl {
  std::string name;
  PolyType sig;
  SourcePos pos;
};

struct ValDecl {
  std::string name;
  std::optional<PolyType> sig;
  ExprPtr body;
  SourcePos pos;
};

using Decl = std::variant<ClassDecl, InstanceDecl, DataDecl, PrimDecl, ValDecl>;

SourcePos pos_of(const Decl& d);
bool equal(const Decl& a, const Decl& b);

struct SourceProgram {
  std::vector<Decl> decls;
};
bool equal(const SourceProgram& a, const SourceProgram& b);

// Type of a term variable in Gamma. Ordinary bindings have one layer; class
// methods carry two (forall a. TC a => forall bs. C => tau).
struct SchemeLayer {
  std::vector<std::string> vars;
  std::vector<ClassConstraint> context;
};
struct TermScheme {
  std::vector<SchemeLayer> layers;
  MonoPtr body;

  static TermScheme mono(MonoPtr t) { return {{}, std::move(t)}; }
  static TermScheme from_poly(const PolyType& p);
};

// Gamma ::= . | Gamma, a | Gamma, x : sigma
class TypeEnv {
 public:
  struct Entry {
    bool is_type_var = false;
    std::string name;
    TermScheme scheme;
  };

  void push_type_var(std::string a);
  void push_term(std::string x, TermScheme s);
  void pop() { entries_.pop_back(); }
  std::size_t size() const { return entries_.size(); }
  void truncate(std::size_t n) { entries_.resize(n); }

  // Innermost binding wins.
  const TermScheme* lookup(const std::string& x) const;
  bool has_type_var(const std::string& a) const;

 private:
  std::vector<Entry> entries_;
};

// Concrete grammar.
class ParseError : public CompileError {
 public:
  using CompileError::CompileError;
};

SourceProgram parse_program(std::string_view text);
// Parse one polytype with implicit quantification over its free variables.
PolyType parse_poly_type(std::string_view text);
ExprPtr parse_expr(std::string_view text);

std::string pretty(const MonoPtr& t);
std::string pretty(const ClassConstraint& q);
std::string pretty(const PolyType& p);
std::string pretty(const ExprPtr& e);
std::string pretty(const Decl& d);
std::string pretty(const SourceProgram& p);

// User-facing signature rendering: "forall a. Eq (List a) => a -> Bool".
// Parentheses around the context only when it has several constraints.
std::string show_signature(const PolyType& p);
std::string show_context(const std::vector<ClassConstraint>& ctx);

// Sequential scope resolution: unbound names, unknown constructors and
// classes, arity, duplicates. Returns every violation found.
std::vector<Diagnostic> check_scopes(const SourceProgram& p);

bool is_reserved_type_name(const std::string& name);

}  // namespace bidi::surface
