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

// System FC core: types, propositions, coercions, terms, declarations, the
// typing environment Delta, substitution, alpha-equivalence and the textual
// dump format.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace bidi::core {

struct Type;
using TypePtr = std::shared_ptr<const Type>;

// upsilon ::= a | T | u1 u2 | forall a. u | F(us) | psi => u
struct Type {
  enum class Kind { Var, Con, App, Forall, Fam, Qual };
  Kind kind;
  std::string name;            // Var, Con, Forall binder, Fam name
  std::vector<TypePtr> kids;   // App {f, x}; Forall {body}; Fam args;
                               // Qual {lhs, rhs, body}
};

inline constexpr const char* kArrow = "->";

TypePtr ty_var(std::string a);
TypePtr ty_con(std::string t);
TypePtr ty_app(TypePtr f, TypePtr x);
TypePtr ty_apps(TypePtr f, const std::vector<TypePtr>& xs);
TypePtr ty_forall(std::string a, TypePtr body);
TypePtr ty_foralls(const std::vector<std::string>& as, TypePtr body);
TypePtr ty_fam(std::string f, std::vector<TypePtr> args);
TypePtr ty_arrow(TypePtr dom, TypePtr cod);
TypePtr ty_arrows(const std::vector<TypePtr>& doms, TypePtr cod);

// psi ::= u1 ~ u2
struct Prop {
  TypePtr lhs;
  TypePtr rhs;
};
TypePtr ty_qual(const Prop& psi, TypePtr body);

// Arrow view: matches ((->) a) b.
bool is_arrow(const TypePtr& t);
const TypePtr& arrow_dom(const TypePtr& t);
const TypePtr& arrow_cod(const TypePtr& t);
// Head constructor and arguments of an application spine.
TypePtr spine_head(const TypePtr& t, std::vector<TypePtr>* args = nullptr);

struct Coercion;
using CoPtr = std::shared_ptr<const Coercion>;

struct Coercion {
  enum class Kind {
    Refl, Sym, Trans, App, Left, Right, Fam, Forall, Inst, Qual, QualInst,
    Axiom, Var
  };
  Kind kind;
  std::string name;            // Fam F, Forall binder, Axiom g, Var omega
  std::vector<TypePtr> types;  // Refl {u}; Axiom args; Qual {lhs, rhs}
  std::vector<CoPtr> kids;
};

CoPtr co_refl(TypePtr t);
CoPtr co_sym(CoPtr g);
CoPtr co_trans(CoPtr g1, CoPtr g2);
CoPtr co_app(CoPtr g1, CoPtr g2);
CoPtr co_left(CoPtr g);
CoPtr co_right(CoPtr g);
CoPtr co_fam(std::string f, std::vector<CoPtr> gs);
CoPtr co_forall(std::string a, CoPtr g);
CoPtr co_inst(CoPtr g1, CoPtr g2);
CoPtr co_qual(const Prop& psi, CoPtr g);
CoPtr co_qinst(CoPtr g1, CoPtr g2);
CoPtr co_axiom(std::string g, std::vector<TypePtr> args);
CoPtr co_var(std::string w);

struct Lit {
  enum class Kind { Int, Bool };
  Kind kind = Kind::Int;
  std::int64_t value = 0;
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// p ::= K bs (w : psi) (x : u)
struct Pattern {
  std::string con;
  std::vector<std::string> tyvars;
  std::vector<std::pair<std::string, Prop>> covars;
  std::vector<std::pair<std::string, TypePtr>> vars;
};

struct Alt {
  Pattern pat;
  TermPtr rhs;
};

struct Term {
  enum class Kind {
    Var, Con, TyLam, TyApp, Lam, App, CoLam, CoApp, Cast, Case, Let, Lit
  };
  Kind kind;
  std::string name;        // Var, Con, binder of TyLam/Lam/CoLam/Let
  TypePtr type;            // TyApp argument, Lam/Let annotation
  Prop prop;               // CoLam
  CoPtr co;                // CoApp, Cast
  std::vector<TermPtr> kids;  // TyLam/Lam/CoLam {body}; TyApp/CoApp/Cast {t};
                              // App {f, x}; Case {scrut}; Let {bound, body}
  std::vector<Alt> alts;
  struct Lit lit;
};

TermPtr tm_var(std::string x);
TermPtr tm_con(std::string k);
TermPtr tm_tylam(std::string a, TermPtr body);
TermPtr tm_tylams(const std::vector<std::string>& as, TermPtr body);
TermPtr tm_tyapp(TermPtr t, TypePtr u);
TermPtr tm_tyapps(TermPtr t, const std::vector<TypePtr>& us);
TermPtr tm_lam(std::string x, TypePtr u, TermPtr body);
TermPtr tm_app(TermPtr f, TermPtr x);
TermPtr tm_apps(TermPtr f, const std::vector<TermPtr>& xs);
TermPtr tm_colam(std::string w, const Prop& psi, TermPtr body);
TermPtr tm_coapp(TermPtr t, CoPtr g);
TermPtr tm_cast(TermPtr t, CoPtr g);
TermPtr tm_case(TermPtr scrut, std::vector<Alt> alts);
TermPtr tm_let(std::string x, TypePtr u, TermPtr bound, TermPtr body);
TermPtr tm_int(std::int64_t v);
TermPtr tm_bool(bool v);

struct DataDecl {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::pair<std::string, TypePtr>> ctors;
};
struct FamilyDecl {
  std::string name;
  int arity = 1;
};
// axiom g as : F(lhs) ~ rhs
struct AxiomDecl {
  std::string name;
  std::vector<std::string> params;
  std::string family;
  std::vector<TypePtr> lhs;
  TypePtr rhs;
};
struct ValueBind {
  std::string name;
  TypePtr type;
  TermPtr term;
};
struct PrimBind {
  std::string name;
  TypePtr type;
};

using Decl = std::variant<DataDecl, FamilyDecl, AxiomDecl, ValueBind, PrimBind>;
const std::string& decl_name(const Decl& d);

struct Program {
  std::vector<Decl> decls;
};

// Delta. Entries are looked up innermost-first.
class Env {
 public:
  enum class Kind { TyVar, TermVar, TyCon, DataCon, CoVar, Axiom, Family };
  struct Entry {
    Kind kind;
    std::string name;
    TypePtr type;                     // TermVar, DataCon
    Prop prop;                        // CoVar, Axiom (as : lhs ~ rhs)
    std::vector<std::string> params;  // Axiom
    int arity = 0;                    // TyCon, Family
  };

  // Delta containing only the built-in arrow constructor.
  static Env initial();

  void push(Entry e);
  void push_tyvar(const std::string& a);
  void push_term(const std::string& x, TypePtr u);
  void push_covar(const std::string& w, const Prop& psi);
  void pop() { entries_.pop_back(); }
  std::size_t size() const { return entries_.size(); }
  void truncate(std::size_t n) { entries_.resize(n); }

  const Entry* find(Kind kind, const std::string& name) const;
  bool has_tyvar(const std::string& a) const {
    return find(Kind::TyVar, a) != nullptr;
  }
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

// Free type variables, first-occurrence order.
std::vector<std::string> ftv(const TypePtr& t);
void ftv(const TypePtr& t, std::vector<std::string>& out);
bool occurs_free(const std::string& a, const TypePtr& t);

using TypeSubst = std::map<std::string, TypePtr>;
using TermSubst = std::map<std::string, TermPtr>;

// Capture-avoiding; clashing binders get primes appended until fresh.
TypePtr subst_type(const TypeSubst& s, const TypePtr& t);
Prop subst_prop(const TypeSubst& s, const Prop& p);
CoPtr subst_type_in_co(const TypeSubst& s, const CoPtr& g);
TermPtr subst_type_in_term(const TypeSubst& s, const TermPtr& t);
TermPtr subst_term(const TermSubst& s, const TermPtr& t);

bool alpha_eq(const TypePtr& a, const TypePtr& b);
bool alpha_eq(const Prop& a, const Prop& b);
bool alpha_eq(const CoPtr& a, const CoPtr& b);
bool alpha_eq(const TermPtr& a, const TermPtr& b);
bool alpha_eq(const Decl& a, const Decl& b);
bool alpha_eq(const Program& a, const Program& b);

std::string dump(const TypePtr& t);
std::string dump(const Prop& p);
std::string dump(const CoPtr& g);
std::string dump(const TermPtr& t);
std::string dump(const Decl& d);
std::string dump_core(const Program& p);

// Prime-suffixed variant of `base` not in `taken`.
std::string prime_away(const std::string& base, const std::set<std::string>& taken);

}  // namespace bidi::core
