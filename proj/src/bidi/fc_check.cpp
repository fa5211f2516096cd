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

#include "bidi/fc_check.hpp"

#include <algorithm>

namespace bidi::fc {

using namespace core;

const char* kind_name(FcErrorKind k) {
  switch (k) {
    case FcErrorKind::UnboundTyVar: return "UnboundTyVar";
    case FcErrorKind::UnknownTyCon: return "UnknownTyCon";
    case FcErrorKind::UnknownFamily: return "UnknownFamily";
    case FcErrorKind::ArityMismatch: return "ArityMismatch";
    case FcErrorKind::IllTypedCoercion: return "IllTypedCoercion";
    case FcErrorKind::UnboundVar: return "UnboundVar";
    case FcErrorKind::UnknownDataCon: return "UnknownDataCon";
    case FcErrorKind::AppMismatch: return "AppMismatch";
    case FcErrorKind::CastMismatch: return "CastMismatch";
    case FcErrorKind::PatternArityMismatch: return "PatternArityMismatch";
    case FcErrorKind::NonDataScrutinee: return "NonDataScrutinee";
    case FcErrorKind::BranchMismatch: return "BranchMismatch";
    case FcErrorKind::DeclMismatch: return "DeclMismatch";
    case FcErrorKind::MalformedDecl: return "MalformedDecl";
    case FcErrorKind::DuplicateName: return "DuplicateName";
  }
  return "?";
}

std::string FcError::describe() const {
  return std::string(kind_name(kind)) + " in rule " + rule + ": " + message;
}

namespace {

struct Failure {
  FcError err;
};

[[noreturn]] void fail(FcErrorKind k, const char* rule, std::string msg) {
  throw Failure{{k, rule, std::move(msg)}};
}

class Checker {
 public:
  explicit Checker(Env env) : env_(std::move(env)) {}

  Env& env() { return env_; }

  void type(const TypePtr& t) {
    switch (t->kind) {
      case Type::Kind::Var:
        if (!env_.has_tyvar(t->name)) {
          fail(FcErrorKind::UnboundTyVar, "TyVar",
               "type variable " + t->name + " is not in scope");
        }
        return;
      case Type::Kind::Con:
        if (!env_.find(Env::Kind::TyCon, t->name)) {
          fail(FcErrorKind::UnknownTyCon, "TyCon",
               "type constructor " + t->name + " is not declared");
        }
        return;
      case Type::Kind::Forall:
        env_.push_tyvar(t->name);
        type(t->kids[0]);
        env_.pop();
        return;
      case Type::Kind::App:
        type(t->kids[0]);
        type(t->kids[1]);
        return;
      case Type::Kind::Fam: {
        const Env::Entry* f = env_.find(Env::Kind::Family, t->name);
        if (!f) {
          fail(FcErrorKind::UnknownFamily, "TyFam",
               "type family " + t->name + " is not declared");
        }
        if (f->arity != static_cast<int>(t->kids.size())) {
          fail(FcErrorKind::ArityMismatch, "TyFam",
               "type family " + t->name + " expects " +
                   std::to_string(f->arity) + " argument(s) in " + dump(t));
        }
        for (const auto& k : t->kids) type(k);
        return;
      }
      case Type::Kind::Qual:
        type(t->kids[0]);
        type(t->kids[1]);
        type(t->kids[2]);
        return;
    }
  }

  void prop(const Prop& p) {
    type(p.lhs);
    type(p.rhs);
  }

  Prop co(const CoPtr& g) {
    using K = Coercion::Kind;
    switch (g->kind) {
      case K::Var: {
        const Env::Entry* e = env_.find(Env::Kind::CoVar, g->name);
        if (!e) {
          fail(FcErrorKind::IllTypedCoercion, "CoVar",
               "coercion variable " + g->name + " is not in scope");
        }
        return e->prop;
      }
      case K::Axiom: {
        const Env::Entry* e = env_.find(Env::Kind::Axiom, g->name);
        if (!e) {
          fail(FcErrorKind::IllTypedCoercion, "CoAx",
               "axiom " + g->name + " is not declared");
        }
        if (e->params.size() != g->types.size()) {
          fail(FcErrorKind::IllTypedCoercion, "CoAx",
               "axiom " + g->name + " expects " +
                   std::to_string(e->params.size()) + " type argument(s)");
        }
        TypeSubst s;
        for (std::size_t i = 0; i < g->types.size(); ++i) {
          type(g->types[i]);
          s[e->params[i]] = g->types[i];
        }
        return subst_prop(s, e->prop);
      }
      case K::Refl:
        type(g->types[0]);
        return {g->types[0], g->types[0]};
      case K::Sym: {
        Prop p = co(g->kids[0]);
        return {p.rhs, p.lhs};
      }
      case K::Trans: {
        Prop p1 = co(g->kids[0]);
        Prop p2 = co(g->kids[1]);
        if (!alpha_eq(p1.rhs, p2.lhs)) {
          fail(FcErrorKind::IllTypedCoercion, "CoTrans",
               "middle types differ: " + dump(p1.rhs) + " and " + dump(p2.lhs));
        }
        return {p1.lhs, p2.rhs};
      }
      case K::App: {
        Prop p1 = co(g->kids[0]);
        Prop p2 = co(g->kids[1]);
        TypePtr lhs = ty_app(p1.lhs, p2.lhs);
        type(lhs);
        return {lhs, ty_app(p1.rhs, p2.rhs)};
      }
      case K::Left:
      case K::Right: {
        const char* rule = g->kind == K::Left ? "CoL" : "CoR";
        Prop p = co(g->kids[0]);
        if (p.lhs->kind != Type::Kind::App || p.rhs->kind != Type::Kind::App) {
          fail(FcErrorKind::IllTypedCoercion, rule,
               "expected an equality between applications, got " + dump(p));
        }
        std::size_t i = g->kind == K::Left ? 0 : 1;
        return {p.lhs->kids[i], p.rhs->kids[i]};
      }
      case K::Fam: {
        const Env::Entry* f = env_.find(Env::Kind::Family, g->name);
        if (!f) {
          fail(FcErrorKind::IllTypedCoercion, "CoFam",
               "type family " + g->name + " is not declared");
        }
        if (f->arity != static_cast<int>(g->kids.size())) {
          fail(FcErrorKind::IllTypedCoercion, "CoFam",
               "type family " + g->name + " expects " +
                   std::to_string(f->arity) + " coercion(s)");
        }
        std::vector<TypePtr> lhs, rhs;
        for (const auto& k : g->kids) {
          Prop p = co(k);
          type(p.lhs);
          lhs.push_back(p.lhs);
          rhs.push_back(p.rhs);
        }
        return {ty_fam(g->name, lhs), ty_fam(g->name, rhs)};
      }
      case K::Forall: {
        env_.push_tyvar(g->name);
        Prop p = co(g->kids[0]);
        type(p.lhs);
        env_.pop();
        return {ty_forall(g->name, p.lhs), ty_forall(g->name, p.rhs)};
      }
      case K::Inst: {
        Prop p1 = co(g->kids[0]);
        if (p1.lhs->kind != Type::Kind::Forall ||
            p1.rhs->kind != Type::Kind::Forall) {
          fail(FcErrorKind::IllTypedCoercion, "CoIns",
               "expected an equality between polytypes, got " + dump(p1));
        }
        Prop p2 = co(g->kids[1]);
        type(p2.lhs);
        // Both sides bind the same variable in the rule; alpha-rename.
        return {subst_type({{p1.lhs->name, p2.lhs}}, p1.lhs->kids[0]),
                subst_type({{p1.rhs->name, p2.rhs}}, p1.rhs->kids[0])};
      }
      case K::Qual: {
        Prop psi{g->types[0], g->types[1]};
        prop(psi);
        Prop p = co(g->kids[0]);
        return {ty_qual(psi, p.lhs), ty_qual(psi, p.rhs)};
      }
      case K::QualInst: {
        Prop p1 = co(g->kids[0]);
        if (p1.lhs->kind != Type::Kind::Qual || p1.rhs->kind != Type::Kind::Qual) {
          fail(FcErrorKind::IllTypedCoercion, "CoQInst",
               "expected an equality between qualified types, got " + dump(p1));
        }
        Prop psi_l{p1.lhs->kids[0], p1.lhs->kids[1]};
        Prop psi_r{p1.rhs->kids[0], p1.rhs->kids[1]};
        if (!alpha_eq(psi_l, psi_r)) {
          fail(FcErrorKind::IllTypedCoercion, "CoQInst",
               "qualifying propositions differ: " + dump(psi_l) + " and " +
                   dump(psi_r));
        }
        Prop p2 = co(g->kids[1]);
        if (!alpha_eq(p2, psi_l)) {
          fail(FcErrorKind::IllTypedCoercion, "CoQInst",
               "argument proves " + dump(p2) + " but " + dump(psi_l) +
                   " is required");
        }
        return {p1.lhs->kids[2], p1.rhs->kids[2]};
      }
    }
    fail(FcErrorKind::IllTypedCoercion, "Co", "unknown coercion form");
  }

  TypePtr term(const TermPtr& t) {
    using K = Term::Kind;
    switch (t->kind) {
      case K::Var: {
        const Env::Entry* e = env_.find(Env::Kind::TermVar, t->name);
        if (!e) {
          fail(FcErrorKind::UnboundVar, "TmVar",
               "variable " + t->name + " is not in scope");
        }
        return e->type;
      }
      case K::Con: {
        const Env::Entry* e = env_.find(Env::Kind::DataCon, t->name);
        if (!e) {
          fail(FcErrorKind::UnknownDataCon, "TmCon",
               "data constructor " + t->name + " is not declared");
        }
        return e->type;
      }
      case K::Lit:
        return ty_con(t->lit.kind == Lit::Kind::Bool ? "Bool" : "Int");
      case K::TyLam: {
        env_.push_tyvar(t->name);
        TypePtr body = term(t->kids[0]);
        env_.pop();
        return ty_forall(t->name, body);
      }
      case K::TyApp: {
        type(t->type);
        TypePtr f = term(t->kids[0]);
        if (f->kind != Type::Kind::Forall) {
          fail(FcErrorKind::AppMismatch, "(forall E)",
               "type application to a term of type " + dump(f));
        }
        return subst_type({{f->name, t->type}}, f->kids[0]);
      }
      case K::Lam: {
        type(t->type);
        env_.push_term(t->name, t->type);
        TypePtr body = term(t->kids[0]);
        env_.pop();
        return ty_arrow(t->type, body);
      }
      case K::App: {
        TypePtr f = term(t->kids[0]);
        if (!is_arrow(f)) {
          fail(FcErrorKind::AppMismatch, "(-> E)",
               "application of a term of non-function type " + dump(f));
        }
        TypePtr x = term(t->kids[1]);
        if (!alpha_eq(arrow_dom(f), x)) {
          fail(FcErrorKind::AppMismatch, "(-> E)",
               "argument has type " + dump(x) + " but " + dump(arrow_dom(f)) +
                   " is expected");
        }
        return arrow_cod(f);
      }
      case K::CoLam: {
        prop(t->prop);
        env_.push_covar(t->name, t->prop);
        TypePtr body = term(t->kids[0]);
        env_.pop();
        return ty_qual(t->prop, body);
      }
      case K::CoApp: {
        TypePtr f = term(t->kids[0]);
        if (f->kind != Type::Kind::Qual) {
          fail(FcErrorKind::AppMismatch, "(=> E)",
               "coercion application to a term of type " + dump(f));
        }
        Prop need{f->kids[0], f->kids[1]};
        Prop got = co(t->co);
        if (!alpha_eq(need, got)) {
          fail(FcErrorKind::AppMismatch, "(=> E)",
               "coercion proves " + dump(got) + " but " + dump(need) +
                   " is required");
        }
        return f->kids[2];
      }
      case K::Cast: {
        TypePtr inner = term(t->kids[0]);
        Prop p = co(t->co);
        if (!alpha_eq(inner, p.lhs)) {
          fail(FcErrorKind::CastMismatch, "TmCast",
               "term has type " + dump(inner) + " but the coercion proves " +
                   dump(p));
        }
        return p.rhs;
      }
      case K::Case:
        return case_of(t);
      case K::Let: {
        env_.push_term(t->name, t->type);
        TypePtr bound = term(t->kids[0]);
        if (!alpha_eq(bound, t->type)) {
          fail(FcErrorKind::DeclMismatch, "TmLet",
               "let " + t->name + " declared " + dump(t->type) + " but bound to " +
                   dump(bound));
        }
        TypePtr body = term(t->kids[1]);
        env_.pop();
        return body;
      }
    }
    fail(FcErrorKind::AppMismatch, "Tm", "unknown term form");
  }

  TypePtr case_of(const TermPtr& t) {
    TypePtr scrut = term(t->kids[0]);
    std::vector<TypePtr> scrut_args;
    TypePtr head = spine_head(scrut, &scrut_args);
    if (head->kind != Type::Kind::Con || head->name == kArrow) {
      fail(FcErrorKind::NonDataScrutinee, "TmCase",
           "scrutinee has non-data type " + dump(scrut));
    }
    if (t->alts.empty()) {
      fail(FcErrorKind::PatternArityMismatch, "TmCase", "case with no alternatives");
    }
    TypePtr result;
    for (const auto& alt : t->alts) {
      TypePtr r = pattern(alt, head->name, scrut_args);
      if (result && !alpha_eq(result, r)) {
        fail(FcErrorKind::BranchMismatch, "TmCase",
             "alternatives have types " + dump(result) + " and " + dump(r));
      }
      if (!result) result = r;
    }
    return result;
  }

  TypePtr pattern(const Alt& alt, const std::string& tycon,
                  const std::vector<TypePtr>& scrut_args) {
    const Pattern& p = alt.pat;
    const Env::Entry* k = env_.find(Env::Kind::DataCon, p.con);
    if (!k) {
      fail(FcErrorKind::UnknownDataCon, "Pat",
           "data constructor " + p.con + " is not declared");
    }
    std::vector<std::string> vars;
    std::vector<Prop> props;
    std::vector<TypePtr> fields;
    TypePtr res = telescope(k->type, vars, props, fields);
    std::vector<TypePtr> res_args;
    TypePtr res_head = spine_head(res, &res_args);
    if (res_head->name != tycon) {
      fail(FcErrorKind::PatternArityMismatch, "Pat",
           "constructor " + p.con + " does not build values of type " + tycon);
    }
    std::size_t n_univ = res_args.size();
    if (scrut_args.size() != n_univ || vars.size() < n_univ ||
        vars.size() - n_univ != p.tyvars.size() ||
        props.size() != p.covars.size() || fields.size() != p.vars.size()) {
      fail(FcErrorKind::PatternArityMismatch, "Pat",
           "pattern for " + p.con + " has the wrong number of binders");
    }
    TypeSubst theta;
    for (std::size_t i = 0; i < n_univ; ++i) theta[vars[i]] = scrut_args[i];
    for (std::size_t i = 0; i < p.tyvars.size(); ++i) {
      theta[vars[n_univ + i]] = ty_var(p.tyvars[i]);
    }
    std::size_t mark = env_.size();
    for (const auto& b : p.tyvars) env_.push_tyvar(b);
    for (std::size_t i = 0; i < props.size(); ++i) {
      Prop expect = subst_prop(theta, props[i]);
      if (!alpha_eq(expect, p.covars[i].second)) {
        fail(FcErrorKind::PatternArityMismatch, "Pat",
             "coercion binder " + p.covars[i].first + " annotated " +
                 dump(p.covars[i].second) + " but the constructor gives " +
                 dump(expect));
      }
      env_.push_covar(p.covars[i].first, expect);
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      TypePtr expect = subst_type(theta, fields[i]);
      if (!alpha_eq(expect, p.vars[i].second)) {
        fail(FcErrorKind::PatternArityMismatch, "Pat",
             "binder " + p.vars[i].first + " annotated " +
                 dump(p.vars[i].second) + " but the constructor gives " +
                 dump(expect));
      }
      env_.push_term(p.vars[i].first, expect);
    }
    TypePtr r = term(alt.rhs);
    env_.truncate(mark);
    return r;
  }

  // forall as bs. psis => fields -> T as
  static TypePtr telescope(TypePtr t, std::vector<std::string>& vars,
                           std::vector<Prop>& props, std::vector<TypePtr>& fields) {
    while (t->kind == Type::Kind::Forall) {
      vars.push_back(t->name);
      t = t->kids[0];
    }
    while (t->kind == Type::Kind::Qual) {
      props.push_back({t->kids[0], t->kids[1]});
      t = t->kids[2];
    }
    while (is_arrow(t)) {
      fields.push_back(arrow_dom(t));
      t = arrow_cod(t);
    }
    return t;
  }

  void decl(const Decl& d) {
    std::visit([this](const auto& x) { this->decl_impl(x); }, d);
  }

 private:
  void no_type_clash(const std::string& name, const char* rule) {
    if (env_.find(Env::Kind::TyCon, name) || env_.find(Env::Kind::Family, name)) {
      fail(FcErrorKind::DuplicateName, rule, "type name " + name + " declared twice");
    }
  }

  void decl_impl(const DataDecl& d) {
    no_type_clash(d.name, "Data");
    Env::Entry tc;
    tc.kind = Env::Kind::TyCon;
    tc.name = d.name;
    tc.arity = static_cast<int>(d.params.size());
    env_.push(tc);
    for (const auto& [k, u] : d.ctors) {
      if (env_.find(Env::Kind::DataCon, k)) {
        fail(FcErrorKind::DuplicateName, "Data",
             "data constructor " + k + " declared twice");
      }
      std::vector<std::string> vars;
      std::vector<Prop> props;
      std::vector<TypePtr> fields;
      TypePtr res = telescope(u, vars, props, fields);
      std::vector<TypePtr> res_args;
      TypePtr head = spine_head(res, &res_args);
      bool shape = head->kind == Type::Kind::Con && head->name == d.name &&
                   res_args.size() == d.params.size() &&
                   vars.size() >= d.params.size();
      for (std::size_t i = 0; shape && i < res_args.size(); ++i) {
        shape = res_args[i]->kind == Type::Kind::Var &&
                res_args[i]->name == vars[i];
      }
      if (!shape) {
        fail(FcErrorKind::MalformedDecl, "Data",
             "constructor " + k + " : " + dump(u) + " does not have the form " +
                 "forall as bs. psis => us -> " + d.name + " as");
      }
      type(u);
      Env::Entry e;
      e.kind = Env::Kind::DataCon;
      e.name = k;
      e.type = u;
      env_.push(std::move(e));
    }
  }

  void decl_impl(const FamilyDecl& f) {
    no_type_clash(f.name, "Family");
    Env::Entry e;
    e.kind = Env::Kind::Family;
    e.name = f.name;
    e.arity = f.arity;
    env_.push(std::move(e));
  }

  void decl_impl(const AxiomDecl& a) {
    if (env_.find(Env::Kind::Axiom, a.name)) {
      fail(FcErrorKind::DuplicateName, "Axiom", "axiom " + a.name + " declared twice");
    }
    const Env::Entry* f = env_.find(Env::Kind::Family, a.family);
    if (!f) {
      fail(FcErrorKind::UnknownFamily, "Axiom",
           "type family " + a.family + " is not declared");
    }
    if (f->arity != static_cast<int>(a.lhs.size())) {
      fail(FcErrorKind::ArityMismatch, "Axiom",
           "type family " + a.family + " expects " + std::to_string(f->arity) +
               " argument(s)");
    }
    std::size_t mark = env_.size();
    for (const auto& p : a.params) env_.push_tyvar(p);
    for (const auto& u : a.lhs) {
      if (!is_type_pattern(u)) {
        fail(FcErrorKind::MalformedDecl, "Axiom",
             "left-hand side argument " + dump(u) + " is not a type pattern");
      }
      type(u);
    }
    type(a.rhs);
    env_.truncate(mark);
    Env::Entry e;
    e.kind = Env::Kind::Axiom;
    e.name = a.name;
    e.params = a.params;
    e.prop = {ty_fam(a.family, a.lhs), a.rhs};
    env_.push(std::move(e));
  }

  void decl_impl(const ValueBind& v) {
    if (env_.find(Env::Kind::TermVar, v.name)) {
      fail(FcErrorKind::DuplicateName, "Value", "value " + v.name + " declared twice");
    }
    type(v.type);
    env_.push_term(v.name, v.type);
    TypePtr got = term(v.term);
    if (!alpha_eq(got, v.type)) {
      fail(FcErrorKind::DeclMismatch, "Value",
           "let " + v.name + " declared " + dump(v.type) + " but its body has type " +
               dump(got));
    }
  }

  void decl_impl(const PrimBind& p) {
    if (env_.find(Env::Kind::TermVar, p.name)) {
      fail(FcErrorKind::DuplicateName, "Prim",
           "primitive " + p.name + " declared twice");
    }
    type(p.type);
    env_.push_term(p.name, p.type);
  }

  static bool is_type_pattern(const TypePtr& t) {
    switch (t->kind) {
      case Type::Kind::Var:
      case Type::Kind::Con:
        return true;
      case Type::Kind::App:
        return is_type_pattern(t->kids[0]) && is_type_pattern(t->kids[1]);
      default:
        return false;
    }
  }

  Env env_;
};

template <typename F>
auto guarded(F f) -> Expected<decltype(f()), FcError> {
  try {
    return f();
  } catch (const Failure& e) {
    return e.err;
  }
}

}  // namespace

Expected<Unit, FcError> check_type(const Env& env, const TypePtr& t) {
  return guarded([&] {
    Checker(env).type(t);
    return Unit{};
  });
}

Expected<Unit, FcError> check_prop(const Env& env, const Prop& p) {
  return guarded([&] {
    Checker(env).prop(p);
    return Unit{};
  });
}

Expected<Prop, FcError> check_coercion(const Env& env, const CoPtr& g) {
  return guarded([&] { return Checker(env).co(g); });
}

Expected<TypePtr, FcError> check_term(const Env& env, const TermPtr& t) {
  return guarded([&] { return Checker(env).term(t); });
}

Expected<Unit, FcError> check_decl(Env& env, const Decl& d) {
  return guarded([&] {
    Checker c(env);
    c.decl(d);
    env = std::move(c.env());
    return Unit{};
  });
}

Expected<Env, FcError> check_program(const Program& p, Env env) {
  return guarded([&] {
    Checker c(std::move(env));
    for (const auto& d : p.decls) c.decl(d);
    return std::move(c.env());
  });
}

}  // namespace bidi::fc
