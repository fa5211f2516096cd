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

#include "bidi/elaborator.hpp"

#include <algorithm>
#include <functional>

namespace bidi::elab {

using core::TermPtr;
using core::TypePtr;
using engine::AnnConstraint;
using engine::AnnConstraintSet;
using engine::AnnScheme;
using engine::UsedSet;
using surface::ClassConstraint;
using surface::MonoPtr;
using surface::PolyType;
using surface::TermScheme;

namespace {

bool generated(const std::string& name) {
  return !name.empty() && name[0] == '$';
}

std::string letter_name(std::size_t i) {
  std::string base(1, static_cast<char>('a' + i % 26));
  return i < 26 ? base : base + std::to_string(i / 26);
}

std::vector<TypePtr> ty_vars(const std::vector<std::string>& names) {
  std::vector<TypePtr> out;
  for (const auto& n : names) out.push_back(core::ty_var(n));
  return out;
}

TermPtr lambdas(const AnnConstraintSet& ds, TermPtr body) {
  for (auto it = ds.rbegin(); it != ds.rend(); ++it) {
    body = core::tm_lam(it->ev, elab_ct(it->q), body);
  }
  return body;
}

void type_vars_in(const TermPtr& t, std::set<std::string>& out) {
  auto add = [&](const TypePtr& u) {
    if (!u) return;
    for (const auto& v : core::ftv(u)) out.insert(v);
  };
  add(t->type);
  add(t->prop.lhs);
  add(t->prop.rhs);
  for (const auto& k : t->kids) type_vars_in(k, out);
  for (const auto& alt : t->alts) {
    for (const auto& [x, u] : alt.pat.vars) add(u);
    type_vars_in(alt.rhs, out);
  }
}

// Unconstrained inference variables that survive solving only occur inside
// the term; any closed type can stand in for them.
TermPtr default_metavars(const TermPtr& t) {
  std::set<std::string> vars;
  type_vars_in(t, vars);
  core::TypeSubst s;
  for (const auto& v : vars) {
    if (generated(v)) s[v] = core::ty_forall("z", core::ty_var("z"));
  }
  return s.empty() ? t : core::subst_type_in_term(s, t);
}

std::string head_tag(const MonoPtr& t) {
  switch (t->kind) {
    case surface::MonoType::Kind::Var:
      return "var";
    case surface::MonoType::Kind::Arrow:
      return "Arrow";
    case surface::MonoType::Kind::Con:
      return t->name;
  }
  return "t";
}

std::string unique_name(Session& s, const std::string& base) {
  std::string name = base;
  for (int i = 2; s.used_names.count(name) != 0; ++i) {
    name = base + "_" + std::to_string(i);
  }
  s.used_names.insert(name);
  return name;
}

std::vector<ClassConstraint> constraints_of(const AnnConstraintSet& qs) {
  std::vector<ClassConstraint> out;
  for (const auto& q : qs) out.push_back(q.q);
  return out;
}

std::string display_context(const std::vector<ClassConstraint>& qs) {
  if (qs.size() == 1) return display(qs.front());
  std::string out = "(";
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (i > 0) out += ", ";
    out += display(qs[i]);
  }
  return out + ")";
}

[[noreturn]] void unify_failure(const engine::UnifyError& e, SourcePos pos) {
  using K = engine::UnifyError::Kind;
  switch (e.kind) {
    case K::Clash:
      fail(codes::kClash, ErrorFamily::Type,
           "type mismatch: cannot match '" + display(e.left) + "' with '" +
               display(e.right) + "'",
           pos);
    case K::OccursCheck:
      fail(codes::kOccurs, ErrorFamily::Type,
           "occurs check: cannot construct the infinite type " +
               display(e.left) + " ~ " + display(e.right),
           pos);
    case K::UntouchableBind:
      fail(codes::kUntouchable, ErrorFamily::Type,
           "cannot unify rigid type variable '" + display(e.left) +
               "' with '" + display(e.right) + "'",
           pos);
  }
  throw InternalError("unknown unification failure");
}

engine::TypeSubst solve_equalities(const UsedSet& untouchables,
                                   const Generated& g) {
  auto r = engine::unify(untouchables, g.eqs);
  if (r) return std::move(r).value();
  // Locate the first equality that cannot be added, for its position.
  engine::EqualitySet prefix;
  for (std::size_t i = 0; i < g.eqs.size(); ++i) {
    prefix.push_back(g.eqs[i]);
    auto p = engine::unify(untouchables, prefix);
    if (!p) unify_failure(p.error(), g.eq_pos[i]);
  }
  unify_failure(r.error(), g.eq_pos.empty() ? SourcePos{} : g.eq_pos.back());
}

engine::UsableTheory closure_for(Session& s, const UsedSet& untouchables,
                                 const engine::ProgramTheory& p) {
  if (s.mode == Mode::Bidirectional) {
    return engine::inv_sc_closure(untouchables, p, s.fresh);
  }
  return engine::sc_closure(untouchables, p, s.fresh);
}

[[noreturn]] void residual_failure(const AnnConstraintSet& residual,
                                   const AnnConstraintSet& givens,
                                   const std::string& what, SourcePos pos) {
  for (const auto& q : residual) {
    for (const auto& v : surface::free_vars(q.q.arg)) {
      if (generated(v)) {
        fail(codes::kAmbiguousType, ErrorFamily::Type,
             "ambiguous type variable '" + v.substr(1) + "' in constraint '" +
                 display(q.q) + "'" + what,
             pos);
      }
    }
  }
  std::string msg = "could not deduce " + display_context(constraints_of(residual));
  if (!givens.empty()) msg += " from " + display_context(constraints_of(givens));
  fail(codes::kResidual, ErrorFamily::Type, msg + what, pos);
}

AnnConstraintSet with_evidence(Session& s,
                               const std::vector<ClassConstraint>& qs) {
  AnnConstraintSet out;
  for (const auto& q : qs) out.push_back({s.fresh.fresh("d"), q});
  return out;
}

// ----- tuples used for instance contexts

TypePtr tuple_type(const std::vector<TypePtr>& ts) {
  if (ts.empty()) return core::ty_con("Unit");
  if (ts.size() == 1) return ts.front();
  return core::ty_apps(core::ty_con("Tup" + std::to_string(ts.size())), ts);
}

TermPtr tuple_term(const AnnConstraintSet& ds, const std::vector<TypePtr>& ts) {
  if (ds.empty()) return core::tm_con("MkUnit");
  if (ds.size() == 1) return core::tm_var(ds.front().ev);
  std::vector<TermPtr> args;
  for (const auto& d : ds) args.push_back(core::tm_var(d.ev));
  return core::tm_apps(
      core::tm_tyapps(core::tm_con("MkTup" + std::to_string(ds.size())), ts),
      args);
}

void ensure_tuple(Session& s, std::size_t width) {
  if (width == 0) {
    if (s.unit_declared) return;
    s.unit_declared = true;
    s.decls.push_back(core::DataDecl{"Unit", {}, {{"MkUnit", core::ty_con("Unit")}}});
    return;
  }
  if (width == 1 || s.tuple_widths.count(static_cast<int>(width)) != 0) return;
  s.tuple_widths.insert(static_cast<int>(width));
  std::string n = std::to_string(width);
  std::vector<std::string> params;
  for (std::size_t i = 1; i <= width; ++i) params.push_back("t" + std::to_string(i));
  TypePtr res = core::ty_apps(core::ty_con("Tup" + n), ty_vars(params));
  TypePtr k = core::ty_foralls(params, core::ty_arrows(ty_vars(params), res));
  s.decls.push_back(core::DataDecl{"Tup" + n, params, {{"MkTup" + n, k}}});
}

// case d of K_TC fields -> x_i, with the field types given.
TermPtr project(const std::string& cls, const TermPtr& scrut,
                const std::vector<TypePtr>& fields, std::size_t index,
                bool bidi,
                const std::function<TermPtr(const std::string&)>& rhs = {}) {
  core::Pattern pat;
  pat.con = dict_con(cls);
  std::vector<std::string> names;
  std::size_t s = 1;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    std::string n;
    if (bidi && i == 0) {
      n = "ctx";
    } else if (i + 1 == fields.size()) {
      n = "m";
    } else {
      n = "s" + std::to_string(s++);
    }
    pat.vars.emplace_back(n, fields[i]);
    names.push_back(n);
  }
  TermPtr body = rhs ? rhs(names[index]) : core::tm_var(names[index]);
  return core::tm_case(scrut, {{pat, body}});
}

}  // namespace

std::string display(const MonoPtr& t) {
  surface::MonoSubst s;
  for (const auto& v : surface::free_vars(t)) {
    if (generated(v)) s[v] = surface::tvar(v.substr(1));
  }
  return surface::pretty(surface::substitute(s, t));
}

std::string display(const ClassConstraint& q) {
  std::string arg = display(q.arg);
  bool atomic = q.arg->is_var() || (q.arg->is_con() && q.arg->args.empty());
  return q.cls + " " + (atomic ? arg : "(" + arg + ")");
}

// ---------------------------------------------------------------------------
// Terms

Generated gen_constraints(Session& s, surface::TypeEnv& gamma,
                          const surface::ExprPtr& e) {
  using K = surface::Expr::Kind;
  Generated out;
  switch (e->kind) {
    case K::Var: {
      const TermScheme* sc = gamma.lookup(e->name);
      if (!sc) {
        fail(codes::kUnboundVar, ErrorFamily::Type,
             "variable '" + e->name + "' is not in scope", e->pos);
      }
      surface::MonoSubst inst;
      TermPtr t = core::tm_var(e->name);
      for (const auto& layer : sc->layers) {
        for (const auto& v : layer.vars) {
          std::string b = s.fresh.fresh("a");
          inst[v] = surface::tvar(b);
          t = core::tm_tyapp(t, core::ty_var(b));
        }
        for (const auto& c : layer.context) {
          AnnConstraint w{s.fresh.fresh("d"), surface::substitute(inst, c)};
          t = core::tm_app(t, core::tm_var(w.ev));
          out.wanted.push_back(std::move(w));
        }
      }
      out.type = surface::substitute(inst, sc->body);
      out.term = t;
      return out;
    }
    case K::Lam: {
      std::string a = s.fresh.fresh("a");
      std::size_t mark = gamma.size();
      gamma.push_term(e->name, TermScheme::mono(surface::tvar(a)));
      Generated body = gen_constraints(s, gamma, e->kids[0]);
      gamma.truncate(mark);
      body.type = surface::arrow(surface::tvar(a), body.type);
      body.term = core::tm_lam(e->name, core::ty_var(a), body.term);
      return body;
    }
    case K::App: {
      Generated f = gen_constraints(s, gamma, e->kids[0]);
      Generated x = gen_constraints(s, gamma, e->kids[1]);
      std::string a = s.fresh.fresh("a");
      out.type = surface::tvar(a);
      out.term = core::tm_app(f.term, x.term);
      out.wanted = std::move(f.wanted);
      out.wanted.insert(out.wanted.end(), x.wanted.begin(), x.wanted.end());
      out.eqs = std::move(f.eqs);
      out.eqs.insert(out.eqs.end(), x.eqs.begin(), x.eqs.end());
      out.eq_pos = std::move(f.eq_pos);
      out.eq_pos.insert(out.eq_pos.end(), x.eq_pos.begin(), x.eq_pos.end());
      out.eqs.emplace_back(f.type, surface::arrow(x.type, out.type));
      out.eq_pos.push_back(e->pos);
      return out;
    }
    case K::Let: {
      std::string a = s.fresh.fresh("a");
      std::size_t mark = gamma.size();
      gamma.push_term(e->name, TermScheme::mono(surface::tvar(a)));
      Generated b = gen_constraints(s, gamma, e->kids[0]);
      gamma.truncate(mark);
      gamma.push_term(e->name, TermScheme::mono(b.type));
      Generated r = gen_constraints(s, gamma, e->kids[1]);
      gamma.truncate(mark);
      out.type = r.type;
      out.term = core::tm_let(e->name, elab_ty(b.type), b.term, r.term);
      out.wanted = std::move(b.wanted);
      out.wanted.insert(out.wanted.end(), r.wanted.begin(), r.wanted.end());
      out.eqs = std::move(b.eqs);
      out.eqs.insert(out.eqs.end(), r.eqs.begin(), r.eqs.end());
      out.eq_pos = std::move(b.eq_pos);
      out.eq_pos.insert(out.eq_pos.end(), r.eq_pos.begin(), r.eq_pos.end());
      out.eqs.emplace_back(surface::tvar(a), b.type);
      out.eq_pos.push_back(e->pos);
      return out;
    }
  }
  throw InternalError("unknown expression form");
}

TermPtr check_subsumes(Session& s, const UsedSet& untouchables,
                       const engine::ProgramTheory& p, surface::TypeEnv& gamma,
                       const surface::ExprPtr& e, const PolyType& sigma,
                       SourcePos pos) {
  UsedSet rigid = untouchables;
  rigid.insert(sigma.vars.begin(), sigma.vars.end());
  std::size_t mark = gamma.size();
  for (const auto& v : sigma.vars) gamma.push_type_var(v);
  Generated g = gen_constraints(s, gamma, e);
  gamma.truncate(mark);
  g.eqs.emplace_back(g.type, sigma.body.body);
  g.eq_pos.push_back(e->pos);
  engine::TypeSubst theta = solve_equalities(rigid, g);

  AnnConstraintSet givens = with_evidence(s, sigma.body.context);
  engine::ProgramTheory local = p.with_locals(givens);
  engine::UsableTheory usable = closure_for(s, untouchables, local);
  engine::Simplified r = engine::simplify_all(rigid, usable.axioms,
                                              theta.apply(g.wanted), s.fresh);
  if (!r.residual.empty()) residual_failure(r.residual, local.local, "", pos);

  TermPtr body = usable.ctx.wrap(r.eta.apply(theta.apply(g.term)));
  return default_metavars(core::tm_tylams(sigma.vars, lambdas(givens, body)));
}

// ---------------------------------------------------------------------------
// Declarations

void elab_data(Session& s, const surface::DataDecl& d) {
  std::vector<std::string> params;
  for (int i = 0; i < d.arity; ++i) params.push_back(letter_name(static_cast<std::size_t>(i)));
  s.decls.push_back(core::DataDecl{d.name, params, {}});
}

void elab_prim(Session& s, const surface::PrimDecl& p) {
  s.decls.push_back(core::PrimBind{p.name, elab_ty(p.sig)});
  s.gamma.push_term(p.name, TermScheme::from_poly(p.sig));
}

void elab_class(Session& s, const surface::ClassDecl& c) {
  bool bidi = s.mode == Mode::Bidirectional;
  const std::string& a = c.var;
  ClassInfo info{c, {}, {}};
  if (bidi) {
    s.decls.push_back(core::FamilyDecl{family_name(c.name), 1});
    info.fields.push_back(core::ty_fam(family_name(c.name), {core::ty_var(a)}));
  }
  for (const auto& q : c.supers) info.fields.push_back(elab_ct(q));
  TypePtr method_ty = elab_ty(c.method_sig);
  info.fields.push_back(method_ty);

  TypePtr dict = core::ty_app(core::ty_con(dict_tycon(c.name)), core::ty_var(a));
  s.decls.push_back(core::DataDecl{
      dict_tycon(c.name),
      {a},
      {{dict_con(c.name),
        core::ty_forall(a, core::ty_arrows(info.fields, dict))}}});

  std::size_t offset = bidi ? 1 : 0;
  auto projection = [&](const std::string& name, std::size_t index,
                        const TypePtr& result) {
    TermPtr body = project(c.name, core::tm_var("d"), info.fields, index, bidi);
    s.decls.push_back(core::ValueBind{
        name, core::ty_forall(a, core::ty_arrow(dict, result)),
        core::tm_tylam(a, core::tm_lam("d", dict, body))});
  };
  for (std::size_t i = 0; i < c.supers.size(); ++i) {
    std::string name =
        unique_name(s, "$sc_" + c.name + "_" + std::to_string(i + 1));
    info.super_projs.push_back(name);
    projection(name, offset + i, info.fields[offset + i]);
    s.theory.superclass.push_back(
        {name, {{a}, {{c.name, surface::tvar(a)}}, c.supers[i]}});
  }
  projection(c.method, info.fields.size() - 1, method_ty);

  TermScheme method;
  method.layers.push_back({{a}, {{c.name, surface::tvar(a)}}});
  if (!c.method_sig.vars.empty() || !c.method_sig.body.context.empty()) {
    method.layers.push_back({c.method_sig.vars, c.method_sig.body.context});
  }
  method.body = c.method_sig.body.body;
  s.gamma.push_term(c.method, method);
  s.classes[c.name] = std::move(info);
}

namespace {

// case ctx |> g bs of (c1, .., cm) -> c_i
TermPtr inversion_rhs(const std::string& ctx, const std::string& axiom,
                      const std::vector<std::string>& vars,
                      const std::vector<TypePtr>& ctx_types, std::size_t index) {
  TermPtr cast =
      core::tm_cast(core::tm_var(ctx), core::co_axiom(axiom, ty_vars(vars)));
  if (ctx_types.size() == 1) return cast;
  core::Pattern pat;
  pat.con = "MkTup" + std::to_string(ctx_types.size());
  for (std::size_t i = 0; i < ctx_types.size(); ++i) {
    pat.vars.emplace_back("c" + std::to_string(i + 1), ctx_types[i]);
  }
  return core::tm_case(cast,
                       {{pat, core::tm_var("c" + std::to_string(index + 1))}});
}

}  // namespace

void elab_instance(Session& s, const surface::InstanceDecl& ins) {
  auto it = s.classes.find(ins.cls);
  if (it == s.classes.end()) {
    fail(codes::kUnknownClass, ErrorFamily::Type,
         "class '" + ins.cls + "' is not declared", ins.pos);
  }
  const ClassInfo& info = it->second;
  const surface::ClassDecl& cd = info.decl;
  bool bidi = s.mode == Mode::Bidirectional;

  UsedSet rigid(ins.vars.begin(), ins.vars.end());
  TypePtr head = elab_ty(ins.head);
  std::string tag = head_tag(ins.head);
  AnnConstraintSet ctx = with_evidence(s, ins.context);
  std::vector<TypePtr> ctx_types;
  for (const auto& q : ins.context) ctx_types.push_back(elab_ct(q));

  std::string transformer = unique_name(s, "$i_" + ins.cls + "_" + tag);
  AnnScheme scheme{transformer, {ins.vars, ins.context, ins.head_constraint()}};
  engine::ProgramTheory pi = s.theory.with_locals(ctx);

  std::string given_text =
      ins.context.empty() ? "" : " from " + display_context(ins.context);
  std::string what = " in the instance " + display(ins.head_constraint());

  // Superclass obligations.
  surface::MonoSubst a_tau{{cd.var, ins.head}};
  std::vector<ClassConstraint> supers;
  for (const auto& q : cd.supers) supers.push_back(surface::substitute(a_tau, q));
  AnnConstraintSet sup_wanted = with_evidence(s, supers);
  engine::UsableTheory usable = closure_for(s, rigid, pi);
  engine::Simplified sup =
      engine::simplify_all(rigid, usable.axioms, sup_wanted, s.fresh);
  if (!sup.residual.empty()) {
    fail(codes::kResidual, ErrorFamily::Type,
         "could not deduce superclass " +
             display_context(constraints_of(sup.residual)) + given_text + what,
         ins.pos);
  }

  // Method.
  PolyType sigma = surface::substitute(a_tau, cd.method_sig);
  std::size_t mark = s.gamma.size();
  for (const auto& b : ins.vars) s.gamma.push_type_var(b);
  TermPtr method;
  try {
    method = check_subsumes(s, rigid, pi.with_instance(scheme), s.gamma,
                            ins.body, sigma, ins.pos);
  } catch (...) {
    s.gamma.truncate(mark);
    throw;
  }
  s.gamma.truncate(mark);

  std::string axiom = "$g_" + ins.cls + "_" + tag;
  if (bidi) {
    axiom = unique_name(s, axiom);
    ensure_tuple(s, ins.context.size());
    s.decls.push_back(core::AxiomDecl{axiom, ins.vars, family_name(ins.cls),
                                      {head}, tuple_type(ctx_types)});
  }

  std::vector<TermPtr> fields;
  if (bidi) {
    fields.push_back(core::tm_cast(
        tuple_term(ctx, ctx_types),
        core::co_sym(core::co_axiom(axiom, ty_vars(ins.vars)))));
  }
  for (const auto& w : sup_wanted) {
    fields.push_back(sup.eta.apply(core::tm_var(w.ev)));
  }
  fields.push_back(method);
  TermPtr dict = core::tm_apps(
      core::tm_tyapp(core::tm_con(dict_con(ins.cls)), head), fields);
  TermPtr body = usable.ctx.wrap(dict);
  for (std::size_t i = ctx.size(); i-- > 0;) {
    body = core::tm_lam(ctx[i].ev, ctx_types[i], body);
  }
  TypePtr dict_ty = core::ty_app(core::ty_con(dict_tycon(ins.cls)), head);
  s.decls.push_back(core::ValueBind{
      transformer, core::ty_foralls(ins.vars, core::ty_arrows(ctx_types, dict_ty)),
      core::tm_tylams(ins.vars, body)});
  s.theory.instance.push_back(scheme);

  if (!bidi) return;
  std::vector<TypePtr> inst_fields;
  core::TypeSubst a_head{{cd.var, head}};
  for (const auto& f : info.fields) inst_fields.push_back(core::subst_type(a_head, f));
  for (std::size_t i = 0; i < ins.context.size(); ++i) {
    std::string name = unique_name(
        s, "$inv_" + ins.cls + "_" + tag + "_" + std::to_string(i + 1));
    TermPtr proj = project(
        ins.cls, core::tm_var("d"), inst_fields, 0, true,
        [&](const std::string& c) {
          return inversion_rhs(c, axiom, ins.vars, ctx_types, i);
        });
    s.decls.push_back(core::ValueBind{
        name,
        core::ty_foralls(ins.vars, core::ty_arrow(dict_ty, ctx_types[i])),
        core::tm_tylams(ins.vars, core::tm_lam("d", dict_ty, proj))});
    s.theory.inverted.push_back(
        {name, {ins.vars, {ins.head_constraint()}, ins.context[i]}});
  }
}

void elab_value(Session& s, const surface::ValDecl& v) {
  if (v.sig) {
    s.gamma.push_term(v.name, TermScheme::from_poly(*v.sig));
    TermPtr t = check_subsumes(s, {}, s.theory, s.gamma, v.body, *v.sig, v.pos);
    s.decls.push_back(core::ValueBind{v.name, elab_ty(*v.sig), t});
    s.signatures.push_back({v.name, *v.sig, true});
    return;
  }

  std::string b = s.fresh.fresh("a");
  std::size_t mark = s.gamma.size();
  s.gamma.push_term(v.name, TermScheme::mono(surface::tvar(b)));
  Generated g;
  try {
    g = gen_constraints(s, s.gamma, v.body);
  } catch (...) {
    s.gamma.truncate(mark);
    throw;
  }
  s.gamma.truncate(mark);
  g.eqs.emplace_back(surface::tvar(b), g.type);
  g.eq_pos.push_back(v.body->pos);
  engine::TypeSubst theta = solve_equalities({}, g);

  MonoPtr tau = theta.apply(g.type);
  AnnConstraintSet wanted = theta.apply(g.wanted);
  std::vector<std::string> abar;
  surface::free_vars(tau, abar);
  for (const auto& w : wanted) surface::free_vars(w.q.arg, abar);
  UsedSet rigid(abar.begin(), abar.end());
  engine::AnnAxiomSet axioms = s.theory.instance;
  for (auto& l : engine::as_axioms(s.theory.local)) axioms.push_back(std::move(l));
  engine::Simplified r = engine::simplify_all(rigid, axioms, wanted, s.fresh);

  for (const auto& q : r.residual) {
    for (const auto& x : surface::free_vars(q.q.arg)) {
      if (!surface::occurs(x, tau)) {
        fail(codes::kAmbiguousType, ErrorFamily::Type,
             "ambiguous type variable '" + x.substr(1) + "' in constraint '" +
                 display(q.q) + "' inferred for '" + v.name +
                 "' (the variable does not occur in the type; rejected by the strict "
                 "ambiguity check)",
             v.pos);
      }
    }
  }

  std::vector<std::string> gen_vars = surface::free_vars(tau);
  surface::MonoSubst rename;
  core::TypeSubst core_rename;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < gen_vars.size(); ++i) {
    names.push_back(letter_name(i));
    rename[gen_vars[i]] = surface::tvar(names.back());
    core_rename[gen_vars[i]] = core::ty_var(names.back());
  }
  AnnConstraintSet residual;
  for (const auto& q : r.residual) {
    residual.push_back({q.ev, surface::substitute(rename, q.q)});
  }
  PolyType poly{names, {constraints_of(residual), surface::substitute(rename, tau)}};

  TermPtr t = r.eta.apply(theta.apply(g.term));
  t = core::subst_type_in_term(core_rename, t);
  std::vector<TermPtr> dict_args;
  for (const auto& q : residual) dict_args.push_back(core::tm_var(q.ev));
  TermPtr self =
      core::tm_apps(core::tm_tyapps(core::tm_var(v.name), ty_vars(names)), dict_args);
  t = core::subst_term({{v.name, self}}, t);
  t = default_metavars(t);
  t = core::tm_tylams(names, lambdas(residual, t));

  s.decls.push_back(core::ValueBind{v.name, elab_ty(poly), t});
  s.gamma.push_term(v.name, TermScheme::from_poly(poly));
  s.signatures.push_back({v.name, poly, false});
}

ElabResult elab_program(const surface::SourceProgram& src, Mode mode,
                        bool keep_going) {
  Session s(mode);
  ElabResult out;
  for (const auto& d : src.decls) {
    try {
      std::visit(
          [&](const auto& decl) {
            using T = std::decay_t<decltype(decl)>;
            if constexpr (std::is_same_v<T, surface::ClassDecl>) {
              elab_class(s, decl);
            } else if constexpr (std::is_same_v<T, surface::InstanceDecl>) {
              elab_instance(s, decl);
            } else if constexpr (std::is_same_v<T, surface::DataDecl>) {
              elab_data(s, decl);
            } else if constexpr (std::is_same_v<T, surface::PrimDecl>) {
              elab_prim(s, decl);
            } else {
              elab_value(s, decl);
            }
          },
          d);
    } catch (const CompileError& e) {
      Diagnostic diag = e.diagnostic();
      if (diag.pos.line == 0) diag.pos = surface::pos_of(d);
      out.diagnostics.push_back(std::move(diag));
      if (!keep_going) break;
      if (auto ins = std::get_if<surface::InstanceDecl>(&d)) {
        s.theory.instance.push_back({s.fresh.fresh("failed"),
                                     {ins->vars, ins->context, ins->head_constraint()}});
      } else if (auto v = std::get_if<surface::ValDecl>(&d)) {
        PolyType any{{"a"}, {{}, surface::tvar("a")}};
        s.gamma.push_term(v->name, TermScheme::from_poly(v->sig ? *v->sig : any));
      }
    }
  }
  out.program.decls = std::move(s.decls);
  out.signatures = std::move(s.signatures);
  out.theory = std::move(s.theory);
  return out;
}

std::string dump_theory(const engine::ProgramTheory& p) {
  std::string out;
  auto section = [&](const char* title, const engine::AnnAxiomSet& a) {
    out += title;
    out += ":\n";
    for (const auto& s : a) out += "  " + engine::show(s) + "\n";
  };
  section("A_B", p.inverted);
  section("A_S", p.superclass);
  section("A_I", p.instance);
  return out;
}

}  // namespace bidi::elab
