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

#include "bidi/core.hpp"

#include <algorithm>

namespace bidi::core {

namespace {

TypePtr mk(Type::Kind k, std::string name, std::vector<TypePtr> kids) {
  return std::make_shared<Type>(Type{k, std::move(name), std::move(kids)});
}

CoPtr mkco(Coercion::Kind k, std::string name, std::vector<TypePtr> types,
           std::vector<CoPtr> kids) {
  return std::make_shared<Coercion>(
      Coercion{k, std::move(name), std::move(types), std::move(kids)});
}

TermPtr mktm(Term t) { return std::make_shared<Term>(std::move(t)); }

Term blank(Term::Kind k) {
  Term t;
  t.kind = k;
  return t;
}

}  // namespace

TypePtr ty_var(std::string a) { return mk(Type::Kind::Var, std::move(a), {}); }
TypePtr ty_con(std::string t) { return mk(Type::Kind::Con, std::move(t), {}); }
TypePtr ty_app(TypePtr f, TypePtr x) {
  return mk(Type::Kind::App, "", {std::move(f), std::move(x)});
}
TypePtr ty_apps(TypePtr f, const std::vector<TypePtr>& xs) {
  for (const auto& x : xs) f = ty_app(f, x);
  return f;
}
TypePtr ty_forall(std::string a, TypePtr body) {
  return mk(Type::Kind::Forall, std::move(a), {std::move(body)});
}
TypePtr ty_foralls(const std::vector<std::string>& as, TypePtr body) {
  for (auto it = as.rbegin(); it != as.rend(); ++it) body = ty_forall(*it, body);
  return body;
}
TypePtr ty_fam(std::string f, std::vector<TypePtr> args) {
  return mk(Type::Kind::Fam, std::move(f), std::move(args));
}
TypePtr ty_arrow(TypePtr dom, TypePtr cod) {
  return ty_app(ty_app(ty_con(kArrow), std::move(dom)), std::move(cod));
}
TypePtr ty_arrows(const std::vector<TypePtr>& doms, TypePtr cod) {
  for (auto it = doms.rbegin(); it != doms.rend(); ++it) cod = ty_arrow(*it, cod);
  return cod;
}
TypePtr ty_qual(const Prop& psi, TypePtr body) {
  return mk(Type::Kind::Qual, "", {psi.lhs, psi.rhs, std::move(body)});
}

bool is_arrow(const TypePtr& t) {
  if (t->kind != Type::Kind::App) return false;
  const TypePtr& f = t->kids[0];
  return f->kind == Type::Kind::App && f->kids[0]->kind == Type::Kind::Con &&
         f->kids[0]->name == kArrow;
}
const TypePtr& arrow_dom(const TypePtr& t) { return t->kids[0]->kids[1]; }
const TypePtr& arrow_cod(const TypePtr& t) { return t->kids[1]; }

TypePtr spine_head(const TypePtr& t, std::vector<TypePtr>* args) {
  TypePtr cur = t;
  std::vector<TypePtr> rev;
  while (cur->kind == Type::Kind::App) {
    rev.push_back(cur->kids[1]);
    cur = cur->kids[0];
  }
  if (args) args->assign(rev.rbegin(), rev.rend());
  return cur;
}

CoPtr co_refl(TypePtr t) { return mkco(Coercion::Kind::Refl, "", {std::move(t)}, {}); }
CoPtr co_sym(CoPtr g) { return mkco(Coercion::Kind::Sym, "", {}, {std::move(g)}); }
CoPtr co_trans(CoPtr g1, CoPtr g2) {
  return mkco(Coercion::Kind::Trans, "", {}, {std::move(g1), std::move(g2)});
}
CoPtr co_app(CoPtr g1, CoPtr g2) {
  return mkco(Coercion::Kind::App, "", {}, {std::move(g1), std::move(g2)});
}
CoPtr co_left(CoPtr g) { return mkco(Coercion::Kind::Left, "", {}, {std::move(g)}); }
CoPtr co_right(CoPtr g) { return mkco(Coercion::Kind::Right, "", {}, {std::move(g)}); }
CoPtr co_fam(std::string f, std::vector<CoPtr> gs) {
  return mkco(Coercion::Kind::Fam, std::move(f), {}, std::move(gs));
}
CoPtr co_forall(std::string a, CoPtr g) {
  return mkco(Coercion::Kind::Forall, std::move(a), {}, {std::move(g)});
}
CoPtr co_inst(CoPtr g1, CoPtr g2) {
  return mkco(Coercion::Kind::Inst, "", {}, {std::move(g1), std::move(g2)});
}
CoPtr co_qual(const Prop& psi, CoPtr g) {
  return mkco(Coercion::Kind::Qual, "", {psi.lhs, psi.rhs}, {std::move(g)});
}
CoPtr co_qinst(CoPtr g1, CoPtr g2) {
  return mkco(Coercion::Kind::QualInst, "", {}, {std::move(g1), std::move(g2)});
}
CoPtr co_axiom(std::string g, std::vector<TypePtr> args) {
  return mkco(Coercion::Kind::Axiom, std::move(g), std::move(args), {});
}
CoPtr co_var(std::string w) { return mkco(Coercion::Kind::Var, std::move(w), {}, {}); }

TermPtr tm_var(std::string x) {
  Term t = blank(Term::Kind::Var);
  t.name = std::move(x);
  return mktm(std::move(t));
}
TermPtr tm_con(std::string k) {
  Term t = blank(Term::Kind::Con);
  t.name = std::move(k);
  return mktm(std::move(t));
}
TermPtr tm_tylam(std::string a, TermPtr body) {
  Term t = blank(Term::Kind::TyLam);
  t.name = std::move(a);
  t.kids = {std::move(body)};
  return mktm(std::move(t));
}
TermPtr tm_tylams(const std::vector<std::string>& as, TermPtr body) {
  for (auto it = as.rbegin(); it != as.rend(); ++it) body = tm_tylam(*it, body);
  return body;
}
TermPtr tm_tyapp(TermPtr f, TypePtr u) {
  Term t = blank(Term::Kind::TyApp);
  t.type = std::move(u);
  t.kids = {std::move(f)};
  return mktm(std::move(t));
}
TermPtr tm_tyapps(TermPtr t, const std::vector<TypePtr>& us) {
  for (const auto& u : us) t = tm_tyapp(t, u);
  return t;
}
TermPtr tm_lam(std::string x, TypePtr u, TermPtr body) {
  Term t = blank(Term::Kind::Lam);
  t.name = std::move(x);
  t.type = std::move(u);
  t.kids = {std::move(body)};
  return mktm(std::move(t));
}
TermPtr tm_app(TermPtr f, TermPtr x) {
  Term t = blank(Term::Kind::App);
  t.kids = {std::move(f), std::move(x)};
  return mktm(std::move(t));
}
TermPtr tm_apps(TermPtr f, const std::vector<TermPtr>& xs) {
  for (const auto& x : xs) f = tm_app(f, x);
  return f;
}
TermPtr tm_colam(std::string w, const Prop& psi, TermPtr body) {
  Term t = blank(Term::Kind::CoLam);
  t.name = std::move(w);
  t.prop = psi;
  t.kids = {std::move(body)};
  return mktm(std::move(t));
}
TermPtr tm_coapp(TermPtr f, CoPtr g) {
  Term t = blank(Term::Kind::CoApp);
  t.co = std::move(g);
  t.kids = {std::move(f)};
  return mktm(std::move(t));
}
TermPtr tm_cast(TermPtr e, CoPtr g) {
  Term t = blank(Term::Kind::Cast);
  t.co = std::move(g);
  t.kids = {std::move(e)};
  return mktm(std::move(t));
}
TermPtr tm_case(TermPtr scrut, std::vector<Alt> alts) {
  Term t = blank(Term::Kind::Case);
  t.kids = {std::move(scrut)};
  t.alts = std::move(alts);
  return mktm(std::move(t));
}
TermPtr tm_let(std::string x, TypePtr u, TermPtr bound, TermPtr body) {
  Term t = blank(Term::Kind::Let);
  t.name = std::move(x);
  t.type = std::move(u);
  t.kids = {std::move(bound), std::move(body)};
  return mktm(std::move(t));
}
TermPtr tm_int(std::int64_t v) {
  Term t = blank(Term::Kind::Lit);
  t.lit = {Lit::Kind::Int, v};
  return mktm(std::move(t));
}
TermPtr tm_bool(bool v) {
  Term t = blank(Term::Kind::Lit);
  t.lit = {Lit::Kind::Bool, v ? 1 : 0};
  return mktm(std::move(t));
}

const std::string& decl_name(const Decl& d) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, d);
}

Env Env::initial() {
  Env e;
  Entry arrow;
  arrow.kind = Kind::TyCon;
  arrow.name = kArrow;
  arrow.arity = 2;
  e.push(std::move(arrow));
  return e;
}

void Env::push(Entry e) { entries_.push_back(std::move(e)); }

void Env::push_tyvar(const std::string& a) {
  Entry e;
  e.kind = Kind::TyVar;
  e.name = a;
  entries_.push_back(std::move(e));
}

void Env::push_term(const std::string& x, TypePtr u) {
  Entry e;
  e.kind = Kind::TermVar;
  e.name = x;
  e.type = std::move(u);
  entries_.push_back(std::move(e));
}

void Env::push_covar(const std::string& w, const Prop& psi) {
  Entry e;
  e.kind = Kind::CoVar;
  e.name = w;
  e.prop = psi;
  entries_.push_back(std::move(e));
}

const Env::Entry* Env::find(Kind kind, const std::string& name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->kind == kind && it->name == name) return &*it;
  }
  return nullptr;
}

// Free-variable collection.

namespace {

using NameSet = std::set<std::string>;

void collect_ftv(const TypePtr& t, std::vector<std::string>& bound,
                 std::vector<std::string>& out) {
  switch (t->kind) {
    case Type::Kind::Var:
      if (std::find(bound.begin(), bound.end(), t->name) == bound.end() &&
          std::find(out.begin(), out.end(), t->name) == out.end()) {
        out.push_back(t->name);
      }
      return;
    case Type::Kind::Con:
      return;
    case Type::Kind::Forall:
      bound.push_back(t->name);
      collect_ftv(t->kids[0], bound, out);
      bound.pop_back();
      return;
    default:
      for (const auto& k : t->kids) collect_ftv(k, bound, out);
  }
}

void ftv_co(const CoPtr& g, std::vector<std::string>& bound,
            std::vector<std::string>& out) {
  for (const auto& t : g->types) collect_ftv(t, bound, out);
  if (g->kind == Coercion::Kind::Forall) bound.push_back(g->name);
  for (const auto& k : g->kids) ftv_co(k, bound, out);
  if (g->kind == Coercion::Kind::Forall) bound.pop_back();
}

void ftv_term(const TermPtr& t, std::vector<std::string>& bound,
              std::vector<std::string>& out) {
  if (t->type) collect_ftv(t->type, bound, out);
  if (t->kind == Term::Kind::CoLam) {
    collect_ftv(t->prop.lhs, bound, out);
    collect_ftv(t->prop.rhs, bound, out);
  }
  if (t->co) ftv_co(t->co, bound, out);
  if (t->kind == Term::Kind::TyLam) bound.push_back(t->name);
  for (const auto& k : t->kids) ftv_term(k, bound, out);
  if (t->kind == Term::Kind::TyLam) bound.pop_back();
  for (const auto& alt : t->alts) {
    std::size_t mark = bound.size();
    for (const auto& b : alt.pat.tyvars) bound.push_back(b);
    for (const auto& [w, psi] : alt.pat.covars) {
      collect_ftv(psi.lhs, bound, out);
      collect_ftv(psi.rhs, bound, out);
    }
    for (const auto& [x, u] : alt.pat.vars) collect_ftv(u, bound, out);
    ftv_term(alt.rhs, bound, out);
    bound.resize(mark);
  }
}

void fv_term(const TermPtr& t, NameSet& bound, NameSet& out) {
  switch (t->kind) {
    case Term::Kind::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case Term::Kind::Lam:
    case Term::Kind::Let: {
      bool added = bound.insert(t->name).second;
      for (const auto& k : t->kids) fv_term(k, bound, out);
      if (added) bound.erase(t->name);
      return;
    }
    default:
      break;
  }
  for (const auto& k : t->kids) fv_term(k, bound, out);
  for (const auto& alt : t->alts) {
    NameSet inner = bound;
    for (const auto& [x, u] : alt.pat.vars) inner.insert(x);
    fv_term(alt.rhs, inner, out);
  }
}

std::vector<std::string> term_ftv(const TermPtr& t) {
  std::vector<std::string> bound, out;
  ftv_term(t, bound, out);
  return out;
}

std::vector<std::string> co_ftv(const CoPtr& g) {
  std::vector<std::string> bound, out;
  ftv_co(g, bound, out);
  return out;
}

NameSet term_fv(const TermPtr& t) {
  NameSet bound, out;
  fv_term(t, bound, out);
  return out;
}

// Restricts `s` to keys free in a body with free variables `body_fvs`, and
// decides whether binder `a` must be renamed. Returns the substitution to use
// under the binder and the (possibly renamed) binder.
template <typename Subst, typename FreeOfRange, typename Rename>
std::pair<Subst, std::string> under_binder(const Subst& s, const std::string& a,
                                           const std::vector<std::string>& body_fvs,
                                           FreeOfRange free_of_range,
                                           Rename rename) {
  Subst inner;
  NameSet range;
  for (const auto& v : body_fvs) {
    if (v == a) continue;
    auto it = s.find(v);
    if (it == s.end()) continue;
    inner.emplace(v, it->second);
    free_of_range(it->second, range);
  }
  if (!range.count(a)) return {std::move(inner), a};
  NameSet taken = range;
  taken.insert(body_fvs.begin(), body_fvs.end());
  taken.insert(a);
  std::string fresh = prime_away(a, taken);
  inner[a] = rename(fresh);
  return {std::move(inner), fresh};
}

void type_range(const TypePtr& t, NameSet& out) {
  for (auto& v : ftv(t)) out.insert(v);
}

}  // namespace

std::string prime_away(const std::string& base, const std::set<std::string>& taken) {
  std::string out = base;
  while (taken.count(out)) out += "'";
  return out;
}

void ftv(const TypePtr& t, std::vector<std::string>& out) {
  std::vector<std::string> bound;
  collect_ftv(t, bound, out);
}

std::vector<std::string> ftv(const TypePtr& t) {
  std::vector<std::string> out;
  ftv(t, out);
  return out;
}

bool occurs_free(const std::string& a, const TypePtr& t) {
  auto fvs = ftv(t);
  return std::find(fvs.begin(), fvs.end(), a) != fvs.end();
}

TypePtr subst_type(const TypeSubst& s, const TypePtr& t) {
  if (s.empty()) return t;
  switch (t->kind) {
    case Type::Kind::Var: {
      auto it = s.find(t->name);
      return it == s.end() ? t : it->second;
    }
    case Type::Kind::Con:
      return t;
    case Type::Kind::Forall: {
      auto [inner, b] = under_binder(s, t->name, ftv(t->kids[0]), type_range,
                                     [](const std::string& n) { return ty_var(n); });
      if (inner.empty()) return t;
      return ty_forall(b, subst_type(inner, t->kids[0]));
    }
    default: {
      std::vector<TypePtr> kids;
      bool changed = false;
      for (const auto& k : t->kids) {
        kids.push_back(subst_type(s, k));
        changed = changed || kids.back() != k;
      }
      if (!changed) return t;
      return mk(t->kind, t->name, std::move(kids));
    }
  }
}

Prop subst_prop(const TypeSubst& s, const Prop& p) {
  return {subst_type(s, p.lhs), subst_type(s, p.rhs)};
}

CoPtr subst_type_in_co(const TypeSubst& s, const CoPtr& g) {
  if (s.empty()) return g;
  if (g->kind == Coercion::Kind::Forall) {
    auto [inner, b] = under_binder(s, g->name, co_ftv(g->kids[0]), type_range,
                                   [](const std::string& n) { return ty_var(n); });
    if (inner.empty()) return g;
    return co_forall(b, subst_type_in_co(inner, g->kids[0]));
  }
  std::vector<TypePtr> types;
  for (const auto& t : g->types) types.push_back(subst_type(s, t));
  std::vector<CoPtr> kids;
  for (const auto& k : g->kids) kids.push_back(subst_type_in_co(s, k));
  return mkco(g->kind, g->name, std::move(types), std::move(kids));
}

namespace {

Alt subst_type_in_alt(const TypeSubst& s, const Alt& alt) {
  Alt out = alt;
  TypeSubst cur = s;
  for (const auto& b : out.pat.tyvars) cur.erase(b);
  if (cur.empty()) return out;
  NameSet range;
  for (const auto& [k, v] : cur) type_range(v, range);
  for (auto& b : out.pat.tyvars) {
    if (!range.count(b)) continue;
    std::vector<std::string> bound, body_fvs;
    for (const auto& [w, psi] : out.pat.covars) {
      collect_ftv(psi.lhs, bound, body_fvs);
      collect_ftv(psi.rhs, bound, body_fvs);
    }
    for (const auto& [x, u] : out.pat.vars) collect_ftv(u, bound, body_fvs);
    ftv_term(out.rhs, bound, body_fvs);
    NameSet taken = range;
    taken.insert(body_fvs.begin(), body_fvs.end());
    taken.insert(out.pat.tyvars.begin(), out.pat.tyvars.end());
    std::string nb = prime_away(b, taken);
    TypeSubst ren = {{b, ty_var(nb)}};
    for (auto& [w, psi] : out.pat.covars) psi = subst_prop(ren, psi);
    for (auto& [x, u] : out.pat.vars) u = subst_type(ren, u);
    out.rhs = subst_type_in_term(ren, out.rhs);
    b = nb;
  }
  for (auto& [w, psi] : out.pat.covars) psi = subst_prop(cur, psi);
  for (auto& [x, u] : out.pat.vars) u = subst_type(cur, u);
  out.rhs = subst_type_in_term(cur, out.rhs);
  return out;
}

}  // namespace

TermPtr subst_type_in_term(const TypeSubst& s, const TermPtr& t) {
  if (s.empty()) return t;
  if (t->kind == Term::Kind::TyLam) {
    auto [inner, b] = under_binder(s, t->name, term_ftv(t->kids[0]), type_range,
                                   [](const std::string& n) { return ty_var(n); });
    if (inner.empty()) return t;
    return tm_tylam(b, subst_type_in_term(inner, t->kids[0]));
  }
  Term out = *t;
  if (out.type) out.type = subst_type(s, out.type);
  if (out.kind == Term::Kind::CoLam) out.prop = subst_prop(s, out.prop);
  if (out.co) out.co = subst_type_in_co(s, out.co);
  for (auto& k : out.kids) k = subst_type_in_term(s, k);
  for (auto& alt : out.alts) alt = subst_type_in_alt(s, alt);
  return mktm(std::move(out));
}

namespace {

void term_range(const TermPtr& t, NameSet& out) {
  for (const auto& v : term_fv(t)) out.insert(v);
}

// Renames type binders of `t` that would capture type variables free in the
// range of `s`.
bool type_capture_risk(const TermSubst& s, const std::string& a) {
  for (const auto& [k, v] : s) {
    auto fvs = term_ftv(v);
    if (std::find(fvs.begin(), fvs.end(), a) != fvs.end()) return true;
  }
  return false;
}

}  // namespace

TermPtr subst_term(const TermSubst& s, const TermPtr& t) {
  if (s.empty()) return t;
  switch (t->kind) {
    case Term::Kind::Var: {
      auto it = s.find(t->name);
      return it == s.end() ? t : it->second;
    }
    case Term::Kind::Con:
    case Term::Kind::Lit:
      return t;
    case Term::Kind::Lam:
    case Term::Kind::Let: {
      NameSet fvs;
      for (const auto& k : t->kids) term_range(k, fvs);
      std::vector<std::string> body_fvs(fvs.begin(), fvs.end());
      auto [inner, x] = under_binder(s, t->name, body_fvs, term_range,
                                     [](const std::string& n) { return tm_var(n); });
      if (inner.empty()) return t;
      Term out = *t;
      out.name = x;
      for (auto& k : out.kids) k = subst_term(inner, k);
      return mktm(std::move(out));
    }
    case Term::Kind::TyLam: {
      if (type_capture_risk(s, t->name)) {
        NameSet taken;
        for (const auto& [k, v] : s) {
          for (auto& a : term_ftv(v)) taken.insert(a);
        }
        for (auto& a : term_ftv(t->kids[0])) taken.insert(a);
        taken.insert(t->name);
        std::string b = prime_away(t->name, taken);
        TermPtr body = subst_type_in_term({{t->name, ty_var(b)}}, t->kids[0]);
        return tm_tylam(b, subst_term(s, body));
      }
      break;
    }
    case Term::Kind::Case: {
      Term out = *t;
      out.kids[0] = subst_term(s, t->kids[0]);
      for (auto& alt : out.alts) {
        for (auto& b : alt.pat.tyvars) {
          if (!type_capture_risk(s, b)) continue;
          NameSet taken;
          for (const auto& [k, v] : s) {
            for (auto& a : term_ftv(v)) taken.insert(a);
          }
          for (auto& a : term_ftv(alt.rhs)) taken.insert(a);
          taken.insert(b);
          std::string nb = prime_away(b, taken);
          TypeSubst ren = {{b, ty_var(nb)}};
          for (auto& [w, psi] : alt.pat.covars) psi = subst_prop(ren, psi);
          for (auto& [x, u] : alt.pat.vars) u = subst_type(ren, u);
          alt.rhs = subst_type_in_term(ren, alt.rhs);
          b = nb;
        }
        TermSubst inner = s;
        NameSet range;
        for (const auto& [x, u] : alt.pat.vars) inner.erase(x);
        for (const auto& [k, v] : inner) term_range(v, range);
        NameSet taken = range;
        term_range(alt.rhs, taken);
        for (auto& [x, u] : alt.pat.vars) {
          if (!range.count(x)) continue;
          taken.insert(x);
          std::string nx = prime_away(x, taken);
          taken.insert(nx);
          alt.rhs = subst_term({{x, tm_var(nx)}}, alt.rhs);
          x = nx;
        }
        alt.rhs = subst_term(inner, alt.rhs);
      }
      return mktm(std::move(out));
    }
    default:
      break;
  }
  Term out = *t;
  for (auto& k : out.kids) k = subst_term(s, k);
  return mktm(std::move(out));
}

// Alpha-equivalence.

namespace {

class Alpha {
 public:
  bool type(const TypePtr& a, const TypePtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case Type::Kind::Var:
        return same(ty_, a->name, b->name);
      case Type::Kind::Con:
        return a->name == b->name;
      case Type::Kind::Forall: {
        ty_.push_back({a->name, b->name});
        bool ok = type(a->kids[0], b->kids[0]);
        ty_.pop_back();
        return ok;
      }
      default:
        return a->name == b->name && types(a->kids, b->kids);
    }
  }

  bool types(const std::vector<TypePtr>& a, const std::vector<TypePtr>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!type(a[i], b[i])) return false;
    }
    return true;
  }

  bool prop(const Prop& a, const Prop& b) {
    return type(a.lhs, b.lhs) && type(a.rhs, b.rhs);
  }

  bool co(const CoPtr& a, const CoPtr& b) {
    if (a->kind != b->kind || a->kids.size() != b->kids.size()) return false;
    switch (a->kind) {
      case Coercion::Kind::Var:
        return same(co_, a->name, b->name);
      case Coercion::Kind::Forall: {
        ty_.push_back({a->name, b->name});
        bool ok = co(a->kids[0], b->kids[0]);
        ty_.pop_back();
        return ok;
      }
      default:
        break;
    }
    if (a->name != b->name || !types(a->types, b->types)) return false;
    for (std::size_t i = 0; i < a->kids.size(); ++i) {
      if (!co(a->kids[i], b->kids[i])) return false;
    }
    return true;
  }

  bool term(const TermPtr& a, const TermPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case Term::Kind::Var:
        return same(tm_, a->name, b->name);
      case Term::Kind::Con:
        return a->name == b->name;
      case Term::Kind::Lit:
        return a->lit.kind == b->lit.kind && a->lit.value == b->lit.value;
      case Term::Kind::TyLam:
        return scoped(ty_, a->name, b->name,
                      [&] { return term(a->kids[0], b->kids[0]); });
      case Term::Kind::TyApp:
        return term(a->kids[0], b->kids[0]) && type(a->type, b->type);
      case Term::Kind::Lam:
        return type(a->type, b->type) &&
               scoped(tm_, a->name, b->name,
                      [&] { return term(a->kids[0], b->kids[0]); });
      case Term::Kind::App:
        return term(a->kids[0], b->kids[0]) && term(a->kids[1], b->kids[1]);
      case Term::Kind::CoLam:
        return prop(a->prop, b->prop) &&
               scoped(co_, a->name, b->name,
                      [&] { return term(a->kids[0], b->kids[0]); });
      case Term::Kind::CoApp:
      case Term::Kind::Cast:
        return term(a->kids[0], b->kids[0]) && co(a->co, b->co);
      case Term::Kind::Let:
        return type(a->type, b->type) &&
               scoped(tm_, a->name, b->name, [&] {
                 return term(a->kids[0], b->kids[0]) &&
                        term(a->kids[1], b->kids[1]);
               });
      case Term::Kind::Case: {
        if (!term(a->kids[0], b->kids[0]) || a->alts.size() != b->alts.size()) {
          return false;
        }
        for (std::size_t i = 0; i < a->alts.size(); ++i) {
          if (!alt(a->alts[i], b->alts[i])) return false;
        }
        return true;
      }
    }
    return false;
  }

  bool alt(const Alt& a, const Alt& b) {
    const Pattern& p = a.pat;
    const Pattern& q = b.pat;
    if (p.con != q.con || p.tyvars.size() != q.tyvars.size() ||
        p.covars.size() != q.covars.size() || p.vars.size() != q.vars.size()) {
      return false;
    }
    std::size_t ty_mark = ty_.size(), co_mark = co_.size(), tm_mark = tm_.size();
    bool ok = true;
    for (std::size_t i = 0; i < p.tyvars.size(); ++i) {
      ty_.push_back({p.tyvars[i], q.tyvars[i]});
    }
    for (std::size_t i = 0; ok && i < p.covars.size(); ++i) {
      ok = prop(p.covars[i].second, q.covars[i].second);
      co_.push_back({p.covars[i].first, q.covars[i].first});
    }
    for (std::size_t i = 0; ok && i < p.vars.size(); ++i) {
      ok = type(p.vars[i].second, q.vars[i].second);
      tm_.push_back({p.vars[i].first, q.vars[i].first});
    }
    ok = ok && term(a.rhs, b.rhs);
    ty_.resize(ty_mark);
    co_.resize(co_mark);
    tm_.resize(tm_mark);
    return ok;
  }

  std::vector<std::pair<std::string, std::string>> ty_, co_, tm_;

 private:
  using Scope = std::vector<std::pair<std::string, std::string>>;

  static bool same(const Scope& scope, const std::string& x, const std::string& y) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      bool lx = it->first == x;
      bool ly = it->second == y;
      if (lx || ly) return lx && ly;
    }
    return x == y;
  }

  template <typename F>
  static bool scoped(Scope& scope, const std::string& x, const std::string& y,
                     F body) {
    scope.push_back({x, y});
    bool ok = body();
    scope.pop_back();
    return ok;
  }
};

struct DeclAlpha {
  bool operator()(const DataDecl& a, const DataDecl& b) const {
    if (a.name != b.name || a.params.size() != b.params.size() ||
        a.ctors.size() != b.ctors.size()) {
      return false;
    }
    for (std::size_t i = 0; i < a.ctors.size(); ++i) {
      if (a.ctors[i].first != b.ctors[i].first ||
          !alpha_eq(a.ctors[i].second, b.ctors[i].second)) {
        return false;
      }
    }
    return true;
  }
  bool operator()(const FamilyDecl& a, const FamilyDecl& b) const {
    return a.name == b.name && a.arity == b.arity;
  }
  bool operator()(const AxiomDecl& a, const AxiomDecl& b) const {
    if (a.name != b.name || a.family != b.family ||
        a.params.size() != b.params.size()) {
      return false;
    }
    Alpha al;
    for (std::size_t i = 0; i < a.params.size(); ++i) {
      al.ty_.push_back({a.params[i], b.params[i]});
    }
    return al.types(a.lhs, b.lhs) && al.type(a.rhs, b.rhs);
  }
  bool operator()(const ValueBind& a, const ValueBind& b) const {
    return a.name == b.name && alpha_eq(a.type, b.type) &&
           alpha_eq(a.term, b.term);
  }
  bool operator()(const PrimBind& a, const PrimBind& b) const {
    return a.name == b.name && alpha_eq(a.type, b.type);
  }
  template <typename A, typename B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool alpha_eq(const TypePtr& a, const TypePtr& b) { return Alpha().type(a, b); }
bool alpha_eq(const Prop& a, const Prop& b) { return Alpha().prop(a, b); }
bool alpha_eq(const CoPtr& a, const CoPtr& b) { return Alpha().co(a, b); }
bool alpha_eq(const TermPtr& a, const TermPtr& b) { return Alpha().term(a, b); }
bool alpha_eq(const Decl& a, const Decl& b) { return std::visit(DeclAlpha{}, a, b); }

bool alpha_eq(const Program& a, const Program& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (std::size_t i = 0; i < a.decls.size(); ++i) {
    if (!alpha_eq(a.decls[i], b.decls[i])) return false;
  }
  return true;
}

}  // namespace bidi::core
