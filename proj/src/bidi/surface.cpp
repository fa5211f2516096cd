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

#include "bidi/surface.hpp"

namespace bidi::surface {

MonoPtr tvar(std::string name) {
  return std::make_shared<MonoType>(
      MonoType{MonoType::Kind::Var, std::move(name), {}});
}

MonoPtr arrow(MonoPtr domain, MonoPtr codomain) {
  return std::make_shared<MonoType>(MonoType{
      MonoType::Kind::Arrow, "", {std::move(domain), std::move(codomain)}});
}

MonoPtr con(std::string name, std::vector<MonoPtr> args) {
  return std::make_shared<MonoType>(
      MonoType{MonoType::Kind::Con, std::move(name), std::move(args)});
}

bool equal(const MonoPtr& a, const MonoPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name ||
      a->args.size() != b->args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!equal(a->args[i], b->args[i])) return false;
  }
  return true;
}

void free_vars(const MonoPtr& t, std::vector<std::string>& out) {
  if (t->is_var()) {
    if (std::find(out.begin(), out.end(), t->name) == out.end()) {
      out.push_back(t->name);
    }
    return;
  }
  for (const auto& a : t->args) free_vars(a, out);
}

std::vector<std::string> free_vars(const MonoPtr& t) {
  std::vector<std::string> out;
  free_vars(t, out);
  return out;
}

bool occurs(const std::string& var, const MonoPtr& t) {
  if (t->is_var()) return t->name == var;
  return std::any_of(t->args.begin(), t->args.end(),
                     [&](const MonoPtr& a) { return occurs(var, a); });
}

int count_occurrences(const std::string& var, const MonoPtr& t) {
  if (t->is_var()) return t->name == var ? 1 : 0;
  int n = 0;
  for (const auto& a : t->args) n += count_occurrences(var, a);
  return n;
}

MonoPtr substitute(const MonoSubst& s, const MonoPtr& t) {
  if (s.empty()) return t;
  if (t->is_var()) {
    auto it = s.find(t->name);
    return it == s.end() ? t : it->second;
  }
  std::vector<MonoPtr> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (const auto& a : t->args) {
    args.push_back(substitute(s, a));
    changed = changed || args.back() != a;
  }
  if (!changed) return t;
  return std::make_shared<MonoType>(MonoType{t->kind, t->name, std::move(args)});
}

bool equal(const ClassConstraint& a, const ClassConstraint& b) {
  return a.cls == b.cls && equal(a.arg, b.arg);
}

ClassConstraint substitute(const MonoSubst& s, const ClassConstraint& q) {
  return {q.cls, substitute(s, q.arg)};
}

bool equal(const PolyType& a, const PolyType& b) {
  if (a.vars != b.vars) return false;
  if (a.body.context.size() != b.body.context.size()) return false;
  for (std::size_t i = 0; i < a.body.context.size(); ++i) {
    if (!equal(a.body.context[i], b.body.context[i])) return false;
  }
  return equal(a.body.body, b.body.body);
}

std::vector<std::string> free_vars(const PolyType& p) {
  std::vector<std::string> all;
  for (const auto& q : p.body.context) free_vars(q.arg, all);
  free_vars(p.body.body, all);
  std::vector<std::string> out;
  for (auto& v : all) {
    if (std::find(p.vars.begin(), p.vars.end(), v) == p.vars.end()) {
      out.push_back(v);
    }
  }
  return out;
}

PolyType substitute(const MonoSubst& s, const PolyType& p) {
  MonoSubst inner;
  std::set<std::string> range_fvs;
  for (const auto& [v, t] : s) {
    if (std::find(p.vars.begin(), p.vars.end(), v) != p.vars.end()) continue;
    inner.emplace(v, t);
    for (auto& fv : free_vars(t)) range_fvs.insert(fv);
  }
  PolyType out;
  std::set<std::string> taken = range_fvs;
  for (auto& fv : free_vars(p)) taken.insert(fv);
  for (const auto& b : p.vars) taken.insert(b);
  for (const auto& b : p.vars) {
    if (range_fvs.count(b)) {
      std::string fresh = b;
      while (taken.count(fresh)) fresh += "'";
      taken.insert(fresh);
      inner[b] = tvar(fresh);
      out.vars.push_back(fresh);
    } else {
      out.vars.push_back(b);
    }
  }
  for (const auto& q : p.body.context) {
    out.body.context.push_back(substitute(inner, q));
  }
  out.body.body = substitute(inner, p.body.body);
  return out;
}

ExprPtr var(std::string name, SourcePos pos) {
  return std::make_shared<Expr>(
      Expr{Expr::Kind::Var, std::move(name), {}, pos});
}

ExprPtr lam(std::string binder, ExprPtr body, SourcePos pos) {
  return std::make_shared<Expr>(
      Expr{Expr::Kind::Lam, std::move(binder), {std::move(body)}, pos});
}

ExprPtr app(ExprPtr fn, ExprPtr arg, SourcePos pos) {
  return std::make_shared<Expr>(
      Expr{Expr::Kind::App, "", {std::move(fn), std::move(arg)}, pos});
}

ExprPtr let(std::string binder, ExprPtr bound, ExprPtr body, SourcePos pos) {
  return std::make_shared<Expr>(Expr{Expr::Kind::Let, std::move(binder),
                                     {std::move(bound), std::move(body)},
                                     pos});
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a->kind != b->kind || a->name != b->name ||
      a->kids.size() != b->kids.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a->kids.size(); ++i) {
    if (!equal(a->kids[i], b->kids[i])) return false;
  }
  return true;
}

SourcePos pos_of(const Decl& d) {
  return std::visit([](const auto& x) { return x.pos; }, d);
}

namespace {

bool equal_ctx(const std::vector<ClassConstraint>& a,
               const std::vector<ClassConstraint>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal(a[i], b[i])) return false;
  }
  return true;
}

struct DeclEq {
  bool operator()(const ClassDecl& a, const ClassDecl& b) const {
    return a.var == b.var && equal_ctx(a.supers, b.supers) &&
           a.name == b.name && a.method == b.method &&
           equal(a.method_sig, b.method_sig);
  }
  bool operator()(const InstanceDecl& a, const InstanceDecl& b) const {
    return a.vars == b.vars && equal_ctx(a.context, b.context) &&
           a.cls == b.cls && equal(a.head, b.head) && a.method == b.method &&
           equal(a.body, b.body);
  }
  bool operator()(const DataDecl& a, const DataDecl& b) const {
    return a.name == b.name && a.arity == b.arity;
  }
  bool operator()(const PrimDecl& a, const PrimDecl& b) const {
    return a.name == b.name && equal(a.sig, b.sig);
  }
  bool operator()(const ValDecl& a, const ValDecl& b) const {
    if (a.name != b.name || a.sig.has_value() != b.sig.has_value()) {
      return false;
    }
    if (a.sig && !equal(*a.sig, *b.sig)) return false;
    return equal(a.body, b.body);
  }
  template <typename A, typename B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool equal(const Decl& a, const Decl& b) { return std::visit(DeclEq{}, a, b); }

bool equal(const SourceProgram& a, const SourceProgram& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (std::size_t i = 0; i < a.decls.size(); ++i) {
    if (!equal(a.decls[i], b.decls[i])) return false;
  }
  return true;
}

TermScheme TermScheme::from_poly(const PolyType& p) {
  TermScheme s;
  if (!p.vars.empty() || !p.body.context.empty()) {
    s.layers.push_back({p.vars, p.body.context});
  }
  s.body = p.body.body;
  return s;
}

void TypeEnv::push_type_var(std::string a) {
  entries_.push_back({true, std::move(a), {}});
}

void TypeEnv::push_term(std::string x, TermScheme s) {
  entries_.push_back({false, std::move(x), std::move(s)});
}

const TermScheme* TypeEnv::lookup(const std::string& x) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (!it->is_type_var && it->name == x) return &it->scheme;
  }
  return nullptr;
}

bool TypeEnv::has_type_var(const std::string& a) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) {
    return e.is_type_var && e.name == a;
  });
}

bool is_reserved_type_name(const std::string& name) {
  auto starts = [&](const char* p) { return name.rfind(p, 0) == 0; };
  auto numbered = [&](const char* p) {
    std::string prefix = p;
    return starts(p) && name.size() > prefix.size() &&
           std::all_of(name.begin() + prefix.size(), name.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  return name == "Unit" || name == "MkUnit" || starts("D_") || starts("F_") ||
         starts("K_") || numbered("Tup") || numbered("MkTup");
}

}  // namespace bidi::surface
