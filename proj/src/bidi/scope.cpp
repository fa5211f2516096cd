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
#include <map>

#include "bidi/surface.hpp"

namespace bidi::surface {

namespace {

class ScopeChecker {
 public:
  std::vector<Diagnostic> run(const SourceProgram& p) {
    for (const auto& d : p.decls) std::visit(*this, d);
    return std::move(diags_);
  }

  void operator()(const DataDecl& d) {
    if (is_reserved_type_name(d.name)) {
      report(codes::kReservedName,
             "type constructor name '" + d.name + "' is reserved", d.pos);
    }
    if (!tycons_.emplace(d.name, d.arity).second) {
      report(codes::kDuplicate, "duplicate data declaration '" + d.name + "'",
             d.pos);
    }
  }

  void operator()(const ClassDecl& c) {
    if (classes_.count(c.name)) {
      report(codes::kDuplicate, "duplicate class '" + c.name + "'", c.pos);
    }
    for (const auto& q : c.supers) {
      if (!classes_.count(q.cls)) {
        report(codes::kUnknownSuperclass,
               "unknown superclass '" + q.cls + "' of class '" + c.name + "'",
               c.pos);
      }
      type(q.arg, {c.var}, c.pos);
    }
    classes_[c.name] = c.method;
    if (std::find(c.method_sig.vars.begin(), c.method_sig.vars.end(), c.var) !=
        c.method_sig.vars.end()) {
      report(codes::kMethodSigScope,
             "method signature of '" + c.method +
                 "' rebinds the class variable '" + c.var + "'",
             c.pos);
    }
    for (const auto& v : free_vars(c.method_sig)) {
      if (v != c.var) {
        report(codes::kMethodSigScope,
               "type variable '" + v + "' in the signature of method '" +
                   c.method + "' is neither the class variable nor quantified",
               c.pos);
      }
    }
    poly(c.method_sig, {c.var}, c.pos, false);
    term_name(c.method, c.pos);
  }

  void operator()(const InstanceDecl& ins) {
    auto cls = classes_.find(ins.cls);
    if (cls == classes_.end()) {
      report(codes::kUnknownClass, "instance for unknown class '" + ins.cls + "'",
             ins.pos);
    } else if (cls->second != ins.method) {
      report(codes::kMethodName,
             "class '" + ins.cls + "' has no method '" + ins.method + "'",
             ins.pos);
    }
    type(ins.head, ins.vars, ins.pos);
    for (const auto& q : ins.context) constraint(q, ins.vars, ins.pos);
    for (const auto& v : ins.vars) {
      if (!occurs(v, ins.head)) {
        report(codes::kUnusedQuantifier,
               "instance variable '" + v + "' does not occur in the head", ins.pos);
      }
    }
    expr(ins.body, {});
  }

  void operator()(const PrimDecl& p) {
    poly(p.sig, {}, p.pos, true);
    term_name(p.name, p.pos);
  }

  void operator()(const ValDecl& v) {
    if (v.sig) poly(*v.sig, {}, v.pos, true);
    term_name(v.name, v.pos);
    expr(v.body, {});
  }

 private:
  void report(const char* code, std::string msg, SourcePos pos) {
    Diagnostic d;
    d.code = code;
    d.family = ErrorFamily::Type;
    d.message = std::move(msg);
    d.pos = pos;
    diags_.push_back(std::move(d));
  }

  void term_name(const std::string& x, SourcePos pos) {
    if (!terms_.insert(x).second) {
      report(codes::kDuplicate, "duplicate top-level name '" + x + "'", pos);
    }
  }

  void type(const MonoPtr& t, const std::vector<std::string>& bound,
            SourcePos pos) {
    switch (t->kind) {
      case MonoType::Kind::Var:
        if (std::find(bound.begin(), bound.end(), t->name) == bound.end()) {
          report(codes::kUnboundTyVar, "unbound type variable '" + t->name + "'",
                 pos);
        }
        return;
      case MonoType::Kind::Arrow:
        break;
      case MonoType::Kind::Con: {
        auto it = tycons_.find(t->name);
        if (it == tycons_.end()) {
          report(codes::kUnknownTyCon,
                 "unknown type constructor '" + t->name + "'", pos);
        } else if (it->second != static_cast<int>(t->args.size())) {
          report(codes::kArityMismatch,
                 "type constructor '" + t->name + "' expects " +
                     std::to_string(it->second) + " argument(s) but got " +
                     std::to_string(t->args.size()),
                 pos);
        }
        break;
      }
    }
    for (const auto& a : t->args) type(a, bound, pos);
  }

  void constraint(const ClassConstraint& q, const std::vector<std::string>& bound,
                  SourcePos pos) {
    if (!classes_.count(q.cls)) {
      report(codes::kUnknownClass, "unknown class '" + q.cls + "'", pos);
    }
    type(q.arg, bound, pos);
  }

  void poly(const PolyType& p, std::vector<std::string> bound, SourcePos pos,
            bool report_free) {
    for (const auto& v : p.vars) {
      if (!occurs(v, p.body.body)) {
        report(codes::kUnusedQuantifier,
               "quantified variable '" + v + "' does not occur in the type " +
                   pretty(p.body.body),
               pos);
      }
    }
    bound.insert(bound.end(), p.vars.begin(), p.vars.end());
    if (!report_free) {
      // Already reported as a method-signature scope error.
      for (const auto& v : free_vars(p)) bound.push_back(v);
    }
    for (const auto& q : p.body.context) constraint(q, bound, pos);
    type(p.body.body, bound, pos);
  }

  void expr(const ExprPtr& e, std::vector<std::string> locals) {
    switch (e->kind) {
      case Expr::Kind::Var:
        if (std::find(locals.begin(), locals.end(), e->name) == locals.end() &&
            !terms_.count(e->name)) {
          report(codes::kUnboundVar, "unbound variable '" + e->name + "'",
                 e->pos);
        }
        return;
      case Expr::Kind::Lam:
        locals.push_back(e->name);
        expr(e->kids[0], locals);
        return;
      case Expr::Kind::App:
        expr(e->kids[0], locals);
        expr(e->kids[1], locals);
        return;
      case Expr::Kind::Let:
        locals.push_back(e->name);
        expr(e->kids[0], locals);
        expr(e->kids[1], locals);
        return;
    }
  }

  std::map<std::string, int> tycons_;
  std::map<std::string, std::string> classes_;  // class -> method
  std::set<std::string> terms_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

std::vector<Diagnostic> check_scopes(const SourceProgram& p) {
  return ScopeChecker().run(p);
}

}  // namespace bidi::surface
