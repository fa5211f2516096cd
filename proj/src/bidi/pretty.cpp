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

#include <sstream>

#include "bidi/surface.hpp"

namespace bidi::surface {

namespace {

std::string atom(const MonoPtr& t) {
  if (t->is_var() || (t->is_con() && t->args.empty())) return pretty(t);
  return "(" + pretty(t) + ")";
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

std::string context_parens(const std::vector<ClassConstraint>& ctx) {
  std::vector<std::string> parts;
  for (const auto& q : ctx) parts.push_back(pretty(q));
  return "(" + join(parts, ", ") + ")";
}

std::string expr_atom(const ExprPtr& e) {
  if (e->kind == Expr::Kind::Var) return e->name;
  return "(" + pretty(e) + ")";
}

std::string data_params(int arity) {
  if (arity > 26) return std::to_string(arity);
  std::string out;
  for (int i = 0; i < arity; ++i) {
    out += ' ';
    out += static_cast<char>('a' + i);
  }
  return out.empty() ? out : out.substr(1);
}

struct DeclPrinter {
  std::string operator()(const ClassDecl& c) const {
    std::string out = "class ";
    if (!c.supers.empty()) out += context_parens(c.supers) + " => ";
    return out + c.name + " " + c.var + " where { " + c.method +
           " :: " + pretty(c.method_sig) + " }";
  }
  std::string operator()(const InstanceDecl& ins) const {
    std::vector<std::string> implicit;
    free_vars(ins.head, implicit);
    for (const auto& q : ins.context) free_vars(q.arg, implicit);
    std::string out = "instance ";
    if (implicit != ins.vars) out += "forall " + join(ins.vars, " ") + ". ";
    if (!ins.context.empty()) out += context_parens(ins.context) + " => ";
    return out + ins.cls + " " + atom(ins.head) + " where { " + ins.method +
           " = " + pretty(ins.body) + " }";
  }
  std::string operator()(const DataDecl& d) const {
    std::string params = data_params(d.arity);
    return params.empty() ? "data " + d.name : "data " + d.name + " " + params;
  }
  std::string operator()(const PrimDecl& p) const {
    return "primitive " + p.name + " :: " + pretty(p.sig);
  }
  std::string operator()(const ValDecl& v) const {
    std::string out = "let " + v.name;
    if (v.sig) out += " :: " + pretty(*v.sig);
    return out + " = " + pretty(v.body);
  }
};

}  // namespace

std::string pretty(const MonoPtr& t) {
  switch (t->kind) {
    case MonoType::Kind::Var:
      return t->name;
    case MonoType::Kind::Arrow: {
      const MonoPtr& dom = t->args[0];
      std::string lhs = dom->is_arrow() ? "(" + pretty(dom) + ")" : pretty(dom);
      return lhs + " -> " + pretty(t->args[1]);
    }
    case MonoType::Kind::Con: {
      std::string out = t->name;
      for (const auto& a : t->args) out += " " + atom(a);
      return out;
    }
  }
  return "";
}

std::string pretty(const ClassConstraint& q) {
  return q.cls + " " + atom(q.arg);
}

std::string pretty(const PolyType& p) {
  std::string out;
  if (!p.vars.empty()) out += "forall " + join(p.vars, " ") + ". ";
  if (!p.body.context.empty()) out += context_parens(p.body.context) + " => ";
  return out + pretty(p.body.body);
}

std::string pretty(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Var:
      return e->name;
    case Expr::Kind::Lam: {
      std::string binders = e->name;
      ExprPtr body = e->kids[0];
      while (body->kind == Expr::Kind::Lam) {
        binders += " " + body->name;
        body = body->kids[0];
      }
      return "\\" + binders + ". " + pretty(body);
    }
    case Expr::Kind::App: {
      const ExprPtr& fn = e->kids[0];
      std::string lhs = fn->kind == Expr::Kind::App || fn->kind == Expr::Kind::Var
                            ? pretty(fn)
                            : "(" + pretty(fn) + ")";
      return lhs + " " + expr_atom(e->kids[1]);
    }
    case Expr::Kind::Let:
      return "let " + e->name + " = " + pretty(e->kids[0]) + " in " +
             pretty(e->kids[1]);
  }
  return "";
}

std::string pretty(const Decl& d) { return std::visit(DeclPrinter{}, d); }

std::string pretty(const SourceProgram& p) {
  std::ostringstream out;
  for (const auto& d : p.decls) out << pretty(d) << "\n";
  return out.str();
}

std::string show_context(const std::vector<ClassConstraint>& ctx) {
  if (ctx.size() == 1) return pretty(ctx[0]);
  return context_parens(ctx);
}

std::string show_signature(const PolyType& p) {
  std::string out;
  if (!p.vars.empty()) out += "forall " + join(p.vars, " ") + ". ";
  if (!p.body.context.empty()) out += show_context(p.body.context) + " => ";
  return out + pretty(p.body.body);
}

}  // namespace bidi::surface
