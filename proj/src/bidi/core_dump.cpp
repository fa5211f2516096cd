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

#include "bidi/core.hpp"

namespace bidi::core {

namespace {

std::string paren_if(bool cond, std::string s) {
  return cond ? "(" + s + ")" : s;
}

// Types: 0 = forall, qualified, arrow; 1 = application; 2 = atom.
std::string ty(const TypePtr& t, int prec) {
  switch (t->kind) {
    case Type::Kind::Var:
      return t->name;
    case Type::Kind::Con:
      return t->name == kArrow ? "(->)" : t->name;
    case Type::Kind::App:
      if (is_arrow(t)) {
        return paren_if(prec > 0,
                        ty(arrow_dom(t), 1) + " -> " + ty(arrow_cod(t), 0));
      }
      return paren_if(prec > 1, ty(t->kids[0], 1) + " " + ty(t->kids[1], 2));
    case Type::Kind::Fam: {
      if (t->kids.empty()) return t->name;
      std::string out = t->name;
      for (const auto& a : t->kids) out += " " + ty(a, 2);
      return paren_if(prec > 1, out);
    }
    case Type::Kind::Forall:
      return paren_if(prec > 0, "forall " + t->name + ". " + ty(t->kids[0], 0));
    case Type::Kind::Qual:
      return paren_if(prec > 0, "(" + dump(Prop{t->kids[0], t->kids[1]}) +
                                    ") => " + ty(t->kids[2], 0));
  }
  return "";
}

std::string prop_side(const TypePtr& t) {
  bool binder = t->kind == Type::Kind::Forall || t->kind == Type::Kind::Qual;
  return binder ? "(" + ty(t, 0) + ")" : ty(t, 0);
}

// Coercions: 0 = trans, forall, qualified; 1 = application, prefix forms;
// 2 = atom.
std::string co(const CoPtr& g, int prec) {
  using K = Coercion::Kind;
  switch (g->kind) {
    case K::Refl:
      return "<" + ty(g->types[0], 0) + ">";
    case K::Var:
      return g->name;
    case K::Sym:
      return paren_if(prec > 1, "sym " + co(g->kids[0], 2));
    case K::Left:
      return paren_if(prec > 1, "left " + co(g->kids[0], 2));
    case K::Right:
      return paren_if(prec > 1, "right " + co(g->kids[0], 2));
    case K::Inst:
      return paren_if(prec > 1,
                      "inst " + co(g->kids[0], 2) + " " + co(g->kids[1], 2));
    case K::QualInst:
      return paren_if(prec > 1,
                      "qinst " + co(g->kids[0], 2) + " " + co(g->kids[1], 2));
    case K::Trans:
      return paren_if(prec > 0, co(g->kids[0], 1) + " ; " + co(g->kids[1], 0));
    case K::App:
      return paren_if(prec > 1, co(g->kids[0], 1) + " " + co(g->kids[1], 2));
    case K::Fam: {
      std::string out = g->name + "(";
      for (std::size_t i = 0; i < g->kids.size(); ++i) {
        if (i) out += ", ";
        out += co(g->kids[i], 0);
      }
      return out + ")";
    }
    case K::Forall:
      return paren_if(prec > 0, "forall " + g->name + ". " + co(g->kids[0], 0));
    case K::Qual:
      return paren_if(prec > 0, "(" + dump(Prop{g->types[0], g->types[1]}) +
                                    ") => " + co(g->kids[0], 0));
    case K::Axiom: {
      if (g->types.empty()) return g->name;
      std::string out = g->name;
      for (const auto& t : g->types) out += " @" + ty(t, 2);
      return paren_if(prec > 1, out);
    }
  }
  return "";
}

std::string lit(const Lit& l) {
  if (l.kind == Lit::Kind::Bool) return l.value ? "#true" : "#false";
  return "#" + std::to_string(l.value);
}

std::string pattern(const Pattern& p) {
  std::string out = p.con;
  for (const auto& b : p.tyvars) out += " " + b;
  for (const auto& [w, psi] : p.covars) out += " (" + w + " : " + dump(psi) + ")";
  for (const auto& [x, u] : p.vars) out += " (" + x + " : " + ty(u, 0) + ")";
  return out;
}

// Terms: 0 = binders, let, case; 1 = cast; 2 = application; 3 = atom.
std::string tm(const TermPtr& t, int prec) {
  using K = Term::Kind;
  switch (t->kind) {
    case K::Var:
    case K::Con:
      return t->name;
    case K::Lit:
      return lit(t->lit);
    case K::TyLam:
      return paren_if(prec > 0, "/\\" + t->name + ". " + tm(t->kids[0], 0));
    case K::Lam:
      return paren_if(prec > 0, "\\(" + t->name + " : " + ty(t->type, 0) +
                                    "). " + tm(t->kids[0], 0));
    case K::CoLam:
      return paren_if(prec > 0, "/\\(" + t->name + " : " + dump(t->prop) +
                                    "). " + tm(t->kids[0], 0));
    case K::Let:
      return paren_if(prec > 0, "let " + t->name + " : " + ty(t->type, 0) +
                                    " = " + tm(t->kids[0], 0) + " in " +
                                    tm(t->kids[1], 0));
    case K::Case: {
      std::string out = "case " + tm(t->kids[0], 0) + " of { ";
      for (std::size_t i = 0; i < t->alts.size(); ++i) {
        if (i) out += " ; ";
        out += pattern(t->alts[i].pat) + " -> " + tm(t->alts[i].rhs, 0);
      }
      return paren_if(prec > 0, out + " }");
    }
    case K::Cast:
      return paren_if(prec > 1, tm(t->kids[0], 1) + " |> " + co(t->co, 1));
    case K::TyApp:
      return paren_if(prec > 2, tm(t->kids[0], 2) + " @" + ty(t->type, 2));
    case K::CoApp:
      return paren_if(prec > 2, tm(t->kids[0], 2) + " @~(" + co(t->co, 0) + ")");
    case K::App:
      return paren_if(prec > 2, tm(t->kids[0], 2) + " " + tm(t->kids[1], 3));
  }
  return "";
}

std::string params(const std::vector<std::string>& ps) {
  std::string out;
  for (const auto& p : ps) out += " " + p;
  return out;
}

struct DeclDump {
  std::string operator()(const DataDecl& d) const {
    std::string out = "data " + d.name + params(d.params) + " where {";
    for (std::size_t i = 0; i < d.ctors.size(); ++i) {
      out += i ? " ; " : " ";
      out += d.ctors[i].first + " : " + ty(d.ctors[i].second, 0);
    }
    return out + " }";
  }
  std::string operator()(const FamilyDecl& f) const {
    return "type " + f.name + "/" + std::to_string(f.arity);
  }
  std::string operator()(const AxiomDecl& a) const {
    return "axiom " + a.name + params(a.params) + " : " +
           dump(Prop{ty_fam(a.family, a.lhs), a.rhs});
  }
  std::string operator()(const ValueBind& v) const {
    return "let " + v.name + " : " + ty(v.type, 0) + " = " + tm(v.term, 0);
  }
  std::string operator()(const PrimBind& p) const {
    return "primitive " + p.name + " : " + ty(p.type, 0);
  }
};

}  // namespace

std::string dump(const TypePtr& t) { return ty(t, 0); }
std::string dump(const Prop& p) { return prop_side(p.lhs) + " ~ " + prop_side(p.rhs); }
std::string dump(const CoPtr& g) { return co(g, 0); }
std::string dump(const TermPtr& t) { return tm(t, 0); }
std::string dump(const Decl& d) { return std::visit(DeclDump{}, d); }

std::string dump_core(const Program& p) {
  std::ostringstream out;
  for (const auto& d : p.decls) out << dump(d) << "\n";
  return out.str();
}

}  // namespace bidi::core
