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

#include "bidi/evaluator.hpp"

#include <cctype>

namespace bidi::eval {

using core::Term;
using core::TermPtr;
using core::TypePtr;

ValuePtr int_value(std::int64_t n) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Int;
  v->number = n;
  return v;
}

ValuePtr bool_value(bool b) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Bool;
  v->truth = b;
  return v;
}

ValuePtr con_value(std::string k, std::vector<ValuePtr> args) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Con;
  v->name = std::move(k);
  v->arity = static_cast<int>(args.size());
  v->args = std::move(args);
  return v;
}

const char* kind_name(EvalErrorKind k) {
  switch (k) {
    case EvalErrorKind::UnmatchedCase: return "UnmatchedCase";
    case EvalErrorKind::StuckApplication: return "StuckApplication";
    case EvalErrorKind::UnknownPrimitive: return "UnknownPrimitive";
    case EvalErrorKind::UnboundVariable: return "UnboundVariable";
    case EvalErrorKind::OutOfFuel: return "OutOfFuel";
    case EvalErrorKind::BlackHole: return "BlackHole";
  }
  return "EvalError";
}

namespace {

[[noreturn]] void stuck(const std::string& msg) {
  throw EvalError(EvalErrorKind::StuckApplication, msg);
}

std::int64_t as_int(const ValuePtr& v) {
  if (v->kind != Value::Kind::Int) stuck("expected an integer, got " + show(v));
  return v->number;
}

bool as_bool(const ValuePtr& v) {
  if (v->kind != Value::Kind::Bool) stuck("expected a boolean, got " + show(v));
  return v->truth;
}

const ValuePtr& field(const ValuePtr& v, const std::string& con, std::size_t i) {
  if (v->kind != Value::Kind::Con || v->name != con || v->args.size() <= i) {
    stuck("expected a " + con + " value, got " + show(v));
  }
  return v->args[i];
}

HostPrim int_binop(std::int64_t (*op)(std::int64_t, std::int64_t)) {
  return {2, [op](Evaluator&, const std::vector<ValuePtr>& a) {
            return int_value(op(as_int(a[0]), as_int(a[1])));
          }};
}

HostPrim bool_binop(bool (*op)(bool, bool)) {
  return {2, [op](Evaluator&, const std::vector<ValuePtr>& a) {
            return bool_value(op(as_bool(a[0]), as_bool(a[1])));
          }};
}

ValuePtr list_eq_by(Evaluator& ev, const ValuePtr& eq, ValuePtr xs, ValuePtr ys) {
  while (true) {
    bool xnil = xs->kind == Value::Kind::Con && xs->name == "Nil";
    bool ynil = ys->kind == Value::Kind::Con && ys->name == "Nil";
    if (xnil || ynil) return bool_value(xnil && ynil);
    ValuePtr same = ev.apply(ev.apply(eq, field(xs, "Cons", 0)), field(ys, "Cons", 0));
    if (!as_bool(same)) return bool_value(false);
    xs = field(xs, "Cons", 1);
    ys = field(ys, "Cons", 1);
  }
}

int count_arrows(TypePtr t) {
  while (t->kind == core::Type::Kind::Forall) t = t->kids[0];
  while (t->kind == core::Type::Kind::Qual) t = t->kids[2];
  int n = 0;
  while (core::is_arrow(t)) {
    ++n;
    t = core::arrow_cod(t);
  }
  return n;
}

bool integer_constant(const std::string& name, std::int64_t& out) {
  if (name.size() <= 3 || name.compare(0, 3, "int") != 0) return false;
  for (std::size_t i = 3; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  }
  try {
    out = std::stoll(name.substr(3));
  } catch (const std::out_of_range&) {
    return false;
  }
  return true;
}

}  // namespace

const std::map<std::string, HostPrim>& default_prims() {
  static const std::map<std::string, HostPrim> table = [] {
    std::map<std::string, HostPrim> m;
    m["primTrue"] = {0, [](Evaluator&, const std::vector<ValuePtr>&) {
                       return bool_value(true);
                     }};
    m["primFalse"] = {0, [](Evaluator&, const std::vector<ValuePtr>&) {
                        return bool_value(false);
                      }};
    m["primEqInt"] = {2, [](Evaluator&, const std::vector<ValuePtr>& a) {
                        return bool_value(as_int(a[0]) == as_int(a[1]));
                      }};
    m["primLtInt"] = {2, [](Evaluator&, const std::vector<ValuePtr>& a) {
                        return bool_value(as_int(a[0]) < as_int(a[1]));
                      }};
    m["primAddInt"] = int_binop([](std::int64_t x, std::int64_t y) { return x + y; });
    m["primSubInt"] = int_binop([](std::int64_t x, std::int64_t y) { return x - y; });
    m["primMulInt"] = int_binop([](std::int64_t x, std::int64_t y) { return x * y; });
    m["primAnd"] = bool_binop([](bool x, bool y) { return x && y; });
    m["primOr"] = bool_binop([](bool x, bool y) { return x || y; });
    m["primNot"] = {1, [](Evaluator&, const std::vector<ValuePtr>& a) {
                      return bool_value(!as_bool(a[0]));
                    }};
    m["primIf"] = {3, [](Evaluator&, const std::vector<ValuePtr>& a) {
                     return as_bool(a[0]) ? a[1] : a[2];
                   }};
    m["mkPair"] = {2, [](Evaluator&, const std::vector<ValuePtr>& a) {
                     return con_value("MkPair", {a[0], a[1]});
                   }};
    m["fst"] = {1, [](Evaluator&, const std::vector<ValuePtr>& a) {
                  return field(a[0], "MkPair", 0);
                }};
    m["snd"] = {1, [](Evaluator&, const std::vector<ValuePtr>& a) {
                  return field(a[0], "MkPair", 1);
                }};
    m["pairEqBy"] = {4, [](Evaluator& ev, const std::vector<ValuePtr>& a) {
                       ValuePtr l = ev.apply(ev.apply(a[0], field(a[2], "MkPair", 0)),
                                             field(a[3], "MkPair", 0));
                       if (!as_bool(l)) return bool_value(false);
                       return ev.apply(ev.apply(a[1], field(a[2], "MkPair", 1)),
                                       field(a[3], "MkPair", 1));
                     }};
    m["nil"] = {0, [](Evaluator&, const std::vector<ValuePtr>&) {
                  return con_value("Nil", {});
                }};
    m["cons"] = {2, [](Evaluator&, const std::vector<ValuePtr>& a) {
                   return con_value("Cons", {a[0], a[1]});
                 }};
    m["single"] = {1, [](Evaluator&, const std::vector<ValuePtr>& a) {
                     return con_value("Cons", {a[0], con_value("Nil", {})});
                   }};
    m["listEqBy"] = {3, [](Evaluator& ev, const std::vector<ValuePtr>& a) {
                       return list_eq_by(ev, a[0], a[1], a[2]);
                     }};
    return m;
  }();
  return table;
}

Evaluator::Evaluator(const core::Program& program,
                     std::map<std::string, HostPrim> prims, long fuel)
    : prims_(std::move(prims)), fuel_(fuel) {
  for (const auto& d : program.decls) {
    if (auto v = std::get_if<core::ValueBind>(&d)) {
      globals_[v->name] = Global{State::Pending, v->term, nullptr};
    } else if (auto p = std::get_if<core::PrimBind>(&d)) {
      globals_[p->name] = Global{};
      prim_types_[p->name] = p->type;
    } else if (auto data = std::get_if<core::DataDecl>(&d)) {
      for (const auto& [k, type] : data->ctors) con_arity_[k] = count_arrows(type);
    }
  }
}

void Evaluator::tick() {
  if (++steps_ > fuel_) {
    throw EvalError(EvalErrorKind::OutOfFuel,
                    "evaluation exceeded " + std::to_string(fuel_) + " steps");
  }
}

ValuePtr Evaluator::primitive(const std::string& name, const TypePtr& type) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Prim;
  v->name = name;
  auto it = prims_.find(name);
  std::int64_t n = 0;
  if (it != prims_.end()) {
    v->arity = it->second.arity;
  } else if (integer_constant(name, n)) {
    return int_value(n);
  } else {
    v->arity = count_arrows(type);
  }
  if (v->arity == 0) {
    if (it == prims_.end()) {
      throw EvalError(EvalErrorKind::UnknownPrimitive,
                      "no host implementation for primitive " + name);
    }
    return it->second.fn(*this, {});
  }
  return v;
}

ValuePtr Evaluator::global(const std::string& name) {
  auto it = globals_.find(name);
  if (it == globals_.end()) {
    throw EvalError(EvalErrorKind::UnboundVariable, "unbound variable " + name);
  }
  Global& g = it->second;
  if (g.state == State::Done) return g.value;
  if (g.state == State::Running) {
    throw EvalError(EvalErrorKind::BlackHole,
                    "the value of " + name + " depends on itself");
  }
  g.state = State::Running;
  ValuePtr v = g.term ? eval(g.term, nullptr) : primitive(name, prim_types_.at(name));
  Global& done = globals_.at(name);
  done.value = v;
  done.state = State::Done;
  return v;
}

ValuePtr Evaluator::lookup(const std::string& x, const Env& env) {
  for (const EnvNode* n = env.get(); n != nullptr; n = n->next.get()) {
    if (n->name != x) continue;
    if (!n->value) {
      throw EvalError(EvalErrorKind::BlackHole,
                      "recursive binding " + x + " used before it is defined");
    }
    return n->value;
  }
  return global(x);
}

ValuePtr Evaluator::eval(const TermPtr& t, const Env& env) {
  tick();
  switch (t->kind) {
    case Term::Kind::Var:
      return lookup(t->name, env);
    case Term::Kind::Con: {
      auto it = con_arity_.find(t->name);
      if (it == con_arity_.end()) {
        throw EvalError(EvalErrorKind::UnboundVariable,
                        "unknown data constructor " + t->name);
      }
      auto v = std::make_shared<Value>();
      v->kind = Value::Kind::Con;
      v->name = t->name;
      v->arity = it->second;
      return v;
    }
    case Term::Kind::TyLam:
    case Term::Kind::CoLam:
    case Term::Kind::TyApp:
    case Term::Kind::CoApp:
    case Term::Kind::Cast:
      return eval(t->kids[0], env);
    case Term::Kind::Lam: {
      auto v = std::make_shared<Value>();
      v->kind = Value::Kind::Closure;
      v->name = t->name;
      v->body = t->kids[0];
      v->env = env;
      return v;
    }
    case Term::Kind::App: {
      ValuePtr f = eval(t->kids[0], env);
      ValuePtr x = eval(t->kids[1], env);
      return apply(f, x);
    }
    case Term::Kind::Let: {
      auto cell = std::make_shared<EnvNode>(EnvNode{t->name, nullptr, env});
      cell->value = eval(t->kids[0], cell);
      return eval(t->kids[1], cell);
    }
    case Term::Kind::Case: {
      ValuePtr v = eval(t->kids[0], env);
      if (v->kind != Value::Kind::Con ||
          static_cast<int>(v->args.size()) != v->arity) {
        throw EvalError(EvalErrorKind::UnmatchedCase,
                        "case on a value that is not a constructor: " + show(v));
      }
      for (const auto& alt : t->alts) {
        if (alt.pat.con != v->name) continue;
        if (alt.pat.vars.size() != v->args.size()) break;
        Env inner = env;
        for (std::size_t i = 0; i < v->args.size(); ++i) {
          inner = std::make_shared<EnvNode>(
              EnvNode{alt.pat.vars[i].first, v->args[i], inner});
        }
        return eval(alt.rhs, inner);
      }
      throw EvalError(EvalErrorKind::UnmatchedCase,
                      "no alternative matches " + show(v));
    }
    case Term::Kind::Lit:
      return t->lit.kind == core::Lit::Kind::Int ? int_value(t->lit.value)
                                                 : bool_value(t->lit.value != 0);
  }
  throw EvalError(EvalErrorKind::StuckApplication, "unknown term form");
}

ValuePtr Evaluator::apply(const ValuePtr& f, const ValuePtr& x) {
  tick();
  switch (f->kind) {
    case Value::Kind::Closure:
      return eval(f->body, std::make_shared<EnvNode>(EnvNode{f->name, x, f->env}));
    case Value::Kind::Con:
    case Value::Kind::Prim: {
      if (static_cast<int>(f->args.size()) >= f->arity) break;
      auto v = std::make_shared<Value>(*f);
      v->args.push_back(x);
      if (f->kind == Value::Kind::Con ||
          static_cast<int>(v->args.size()) < v->arity) {
        return v;
      }
      auto it = prims_.find(f->name);
      if (it == prims_.end()) {
        throw EvalError(EvalErrorKind::UnknownPrimitive,
                        "no host implementation for primitive " + f->name);
      }
      return it->second.fn(*this, v->args);
    }
    default:
      break;
  }
  stuck("cannot apply " + show(f) + " to an argument");
}

ValuePtr eval_term(const core::Program& program, const TermPtr& t,
                   std::map<std::string, HostPrim> prims, long fuel) {
  Evaluator ev(program, std::move(prims), fuel);
  return ev.eval(t, nullptr);
}

std::string show(const ValuePtr& v) {
  switch (v->kind) {
    case Value::Kind::Int:
      return std::to_string(v->number);
    case Value::Kind::Bool:
      return v->truth ? "true" : "false";
    case Value::Kind::Con: {
      if (static_cast<int>(v->args.size()) < v->arity) return "<fun>";
      std::string out = v->name;
      for (const auto& a : v->args) {
        bool nested = a->kind == Value::Kind::Con && !a->args.empty();
        out += " " + (nested ? "(" + show(a) + ")" : show(a));
      }
      return out;
    }
    case Value::Kind::Closure:
    case Value::Kind::Prim:
      return "<fun>";
  }
  return "<value>";
}

TermPtr strip_casts(const TermPtr& t) {
  if (t->kind == Term::Kind::Cast) return strip_casts(t->kids[0]);
  auto out = std::make_shared<Term>(*t);
  for (auto& k : out->kids) k = strip_casts(k);
  for (auto& alt : out->alts) alt.rhs = strip_casts(alt.rhs);
  return out;
}

}  // namespace bidi::eval
