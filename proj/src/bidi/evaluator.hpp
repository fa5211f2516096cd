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

// Call-by-value interpreter for core programs. Types, coercion abstraction
// and application, and casts are erased.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "bidi/core.hpp"

namespace bidi::eval {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

// Term environment: a persistent chain of cells. Cells are mutable so that a
// recursive let can be tied after its right-hand side is evaluated.
struct EnvNode {
  std::string name;
  mutable ValuePtr value;
  std::shared_ptr<const EnvNode> next;
};
using Env = std::shared_ptr<const EnvNode>;

struct Value {
  enum class Kind { Closure, Con, Prim, Int, Bool };
  Kind kind;
  std::string name;              // Closure binder, Con/Prim name
  core::TermPtr body;            // Closure
  Env env;                       // Closure
  std::vector<ValuePtr> args;    // Con fields, Prim arguments so far
  int arity = 0;                 // Con and Prim
  std::int64_t number = 0;       // Int
  bool truth = false;            // Bool
};

ValuePtr int_value(std::int64_t n);
ValuePtr bool_value(bool b);
ValuePtr con_value(std::string k, std::vector<ValuePtr> args);

enum class EvalErrorKind {
  UnmatchedCase,
  StuckApplication,
  UnknownPrimitive,
  UnboundVariable,
  OutOfFuel,
  BlackHole,
};

const char* kind_name(EvalErrorKind k);

class EvalError : public std::runtime_error {
 public:
  EvalError(EvalErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  EvalErrorKind kind() const { return kind_; }

 private:
  EvalErrorKind kind_;
};

class Evaluator;

struct HostPrim {
  int arity = 0;
  std::function<ValuePtr(Evaluator&, const std::vector<ValuePtr>&)> fn;
};

// Built-in host functions, keyed by primitive name. Names of the form
// "int<N>" (e.g. int42) are integer constants and are resolved on demand.
const std::map<std::string, HostPrim>& default_prims();

inline constexpr long kDefaultFuel = 1000000;

class Evaluator {
 public:
  explicit Evaluator(const core::Program& program,
                     std::map<std::string, HostPrim> prims = default_prims(),
                     long fuel = kDefaultFuel);

  // Value of a top-level binding, computed at most once.
  ValuePtr global(const std::string& name);
  ValuePtr eval(const core::TermPtr& t, const Env& env);
  ValuePtr apply(const ValuePtr& f, const ValuePtr& x);

  long steps() const { return steps_; }

 private:
  enum class State { Pending, Running, Done };
  struct Global {
    State state = State::Pending;
    core::TermPtr term;  // null for primitives
    ValuePtr value;
  };

  void tick();
  ValuePtr lookup(const std::string& x, const Env& env);
  ValuePtr primitive(const std::string& name, const core::TypePtr& type);

  std::map<std::string, Global> globals_;
  std::map<std::string, core::TypePtr> prim_types_;
  std::map<std::string, int> con_arity_;
  std::map<std::string, HostPrim> prims_;
  long fuel_;
  long steps_ = 0;
};

// eval_term over an explicit environment and host function table.
ValuePtr eval_term(const core::Program& program, const core::TermPtr& t,
                   std::map<std::string, HostPrim> prims = default_prims(),
                   long fuel = kDefaultFuel);

// Literal, "K v1 .. vn", or "<fun>".
std::string show(const ValuePtr& v);

// Removes every cast from a term.
core::TermPtr strip_casts(const core::TermPtr& t);

}  // namespace bidi::eval
