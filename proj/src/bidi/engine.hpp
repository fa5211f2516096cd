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

// Constraint machinery: unification with untouchables, simplification of
// class constraints, evidence substitutions, modus-ponens closure over
// single-premise schemes, and a bounded SLD entailment oracle.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "bidi/core.hpp"
#include "bidi/surface.hpp"
#include "bidi/translate.hpp"
#include "bidi/util.hpp"

namespace bidi::engine {

using surface::ClassConstraint;
using surface::ConstraintScheme;
using surface::MonoPtr;

struct AnnScheme {
  std::string ev;
  ConstraintScheme scheme;
};
struct AnnConstraint {
  std::string ev;
  ClassConstraint q;
};
using AnnAxiomSet = std::vector<AnnScheme>;
using AnnConstraintSet = std::vector<AnnConstraint>;

// Local givens as nullary schemes.
AnnAxiomSet as_axioms(const AnnConstraintSet& qs);

// <A_B, A_S, A_I, Q_L>. Basic mode leaves `inverted` empty.
struct ProgramTheory {
  AnnAxiomSet inverted;
  AnnAxiomSet superclass;
  AnnAxiomSet instance;
  AnnConstraintSet local;

  ProgramTheory with_locals(const AnnConstraintSet& qs) const;
  ProgramTheory with_instance(const AnnScheme& s) const;
};

using EqualitySet = std::vector<std::pair<MonoPtr, MonoPtr>>;

using UsedSet = std::set<std::string>;

// Idempotent substitution built by composing single bindings.
class TypeSubst {
 public:
  // theta := [t/a] . theta. `t` must already be normalized under theta.
  void bind(const std::string& a, const MonoPtr& t);
  MonoPtr apply(const MonoPtr& t) const;
  ClassConstraint apply(const ClassConstraint& q) const;
  AnnConstraintSet apply(const AnnConstraintSet& qs) const;
  core::TermPtr apply(const core::TermPtr& t) const;  // on embedded types
  const surface::MonoSubst& bindings() const { return map_; }
  const std::vector<std::string>& order() const { return order_; }
  bool empty() const { return map_.empty(); }

 private:
  surface::MonoSubst map_;
  std::vector<std::string> order_;
};

struct UnifyError {
  enum class Kind { Clash, OccursCheck, UntouchableBind };
  Kind kind;
  MonoPtr left;
  MonoPtr right;
  std::string var;

  std::string describe() const;
};

Expected<TypeSubst, UnifyError> unify(const UsedSet& untouchables,
                                      const EqualitySet& eqs);

// Ordered evidence substitution. Later bindings are pushed into the ranges
// of earlier ones, so application is a single simultaneous pass.
class EvidenceSubst {
 public:
  void bind(const std::string& d, core::TermPtr t);
  core::TermPtr apply(const core::TermPtr& t) const;
  const core::TermPtr* lookup(const std::string& d) const;
  const std::vector<std::pair<std::string, core::TermPtr>>& bindings() const {
    return list_;
  }

 private:
  std::vector<std::pair<std::string, core::TermPtr>> list_;
};

// M ::= [] | let d : u = t in M
struct DictBinding {
  std::string ev;
  core::TypePtr type;
  core::TermPtr term;
};
struct DictContext {
  std::vector<DictBinding> lets;

  core::TermPtr wrap(const core::TermPtr& hole) const;
  void append(const DictContext& other);
};

// Evidence application d_I us ds.
core::TermPtr evidence(const std::string& d, const std::vector<MonoPtr>& types,
                       const std::vector<std::string>& args);

// One-way matching of `pattern` against `target`: only `vars` may bind.
std::optional<surface::MonoSubst> match(const std::vector<std::string>& vars,
                                        const MonoPtr& pattern,
                                        const MonoPtr& target);

// Raised for several axiom heads matching one wanted.
class AmbiguousMatch : public CompileError {
 public:
  using CompileError::CompileError;
};

struct Simplified {
  AnnConstraintSet residual;
  EvidenceSubst eta;
};

inline constexpr int kDefaultFuel = 10000;
inline constexpr int kOracleFuel = 8;

// Rule Ent. nullopt means no axiom head matches.
std::optional<Simplified> simplify_one(const UsedSet& untouchables,
                                       const AnnAxiomSet& axioms,
                                       const AnnConstraint& wanted,
                                       FreshSupply& fresh);

// Exhaustive FIFO fixpoint of simplify_one. Residuals that repeat an earlier
// residual are bound to its evidence.
Simplified simplify_all(const UsedSet& untouchables, const AnnAxiomSet& axioms,
                        const AnnConstraintSet& wanted, FreshSupply& fresh,
                        int fuel = kDefaultFuel);

struct Closed {
  AnnConstraintSet constraints;
  DictContext ctx;
};

Closed mp_step(const UsedSet& untouchables, const AnnAxiomSet& axioms,
               const AnnConstraint& given, FreshSupply& fresh);

// Saturation of `givens` under single-premise schemes. The result lists the
// originals first, then derived constraints in derivation order.
Closed closure(const UsedSet& untouchables, const AnnAxiomSet& axioms,
               const AnnConstraintSet& givens, FreshSupply& fresh,
               int fuel = kDefaultFuel);

struct UsableTheory {
  AnnAxiomSet axioms;
  DictContext ctx;
};

UsableTheory sc_closure(const UsedSet& untouchables, const ProgramTheory& p,
                        FreshSupply& fresh);
UsableTheory inv_sc_closure(const UsedSet& untouchables, const ProgramTheory& p,
                            FreshSupply& fresh);

// Declarative entailment by depth-bounded SLD resolution over all of P.
struct OracleFail {};
struct OracleOutOfFuel {};
using OracleResult = std::variant<core::TermPtr, OracleFail, OracleOutOfFuel>;

OracleResult entail_oracle(const ProgramTheory& p, const ClassConstraint& goal,
                           int fuel = kOracleFuel);
// Same search over an explicit scheme list.
OracleResult entail_oracle(const AnnAxiomSet& axioms, const ClassConstraint& goal,
                           int fuel = kOracleFuel);

std::string show(const AnnConstraint& c);
std::string show(const AnnScheme& s);

}  // namespace bidi::engine
