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

// Type inference with elaboration into System FC: constraint generation,
// subsumption checking, and class, instance and value declarations in the
// basic and bidirectional modes.

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bidi/core.hpp"
#include "bidi/diagnostic.hpp"
#include "bidi/engine.hpp"
#include "bidi/surface.hpp"
#include "bidi/translate.hpp"
#include "bidi/util.hpp"

namespace bidi::elab {

enum class Mode { Bidirectional, Basic };

struct ClassInfo {
  surface::ClassDecl decl;
  std::vector<core::TypePtr> fields;      // constructor fields over decl.var
  std::vector<std::string> super_projs;   // one per superclass
};

struct Signature {
  std::string name;
  surface::PolyType type;
  bool annotated = false;
};

// Mutable state threaded through the declarations of one program.
struct Session {
  explicit Session(Mode m) : mode(m) {}

  Mode mode;
  FreshSupply fresh;
  std::map<std::string, ClassInfo> classes;
  engine::ProgramTheory theory;
  surface::TypeEnv gamma;
  std::vector<core::Decl> decls;
  std::vector<Signature> signatures;
  std::set<std::string> used_names;
  std::set<int> tuple_widths;
  bool unit_declared = false;
};

struct Generated {
  surface::MonoPtr type;
  core::TermPtr term;
  engine::AnnConstraintSet wanted;
  engine::EqualitySet eqs;
  std::vector<SourcePos> eq_pos;  // parallel to eqs
};

// Constraint generation with elaboration. Type variables it invents are
// "$a<n>", evidence variables "$d<n>".
Generated gen_constraints(Session& s, surface::TypeEnv& gamma,
                          const surface::ExprPtr& e);

// Checks `e` against `sigma` with `untouchables` rigid, using the closure of
// the locals of `p` extended with the context of `sigma`.
core::TermPtr check_subsumes(Session& s, const engine::UsedSet& untouchables,
                             const engine::ProgramTheory& p,
                             surface::TypeEnv& gamma, const surface::ExprPtr& e,
                             const surface::PolyType& sigma, SourcePos pos);

// Each adds its declarations to `s.decls` and extends `s.theory`/`s.gamma`.
void elab_class(Session& s, const surface::ClassDecl& c);
void elab_instance(Session& s, const surface::InstanceDecl& ins);
void elab_value(Session& s, const surface::ValDecl& v);
void elab_data(Session& s, const surface::DataDecl& d);
void elab_prim(Session& s, const surface::PrimDecl& p);

struct ElabResult {
  core::Program program;
  std::vector<Signature> signatures;
  engine::ProgramTheory theory;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

// Folds the declarations left to right. The input must already have passed
// the guards and scope checks. With `keep_going`, a failed declaration is
// reported and elaboration continues with the next one.
ElabResult elab_program(const surface::SourceProgram& src, Mode mode,
                        bool keep_going = false);

// Renders the program theory, one scheme per line, grouped by component.
std::string dump_theory(const engine::ProgramTheory& p);

// Type with generated variables shown without their '$' marker.
std::string display(const surface::MonoPtr& t);
std::string display(const surface::ClassConstraint& q);

}  // namespace bidi::elab
