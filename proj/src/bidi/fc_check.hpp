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

// Independent System FC type checker: type and proposition well-formedness,
// coercion typing, term and pattern typing, declaration typing.

#pragma once

#include <string>

#include "bidi/core.hpp"
#include "bidi/util.hpp"

namespace bidi::fc {

enum class FcErrorKind {
  UnboundTyVar,
  UnknownTyCon,
  UnknownFamily,
  ArityMismatch,
  IllTypedCoercion,
  UnboundVar,
  UnknownDataCon,
  AppMismatch,
  CastMismatch,
  PatternArityMismatch,
  NonDataScrutinee,
  BranchMismatch,
  DeclMismatch,
  MalformedDecl,
  DuplicateName,
};

const char* kind_name(FcErrorKind k);

struct FcError {
  FcErrorKind kind;
  std::string rule;  // name of the typing rule that failed, e.g. "TmCast"
  std::string message;

  std::string describe() const;
};

Expected<Unit, FcError> check_type(const core::Env& env, const core::TypePtr& t);
Expected<Unit, FcError> check_prop(const core::Env& env, const core::Prop& p);
Expected<core::Prop, FcError> check_coercion(const core::Env& env,
                                             const core::CoPtr& g);
Expected<core::TypePtr, FcError> check_term(const core::Env& env,
                                            const core::TermPtr& t);

// Extends `env` with one declaration.
Expected<Unit, FcError> check_decl(core::Env& env, const core::Decl& d);

// Threads Delta left to right starting from `env` (the built-in arrow
// constructor only, by default). Returns the final Delta.
Expected<core::Env, FcError> check_program(const core::Program& p,
                                           core::Env env = core::Env::initial());

}  // namespace bidi::fc
