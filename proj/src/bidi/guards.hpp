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

// Termination and coherence guards run before elaboration: an acyclic
// superclass relation, decreasing instance contexts, non-overlapping heads.

#pragma once

#include <string>
#include <vector>

#include "bidi/diagnostic.hpp"
#include "bidi/surface.hpp"
#include "bidi/util.hpp"

namespace bidi::guards {

struct CycleError {
  std::vector<std::string> path;  // first and last element coincide
};

struct PatersonError {
  std::size_t constraint = 0;  // index into the instance context
  int bullet = 0;              // 1: variable occurrences, 2: size
  std::string var;             // offending variable for bullet 1
};

struct OverlapError {
  std::size_t first = 0;  // indices into the instance list
  std::size_t second = 0;
};

// Superclass names that are not declared are ignored.
Expected<Unit, CycleError> check_superclass_dag(
    const std::vector<surface::ClassDecl>& classes);

// Constructors and variable occurrences, arrows counting as one constructor.
int type_size(const surface::MonoPtr& t);

Expected<Unit, PatersonError> check_paterson(const surface::InstanceDecl& ins);

Expected<Unit, OverlapError> check_overlap(
    const std::vector<surface::InstanceDecl>& instances);

// All guards over a program. With `keep_going` false, stops at the first.
std::vector<Diagnostic> check_guards(const surface::SourceProgram& p,
                                     bool keep_going = false);

}  // namespace bidi::guards
