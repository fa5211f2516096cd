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

// The whole pipeline: parse, guards, scopes, elaboration, core re-check.

#pragma once

#include <string>
#include <vector>

#include "bidi/core.hpp"
#include "bidi/diagnostic.hpp"
#include "bidi/elaborator.hpp"
#include "bidi/surface.hpp"

namespace bidi {

enum class Stage { Check, Verify };

struct Options {
  elab::Mode mode = elab::Mode::Bidirectional;
  bool keep_going = false;
  Stage stage = Stage::Check;
};

struct Compilation {
  surface::SourceProgram source;
  elab::ElabResult result;
  std::vector<Diagnostic> diagnostics;
  bool elaborated = false;  // result holds a complete program
  bool verified = false;

  bool ok() const { return diagnostics.empty(); }
  // 0 when ok, otherwise the exit code of the first diagnostic's family.
  int exit_code() const;
};

Compilation compile(const std::string& text, const Options& options = {});

// Re-checks an elaborated program. A failure is an internal error.
std::vector<Diagnostic> verify(const core::Program& program);

}  // namespace bidi
