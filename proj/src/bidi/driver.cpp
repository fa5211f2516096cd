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

#include "bidi/driver.hpp"

#include "bidi/fc_check.hpp"
#include "bidi/guards.hpp"

namespace bidi {

int Compilation::exit_code() const {
  if (diagnostics.empty()) return 0;
  return bidi::exit_code(diagnostics.front().family);
}

std::vector<Diagnostic> verify(const core::Program& program) {
  auto checked = fc::check_program(program);
  if (checked) return {};
  Diagnostic d;
  d.code = codes::kCoreCheck;
  d.family = ErrorFamily::Internal;
  d.message = "elaborated core is ill-typed: " + checked.error().describe();
  return {d};
}

Compilation compile(const std::string& text, const Options& options) {
  Compilation c;
  try {
    c.source = surface::parse_program(text);
  } catch (const CompileError& e) {
    c.diagnostics.push_back(e.diagnostic());
    return c;
  }

  auto keep = [&](std::vector<Diagnostic> ds) {
    if (!options.keep_going && ds.size() > 1) ds.resize(1);
    c.diagnostics = std::move(ds);
    return !c.diagnostics.empty();
  };
  if (keep(guards::check_guards(c.source, options.keep_going))) return c;
  if (keep(surface::check_scopes(c.source))) return c;

  try {
    c.result = elab::elab_program(c.source, options.mode, options.keep_going);
  } catch (const InternalError& e) {
    Diagnostic d;
    d.code = codes::kInvariant;
    d.family = ErrorFamily::Internal;
    d.message = std::string("internal error: ") + e.what();
    c.diagnostics.push_back(d);
    return c;
  }
  if (keep(c.result.diagnostics)) return c;
  c.elaborated = true;

  if (options.stage == Stage::Verify) {
    if (keep(verify(c.result.program))) return c;
    c.verified = true;
  }
  return c;
}

}  // namespace bidi
