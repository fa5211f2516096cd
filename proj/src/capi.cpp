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

#include <memory>
#include <string>

#include "bidi/driver.hpp"
#include "bidi/evaluator.hpp"
#include "bidi_tc.h"

struct bidi_program {
  bidi::Options options;
  std::string file = "<input>";
  bool compiled = false;
  bidi::Compilation compilation;
  std::string text;  // last string handed out
  std::string eval_result;
};

namespace {

bidi_status status_of(const bidi::Compilation& c) {
  return static_cast<bidi_status>(c.exit_code());
}

const char* hand_out(bidi_program* prog, std::string s) {
  prog->text = std::move(s);
  return prog->text.c_str();
}

bidi::Diagnostic eval_failure(const bidi::eval::EvalError& e) {
  bidi::Diagnostic d;
  d.code = bidi::codes::kEval;
  d.family = e.kind() == bidi::eval::EvalErrorKind::StuckApplication
                 ? bidi::ErrorFamily::Internal
                 : bidi::ErrorFamily::Type;
  d.message = std::string("evaluation failed (") +
              bidi::eval::kind_name(e.kind()) + "): " + e.what();
  return d;
}

}  // namespace

extern "C" {

const char* bidi_version(void) { return "0.1.0"; }

const char* bidi_status_name(bidi_status status) {
  switch (status) {
    case BIDI_OK: return "ok";
    case BIDI_TYPE_ERROR: return "type error";
    case BIDI_PARSE_ERROR: return "parse error";
    case BIDI_GUARD_ERROR: return "guard violation";
    case BIDI_INTERNAL_ERROR: return "internal error";
    case BIDI_USAGE_ERROR: return "usage error";
  }
  return "unknown status";
}

bidi_program* bidi_program_new(void) {
  try {
    return new bidi_program();
  } catch (...) {
    return nullptr;
  }
}

void bidi_program_free(bidi_program* prog) { delete prog; }

bidi_status bidi_program_set_mode(bidi_program* prog, bidi_mode mode) {
  if (!prog) return BIDI_USAGE_ERROR;
  switch (mode) {
    case BIDI_MODE_BIDIRECTIONAL:
      prog->options.mode = bidi::elab::Mode::Bidirectional;
      return BIDI_OK;
    case BIDI_MODE_BASIC:
      prog->options.mode = bidi::elab::Mode::Basic;
      return BIDI_OK;
  }
  return BIDI_USAGE_ERROR;
}

bidi_status bidi_program_set_keep_going(bidi_program* prog, int on) {
  if (!prog) return BIDI_USAGE_ERROR;
  prog->options.keep_going = on != 0;
  return BIDI_OK;
}

bidi_status bidi_program_compile(bidi_program* prog, const char* file,
                                 const char* source, size_t len) {
  if (!prog || (!source && len > 0)) return BIDI_USAGE_ERROR;
  try {
    prog->file = file ? file : "<input>";
    prog->options.stage = bidi::Stage::Check;
    prog->compilation = bidi::compile(std::string(source ? source : "", len),
                                      prog->options);
    prog->compiled = true;
    return status_of(prog->compilation);
  } catch (const std::exception&) {
    prog->compiled = false;
    return BIDI_INTERNAL_ERROR;
  }
}

bidi_status bidi_program_verify(bidi_program* prog) {
  if (!prog || !prog->compiled) return BIDI_USAGE_ERROR;
  auto& c = prog->compilation;
  if (!c.elaborated) return status_of(c);
  if (c.verified) return BIDI_OK;
  try {
    c.diagnostics = bidi::verify(c.result.program);
  } catch (const std::exception&) {
    return BIDI_INTERNAL_ERROR;
  }
  c.verified = c.diagnostics.empty();
  return status_of(c);
}

const char* bidi_program_signatures(bidi_program* prog) {
  if (!prog || !prog->compiled) return nullptr;
  std::string out;
  for (const auto& sig : prog->compilation.result.signatures) {
    out += sig.name + " : " + bidi::surface::show_signature(sig.type) + "\n";
  }
  return hand_out(prog, std::move(out));
}

const char* bidi_program_core_dump(bidi_program* prog) {
  if (!prog || !prog->compilation.elaborated) return nullptr;
  return hand_out(prog, bidi::core::dump_core(prog->compilation.result.program));
}

const char* bidi_program_theory_dump(bidi_program* prog) {
  if (!prog || !prog->compilation.elaborated) return nullptr;
  return hand_out(prog, bidi::elab::dump_theory(prog->compilation.result.theory));
}

const char* bidi_program_diagnostics(bidi_program* prog, int json) {
  if (!prog || !prog->compiled) return nullptr;
  std::string out;
  for (const auto& d : prog->compilation.diagnostics) {
    out += json ? bidi::render_json(d, prog->file) : bidi::render(d, prog->file);
    out += "\n";
  }
  return hand_out(prog, std::move(out));
}

size_t bidi_program_diagnostic_count(const bidi_program* prog) {
  if (!prog || !prog->compiled) return 0;
  return prog->compilation.diagnostics.size();
}

bidi_status bidi_program_eval(bidi_program* prog, const char* name) {
  if (!prog || !name) return BIDI_USAGE_ERROR;
  bidi_status st = bidi_program_verify(prog);
  if (st != BIDI_OK) return st;
  auto& c = prog->compilation;
  bool found = false;
  for (const auto& d : c.result.program.decls) {
    if (auto v = std::get_if<bidi::core::ValueBind>(&d); v && v->name == name) {
      found = true;
    }
  }
  if (!found) return BIDI_USAGE_ERROR;
  try {
    bidi::eval::Evaluator ev(c.result.program);
    prog->eval_result = bidi::eval::show(ev.global(name));
    return BIDI_OK;
  } catch (const bidi::eval::EvalError& e) {
    c.diagnostics.push_back(eval_failure(e));
    return status_of(c);
  } catch (const std::exception&) {
    return BIDI_INTERNAL_ERROR;
  }
}

const char* bidi_program_eval_result(bidi_program* prog) {
  if (!prog) return nullptr;
  return prog->eval_result.c_str();
}

}  // extern "C"
