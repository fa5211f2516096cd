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

#include "bidi/diagnostic.hpp"

#include "json.hpp"

namespace bidi {

int exit_code(ErrorFamily family) {
  switch (family) {
    case ErrorFamily::Type:
      return 1;
    case ErrorFamily::Parse:
      return 2;
    case ErrorFamily::Guard:
      return 3;
    case ErrorFamily::Internal:
      return 4;
  }
  return 4;
}

static const char* family_name(ErrorFamily family) {
  switch (family) {
    case ErrorFamily::Type:
      return "type";
    case ErrorFamily::Parse:
      return "parse";
    case ErrorFamily::Guard:
      return "guard";
    case ErrorFamily::Internal:
      return "internal";
  }
  return "internal";
}

std::string render(const Diagnostic& d, const std::string& file) {
  std::string out = "error[" + d.code + "]: " + d.message + "\n --> " + file +
                    ":" + std::to_string(d.pos.line) + ":" +
                    std::to_string(d.pos.col);
  if (d.has_related) {
    out += "\n --> " + file + ":" + std::to_string(d.related.line) + ":" +
           std::to_string(d.related.col);
  }
  return out;
}

std::string render_json(const Diagnostic& d, const std::string& file) {
  nlohmann::json j = {{"code", d.code},
                      {"family", family_name(d.family)},
                      {"message", d.message},
                      {"file", file},
                      {"line", d.pos.line},
                      {"col", d.pos.col}};
  if (d.has_related) {
    j["related"] = {{"line", d.related.line}, {"col", d.related.col}};
  }
  return j.dump();
}

void fail(const char* code, ErrorFamily family, std::string message,
          SourcePos pos) {
  Diagnostic d;
  d.code = code;
  d.family = family;
  d.message = std::move(message);
  d.pos = pos;
  throw CompileError(std::move(d));
}

}  // namespace bidi
