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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bidi {

struct SourcePos {
  int line = 0;
  int col = 0;
};

enum class ErrorFamily { Parse, Type, Guard, Internal };

// Process exit code associated with each family.
int exit_code(ErrorFamily family);

// Stable diagnostic codes. The first digit after 'E' encodes the family.
namespace codes {
inline constexpr const char* kParse = "E0001";

inline constexpr const char* kUnboundVar = "E0101";
inline constexpr const char* kUnknownTyCon = "E0102";
inline constexpr const char* kArityMismatch = "E0103";
inline constexpr const char* kUnknownClass = "E0104";
inline constexpr const char* kDuplicate = "E0105";
inline constexpr const char* kUnknownSuperclass = "E0106";
inline constexpr const char* kMethodSigScope = "E0107";
inline constexpr const char* kMethodName = "E0108";
inline constexpr const char* kUnboundTyVar = "E0109";
inline constexpr const char* kUnusedQuantifier = "E0110";
inline constexpr const char* kReservedName = "E0111";

inline constexpr const char* kClash = "E0201";
inline constexpr const char* kOccurs = "E0202";
inline constexpr const char* kUntouchable = "E0203";
inline constexpr const char* kResidual = "E0204";
inline constexpr const char* kAmbiguousType = "E0205";
inline constexpr const char* kAmbiguousMatch = "E0206";

inline constexpr const char* kSuperclassCycle = "E0301";
inline constexpr const char* kPaterson = "E0302";
inline constexpr const char* kOverlap = "E0303";

inline constexpr const char* kFuel = "E0401";
inline constexpr const char* kCoreCheck = "E0402";
inline constexpr const char* kEval = "E0403";
inline constexpr const char* kInvariant = "E0404";
}  // namespace codes

struct Diagnostic {
  std::string code;
  ErrorFamily family = ErrorFamily::Type;
  std::string message;
  SourcePos pos;
  // Optional secondary position (e.g. the other instance of an overlap).
  SourcePos related;
  bool has_related = false;
};

// "error[E0204]: message\n --> file:line:col"
std::string render(const Diagnostic& d, const std::string& file);
std::string render_json(const Diagnostic& d, const std::string& file);

class CompileError : public std::runtime_error {
 public:
  explicit CompileError(Diagnostic d)
      : std::runtime_error(d.message), diag_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

[[noreturn]] void fail(const char* code, ErrorFamily family,
                       std::string message, SourcePos pos = {});

// Invariant violations inside the pipeline. Always a bug; exit code 4.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bidi
