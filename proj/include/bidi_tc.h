/* Copyright 2026 The bidi-tc Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

/* C interface to the bidi-tc compiler. A bidi_program handle owns one
   compiled source file and every string returned for it; such strings stay
   valid until the next call on the same handle or until it is freed. */

#ifndef BIDI_TC_H_
#define BIDI_TC_H_

#include <stddef.h>

#if defined(_WIN32)
#define BIDI_API __declspec(dllexport)
#else
#define BIDI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  BIDI_OK = 0,
  BIDI_TYPE_ERROR = 1,
  BIDI_PARSE_ERROR = 2,
  BIDI_GUARD_ERROR = 3,
  BIDI_INTERNAL_ERROR = 4,
  BIDI_USAGE_ERROR = 5
} bidi_status;

typedef enum {
  BIDI_MODE_BIDIRECTIONAL = 0,
  BIDI_MODE_BASIC = 1
} bidi_mode;

typedef struct bidi_program bidi_program;

BIDI_API const char* bidi_version(void);
BIDI_API const char* bidi_status_name(bidi_status status);

BIDI_API bidi_program* bidi_program_new(void);
BIDI_API void bidi_program_free(bidi_program* prog);

BIDI_API bidi_status bidi_program_set_mode(bidi_program* prog, bidi_mode mode);
/* Report every error instead of stopping at the first. */
BIDI_API bidi_status bidi_program_set_keep_going(bidi_program* prog, int on);

/* Parses, checks and elaborates `len` bytes of source. `file` is only used
   in diagnostics and may be NULL. */
BIDI_API bidi_status bidi_program_compile(bidi_program* prog, const char* file,
                                          const char* source, size_t len);
/* Type checks the elaborated core of a compiled program. */
BIDI_API bidi_status bidi_program_verify(bidi_program* prog);

/* One "name : type" line per top-level binding. */
BIDI_API const char* bidi_program_signatures(bidi_program* prog);
BIDI_API const char* bidi_program_core_dump(bidi_program* prog);
BIDI_API const char* bidi_program_theory_dump(bidi_program* prog);
/* Rendered diagnostics; with `json` nonzero, one JSON object per line. */
BIDI_API const char* bidi_program_diagnostics(bidi_program* prog, int json);
BIDI_API size_t bidi_program_diagnostic_count(const bidi_program* prog);

/* Verifies, then evaluates the top-level binding `name`. The printed value
   is available from bidi_program_eval_result. */
BIDI_API bidi_status bidi_program_eval(bidi_program* prog, const char* name);
BIDI_API const char* bidi_program_eval_result(bidi_program* prog);

#ifdef __cplusplus
}
#endif

#endif /* BIDI_TC_H_ */
