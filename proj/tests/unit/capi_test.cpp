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

#include "bidi_tc.h"

#include <gtest/gtest.h>

#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace {

struct ProgramDeleter {
  void operator()(bidi_program* p) const { bidi_program_free(p); }
};
using Handle = std::unique_ptr<bidi_program, ProgramDeleter>;

std::string read_data(const std::string& relative) {
  std::ifstream in(std::string(BIDI_TEST_DATA_DIR) + "/" + relative);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bidi_status compile(bidi_program* p, const std::string& relative) {
  std::string text = read_data(relative);
  return bidi_program_compile(p, relative.c_str(), text.data(), text.size());
}

TEST(CapiTest, VersionAndStatusNames) {
  EXPECT_STREQ(bidi_version(), "0.1.0");
  EXPECT_STREQ(bidi_status_name(BIDI_OK), "ok");
  EXPECT_STREQ(bidi_status_name(BIDI_GUARD_ERROR), "guard violation");
}

TEST(CapiTest, NullHandles) {
  EXPECT_EQ(bidi_program_set_mode(nullptr, BIDI_MODE_BASIC), BIDI_USAGE_ERROR);
  EXPECT_EQ(bidi_program_compile(nullptr, nullptr, "", 0), BIDI_USAGE_ERROR);
  EXPECT_EQ(bidi_program_verify(nullptr), BIDI_USAGE_ERROR);
  EXPECT_EQ(bidi_program_eval(nullptr, "x"), BIDI_USAGE_ERROR);
  EXPECT_EQ(bidi_program_signatures(nullptr), nullptr);
  EXPECT_EQ(bidi_program_diagnostic_count(nullptr), 0u);
  bidi_program_free(nullptr);
}

TEST(CapiTest, VerifyBeforeCompileIsUsageError) {
  Handle p(bidi_program_new());
  EXPECT_EQ(bidi_program_verify(p.get()), BIDI_USAGE_ERROR);
  EXPECT_EQ(bidi_program_core_dump(p.get()), nullptr);
}

TEST(CapiTest, CheckCmp) {
  Handle p(bidi_program_new());
  ASSERT_EQ(compile(p.get(), "corpus/cmp.btc"), BIDI_OK);
  EXPECT_STREQ(bidi_program_signatures(p.get()),
               "cmp : forall a. Eq (List a) => a -> a -> Bool\n");
  EXPECT_EQ(bidi_program_verify(p.get()), BIDI_OK);
  std::string core = bidi_program_core_dump(p.get());
  EXPECT_NE(core.find("type F_Eq/1"), std::string::npos);
  std::string theory = bidi_program_theory_dump(p.get());
  EXPECT_NE(theory.find("$inv_Eq_List_1"), std::string::npos);
}

TEST(CapiTest, BasicModeRejectsCmp) {
  Handle p(bidi_program_new());
  ASSERT_EQ(bidi_program_set_mode(p.get(), BIDI_MODE_BASIC), BIDI_OK);
  EXPECT_EQ(compile(p.get(), "corpus/cmp.btc"), BIDI_TYPE_ERROR);
  EXPECT_EQ(bidi_program_diagnostic_count(p.get()), 1u);
  EXPECT_STREQ(bidi_program_diagnostics(p.get(), 0),
               "error[E0204]: could not deduce Eq a from Eq (List a)\n"
               " --> corpus/cmp.btc:20:1\n");
  std::string json = bidi_program_diagnostics(p.get(), 1);
  EXPECT_NE(json.find("\"E0204\""), std::string::npos);
  EXPECT_EQ(bidi_program_verify(p.get()), BIDI_TYPE_ERROR);
  EXPECT_EQ(bidi_program_core_dump(p.get()), nullptr);
}

TEST(CapiTest, ErrorStatuses) {
  Handle p(bidi_program_new());
  EXPECT_EQ(compile(p.get(), "programs/parse_error.btc"), BIDI_PARSE_ERROR);
  EXPECT_EQ(compile(p.get(), "programs/cycle.btc"), BIDI_GUARD_ERROR);
  EXPECT_EQ(compile(p.get(), "programs/clash.btc"), BIDI_TYPE_ERROR);
}

TEST(CapiTest, KeepGoing) {
  const char* text = "data Int\nlet f = \\x. y\nlet g = \\x. z\n";
  Handle p(bidi_program_new());
  EXPECT_EQ(bidi_program_compile(p.get(), nullptr, text, strlen(text)), BIDI_TYPE_ERROR);
  EXPECT_EQ(bidi_program_diagnostic_count(p.get()), 1u);
  bidi_program_set_keep_going(p.get(), 1);
  EXPECT_EQ(bidi_program_compile(p.get(), nullptr, text, strlen(text)), BIDI_TYPE_ERROR);
  EXPECT_EQ(bidi_program_diagnostic_count(p.get()), 2u);
  std::string diags = bidi_program_diagnostics(p.get(), 0);
  EXPECT_NE(diags.find("<input>:3:"), std::string::npos) << diags;
}

TEST(CapiTest, Eval) {
  Handle p(bidi_program_new());
  ASSERT_EQ(compile(p.get(), "corpus/cmp2.btc"), BIDI_OK);
  ASSERT_EQ(bidi_program_eval(p.get(), "same"), BIDI_OK);
  EXPECT_STREQ(bidi_program_eval_result(p.get()), "true");
  ASSERT_EQ(bidi_program_eval(p.get(), "different"), BIDI_OK);
  EXPECT_STREQ(bidi_program_eval_result(p.get()), "false");
  EXPECT_EQ(bidi_program_eval(p.get(), "missing"), BIDI_USAGE_ERROR);
  EXPECT_EQ(bidi_program_eval(p.get(), "primEqInt"), BIDI_USAGE_ERROR);
}

TEST(CapiTest, EvalFailureIsReported) {
  const char* text = "data Int\nprimitive mystery :: Int\nlet x = mystery\n";
  Handle p(bidi_program_new());
  ASSERT_EQ(bidi_program_compile(p.get(), "m.btc", text, strlen(text)), BIDI_OK);
  EXPECT_EQ(bidi_program_eval(p.get(), "x"), BIDI_TYPE_ERROR);
  std::string diags = bidi_program_diagnostics(p.get(), 0);
  EXPECT_NE(diags.find("E0403"), std::string::npos) << diags;
  EXPECT_NE(diags.find("UnknownPrimitive"), std::string::npos) << diags;
}

TEST(CapiTest, EmptySource) {
  Handle p(bidi_program_new());
  EXPECT_EQ(bidi_program_compile(p.get(), nullptr, nullptr, 0), BIDI_OK);
  EXPECT_STREQ(bidi_program_signatures(p.get()), "");
  EXPECT_EQ(bidi_program_verify(p.get()), BIDI_OK);
}

}  // namespace
