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

#include "bidi/fc_check.hpp"

#include <gtest/gtest.h>

#include "core_reader.hpp"
#include "test_data.hpp"

namespace bidi::fc {
namespace {

using namespace core;
using testing::CoreNames;
using testing::read_coercion;
using testing::read_core;
using testing::read_term;
using testing::read_type;

const char* kEqPrelude =
    "data Bool where { True : Bool ; False : Bool }\n"
    "data Int where { }\n"
    "data List a where { }\n"
    "data Pair a b where { }\n"
    "data Unit where { MkUnit : Unit }\n"
    "data Tup2 t1 t2 where { MkTup2 : forall t1. forall t2. t1 -> t2 -> Tup2 t1 t2 }\n"
    "type F_Eq/1\n"
    "data D_Eq a where { K_Eq : forall a. F_Eq a -> (a -> a -> Bool) -> D_Eq a }\n"
    "axiom g_Pair b c : F_Eq (Pair b c) ~ Tup2 (D_Eq b) (D_Eq c)\n";

Env env_of(const std::string& text) {
  auto env = check_program(read_core(text));
  if (!env) throw std::runtime_error(env.error().describe());
  return env.value();
}

CoreNames names() { return {{"F_Eq"}, {"g_Pair", "g1", "g2"}}; }

FcErrorKind term_error(const Env& env, const std::string& text) {
  auto r = check_term(env, read_term(text, names()));
  EXPECT_FALSE(r.has_value()) << text << " : " << dump(r.value());
  return r.error().kind;
}

TypePtr term_type(const Env& env, const std::string& text) {
  auto r = check_term(env, read_term(text, names()));
  if (!r) throw std::runtime_error(text + ": " + r.error().describe());
  return r.value();
}

TEST(CheckTypeTest, WellFormedness) {
  Env env = Env::initial();
  env.push_tyvar("a");
  EXPECT_TRUE(check_type(env, read_type("a -> a")).has_value());
  EXPECT_EQ(check_type(Env::initial(), read_type("a")).error().kind,
            FcErrorKind::UnboundTyVar);
  EXPECT_EQ(check_type(Env::initial(), read_type("Int")).error().kind,
            FcErrorKind::UnknownTyCon);
}

TEST(CheckTypeTest, FamiliesAndQualifiedTypes) {
  Env env = env_of("type F/1\ndata Unit where { }\n");
  env.push_tyvar("a");
  CoreNames n{{"F"}, {}};
  EXPECT_TRUE(check_type(env, read_type("(F a ~ Unit) => a", n)).has_value());
  EXPECT_EQ(check_type(env, read_type("G a", {{"G"}, {}})).error().kind,
            FcErrorKind::UnknownFamily);
  EXPECT_EQ(check_type(env, ty_fam("F", {})).error().kind, FcErrorKind::ArityMismatch);
}

TEST(CheckCoercionTest, Reflexivity) {
  Env env = env_of("data Int where { }\n");
  auto p = check_coercion(env, read_coercion("<Int>"));
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(dump(p.value()), "Int ~ Int");
  p = check_coercion(env, read_coercion("sym <Int -> Int>"));
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(dump(p.value()), "Int -> Int ~ Int -> Int");
}

TEST(CheckCoercionTest, OverlappingAxiomsProveFalsehood) {
  Env env = env_of(std::string(kEqPrelude) +
                   "axiom g1 a : F_Eq (List a) ~ D_Eq a\n"
                   "axiom g2 b : F_Eq (List b) ~ Unit\n");
  auto p = check_coercion(env, read_coercion("sym (g1 @Int) ; g2 @Int", names()));
  ASSERT_TRUE(p.has_value()) << p.error().describe();
  EXPECT_EQ(dump(p.value()), "D_Eq Int ~ Unit");
}

TEST(CheckCoercionTest, TransitivityNeedsMatchingMiddle) {
  Env env = env_of("data Int where { }\ndata Bool where { }\n");
  auto p = check_coercion(env, read_coercion("<Int> ; <Bool>"));
  ASSERT_FALSE(p.has_value());
  EXPECT_EQ(p.error().kind, FcErrorKind::IllTypedCoercion);
  EXPECT_EQ(p.error().rule, "CoTrans");
}

TEST(CheckCoercionTest, Decomposition) {
  Env env = env_of(kEqPrelude);
  env.push_covar("w", {read_type("List Int"), read_type("List Bool")});
  auto l = check_coercion(env, read_coercion("right w"));
  ASSERT_TRUE(l.has_value()) << l.error().describe();
  EXPECT_EQ(dump(l.value()), "Int ~ Bool");
  auto k = check_coercion(env, read_coercion("left w"));
  ASSERT_TRUE(k.has_value());
  EXPECT_EQ(dump(k.value()), "List ~ List");
  auto app = check_coercion(env, read_coercion("<List> <Int>"));
  ASSERT_TRUE(app.has_value());
  EXPECT_EQ(dump(app.value()), "List Int ~ List Int");
}

TEST(CheckCoercionTest, AxiomInstantiationAndFamilyCongruence) {
  Env env = env_of(kEqPrelude);
  auto p = check_coercion(env, read_coercion("g_Pair @Int @Bool", names()));
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(dump(p.value()), "F_Eq (Pair Int Bool) ~ Tup2 (D_Eq Int) (D_Eq Bool)");
  EXPECT_FALSE(check_coercion(env, read_coercion("g_Pair @Int", names())).has_value());
  auto f = check_coercion(env, read_coercion("F_Eq(<Int>)", names()));
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(dump(f.value()), "F_Eq Int ~ F_Eq Int");
}

TEST(CheckCoercionTest, PolymorphicCoercions) {
  Env env = env_of(kEqPrelude);
  auto p = check_coercion(env, read_coercion("inst (forall a. <a -> a>) <Int>"));
  ASSERT_TRUE(p.has_value()) << p.error().describe();
  EXPECT_EQ(dump(p.value()), "Int -> Int ~ Int -> Int");
}

TEST(CheckTermTest, PolymorphicIdentity) {
  EXPECT_EQ(dump(term_type(Env::initial(), "/\\a. \\(x : a). x")), "forall a. a -> a");
}

TEST(CheckTermTest, CastOfContextTuple) {
  Env env = env_of(kEqPrelude);
  env.push_tyvar("b");
  env.push_tyvar("c");
  env.push_term("db", read_type("D_Eq b"));
  env.push_term("dc", read_type("D_Eq c"));
  TypePtr t = term_type(
      env, "MkTup2 @(D_Eq b) @(D_Eq c) db dc |> sym (g_Pair @b @c)");
  EXPECT_EQ(dump(t), "F_Eq (Pair b c)");
}

TEST(CheckTermTest, CaseAndInversion) {
  Env env = env_of(kEqPrelude);
  TypePtr t = term_type(
      env,
      "/\\b. /\\c. \\(d : D_Eq (Pair b c)). case d of { K_Eq (ctx : F_Eq (Pair b c)) "
      "(m : Pair b c -> Pair b c -> Bool) -> case ctx |> g_Pair @b @c of { MkTup2 "
      "(c1 : D_Eq b) (c2 : D_Eq c) -> c1 } }");
  EXPECT_EQ(dump(t), "forall b. forall c. D_Eq (Pair b c) -> D_Eq b");
}

TEST(CheckTermTest, Errors) {
  Env env = env_of(kEqPrelude);
  EXPECT_EQ(term_error(env, "x"), FcErrorKind::UnboundVar);
  EXPECT_EQ(term_error(env, "Nope"), FcErrorKind::UnknownDataCon);
  EXPECT_EQ(term_error(env, "(\\(x : Int). x) True"), FcErrorKind::AppMismatch);
  EXPECT_EQ(term_error(env, "True |> <Int>"), FcErrorKind::CastMismatch);
  EXPECT_EQ(term_error(env, "case True of { True (x : Int) -> x }"),
            FcErrorKind::PatternArityMismatch);
  EXPECT_EQ(term_error(env, "case (\\(x : Int). x) of { True -> True }"),
            FcErrorKind::NonDataScrutinee);
  EXPECT_EQ(term_error(env, "case True of { True -> True ; False -> MkUnit }"),
            FcErrorKind::BranchMismatch);
}

TEST(CheckTermTest, PatternBinderTypesMustMatchFields) {
  Env env = env_of(kEqPrelude);
  EXPECT_EQ(term_error(env, "case MkTup2 @Int @Bool x y of { MkTup2 (p : Int) (q : Int) -> p }"),
            FcErrorKind::UnboundVar);
  env.push_term("t", read_type("Tup2 Int Bool"));
  EXPECT_NE(term_error(env, "case t of { MkTup2 (p : Int) (q : Int) -> p }"),
            FcErrorKind::UnboundVar);
}

TEST(CheckTermTest, CoercionAbstraction) {
  Env env = env_of(kEqPrelude);
  TypePtr t = term_type(env, "/\\(w : F_Eq Int ~ Unit). MkUnit |> sym w");
  EXPECT_EQ(dump(t), "(F_Eq Int ~ Unit) => F_Eq Int");
  env.push_term("f", t);
  EXPECT_EQ(term_error(env, "f @~(<Int>)"), FcErrorKind::AppMismatch);
}

TEST(CheckTermTest, LetIsRecursive) {
  Env env = env_of(kEqPrelude);
  TypePtr t = term_type(env, "let f : Int -> Int = \\(x : Int). f x in f");
  EXPECT_EQ(dump(t), "Int -> Int");
}

TEST(CheckProgramTest, EmptyProgram) {
  EXPECT_TRUE(check_program(Program{}).has_value());
}

TEST(CheckProgramTest, ValueTypeMismatch) {
  auto r = check_program(read_core(
      "data Int where { }\ndata Unit where { MkUnit : Unit }\nlet x : Int = MkUnit\n"));
  ASSERT_FALSE(r.has_value());
  EXPECT_EQ(r.error().kind, FcErrorKind::DeclMismatch);
}

TEST(CheckProgramTest, DuplicateNames) {
  auto r = check_program(read_core("data Int where { }\ndata Int where { }\n"));
  ASSERT_FALSE(r.has_value());
  EXPECT_EQ(r.error().kind, FcErrorKind::DuplicateName);
}

TEST(CheckProgramTest, AxiomNeedsDeclaredFamilyAndPatterns) {
  EXPECT_FALSE(check_program(read_core("data Unit where { }\n"
                                       "type F/1\n"
                                       "axiom g a : F (forall b. b) ~ Unit\n"))
                   .has_value());
  core::Program undeclared = read_core("data Unit where { }\n");
  undeclared.decls.push_back(core::AxiomDecl{"g", {"a"}, "F", {core::ty_var("a")},
                                             core::ty_con("Unit")});
  EXPECT_FALSE(check_program(undeclared).has_value());
}

TEST(CheckProgramTest, ElaboratedPrograms) {
  for (const auto& file : {"corpus/cmp.btc", "corpus/cmp2.btc"}) {
    auto c = testing::compile_as(testing::read_data(file), elab::Mode::Bidirectional,
                                 Stage::Check);
    ASSERT_TRUE(c.ok()) << file;
    auto r = check_program(c.result.program);
    EXPECT_TRUE(r.has_value()) << file << ": " << r.error().describe();
  }
}

TEST(CheckProgramTest, Cmp2HasItsDeclaredType) {
  auto c = testing::compile_as(testing::read_data("corpus/cmp2.btc"),
                               elab::Mode::Bidirectional, Stage::Check);
  ASSERT_TRUE(c.ok());
  Env env = Env::initial();
  for (const auto& d : c.result.program.decls) {
    if (auto v = std::get_if<ValueBind>(&d); v && v->name == "cmp2") {
      auto t = check_term(env, v->term);
      ASSERT_TRUE(t.has_value()) << t.error().describe();
      EXPECT_EQ(dump(t.value()),
                "forall a. forall b. D_Eq (Pair a b) -> a -> a -> b -> b -> Bool");
      break;
    }
    ASSERT_TRUE(check_decl(env, d).has_value());
  }
}

TEST(CheckPropertyTest, Weakening) {
  for (const auto& file : testing::corpus_files()) {
    auto c = testing::compile_as(testing::read_data(file), elab::Mode::Bidirectional,
                                 Stage::Check);
    if (!c.ok()) continue;
    Env env = Env::initial();
    for (const auto& d : c.result.program.decls) {
      if (auto v = std::get_if<ValueBind>(&d)) {
        Env weak = env;
        weak.push_tyvar("$unrelated");
        weak.push_term("$unused", ty_var("$unrelated"));
        weak.push(Env::Entry{Env::Kind::TyCon, "$Opaque", nullptr, {}, {}, 0});
        auto strong = check_term(env, v->term);
        auto weaker = check_term(weak, v->term);
        ASSERT_EQ(strong.has_value(), weaker.has_value()) << file << " " << v->name;
        if (strong) {
          ASSERT_TRUE(alpha_eq(strong.value(), weaker.value()));
        }
      }
      ASSERT_TRUE(check_decl(env, d).has_value()) << file;
    }
  }
}

}  // namespace
}  // namespace bidi::fc
