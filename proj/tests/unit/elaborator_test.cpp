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

#include "bidi/elaborator.hpp"

#include <gtest/gtest.h>

#include "bidi/fc_check.hpp"
#include "test_data.hpp"

namespace bidi::elab {
namespace {

using surface::parse_expr;
using surface::parse_poly_type;
using surface::parse_program;

const char* kEq =
    "data Int\ndata Bool\ndata List a\ndata Pair a b\n"
    "primitive primEqInt :: Int -> Int -> Bool\n"
    "primitive listEqBy :: forall a. (a -> a -> Bool) -> List a -> List a -> Bool\n"
    "primitive pairEqBy :: forall a b. (a -> a -> Bool) -> (b -> b -> Bool) -> "
    "Pair a b -> Pair a b -> Bool\n"
    "primitive single :: forall a. a -> List a\n"
    "class Eq a where { eq :: a -> a -> Bool }\n";

const char* kEqInstances =
    "instance Eq Int where { eq = primEqInt }\n"
    "instance (Eq a) => Eq (List a) where { eq = listEqBy eq }\n"
    "instance (Eq a, Eq b) => Eq (Pair a b) where { eq = pairEqBy eq eq }\n";

ElabResult elaborate(const std::string& text, Mode mode = Mode::Bidirectional,
                     bool keep_going = false) {
  return elab_program(parse_program(text), mode, keep_going);
}

std::vector<std::string> dumps(const core::Program& p) {
  std::vector<std::string> out;
  for (const auto& d : p.decls) out.push_back(core::dump(d));
  return out;
}

bool has_decl(const ElabResult& r, const std::string& text) {
  auto ds = dumps(r.program);
  return std::find(ds.begin(), ds.end(), text) != ds.end();
}

const core::ValueBind* value(const ElabResult& r, const std::string& name) {
  for (const auto& d : r.program.decls) {
    if (auto v = std::get_if<core::ValueBind>(&d); v && v->name == name) return v;
  }
  return nullptr;
}

std::string signature(const ElabResult& r, const std::string& name) {
  for (const auto& s : r.signatures) {
    if (s.name == name) return surface::show_signature(s.type);
  }
  return "<none>";
}

int count(const std::string& haystack, const std::string& needle) {
  int n = 0;
  for (std::size_t at = haystack.find(needle); at != std::string::npos;
       at = haystack.find(needle, at + 1)) {
    ++n;
  }
  return n;
}

TEST(ElabTyTest, Clauses) {
  EXPECT_EQ(core::dump(elab_ty(parse_poly_type("Eq a => a -> Bool"))),
            "forall a. D_Eq a -> a -> Bool");
  EXPECT_EQ(core::dump(elab_ty(surface::tvar("a"))), "a");
  EXPECT_EQ(core::dump(elab_ty(surface::con("List", {surface::tvar("a")}))), "List a");
  EXPECT_EQ(core::dump(elab_ty(parse_poly_type("(Eq a, Ord b) => a -> b"))),
            "forall a. forall b. D_Eq a -> D_Ord b -> a -> b");
}

TEST(ElabCtTest, Clauses) {
  auto ct = [](const std::string& cls, const std::string& t) {
    return core::dump(elab_ct({cls, parse_poly_type(t).body.body}));
  };
  EXPECT_EQ(ct("Eq", "Int"), "D_Eq Int");
  EXPECT_EQ(ct("Eq", "Pair b c"), "D_Eq (Pair b c)");
  EXPECT_EQ(ct("Ord", "a"), "D_Ord a");
}

TEST(GenConstraintsTest, Identity) {
  Session s(Mode::Bidirectional);
  surface::TypeEnv gamma;
  Generated g = gen_constraints(s, gamma, parse_expr("\\x. x"));
  EXPECT_EQ(surface::pretty(g.type), "$a0 -> $a0");
  EXPECT_EQ(core::dump(g.term), "\\(x : $a0). x");
  EXPECT_TRUE(g.wanted.empty());
  EXPECT_TRUE(g.eqs.empty());
}

TEST(GenConstraintsTest, VariableInstantiation) {
  Session s(Mode::Bidirectional);
  surface::TypeEnv gamma;
  gamma.push_term("cmp", surface::TermScheme::from_poly(
                             parse_poly_type("Eq a => a -> a -> Bool")));
  Generated g = gen_constraints(s, gamma, parse_expr("cmp"));
  EXPECT_EQ(surface::pretty(g.type), "$a0 -> $a0 -> Bool");
  EXPECT_EQ(core::dump(g.term), "cmp @$a0 $d1");
  ASSERT_EQ(g.wanted.size(), 1u);
  EXPECT_EQ(engine::show(g.wanted[0]), "$d1 : Eq $a0");
}

TEST(GenConstraintsTest, ApplicationCollectsEquality) {
  Session s(Mode::Bidirectional);
  surface::TypeEnv gamma;
  gamma.push_term("f", surface::TermScheme::mono(surface::tvar("t")));
  gamma.push_term("x", surface::TermScheme::mono(surface::tvar("u")));
  Generated g = gen_constraints(s, gamma, parse_expr("f x"));
  EXPECT_EQ(surface::pretty(g.type), "$a0");
  ASSERT_EQ(g.eqs.size(), 1u);
  EXPECT_EQ(surface::pretty(g.eqs[0].first), "t");
  EXPECT_EQ(surface::pretty(g.eqs[0].second), "u -> $a0");
}

TEST(GenConstraintsTest, LetIsMonomorphicAndRecursive) {
  Session s(Mode::Bidirectional);
  surface::TypeEnv gamma;
  Generated g = gen_constraints(s, gamma, parse_expr("let f = \\x. f x in f"));
  EXPECT_EQ(core::dump(g.term).substr(0, 6), "let f ");
  EXPECT_FALSE(g.eqs.empty());
  EXPECT_EQ(surface::pretty(g.eqs.back().first), "$a0");
}

TEST(GenConstraintsTest, UnboundVariable) {
  Session s(Mode::Bidirectional);
  surface::TypeEnv gamma;
  try {
    gen_constraints(s, gamma, parse_expr("nope"));
    FAIL();
  } catch (const CompileError& e) {
    EXPECT_EQ(e.diagnostic().code, codes::kUnboundVar);
  }
}

TEST(CheckSubsumesTest, ComparisonNeedsInversion) {
  std::string text = std::string(kEq) + kEqInstances +
                     "let cmp :: forall a. Eq (List a) => a -> a -> Bool = \\x y. eq x y\n";
  ElabResult bidi = elaborate(text);
  ASSERT_TRUE(bidi.ok()) << bidi.diagnostics[0].message;
  const core::ValueBind* cmp = value(bidi, "cmp");
  ASSERT_NE(cmp, nullptr);
  EXPECT_NE(core::dump(cmp->term).find("$inv_Eq_List_1 @a"), std::string::npos)
      << core::dump(cmp->term);
  EXPECT_EQ(core::dump(cmp->type), "forall a. D_Eq (List a) -> a -> a -> Bool");

  ElabResult basic = elaborate(text, Mode::Basic);
  ASSERT_EQ(basic.diagnostics.size(), 1u);
  EXPECT_EQ(basic.diagnostics[0].code, codes::kResidual);
  EXPECT_EQ(basic.diagnostics[0].message, "could not deduce Eq a from Eq (List a)");
}

TEST(CheckSubsumesTest, Identity) {
  Session s(Mode::Bidirectional);
  surface::TypeEnv gamma;
  auto t = check_subsumes(s, {}, engine::ProgramTheory{}, gamma, parse_expr("\\x. x"),
                          parse_poly_type("forall a. a -> a"), {});
  EXPECT_EQ(core::dump(t), "/\\a. \\(x : a). x");
}

TEST(CheckSubsumesTest, RigidVariablesStayRigid) {
  ElabResult r = elaborate("data Int\nprimitive n :: Int\nlet f :: forall a. a -> a = \\x. n");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].code, codes::kUntouchable);
}

TEST(ElabClassTest, BidirectionalLayout) {
  ElabResult r = elaborate(std::string(kEq));
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(has_decl(r, "type F_Eq/1"));
  EXPECT_TRUE(has_decl(r, "data D_Eq a where { K_Eq : forall a. F_Eq a -> (a -> a -> Bool) -> D_Eq a }"));
  EXPECT_TRUE(has_decl(r,
                       "let eq : forall a. D_Eq a -> a -> a -> Bool = /\\a. \\(d : D_Eq a). "
                       "case d of { K_Eq (ctx : F_Eq a) (m : a -> a -> Bool) -> m }"));
}

TEST(ElabClassTest, BasicLayout) {
  ElabResult r = elaborate(std::string(kEq), Mode::Basic);
  ASSERT_TRUE(r.ok());
  EXPECT_FALSE(has_decl(r, "type F_Eq/1"));
  EXPECT_TRUE(has_decl(r, "data D_Eq a where { K_Eq : forall a. (a -> a -> Bool) -> D_Eq a }"));
}

TEST(ElabClassTest, SuperclassScheme) {
  ElabResult r = elaborate(std::string(kEq) +
                           "class (Eq a) => Ord a where { lt :: a -> a -> Bool }\n");
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.theory.superclass.size(), 1u);
  EXPECT_EQ(engine::show(r.theory.superclass[0]), "$sc_Ord_1 : forall a. Ord a => Eq a");
  EXPECT_TRUE(has_decl(r,
                       "let $sc_Ord_1 : forall a. D_Ord a -> D_Eq a = /\\a. \\(d : D_Ord a). "
                       "case d of { K_Ord (ctx : F_Ord a) (s1 : D_Eq a) (m : a -> a -> Bool) -> s1 }"));
}

TEST(ElabClassTest, DictionaryLayoutInvariant) {
  ElabResult r = elaborate(
      "data Bool\n"
      "class A a where { fa :: a -> Bool }\n"
      "class B a where { fb :: a -> Bool }\n"
      "class C a where { fc :: a -> Bool }\n"
      "class (A a, B a, C a) => D a where { fd :: a -> Bool }\n");
  ASSERT_TRUE(r.ok());
  const core::DataDecl* data = nullptr;
  for (const auto& d : r.program.decls) {
    if (auto dd = std::get_if<core::DataDecl>(&d); dd && dd->name == "D_D") data = dd;
  }
  ASSERT_NE(data, nullptr);
  EXPECT_EQ(core::dump(data->ctors[0].second),
            "forall a. F_D a -> D_A a -> D_B a -> D_C a -> (a -> Bool) -> D_D a");
  std::vector<std::pair<std::string, std::size_t>> projections = {
      {"$sc_D_1", 1}, {"$sc_D_2", 2}, {"$sc_D_3", 3}, {"fd", 4}};
  for (const auto& [name, field] : projections) {
    const core::ValueBind* v = value(r, name);
    ASSERT_NE(v, nullptr) << name;
    const core::TermPtr& body = v->term->kids[0]->kids[0];
    ASSERT_EQ(body->kind, core::Term::Kind::Case);
    const auto& alt = body->alts.at(0);
    ASSERT_EQ(alt.pat.vars.size(), 5u);
    EXPECT_EQ(alt.rhs->name, alt.pat.vars[field].first) << name;
  }
}

TEST(ElabInstanceTest, PairInstanceArtifacts) {
  ElabResult r = elaborate(std::string(kEq) + kEqInstances);
  ASSERT_TRUE(r.ok()) << r.diagnostics[0].message;
  EXPECT_TRUE(has_decl(r, "axiom $g_Eq_Pair a b : F_Eq (Pair a b) ~ Tup2 (D_Eq a) (D_Eq b)"));
  EXPECT_TRUE(has_decl(r, "axiom $g_Eq_List a : F_Eq (List a) ~ D_Eq a"));
  EXPECT_TRUE(has_decl(r, "axiom $g_Eq_Int : F_Eq Int ~ Unit"));
  ASSERT_EQ(r.theory.inverted.size(), 3u);
  EXPECT_EQ(engine::show(r.theory.inverted[1]),
            "$inv_Eq_Pair_1 : forall a b. Eq (Pair a b) => Eq a");
  EXPECT_EQ(engine::show(r.theory.inverted[2]),
            "$inv_Eq_Pair_2 : forall a b. Eq (Pair a b) => Eq b");
  const core::ValueBind* d0 = value(r, "$i_Eq_Pair");
  ASSERT_NE(d0, nullptr);
  EXPECT_EQ(core::dump(d0->type),
            "forall a. forall b. D_Eq a -> D_Eq b -> D_Eq (Pair a b)");
  EXPECT_NE(core::dump(d0->term).find("|> sym ($g_Eq_Pair @a @b)"), std::string::npos);
  const core::ValueBind* d1 = value(r, "$inv_Eq_Pair_1");
  ASSERT_NE(d1, nullptr);
  EXPECT_EQ(count(core::dump(d1->term), "case "), 2);
}

TEST(ElabInstanceTest, EmptyContext) {
  ElabResult r = elaborate(std::string(kEq) + "instance Eq Int where { eq = primEqInt }\n");
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r.theory.inverted.empty());
  EXPECT_TRUE(has_decl(r, "let $i_Eq_Int : D_Eq Int = K_Eq @Int (MkUnit |> sym $g_Eq_Int) primEqInt"));
}

TEST(ElabInstanceTest, BasicModeEmitsOnlyTheTransformer) {
  ElabResult r = elaborate(std::string(kEq) +
                               "instance (Eq b) => Eq (List b) where { eq = listEqBy eq }\n",
                           Mode::Basic);
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r.theory.inverted.empty());
  auto ds = dumps(r.program);
  EXPECT_EQ(ds.back(),
            "let $i_Eq_List : forall b. D_Eq b -> D_Eq (List b) = /\\b. \\($d0 : D_Eq b). "
            "K_Eq @(List b) (listEqBy @b (eq @b $d0))");
  for (const auto& d : ds) EXPECT_EQ(d.find("axiom"), std::string::npos);
}

TEST(ElabInstanceTest, SuperclassObligation) {
  std::string classes = std::string(kEq) +
                        "class (Eq a) => Ord a where { lt :: a -> a -> Bool }\n"
                        "primitive primLtInt :: Int -> Int -> Bool\n"
                        "primitive listLtBy :: forall a. (a -> a -> Bool) -> List a -> List a -> Bool\n";
  ElabResult missing =
      elaborate(classes + "instance Ord Int where { lt = primLtInt }\n", Mode::Basic);
  ASSERT_EQ(missing.diagnostics.size(), 1u);
  EXPECT_EQ(missing.diagnostics[0].code, codes::kResidual);

  ElabResult ok = elaborate(classes + kEqInstances +
                                "instance Ord Int where { lt = primLtInt }\n"
                                "instance Ord a => Ord (List a) where { lt = listLtBy lt }\n",
                            Mode::Basic);
  EXPECT_TRUE(ok.ok()) << ok.diagnostics[0].message;
}

TEST(ElabValueTest, InferredSignatureIsSimplified) {
  ElabResult r = elaborate(std::string(kEq) + kEqInstances +
                           "let f = \\x. eq (single x) (single x)\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(signature(r, "f"), "forall a. Eq a => a -> Bool");
  ElabResult b = elaborate(std::string(kEq) + kEqInstances +
                               "let f = \\x. eq (single x) (single x)\n",
                           Mode::Basic);
  ASSERT_TRUE(b.ok());
  EXPECT_EQ(signature(b, "f"), "forall a. Eq a => a -> Bool");
}

TEST(ElabValueTest, Identity) {
  ElabResult r = elaborate("let id = \\x. x\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(signature(r, "id"), "forall a. a -> a");
  EXPECT_EQ(core::dump(value(r, "id")->term), "/\\a. \\(x : a). x");
}

TEST(ElabValueTest, ResidualsStayInInferredContext) {
  ElabResult r = elaborate(std::string(kEq) + "let g = \\x y. eq x (single y)\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(signature(r, "g"), "forall a. Eq (List a) => List a -> a -> Bool");
}

TEST(ElabValueTest, ContextOrderFollowsDerivation) {
  ElabResult r = elaborate(std::string(kEq) + "let h = \\x y. primAnd (eq y y) (eq x x)\n" +
                           "");
  EXPECT_FALSE(r.ok());
  ElabResult s = elaborate(std::string(kEq) +
                           "primitive both :: Bool -> Bool -> Bool\n"
                           "let h = \\x y. both (eq y y) (eq x x)\n");
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(signature(s, "h"), "forall a b. (Eq b, Eq a) => a -> b -> Bool");
}

TEST(ElabValueTest, AmbiguousType) {
  ElabResult r = elaborate(std::string(kEq) +
                           "primitive read :: forall a. Int -> a\n"
                           "let h = \\n. eq (read n) (read n)\n");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].code, codes::kAmbiguousType);
}

TEST(ElabValueTest, UnificationFailures) {
  ElabResult clash = elaborate("data Int\ndata Bool\nprimitive n :: Int\n"
                               "primitive neg :: Bool -> Bool\nlet f = neg n\n");
  ASSERT_EQ(clash.diagnostics.size(), 1u);
  EXPECT_EQ(clash.diagnostics[0].code, codes::kClash);
  EXPECT_EQ(clash.diagnostics[0].message, "type mismatch: cannot match 'Bool' with 'Int'");
  ElabResult occurs = elaborate("let f = \\x. x x\n");
  ASSERT_EQ(occurs.diagnostics.size(), 1u);
  EXPECT_EQ(occurs.diagnostics[0].code, codes::kOccurs);
}

TEST(ElabValueTest, RecursionIsMonomorphicWithoutAnnotation) {
  ElabResult r = elaborate("let loop = \\x. loop x\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(signature(r, "loop"), "forall a b. a -> b");
  EXPECT_NE(core::dump(value(r, "loop")->term).find("loop @a @b"), std::string::npos);
}

TEST(ElabValueTest, AnnotatedPolymorphicRecursion) {
  std::string text = std::string(kEq) +
                     "primitive pick :: forall a. Bool -> a -> a -> a\n"
                     "primitive b0 :: Bool\n"
                     "let poly :: forall a. a -> Bool = \\x. poly (single x)\n";
  ElabResult r = elaborate(text);
  EXPECT_TRUE(r.ok());
  auto c = testing::compile_as(text, Mode::Bidirectional);
  EXPECT_TRUE(c.ok());
}

TEST(ElabProgramTest, EmptyProgram) {
  ElabResult r = elaborate("");
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.program.decls.empty());
}

TEST(ElabProgramTest, KeepGoingReportsLaterErrors) {
  std::string text = std::string(kEq) +
                     "instance Eq Int where { eq = single }\n"
                     "let f = eq primEqInt\n"
                     "let g = \\x. x x\n"
                     "let h = \\x. f x\n";
  EXPECT_EQ(elaborate(text).diagnostics.size(), 1u);
  ElabResult all = elaborate(text, Mode::Bidirectional, true);
  ASSERT_EQ(all.diagnostics.size(), 2u);
  EXPECT_EQ(all.diagnostics[0].code, codes::kClash);
  EXPECT_EQ(all.diagnostics[1].code, codes::kOccurs);
  EXPECT_EQ(signature(all, "h"), "Eq (Int -> Int -> Bool) => (Int -> Int -> Bool) -> Bool");
}

TEST(ElabProgramTest, TheoryDump) {
  ElabResult r = elaborate(std::string(kEq) + kEqInstances);
  std::string text = dump_theory(r.theory);
  EXPECT_NE(text.find("A_B:\n  $inv_Eq_List_1 : forall a. Eq (List a) => Eq a\n"),
            std::string::npos)
      << text;
  EXPECT_NE(text.find("A_I:\n  $i_Eq_Int : Eq Int\n"), std::string::npos);
}

TEST(ElabProgramTest, OutputPassesCoreCheck) {
  for (Mode m : {Mode::Basic, Mode::Bidirectional}) {
    ElabResult r = elaborate(std::string(kEq) + kEqInstances +
                             "let f = \\x. eq (single x) (single x)\n");
    ASSERT_TRUE(r.ok());
    auto checked = fc::check_program(r.program);
    EXPECT_TRUE(checked.has_value()) << checked.error().describe();
    (void)m;
  }
}

TEST(ElabProgramTest, MonadClosure) {
  ElabResult r = elaborate(
      "data Bool\n"
      "class Functor f where { fmap :: f -> Bool }\n"
      "class Functor f => Applicative f where { pure :: f -> Bool }\n"
      "class Applicative f => Monad f where { bind :: f -> Bool }\n"
      "let useF :: forall m. Monad m => m -> Bool = \\x. fmap x\n");
  ASSERT_TRUE(r.ok()) << r.diagnostics[0].message;
  std::string body = core::dump(value(r, "useF")->term);
  EXPECT_NE(body.find(": D_Applicative m = $sc_Monad_1 @m"), std::string::npos) << body;
  EXPECT_NE(body.find(": D_Functor m = $sc_Applicative_1 @m"), std::string::npos) << body;
}

}  // namespace
}  // namespace bidi::elab
