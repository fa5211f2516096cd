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

#include "bidi/guards.hpp"

#include <gtest/gtest.h>

namespace bidi::guards {
namespace {

using surface::parse_program;

std::vector<surface::ClassDecl> classes_of(const std::string& text) {
  std::vector<surface::ClassDecl> out;
  for (const auto& d : parse_program(text).decls) {
    if (auto c = std::get_if<surface::ClassDecl>(&d)) out.push_back(*c);
  }
  return out;
}

std::vector<surface::InstanceDecl> instances_of(const std::string& text) {
  std::vector<surface::InstanceDecl> out;
  for (const auto& d : parse_program(text).decls) {
    if (auto i = std::get_if<surface::InstanceDecl>(&d)) out.push_back(*i);
  }
  return out;
}

surface::InstanceDecl instance(const std::string& text) {
  return instances_of(text).at(0);
}

TEST(SuperclassDagTest, ChainIsAcyclic) {
  EXPECT_TRUE(check_superclass_dag(classes_of(
                  "class Eq a where { eq :: a -> a }\n"
                  "class Eq a => Ord a where { cmp :: a -> a }"))
                  .has_value());
}

TEST(SuperclassDagTest, SingleClass) {
  EXPECT_TRUE(check_superclass_dag(classes_of("class Eq a where { eq :: a -> a }"))
                  .has_value());
}

TEST(SuperclassDagTest, TwoCycle) {
  auto r = check_superclass_dag(classes_of(
      "class B a => A a where { fa :: a -> a }\n"
      "class A b => B b where { fb :: b -> b }"));
  ASSERT_FALSE(r.has_value());
  EXPECT_EQ(r.error().path, (std::vector<std::string>{"A", "B", "A"}));
}

TEST(SuperclassDagTest, SelfLoopAndLongerCycle) {
  auto self = check_superclass_dag(classes_of("class A a => A a where { f :: a -> a }"));
  ASSERT_FALSE(self.has_value());
  EXPECT_EQ(self.error().path, (std::vector<std::string>{"A", "A"}));
  auto three = check_superclass_dag(classes_of(
      "class C a => A a where { f :: a -> a }\n"
      "class A a => B a where { g :: a -> a }\n"
      "class B a => C a where { h :: a -> a }"));
  ASSERT_FALSE(three.has_value());
  EXPECT_EQ(three.error().path.size(), 4u);
  EXPECT_EQ(three.error().path.front(), three.error().path.back());
}

TEST(SuperclassDagTest, DiamondIsAcyclic) {
  EXPECT_TRUE(check_superclass_dag(classes_of(
                  "class A a where { f :: a -> a }\n"
                  "class A a => B a where { g :: a -> a }\n"
                  "class A a => C a where { h :: a -> a }\n"
                  "class (B a, C a) => D a where { k :: a -> a }"))
                  .has_value());
}

TEST(TypeSizeTest, CountsConstructorsAndVariables) {
  auto t = [](const std::string& s) { return surface::parse_poly_type(s).body.body; };
  EXPECT_EQ(type_size(t("a")), 1);
  EXPECT_EQ(type_size(t("List a")), 2);
  EXPECT_EQ(type_size(t("Pair a a")), 3);
  EXPECT_EQ(type_size(t("a -> List b")), 4);
}

TEST(PatersonTest, ListInstanceIsFine) {
  EXPECT_TRUE(check_paterson(instance("instance Eq a => Eq (List a) where { eq = eq }"))
                  .has_value());
}

TEST(PatersonTest, ContextNotSmaller) {
  auto r = check_paterson(instance("instance Eq (List a) => Eq a where { eq = eq }"));
  ASSERT_FALSE(r.has_value());
  EXPECT_EQ(r.error().bullet, 2);
  EXPECT_EQ(r.error().constraint, 0u);
}

TEST(PatersonTest, TooManyOccurrences) {
  auto r = check_paterson(
      instance("instance Eq (Pair a a) => Eq (Pair a b) where { eq = eq }"));
  ASSERT_FALSE(r.has_value());
  EXPECT_EQ(r.error().bullet, 1);
  EXPECT_EQ(r.error().var, "a");
}

TEST(PatersonTest, EqualSizeIsRejected) {
  auto r = check_paterson(instance("instance Eq (List b) => Eq (List a) where { eq = eq }"));
  ASSERT_FALSE(r.has_value());
  EXPECT_EQ(r.error().bullet, 1);
  auto s = check_paterson(instance("instance Ord (List a) => Eq (List a) where { eq = eq }"));
  ASSERT_FALSE(s.has_value());
  EXPECT_EQ(s.error().bullet, 2);
}

TEST(OverlapTest, DistinctHeads) {
  EXPECT_TRUE(check_overlap(instances_of(
                  "instance Eq Int where { eq = eq }\n"
                  "instance Eq b => Eq (List b) where { eq = eq }\n"
                  "instance (Eq b, Eq c) => Eq (Pair b c) where { eq = eq }"))
                  .has_value());
}

TEST(OverlapTest, InstantiableHeads) {
  auto r = check_overlap(instances_of(
      "instance Eq a => Eq (List a) where { eq = eq }\n"
      "instance Eq (List Int) where { eq = eq }"));
  ASSERT_FALSE(r.has_value());
  EXPECT_EQ(r.error().first, 0u);
  EXPECT_EQ(r.error().second, 1u);
}

TEST(OverlapTest, IdenticalUpToRenaming) {
  EXPECT_FALSE(check_overlap(instances_of(
                   "instance Eq a => Eq (List a) where { eq = eq }\n"
                   "instance Eq (List b) where { eq = eq }"))
                   .has_value());
}

TEST(OverlapTest, SharedVariableNamesAreFreshened) {
  EXPECT_FALSE(check_overlap(instances_of(
                   "instance Eq (Pair a Int) where { eq = eq }\n"
                   "instance Eq (Pair Int a) where { eq = eq }"))
                   .has_value());
  EXPECT_TRUE(check_overlap(instances_of(
                  "instance Eq (Pair a a) where { eq = eq }\n"
                  "instance Ord (Pair a a) where { eq = eq }"))
                  .has_value());
}

TEST(CheckGuardsTest, Diagnostics) {
  auto ds = check_guards(parse_program(
      "class B a => A a where { fa :: a -> a }\n"
      "class A b => B b where { fb :: b -> b }"));
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, codes::kSuperclassCycle);
  EXPECT_EQ(ds[0].family, ErrorFamily::Guard);
  EXPECT_EQ(ds[0].message, "superclass cycle: A -> B -> A");
  EXPECT_EQ(exit_code(ds[0].family), 3);
}

TEST(CheckGuardsTest, PatersonMessages) {
  auto ds = check_guards(parse_program(
      "instance Eq (Pair a a) => Eq (Pair a b) where { eq = eq }"));
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, codes::kPaterson);
  EXPECT_EQ(ds[0].message,
            "instance context constraint 'Eq (Pair a a)' mentions variable 'a' more "
            "often than the head 'Eq (Pair a b)' (Paterson condition 1)");
}

TEST(CheckGuardsTest, OverlapPointsAtBothInstances) {
  auto ds = check_guards(parse_program(
      "data List a\n"
      "instance Eq a => Eq (List a) where { eq = eq }\n"
      "instance Eq (List b) where { eq = eq }"));
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, codes::kOverlap);
  EXPECT_EQ(ds[0].pos.line, 3);
  ASSERT_TRUE(ds[0].has_related);
  EXPECT_EQ(ds[0].related.line, 2);
}

TEST(CheckGuardsTest, KeepGoingReportsEverything) {
  std::string text =
      "class B a => A a where { fa :: a -> a }\n"
      "class A b => B b where { fb :: b -> b }\n"
      "instance Ord (List a) => Ord a where { eq = eq }\n"
      "instance Eq (List a) where { eq = eq }\n"
      "instance Eq (List Int) where { eq = eq }\n"
      "instance Eq (List Bool) where { eq = eq }\n";
  EXPECT_EQ(check_guards(parse_program(text)).size(), 1u);
  auto all = check_guards(parse_program(text), true);
  ASSERT_EQ(all.size(), 4u);
  EXPECT_EQ(all[0].code, codes::kSuperclassCycle);
  EXPECT_EQ(all[1].code, codes::kPaterson);
  EXPECT_EQ(all[2].code, codes::kOverlap);
  EXPECT_EQ(all[3].code, codes::kOverlap);
}

}  // namespace
}  // namespace bidi::guards
