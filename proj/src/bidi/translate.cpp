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

#include "bidi/translate.hpp"

namespace bidi::elab {

core::TypePtr elab_ty(const surface::MonoPtr& t) {
  switch (t->kind) {
    case surface::MonoType::Kind::Var:
      return core::ty_var(t->name);
    case surface::MonoType::Kind::Arrow:
      return core::ty_arrow(elab_ty(t->args[0]), elab_ty(t->args[1]));
    case surface::MonoType::Kind::Con: {
      std::vector<core::TypePtr> args;
      for (const auto& a : t->args) args.push_back(elab_ty(a));
      return core::ty_apps(core::ty_con(t->name), args);
    }
  }
  return nullptr;
}

core::TypePtr elab_ty(const surface::QualType& q) {
  std::vector<core::TypePtr> dicts;
  for (const auto& c : q.context) dicts.push_back(elab_ct(c));
  return core::ty_arrows(dicts, elab_ty(q.body));
}

core::TypePtr elab_ty(const surface::PolyType& p) {
  return core::ty_foralls(p.vars, elab_ty(p.body));
}

core::TypePtr elab_ty(const surface::TermScheme& s) {
  core::TypePtr out = elab_ty(s.body);
  for (auto it = s.layers.rbegin(); it != s.layers.rend(); ++it) {
    std::vector<core::TypePtr> dicts;
    for (const auto& c : it->context) dicts.push_back(elab_ct(c));
    out = core::ty_foralls(it->vars, core::ty_arrows(dicts, out));
  }
  return out;
}

core::TypePtr elab_ct(const surface::ClassConstraint& q) {
  return core::ty_app(core::ty_con(dict_tycon(q.cls)), elab_ty(q.arg));
}

core::TypePtr elab_scheme(const surface::ConstraintScheme& s) {
  std::vector<core::TypePtr> dicts;
  for (const auto& c : s.context) dicts.push_back(elab_ct(c));
  return core::ty_foralls(s.vars, core::ty_arrows(dicts, elab_ct(s.head)));
}

}  // namespace bidi::elab
