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

// Translation of source types and constraints into core types.

#pragma once

#include <string>

#include "bidi/core.hpp"
#include "bidi/surface.hpp"

namespace bidi::elab {

// Generated names for a class TC.
inline std::string dict_tycon(const std::string& cls) { return "D_" + cls; }
inline std::string dict_con(const std::string& cls) { return "K_" + cls; }
inline std::string family_name(const std::string& cls) { return "F_" + cls; }

core::TypePtr elab_ty(const surface::MonoPtr& t);
// Q => rho  ~>  D_TC tau -> elabTy(rho)
core::TypePtr elab_ty(const surface::QualType& q);
core::TypePtr elab_ty(const surface::PolyType& p);
core::TypePtr elab_ty(const surface::TermScheme& s);
// TC tau  ~>  D_TC elabTy(tau)
core::TypePtr elab_ct(const surface::ClassConstraint& q);
// forall bs. C => Q  ~>  forall bs. elabCt(C) -> elabCt(Q)
core::TypePtr elab_scheme(const surface::ConstraintScheme& s);

}  // namespace bidi::elab
