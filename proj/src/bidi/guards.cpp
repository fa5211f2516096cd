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

#include <algorithm>
#include <map>

#include "bidi/engine.hpp"

namespace bidi::guards {

using surface::ClassDecl;
using surface::InstanceDecl;
using surface::MonoPtr;

namespace {

enum class Mark { White, Gray, Black };

struct CycleFinder {
  std::map<std::string, const ClassDecl*> classes;
  std::map<std::string, Mark> mark;
  std::vector<std::string> stack;
  std::vector<std::string> found;

  bool visit(const std::string& c) {
    mark[c] = Mark::Gray;
    stack.push_back(c);
    for (const auto& s : classes.at(c)->supers) {
      if (classes.count(s.cls) == 0) continue;
      Mark m = mark[s.cls];
      if (m == Mark::Gray) {
        auto from = std::find(stack.begin(), stack.end(), s.cls);
        found.assign(from, stack.end());
        found.push_back(s.cls);
        return true;
      }
      if (m == Mark::White && visit(s.cls)) return true;
    }
    stack.pop_back();
    mark[c] = Mark::Black;
    return false;
  }
};

MonoPtr freshen(const MonoPtr& t, const std::string& tag) {
  surface::MonoSubst s;
  for (const auto& v : surface::free_vars(t)) s[v] = surface::tvar(tag + v);
  return surface::substitute(s, t);
}

}  // namespace

Expected<Unit, CycleError> check_superclass_dag(
    const std::vector<ClassDecl>& classes) {
  CycleFinder f;
  for (const auto& c : classes) f.classes.emplace(c.name, &c);
  for (const auto& c : classes) {
    if (f.mark[c.name] == Mark::White && f.visit(c.name)) {
      return CycleError{f.found};
    }
  }
  return Unit{};
}

int type_size(const MonoPtr& t) {
  int n = 1;
  for (const auto& a : t->args) n += type_size(a);
  return n;
}

Expected<Unit, PatersonError> check_paterson(const InstanceDecl& ins) {
  int head_size = type_size(ins.head);
  for (std::size_t i = 0; i < ins.context.size(); ++i) {
    const MonoPtr& arg = ins.context[i].arg;
    for (const auto& v : surface::free_vars(arg)) {
      if (surface::count_occurrences(v, arg) >
          surface::count_occurrences(v, ins.head)) {
        return PatersonError{i, 1, v};
      }
    }
    if (type_size(arg) >= head_size) return PatersonError{i, 2, ""};
  }
  return Unit{};
}

Expected<Unit, OverlapError> check_overlap(
    const std::vector<InstanceDecl>& instances) {
  for (std::size_t j = 0; j < instances.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (instances[i].cls != instances[j].cls) continue;
      auto r = engine::unify({}, {{freshen(instances[i].head, "1#"),
                                   freshen(instances[j].head, "2#")}});
      if (r.has_value()) return OverlapError{i, j};
    }
  }
  return Unit{};
}

std::vector<Diagnostic> check_guards(const surface::SourceProgram& p,
                                     bool keep_going) {
  std::vector<Diagnostic> out;
  std::vector<ClassDecl> classes;
  std::vector<InstanceDecl> instances;
  for (const auto& d : p.decls) {
    if (auto c = std::get_if<ClassDecl>(&d)) classes.push_back(*c);
    if (auto i = std::get_if<InstanceDecl>(&d)) instances.push_back(*i);
  }

  auto dag = check_superclass_dag(classes);
  if (!dag) {
    const auto& path = dag.error().path;
    std::string shown;
    for (const auto& c : path) shown += (shown.empty() ? "" : " -> ") + c;
    SourcePos pos;
    for (const auto& c : classes) {
      if (c.name == path.front()) pos = c.pos;
    }
    out.push_back({codes::kSuperclassCycle, ErrorFamily::Guard,
                   "superclass cycle: " + shown, pos, {}, false});
    if (!keep_going) return out;
  }

  for (const auto& ins : instances) {
    auto r = check_paterson(ins);
    if (r) continue;
    const auto& e = r.error();
    std::string q = surface::pretty(ins.context[e.constraint]);
    std::string h = surface::pretty(ins.head_constraint());
    std::string msg =
        e.bullet == 1
            ? "instance context constraint '" + q + "' mentions variable '" +
                  e.var + "' more often than the head '" + h +
                  "' (Paterson condition 1)"
            : "instance context constraint '" + q +
                  "' is not smaller than the head '" + h +
                  "' (Paterson condition 2)";
    out.push_back({codes::kPaterson, ErrorFamily::Guard, msg, ins.pos, {},
                   false});
    if (!keep_going) return out;
  }

  std::vector<InstanceDecl> rest = instances;
  while (true) {
    auto r = check_overlap(rest);
    if (r) break;
    const auto& a = rest[r.error().first];
    const auto& b = rest[r.error().second];
    out.push_back({codes::kOverlap, ErrorFamily::Guard,
                   "overlapping instances for " + a.cls + ": '" +
                       surface::pretty(a.head_constraint()) + "' and '" +
                       surface::pretty(b.head_constraint()) + "'",
                   b.pos, a.pos, true});
    if (!keep_going) return out;
    rest.erase(rest.begin() + static_cast<long>(r.error().second));
  }
  return out;
}

}  // namespace bidi::guards
