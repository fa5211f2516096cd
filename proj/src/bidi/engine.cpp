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

#include "bidi/engine.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace bidi::engine {

using surface::MonoSubst;
using surface::MonoType;

AnnAxiomSet as_axioms(const AnnConstraintSet& qs) {
  AnnAxiomSet out;
  out.reserve(qs.size());
  for (const auto& q : qs) out.push_back({q.ev, {{}, {}, q.q}});
  return out;
}

ProgramTheory ProgramTheory::with_locals(const AnnConstraintSet& qs) const {
  ProgramTheory p = *this;
  p.local.insert(p.local.end(), qs.begin(), qs.end());
  return p;
}

ProgramTheory ProgramTheory::with_instance(const AnnScheme& s) const {
  ProgramTheory p = *this;
  p.instance.push_back(s);
  return p;
}

// ---------------------------------------------------------------------------
// Type substitutions and unification

void TypeSubst::bind(const std::string& a, const MonoPtr& t) {
  MonoSubst one{{a, t}};
  for (auto& [k, v] : map_) v = surface::substitute(one, v);
  map_[a] = t;
  order_.push_back(a);
}

MonoPtr TypeSubst::apply(const MonoPtr& t) const {
  return surface::substitute(map_, t);
}

ClassConstraint TypeSubst::apply(const ClassConstraint& q) const {
  return {q.cls, apply(q.arg)};
}

AnnConstraintSet TypeSubst::apply(const AnnConstraintSet& qs) const {
  AnnConstraintSet out;
  out.reserve(qs.size());
  for (const auto& q : qs) out.push_back({q.ev, apply(q.q)});
  return out;
}

core::TermPtr TypeSubst::apply(const core::TermPtr& t) const {
  if (map_.empty()) return t;
  core::TypeSubst s;
  for (const auto& [k, v] : map_) s[k] = elab::elab_ty(v);
  return core::subst_type_in_term(s, t);
}

std::string UnifyError::describe() const {
  switch (kind) {
    case Kind::Clash:
      return "cannot match '" + surface::pretty(left) + "' with '" +
             surface::pretty(right) + "'";
    case Kind::OccursCheck:
      return "occurs check: cannot construct the infinite type " + var +
             " ~ " + surface::pretty(right);
    case Kind::UntouchableBind:
      return "cannot unify rigid type variable '" + var + "' with '" +
             surface::pretty(right) + "'";
  }
  return "unification failure";
}

namespace {

struct Unifier {
  const UsedSet& untouchables;
  TypeSubst theta;

  bool touchable(const std::string& a) const {
    return untouchables.count(a) == 0;
  }

  std::optional<UnifyError> bind_var(const std::string& a, const MonoPtr& t) {
    if (surface::occurs(a, t)) {
      return UnifyError{UnifyError::Kind::OccursCheck, surface::tvar(a), t, a};
    }
    theta.bind(a, t);
    return std::nullopt;
  }

  std::optional<UnifyError> go(const MonoPtr& l0, const MonoPtr& r0) {
    MonoPtr l = theta.apply(l0);
    MonoPtr r = theta.apply(r0);
    if (l->is_var() && r->is_var() && l->name == r->name) return std::nullopt;
    if (l->is_var() && touchable(l->name)) return bind_var(l->name, r);
    if (r->is_var() && touchable(r->name)) return bind_var(r->name, l);
    if (l->is_var()) {
      return UnifyError{UnifyError::Kind::UntouchableBind, l, r, l->name};
    }
    if (r->is_var()) {
      return UnifyError{UnifyError::Kind::UntouchableBind, r, l, r->name};
    }
    if (l->kind != r->kind || l->name != r->name ||
        l->args.size() != r->args.size()) {
      return UnifyError{UnifyError::Kind::Clash, l, r, ""};
    }
    for (std::size_t i = 0; i < l->args.size(); ++i) {
      if (auto e = go(l->args[i], r->args[i])) return e;
    }
    return std::nullopt;
  }
};

}  // namespace

Expected<TypeSubst, UnifyError> unify(const UsedSet& untouchables,
                                      const EqualitySet& eqs) {
  Unifier u{untouchables, {}};
  for (const auto& [l, r] : eqs) {
    if (auto e = u.go(l, r)) return *e;
  }
  return std::move(u.theta);
}

// ---------------------------------------------------------------------------
// Evidence

void EvidenceSubst::bind(const std::string& d, core::TermPtr t) {
  if (!list_.empty()) t = apply(t);
  core::TermSubst one{{d, t}};
  for (auto& [k, v] : list_) v = core::subst_term(one, v);
  list_.emplace_back(d, std::move(t));
}

core::TermPtr EvidenceSubst::apply(const core::TermPtr& t) const {
  if (list_.empty()) return t;
  core::TermSubst s;
  for (const auto& [k, v] : list_) s[k] = v;
  return core::subst_term(s, t);
}

const core::TermPtr* EvidenceSubst::lookup(const std::string& d) const {
  for (const auto& [k, v] : list_) {
    if (k == d) return &v;
  }
  return nullptr;
}

core::TermPtr DictContext::wrap(const core::TermPtr& hole) const {
  core::TermPtr out = hole;
  for (auto it = lets.rbegin(); it != lets.rend(); ++it) {
    out = core::tm_let(it->ev, it->type, it->term, out);
  }
  return out;
}

void DictContext::append(const DictContext& other) {
  lets.insert(lets.end(), other.lets.begin(), other.lets.end());
}

core::TermPtr evidence(const std::string& d, const std::vector<MonoPtr>& types,
                       const std::vector<std::string>& args) {
  core::TermPtr t = core::tm_var(d);
  for (const auto& u : types) t = core::tm_tyapp(t, elab::elab_ty(u));
  for (const auto& a : args) t = core::tm_app(t, core::tm_var(a));
  return t;
}

namespace {

bool match_into(const std::vector<std::string>& vars, const MonoPtr& pat,
                const MonoPtr& target, MonoSubst& out) {
  if (pat->is_var()) {
    bool flexible =
        std::find(vars.begin(), vars.end(), pat->name) != vars.end();
    if (!flexible) return target->is_var() && target->name == pat->name;
    auto it = out.find(pat->name);
    if (it != out.end()) return surface::equal(it->second, target);
    out[pat->name] = target;
    return true;
  }
  if (pat->kind != target->kind || pat->name != target->name ||
      pat->args.size() != target->args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < pat->args.size(); ++i) {
    if (!match_into(vars, pat->args[i], target->args[i], out)) return false;
  }
  return true;
}

std::vector<MonoPtr> instantiate_vars(const std::vector<std::string>& vars,
                                      const MonoSubst& theta,
                                      const std::string& ev) {
  std::vector<MonoPtr> out;
  out.reserve(vars.size());
  for (const auto& b : vars) {
    auto it = theta.find(b);
    if (it == theta.end()) {
      throw InternalError("scheme variable '" + b + "' of " + ev +
                          " is not determined by matching");
    }
    out.push_back(it->second);
  }
  return out;
}

bool is_given(const AnnScheme& s) {
  return s.scheme.vars.empty() && s.scheme.context.empty();
}

[[noreturn]] void out_of_fuel(const std::string& what) {
  fail(codes::kFuel, ErrorFamily::Internal,
       what + " exceeded " + std::to_string(kDefaultFuel) +
           " steps; the termination guards should have prevented this");
}

}  // namespace

std::optional<MonoSubst> match(const std::vector<std::string>& vars,
                               const MonoPtr& pattern, const MonoPtr& target) {
  MonoSubst out;
  if (!match_into(vars, pattern, target, out)) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------
// Simplification

std::optional<Simplified> simplify_one(const UsedSet&,
                                       const AnnAxiomSet& axioms,
                                       const AnnConstraint& wanted,
                                       FreshSupply& fresh) {
  const AnnScheme* chosen = nullptr;
  MonoSubst theta;
  std::vector<const AnnScheme*> candidates;
  for (const auto& ax : axioms) {
    if (ax.scheme.head.cls != wanted.q.cls) continue;
    auto m = match(ax.scheme.vars, ax.scheme.head.arg, wanted.q.arg);
    if (!m) continue;
    if (is_given(ax)) {
      chosen = &ax;
      theta.clear();
      break;
    }
    candidates.push_back(&ax);
    if (candidates.size() == 1) theta = std::move(*m);
  }
  if (chosen == nullptr) {
    if (candidates.empty()) return std::nullopt;
    if (candidates.size() > 1) {
      throw AmbiguousMatch(Diagnostic{
          codes::kAmbiguousMatch, ErrorFamily::Type,
          "several instances match " + surface::pretty(wanted.q) + ": " +
              show(*candidates[0]) + " and " + show(*candidates[1]),
          {}, {}, false});
    }
    chosen = candidates.front();
  }
  Simplified out;
  std::vector<std::string> args;
  for (const auto& c : chosen->scheme.context) {
    AnnConstraint w{fresh.fresh("d"), surface::substitute(theta, c)};
    args.push_back(w.ev);
    out.residual.push_back(std::move(w));
  }
  out.eta.bind(wanted.ev,
               evidence(chosen->ev,
                        instantiate_vars(chosen->scheme.vars, theta, chosen->ev),
                        args));
  return out;
}

Simplified simplify_all(const UsedSet& untouchables, const AnnAxiomSet& axioms,
                        const AnnConstraintSet& wanted, FreshSupply& fresh,
                        int fuel) {
  Simplified out;
  std::deque<AnnConstraint> work(wanted.begin(), wanted.end());
  int steps = 0;
  while (!work.empty()) {
    if (++steps > fuel) out_of_fuel("constraint simplification");
    AnnConstraint w = std::move(work.front());
    work.pop_front();
    if (auto r = simplify_one(untouchables, axioms, w, fresh)) {
      for (const auto& [d, t] : r->eta.bindings()) out.eta.bind(d, t);
      for (auto& q : r->residual) work.push_back(std::move(q));
      continue;
    }
    auto dup = std::find_if(
        out.residual.begin(), out.residual.end(),
        [&](const AnnConstraint& q) { return surface::equal(q.q, w.q); });
    if (dup != out.residual.end()) {
      out.eta.bind(w.ev, core::tm_var(dup->ev));
    } else {
      out.residual.push_back(std::move(w));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closure

namespace {

struct MpCandidate {
  const AnnScheme* scheme;
  ClassConstraint derived;
  std::vector<MonoPtr> args;
};

std::vector<MpCandidate> mp_candidates(const AnnAxiomSet& axioms,
                                       const ClassConstraint& q) {
  std::vector<MpCandidate> out;
  for (const auto& ax : axioms) {
    if (ax.scheme.context.size() != 1) continue;
    const ClassConstraint& premise = ax.scheme.context.front();
    if (premise.cls != q.cls) continue;
    auto m = match(ax.scheme.vars, premise.arg, q.arg);
    if (!m) continue;
    out.push_back({&ax, surface::substitute(*m, ax.scheme.head),
                   instantiate_vars(ax.scheme.vars, *m, ax.ev)});
  }
  return out;
}

DictBinding mp_binding(const MpCandidate& c, const std::string& d2,
                       const std::string& d) {
  return {d2, elab::elab_ct(c.derived), evidence(c.scheme->ev, c.args, {d})};
}

}  // namespace

Closed mp_step(const UsedSet&, const AnnAxiomSet& axioms,
               const AnnConstraint& given, FreshSupply& fresh) {
  Closed out;
  for (const auto& c : mp_candidates(axioms, given.q)) {
    std::string d2 = fresh.fresh("d");
    out.ctx.lets.push_back(mp_binding(c, d2, given.ev));
    out.constraints.push_back({d2, c.derived});
  }
  return out;
}

Closed closure(const UsedSet&, const AnnAxiomSet& axioms,
               const AnnConstraintSet& givens, FreshSupply& fresh, int fuel) {
  Closed out;
  out.constraints = givens;
  std::deque<AnnConstraint> work(givens.begin(), givens.end());
  int steps = 0;
  while (!work.empty()) {
    if (++steps > fuel) out_of_fuel("closure computation");
    AnnConstraint q = std::move(work.front());
    work.pop_front();
    for (const auto& c : mp_candidates(axioms, q.q)) {
      bool known = std::any_of(
          out.constraints.begin(), out.constraints.end(),
          [&](const AnnConstraint& k) { return surface::equal(k.q, c.derived); });
      if (known) continue;
      std::string d2 = fresh.fresh("d");
      out.ctx.lets.push_back(mp_binding(c, d2, q.ev));
      out.constraints.push_back({d2, c.derived});
      work.push_back(out.constraints.back());
    }
  }
  return out;
}

namespace {

UsableTheory close_with(const UsedSet& untouchables, const AnnAxiomSet& base,
                        const ProgramTheory& p, FreshSupply& fresh) {
  Closed c = closure(untouchables, base, p.local, fresh);
  UsableTheory out;
  out.axioms = p.instance;
  for (auto& s : as_axioms(c.constraints)) out.axioms.push_back(std::move(s));
  out.ctx = std::move(c.ctx);
  return out;
}

}  // namespace

UsableTheory sc_closure(const UsedSet& untouchables, const ProgramTheory& p,
                        FreshSupply& fresh) {
  return close_with(untouchables, p.superclass, p, fresh);
}

UsableTheory inv_sc_closure(const UsedSet& untouchables, const ProgramTheory& p,
                            FreshSupply& fresh) {
  AnnAxiomSet base = p.inverted;
  base.insert(base.end(), p.superclass.begin(), p.superclass.end());
  return close_with(untouchables, base, p, fresh);
}

// ---------------------------------------------------------------------------
// Entailment oracle

namespace {

bool is_logic_var(const MonoPtr& t) {
  return t->is_var() && !t->name.empty() && t->name[0] == '?';
}

class Oracle {
 public:
  Oracle(const AnnAxiomSet& axioms, int fuel) : axioms_(axioms), fuel_(fuel) {}

  OracleResult run(const ClassConstraint& goal) {
    // Iterative deepening: shallow proofs are found before deep branches
    // through the inverted and superclass schemes are explored.
    for (int depth = 1; depth <= fuel_; ++depth) {
      Bindings b;
      core::TermPtr found;
      cut_ = false;
      solve(goal, depth, b, [&](Bindings& fin, const Proof& p) {
        found = build(p, fin);
        return true;
      });
      if (found) return found;
      if (!cut_) return OracleFail{};
      if (steps_ > kStepBudget) break;
    }
    return OracleOutOfFuel{};
  }

 private:
  using Bindings = std::map<std::string, MonoPtr>;
  struct Proof {
    const AnnScheme* scheme = nullptr;
    std::vector<std::string> vars;  // logic variables for scheme binders
    std::vector<Proof> kids;
  };
  using Cont = std::function<bool(Bindings&, const Proof&)>;

  static constexpr long kStepBudget = 200000;

  MonoPtr walk(const MonoPtr& t, const Bindings& b) const {
    if (is_logic_var(t)) {
      auto it = b.find(t->name);
      if (it != b.end()) return walk(it->second, b);
      return t;
    }
    if (t->is_var() || t->args.empty()) return t;
    std::vector<MonoPtr> args;
    for (const auto& a : t->args) args.push_back(walk(a, b));
    return std::make_shared<MonoType>(MonoType{t->kind, t->name, args});
  }

  bool unify(const MonoPtr& l0, const MonoPtr& r0, Bindings& b) const {
    MonoPtr l = walk(l0, b);
    MonoPtr r = walk(r0, b);
    if (l->is_var() && r->is_var() && l->name == r->name) return true;
    if (is_logic_var(l)) {
      if (surface::occurs(l->name, r)) return false;
      b[l->name] = r;
      return true;
    }
    if (is_logic_var(r)) return unify(r, l, b);
    if (l->is_var() || r->is_var()) return false;
    if (l->kind != r->kind || l->name != r->name ||
        l->args.size() != r->args.size()) {
      return false;
    }
    for (std::size_t i = 0; i < l->args.size(); ++i) {
      if (!unify(l->args[i], r->args[i], b)) return false;
    }
    return true;
  }

  bool solve(const ClassConstraint& goal0, int depth, Bindings& b,
             const Cont& k) {
    if (++steps_ > kStepBudget) {
      cut_ = true;
      return false;
    }
    if (depth <= 0) {
      cut_ = true;
      return false;
    }
    ClassConstraint goal{goal0.cls, walk(goal0.arg, b)};
    if (is_logic_var(goal.arg)) return false;  // floundering
    for (const auto& ax : axioms_) {
      if (ax.scheme.head.cls != goal.cls) continue;
      Proof p;
      p.scheme = &ax;
      MonoSubst rename;
      for (const auto& v : ax.scheme.vars) {
        p.vars.push_back("?" + std::to_string(next_var_++));
        rename[v] = surface::tvar(p.vars.back());
      }
      Bindings trial = b;
      if (!unify(surface::substitute(rename, ax.scheme.head.arg), goal.arg,
                 trial)) {
        continue;
      }
      std::vector<ClassConstraint> subgoals;
      for (const auto& c : ax.scheme.context) {
        subgoals.push_back(surface::substitute(rename, c));
      }
      if (solve_all(subgoals, 0, depth - 1, trial, p, k)) return true;
    }
    return false;
  }

  bool solve_all(const std::vector<ClassConstraint>& goals, std::size_t i,
                 int depth, Bindings& b, Proof& p, const Cont& k) {
    if (i == goals.size()) return k(b, p);
    return solve(goals[i], depth, b, [&](Bindings& b2, const Proof& child) {
      p.kids.push_back(child);
      if (solve_all(goals, i + 1, depth, b2, p, k)) return true;
      p.kids.pop_back();
      return false;
    });
  }

  core::TermPtr build(const Proof& p, const Bindings& b) const {
    core::TermPtr t = core::tm_var(p.scheme->ev);
    for (const auto& v : p.vars) {
      MonoPtr u = walk(surface::tvar(v), b);
      t = core::tm_tyapp(t, has_logic_var(u) ? defaulted() : elab::elab_ty(u));
    }
    for (const auto& kid : p.kids) t = core::tm_app(t, build(kid, b));
    return t;
  }

  static bool has_logic_var(const MonoPtr& t) {
    if (is_logic_var(t)) return true;
    return std::any_of(t->args.begin(), t->args.end(), has_logic_var);
  }

  static core::TypePtr defaulted() {
    return core::ty_forall("z", core::ty_var("z"));
  }

  const AnnAxiomSet& axioms_;
  int fuel_;
  long steps_ = 0;
  int next_var_ = 0;
  bool cut_ = false;
};

}  // namespace

OracleResult entail_oracle(const AnnAxiomSet& axioms, const ClassConstraint& goal,
                           int fuel) {
  return Oracle(axioms, fuel).run(goal);
}

OracleResult entail_oracle(const ProgramTheory& p, const ClassConstraint& goal,
                           int fuel) {
  AnnAxiomSet all = p.inverted;
  all.insert(all.end(), p.superclass.begin(), p.superclass.end());
  all.insert(all.end(), p.instance.begin(), p.instance.end());
  for (auto& s : as_axioms(p.local)) all.push_back(std::move(s));
  return entail_oracle(all, goal, fuel);
}

std::string show(const AnnConstraint& c) {
  return c.ev + " : " + surface::pretty(c.q);
}

std::string show(const AnnScheme& s) {
  std::string out = s.ev + " : ";
  if (!s.scheme.vars.empty()) {
    out += "forall";
    for (const auto& v : s.scheme.vars) out += " " + v;
    out += ". ";
  }
  if (!s.scheme.context.empty()) {
    out += surface::show_context(s.scheme.context) + " => ";
  }
  return out + surface::pretty(s.scheme.head);
}

}  // namespace bidi::engine
