#include "ctfrec/ground/ground.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "ctfrec/logic/printer.hpp"
#include "ctfrec/logic/validate.hpp"

namespace ctfrec::ground {

namespace {

using logic::Fol;
using logic::FolKind;
using logic::FolPtr;
using logic::Formula;
using logic::Term;
using logic::Theory;

struct Binding {
  std::string name;
  const std::vector<std::string>* domain = nullptr;
  int idx = -1;
};

// Walks a body collecting, per variable, the largest offset it is used with.
void max_offsets(const FolPtr& f, std::map<std::string, int>& out) {
  if (!f) return;
  auto see = [&out](const Term& t) {
    if (!t.is_var) return;
    auto [it, inserted] = out.emplace(t.name, t.offset);
    if (!inserted) it->second = std::max(it->second, t.offset);
  };
  if (f->kind == FolKind::Atm) {
    for (const auto& t : f->atom.args) see(t);
  } else if (f->kind == FolKind::Eq) {
    see(f->lhs);
    see(f->rhs);
  }
  for (const auto& k : f->kids) max_offsets(k, out);
}

class Grounder {
 public:
  Grounder(const Theory& th, const Universe& uni, const Evidence& ev, size_t max_groundings)
      : th_(th), uni_(uni), ev_(ev), max_groundings_(max_groundings) {
    validation_ = logic::validate(th);
    if (!validation_.ok) {
      throw std::runtime_error("cannot ground an invalid theory: " + validation_.errors.front());
    }
    for (const auto& f : th.formulas) {
      bool has_predvar = false;
      logic::map_atoms(f.body, [&](const logic::Atom& a) {
        if (th.find_predvar(a.pred)) has_predvar = true;
        return a;
      });
      if (has_predvar) {
        throw std::runtime_error("formula '" + f.label +
                                 "' mentions a predicate variable; instantiate before grounding");
      }
    }
  }

  GroundNet run() {
    net_.theory = &th_;
    net_.universe = &uni_;
    net_.weights.resize(th_.formulas.size(), 0.0);
    net_.const_mult.resize(th_.formulas.size(), 0.0);
    for (size_t i = 0; i < th_.formulas.size(); ++i) {
      if (!th_.formulas[i].hard) net_.weights[i] = th_.formulas[i].weight;
    }
    check_observations();
    enumerate_atoms();
    for (size_t i = 0; i < th_.formulas.size(); ++i) {
      ground_formula(static_cast<int>(i));
    }
    return std::move(net_);
  }

  // A hidden atom observed true must lie inside its predicate's allowed
  // domain; otherwise the evidence contradicts itself before any search.
  void check_observations() const {
    for (const auto& [key, value] : ev_.observed_atoms()) {
      if (!value || key.pred < 0 || key.pred >= static_cast<int>(th_.preds.size())) continue;
      if (th_.preds[key.pred].hidden && !ev_.hidden_allowed(key)) {
        throw std::runtime_error("atom of '" + th_.preds[key.pred].name +
                                 "' observed true outside its allowed domain");
      }
    }
  }

 private:
  void enumerate_atoms() {
    for (size_t pi = 0; pi < th_.preds.size(); ++pi) {
      const auto& p = th_.preds[pi];
      if (!p.hidden) continue;
      const int pred = static_cast<int>(pi);
      if (ev_.restricted(pred)) {
        for (const auto& tuple : ev_.allowed_tuples(pred)) {
          if (tuple.size() != p.arg_sorts.size()) {
            throw std::runtime_error("allowed tuple arity mismatch for '" + p.name + "'");
          }
          for (size_t j = 0; j < tuple.size(); ++j) {
            const auto& dom = uni_.constants(p.arg_sorts[j]);
            if (tuple[j] < 0 || tuple[j] >= static_cast<int>(dom.size())) {
              throw std::runtime_error("allowed tuple constant out of range for '" + p.name + "'");
            }
          }
          add_atom(AtomKey{pred, tuple});
        }
      } else {
        std::vector<int> tuple(p.arg_sorts.size(), 0);
        product(p.arg_sorts, tuple, 0, [&] { add_atom(AtomKey{pred, tuple}); });
      }
    }
  }

  void add_atom(AtomKey k) {
    if (ev_.observed(k)) return;  // pinned atoms are folded away, not variables
    const int id = static_cast<int>(net_.atoms.size());
    if (net_.atom_ids.emplace(k, id).second) net_.atoms.push_back(std::move(k));
  }

  template <class Fn>
  void product(const std::vector<std::string>& sorts, std::vector<int>& tuple, size_t pos,
               const Fn& fn) {
    if (pos == sorts.size()) {
      fn();
      return;
    }
    const auto& dom = uni_.constants(sorts[pos]);
    for (size_t i = 0; i < dom.size(); ++i) {
      tuple[pos] = static_cast<int>(i);
      product(sorts, tuple, pos + 1, fn);
    }
  }

  // ---- term / atom resolution under an environment ----

  const Binding* find(const std::vector<Binding>& env, const std::string& name) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->name == name) return &*it;
    }
    return nullptr;
  }

  // Constant index of a term in `sort`; -1 when a literal constant is not a
  // member. Offsets are guaranteed in range by the enumeration prechecks.
  int term_index(const Term& t, const std::string& sort, const std::vector<Binding>& env) const {
    if (!t.is_var) return uni_.const_index(sort, t.name);
    const Binding* b = find(env, t.name);
    assert(b);
    const int idx = b->idx + t.offset;
    assert(idx >= 0 && idx < static_cast<int>(b->domain->size()));
    return idx;
  }

  std::string term_name(const Term& t, const std::vector<Binding>& env) const {
    if (!t.is_var) return t.name;
    const Binding* b = find(env, t.name);
    assert(b);
    const int idx = b->idx + t.offset;
    assert(idx >= 0 && idx < static_cast<int>(b->domain->size()));
    return (*b->domain)[idx];
  }

  Prop fold_atom(const logic::Atom& a, const std::vector<Binding>& env) const {
    const int pred = th_.pred_index(a.pred);
    assert(pred >= 0);
    const auto& decl = th_.preds[pred];
    AtomKey key;
    key.pred = pred;
    key.args.reserve(a.args.size());
    for (size_t i = 0; i < a.args.size(); ++i) {
      const int idx = term_index(a.args[i], decl.arg_sorts[i], env);
      if (idx < 0) return Prop::constant(false);  // unknown literal constant
      key.args.push_back(idx);
    }
    if (!decl.hidden) return Prop::constant(ev_.observed_true(key));
    if (auto o = ev_.observed(key)) return Prop::constant(*o);  // pinned by evidence
    if (!ev_.hidden_allowed(key)) return Prop::constant(false);
    const int id = net_.atom_id(key);
    assert(id >= 0);
    return Prop::atom(id);
  }

  Prop fold(const FolPtr& f, std::vector<Binding>& env, const std::map<std::string, int>& moff) {
    switch (f->kind) {
      case FolKind::True:
        return Prop::constant(true);
      case FolKind::False:
        return Prop::constant(false);
      case FolKind::Atm:
        return fold_atom(f->atom, env);
      case FolKind::Eq:
        return Prop::constant(term_name(f->lhs, env) == term_name(f->rhs, env));
      case FolKind::Not:
        return Prop::negate(fold(f->kids[0], env, moff));
      case FolKind::And: {
        std::vector<Prop> kids;
        kids.reserve(f->kids.size());
        for (const auto& k : f->kids) kids.push_back(fold(k, env, moff));
        return Prop::conj(std::move(kids));
      }
      case FolKind::Or: {
        std::vector<Prop> kids;
        kids.reserve(f->kids.size());
        for (const auto& k : f->kids) kids.push_back(fold(k, env, moff));
        return Prop::disj(std::move(kids));
      }
      case FolKind::Implies: {
        Prop a = fold(f->kids[0], env, moff);
        Prop b = fold(f->kids[1], env, moff);
        return Prop::disj({Prop::negate(std::move(a)), std::move(b)});
      }
      case FolKind::Iff: {
        Prop a = fold(f->kids[0], env, moff);
        Prop b = fold(f->kids[1], env, moff);
        Prop l = Prop::disj({Prop::negate(a), b});
        Prop r = Prop::disj({Prop::negate(std::move(b)), std::move(a)});
        return Prop::conj({std::move(l), std::move(r)});
      }
      case FolKind::Xor: {
        Prop a = fold(f->kids[0], env, moff);
        Prop b = fold(f->kids[1], env, moff);
        Prop l = Prop::disj({a, b});
        Prop r = Prop::disj({Prop::negate(std::move(a)), Prop::negate(std::move(b))});
        return Prop::conj({std::move(l), std::move(r)});
      }
      case FolKind::Forall:
      case FolKind::Exists:
      case FolKind::ExistsOne:
        return expand(f, env, moff);
    }
    return Prop::constant(false);
  }

  // Candidate generator atoms: positive conjuncts of `body` (for existential
  // quantifiers and for free-variable expansion of soft conjunctions) whose
  // predicate carries an allow-list. Skipped combinations fold the conjunct
  // to false, which drops the grounding anyway, so skipping is sound.
  static std::vector<const logic::Atom*> generator_candidates(const FolPtr& body) {
    std::vector<const logic::Atom*> out;
    if (body->kind == FolKind::Atm) {
      out.push_back(&body->atom);
    } else if (body->kind == FolKind::And) {
      for (const auto& k : body->kids) {
        if (k->kind == FolKind::Atm) out.push_back(&k->atom);
      }
    }
    return out;
  }

  // Enumerates assignments of `vars` (sorted domains) consistent with the
  // allow-lists of generator atoms taken from `gen_source`, falling back to
  // full domain loops for uncovered variables. Every emitted assignment
  // extends `env`; `fn` is called once per assignment. Assignments that push
  // an offset term of a listed variable beyond its sort are skipped.
  template <class Fn>
  void enumerate(const std::vector<std::pair<std::string, std::string>>& vars,
                 const FolPtr& gen_source, bool use_generators, std::vector<Binding>& env,
                 const std::map<std::string, int>& moff, const Fn& fn) {
    std::vector<const logic::Atom*> gens;
    if (use_generators && gen_source) {
      std::vector<bool> covered(vars.size(), false);
      for (const logic::Atom* a : generator_candidates(gen_source)) {
        const int pred = th_.pred_index(a->pred);
        if (pred < 0 || !th_.preds[pred].hidden || !ev_.restricted(pred)) continue;
        bool helps = false;
        for (const auto& t : a->args) {
          if (!t.is_var) continue;
          for (size_t i = 0; i < vars.size(); ++i) {
            if (vars[i].first == t.name && !covered[i]) {
              covered[i] = true;
              helps = true;
            }
          }
        }
        if (helps) gens.push_back(a);
      }
    }
    step(vars, gens, 0, env, moff, fn);
  }

  template <class Fn>
  void step(const std::vector<std::pair<std::string, std::string>>& vars,
            const std::vector<const logic::Atom*>& gens, size_t gi, std::vector<Binding>& env,
            const std::map<std::string, int>& moff, const Fn& fn) {
    if (gi < gens.size()) {
      const logic::Atom& a = *gens[gi];
      const int pred = th_.pred_index(a.pred);
      const auto& decl = th_.preds[pred];
      for (const auto& tuple : ev_.allowed_tuples(pred)) {
        size_t pushed = 0;
        bool ok = true;
        for (size_t j = 0; j < a.args.size() && ok; ++j) {
          const Term& t = a.args[j];
          if (!t.is_var) {
            ok = uni_.const_index(decl.arg_sorts[j], t.name) == tuple[j];
            continue;
          }
          if (const Binding* b = find(env, t.name)) {
            ok = b->idx + t.offset == tuple[j];
            continue;
          }
          // New binding introduced by this tuple position.
          bool to_bind = false;
          for (const auto& v : vars) {
            if (v.first == t.name) {
              to_bind = true;
              break;
            }
          }
          if (!to_bind) {
            ok = false;  // variable belongs to an inner scope; cannot generate
            continue;
          }
          const auto& dom = uni_.constants(decl.arg_sorts[j]);
          const int base = tuple[j] - t.offset;
          auto it = moff.find(t.name);
          const int mo = it == moff.end() ? 0 : it->second;
          if (base < 0 || base + mo >= static_cast<int>(dom.size())) {
            ok = false;
            continue;
          }
          env.push_back(Binding{t.name, &dom, base});
          ++pushed;
        }
        if (ok) step(vars, gens, gi + 1, env, moff, fn);
        env.resize(env.size() - pushed);
      }
      return;
    }
    // Full loops over whatever is still unbound.
    size_t next = vars.size();
    for (size_t i = 0; i < vars.size(); ++i) {
      if (!find(env, vars[i].first)) {
        next = i;
        break;
      }
    }
    if (next == vars.size()) {
      fn();
      return;
    }
    const auto& [name, sort] = vars[next];
    const auto& dom = uni_.constants(sort);
    auto it = moff.find(name);
    const int mo = it == moff.end() ? 0 : it->second;
    env.push_back(Binding{name, &dom, 0});
    for (int idx = 0; idx + mo < static_cast<int>(dom.size()); ++idx) {
      env.back().idx = idx;
      step(vars, gens, gi, env, moff, fn);
    }
    env.pop_back();
  }

  Prop expand(const FolPtr& q, std::vector<Binding>& env, const std::map<std::string, int>& moff) {
    std::vector<std::pair<std::string, std::string>> vars;
    for (const auto& v : q->qvars) vars.emplace_back(v, var_sorts_->at(v));
    const FolPtr& body = q->kids[0];

    // Existential forms may skip assignments killed by an allow-list when the
    // body is a (single-atom) conjunction; a universal may when its body is an
    // implication whose antecedent contains the restricted conjunct (those
    // assignments are vacuously true).
    FolPtr gen_source;
    if (q->kind == FolKind::Exists || q->kind == FolKind::ExistsOne) {
      gen_source = body;
    } else if (body->kind == FolKind::Implies) {
      gen_source = body->kids[0];
    }

    std::vector<Prop> kids;
    enumerate(vars, gen_source, gen_source != nullptr, env, moff,
              [&] { kids.push_back(fold(body, env, moff)); });
    switch (q->kind) {
      case FolKind::Forall:
        return Prop::conj(std::move(kids));
      case FolKind::Exists:
        return Prop::disj(std::move(kids));
      default:
        return Prop::exactly_one(std::move(kids));
    }
  }

  void ground_formula(int fi) {
    const Formula& f = th_.formulas[fi];
    const auto var_sorts = logic::formula_var_sorts(th_, f);
    var_sorts_ = &var_sorts;
    std::map<std::string, int> moff;
    max_offsets(f.body, moff);

    const auto& free = validation_.formula_vars[fi].vars;
    const int func = f.func_name.empty() ? -1 : func_index(f.func_name);

    // Soft conjunctive bodies may skip groundings outside an allow-list: a
    // false conjunct zeroes the contribution. Hard formulas are expanded in
    // full (a fold to true is dropped; a fold to false marks infeasibility).
    const bool generators = !f.hard;

    size_t emitted = 0;
    std::vector<Binding> env;
    enumerate(free, f.body, generators, env, moff, [&] {
      if (++emitted > max_groundings_) {
        throw std::runtime_error("formula '" + f.label + "' exceeds the grounding budget");
      }
      std::vector<int> binding(free.size());
      for (size_t i = 0; i < free.size(); ++i) binding[i] = find(env, free[i].first)->idx;

      Prop p = fold(f.body, env, moff);
      if (f.hard) {
        if (p.k == Prop::K::True) return;
        if (p.k == Prop::K::False) {
          net_.infeasible = true;
          net_.infeasible_notes.push_back(feature_label(f, free, binding));
          net_.infeasible_formulas.push_back(fi);
          return;
        }
        net_.features.push_back(GroundFeature{fi, true, 1.0, std::move(p), std::move(binding)});
        return;
      }

      double mult = 1.0;
      if (func >= 0) {
        if (p.k == Prop::K::False) return;  // no contribution; value not needed
        std::vector<int> fargs(f.func_args.size());
        for (size_t i = 0; i < f.func_args.size(); ++i) {
          fargs[i] = find(env, f.func_args[i])->idx;
        }
        const auto v = ev_.func_value(func, fargs);
        if (!v) {
          throw std::runtime_error("missing value of " + f.func_name + " for grounding of '" +
                                   f.label + "'");
        }
        mult = *v;
      }
      if (p.k == Prop::K::False || mult == 0.0) return;
      if (p.k == Prop::K::True) {
        net_.const_mult[fi] += mult;
        return;
      }
      net_.features.push_back(GroundFeature{fi, false, mult, std::move(p), std::move(binding)});
    });
    var_sorts_ = nullptr;
  }

  int func_index(const std::string& name) const {
    for (size_t i = 0; i < th_.funcs.size(); ++i) {
      if (th_.funcs[i].name == name) return static_cast<int>(i);
    }
    throw std::runtime_error("unknown function '" + name + "'");
  }

  std::string feature_label(const Formula& f,
                            const std::vector<std::pair<std::string, std::string>>& free,
                            const std::vector<int>& binding) const {
    std::string out = f.label + "[";
    for (size_t i = 0; i < free.size(); ++i) {
      if (i) out += ",";
      out += uni_.const_name(free[i].second, binding[i]);
    }
    out += "]";
    return out;
  }

  const Theory& th_;
  const Universe& uni_;
  const Evidence& ev_;
  size_t max_groundings_;
  logic::Validation validation_;
  GroundNet net_;
  const std::map<std::string, std::string>* var_sorts_ = nullptr;
};

}  // namespace

std::string GroundNet::atom_name(int id) const {
  const AtomKey& k = atoms.at(id);
  const auto& decl = theory->preds[k.pred];
  std::string out = decl.name + "(";
  for (size_t i = 0; i < k.args.size(); ++i) {
    if (i) out += ",";
    out += universe->const_name(decl.arg_sorts[i], k.args[i]);
  }
  out += ")";
  return out;
}

std::string GroundNet::feature_name(const GroundFeature& f) const {
  const logic::Formula& fm = theory->formulas[f.formula];
  const auto vars = logic::validate(*theory).formula_vars[f.formula].vars;
  std::string out = fm.label + "[";
  for (size_t i = 0; i < f.binding.size() && i < vars.size(); ++i) {
    if (i) out += ",";
    out += universe->const_name(vars[i].second, f.binding[i]);
  }
  out += "]";
  return out;
}

bool GroundNet::hard_sat(const std::vector<char>& x) const {
  if (infeasible) return false;
  for (const auto& f : features) {
    if (f.hard && !eval_prop(f.prop, x)) return false;
  }
  return true;
}

double GroundNet::soft_score(const std::vector<char>& x) const {
  double s = 0.0;
  for (size_t i = 0; i < const_mult.size(); ++i) s += weights[i] * const_mult[i];
  for (const auto& f : features) {
    if (!f.hard && eval_prop(f.prop, x)) s += weights[f.formula] * f.mult;
  }
  return s;
}

std::optional<double> GroundNet::score(const std::vector<char>& x) const {
  if (!hard_sat(x)) return std::nullopt;
  return soft_score(x);
}

std::vector<double> GroundNet::counts(const std::vector<char>& x) const {
  std::vector<double> out = const_mult;
  for (const auto& f : features) {
    if (eval_prop(f.prop, x)) out[f.formula] += f.mult;
  }
  return out;
}

GroundNet ground_theory(const logic::Theory& th, const Universe& uni, const Evidence& ev,
                        size_t max_groundings) {
  return Grounder(th, uni, ev, max_groundings).run();
}

}  // namespace ctfrec::ground
