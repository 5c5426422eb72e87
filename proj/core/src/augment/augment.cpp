#include "ctfrec/augment/augment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ctfrec/ground/ground.hpp"
#include "ctfrec/ground/prop.hpp"
#include "ctfrec/logic/validate.hpp"
#include "ctfrec/sat/clausify.hpp"
#include "ctfrec/sat/solver.hpp"

namespace ctfrec::augment {

namespace {

using learn::ExampleWorld;
using logic::Atom;
using logic::Fol;
using logic::FolKind;
using logic::FolPtr;
using logic::Formula;
using logic::Theory;

void collect_atom_preds(const FolPtr& f, std::set<std::string>& out) {
  if (!f) return;
  if (f->kind == FolKind::Atm) {
    out.insert(f->atom.pred);
    return;
  }
  for (const auto& k : f->kids) collect_atom_preds(k, out);
}

// Bodies, hardness and real-valued factor decide whether two formulas say
// the same thing; labels and weights do not.
bool same_shape(const Formula& a, const Formula& b) {
  return a.hard == b.hard && a.func_name == b.func_name && a.func_args == b.func_args &&
         logic::struct_eq(a.body, b.body);
}

std::string render_atom(const Theory& th, const ground::Universe& uni,
                        const ground::AtomKey& key) {
  if (key.pred < 0 || key.pred >= static_cast<int>(th.preds.size())) {
    return "<predicate #" + std::to_string(key.pred) + ">";
  }
  const auto& pd = th.preds[key.pred];
  std::string s = pd.name + "(";
  for (size_t i = 0; i < key.args.size(); ++i) {
    if (i) s += ", ";
    const std::string* name = nullptr;
    if (i < pd.arg_sorts.size() && uni.has_sort(pd.arg_sorts[i])) {
      const auto& consts = uni.constants(pd.arg_sorts[i]);
      if (key.args[i] >= 0 && key.args[i] < static_cast<int>(consts.size())) {
        name = &consts[key.args[i]];
      }
    }
    s += name ? *name : "#" + std::to_string(key.args[i]);
  }
  return s + ")";
}

// A world's hidden-atom labels must be consistent with its own evidence:
// they may not flip an observed value, and an atom labeled true must be
// inside the evidence's allowed domain for its predicate (atoms outside it
// are fixed false by construction).
void validate_world(const Theory& th, const ExampleWorld& w) {
  for (const auto& [key, value] : w.hidden) {
    if (key.pred < 0 || key.pred >= static_cast<int>(th.preds.size())) {
      throw std::invalid_argument("world '" + w.name +
                                  "': label uses an undeclared predicate index " +
                                  std::to_string(key.pred));
    }
    const auto obs = w.evidence.observed(key);
    if (obs.has_value() && *obs != value) {
      throw std::invalid_argument("world '" + w.name + "': label for " +
                                  render_atom(th, w.universe, key) +
                                  " contradicts its observed value");
    }
    if (value && !w.evidence.hidden_allowed(key)) {
      throw std::invalid_argument("world '" + w.name + "': " + render_atom(th, w.universe, key) +
                                  " is labeled true but lies outside the evidence's domain "
                                  "for its predicate");
    }
  }
}

// The satisfiability machinery only ever reasons about hard formulas, and
// grounding a soft formula can demand feature-function tables the worlds do
// not carry. Work over a copy that keeps declarations (so atom keys stay
// compatible) but drops every soft formula.
struct HardContext {
  Theory hard;
  std::map<std::string, int> index;  // label -> position in hard.formulas
};

HardContext make_hard_context(const Theory& th) {
  logic::validate_or_throw(th);
  HardContext hc;
  hc.hard = th;
  hc.hard.formulas.clear();
  for (const auto& f : th.formulas) {
    if (!f.hard) continue;
    hc.index[f.label] = static_cast<int>(hc.hard.formulas.size());
    hc.hard.formulas.push_back(f);
  }
  return hc;
}

// One world prepared for repeated queries: the hard formulas grounded over
// the world's evidence, every grounding guarded by a per-formula selector
// variable, and the world's labels pinned as unit clauses. Whether a subset
// of formulas fits the world is then a single solve under the subset's
// selectors.
struct WorldCtx {
  ground::GroundNet net;
  std::unique_ptr<sat::Solver> solver;
  std::vector<int> selector;       // hard formula -> selector variable
  std::vector<char> pre_violated;  // hard formula folded to false by evidence alone
};

WorldCtx make_world_ctx(const HardContext& hc, const ExampleWorld& w) {
  WorldCtx ctx;
  ctx.net = ground_theory(hc.hard, w.universe, w.evidence);
  ctx.pre_violated.assign(hc.hard.formulas.size(), 0);
  for (int fi : ctx.net.infeasible_formulas) ctx.pre_violated[fi] = 1;

  ctx.solver = std::make_unique<sat::Solver>();
  for (int i = 0; i < ctx.net.atom_count(); ++i) ctx.solver->new_var();
  ctx.selector.resize(hc.hard.formulas.size());
  for (auto& s : ctx.selector) s = ctx.solver->new_var();

  sat::PropEncoder enc(*ctx.solver);
  for (const auto& feat : ctx.net.features) {
    const sat::Lit holds = enc.lit_for(feat.prop, +1);
    ctx.solver->add_clause({sat::negate(sat::mk_lit(ctx.selector[feat.formula])), holds});
  }

  if (w.closed_world) {
    for (int id = 0; id < ctx.net.atom_count(); ++id) {
      const auto it = w.hidden.find(ctx.net.atoms[id]);
      const bool value = it != w.hidden.end() && it->second;
      ctx.solver->add_clause({sat::mk_lit(id, !value)});
    }
  } else {
    for (const auto& [key, value] : w.hidden) {
      const int id = ctx.net.atom_id(key);
      if (id >= 0) ctx.solver->add_clause({sat::mk_lit(id, !value)});
    }
  }
  return ctx;
}

bool ctx_sat(WorldCtx& ctx, const std::vector<int>& kept) {
  std::vector<sat::Lit> assumptions;
  assumptions.reserve(kept.size());
  for (int fi : kept) {
    if (ctx.pre_violated[fi]) return false;
    assumptions.push_back(sat::mk_lit(ctx.selector[fi]));
  }
  return ctx.solver->solve(assumptions) == sat::Solver::Status::Sat;
}

// Formulas violated by one completely labeled world: since every hidden atom
// has a value, each grounding can be evaluated directly.
std::set<std::string> violated_in_complete_world(const HardContext& hc, const ExampleWorld& w) {
  const ground::GroundNet net = ground_theory(hc.hard, w.universe, w.evidence);
  std::vector<char> x(net.atom_count(), 0);
  for (int id = 0; id < net.atom_count(); ++id) {
    const auto it = w.hidden.find(net.atoms[id]);
    x[id] = it != w.hidden.end() && it->second;
  }
  std::set<std::string> out;
  for (int fi : net.infeasible_formulas) out.insert(hc.hard.formulas[fi].label);
  for (const auto& feat : net.features) {
    if (!ground::eval_prop(feat.prop, x)) out.insert(hc.hard.formulas[feat.formula].label);
  }
  return out;
}

std::string attribution(const Formula& f, const ActivitySet& a) {
  std::set<std::string> preds;
  collect_atom_preds(f.body, preds);
  std::set<std::string> acts;
  for (const auto& act : a.activities) {
    if (preds.count(failed_counterpart(act))) acts.insert(act);
  }
  for (const auto& ss : a.states) {
    if (preds.count(failed_counterpart(ss.state))) acts.insert(ss.activity);
  }
  if (acts.empty()) return "general";
  std::string out;
  for (const auto& s : acts) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

std::string failed_counterpart(const std::string& pred) {
  if (pred.size() > 2 && pred[0] == 'i' && pred[1] == 's' &&
      std::isupper(static_cast<unsigned char>(pred[2]))) {
    return "isFailed" + pred.substr(2);
  }
  std::string rest = pred;
  if (!rest.empty()) rest[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(rest[0])));
  return "failed" + rest;
}

logic::Theory lift_to_second_order(const logic::Theory& t, const ActivitySet& a) {
  logic::validate_or_throw(t);
  Theory out = t;

  // Listed predicate -> its failed counterpart, in listing order.
  std::vector<std::pair<std::string, std::string>> listed;
  std::set<std::string> seen;
  auto add_listed = [&](const std::string& name) {
    if (!seen.insert(name).second) {
      throw std::invalid_argument("lift_to_second_order: predicate '" + name +
                                  "' is listed twice");
    }
    const logic::PredDecl* pd = out.find_pred(name);
    if (pd == nullptr) {
      throw std::invalid_argument("lift_to_second_order: predicate '" + name +
                                  "' is not declared");
    }
    if (!pd->hidden) {
      throw std::invalid_argument("lift_to_second_order: predicate '" + name +
                                  "' is observed; only hidden predicates can fail unnoticed");
    }
    const std::string cp = failed_counterpart(name);
    const logic::PredDecl* existing = out.find_pred(cp);
    if (existing == nullptr) {
      out.preds.push_back(logic::PredDecl{cp, pd->arg_sorts, true});
    } else if (existing->arg_sorts != pd->arg_sorts || !existing->hidden) {
      throw std::invalid_argument("lift_to_second_order: counterpart '" + cp +
                                  "' is already declared with a different signature");
    }
    listed.emplace_back(name, cp);
  };
  for (const auto& act : a.activities) add_listed(act);
  for (const auto& ss : a.states) add_listed(ss.state);

  std::map<std::string, std::string> counterpart(listed.begin(), listed.end());
  std::map<std::string, int> occurrence;  // per original predicate, across the theory
  for (auto& f : out.formulas) {
    f.body = logic::map_atoms(f.body, [&](const Atom& atom) {
      const auto it = counterpart.find(atom.pred);
      if (it == counterpart.end()) return atom;
      int& n = occurrence[atom.pred];
      std::string var;
      do {
        ++n;
        var = atom.pred + "Type" + std::to_string(n);
      } while (out.find_pred(var) != nullptr || out.find_predvar(var) != nullptr);
      out.predvars.push_back(logic::PredVarDecl{var, {atom.pred, it->second}});
      Atom renamed = atom;
      renamed.pred = var;
      return renamed;
    });
  }
  logic::validate_or_throw(out);
  return out;
}

logic::Theory instantiate_second_order(const logic::Theory& t2) {
  logic::validate_or_throw(t2);
  Theory out = t2;
  out.predvars.clear();
  out.formulas.clear();

  // Expand one formula into the substitutions of its predicate variables,
  // first-occurrence order, last variable cycling fastest. Index 0 is the
  // all-first-choice (original) reading.
  auto expand = [&](const Formula& f) {
    std::vector<Formula> result;
    std::vector<const logic::PredVarDecl*> vars;
    {
      std::set<std::string> seen;
      std::function<void(const FolPtr&)> walk = [&](const FolPtr& n) {
        if (!n) return;
        if (n->kind == FolKind::Atm) {
          const logic::PredVarDecl* pv = t2.find_predvar(n->atom.pred);
          if (pv != nullptr && seen.insert(pv->name).second) vars.push_back(pv);
          return;
        }
        for (const auto& k : n->kids) walk(k);
      };
      walk(f.body);
    }
    size_t total = 1;
    for (const auto* pv : vars) total *= pv->domain.size();
    for (size_t k = 0; k < total; ++k) {
      std::map<std::string, std::string> choice;
      size_t rem = k;
      size_t stride = total;
      for (const auto* pv : vars) {
        stride /= pv->domain.size();
        choice[pv->name] = pv->domain[rem / stride];
        rem %= stride;
      }
      Formula g = f;
      if (k > 0) {
        g.label = f.label + ".v" + std::to_string(k);
        g.weight_name.clear();  // variants start from the original's numeric weight
      }
      g.body = logic::map_atoms(f.body, [&](const Atom& atom) {
        const auto it = choice.find(atom.pred);
        if (it == choice.end()) return atom;
        Atom sub = atom;
        sub.pred = it->second;
        return sub;
      });
      result.push_back(std::move(g));
    }
    return result;
  };

  std::vector<std::vector<Formula>> expansions;
  expansions.reserve(t2.formulas.size());
  for (const auto& f : t2.formulas) expansions.push_back(expand(f));

  // Originals are always kept; a variant that restates an original (or an
  // earlier variant) is dropped. Numbering happened before this, so the
  // surviving labels do not depend on what was dropped.
  std::vector<const Formula*> kept;
  for (const auto& ex : expansions) kept.push_back(&ex.front());
  for (const auto& ex : expansions) {
    out.formulas.push_back(ex.front());
    for (size_t k = 1; k < ex.size(); ++k) {
      const Formula& cand = ex[k];
      const bool dup = std::any_of(kept.begin(), kept.end(),
                                   [&](const Formula* kf) { return same_shape(*kf, cand); });
      if (dup) continue;
      kept.push_back(&cand);
      out.formulas.push_back(cand);
    }
  }
  logic::validate_or_throw(out);
  return out;
}

bool test_sat(const std::vector<learn::ExampleWorld>& worlds, const logic::Theory& theory,
              const std::vector<std::string>& kept_hard_labels) {
  HardContext hc = make_hard_context(theory);
  std::vector<int> kept;
  kept.reserve(kept_hard_labels.size());
  for (const auto& label : kept_hard_labels) {
    const auto it = hc.index.find(label);
    if (it == hc.index.end()) {
      const int fi = theory.formula_index(label);
      throw std::invalid_argument(fi < 0 ? "test_sat: '" + label + "' names no formula"
                                         : "test_sat: '" + label +
                                               "' names a soft formula; satisfiability is a "
                                               "hard-formula question");
    }
    kept.push_back(it->second);
  }
  for (const auto& w : worlds) {
    validate_world(theory, w);
    WorldCtx ctx = make_world_ctx(hc, w);
    if (!ctx_sat(ctx, kept)) return false;
  }
  return true;
}

std::vector<std::string> find_incompatible_formulas(const std::vector<learn::ExampleWorld>& failed,
                                                    const logic::Theory& theory,
                                                    PruneStrategy strategy) {
  HardContext hc = make_hard_context(theory);
  for (const auto& w : failed) validate_world(theory, w);

  const bool all_closed =
      std::all_of(failed.begin(), failed.end(), [](const ExampleWorld& w) { return w.closed_world; });
  if (strategy == PruneStrategy::Auto) {
    strategy = all_closed ? PruneStrategy::PerFormula : PruneStrategy::TupleSearch;
  }

  if (strategy == PruneStrategy::PerFormula) {
    if (!all_closed) {
      throw std::invalid_argument(
          "find_incompatible_formulas: the per-formula strategy needs completely labeled "
          "(closed-world) examples");
    }
    // With complete labels each formula is verifiably true or false on its
    // own, so the minimal removal is exactly the union of violated formulas.
    std::set<std::string> removed;
    for (const auto& w : failed) {
      auto v = violated_in_complete_world(hc, w);
      removed.insert(v.begin(), v.end());
    }
    return {removed.begin(), removed.end()};
  }

  // Partial labels couple the formulas through the unlabeled atoms, so the
  // minimal removal has to be searched: try every removal set of size
  // 0, 1, 2, ... over the lexicographically ordered labels and return the
  // first whose complement every world tolerates.
  std::vector<WorldCtx> ctxs;
  ctxs.reserve(failed.size());
  for (const auto& w : failed) ctxs.push_back(make_world_ctx(hc, w));

  std::vector<std::string> labels;
  labels.reserve(hc.hard.formulas.size());
  for (const auto& f : hc.hard.formulas) labels.push_back(f.label);
  std::sort(labels.begin(), labels.end());
  const int m = static_cast<int>(labels.size());

  auto feasible = [&](const std::vector<int>& removal_positions) {
    std::vector<char> removed(m, 0);
    for (int p : removal_positions) removed[p] = 1;
    std::vector<int> kept;
    kept.reserve(m - removal_positions.size());
    for (int p = 0; p < m; ++p) {
      if (!removed[p]) kept.push_back(hc.index.at(labels[p]));
    }
    return std::all_of(ctxs.begin(), ctxs.end(),
                       [&](WorldCtx& ctx) { return ctx_sat(ctx, kept); });
  };

  for (int n = 0; n <= m; ++n) {
    std::vector<int> comb(n);
    for (int i = 0; i < n; ++i) comb[i] = i;
    while (true) {
      if (feasible(comb)) {
        std::vector<std::string> out;
        out.reserve(n);
        for (int p : comb) out.push_back(labels[p]);
        return out;  // combinations come out in lexicographic label order
      }
      int i = n - 1;
      while (i >= 0 && comb[i] == m - n + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  throw std::runtime_error(
      "find_incompatible_formulas: the examples stay contradictory even with every hard "
      "formula removed; their labels conflict with the evidence");
}

AugmentResult augment_theory(const logic::Theory& t, const ActivitySet& a,
                             const std::vector<learn::ExampleWorld>& successes,
                             const std::vector<learn::ExampleWorld>& failures,
                             const AugmentConfig& cfg) {
  logic::validate_or_throw(t);
  if (!t.predvars.empty()) {
    throw std::invalid_argument("augment_theory: the theory is already second-order");
  }
  if (successes.empty() || failures.empty()) {
    throw std::invalid_argument("augment_theory: need at least one success and one failure");
  }

  const Theory lifted = lift_to_second_order(t, a);
  const Theory expanded = instantiate_second_order(lifted);
  const std::vector<std::string> removed =
      find_incompatible_formulas(failures, expanded, cfg.strategy);

  AugmentResult out;
  for (const auto& label : removed) {
    const int fi = expanded.formula_index(label);
    out.goals.push_back(Goal{expanded.formulas[fi], attribution(expanded.formulas[fi], a)});
  }

  Theory pruned = expanded;
  const std::set<std::string> removed_set(removed.begin(), removed.end());
  std::erase_if(pruned.formulas,
                [&](const Formula& f) { return removed_set.count(f.label) != 0; });

  const std::vector<ExampleWorld>* lists[2] = {&successes, &failures};
  std::vector<ExampleWorld> train;
  train.reserve(successes.size() + failures.size());
  for (const auto* list : lists) train.insert(train.end(), list->begin(), list->end());
  out.training = learn::mira_learn(pruned, train, cfg.mira);

  for (auto& f : pruned.formulas) {
    if (f.hard) continue;
    f.weight = out.training.weights.at(f.label);
    f.weight_name.clear();
  }
  std::erase_if(pruned.formulas, [&](const Formula& f) {
    return !f.hard && std::abs(f.weight) < cfg.mira.zero_threshold;
  });
  pruned.weights.clear();

  out.theory = std::move(pruned);
  return out;
}

}  // namespace ctfrec::augment
