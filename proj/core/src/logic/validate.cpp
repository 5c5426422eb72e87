#include "ctfrec/logic/validate.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace ctfrec::logic {

namespace {

struct Scope {
  // variable -> sort ("" until first use fixes it)
  std::map<std::string, std::string> sorts;
  std::vector<std::string> order;  // first-occurrence order of free vars
  std::vector<std::string> bound;  // currently quantified

  bool is_bound(const std::string& v) const {
    for (const auto& b : bound) {
      if (b == v) return true;
    }
    return false;
  }
};

class Checker {
 public:
  explicit Checker(const Theory& th, Validation& out) : th_(th), out_(out) {}

  void set_capture(std::map<std::string, std::string>* capture) { capture_ = capture; }
  void check_formula(const Formula& f) { formula(f); }

  void error(const std::string& where, const std::string& msg) {
    out_.ok = false;
    out_.errors.push_back(where + ": " + msg);
  }

  void run() {
    decls();
    std::set<std::string> labels;
    for (const auto& f : th_.formulas) {
      if (!labels.insert(f.label).second) {
        error(f.label, "duplicate formula label");
      }
      formula(f);
    }
    if (!out_.ok) out_.formula_vars.clear();
  }

 private:
  void decls() {
    std::set<std::string> names;
    for (const auto& s : th_.sorts) {
      if (!names.insert(s).second) error(s, "duplicate sort");
    }
    auto check_sorts = [&](const std::string& who, const std::vector<std::string>& ss) {
      for (const auto& s : ss) {
        if (th_.sort_index(s) < 0) error(who, "unknown sort '" + s + "'");
      }
    };
    std::set<std::string> syms;
    for (const auto& p : th_.preds) {
      if (!syms.insert(p.name).second) error(p.name, "duplicate predicate");
      check_sorts(p.name, p.arg_sorts);
    }
    for (const auto& pv : th_.predvars) {
      if (!syms.insert(pv.name).second) {
        error(pv.name, "predicate variable clashes with another symbol");
      }
      const PredDecl* first = nullptr;
      for (const auto& d : pv.domain) {
        const PredDecl* p = th_.find_pred(d);
        if (!p) {
          error(pv.name, "domain member '" + d + "' is not a declared predicate");
          continue;
        }
        if (!first) {
          first = p;
        } else if (p->arg_sorts != first->arg_sorts || p->hidden != first->hidden) {
          error(pv.name, "domain members must share signature and visibility");
        }
      }
      if (pv.domain.empty()) error(pv.name, "empty predicate-variable domain");
    }
    for (const auto& fn : th_.funcs) {
      if (!syms.insert(fn.name).second) error(fn.name, "duplicate function");
      check_sorts(fn.name, fn.arg_sorts);
    }
    std::set<std::string> wnames;
    for (const auto& w : th_.weights) {
      if (!wnames.insert(w.name).second) error(w.name, "duplicate weight");
    }
  }

  const std::vector<std::string>* signature(const std::string& pred) {
    if (const PredDecl* p = th_.find_pred(pred)) return &p->arg_sorts;
    if (const PredVarDecl* pv = th_.find_predvar(pred)) {
      if (!pv->domain.empty()) {
        if (const PredDecl* p = th_.find_pred(pv->domain[0])) return &p->arg_sorts;
      }
    }
    return nullptr;
  }

  void use_var(const std::string& label, Scope& sc, const Term& t, const std::string& sort) {
    if (!t.is_var) return;
    auto it = sc.sorts.find(t.name);
    if (it == sc.sorts.end()) {
      error(label, "internal: unseen variable '" + t.name + "'");
      return;
    }
    if (it->second.empty()) {
      it->second = sort;
    } else if (!sort.empty() && it->second != sort) {
      error(label, "variable '" + t.name + "' used as both '" + it->second + "' and '" + sort + "'");
    }
  }

  void see_var(Scope& sc, const Term& t) {
    if (!t.is_var) return;
    if (sc.sorts.emplace(t.name, "").second && !sc.is_bound(t.name)) {
      sc.order.push_back(t.name);
    }
  }

  void walk(const std::string& label, const FolPtr& f, Scope& sc) {
    switch (f->kind) {
      case FolKind::Atm: {
        const auto* sig = signature(f->atom.pred);
        if (!sig) {
          error(label, "unknown predicate '" + f->atom.pred + "'");
          return;
        }
        if (sig->size() != f->atom.args.size()) {
          error(label, "arity mismatch for '" + f->atom.pred + "'");
          return;
        }
        for (size_t i = 0; i < f->atom.args.size(); ++i) {
          see_var(sc, f->atom.args[i]);
          use_var(label, sc, f->atom.args[i], (*sig)[i]);
        }
        return;
      }
      case FolKind::Eq: {
        see_var(sc, f->lhs);
        see_var(sc, f->rhs);
        if (f->lhs.is_var && f->rhs.is_var) {
          const std::string sl = sc.sorts[f->lhs.name];
          const std::string sr = sc.sorts[f->rhs.name];
          if (!sl.empty()) use_var(label, sc, f->rhs, sl);
          if (!sr.empty()) use_var(label, sc, f->lhs, sr);
        }
        return;
      }
      case FolKind::Forall:
      case FolKind::Exists:
      case FolKind::ExistsOne: {
        for (const auto& v : f->qvars) {
          if (sc.sorts.count(v)) {
            error(label, "variable '" + v + "' shadows an outer use");
          } else {
            sc.sorts.emplace(v, "");
            sc.bound.push_back(v);
          }
        }
        walk(label, f->kids[0], sc);
        for (auto it = f->qvars.rbegin(); it != f->qvars.rend(); ++it) {
          const std::string& v = *it;
          if (!sc.bound.empty() && sc.bound.back() == v) {
            sc.bound.pop_back();
            if (sc.sorts[v].empty()) {
              error(label, "cannot infer a sort for quantified variable '" + v + "'");
            } else if (capture_) {
              (*capture_)[v] = sc.sorts[v];
            }
            sc.sorts.erase(v);
          }
        }
        return;
      }
      default:
        for (const auto& k : f->kids) walk(label, k, sc);
        return;
    }
  }

  void formula(const Formula& f) {
    FormulaVars fv;
    if (f.hard && !f.func_name.empty()) {
      error(f.label, "hard formulas cannot carry a real-valued factor");
    }
    if (!f.weight_name.empty() && !th_.find_weight(f.weight_name)) {
      error(f.label, "unknown weight '" + f.weight_name + "'");
    }
    Scope sc;
    if (!f.body) {
      error(f.label, "missing body");
      out_.formula_vars.push_back(fv);
      return;
    }
    walk(f.label, f.body, sc);
    for (const auto& v : sc.order) {
      if (sc.sorts[v].empty()) {
        error(f.label, "cannot infer a sort for variable '" + v + "'");
      }
      if (capture_) (*capture_)[v] = sc.sorts[v];
      fv.vars.emplace_back(v, sc.sorts[v]);
    }
    if (!f.func_name.empty()) {
      const FuncDecl* fd = th_.find_func(f.func_name);
      if (!fd) {
        error(f.label, "unknown function '" + f.func_name + "'");
      } else if (fd->arg_sorts.size() != f.func_args.size()) {
        error(f.label, "arity mismatch for function '" + f.func_name + "'");
      } else {
        for (size_t i = 0; i < f.func_args.size(); ++i) {
          bool found = false;
          for (const auto& [name, sort] : fv.vars) {
            if (name == f.func_args[i]) {
              found = true;
              if (sort != fd->arg_sorts[i]) {
                error(f.label, "function argument '" + name + "' has sort '" + sort +
                                   "' but '" + f.func_name + "' expects '" +
                                   fd->arg_sorts[i] + "'");
              }
            }
          }
          if (!found) {
            error(f.label,
                  "function argument '" + f.func_args[i] + "' is not free in the body");
          }
        }
      }
    }
    out_.formula_vars.push_back(std::move(fv));
  }

  const Theory& th_;
  Validation& out_;
  std::map<std::string, std::string>* capture_ = nullptr;
};

}  // namespace

Validation validate(const Theory& th) {
  Validation v;
  Checker(th, v).run();
  return v;
}

Validation validate_or_throw(const Theory& th) {
  Validation v = validate(th);
  if (!v.ok) throw std::runtime_error("invalid theory: " + v.errors.front());
  return v;
}

std::map<std::string, std::string> formula_var_sorts(const Theory& th, const Formula& f) {
  Validation v;
  Checker c(th, v);
  std::map<std::string, std::string> out;
  c.set_capture(&out);
  c.check_formula(f);
  if (!v.ok) throw std::runtime_error("invalid formula: " + v.errors.front());
  return out;
}

}  // namespace ctfrec::logic
