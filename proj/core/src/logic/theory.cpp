#include "ctfrec/logic/theory.hpp"

namespace ctfrec::logic {

bool struct_eq(const Formula& a, const Formula& b) {
  return a.label == b.label && a.hard == b.hard && a.weight_name == b.weight_name &&
         a.weight == b.weight && a.func_name == b.func_name && a.func_args == b.func_args &&
         struct_eq(a.body, b.body);
}

int Theory::sort_index(std::string_view name) const {
  for (size_t i = 0; i < sorts.size(); ++i) {
    if (sorts[i] == name) return static_cast<int>(i);
  }
  return -1;
}

int Theory::pred_index(std::string_view name) const {
  for (size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

const PredDecl* Theory::find_pred(std::string_view name) const {
  const int i = pred_index(name);
  return i < 0 ? nullptr : &preds[i];
}

const PredVarDecl* Theory::find_predvar(std::string_view name) const {
  for (const auto& pv : predvars) {
    if (pv.name == name) return &pv;
  }
  return nullptr;
}

const FuncDecl* Theory::find_func(std::string_view name) const {
  for (const auto& f : funcs) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const WeightDecl* Theory::find_weight(std::string_view name) const {
  for (const auto& w : weights) {
    if (w.name == name) return &w;
  }
  return nullptr;
}

int Theory::formula_index(std::string_view label) const {
  for (size_t i = 0; i < formulas.size(); ++i) {
    if (formulas[i].label == label) return static_cast<int>(i);
  }
  return -1;
}

void Theory::sync_weight_decls() {
  for (const auto& f : formulas) {
    if (f.hard || f.weight_name.empty()) continue;
    for (auto& w : weights) {
      if (w.name == f.weight_name) {
        w.value = f.weight;
        break;
      }
    }
  }
}

bool struct_eq(const Theory& a, const Theory& b) {
  if (a.sorts != b.sorts || a.preds != b.preds || a.predvars != b.predvars ||
      a.funcs != b.funcs || a.weights != b.weights) {
    return false;
  }
  if (a.formulas.size() != b.formulas.size()) return false;
  for (size_t i = 0; i < a.formulas.size(); ++i) {
    if (!struct_eq(a.formulas[i], b.formulas[i])) return false;
  }
  return true;
}

}  // namespace ctfrec::logic
