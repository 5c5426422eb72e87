#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ctfrec/logic/ast.hpp"

namespace ctfrec::logic {

struct PredDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
  bool hidden = false;
  bool operator==(const PredDecl&) const = default;
};

// A predicate variable ranges over declared predicates that share a signature.
// Lifted formulas mention these in atom position; instantiation substitutes
// every combination of domain members.
struct PredVarDecl {
  std::string name;
  std::vector<std::string> domain;
  bool operator==(const PredVarDecl&) const = default;
};

// Real-valued feature function attached to a formula ("hybrid" formula). The
// grounder multiplies the formula weight by the function value of each
// grounding; values are supplied with the evidence.
struct FuncDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
  bool operator==(const FuncDecl&) const = default;
};

struct WeightDecl {
  std::string name;
  double value = 0.0;
  bool operator==(const WeightDecl&) const = default;
};

// Free variables of the body are implicitly universally quantified at the
// feature level: every assignment of constants to them yields one ground
// feature with this formula's weight.
struct Formula {
  std::string label;
  bool hard = false;
  std::string weight_name;  // empty when the weight was given as a literal
  double weight = 0.0;
  FolPtr body;
  std::string func_name;  // empty when the formula has no real-valued factor
  std::vector<std::string> func_args;
};

bool struct_eq(const Formula& a, const Formula& b);

struct Theory {
  std::vector<std::string> sorts;
  std::vector<PredDecl> preds;
  std::vector<PredVarDecl> predvars;
  std::vector<FuncDecl> funcs;
  std::vector<WeightDecl> weights;
  std::vector<Formula> formulas;

  int sort_index(std::string_view name) const;
  int pred_index(std::string_view name) const;
  const PredDecl* find_pred(std::string_view name) const;
  const PredVarDecl* find_predvar(std::string_view name) const;
  const FuncDecl* find_func(std::string_view name) const;
  const WeightDecl* find_weight(std::string_view name) const;
  int formula_index(std::string_view label) const;

  // Copies formula weights back into the named weight declarations (after
  // learning) so that a printed theory carries the learned values.
  void sync_weight_decls();
};

bool struct_eq(const Theory& a, const Theory& b);

}  // namespace ctfrec::logic
