#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ctfrec/logic/theory.hpp"

namespace ctfrec::logic {

// Free variables of one formula in first-occurrence order, with the sorts
// inferred from predicate signatures. The grounder iterates these.
struct FormulaVars {
  std::vector<std::pair<std::string, std::string>> vars;  // (name, sort)
};

struct Validation {
  bool ok = true;
  std::vector<std::string> errors;
  std::vector<FormulaVars> formula_vars;  // parallel to theory.formulas; empty on failure
};

// Checks declaration consistency, arity and sort agreement, unique labels,
// predicate-variable signature agreement, and resolvability of every
// variable's sort. Hard formulas cannot carry a real-valued factor.
Validation validate(const Theory& th);

// Convenience: throws std::runtime_error with the first error message.
Validation validate_or_throw(const Theory& th);

// Sorts of every variable of the formula, quantified ones included (flat map;
// validation rejects shadowing, so names are unique within a formula). Throws
// when the formula does not validate against the theory.
std::map<std::string, std::string> formula_var_sorts(const Theory& th, const Formula& f);

}  // namespace ctfrec::logic
