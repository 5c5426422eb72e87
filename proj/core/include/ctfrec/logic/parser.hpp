#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "ctfrec/logic/theory.hpp"

namespace ctfrec::logic {

// Theory text format:
//
//   sort player;
//   pred snap(player, cell, time) hidden;
//   pred enemies(player, player) observed;
//   predvar st in {isCaptured, isFailedCaptured};
//   func d1(player, cell, time);
//   weight w_p = -1.0;
//   H1: hard exists1 c : snap(a, c, t);
//   S1: soft w_p snap(a, c, t) * d1(a, c, t);
//
// An identifier starting with a lowercase letter (or '_') in term position is
// a variable; anything else (uppercase or numeric literal) is a constant.
// Variables may carry "+k" offsets ("t+1"). Free variables of a formula body
// are implicitly universally quantified at the feature level. Connectives by
// loosest-to-tightest binding: <=>, =>, xor, |, &, !. Quantifiers (forall,
// exists, exists1) extend to the end of the enclosing expression and need
// parentheses when nested inside a connective. '#' starts a line comment.
struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg), line(line_), col(col_) {}
};

Theory parse_theory(std::string_view text);

// Parses a single formula body; for tests and small fixtures.
FolPtr parse_fol(std::string_view text);

bool is_variable_name(std::string_view name);

}  // namespace ctfrec::logic
