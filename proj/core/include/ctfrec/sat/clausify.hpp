#pragma once

#include "ctfrec/ground/prop.hpp"
#include "ctfrec/sat/solver.hpp"

namespace ctfrec::sat {

// Turns ground propositions into clauses over an existing solver. Atom ids
// map one-to-one onto the solver's first variables (the caller allocates
// them); auxiliary definition variables are appended on demand.
//
// Shallow structures produce plain clauses with no auxiliaries (an
// implication over atoms becomes the single clause of its disjunctive form);
// deeper subtrees get polarity-aware definitions. Exactly-one blocks in
// asserting position become one at-least-one clause plus pairwise exclusions.
class PropEncoder {
 public:
  explicit PropEncoder(Solver& s) : s_(&s) {}

  // Adds clauses requiring p to hold.
  void assert_true(const ground::Prop& p);

  // A literal that is true exactly when p holds (polarity +1/-1 restricts the
  // emitted direction, 0 emits both).
  Lit lit_for(const ground::Prop& p, int polarity);

 private:
  Lit const_lit(bool b);
  Solver* s_;
  int true_var_ = -1;
};

}  // namespace ctfrec::sat
