#pragma once

#include <set>
#include <vector>

namespace ctfrec::ground {

// Propositional structure of one ground feature over hidden-atom variables.
// Connectives richer than And/Or are lowered during grounding; ExactlyOne is
// kept intact because both evaluation and clausification exploit it.
struct Prop {
  enum class K { False, True, Var, Not, And, Or, ExactlyOne };
  K k = K::False;
  int var = -1;
  std::vector<Prop> kids;

  static Prop constant(bool b) { return Prop{b ? K::True : K::False, -1, {}}; }
  static Prop atom(int v) { return Prop{K::Var, v, {}}; }
  static Prop negate(Prop p);
  static Prop conj(std::vector<Prop> kids);
  static Prop disj(std::vector<Prop> kids);
  static Prop exactly_one(std::vector<Prop> kids);

  bool is_const() const { return k == K::False || k == K::True; }
  bool const_value() const { return k == K::True; }
};

bool eval_prop(const Prop& p, const std::vector<char>& assignment);
void collect_vars(const Prop& p, std::set<int>& out);

}  // namespace ctfrec::ground
