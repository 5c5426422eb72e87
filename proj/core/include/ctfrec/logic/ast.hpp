#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace ctfrec::logic {

// A term is a constant or a variable. Variables may carry a non-negative
// offset: "t+1" denotes the constant that follows t's binding in the declared
// order of t's sort (used for successive time steps). A grounding whose offset
// lands outside the declared order is dropped by the grounder, which bounds
// formulas at the horizon.
struct Term {
  std::string name;
  bool is_var = false;
  int offset = 0;

  static Term constant(std::string n) { return Term{std::move(n), false, 0}; }
  static Term var(std::string n, int off = 0) { return Term{std::move(n), true, off}; }
  bool operator==(const Term&) const = default;
};

// pred is either a declared predicate or, inside lifted formulas, a declared
// predicate variable.
struct Atom {
  std::string pred;
  std::vector<Term> args;
  bool operator==(const Atom&) const = default;
};

enum class FolKind {
  True,
  False,
  Atm,
  Eq,        // term equality
  Not,
  And,       // n-ary
  Or,        // n-ary
  Implies,   // binary, right-associative
  Iff,       // binary, left-associative
  Xor,       // binary, left-associative
  Forall,
  Exists,
  ExistsOne  // exactly-one over the quantified tuple
};

struct Fol;
using FolPtr = std::shared_ptr<const Fol>;

struct Fol {
  FolKind kind = FolKind::True;
  Atom atom;                       // Atm
  Term lhs, rhs;                   // Eq
  std::vector<FolPtr> kids;        // Not(1), And/Or(n), Implies/Iff/Xor(2), quantifiers(1)
  std::vector<std::string> qvars;  // quantifiers
};

FolPtr mk_true();
FolPtr mk_false();
FolPtr mk_atom(Atom a);
FolPtr mk_eq(Term l, Term r);
FolPtr mk_not(FolPtr k);
FolPtr mk_and(std::vector<FolPtr> kids);
FolPtr mk_or(std::vector<FolPtr> kids);
FolPtr mk_implies(FolPtr a, FolPtr b);
FolPtr mk_iff(FolPtr a, FolPtr b);
FolPtr mk_xor(FolPtr a, FolPtr b);
FolPtr mk_forall(std::vector<std::string> vars, FolPtr body);
FolPtr mk_exists(std::vector<std::string> vars, FolPtr body);
FolPtr mk_exists_one(std::vector<std::string> vars, FolPtr body);

bool struct_eq(const FolPtr& a, const FolPtr& b);

// Free variables in first-occurrence (preorder) order.
std::vector<std::string> free_vars(const FolPtr& f);

// Rewrites every atom through fn, preserving shape. fn may be stateful, which
// supports per-occurrence rewrites.
FolPtr map_atoms(const FolPtr& f, const std::function<Atom(const Atom&)>& fn);

}  // namespace ctfrec::logic
