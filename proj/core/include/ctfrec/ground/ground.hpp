#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctfrec/ground/evidence.hpp"
#include "ctfrec/ground/prop.hpp"
#include "ctfrec/ground/universe.hpp"
#include "ctfrec/logic/theory.hpp"

namespace ctfrec::ground {

struct GroundFeature {
  int formula = -1;          // index into the theory's formula list
  bool hard = false;
  double mult = 1.0;         // real-valued factor of this grounding (1 if none)
  Prop prop;
  std::vector<int> binding;  // constants bound to the formula's free variables
};

// A theory grounded over a universe and evidence. Variables exist only for
// hidden atoms the evidence allows; everything observed has been folded away.
// Ground soft features contribute weight(formula) * mult when their
// proposition holds; hard features must all hold.
struct GroundNet {
  const logic::Theory* theory = nullptr;
  const Universe* universe = nullptr;

  std::vector<AtomKey> atoms;       // id -> atom, canonical order
  std::map<AtomKey, int> atom_ids;  // reverse lookup
  std::vector<GroundFeature> features;
  std::vector<double> weights;      // per formula, current soft weights
  std::vector<double> const_mult;   // per formula, total mult folded to true
  bool infeasible = false;          // a hard grounding folded to false
  std::vector<std::string> infeasible_notes;
  std::vector<int> infeasible_formulas;  // formula indices behind the notes, aligned

  int atom_count() const { return static_cast<int>(atoms.size()); }
  int atom_id(const AtomKey& k) const {
    auto it = atom_ids.find(k);
    return it == atom_ids.end() ? -1 : it->second;
  }
  std::string atom_name(int id) const;
  std::string feature_name(const GroundFeature& f) const;

  double feature_weight(const GroundFeature& f) const {
    return weights[f.formula] * f.mult;
  }
  void set_weights(std::vector<double> w) { weights = std::move(w); }

  bool hard_sat(const std::vector<char>& x) const;
  double soft_score(const std::vector<char>& x) const;
  // nullopt when a hard feature (or a folded hard grounding) is violated.
  std::optional<double> score(const std::vector<char>& x) const;
  // Per-formula totals sum(mult * 1[sat]) including folded-true groundings.
  std::vector<double> counts(const std::vector<char>& x) const;
};

// Grounds the theory. Throws std::runtime_error on formulas that still
// mention predicate variables, on missing function values for surviving
// groundings, or when the expansion exceeds `max_groundings` per formula.
GroundNet ground_theory(const logic::Theory& th, const Universe& uni, const Evidence& ev,
                        size_t max_groundings = 50'000'000);

}  // namespace ctfrec::ground
