#pragma once

#include <string>
#include <vector>

#include "ctfrec/learn/mira.hpp"
#include "ctfrec/logic/theory.hpp"

namespace ctfrec::augment {

// Ties a hidden state fluent to the activity whose failed attempts leave the
// state's failed counterpart behind (e.g. isCaptured belongs to capturing:
// a near-capture produces isFailedCaptured, not isCaptured).
struct StateSpec {
  std::string state;
  std::string activity;
};

// The vocabulary considered for failure: event predicates that get failed
// counterparts (capturing -> failedCapturing) and state fluents whose
// counterparts describe near-miss outcomes.
struct ActivitySet {
  std::vector<std::string> activities;
  std::vector<StateSpec> states;
};

// "isCaptured" -> "isFailedCaptured"; any other name -> "failed" + the name
// with its first letter capitalized ("capturing" -> "failedCapturing").
std::string failed_counterpart(const std::string& pred);

// Returns a copy of the theory in which every occurrence of a listed
// activity or state predicate inside a formula body is replaced by a fresh
// predicate variable ranging over {original, failed counterpart}. Distinct
// occurrences get distinct variables, so instantiation explores every
// combination. Counterpart predicates that are missing are declared as
// hidden predicates with the original's signature; listed predicates must
// exist and be hidden.
logic::Theory lift_to_second_order(const logic::Theory& t, const ActivitySet& a);

// Substitutes every combination of predicate-variable values, one formula
// per combination, and drops the predicate-variable declarations. For each
// formula the distinct predicate variables are taken in first-occurrence
// order and the last one cycles fastest; combination 0 (all originals)
// keeps the formula's label and weight name, combination k > 0 is labeled
// "<label>.v<k>" and starts from the original's numeric weight. Structural
// duplicates are dropped, originals taking precedence over variants;
// variant numbering is assigned before deduplication, so surviving labels
// are stable.
logic::Theory instantiate_second_order(const logic::Theory& t2);

enum class PruneStrategy {
  Auto,        // PerFormula when every world is closed-world, else TupleSearch
  PerFormula,  // complete assignments: test each formula's groundings directly
  TupleSearch  // growing removal sets checked with a SAT solver per world
};

// True iff in every world the hard formulas named by kept_hard_labels,
// grounded over the world's universe and evidence, are jointly satisfiable
// together with the world's hidden-atom labels. A closed world pins every
// unlisted hidden atom false; otherwise unlisted atoms range freely over
// the completions. Labels must name hard formulas of the theory.
bool test_sat(const std::vector<learn::ExampleWorld>& worlds, const logic::Theory& theory,
              const std::vector<std::string>& kept_hard_labels);

// The smallest set of hard-formula labels whose removal leaves the remaining
// hard formulas satisfiable in every listed world, ties resolved to the
// lexicographically least label set; empty when the theory already fits the
// worlds. Throws when a world's labels contradict its evidence, and reports
// the degenerate case where no removal helps.
std::vector<std::string> find_incompatible_formulas(const std::vector<learn::ExampleWorld>& failed,
                                                    const logic::Theory& theory,
                                                    PruneStrategy strategy = PruneStrategy::Auto);

// A hard formula the failure examples forced out of the theory. Removal is
// evidence of intent: the formula describes an effect the acting agent
// wanted but did not obtain, so each removed formula is read as a goal of
// the activities it mentions.
struct Goal {
  logic::Formula formula;
  std::string note;  // the activities the formula's failed atoms belong to
};

struct AugmentConfig {
  PruneStrategy strategy = PruneStrategy::Auto;
  learn::MiraConfig mira;
};

struct AugmentResult {
  logic::Theory theory;             // failure-aware theory with learned weights
  std::vector<Goal> goals;          // pruned formulas, in label order
  learn::TrainedWeights training;
};

// Extends a theory of successful activities to one that also models failed
// attempts: lifts the listed predicates to second order, instantiates every
// variant, prunes the variants the failure examples contradict, learns the
// soft weights on successes and failures together, and drops soft formulas
// whose learned weight stays below the zero threshold. The input theory
// must be first-order (no predicate variables) and both example lists must
// be nonempty.
AugmentResult augment_theory(const logic::Theory& t, const ActivitySet& a,
                             const std::vector<learn::ExampleWorld>& successes,
                             const std::vector<learn::ExampleWorld>& failures,
                             const AugmentConfig& cfg = {});

}  // namespace ctfrec::augment
