#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctfrec/ground/evidence.hpp"
#include "ctfrec/ground/ground.hpp"
#include "ctfrec/ground/universe.hpp"
#include "ctfrec/logic/theory.hpp"

namespace ctfrec::learn {

// One labeled training (or consistency-checking) instance: its own object
// universe, observed evidence, and the truth of hidden atoms. `hidden` lists
// atoms with explicit values. With `closed_world` set (the default) unlisted
// hidden atoms are read as false, so the labels pin a complete assignment;
// learning requires this. With it cleared, unlisted hidden atoms are left
// unconstrained — legal only for consistency checks, which may quantify over
// the completions of such a partial world.
struct ExampleWorld {
  std::string name;
  bool success = true;
  ground::Universe universe;
  ground::Evidence evidence;
  std::map<ground::AtomKey, bool> hidden;
  bool closed_world = true;
};

struct MiraConfig {
  int epochs = 10;
  double aggressiveness_cap = 1.0;  // C: per-update step ceiling
  uint64_t shuffle_seed = 1;
  double zero_threshold = 1e-3;  // |w| below this counts as "never useful"
  bool average = false;          // report the running mean instead of the final point
};

struct TrainedWeights {
  std::map<std::string, double> weights;  // soft formula label -> weight
  std::vector<double> epoch_loss;         // summed prediction loss per epoch
  std::vector<double> taus;               // step size of every applied update
  int skipped_inexpressible = 0;  // examples with loss but a zero feature gap
};

// Per-soft-formula feature counts of a complete assignment: the number of
// true groundings of each soft formula, scaled by its feature function where
// one is attached. Evidence-folded groundings contribute their constant part.
std::vector<double> feature_vector(const ground::GroundNet& net, const std::vector<char>& x);

// False positives plus false negatives between two assignments over the same
// atom set.
int hamming_loss(const std::vector<char>& gold, const std::vector<char>& pred);

// Margin-infused relaxed online learning of soft-formula weights. Grounds the
// theory once per example, then for `epochs` passes over the shuffled
// examples runs MAP inference with the current weights and, whenever the
// prediction misses the gold assignment, steps the weights toward the gold
// feature vector with step size
//   tau = clamp( (loss - w . dPhi) / |dPhi|^2, 0, C ),  dPhi = Phi(gold) - Phi(pred).
// Every example's gold assignment must satisfy the hard formulas; an example
// that does not is rejected up front with the offending formula named.
TrainedWeights mira_learn(const logic::Theory& theory, const std::vector<ExampleWorld>& train,
                          const MiraConfig& cfg = {},
                          const std::map<std::string, double>* init = nullptr);

}  // namespace ctfrec::learn
