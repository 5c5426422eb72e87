#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ctfrec/ground/ground.hpp"

namespace ctfrec::infer {

struct MapOptions {
  // Return the lexicographically smallest optimum (canonical atom order,
  // false before true), so equal-scoring states resolve deterministically.
  bool canonical = true;
  // Tolerance when testing alternate optima for ties.
  double tie_eps = 1e-7;
};

struct MapResult {
  std::vector<char> assignment;      // per hidden atom
  double score = 0.0;                // full-net score at the assignment
  std::vector<double> upper_bounds;  // one per cutting-plane iteration
  int iterations = 0;
  int64_t nodes = 0;                 // branch-and-bound nodes explored
  int active_features = 0;           // features activated by the final round
};

class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, std::vector<std::string> violated)
      : std::runtime_error(what), violated_(std::move(violated)) {}
  const std::vector<std::string>& violated() const { return violated_; }

 private:
  std::vector<std::string> violated_;
};

// Exact most-probable-state inference. A cutting-plane loop keeps a growing
// active subset of features — starting empty, adding exactly those the
// current candidate state gets wrong (violated hard features, soft features
// whose truth differs from their weight-optimistic guess) — and maximizes
// each round exactly with branch-and-bound over decision blocks. On
// convergence the candidate provably attains the global optimum; the recorded
// per-round upper bounds decrease monotonically onto the final score. Throws
// InfeasibleError when the hard constraints admit no state.
MapResult solve_map(const ground::GroundNet& net, const MapOptions& opts = {});

// Labels of a jointly-unsatisfiable subset of the hard features; empty when
// the hard constraints are satisfiable.
std::vector<std::string> hard_conflict(const ground::GroundNet& net);

// Exact log normalizer by enumeration over all hidden-atom states; refuses
// nets with more than max_atoms atoms. -inf when no state satisfies the hard
// constraints.
double log_partition(const ground::GroundNet& net, int max_atoms = 25);

// log probability of one state given a precomputed log normalizer; -inf on
// hard violation.
double world_log_probability(const ground::GroundNet& net, const std::vector<char>& x,
                             double log_z);

}  // namespace ctfrec::infer
