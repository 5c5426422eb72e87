#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ctfrec/ground/ground.hpp"
#include "ctfrec/sat/solver.hpp"

namespace ctfrec::infer {

// Exact maximizer for a subset of a ground net's features (internal engine
// behind solve_map).
//
// Hidden atoms are grouped into decision blocks: each hard exactly-one
// constraint over plain atoms becomes one pick-a-member block, every other
// touched atom a binary block. Blocks are searched depth-first, one connected
// component of the feature-sharing graph at a time, in a breadth-first order
// over that graph. Soft features confined to one block or to two blocks
// adjacent in the branch order are folded into lookup tables with an exact
// dynamic-programming suffix bound, which makes chain-shaped problems close
// to closed-form; every other feature is bounded optimistically and evaluated
// the moment its last block gets assigned. A clause engine carries the hard
// constraints for early contradiction pruning, and every hard feature is
// additionally re-evaluated directly, so exactness never rests on clause
// propagation being complete.
class BlockSearch {
 public:
  // active: indices into net.features. The caller must keep net alive and its
  // weights unchanged for this object's lifetime.
  BlockSearch(const ground::GroundNet& net, const std::vector<int>& active);

  struct Result {
    std::vector<char> assignment;  // full atom vector; untouched atoms false
    double value = 0.0;            // active soft contribution of solved part
    int64_t nodes = 0;
  };

  // pins: -1 free, 0 forced false, 1 forced true, one per atom. component -1
  // solves every component (value = all active soft features); a specific
  // component solves just that one (value = its features only; other touched
  // atoms resolve to pin-or-false in the assignment). Returns nullopt when
  // the hard constraints admit no assignment under the pins.
  std::optional<Result> solve(const std::vector<int8_t>& pins, int component = -1);
  std::optional<Result> solve() { return solve(std::vector<int8_t>(net_->atom_count(), -1)); }

  // Components are ordered by their smallest atom id.
  int component_count() const { return static_cast<int>(comp_blocks_.size()); }
  const std::vector<int>& component_atoms(int c) const { return comp_atoms_[c]; }

 private:
  struct Block {
    std::vector<int> atoms;  // ascending; exclusive: pick-one-true members
    bool exclusive = false;
    int comp = -1;
    int pos = -1;  // position in its component's branch order
  };
  struct Watch {
    const ground::Prop* prop;
    double w = 0.0;    // feature weight (0 contribution bookkeeping for hard)
    bool hard = false;
    int blocks = 0;    // number of distinct blocks touched
  };
  struct CompFeat {
    const ground::Prop* prop;
    double w = 0.0;
    int comp = -1;
  };

  void build_blocks(const std::vector<int>& active);
  void build_components();
  void build_tables();
  int choice_count(const Block& b) const { return b.exclusive ? static_cast<int>(b.atoms.size()) : 2; }
  sat::Lit choice_lit(const Block& b, int v) const {
    return b.exclusive ? sat::mk_lit(b.atoms[v], false) : sat::mk_lit(b.atoms[0], v == 0);
  }
  void apply_choice(const Block& b, int v);
  void undo_choice(const Block& b, int v);
  void search(int comp, int k, double acc);

  const ground::GroundNet* net_;
  std::vector<int> active_;                    // feature indices into net_->features
  std::vector<std::vector<int>> feat_blocks_;  // per active feature, sorted block ids
  std::vector<CompFeat> soft_feats_;           // active soft, for final evaluation
  std::vector<CompFeat> hard_feats_;           // active hard, for final verification
  std::vector<Watch> watches_;
  std::vector<Block> blocks_;
  std::vector<int> block_of_atom_;             // -1 for untouched atoms
  std::vector<std::vector<int>> comp_blocks_;  // per component, branch order
  std::vector<std::vector<int>> comp_atoms_;   // per component, ascending ids
  // Per component, per branch position: choice tables and suffix bounds.
  std::vector<std::vector<std::vector<double>>> unary_;   // [comp][pos][v]
  std::vector<std::vector<std::vector<std::vector<double>>>> pair_;  // [comp][pos][v][w] to pos+1
  std::vector<std::vector<std::vector<double>>> suffix_;  // [comp][pos][v]
  std::vector<std::vector<int>> block_watches_;            // block id -> watch indices
  std::vector<double> comp_watch_opt_;                     // per comp, sum max(w,0) of soft watches

  sat::Solver solver_;
  bool root_ok_ = true;

  // Search state (valid during solve()).
  std::vector<char> scratch_;
  std::vector<int> watch_rem_;
  std::vector<int> chosen_;
  double nl_rem_ = 0.0;
  double best_ = 0.0;
  bool has_best_ = false;
  std::vector<char> best_scratch_;
  int64_t nodes_ = 0;
};

}  // namespace ctfrec::infer
