#pragma once

#include <cstdint>
#include <vector>

namespace ctfrec::sat {

// Literal encoding: 2*var for the positive literal, 2*var+1 for the negation.
using Lit = int32_t;
inline Lit mk_lit(int var, bool negated = false) { return 2 * var + (negated ? 1 : 0); }
inline int var_of(Lit l) { return l >> 1; }
inline bool negative(Lit l) { return (l & 1) != 0; }
inline Lit negate(Lit l) { return l ^ 1; }

enum class LBool : uint8_t { False = 0, True = 1, Undef = 2 };

// Conflict-driven clause learner with watched literals, first-UIP learning,
// deterministic activity order (ties by lowest index), Luby restarts, and
// MiniSat-style assumptions with final-conflict cores. Also exposes an
// explicit decision push/pop interface used by branch-and-bound search, which
// shares the propagation engine and any clauses learned along the way.
class Solver {
 public:
  int new_var();
  int num_vars() const { return static_cast<int>(assigns_.size()); }

  // Only callable with no outstanding decisions. Returns false when the
  // solver is already in a root-level contradiction.
  bool add_clause(std::vector<Lit> lits);

  enum class Status { Sat, Unsat };
  Status solve(const std::vector<Lit>& assumptions = {});

  // After Status::Sat: the satisfying assignment.
  bool model_value(int var) const { return model_.at(var) == LBool::True; }
  // After Status::Unsat under assumptions: the subset of the assumptions that
  // is jointly unsatisfiable (empty when the clauses alone are unsat).
  const std::vector<Lit>& conflict_core() const { return conflict_core_; }

  bool okay() const { return ok_; }

  // --- decision interface for external search ---
  // Opens a new decision level asserting l and propagates. Returns false on
  // conflict; the caller is expected to pop. A literal already true just
  // opens an empty level.
  bool push(Lit l);
  void pop_to(int level);
  int level() const { return static_cast<int>(trail_lim_.size()); }
  LBool value_of(int var) const { return assigns_[var]; }
  LBool value_lit(Lit l) const {
    const LBool b = assigns_[var_of(l)];
    if (b == LBool::Undef) return LBool::Undef;
    return (b == LBool::True) != negative(l) ? LBool::True : LBool::False;
  }
  // Propagates pending root-level units after add_clause; false on conflict.
  bool propagate_now();

  int64_t conflicts() const { return conflicts_; }

 private:
  struct Clause {
    std::vector<Lit> lits;
    bool learned = false;
  };

  bool enqueue(Lit l, int reason);
  int propagate();  // returns conflicting clause index or -1
  void analyze(int confl, std::vector<Lit>& learnt, int& bt_level);
  void analyze_final(Lit p);
  void cancel_until(int level);
  void new_decision_level() { trail_lim_.push_back(static_cast<int>(trail_.size())); }
  int pick_branch_var();
  void bump(int var);
  void decay() { var_inc_ /= 0.95; }
  void rescale();
  void attach(int ci);
  void verify_model() const;

  // heap keyed by activity, ties broken by index
  bool heap_lt(int a, int b) const {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }
  void heap_insert(int v);
  void heap_up(int i);
  void heap_down(int i);
  int heap_pop();

  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> watches_;  // per literal: clause indices
  std::vector<LBool> assigns_;
  std::vector<LBool> model_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<char> polarity_;  // saved phase
  std::vector<double> activity_;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::vector<Lit> conflict_core_;
  std::vector<char> seen_;
  size_t qhead_ = 0;
  double var_inc_ = 1.0;
  int64_t conflicts_ = 0;
  bool ok_ = true;
};

}  // namespace ctfrec::sat
