#include "ctfrec/sat/solver.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace ctfrec::sat {

int Solver::new_var() {
  const int v = num_vars();
  assigns_.push_back(LBool::Undef);
  level_.push_back(-1);
  reason_.push_back(-1);
  polarity_.push_back(0);
  activity_.push_back(0.0);
  seen_.push_back(0);
  heap_pos_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v;
}

bool Solver::add_clause(std::vector<Lit> lits) {
  assert(level() == 0);
  if (!ok_) return false;
  std::sort(lits.begin(), lits.end());
  std::vector<Lit> out;
  Lit prev = -1;
  for (const Lit l : lits) {
    if (l == prev) continue;
    if (prev >= 0 && l == negate(prev) && var_of(l) == var_of(prev)) return true;  // tautology
    const LBool v = value_lit(l);
    if (v == LBool::True) return true;  // satisfied at root
    if (v == LBool::False) {
      prev = l;
      continue;  // falsified at root: drop literal
    }
    out.push_back(l);
    prev = l;
  }
  if (out.empty()) {
    ok_ = false;
    return false;
  }
  if (out.size() == 1) {
    if (!enqueue(out[0], -1)) {
      ok_ = false;
      return false;
    }
    return ok_ = (propagate() == -1), ok_;
  }
  clauses_.push_back(Clause{std::move(out), false});
  attach(static_cast<int>(clauses_.size()) - 1);
  return true;
}

void Solver::attach(int ci) {
  const auto& c = clauses_[ci].lits;
  watches_[negate(c[0])].push_back(ci);
  watches_[negate(c[1])].push_back(ci);
}

bool Solver::enqueue(Lit l, int reason) {
  const LBool v = value_lit(l);
  if (v != LBool::Undef) return v == LBool::True;
  const int x = var_of(l);
  assigns_[x] = negative(l) ? LBool::False : LBool::True;
  level_[x] = level();
  reason_[x] = reason;
  trail_.push_back(l);
  return true;
}

int Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];  // p is true; clauses watching ~p must move
    auto& ws = watches_[p];
    size_t keep = 0;
    for (size_t i = 0; i < ws.size(); ++i) {
      const int ci = ws[i];
      auto& c = clauses_[ci].lits;
      const Lit false_lit = negate(p);
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (value_lit(c[0]) == LBool::True) {
        ws[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (size_t j = 2; j < c.size(); ++j) {
        if (value_lit(c[j]) != LBool::False) {
          std::swap(c[1], c[j]);
          watches_[negate(c[1])].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      // unit or conflicting
      ws[keep++] = ci;
      if (value_lit(c[0]) == LBool::False) {
        for (size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
        ws.resize(keep);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(keep);
  }
  return -1;
}

void Solver::analyze(int confl, std::vector<Lit>& learnt, int& bt_level) {
  learnt.clear();
  learnt.push_back(0);  // slot for the asserting literal
  int counter = 0;
  Lit p = -1;
  size_t index = trail_.size();

  for (;;) {
    assert(confl >= 0);
    const auto& c = clauses_[confl].lits;
    for (size_t j = (p == -1 ? 0 : 1); j < c.size(); ++j) {
      const Lit q = c[j];
      const int v = var_of(q);
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = 1;
        bump(v);
        if (level_[v] >= level()) {
          ++counter;
        } else {
          learnt.push_back(q);
        }
      }
    }
    // pick next literal to expand from the current level
    for (;;) {
      assert(index > 0);
      p = trail_[--index];
      if (seen_[var_of(p)]) break;
    }
    seen_[var_of(p)] = 0;
    if (--counter == 0) break;
    confl = reason_[var_of(p)];
  }
  learnt[0] = negate(p);

  bt_level = 0;
  if (learnt.size() > 1) {
    size_t max_i = 1;
    for (size_t i = 2; i < learnt.size(); ++i) {
      if (level_[var_of(learnt[i])] > level_[var_of(learnt[max_i])]) max_i = i;
    }
    std::swap(learnt[1], learnt[max_i]);
    bt_level = level_[var_of(learnt[1])];
  }
  for (const Lit l : learnt) seen_[var_of(l)] = 0;
}

void Solver::analyze_final(Lit p) {
  conflict_core_.clear();
  conflict_core_.push_back(p);
  if (level() == 0) return;
  seen_[var_of(p)] = 1;
  for (int i = static_cast<int>(trail_.size()) - 1;
       i >= (trail_lim_.empty() ? 0 : trail_lim_[0]); --i) {
    const int x = var_of(trail_[i]);
    if (!seen_[x]) continue;
    if (reason_[x] == -1) {
      if (level_[x] > 0) conflict_core_.push_back(trail_[i]);
    } else {
      for (const Lit l : clauses_[reason_[x]].lits) {
        if (level_[var_of(l)] > 0) seen_[var_of(l)] = 1;
      }
    }
    seen_[x] = 0;
  }
  seen_[var_of(p)] = 0;
}

void Solver::cancel_until(int lvl) {
  if (level() <= lvl) return;
  const int bound = trail_lim_[lvl];
  for (int i = static_cast<int>(trail_.size()) - 1; i >= bound; --i) {
    const int x = var_of(trail_[i]);
    polarity_[x] = assigns_[x] == LBool::True ? 1 : 0;
    assigns_[x] = LBool::Undef;
    reason_[x] = -1;
    level_[x] = -1;
    if (heap_pos_[x] < 0) heap_insert(x);
  }
  trail_.resize(bound);
  trail_lim_.resize(lvl);
  qhead_ = trail_.size();
}

void Solver::bump(int var) {
  activity_[var] += var_inc_;
  if (activity_[var] > 1e100) rescale();
  if (heap_pos_[var] >= 0) heap_up(heap_pos_[var]);
}

void Solver::rescale() {
  for (auto& a : activity_) a *= 1e-100;
  var_inc_ *= 1e-100;
}

void Solver::heap_insert(int v) {
  if (heap_pos_[v] >= 0) return;
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_pos_[v]);
}

void Solver::heap_up(int i) {
  const int v = heap_[i];
  while (i > 0) {
    const int parent = (i - 1) / 2;
    if (!heap_lt(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = i;
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

void Solver::heap_down(int i) {
  const int v = heap_[i];
  const int n = static_cast<int>(heap_.size());
  for (;;) {
    int child = 2 * i + 1;
    if (child >= n) break;
    if (child + 1 < n && heap_lt(heap_[child + 1], heap_[child])) ++child;
    if (!heap_lt(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = i;
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

int Solver::heap_pop() {
  const int v = heap_[0];
  heap_pos_[v] = -1;
  heap_[0] = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_pos_[heap_[0]] = 0;
    heap_down(0);
  }
  return v;
}

int Solver::pick_branch_var() {
  while (!heap_.empty()) {
    const int v = heap_pop();
    if (assigns_[v] == LBool::Undef) return v;
  }
  return -1;
}

namespace {
// Luby restart sequence.
int64_t luby(int64_t i) {
  int64_t k = 1;
  while ((k << 1) - 1 <= i) k <<= 1;
  while (k > 1) {
    if (i == k - 1) return k / 2;
    i -= k / 2;
    k /= 2;
    while ((k << 1) - 1 <= i) k <<= 1;
  }
  return 1;
}
}  // namespace

Solver::Status Solver::solve(const std::vector<Lit>& assumptions) {
  assert(level() == 0);
  conflict_core_.clear();
  if (!ok_) return Status::Unsat;
  if (propagate() != -1) {
    ok_ = false;
    return Status::Unsat;
  }

  int64_t restart_round = 0;
  int64_t conflicts_until_restart = 64 * luby(restart_round);

  for (;;) {
    const int confl = propagate();
    if (confl != -1) {
      ++conflicts_;
      --conflicts_until_restart;
      if (level() == 0) {
        ok_ = false;
        cancel_until(0);
        return Status::Unsat;
      }
      std::vector<Lit> learnt;
      int bt = 0;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        clauses_.push_back(Clause{learnt, true});
        attach(static_cast<int>(clauses_.size()) - 1);
        enqueue(learnt[0], static_cast<int>(clauses_.size()) - 1);
      }
      decay();
      continue;
    }

    if (conflicts_until_restart <= 0 && level() > static_cast<int>(assumptions.size())) {
      ++restart_round;
      conflicts_until_restart = 64 * luby(restart_round);
      cancel_until(0);
      continue;
    }

    // choose the next decision
    Lit next = -1;
    while (level() < static_cast<int>(assumptions.size())) {
      const Lit p = assumptions[level()];
      if (value_lit(p) == LBool::True) {
        new_decision_level();  // empty level keeps assumption indexing aligned
      } else if (value_lit(p) == LBool::False) {
        analyze_final(p);
        cancel_until(0);
        return Status::Unsat;
      } else {
        next = p;
        break;
      }
    }
    if (next == -1) {
      const int v = pick_branch_var();
      if (v == -1) {
        model_.assign(assigns_.begin(), assigns_.end());
        verify_model();
        cancel_until(0);
        return Status::Sat;
      }
      next = mk_lit(v, polarity_[v] == 0);
    }
    new_decision_level();
    enqueue(next, -1);
  }
}

void Solver::verify_model() const {
  for (const auto& c : clauses_) {
    if (c.learned) continue;
    bool sat = false;
    for (const Lit l : c.lits) {
      if ((model_[var_of(l)] == LBool::True) != negative(l)) {
        sat = true;
        break;
      }
    }
    if (!sat) throw std::logic_error("internal error: model does not satisfy input clauses");
  }
}

bool Solver::push(Lit l) {
  assert(qhead_ == trail_.size());
  new_decision_level();
  const LBool v = value_lit(l);
  if (v == LBool::True) return true;
  if (v == LBool::False) return false;
  enqueue(l, -1);
  return propagate() == -1;
}

void Solver::pop_to(int lvl) { cancel_until(lvl); }

bool Solver::propagate_now() {
  if (!ok_) return false;
  if (propagate() != -1) {
    if (level() == 0) ok_ = false;
    return false;
  }
  return true;
}

}  // namespace ctfrec::sat
