#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace ctfrec::ground {

// Ground atom key in index space: predicate index plus constant indices.
struct AtomKey {
  int pred = -1;
  std::vector<int> args;
  auto operator<=>(const AtomKey&) const = default;
};

// Everything known before inference:
//  - truth of observed-predicate atoms (closed world: unlisted means false);
//  - values of real-valued feature functions, tabulated per argument tuple;
//  - optional per-predicate domains for hidden atoms. A hidden predicate with
//    a domain only has variables for the listed tuples; any other grounding
//    of it is fixed false. Used to confine GPS snapping to nearby cells and
//    interaction atoms to feasible meetings.
class Evidence {
 public:
  void set_observed(AtomKey k, bool value) { observed_[std::move(k)] = value; }
  bool observed_true(const AtomKey& k) const {
    auto it = observed_.find(k);
    return it != observed_.end() && it->second;
  }
  // Distinguishes "observed false" from "not observed"; the latter matters
  // for hidden predicates, where an explicit observation pins the atom.
  std::optional<bool> observed(const AtomKey& k) const {
    auto it = observed_.find(k);
    if (it == observed_.end()) return std::nullopt;
    return it->second;
  }

  void set_func(int func, std::vector<int> args, double value) {
    funcs_[{func, std::move(args)}] = value;
  }
  std::optional<double> func_value(int func, const std::vector<int>& args) const {
    auto it = funcs_.find({func, args});
    if (it == funcs_.end()) return std::nullopt;
    return it->second;
  }

  void allow(int pred, std::vector<int> args) { allowed_[pred].insert(std::move(args)); }
  bool restricted(int pred) const { return allowed_.count(pred) != 0; }
  bool hidden_allowed(const AtomKey& k) const {
    auto it = allowed_.find(k.pred);
    return it == allowed_.end() || it->second.count(k.args) != 0;
  }
  // Empty set when the predicate is unrestricted.
  const std::set<std::vector<int>>& allowed_tuples(int pred) const {
    static const std::set<std::vector<int>> kEmpty;
    auto it = allowed_.find(pred);
    return it == allowed_.end() ? kEmpty : it->second;
  }

  const std::map<AtomKey, bool>& observed_atoms() const { return observed_; }
  const std::map<std::pair<int, std::vector<int>>, double>& func_tables() const {
    return funcs_;
  }

 private:
  std::map<AtomKey, bool> observed_;
  std::map<std::pair<int, std::vector<int>>, double> funcs_;
  std::map<int, std::set<std::vector<int>>> allowed_;
};

}  // namespace ctfrec::ground
