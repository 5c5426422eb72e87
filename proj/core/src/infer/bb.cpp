#include "bb.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ctfrec/sat/clausify.hpp"

namespace ctfrec::infer {

using ground::Prop;

namespace {

constexpr double kPrune = 1e-12;

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

bool plain_exactly_one(const Prop& p) {
  if (p.k != Prop::K::ExactlyOne) return false;
  std::set<int> seen;
  for (const auto& k : p.kids) {
    if (k.k != Prop::K::Var) return false;
    if (!seen.insert(k.var).second) return false;
  }
  return true;
}

}  // namespace

BlockSearch::BlockSearch(const ground::GroundNet& net, const std::vector<int>& active)
    : net_(&net) {
  const int n = net.atom_count();
  block_of_atom_.assign(n, -1);
  scratch_.assign(n, 0);

  build_blocks(active);
  build_components();

  // Hard constraints as clauses (pruning) plus direct re-evaluation watches
  // (soundness); soft features go to tables or optimistic watches.
  for (int v = 0; v < n; ++v) solver_.new_var();
  sat::PropEncoder enc(solver_);
  block_watches_.assign(blocks_.size(), {});
  comp_watch_opt_.assign(comp_blocks_.size(), 0.0);
  for (size_t i = 0; i < feat_blocks_.size(); ++i) {
    const auto& f = net.features[active_[i]];
    const auto& fb = feat_blocks_[i];
    const int comp = blocks_[fb[0]].comp;
    if (f.hard) {
      enc.assert_true(f.prop);
      hard_feats_.push_back({&f.prop, 0.0, comp});
    } else {
      soft_feats_.push_back({&f.prop, net.feature_weight(f), comp});
    }
    const bool local =
        !f.hard && (fb.size() == 1 ||
                    (fb.size() == 2 && blocks_[fb[0]].comp == blocks_[fb[1]].comp &&
                     std::abs(blocks_[fb[0]].pos - blocks_[fb[1]].pos) == 1));
    if (local) continue;
    Watch w;
    w.prop = &f.prop;
    w.hard = f.hard;
    w.w = f.hard ? 0.0 : net.feature_weight(f);
    w.blocks = static_cast<int>(fb.size());
    const int wi = static_cast<int>(watches_.size());
    watches_.push_back(w);
    for (int b : fb) block_watches_[b].push_back(wi);
    if (!f.hard) comp_watch_opt_[comp] += std::max(w.w, 0.0);
  }
  root_ok_ = solver_.okay();

  build_tables();

  watch_rem_.assign(watches_.size(), 0);
  chosen_.assign(blocks_.size(), -1);
  best_scratch_.assign(n, 0);
}

void BlockSearch::build_blocks(const std::vector<int>& active) {
  active_ = active;
  feat_blocks_.resize(active.size());

  // Pick-one blocks from hard exactly-one constraints over fresh atoms.
  std::vector<std::vector<int>> feat_vars(active.size());
  std::set<int> touched;
  for (size_t i = 0; i < active.size(); ++i) {
    std::set<int> vars;
    ground::collect_vars(net_->features[active[i]].prop, vars);
    feat_vars[i].assign(vars.begin(), vars.end());
    touched.insert(vars.begin(), vars.end());
  }
  for (size_t i = 0; i < active.size(); ++i) {
    const auto& f = net_->features[active[i]];
    if (!f.hard || !plain_exactly_one(f.prop)) continue;
    bool fresh = true;
    for (int v : feat_vars[i])
      if (block_of_atom_[v] != -1) fresh = false;
    if (!fresh) continue;
    Block b;
    b.atoms = feat_vars[i];  // already ascending
    b.exclusive = true;
    const int bi = static_cast<int>(blocks_.size());
    for (int v : b.atoms) block_of_atom_[v] = bi;
    blocks_.push_back(std::move(b));
  }
  for (int v : touched) {
    if (block_of_atom_[v] != -1) continue;
    Block b;
    b.atoms = {v};
    b.exclusive = false;
    block_of_atom_[v] = static_cast<int>(blocks_.size());
    blocks_.push_back(std::move(b));
  }
  for (size_t i = 0; i < active.size(); ++i) {
    std::set<int> bs;
    for (int v : feat_vars[i]) bs.insert(block_of_atom_[v]);
    feat_blocks_[i].assign(bs.begin(), bs.end());
  }
}

void BlockSearch::build_components() {
  const int nb = static_cast<int>(blocks_.size());
  std::vector<int> parent(nb);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::set<int>> adj(nb);
  for (const auto& fb : feat_blocks_) {
    for (size_t i = 1; i < fb.size(); ++i) {
      parent[find_root(parent, fb[i])] = find_root(parent, fb[0]);
      for (size_t j = 0; j < i; ++j) {
        adj[fb[i]].insert(fb[j]);
        adj[fb[j]].insert(fb[i]);
      }
    }
  }

  // Components ordered by smallest atom id for stable, canonical traversal.
  std::vector<std::pair<int, int>> rep_min;  // (min atom, root)
  std::vector<int> root_of(nb);
  for (int b = 0; b < nb; ++b) root_of[b] = find_root(parent, b);
  std::set<int> roots(root_of.begin(), root_of.end());
  for (int r : roots) {
    int min_atom = net_->atom_count();
    for (int b = 0; b < nb; ++b)
      if (root_of[b] == r) min_atom = std::min(min_atom, blocks_[b].atoms[0]);
    rep_min.push_back({min_atom, r});
  }
  std::sort(rep_min.begin(), rep_min.end());

  comp_blocks_.resize(rep_min.size());
  comp_atoms_.resize(rep_min.size());
  for (size_t c = 0; c < rep_min.size(); ++c) {
    const int r = rep_min[c].second;
    std::vector<int> members;
    for (int b = 0; b < nb; ++b)
      if (root_of[b] == r) members.push_back(b);
    // Breadth-first branch order from the lowest-degree block: chains get
    // walked end to end, which is what makes the suffix bound exact for them.
    int start = members[0];
    for (int b : members) {
      if (adj[b].size() < adj[start].size() ||
          (adj[b].size() == adj[start].size() && b < start))
        start = b;
    }
    std::vector<int> order;
    std::vector<char> seen(nb, 0);
    std::vector<int> queue{start};
    seen[start] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      const int b = queue[qi];
      order.push_back(b);
      for (int nb2 : adj[b]) {
        if (!seen[nb2]) {
          seen[nb2] = 1;
          queue.push_back(nb2);
        }
      }
    }
    assert(order.size() == members.size());
    for (size_t k = 0; k < order.size(); ++k) {
      blocks_[order[k]].comp = static_cast<int>(c);
      blocks_[order[k]].pos = static_cast<int>(k);
    }
    comp_blocks_[c] = std::move(order);
    for (int b : comp_blocks_[c])
      for (int a : blocks_[b].atoms) comp_atoms_[c].push_back(a);
    std::sort(comp_atoms_[c].begin(), comp_atoms_[c].end());
  }
}

void BlockSearch::build_tables() {
  const size_t nc = comp_blocks_.size();
  unary_.resize(nc);
  pair_.resize(nc);
  suffix_.resize(nc);
  for (size_t c = 0; c < nc; ++c) {
    const auto& order = comp_blocks_[c];
    const size_t m = order.size();
    unary_[c].resize(m);
    suffix_[c].resize(m);
    for (size_t k = 0; k < m; ++k)
      unary_[c][k].assign(choice_count(blocks_[order[k]]), 0.0);
    pair_[c].resize(m > 0 ? m - 1 : 0);
    for (size_t k = 0; k + 1 < m; ++k) {
      pair_[c][k].assign(choice_count(blocks_[order[k]]),
                         std::vector<double>(choice_count(blocks_[order[k + 1]]), 0.0));
    }
  }

  for (size_t i = 0; i < feat_blocks_.size(); ++i) {
    const auto& f = net_->features[active_[i]];
    if (f.hard) continue;
    const auto& fb = feat_blocks_[i];
    const double w = net_->feature_weight(f);
    if (fb.size() == 1) {
      const Block& b = blocks_[fb[0]];
      auto& row = unary_[b.comp][b.pos];
      for (int v = 0; v < choice_count(b); ++v) {
        apply_choice(b, v);
        if (ground::eval_prop(f.prop, scratch_)) row[v] += w;
        undo_choice(b, v);
      }
    } else if (fb.size() == 2 && std::abs(blocks_[fb[0]].pos - blocks_[fb[1]].pos) == 1) {
      const Block& b0 = blocks_[fb[0]];
      const Block& b1 = blocks_[fb[1]];
      const Block& lo = b0.pos < b1.pos ? b0 : b1;
      const Block& hi = b0.pos < b1.pos ? b1 : b0;
      auto& mat = pair_[lo.comp][lo.pos];
      for (int v = 0; v < choice_count(lo); ++v) {
        apply_choice(lo, v);
        for (int u = 0; u < choice_count(hi); ++u) {
          apply_choice(hi, u);
          if (ground::eval_prop(f.prop, scratch_)) mat[v][u] += w;
          undo_choice(hi, u);
        }
        undo_choice(lo, v);
      }
    }
  }

  for (size_t c = 0; c < nc; ++c) {
    const auto& order = comp_blocks_[c];
    const size_t m = order.size();
    for (size_t rk = 0; rk < m; ++rk) {
      const size_t k = m - 1 - rk;
      auto& s = suffix_[c][k];
      s = unary_[c][k];
      if (k + 1 < m) {
        for (size_t v = 0; v < s.size(); ++v) {
          double bestnext = -1e300;
          const auto& row = pair_[c][k][v];
          for (size_t u = 0; u < row.size(); ++u)
            bestnext = std::max(bestnext, row[u] + suffix_[c][k + 1][u]);
          s[v] += bestnext;
        }
      }
    }
  }
}

void BlockSearch::apply_choice(const Block& b, int v) {
  if (b.exclusive)
    scratch_[b.atoms[v]] = 1;
  else
    scratch_[b.atoms[0]] = static_cast<char>(v);
}

void BlockSearch::undo_choice(const Block& b, int v) {
  if (b.exclusive)
    scratch_[b.atoms[v]] = 0;
  else
    scratch_[b.atoms[0]] = 0;
}

void BlockSearch::search(int comp, int k, double acc) {
  ++nodes_;
  const auto& order = comp_blocks_[comp];
  if (k == static_cast<int>(order.size())) {
    if (!has_best_ || acc > best_ + kPrune) {
      has_best_ = true;
      best_ = acc;
      best_scratch_ = scratch_;
    }
    return;
  }
  const int b = order[k];
  const Block& blk = blocks_[b];
  const std::vector<double>* prev_row = nullptr;
  if (k > 0) prev_row = &pair_[comp][k - 1][chosen_[order[k - 1]]];

  // Best-first over choices: local gain plus exact local suffix bound.
  std::vector<std::pair<double, int>> cand;
  for (int v = 0; v < choice_count(blk); ++v) {
    if (solver_.value_lit(choice_lit(blk, v)) == sat::LBool::False) continue;
    cand.push_back({(prev_row ? (*prev_row)[v] : 0.0) + suffix_[comp][k][v], v});
  }
  std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b2) {
    return a.first > b2.first || (a.first == b2.first && a.second < b2.second);
  });

  for (const auto& [key, v] : cand) {
    if (has_best_ && acc + key + nl_rem_ <= best_ + kPrune) break;
    const int lvl = solver_.level();
    if (!solver_.push(choice_lit(blk, v))) {
      solver_.pop_to(lvl);
      continue;
    }
    apply_choice(blk, v);
    chosen_[b] = v;
    double delta = 0.0;
    bool dead = false;
    std::vector<int> decided;
    for (int wi : block_watches_[b]) {
      if (--watch_rem_[wi] == 0) {
        decided.push_back(wi);
        const Watch& w = watches_[wi];
        const bool sat_now = ground::eval_prop(*w.prop, scratch_);
        if (w.hard) {
          if (!sat_now) dead = true;
        } else {
          if (sat_now) delta += w.w;
          nl_rem_ -= std::max(w.w, 0.0);
        }
      }
    }
    if (!dead)
      search(comp, k + 1, acc + (prev_row ? (*prev_row)[v] : 0.0) + unary_[comp][k][v] + delta);
    for (int wi : decided)
      if (!watches_[wi].hard) nl_rem_ += std::max(watches_[wi].w, 0.0);
    for (int wi : block_watches_[b]) ++watch_rem_[wi];
    chosen_[b] = -1;
    undo_choice(blk, v);
    solver_.pop_to(lvl);
  }
}

std::optional<BlockSearch::Result> BlockSearch::solve(const std::vector<int8_t>& pins,
                                                      int component) {
  if (!root_ok_) return std::nullopt;
  const int n = net_->atom_count();
  assert(static_cast<int>(pins.size()) == n);
  nodes_ = 0;

  const int base = solver_.level();
  for (int a = 0; a < n; ++a) {
    if (pins[a] < 0 || block_of_atom_[a] == -1) continue;
    const sat::Lit l = sat::mk_lit(a, pins[a] == 0);
    if (solver_.value_lit(l) == sat::LBool::True) continue;
    if (!solver_.push(l)) {
      solver_.pop_to(base);
      return std::nullopt;
    }
  }

  Result res;
  res.assignment.assign(n, 0);
  for (int a = 0; a < n; ++a)
    if (pins[a] == 1) res.assignment[a] = 1;

  for (int c = 0; c < component_count(); ++c) {
    if (component != -1 && c != component) continue;
    // Reset watch counters for this component's watches.
    for (size_t wi = 0; wi < watches_.size(); ++wi) watch_rem_[wi] = watches_[wi].blocks;
    nl_rem_ = comp_watch_opt_[c];
    has_best_ = false;
    best_ = 0.0;
    search(c, 0, 0.0);
    if (!has_best_) {
      solver_.pop_to(base);
      return std::nullopt;
    }
    for (int a : comp_atoms_[c]) res.assignment[a] = best_scratch_[a];
  }
  solver_.pop_to(base);

  // Anchor the reported value in a direct evaluation; the incremental sums
  // only steer the search.
  double value = 0.0;
  for (const auto& sf : soft_feats_) {
    if (component != -1 && sf.comp != component) continue;
    if (ground::eval_prop(*sf.prop, res.assignment)) value += sf.w;
  }
  for (const auto& hf : hard_feats_) {
    if (component != -1 && hf.comp != component) continue;
    if (!ground::eval_prop(*hf.prop, res.assignment))
      throw std::logic_error("internal error: block search violated a hard feature");
  }
  res.value = value;
  res.nodes = nodes_;
  return res;
}

}  // namespace ctfrec::infer
