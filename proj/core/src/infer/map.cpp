#include "ctfrec/infer/map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bb.hpp"
#include "ctfrec/sat/clausify.hpp"
#include "ctfrec/sat/solver.hpp"
#include "ctfrec/util/text.hpp"

namespace ctfrec::infer {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Features the candidate state gets wrong: violated hard features, and soft
// features whose actual truth differs from the optimistic guess their weight
// sign implies.
std::vector<int> separate(const ground::GroundNet& net, const std::vector<char>& x,
                          const std::vector<char>& in_active) {
  std::vector<int> added;
  for (size_t i = 0; i < net.features.size(); ++i) {
    if (in_active[i]) continue;
    const auto& f = net.features[i];
    const bool sat = ground::eval_prop(f.prop, x);
    if (f.hard ? !sat : sat != (net.feature_weight(f) > 0.0)) {
      added.push_back(static_cast<int>(i));
    }
  }
  return added;
}

// Lexicographically smallest optimum: walk atoms in id order, keep an atom
// false whenever some completion still attains the component's optimal value,
// reusing each solve's witness to skip the atoms it already settles.
std::vector<char> canonicalize(BlockSearch& bb, int n, double tie_eps, int64_t& nodes) {
  std::vector<int8_t> pins(n, -1);
  std::vector<char> witness(n, 0);
  for (int c = 0; c < bb.component_count(); ++c) {
    auto base = bb.solve(pins, c);
    if (!base) throw std::logic_error("internal error: canonicalization lost feasibility");
    nodes += base->nodes;
    const double vc = base->value;
    for (int a : bb.component_atoms(c)) witness[a] = base->assignment[a];
    for (int a : bb.component_atoms(c)) {
      if (witness[a] == 0) {
        pins[a] = 0;
        continue;
      }
      pins[a] = 0;
      auto r = bb.solve(pins, c);
      if (r) nodes += r->nodes;
      if (r && r->value >= vc - tie_eps) {
        for (int a2 : bb.component_atoms(c)) witness[a2] = r->assignment[a2];
      } else {
        pins[a] = 1;
      }
    }
  }
  std::vector<char> out(n, 0);
  for (int a = 0; a < n; ++a) out[a] = pins[a] == 1 ? 1 : 0;
  return out;
}

}  // namespace

MapResult solve_map(const ground::GroundNet& net, const MapOptions& opts) {
  if (net.infeasible) {
    throw InfeasibleError(
        "hard constraints already violated by the evidence: " +
            util::join(net.infeasible_notes, ", "),
        net.infeasible_notes);
  }
  const int n = net.atom_count();
  const size_t nf = net.features.size();

  double constant = 0.0;
  for (size_t i = 0; i < net.const_mult.size(); ++i)
    constant += net.weights[i] * net.const_mult[i];
  double inactive_opt = 0.0;
  for (const auto& f : net.features)
    if (!f.hard) inactive_opt += std::max(net.feature_weight(f), 0.0);

  MapResult res;
  std::vector<char> in_active(nf, 0);
  std::vector<int> active;
  std::vector<char> x(n, 0);

  for (;;) {
    BlockSearch bb(net, active);
    auto sol = bb.solve();
    if (!sol) {
      auto core = hard_conflict(net);
      throw InfeasibleError("hard constraints unsatisfiable: " + util::join(core, ", "),
                            core);
    }
    res.nodes += sol->nodes;
    res.upper_bounds.push_back(sol->value + inactive_opt + constant);
    x = sol->assignment;

    auto added = separate(net, x, in_active);
    if (added.empty() && opts.canonical) {
      auto xc = canonicalize(bb, n, opts.tie_eps, res.nodes);
      if (xc != x) {
        x = std::move(xc);
        added = separate(net, x, in_active);
      }
    }
    if (added.empty()) break;
    for (int fi : added) {
      in_active[fi] = 1;
      active.push_back(fi);
      const auto& f = net.features[fi];
      if (!f.hard) inactive_opt -= std::max(net.feature_weight(f), 0.0);
    }
  }

  res.iterations = static_cast<int>(res.upper_bounds.size());
  res.active_features = static_cast<int>(active.size());
  res.assignment = std::move(x);
  auto sc = net.score(res.assignment);
  if (!sc) throw std::logic_error("internal error: converged state violates hard features");
  res.score = *sc;
  return res;
}

std::vector<std::string> hard_conflict(const ground::GroundNet& net) {
  if (net.infeasible) return net.infeasible_notes;

  sat::Solver s;
  for (int v = 0; v < net.atom_count(); ++v) s.new_var();
  sat::PropEncoder enc(s);
  std::vector<std::pair<sat::Lit, int>> selectors;  // assumption, feature idx
  for (size_t i = 0; i < net.features.size(); ++i) {
    const auto& f = net.features[i];
    if (!f.hard) continue;
    const sat::Lit body = enc.lit_for(f.prop, +1);
    const int sv = s.new_var();
    s.add_clause({sat::mk_lit(sv, true), body});
    selectors.push_back({sat::mk_lit(sv, false), static_cast<int>(i)});
  }
  std::vector<sat::Lit> assumptions;
  assumptions.reserve(selectors.size());
  for (const auto& [l, fi] : selectors) assumptions.push_back(l);
  if (s.solve(assumptions) == sat::Solver::Status::Sat) return {};

  std::vector<int> feats;
  for (sat::Lit l : s.conflict_core()) {
    for (const auto& [sel, fi] : selectors)
      if (sel == l) feats.push_back(fi);
  }
  std::sort(feats.begin(), feats.end());
  std::vector<std::string> labels;
  labels.reserve(feats.size());
  for (int fi : feats) labels.push_back(net.feature_name(net.features[fi]));
  return labels;
}

double log_partition(const ground::GroundNet& net, int max_atoms) {
  const int n = net.atom_count();
  if (n > max_atoms) {
    throw std::invalid_argument("log_partition: " + std::to_string(n) +
                                " hidden atoms exceed the enumeration cap of " +
                                std::to_string(max_atoms));
  }
  double lse = kNegInf;
  std::vector<char> x(n, 0);
  const uint64_t total = uint64_t{1} << n;
  for (uint64_t bits = 0; bits < total; ++bits) {
    for (int i = 0; i < n; ++i) x[i] = static_cast<char>((bits >> i) & 1);
    const auto sc = net.score(x);
    if (!sc) continue;
    if (lse == kNegInf) {
      lse = *sc;
    } else if (*sc <= lse) {
      lse += std::log1p(std::exp(*sc - lse));
    } else {
      lse = *sc + std::log1p(std::exp(lse - *sc));
    }
  }
  return lse;
}

double world_log_probability(const ground::GroundNet& net, const std::vector<char>& x,
                             double log_z) {
  const auto sc = net.score(x);
  if (!sc || log_z == kNegInf) return kNegInf;
  return *sc - log_z;
}

}  // namespace ctfrec::infer
