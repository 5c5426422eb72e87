#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "ctfrec/ground/ground.hpp"
#include "ctfrec/infer/map.hpp"
#include "ctfrec/logic/parser.hpp"
#include "ctfrec/util/rng.hpp"
#include "doctest.h"

using namespace ctfrec;
using ground::AtomKey;
using ground::Evidence;
using ground::GroundNet;
using ground::Universe;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Owns everything a ground net points into.
struct NetCase {
  logic::Theory th;
  Universe uni;
  Evidence ev;
  GroundNet net;
};

std::unique_ptr<NetCase> make_case(const std::string& src, int nu,
                                   const std::function<void(NetCase&)>& prep = {}) {
  auto c = std::make_unique<NetCase>();
  c->th = logic::parse_theory(src);
  for (int i = 0; i < nu; ++i) c->uni.add("u", "U" + std::to_string(i));
  if (prep) prep(*c);
  c->net = ground::ground_theory(c->th, c->uni, c->ev);
  return c;
}

// Exhaustive reference: exact optimum and the lexicographically smallest
// state attaining it (within 1e-9).
struct BruteResult {
  bool feasible = false;
  double best = -kInf;
  std::vector<char> canonical;
};

BruteResult brute_force_map(const GroundNet& net) {
  BruteResult r;
  const int n = net.atom_count();
  REQUIRE(n <= 20);
  std::vector<char> x(n, 0);
  for (uint32_t bits = 0; bits < (1u << n); ++bits) {
    for (int i = 0; i < n; ++i) x[i] = static_cast<char>((bits >> i) & 1);
    auto sc = net.score(x);
    if (!sc) continue;
    if (!r.feasible || *sc > r.best) {
      r.feasible = true;
      r.best = *sc;
    }
  }
  if (!r.feasible) return r;
  for (uint32_t bits = 0; bits < (1u << n); ++bits) {
    for (int i = 0; i < n; ++i) x[i] = static_cast<char>((bits >> i) & 1);
    auto sc = net.score(x);
    if (!sc || *sc < r.best - 1e-9) continue;
    if (r.canonical.empty() || x < r.canonical) r.canonical = x;
  }
  return r;
}

// Weights on a 1/8 grid keep distinct sums far apart and equal sums exactly
// equal, so tie handling is testable without float ambiguity.
double grid_weight(util::Rng& rng) {
  double w = 0.125 * static_cast<double>(rng.uniform_int(1, 16));
  return rng.uniform_int(0, 1) == 0 ? -w : w;
}

std::unique_ptr<NetCase> random_net(util::Rng& rng) {
  const int nu = static_cast<int>(rng.uniform_int(2, 3));
  const std::vector<std::string> soft_bodies = {
      "a(x) | !b(x)",
      "a(x) & b(y)",
      "c(x,y) => a(y)",
      "exists y: c(x,y)",
      "a(x) xor b(x)",
      "!c(x,y) | !c(y,x)",
  };
  const std::vector<std::string> hard_bodies = {
      "exists1 y: c(x,y)",
      "!c(x,x)",
      "a(x) => b(x)",
      "a(x) | b(x) | (exists y: c(x,y))",
  };
  std::string src =
      "sort u;\n"
      "pred a(u) hidden;\n"
      "pred b(u) hidden;\n"
      "pred c(u,u) hidden;\n"
      "func d(u,u);\n";
  const int nf = static_cast<int>(rng.uniform_int(3, 7));
  for (int i = 0; i < nf; ++i) {
    const std::string label = "f" + std::to_string(i);
    if (rng.uniform_int(0, 3) == 0) {
      src += label + ": hard " +
             hard_bodies[rng.uniform_int(0, static_cast<int64_t>(hard_bodies.size()) - 1)] +
             ";\n";
    } else if (rng.uniform_int(0, 4) == 0) {
      src += "weight w" + std::to_string(i) + " = " + std::to_string(grid_weight(rng)) +
             ";\n" + label + ": soft w" + std::to_string(i) +
             " c(x,y) & b(x) * d(x,y);\n";
    } else {
      src += "weight w" + std::to_string(i) + " = " + std::to_string(grid_weight(rng)) +
             ";\n" + label + ": soft w" + std::to_string(i) + " " +
             soft_bodies[rng.uniform_int(0, static_cast<int64_t>(soft_bodies.size()) - 1)] +
             ";\n";
    }
  }
  // Occasionally make the hard part unsatisfiable outright so the error path
  // stays exercised.
  if (rng.uniform_int(0, 7) == 0) src += "g1: hard a(x);\ng2: hard !a(x);\n";
  return make_case(src, nu, [&](NetCase& c) {
    for (int i = 0; i < nu; ++i) {
      // Sometimes observe b atoms (fold them away).
      if (rng.uniform_int(0, 4) == 0)
        c.ev.set_observed(AtomKey{1, {i}}, rng.uniform_int(0, 1) == 1);
      for (int j = 0; j < nu; ++j)
        c.ev.set_func(0, {i, j}, 0.125 * static_cast<double>(rng.uniform_int(-12, 12)));
    }
    // Sometimes restrict c to a sparse relation.
    if (rng.uniform_int(0, 2) == 0) {
      for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nu; ++j)
          if (rng.uniform_int(0, 2) != 0) c.ev.allow(2, {i, j});
    }
  });
}

}  // namespace

TEST_CASE("map inference matches exhaustive search on random nets") {
  util::Rng rng(611953);
  int feasible_count = 0, infeasible_count = 0, with_hard = 0;
  for (int round = 0; round < 80; ++round) {
    auto c = random_net(rng);
    if (c->net.infeasible) continue;  // grounding-time contradiction: separate test
    auto ref = brute_force_map(c->net);
    bool any_hard = false;
    for (const auto& f : c->net.features) any_hard = any_hard || f.hard;
    with_hard += any_hard ? 1 : 0;
    if (!ref.feasible) {
      ++infeasible_count;
      REQUIRE_THROWS_AS((void)infer::solve_map(c->net), infer::InfeasibleError);
      continue;
    }
    ++feasible_count;
    auto res = infer::solve_map(c->net);
    REQUIRE(res.score == doctest::Approx(ref.best).epsilon(1e-9));
    REQUIRE(res.assignment == ref.canonical);
    REQUIRE(c->net.hard_sat(res.assignment));
  }
  CHECK(feasible_count > 40);
  CHECK(infeasible_count > 2);
  CHECK(with_hard > 20);
}

TEST_CASE("cutting-plane upper bounds decrease onto the final score") {
  util::Rng rng(7887);
  int checked = 0;
  for (int round = 0; round < 40; ++round) {
    auto c = random_net(rng);
    if (c->net.infeasible) continue;
    infer::MapResult res;
    try {
      res = infer::solve_map(c->net);
    } catch (const infer::InfeasibleError&) {
      continue;
    }
    ++checked;
    REQUIRE(!res.upper_bounds.empty());
    for (size_t i = 1; i < res.upper_bounds.size(); ++i)
      REQUIRE(res.upper_bounds[i] <= res.upper_bounds[i - 1] + 1e-9);
    REQUIRE(res.upper_bounds.back() == doctest::Approx(res.score).epsilon(1e-6));
    REQUIRE(res.iterations == static_cast<int>(res.upper_bounds.size()));
  }
  CHECK(checked > 25);
}

TEST_CASE("ties resolve to the lexicographically smallest optimum") {
  // A pick-one constraint with no soft preference: the canonical state puts
  // the true atom as late as possible.
  auto c = make_case(
      "sort u;\n"
      "pred h(u) hidden;\n"
      "e: hard exists1 x: h(x);\n",
      3);
  auto res = infer::solve_map(c->net);
  REQUIRE(res.assignment == std::vector<char>{0, 0, 1});
  REQUIRE(res.score == doctest::Approx(0.0));

  // No features at all: everything false.
  auto c2 = make_case(
      "sort u;\n"
      "pred h(u) hidden;\n",
      3);
  auto res2 = infer::solve_map(c2->net);
  REQUIRE(res2.assignment == std::vector<char>{0, 0, 0});

  // Two equal-weight rivals disagreeing on two atoms: both states score the
  // same; canonical keeps atom 0 false.
  auto c3 = make_case(
      "sort u;\n"
      "pred h(u) hidden;\n"
      "w: hard h(U0) xor h(U1);\n",
      2);
  auto res3 = infer::solve_map(c3->net);
  REQUIRE(res3.assignment == std::vector<char>{0, 1});
}

TEST_CASE("inference is deterministic") {
  util::Rng rng(31337);
  for (int round = 0; round < 10; ++round) {
    auto c = random_net(rng);
    if (c->net.infeasible) continue;
    try {
      auto r1 = infer::solve_map(c->net);
      auto r2 = infer::solve_map(c->net);
      REQUIRE(r1.assignment == r2.assignment);
      REQUIRE(r1.score == r2.score);
      REQUIRE(r1.iterations == r2.iterations);
      REQUIRE(r1.upper_bounds == r2.upper_bounds);
    } catch (const infer::InfeasibleError&) {
    }
  }
}

TEST_CASE("chain-structured nets solve exactly and cheaply") {
  // T pick-one blocks with unary and consecutive pairwise scores: the classic
  // dynamic-programming shape. Reference by Viterbi.
  const int T = 40, K = 5;
  std::string src =
      "sort time;\n"
      "sort cand;\n"
      "pred pick(time,cand) hidden;\n"
      "func un(time,cand);\n"
      "func pr(time,cand,cand);\n"
      "e: hard exists1 c: pick(t,c);\n"
      "u: soft 1 pick(t,c) * un(t,c);\n"
      "p: soft 1 pick(t,c1) & pick(t+1,c2) * pr(t,c1,c2);\n";
  auto c = std::make_unique<NetCase>();
  c->th = logic::parse_theory(src);
  for (int t = 0; t < T; ++t) c->uni.add("time", "t" + std::to_string(t));
  for (int k = 0; k < K; ++k) c->uni.add("cand", "c" + std::to_string(k));
  util::Rng rng(24601);
  std::vector<std::vector<double>> un(T, std::vector<double>(K));
  std::vector<std::vector<std::vector<double>>> pr(
      T, std::vector<std::vector<double>>(K, std::vector<double>(K)));
  for (int t = 0; t < T; ++t)
    for (int k = 0; k < K; ++k) {
      un[t][k] = 0.125 * static_cast<double>(rng.uniform_int(-16, 16));
      c->ev.set_func(0, {t, k}, un[t][k]);
      for (int k2 = 0; k2 < K; ++k2) {
        pr[t][k][k2] = 0.125 * static_cast<double>(rng.uniform_int(-16, 16));
        c->ev.set_func(1, {t, k, k2}, pr[t][k][k2]);
      }
    }
  c->net = ground::ground_theory(c->th, c->uni, c->ev);
  REQUIRE(c->net.atom_count() == T * K);

  // Viterbi reference.
  std::vector<std::vector<double>> dp(T, std::vector<double>(K));
  dp[0] = un[0];
  for (int t = 1; t < T; ++t)
    for (int k = 0; k < K; ++k) {
      double best = -kInf;
      for (int k0 = 0; k0 < K; ++k0) best = std::max(best, dp[t - 1][k0] + pr[t - 1][k0][k]);
      dp[t][k] = un[t][k] + best;
    }
  double ref = -kInf;
  for (int k = 0; k < K; ++k) ref = std::max(ref, dp[T - 1][k]);

  auto res = infer::solve_map(c->net);
  REQUIRE(res.score == doctest::Approx(ref).epsilon(1e-9));
  // Exactly one pick per step.
  for (int t = 0; t < T; ++t) {
    int cnt = 0;
    for (int k = 0; k < K; ++k)
      cnt += res.assignment[c->net.atom_id(AtomKey{0, {t, k}})];
    REQUIRE(cnt == 1);
  }
  // The suffix bound must make this near-linear, not exponential.
  CHECK(res.nodes < 200000);
}

TEST_CASE("jointly unsatisfiable hard features are named") {
  auto c = make_case(
      "sort u;\n"
      "pred a(u) hidden;\n"
      "pred b(u) hidden;\n"
      "f1: hard a(x) => b(x);\n"
      "f2: hard a(x) | b(x);\n"
      "f3: hard !b(x);\n",
      1);
  REQUIRE(!c->net.infeasible);
  auto core = infer::hard_conflict(c->net);
  REQUIRE(!core.empty());
  for (const auto& label : core) {
    bool known = label.rfind("f1", 0) == 0 || label.rfind("f2", 0) == 0 ||
                 label.rfind("f3", 0) == 0;
    REQUIRE(known);
  }
  try {
    (void)infer::solve_map(c->net);
    FAIL("expected InfeasibleError");
  } catch (const infer::InfeasibleError& e) {
    REQUIRE(!e.violated().empty());
    REQUIRE(std::string(e.what()).find("unsatisfiable") != std::string::npos);
  }

  // Satisfiable nets report an empty conflict.
  auto ok = make_case(
      "sort u;\n"
      "pred a(u) hidden;\n"
      "f1: hard a(x);\n",
      2);
  REQUIRE(infer::hard_conflict(ok->net).empty());
}

TEST_CASE("contradictions found during grounding surface immediately") {
  // Folding the observation b(0)=true makes the x=0 grounding constant-false,
  // which the grounder flags without any search.
  auto c = make_case(
      "sort u;\n"
      "pred b(u) hidden;\n"
      "bad: hard b(x) & !b(x);\n",
      2, [](NetCase& cc) { cc.ev.set_observed(AtomKey{0, {0}}, true); });
  REQUIRE(c->net.infeasible);
  auto core = infer::hard_conflict(c->net);
  REQUIRE(!core.empty());
  REQUIRE(core[0].rfind("bad", 0) == 0);
  REQUIRE_THROWS_AS((void)infer::solve_map(c->net), infer::InfeasibleError);

  // The same contradiction over purely hidden atoms is invisible to the
  // grounder; the solver reports it instead.
  auto h = make_case(
      "sort u;\n"
      "pred b(u) hidden;\n"
      "bad: hard b(x) & !b(x);\n",
      2);
  REQUIRE(!h->net.infeasible);
  auto core2 = infer::hard_conflict(h->net);
  REQUIRE(!core2.empty());
  REQUIRE(core2[0].rfind("bad", 0) == 0);
  REQUIRE_THROWS_AS((void)infer::solve_map(h->net), infer::InfeasibleError);
}

TEST_CASE("log partition and state probabilities by enumeration") {
  auto c = make_case(
      "sort u;\n"
      "pred h(u) hidden;\n"
      "weight w1 = 0.5;\n"
      "weight w2 = -0.25;\n"
      "s1: soft w1 h(x);\n"
      "s2: soft w2 h(x) & h(y);\n",
      2);
  REQUIRE(c->net.atom_count() == 2);
  // Scores by hand: 00 -> 0, 10/01 -> 0.5 - 0.25 = 0.25, 11 -> 1 - 4*0.25 = 0.
  const double z = 2.0 + 2.0 * std::exp(0.25);
  const double log_z = infer::log_partition(c->net);
  REQUIRE(log_z == doctest::Approx(std::log(z)).epsilon(1e-12));

  double total = 0.0;
  for (int bits = 0; bits < 4; ++bits) {
    std::vector<char> x{static_cast<char>(bits & 1), static_cast<char>((bits >> 1) & 1)};
    total += std::exp(infer::world_log_probability(c->net, x, log_z));
  }
  REQUIRE(total == doctest::Approx(1.0).epsilon(1e-12));

  // A hard constraint zeroes out violating states.
  auto c2 = make_case(
      "sort u;\n"
      "pred h(u) hidden;\n"
      "weight w1 = 0.5;\n"
      "s1: soft w1 h(x);\n"
      "e: hard exists x: h(x);\n",
      2);
  const double z2 = 2.0 * std::exp(0.5) + std::exp(1.0);
  const double log_z2 = infer::log_partition(c2->net);
  REQUIRE(log_z2 == doctest::Approx(std::log(z2)).epsilon(1e-12));
  REQUIRE(infer::world_log_probability(c2->net, {0, 0}, log_z2) == -kInf);

  // The enumeration cap is enforced.
  auto big = make_case(
      "sort u;\n"
      "pred h(u) hidden;\n",
      26);
  REQUIRE_THROWS_AS((void)infer::log_partition(big->net), std::invalid_argument);
}

TEST_CASE("map result reports activity of the cutting-plane loop") {
  // One soft feature that the optimistic guess already gets right leaves the
  // active set small; a mis-guessed one forces activation.
  auto c = make_case(
      "sort u;\n"
      "pred h(u) hidden;\n"
      "weight wneg = -1;\n"
      "s: soft wneg h(x);\n",
      2);
  auto res = infer::solve_map(c->net);
  // Optimistic guess for negative weight is false; all-false is optimal and
  // the loop converges with nothing activated.
  REQUIRE(res.assignment == std::vector<char>{0, 0});
  REQUIRE(res.active_features == 0);
  REQUIRE(res.iterations == 1);

  auto c2 = make_case(
      "sort u;\n"
      "pred h(u) hidden;\n"
      "weight wpos = 1;\n"
      "e: hard exists1 x: h(x);\n"
      "s: soft wpos h(x);\n",
      2);
  auto res2 = infer::solve_map(c2->net);
  REQUIRE(res2.score == doctest::Approx(1.0));
  // The pick-one forbids making both h atoms true, so one positive soft
  // feature must end up violated and activated.
  REQUIRE(res2.active_features > 0);
}
