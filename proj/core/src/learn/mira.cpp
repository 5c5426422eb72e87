#include "ctfrec/learn/mira.hpp"

#include <cmath>
#include <stdexcept>

#include "ctfrec/ground/prop.hpp"
#include "ctfrec/infer/map.hpp"
#include "ctfrec/util/rng.hpp"
#include "ctfrec/util/text.hpp"

namespace ctfrec::learn {

using ground::GroundNet;

std::vector<double> feature_vector(const GroundNet& net, const std::vector<char>& x) {
  const auto counts = net.counts(x);
  std::vector<double> phi;
  const auto& formulas = net.theory->formulas;
  phi.reserve(formulas.size());
  for (size_t i = 0; i < formulas.size(); ++i) {
    if (!formulas[i].hard) phi.push_back(counts[i]);
  }
  return phi;
}

int hamming_loss(const std::vector<char>& gold, const std::vector<char>& pred) {
  if (gold.size() != pred.size()) {
    throw std::invalid_argument("hamming_loss: assignments cover different atom sets");
  }
  int loss = 0;
  for (size_t i = 0; i < gold.size(); ++i) {
    if ((gold[i] != 0) != (pred[i] != 0)) ++loss;
  }
  return loss;
}

namespace {

// Gold assignment of an example over the net's variables, with the example's
// labels checked against atoms the evidence already pinned or excluded.
std::vector<char> gold_assignment(const ExampleWorld& ex, const GroundNet& net) {
  std::vector<char> gold(net.atom_count(), 0);
  for (const auto& [key, value] : ex.hidden) {
    const int id = net.atom_id(key);
    if (id >= 0) {
      gold[id] = value ? 1 : 0;
      continue;
    }
    if (auto o = ex.evidence.observed(key)) {
      if (*o != value) {
        throw std::runtime_error("example '" + ex.name +
                                 "': hidden label contradicts an observation of the same atom");
      }
      continue;
    }
    if (value) {
      throw std::runtime_error("example '" + ex.name +
                               "': hidden atom labeled true is not a variable of the "
                               "ground network (outside its allowed domain?)");
    }
  }
  return gold;
}

}  // namespace

TrainedWeights mira_learn(const logic::Theory& theory, const std::vector<ExampleWorld>& train,
                          const MiraConfig& cfg, const std::map<std::string, double>* init) {
  if (train.empty()) throw std::invalid_argument("mira_learn: empty training set");
  if (cfg.epochs < 1) throw std::invalid_argument("mira_learn: epochs must be >= 1");
  if (!(cfg.aggressiveness_cap > 0)) {
    throw std::invalid_argument("mira_learn: aggressiveness cap must be positive");
  }

  std::vector<int> soft;  // formula indices carrying learnable weights
  for (size_t i = 0; i < theory.formulas.size(); ++i) {
    if (!theory.formulas[i].hard) soft.push_back(static_cast<int>(i));
  }

  std::vector<double> w(soft.size());
  for (size_t j = 0; j < soft.size(); ++j) w[j] = theory.formulas[soft[j]].weight;
  if (init) {
    for (const auto& [label, value] : *init) {
      bool found = false;
      for (size_t j = 0; j < soft.size(); ++j) {
        if (theory.formulas[soft[j]].label == label) {
          w[j] = value;
          found = true;
          break;
        }
      }
      if (!found) {
        throw std::invalid_argument("mira_learn: warm start names no soft formula '" + label +
                                    "'");
      }
    }
  }

  // Ground every example once; reject any whose evidence or gold assignment
  // breaks a hard formula, naming the formula.
  std::vector<GroundNet> nets;
  std::vector<std::vector<char>> golds;
  std::vector<std::vector<double>> gold_phis;
  nets.reserve(train.size());
  for (const auto& ex : train) {
    if (!ex.closed_world) {
      throw std::invalid_argument("mira_learn: example '" + ex.name +
                                  "' is a partial world; learning needs complete labels");
    }
    GroundNet net = ground_theory(theory, ex.universe, ex.evidence);
    if (net.infeasible) {
      throw std::runtime_error("example '" + ex.name + "': evidence violates hard formula(s): " +
                               util::join(net.infeasible_notes, ", "));
    }
    std::vector<char> gold = gold_assignment(ex, net);
    for (const auto& f : net.features) {
      if (f.hard && !ground::eval_prop(f.prop, gold)) {
        throw std::runtime_error("example '" + ex.name + "' violates hard formula '" +
                                 net.feature_name(f) + "'");
      }
    }
    gold_phis.push_back(feature_vector(net, gold));
    golds.push_back(std::move(gold));
    nets.push_back(std::move(net));
  }

  TrainedWeights out;
  util::Rng rng(cfg.shuffle_seed);
  std::vector<size_t> order(train.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  std::vector<double> full(theory.formulas.size(), 0.0);
  std::vector<double> wsum(w.size(), 0.0);
  int64_t visits = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (size_t i = order.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(rng.uniform_int(0, static_cast<int64_t>(i) - 1));
      std::swap(order[i - 1], order[j]);
    }
    double epoch_loss = 0.0;
    for (const size_t ei : order) {
      GroundNet& net = nets[ei];
      for (size_t j = 0; j < soft.size(); ++j) full[soft[j]] = w[j];
      net.set_weights(full);
      const auto res = infer::solve_map(net);
      const int loss = hamming_loss(golds[ei], res.assignment);
      if (loss > 0) {
        epoch_loss += loss;
        const auto pred_phi = feature_vector(net, res.assignment);
        double denom = 0.0, margin = 0.0;
        std::vector<double> dphi(w.size());
        for (size_t j = 0; j < w.size(); ++j) {
          dphi[j] = gold_phis[ei][j] - pred_phi[j];
          denom += dphi[j] * dphi[j];
          margin += w[j] * dphi[j];
        }
        if (denom == 0.0) {
          ++out.skipped_inexpressible;  // loss exists outside the feature space
        } else {
          double tau = (static_cast<double>(loss) - margin) / denom;
          tau = std::min(tau, cfg.aggressiveness_cap);
          tau = std::max(tau, 0.0);
          out.taus.push_back(tau);
          for (size_t j = 0; j < w.size(); ++j) w[j] += tau * dphi[j];
        }
      }
      ++visits;
      for (size_t j = 0; j < w.size(); ++j) wsum[j] += w[j];
    }
    out.epoch_loss.push_back(epoch_loss);
  }

  if (cfg.average) {
    for (size_t j = 0; j < w.size(); ++j) w[j] = wsum[j] / static_cast<double>(visits);
  }
  for (size_t j = 0; j < soft.size(); ++j) {
    out.weights[theory.formulas[soft[j]].label] = w[j];
  }
  return out;
}

}  // namespace ctfrec::learn
