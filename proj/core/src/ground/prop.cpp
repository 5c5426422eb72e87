#include "ctfrec/ground/prop.hpp"

namespace ctfrec::ground {

Prop Prop::negate(Prop p) {
  if (p.is_const()) return constant(!p.const_value());
  if (p.k == K::Not) return std::move(p.kids[0]);
  Prop out;
  out.k = K::Not;
  out.kids.push_back(std::move(p));
  return out;
}

Prop Prop::conj(std::vector<Prop> kids) {
  std::vector<Prop> keep;
  for (auto& k : kids) {
    if (k.k == K::False) return constant(false);
    if (k.k == K::True) continue;
    if (k.k == K::And) {
      for (auto& g : k.kids) keep.push_back(std::move(g));
    } else {
      keep.push_back(std::move(k));
    }
  }
  if (keep.empty()) return constant(true);
  if (keep.size() == 1) return std::move(keep[0]);
  Prop out;
  out.k = K::And;
  out.kids = std::move(keep);
  return out;
}

Prop Prop::disj(std::vector<Prop> kids) {
  std::vector<Prop> keep;
  for (auto& k : kids) {
    if (k.k == K::True) return constant(true);
    if (k.k == K::False) continue;
    if (k.k == K::Or) {
      for (auto& g : k.kids) keep.push_back(std::move(g));
    } else {
      keep.push_back(std::move(k));
    }
  }
  if (keep.empty()) return constant(false);
  if (keep.size() == 1) return std::move(keep[0]);
  Prop out;
  out.k = K::Or;
  out.kids = std::move(keep);
  return out;
}

Prop Prop::exactly_one(std::vector<Prop> kids) {
  int fixed_true = 0;
  std::vector<Prop> open;
  for (auto& k : kids) {
    if (k.k == K::True) {
      ++fixed_true;
    } else if (k.k == K::False) {
      continue;
    } else {
      open.push_back(std::move(k));
    }
  }
  if (fixed_true >= 2) return constant(false);
  if (fixed_true == 1) {
    std::vector<Prop> negs;
    negs.reserve(open.size());
    for (auto& k : open) negs.push_back(negate(std::move(k)));
    return conj(std::move(negs));
  }
  if (open.empty()) return constant(false);
  if (open.size() == 1) return std::move(open[0]);
  Prop out;
  out.k = K::ExactlyOne;
  out.kids = std::move(open);
  return out;
}

bool eval_prop(const Prop& p, const std::vector<char>& a) {
  switch (p.k) {
    case Prop::K::False:
      return false;
    case Prop::K::True:
      return true;
    case Prop::K::Var:
      return a[p.var] != 0;
    case Prop::K::Not:
      return !eval_prop(p.kids[0], a);
    case Prop::K::And:
      for (const auto& k : p.kids) {
        if (!eval_prop(k, a)) return false;
      }
      return true;
    case Prop::K::Or:
      for (const auto& k : p.kids) {
        if (eval_prop(k, a)) return true;
      }
      return false;
    case Prop::K::ExactlyOne: {
      int n = 0;
      for (const auto& k : p.kids) {
        if (eval_prop(k, a) && ++n > 1) return false;
      }
      return n == 1;
    }
  }
  return false;
}

void collect_vars(const Prop& p, std::set<int>& out) {
  if (p.k == Prop::K::Var) {
    out.insert(p.var);
    return;
  }
  for (const auto& k : p.kids) collect_vars(k, out);
}

}  // namespace ctfrec::ground
