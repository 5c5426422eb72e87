#include "ctfrec/sat/clausify.hpp"

#include <stdexcept>
#include <vector>

namespace ctfrec::sat {

using ground::Prop;

Lit PropEncoder::const_lit(bool b) {
  if (true_var_ < 0) {
    true_var_ = s_->new_var();
    s_->add_clause({mk_lit(true_var_, false)});
  }
  return mk_lit(true_var_, !b);
}

Lit PropEncoder::lit_for(const Prop& p, int polarity) {
  switch (p.k) {
    case Prop::K::True:
      return const_lit(true);
    case Prop::K::False:
      return const_lit(false);
    case Prop::K::Var:
      return mk_lit(p.var, false);
    case Prop::K::Not:
      return negate(lit_for(p.kids[0], -polarity));
    case Prop::K::And: {
      std::vector<Lit> kid_lits;
      kid_lits.reserve(p.kids.size());
      for (const auto& k : p.kids) kid_lits.push_back(lit_for(k, polarity));
      Lit a = mk_lit(s_->new_var(), false);
      if (polarity >= 0) {
        for (Lit l : kid_lits) s_->add_clause({negate(a), l});
      }
      if (polarity <= 0) {
        std::vector<Lit> cl;
        cl.reserve(kid_lits.size() + 1);
        cl.push_back(a);
        for (Lit l : kid_lits) cl.push_back(negate(l));
        s_->add_clause(cl);
      }
      return a;
    }
    case Prop::K::Or: {
      std::vector<Lit> kid_lits;
      kid_lits.reserve(p.kids.size());
      for (const auto& k : p.kids) kid_lits.push_back(lit_for(k, polarity));
      Lit a = mk_lit(s_->new_var(), false);
      if (polarity >= 0) {
        std::vector<Lit> cl;
        cl.reserve(kid_lits.size() + 1);
        cl.push_back(negate(a));
        for (Lit l : kid_lits) cl.push_back(l);
        s_->add_clause(cl);
      }
      if (polarity <= 0) {
        for (Lit l : kid_lits) s_->add_clause({a, negate(l)});
      }
      return a;
    }
    case Prop::K::ExactlyOne: {
      // Both directions touch each kid with both signs.
      std::vector<Lit> kid_lits;
      kid_lits.reserve(p.kids.size());
      for (const auto& k : p.kids) kid_lits.push_back(lit_for(k, 0));
      Lit a = mk_lit(s_->new_var(), false);
      size_t n = kid_lits.size();
      if (polarity >= 0) {
        std::vector<Lit> alo;
        alo.reserve(n + 1);
        alo.push_back(negate(a));
        for (Lit l : kid_lits) alo.push_back(l);
        s_->add_clause(alo);
        for (size_t i = 0; i < n; ++i)
          for (size_t j = i + 1; j < n; ++j)
            s_->add_clause({negate(a), negate(kid_lits[i]), negate(kid_lits[j])});
      }
      if (polarity <= 0) {
        // Any single-true witness forces a.
        for (size_t i = 0; i < n; ++i) {
          std::vector<Lit> cl;
          cl.reserve(n + 1);
          cl.push_back(a);
          cl.push_back(negate(kid_lits[i]));
          for (size_t j = 0; j < n; ++j)
            if (j != i) cl.push_back(kid_lits[j]);
          s_->add_clause(cl);
        }
      }
      return a;
    }
  }
  throw std::logic_error("unhandled prop kind");
}

void PropEncoder::assert_true(const Prop& p) {
  switch (p.k) {
    case Prop::K::True:
      return;
    case Prop::K::False:
      s_->add_clause({});
      return;
    case Prop::K::Var:
      s_->add_clause({mk_lit(p.var, false)});
      return;
    case Prop::K::Not: {
      const Prop& k = p.kids[0];
      if (k.k == Prop::K::Var) {
        s_->add_clause({mk_lit(k.var, true)});
      } else if (k.k == Prop::K::Or) {
        for (const auto& c : k.kids) assert_true(Prop::negate(c));
      } else {
        s_->add_clause({negate(lit_for(k, -1))});
      }
      return;
    }
    case Prop::K::And:
      for (const auto& k : p.kids) assert_true(k);
      return;
    case Prop::K::Or: {
      std::vector<Lit> cl;
      cl.reserve(p.kids.size());
      for (const auto& k : p.kids) cl.push_back(lit_for(k, +1));
      s_->add_clause(cl);
      return;
    }
    case Prop::K::ExactlyOne: {
      std::vector<Lit> lits;
      lits.reserve(p.kids.size());
      for (const auto& k : p.kids) lits.push_back(lit_for(k, 0));
      s_->add_clause(lits);
      for (size_t i = 0; i < lits.size(); ++i)
        for (size_t j = i + 1; j < lits.size(); ++j)
          s_->add_clause({negate(lits[i]), negate(lits[j])});
      return;
    }
  }
  throw std::logic_error("unhandled prop kind");
}

}  // namespace ctfrec::sat
