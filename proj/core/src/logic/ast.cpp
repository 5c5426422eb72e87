#include "ctfrec/logic/ast.hpp"

#include <algorithm>

namespace ctfrec::logic {

namespace {
FolPtr node(FolKind k) {
  auto f = std::make_shared<Fol>();
  f->kind = k;
  return f;
}
}  // namespace

FolPtr mk_true() { return node(FolKind::True); }
FolPtr mk_false() { return node(FolKind::False); }

FolPtr mk_atom(Atom a) {
  auto f = std::make_shared<Fol>();
  f->kind = FolKind::Atm;
  f->atom = std::move(a);
  return f;
}

FolPtr mk_eq(Term l, Term r) {
  auto f = std::make_shared<Fol>();
  f->kind = FolKind::Eq;
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

FolPtr mk_not(FolPtr k) {
  auto f = std::make_shared<Fol>();
  f->kind = FolKind::Not;
  f->kids.push_back(std::move(k));
  return f;
}

static FolPtr nary(FolKind kind, std::vector<FolPtr> kids) {
  auto f = std::make_shared<Fol>();
  f->kind = kind;
  f->kids = std::move(kids);
  return f;
}

FolPtr mk_and(std::vector<FolPtr> kids) { return nary(FolKind::And, std::move(kids)); }
FolPtr mk_or(std::vector<FolPtr> kids) { return nary(FolKind::Or, std::move(kids)); }
FolPtr mk_implies(FolPtr a, FolPtr b) { return nary(FolKind::Implies, {std::move(a), std::move(b)}); }
FolPtr mk_iff(FolPtr a, FolPtr b) { return nary(FolKind::Iff, {std::move(a), std::move(b)}); }
FolPtr mk_xor(FolPtr a, FolPtr b) { return nary(FolKind::Xor, {std::move(a), std::move(b)}); }

static FolPtr quant(FolKind kind, std::vector<std::string> vars, FolPtr body) {
  auto f = std::make_shared<Fol>();
  f->kind = kind;
  f->qvars = std::move(vars);
  f->kids.push_back(std::move(body));
  return f;
}

FolPtr mk_forall(std::vector<std::string> vars, FolPtr body) {
  return quant(FolKind::Forall, std::move(vars), std::move(body));
}
FolPtr mk_exists(std::vector<std::string> vars, FolPtr body) {
  return quant(FolKind::Exists, std::move(vars), std::move(body));
}
FolPtr mk_exists_one(std::vector<std::string> vars, FolPtr body) {
  return quant(FolKind::ExistsOne, std::move(vars), std::move(body));
}

bool struct_eq(const FolPtr& a, const FolPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  if (a->atom != b->atom) return false;
  if (!(a->lhs == b->lhs) || !(a->rhs == b->rhs)) return false;
  if (a->qvars != b->qvars) return false;
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i) {
    if (!struct_eq(a->kids[i], b->kids[i])) return false;
  }
  return true;
}

namespace {
void collect_free(const FolPtr& f, std::vector<std::string>& bound,
                  std::vector<std::string>& out) {
  if (!f) return;
  auto is_bound = [&](const std::string& v) {
    return std::find(bound.begin(), bound.end(), v) != bound.end();
  };
  auto add = [&](const Term& t) {
    if (!t.is_var || is_bound(t.name)) return;
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
  };
  switch (f->kind) {
    case FolKind::Atm:
      for (const auto& t : f->atom.args) add(t);
      break;
    case FolKind::Eq:
      add(f->lhs);
      add(f->rhs);
      break;
    case FolKind::Forall:
    case FolKind::Exists:
    case FolKind::ExistsOne: {
      const size_t n = bound.size();
      for (const auto& v : f->qvars) bound.push_back(v);
      collect_free(f->kids[0], bound, out);
      bound.resize(n);
      break;
    }
    default:
      for (const auto& k : f->kids) collect_free(k, bound, out);
      break;
  }
}
}  // namespace

std::vector<std::string> free_vars(const FolPtr& f) {
  std::vector<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

FolPtr map_atoms(const FolPtr& f, const std::function<Atom(const Atom&)>& fn) {
  if (!f) return f;
  if (f->kind == FolKind::Atm) return mk_atom(fn(f->atom));
  auto g = std::make_shared<Fol>(*f);
  for (auto& k : g->kids) k = map_atoms(k, fn);
  return g;
}

}  // namespace ctfrec::logic
