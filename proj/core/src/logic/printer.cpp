#include "ctfrec/logic/printer.hpp"

#include "ctfrec/util/text.hpp"

namespace ctfrec::logic {

namespace {

// Binding tightness; children are parenthesized when looser than their
// context requires.
int prec(const Fol& f) {
  switch (f.kind) {
    case FolKind::Forall:
    case FolKind::Exists:
    case FolKind::ExistsOne:
      return 0;
    case FolKind::Iff:
      return 1;
    case FolKind::Implies:
      return 2;
    case FolKind::Xor:
      return 3;
    case FolKind::Or:
      return 4;
    case FolKind::And:
      return 5;
    case FolKind::Not:
      return 6;
    default:
      return 7;
  }
}

void render(const FolPtr& f, int min_prec, std::string& out) {
  const int p = prec(*f);
  const bool wrap = p < min_prec;
  if (wrap) out += '(';
  switch (f->kind) {
    case FolKind::True:
      out += "true";
      break;
    case FolKind::False:
      out += "false";
      break;
    case FolKind::Atm:
      out += print_atom(f->atom);
      break;
    case FolKind::Eq:
      out += print_term(f->lhs);
      out += " = ";
      out += print_term(f->rhs);
      break;
    case FolKind::Not:
      out += '!';
      render(f->kids[0], 6, out);
      break;
    case FolKind::And:
      for (size_t i = 0; i < f->kids.size(); ++i) {
        if (i) out += " & ";
        render(f->kids[i], 6, out);
      }
      break;
    case FolKind::Or:
      for (size_t i = 0; i < f->kids.size(); ++i) {
        if (i) out += " | ";
        render(f->kids[i], 5, out);
      }
      break;
    case FolKind::Xor:
      render(f->kids[0], 3, out);
      out += " xor ";
      render(f->kids[1], 4, out);
      break;
    case FolKind::Implies:
      render(f->kids[0], 3, out);
      out += " => ";
      render(f->kids[1], 2, out);
      break;
    case FolKind::Iff:
      render(f->kids[0], 1, out);
      out += " <=> ";
      render(f->kids[1], 2, out);
      break;
    case FolKind::Forall:
    case FolKind::Exists:
    case FolKind::ExistsOne: {
      out += f->kind == FolKind::Forall ? "forall"
             : f->kind == FolKind::Exists ? "exists"
                                          : "exists1";
      out += ' ';
      for (size_t i = 0; i < f->qvars.size(); ++i) {
        if (i) out += ", ";
        out += f->qvars[i];
      }
      out += " : ";
      render(f->kids[0], 0, out);
      break;
    }
  }
  if (wrap) out += ')';
}

}  // namespace

std::string print_term(const Term& t) {
  if (t.is_var && t.offset > 0) return t.name + "+" + std::to_string(t.offset);
  return t.name;
}

std::string print_atom(const Atom& a) {
  std::string out = a.pred + "(";
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ", ";
    out += print_term(a.args[i]);
  }
  out += ')';
  return out;
}

std::string print_fol(const FolPtr& f) {
  std::string out;
  render(f, 0, out);
  return out;
}

std::string print_formula(const Formula& f) {
  std::string out = f.label + ": ";
  if (f.hard) {
    out += "hard ";
  } else if (!f.weight_name.empty()) {
    out += "soft " + f.weight_name + " ";
  } else {
    out += "soft " + util::format_full(f.weight) + " ";
  }
  out += print_fol(f.body);
  if (!f.func_name.empty()) {
    out += " * " + f.func_name + "(";
    for (size_t i = 0; i < f.func_args.size(); ++i) {
      if (i) out += ", ";
      out += f.func_args[i];
    }
    out += ')';
  }
  out += ';';
  return out;
}

std::string print_theory(const Theory& th) {
  std::string out;
  auto gap = [&out] {
    if (!out.empty()) out += '\n';
  };
  for (const auto& s : th.sorts) out += "sort " + s + ";\n";
  if (!th.preds.empty()) gap();
  for (const auto& p : th.preds) {
    out += "pred " + p.name + "(";
    for (size_t i = 0; i < p.arg_sorts.size(); ++i) {
      if (i) out += ", ";
      out += p.arg_sorts[i];
    }
    out += p.hidden ? ") hidden;\n" : ") observed;\n";
  }
  if (!th.predvars.empty()) gap();
  for (const auto& pv : th.predvars) {
    out += "predvar " + pv.name + " in {";
    for (size_t i = 0; i < pv.domain.size(); ++i) {
      if (i) out += ", ";
      out += pv.domain[i];
    }
    out += "};\n";
  }
  if (!th.funcs.empty()) gap();
  for (const auto& fn : th.funcs) {
    out += "func " + fn.name + "(";
    for (size_t i = 0; i < fn.arg_sorts.size(); ++i) {
      if (i) out += ", ";
      out += fn.arg_sorts[i];
    }
    out += ");\n";
  }
  if (!th.weights.empty()) gap();
  for (const auto& w : th.weights) {
    out += "weight " + w.name + " = " + util::format_full(w.value) + ";\n";
  }
  if (!th.formulas.empty()) gap();
  for (const auto& f : th.formulas) out += print_formula(f) + "\n";
  return out;
}

}  // namespace ctfrec::logic
