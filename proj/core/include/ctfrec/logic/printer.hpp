#pragma once

#include <string>

#include "ctfrec/logic/theory.hpp"

namespace ctfrec::logic {

// Canonical renderings; parse(print(x)) reproduces x structurally.
std::string print_term(const Term& t);
std::string print_atom(const Atom& a);
std::string print_fol(const FolPtr& f);
std::string print_formula(const Formula& f);
std::string print_theory(const Theory& th);

}  // namespace ctfrec::logic
