#pragma once

#include "specsynth/constraints/formula.hpp"

#include <string>

namespace specsynth {

/// Quotes a symbol with |...| when it is not a legal SMT-LIB simple symbol.
std::string smtSymbol(const std::string &name);
std::string smtTerm(const LinTerm &t);
/// NULL is the integer 0; other addresses are Int constants named "&path".
std::string smtAddress(const SymAddr &a);

/// SMT-LIB 2 script over sort Int: declarations, one assert per clause,
/// then (check-sat). `comment` lines are emitted as a leading ; header.
std::string emitSmtlib(const Formula &f, const std::string &comment = {});

} // namespace specsynth
