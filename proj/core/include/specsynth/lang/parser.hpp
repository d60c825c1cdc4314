#pragma once

#include "specsynth/lang/ast.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace specsynth {

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  int line = 0;
  int column = 0;
  std::string message;

  bool isError() const { return severity == Severity::Error; }
  /// "line 3:7: error: unknown identifier 'y'"
  std::string str() const;
};

struct ParseResult {
  std::optional<Program> program; // set when there are no errors
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return program.has_value(); }
  std::string errorText() const;
};

/// Lexes, parses and type-checks one translation unit of the dialect.
/// Statement ids are assigned in source order across the whole file.
/// `malloc(sizeof(struct T))` becomes an Alloc expression; preprocessor
/// lines are skipped with a warning.
ParseResult parseProgram(std::string_view source);

/// Reads and parses a file; a missing file yields a single error.
ParseResult parseFile(const std::string &path);

/// Canonical source text; parsing it gives a structurally equal program.
std::string printProgram(const Program &p);
std::string printExpr(const Expr &e);

} // namespace specsynth
