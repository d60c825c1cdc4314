#pragma once

#include "specsynth/lang/parser.hpp"

namespace specsynth::detail {

enum class Tok { Ident, Number, Keyword, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 0;
  int column = 0;
  Int value = 0;
};

/// Never throws; problems are appended to `diags` as errors or warnings.
std::vector<Token> lex(std::string_view src, std::vector<Diagnostic> &diags);

} // namespace specsynth::detail
