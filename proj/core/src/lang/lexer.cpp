#include "lexer.hpp"

#include <array>
#include <cctype>
#include <set>

namespace specsynth::detail {

namespace {

const std::set<std::string> kKeywords = {"int",   "void",   "struct", "if",     "else",  "while",
                                         "return", "NULL",  "sizeof", "for",    "do",    "switch",
                                         "char",  "long",   "unsigned", "float", "double", "union",
                                         "goto",  "break",  "continue", "typedef", "enum", "static",
                                         "const"};

// Longest first so that "->" wins over "-".
const std::array<const char *, 31> kPuncts = {"->", "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=",
                                              "-=", "*=", "/=", "{",  "}",  "(",  ")",  "[",  "]",  ";",
                                              ",",  "=",  "<",  ">",  "+",  "-",  "*",  "/",  "%",  "!",
                                              "&"};

} // namespace

std::vector<Token> lex(std::string_view src, std::vector<Diagnostic> &diags) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  bool lineStart = true;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
        lineStart = true;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n' || std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' && lineStart) {
      std::size_t end = src.find('\n', i);
      std::string text(src.substr(i, end == std::string_view::npos ? std::string_view::npos : end - i));
      while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.pop_back();
      diags.push_back({Diagnostic::Severity::Warning, line, col, "preprocessor line skipped: " + text});
      advance((end == std::string_view::npos ? src.size() : end) - i);
      continue;
    }
    lineStart = false;
    if (src.substr(i, 2) == "//") {
      while (i < src.size() && src[i] != '\n')
        advance(1);
      continue;
    }
    if (src.substr(i, 2) == "/*") {
      int l0 = line, c0 = col;
      std::size_t end = src.find("*/", i + 2);
      if (end == std::string_view::npos) {
        diags.push_back({Diagnostic::Severity::Error, l0, c0, "syntax error: unterminated comment"});
        advance(src.size() - i);
        break;
      }
      advance(end + 2 - i);
      lineStart = false;
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      t.text = std::string(src.substr(i, j - i));
      t.kind = kKeywords.count(t.text) ? Tok::Keyword : Tok::Ident;
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j])))
        ++j;
      t.text = std::string(src.substr(i, j - i));
      t.kind = Tok::Number;
      bool digits = true;
      for (char d : t.text)
        digits = digits && std::isdigit(static_cast<unsigned char>(d));
      if (!digits) {
        diags.push_back({Diagnostic::Severity::Error, line, col, "syntax error: malformed number '" + t.text + "'"});
      } else {
        try {
          t.value = std::stoll(t.text);
        } catch (const std::out_of_range &) {
          diags.push_back({Diagnostic::Severity::Error, line, col, "integer literal out of range: " + t.text});
        }
      }
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    bool matched = false;
    for (const char *p : kPuncts) {
      std::string_view pv(p);
      if (src.substr(i, pv.size()) == pv) {
        t.kind = Tok::Punct;
        t.text = std::string(pv);
        advance(pv.size());
        out.push_back(std::move(t));
        matched = true;
        break;
      }
    }
    if (matched)
      continue;
    std::string what = c == '.' ? "unsupported construct: '.' member access" : std::string("syntax error: unexpected character '") + c + "'";
    diags.push_back({Diagnostic::Severity::Error, line, col, what});
    advance(1);
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

} // namespace specsynth::detail
