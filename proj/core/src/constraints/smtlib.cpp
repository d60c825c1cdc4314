#include "specsynth/constraints/smtlib.hpp"

#include <cctype>
#include <sstream>

namespace specsynth {

std::string smtSymbol(const std::string &name) {
  static const std::string extra = "~!@$%^&*_-+=<>.?/";
  bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name.front()));
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && extra.find(c) == std::string::npos)
      simple = false;
  return simple ? name : "|" + name + "|";
}

namespace {
std::string smtConst(Int v) {
  return v < 0 ? "(- " + std::to_string(-v) + ")" : std::to_string(v);
}
} // namespace

std::string smtTerm(const LinTerm &t) {
  std::vector<std::string> parts;
  for (const auto &[name, c] : t.coeffs()) {
    if (c == 1)
      parts.push_back(smtSymbol(name));
    else
      parts.push_back("(* " + smtConst(c) + " " + smtSymbol(name) + ")");
  }
  if (t.constant() != 0 || parts.empty())
    parts.push_back(smtConst(t.constant()));
  if (parts.size() == 1)
    return parts.front();
  std::string out = "(+";
  for (const auto &p : parts)
    out += " " + p;
  return out + ")";
}

std::string smtAddress(const SymAddr &a) {
  return a.isNull() ? "0" : smtSymbol(a.str());
}

std::string emitSmtlib(const Formula &f, const std::string &comment) {
  std::ostringstream out;
  if (!comment.empty()) {
    std::istringstream lines(comment);
    std::string line;
    while (std::getline(lines, line))
      out << "; " << line << "\n";
  }
  out << "(set-logic QF_LIA)\n";
  for (const auto &s : f.symbols())
    out << "(declare-const " << smtSymbol(s) << " Int)\n";
  for (const auto &a : f.addresses())
    out << "(declare-const " << smtAddress(a) << " Int)\n";
  if (f.isFalse())
    out << "(assert false)\n";
  for (const auto &c : f.clauses()) {
    if (c.isUnit()) {
      out << "(assert " << c.atoms().front().smtlib() << ")\n";
    } else {
      out << "(assert (or";
      for (const auto &a : c.atoms())
        out << " " << a.smtlib();
      out << "))\n";
    }
  }
  out << "(check-sat)\n";
  return out.str();
}

} // namespace specsynth
