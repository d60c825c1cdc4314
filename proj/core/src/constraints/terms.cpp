#include "specsynth/constraints/terms.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace specsynth {

Int checkedAdd(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r))
    throw ArithmeticOverflow();
  return r;
}

Int checkedMul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r))
    throw ArithmeticOverflow();
  return r;
}

Int floorDiv(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

Int ceilDiv(Int a, Int b) { return -floorDiv(-a, b); }

Int gcd(Int a, Int b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// ---------------------------------------------------------------------------
// SymAddr

SymAddr SymAddr::root(std::string name) {
  SymAddr a;
  a.path_.push_back(std::move(name));
  return a;
}

SymAddr SymAddr::parse(std::string_view text) {
  if (text == "NULL" || text.empty())
    return null();
  if (text.front() == '&')
    text.remove_prefix(1);
  SymAddr a;
  std::string cur;
  for (char c : text) {
    if (c == '.') {
      a.path_.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  a.path_.push_back(cur);
  return a;
}

SymAddr SymAddr::field(std::string_view name) const {
  if (isNull())
    throw std::logic_error("NULL has no fields");
  SymAddr a = *this;
  a.path_.emplace_back(name);
  return a;
}

const std::string &SymAddr::rootName() const {
  if (isNull())
    throw std::logic_error("NULL has no root");
  return path_.front();
}

std::optional<SymAddr> SymAddr::base() const {
  if (path_.size() < 2)
    return std::nullopt;
  SymAddr a = *this;
  a.path_.pop_back();
  return a;
}

const std::string &SymAddr::lastField() const {
  if (path_.size() < 2)
    throw std::logic_error("address is not a field path");
  return path_.back();
}

std::string SymAddr::dotted() const {
  std::string out;
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (i)
      out += '.';
    out += path_[i];
  }
  return out;
}

std::string SymAddr::str() const { return isNull() ? "NULL" : "&" + dotted(); }

// ---------------------------------------------------------------------------
// LinTerm

LinTerm LinTerm::var(std::string name, Int coeff) {
  LinTerm t;
  if (coeff != 0)
    t.coeffs_.emplace(std::move(name), coeff);
  return t;
}

Int LinTerm::coeff(const std::string &name) const {
  auto it = coeffs_.find(name);
  return it == coeffs_.end() ? 0 : it->second;
}

std::optional<std::string> LinTerm::asSymbol() const {
  if (constant_ != 0 || coeffs_.size() != 1 || coeffs_.begin()->second != 1)
    return std::nullopt;
  return coeffs_.begin()->first;
}

std::set<std::string> LinTerm::symbols() const {
  std::set<std::string> out;
  for (const auto &[name, c] : coeffs_)
    out.insert(name);
  return out;
}

LinTerm LinTerm::operator+(const LinTerm &o) const {
  LinTerm r = *this;
  r.constant_ = checkedAdd(r.constant_, o.constant_);
  for (const auto &[name, c] : o.coeffs_) {
    Int v = checkedAdd(r.coeff(name), c);
    if (v == 0)
      r.coeffs_.erase(name);
    else
      r.coeffs_[name] = v;
  }
  return r;
}

LinTerm LinTerm::operator-() const { return *this * -1; }

LinTerm LinTerm::operator-(const LinTerm &o) const { return *this + (-o); }

LinTerm LinTerm::operator*(Int k) const {
  LinTerm r;
  if (k == 0)
    return r;
  r.constant_ = checkedMul(constant_, k);
  for (const auto &[name, c] : coeffs_)
    r.coeffs_[name] = checkedMul(c, k);
  return r;
}

LinTerm LinTerm::substitute(const std::map<std::string, LinTerm> &by) const {
  LinTerm r(constant_);
  for (const auto &[name, c] : coeffs_) {
    auto it = by.find(name);
    if (it == by.end())
      r = r + LinTerm::var(name, c);
    else
      r = r + it->second * c;
  }
  return r;
}

LinTerm LinTerm::substitute(const std::string &name, const LinTerm &by) const {
  if (!mentions(name))
    return *this;
  return substitute(std::map<std::string, LinTerm>{{name, by}});
}

LinTerm LinTerm::renamed(const std::map<std::string, std::string> &names) const {
  LinTerm r(constant_);
  for (const auto &[name, c] : coeffs_) {
    auto it = names.find(name);
    r = r + LinTerm::var(it == names.end() ? name : it->second, c);
  }
  return r;
}

std::optional<Int> LinTerm::evaluate(
    const std::function<std::optional<Int>(const std::string &)> &lookup) const {
  Int acc = constant_;
  for (const auto &[name, c] : coeffs_) {
    auto v = lookup(name);
    if (!v)
      return std::nullopt;
    acc = checkedAdd(acc, checkedMul(c, *v));
  }
  return acc;
}

std::optional<Int> LinTerm::evaluate(const std::map<std::string, Int> &model) const {
  return evaluate([&](const std::string &n) -> std::optional<Int> {
    auto it = model.find(n);
    if (it == model.end())
      return std::nullopt;
    return it->second;
  });
}

Int LinTerm::coeffGcd() const {
  Int g = 0;
  for (const auto &[name, c] : coeffs_)
    g = gcd(g, c);
  return g;
}

std::string symbolDisplay(const std::string &name, bool plain) {
  if (plain || (!name.empty() && name.front() == '_'))
    return name;
  return "?" + name;
}

std::string LinTerm::str(bool plain) const {
  std::ostringstream out;
  bool first = true;
  for (const auto &[name, c] : coeffs_) {
    Int mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0)
        out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (mag != 1)
      out << mag << '*';
    out << symbolDisplay(name, plain);
    first = false;
  }
  if (first) {
    out << constant_;
  } else if (constant_ != 0) {
    out << (constant_ < 0 ? " - " : " + ") << (constant_ < 0 ? -constant_ : constant_);
  }
  return out.str();
}

std::optional<LinTerm> parseLinTerm(std::string_view text) {
  LinTerm acc;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  bool expectTerm = true;
  Int sign = 1;
  skip();
  if (i == text.size())
    return std::nullopt;
  while (i < text.size()) {
    skip();
    if (i >= text.size())
      break;
    char c = text[i];
    if (!expectTerm) {
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++i;
        expectTerm = true;
        continue;
      }
      return std::nullopt;
    }
    if (c == '-') {
      sign = -sign;
      ++i;
      continue;
    }
    if (c == '+') {
      ++i;
      continue;
    }
    Int coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
      coeff = std::strtoll(std::string(text.substr(start, i - start)).c_str(), nullptr, 10);
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      } else {
        acc = acc + LinTerm(sign * coeff);
        sign = 1;
        expectTerm = false;
        continue;
      }
    }
    if (i < text.size() && text[i] == '?')
      ++i;
    std::size_t start = i;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                               text[i] == '_' || text[i] == '.' || text[i] == '#' ||
                               text[i] == '&' || text[i] == '\''))
      ++i;
    if (start == i)
      return std::nullopt;
    acc = acc + LinTerm::var(std::string(text.substr(start, i - start)), sign * coeff);
    sign = 1;
    expectTerm = false;
  }
  if (expectTerm)
    return std::nullopt;
  return acc;
}

} // namespace specsynth
