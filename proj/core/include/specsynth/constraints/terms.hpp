#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace specsynth {

using Int = std::int64_t;

/// Raised when linear arithmetic leaves the 64-bit range. Decision
/// procedures translate it into an `unknown` answer.
class ArithmeticOverflow : public std::overflow_error {
public:
  ArithmeticOverflow() : std::overflow_error("integer overflow in linear term") {}
};

Int checkedAdd(Int a, Int b);
Int checkedMul(Int a, Int b);
Int floorDiv(Int a, Int b);
Int ceilDiv(Int a, Int b);
Int gcd(Int a, Int b);

/// A symbolic heap address: NULL, a root symbol (`&s`), or a field path
/// hanging off a root (`&s.elems.next`).
class SymAddr {
public:
  SymAddr() = default;

  static SymAddr null() { return SymAddr(); }
  static SymAddr root(std::string name);
  /// Parses "NULL", "&s" or "&s.elems.next" (the leading & is optional).
  static SymAddr parse(std::string_view text);

  SymAddr field(std::string_view name) const;

  bool isNull() const { return path_.empty(); }
  bool isRoot() const { return path_.size() == 1; }
  const std::vector<std::string> &path() const { return path_; }
  const std::string &rootName() const;
  /// Base address of a field path; nullopt for roots and NULL.
  std::optional<SymAddr> base() const;
  const std::string &lastField() const;

  /// "s.elems.next": the prefix used to name symbols of this object.
  std::string dotted() const;
  /// "&s.elems.next" or "NULL".
  std::string str() const;

  auto operator<=>(const SymAddr &) const = default;
  bool operator==(const SymAddr &) const = default;

private:
  std::vector<std::string> path_;
};

/// c0 + sum(ci * xi) over unbounded integers, kept normalized: no zero
/// coefficients, symbols ordered by name.
class LinTerm {
public:
  LinTerm() = default;
  explicit LinTerm(Int constant) : constant_(constant) {}

  static LinTerm var(std::string name, Int coeff = 1);

  Int constant() const { return constant_; }
  const std::map<std::string, Int> &coeffs() const { return coeffs_; }
  Int coeff(const std::string &name) const;

  bool isConstant() const { return coeffs_.empty(); }
  /// The symbol name when the term is exactly `1*x + 0`.
  std::optional<std::string> asSymbol() const;
  std::set<std::string> symbols() const;
  bool mentions(const std::string &name) const { return coeffs_.count(name) != 0; }

  LinTerm operator+(const LinTerm &o) const;
  LinTerm operator-(const LinTerm &o) const;
  LinTerm operator-() const;
  LinTerm operator*(Int k) const;
  LinTerm operator+(Int k) const { return *this + LinTerm(k); }

  /// Simultaneous substitution of every mapped symbol.
  LinTerm substitute(const std::map<std::string, LinTerm> &by) const;
  LinTerm substitute(const std::string &name, const LinTerm &by) const;
  LinTerm renamed(const std::map<std::string, std::string> &names) const;

  /// Evaluates with `lookup`; nullopt if some symbol is unbound.
  std::optional<Int>
  evaluate(const std::function<std::optional<Int>(const std::string &)> &lookup) const;
  std::optional<Int> evaluate(const std::map<std::string, Int> &model) const;

  /// gcd of the coefficients (0 for constants).
  Int coeffGcd() const;

  /// "?s.size + 1", "2*?a - ?b", "_i1 + 1". Symbols whose name starts
  /// with '_' are printed without the '?' marker; `plain` drops it always.
  std::string str(bool plain = false) const;

  auto operator<=>(const LinTerm &) const = default;
  bool operator==(const LinTerm &) const = default;

private:
  Int constant_ = 0;
  std::map<std::string, Int> coeffs_;
};

std::string symbolDisplay(const std::string &name, bool plain = false);

/// Parses the `str(true)` rendering back ("_i1+1", "x - 3", "2*a").
std::optional<LinTerm> parseLinTerm(std::string_view text);

} // namespace specsynth
