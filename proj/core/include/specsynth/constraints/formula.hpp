#pragma once

#include "specsynth/constraints/terms.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace specsynth {

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

CmpOp negate(CmpOp op);
const char *opSymbol(CmpOp op);

/// Normalized relation of a linear atom `t rel 0`.
enum class LinRel { Eq, Ne, Le };

/// Interpretation used to evaluate formulas: integer symbols to values,
/// addresses to object identities (0 is NULL).
struct Assignment {
  std::map<std::string, Int> ints;
  std::map<SymAddr, int> addrs;

  std::optional<Int> intOf(const std::string &name) const;
  std::optional<int> addrOf(const SymAddr &a) const;
  bool operator==(const Assignment &) const = default;
};

/// Either a linear comparison, an address (dis)equality, or a constant.
/// Linear atoms are stored as `t = 0`, `t != 0` or `t <= 0` with t
/// divided by the gcd of its coefficients and integer-tightened, so two
/// equivalent single comparisons compare equal.
class Atom {
public:
  enum class Kind { True, False, Lin, AddrEq, AddrNe };

  static Atom constant(bool value);
  static Atom cmp(const LinTerm &lhs, CmpOp op, const LinTerm &rhs);
  static Atom addrEq(const SymAddr &a, const SymAddr &b);
  static Atom addrNe(const SymAddr &a, const SymAddr &b);

  Kind kind() const { return kind_; }
  bool isConstant() const { return kind_ == Kind::True || kind_ == Kind::False; }
  bool isLinear() const { return kind_ == Kind::Lin; }
  bool isAddress() const { return kind_ == Kind::AddrEq || kind_ == Kind::AddrNe; }

  const LinTerm &term() const { return term_; }
  LinRel rel() const { return rel_; }
  const SymAddr &addrLhs() const { return a_; }
  const SymAddr &addrRhs() const { return b_; }

  Atom negate() const;
  Atom substitute(const std::map<std::string, LinTerm> &by) const;
  Atom renamed(const std::map<std::string, std::string> &names) const;

  std::set<std::string> symbols() const;
  std::set<SymAddr> addresses() const;

  /// nullopt when a symbol or address is unassigned.
  std::optional<bool> evaluate(const Assignment &a) const;

  std::string str() const;
  std::string smtlib() const;

  auto operator<=>(const Atom &) const = default;
  bool operator==(const Atom &) const = default;

private:
  Kind kind_ = Kind::True;
  LinRel rel_ = LinRel::Eq;
  LinTerm term_;
  SymAddr a_, b_;
};

/// A disjunction of atoms, sorted and duplicate-free.
class Clause {
public:
  Clause() = default;
  explicit Clause(std::vector<Atom> atoms);
  Clause(std::initializer_list<Atom> atoms) : Clause(std::vector<Atom>(atoms)) {}

  const std::vector<Atom> &atoms() const { return atoms_; }
  bool isUnit() const { return atoms_.size() == 1; }
  bool isTautology() const { return tautology_; }
  bool isEmpty() const { return !tautology_ && atoms_.empty(); }
  bool subsumes(const Clause &o) const; // every atom of *this is in o

  Clause substitute(const std::map<std::string, LinTerm> &by) const;
  Clause renamed(const std::map<std::string, std::string> &names) const;
  std::optional<bool> evaluate(const Assignment &a) const;
  std::string str() const;

  auto operator<=>(const Clause &) const = default;
  bool operator==(const Clause &) const = default;

private:
  std::vector<Atom> atoms_;
  bool tautology_ = false;
};

/// Conjunction of clauses. The empty conjunction is `true`; a formula
/// containing the empty clause collapses to the canonical `false`.
class Formula {
public:
  Formula() = default;
  static Formula True() { return {}; }
  static Formula False();
  static Formula of(std::initializer_list<Atom> atoms);

  bool isTrue() const { return !false_ && clauses_.empty(); }
  bool isFalse() const { return false_; }
  const std::vector<Clause> &clauses() const { return clauses_; }

  Formula &add(const Atom &atom);
  Formula &add(const Clause &clause);
  Formula &add(const Formula &other);
  Formula conj(const Atom &atom) const;
  Formula conj(const Formula &other) const;

  Formula substitute(const std::map<std::string, LinTerm> &by) const;
  Formula renamed(const std::map<std::string, std::string> &names) const;
  /// Keeps the clauses for which `keep` is true.
  template <typename Pred> Formula filter(Pred keep) const {
    if (false_)
      return *this;
    Formula f;
    for (const auto &c : clauses_)
      if (keep(c))
        f.add(c);
    return f;
  }

  std::set<std::string> symbols() const;
  std::set<SymAddr> addresses() const;
  std::optional<bool> evaluate(const Assignment &a) const;

  std::string str() const;

  auto operator<=>(const Formula &) const = default;
  bool operator==(const Formula &) const = default;

private:
  std::vector<Clause> clauses_;
  bool false_ = false;
};

} // namespace specsynth
