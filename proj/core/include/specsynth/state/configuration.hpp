#pragma once

#include "specsynth/constraints/formula.hpp"
#include "specsynth/lang/ast.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace specsynth {

/// A cell value: a linear integer term, an address, or `uninit`.
class Value {
public:
  enum class Kind { Uninit, Int, Addr };

  Value() = default;
  static Value uninit() { return {}; }
  static Value integer(LinTerm t);
  static Value integer(Int n) { return integer(LinTerm(n)); }
  static Value symbol(const std::string &name) { return integer(LinTerm::var(name)); }
  static Value address(SymAddr a);
  static Value null() { return address(SymAddr::null()); }

  Kind kind() const { return kind_; }
  bool isUninit() const { return kind_ == Kind::Uninit; }
  bool isInt() const { return kind_ == Kind::Int; }
  bool isAddr() const { return kind_ == Kind::Addr; }
  bool isNull() const { return isAddr() && addr_.isNull(); }

  const LinTerm &term() const { return term_; }
  const SymAddr &addr() const { return addr_; }

  Value substitute(const std::map<std::string, LinTerm> &by) const;
  std::string str() const;

  auto operator<=>(const Value &) const = default;
  bool operator==(const Value &) const = default;

private:
  Kind kind_ = Kind::Uninit;
  LinTerm term_;
  SymAddr addr_;
};

struct HeapObject {
  std::string tag;
  std::map<std::string, Value> fields;

  const Value &field(const std::string &name) const { return fields.at(name); }
  auto operator<=>(const HeapObject &) const = default;
  bool operator==(const HeapObject &) const = default;
};

/// A written location: a variable `x` or a field `p->f`, named syntactically.
struct Location {
  std::string base;
  std::string field; // empty for variables

  static Location variable(std::string v) { return {std::move(v), {}}; }
  static Location fieldOf(std::string p, std::string f) { return {std::move(p), std::move(f)}; }
  std::string str() const { return field.empty() ? base : base + "->" + field; }
  auto operator<=>(const Location &) const = default;
  bool operator==(const Location &) const = default;
};

using Heap = std::map<SymAddr, HeapObject>;
/// nullopt records a null assumption.
using InitHeap = std::map<SymAddr, std::optional<HeapObject>>;

/// The cell structure of one symbolic state. `pc` is the statement about
/// to run (or the loop guard being evaluated); a finished state carries
/// its return value in `result`.
struct SymbolicConfiguration {
  std::string function;
  int pc = 0;
  std::optional<Value> result;
  std::map<std::string, Value> env;
  Heap heap;
  InitHeap initHeap;
  Formula pathCondition;
  bool aSubFlag = false;
  std::set<Location> locations;
  std::vector<SymAddr> allocations; // in allocation order
  std::vector<int> trace;           // executed statement ids

  bool finished() const { return result.has_value(); }
  /// Not null, not in the heap: a pointer nobody has explored yet.
  bool unexplored(const SymAddr &a) const { return !a.isNull() && !heap.count(a); }
};

/// SC(S): one equality per scalar env binding (`&x = v`) and per scalar
/// heap field (`&p.f = v`), conjoined with the path condition.
Formula stateConstraint(const SymbolicConfiguration &c);

/// Name of the location symbol used by stateConstraint.
std::string envSymbol(const std::string &var);
std::string fieldSymbol(const SymAddr &obj, const std::string &field);

SymbolicConfiguration recordWrite(SymbolicConfiguration c, const Location &loc);

/// Every integer symbol occurring in env, heap or the path condition.
std::set<std::string> configSymbols(const SymbolicConfiguration &c);

/// Cell rendering, e.g. "<k> 1 </k>\n<env> s |-> &s ...". Field order
/// follows the struct declarations when `program` is given.
std::string prettyConfiguration(const SymbolicConfiguration &c, const Program *program = nullptr);

} // namespace specsynth
