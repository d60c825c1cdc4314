#include "specsynth/constraints/formula.hpp"

#include "specsynth/constraints/smtlib.hpp"

#include <algorithm>
#include <sstream>

namespace specsynth {

CmpOp negate(CmpOp op) {
  switch (op) {
  case CmpOp::Eq: return CmpOp::Ne;
  case CmpOp::Ne: return CmpOp::Eq;
  case CmpOp::Lt: return CmpOp::Ge;
  case CmpOp::Le: return CmpOp::Gt;
  case CmpOp::Gt: return CmpOp::Le;
  case CmpOp::Ge: return CmpOp::Lt;
  }
  return op;
}

const char *opSymbol(CmpOp op) {
  switch (op) {
  case CmpOp::Eq: return "==";
  case CmpOp::Ne: return "!=";
  case CmpOp::Lt: return "<";
  case CmpOp::Le: return "<=";
  case CmpOp::Gt: return ">";
  case CmpOp::Ge: return ">=";
  }
  return "?";
}

std::optional<Int> Assignment::intOf(const std::string &name) const {
  auto it = ints.find(name);
  if (it == ints.end())
    return std::nullopt;
  return it->second;
}

std::optional<int> Assignment::addrOf(const SymAddr &a) const {
  if (a.isNull())
    return 0;
  auto it = addrs.find(a);
  if (it == addrs.end())
    return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Atom

namespace {

LinTerm divideExact(const LinTerm &t, Int g, Int newConstant) {
  LinTerm r(newConstant);
  for (const auto &[name, c] : t.coeffs())
    r = r + LinTerm::var(name, c / g);
  return r;
}

// Splits the non-constant part of t into positive and negated-negative halves.
std::pair<LinTerm, LinTerm> splitSides(const LinTerm &t) {
  LinTerm pos, neg;
  for (const auto &[name, c] : t.coeffs()) {
    if (c > 0)
      pos = pos + LinTerm::var(name, c);
    else
      neg = neg + LinTerm::var(name, -c);
  }
  return {pos, neg};
}

} // namespace

Atom Atom::constant(bool value) {
  Atom a;
  a.kind_ = value ? Kind::True : Kind::False;
  return a;
}

Atom Atom::cmp(const LinTerm &lhs, CmpOp op, const LinTerm &rhs) {
  LinTerm t = lhs - rhs;
  LinRel rel = LinRel::Le;
  switch (op) {
  case CmpOp::Eq: rel = LinRel::Eq; break;
  case CmpOp::Ne: rel = LinRel::Ne; break;
  case CmpOp::Le: break;
  case CmpOp::Lt: t = t + 1; break;
  case CmpOp::Ge: t = -t; break;
  case CmpOp::Gt: t = -t + 1; break;
  }
  if (t.isConstant()) {
    Int c = t.constant();
    switch (rel) {
    case LinRel::Eq: return constant(c == 0);
    case LinRel::Ne: return constant(c != 0);
    case LinRel::Le: return constant(c <= 0);
    }
  }
  Int g = t.coeffGcd();
  Int c = t.constant();
  Atom a;
  a.kind_ = Kind::Lin;
  a.rel_ = rel;
  if (rel == LinRel::Le) {
    a.term_ = divideExact(t, g, ceilDiv(c, g));
    return a;
  }
  if (c % g != 0)
    return constant(rel == LinRel::Ne);
  LinTerm n = divideExact(t, g, c / g);
  if (n.coeffs().begin()->second < 0)
    n = -n;
  a.term_ = n;
  return a;
}

Atom Atom::addrEq(const SymAddr &x, const SymAddr &y) {
  if (x == y)
    return constant(true);
  Atom a;
  a.kind_ = Kind::AddrEq;
  a.a_ = std::min(x, y);
  a.b_ = std::max(x, y);
  return a;
}

Atom Atom::addrNe(const SymAddr &x, const SymAddr &y) {
  if (x == y)
    return constant(false);
  Atom a;
  a.kind_ = Kind::AddrNe;
  a.a_ = std::min(x, y);
  a.b_ = std::max(x, y);
  return a;
}

Atom Atom::negate() const {
  switch (kind_) {
  case Kind::True: return constant(false);
  case Kind::False: return constant(true);
  case Kind::AddrEq: return addrNe(a_, b_);
  case Kind::AddrNe: return addrEq(a_, b_);
  case Kind::Lin:
    switch (rel_) {
    case LinRel::Eq: return cmp(term_, CmpOp::Ne, LinTerm());
    case LinRel::Ne: return cmp(term_, CmpOp::Eq, LinTerm());
    case LinRel::Le: return cmp(term_, CmpOp::Gt, LinTerm());
    }
  }
  return *this;
}

Atom Atom::substitute(const std::map<std::string, LinTerm> &by) const {
  if (kind_ != Kind::Lin)
    return *this;
  CmpOp op = rel_ == LinRel::Eq ? CmpOp::Eq : rel_ == LinRel::Ne ? CmpOp::Ne : CmpOp::Le;
  return cmp(term_.substitute(by), op, LinTerm());
}

Atom Atom::renamed(const std::map<std::string, std::string> &names) const {
  if (kind_ != Kind::Lin)
    return *this;
  CmpOp op = rel_ == LinRel::Eq ? CmpOp::Eq : rel_ == LinRel::Ne ? CmpOp::Ne : CmpOp::Le;
  return cmp(term_.renamed(names), op, LinTerm());
}

std::set<std::string> Atom::symbols() const {
  if (kind_ == Kind::Lin)
    return term_.symbols();
  return {};
}

std::set<SymAddr> Atom::addresses() const {
  std::set<SymAddr> out;
  if (isAddress()) {
    if (!a_.isNull())
      out.insert(a_);
    if (!b_.isNull())
      out.insert(b_);
  }
  return out;
}

std::optional<bool> Atom::evaluate(const Assignment &asg) const {
  switch (kind_) {
  case Kind::True: return true;
  case Kind::False: return false;
  case Kind::AddrEq:
  case Kind::AddrNe: {
    auto x = asg.addrOf(a_), y = asg.addrOf(b_);
    if (!x || !y)
      return std::nullopt;
    return (*x == *y) == (kind_ == Kind::AddrEq);
  }
  case Kind::Lin: {
    auto v = term_.evaluate(asg.ints);
    if (!v)
      return std::nullopt;
    switch (rel_) {
    case LinRel::Eq: return *v == 0;
    case LinRel::Ne: return *v != 0;
    case LinRel::Le: return *v <= 0;
    }
  }
  }
  return std::nullopt;
}

std::string Atom::str() const {
  switch (kind_) {
  case Kind::True: return "true";
  case Kind::False: return "false";
  case Kind::AddrEq: return a_.str() + " = " + b_.str();
  case Kind::AddrNe: return a_.str() + " ≠ " + b_.str();
  case Kind::Lin: break;
  }
  auto [pos, neg] = splitSides(term_);
  Int c = term_.constant();
  if (rel_ == LinRel::Le) {
    Int d = c - 1; // pos + d < neg
    if (pos.isConstant())
      return neg.str() + " > " + std::to_string(d);
    if (neg.isConstant())
      return pos.str() + " < " + std::to_string(-d);
    if (d >= 0)
      return (pos + d).str() + " < " + neg.str();
    return pos.str() + " < " + (neg + (-d)).str();
  }
  const char *rel = rel_ == LinRel::Eq ? " = " : " ≠ ";
  if (neg.isConstant())
    return pos.str() + rel + std::to_string(-c);
  if (c <= 0)
    return pos.str() + rel + (neg + (-c)).str();
  return (pos + c).str() + rel + neg.str();
}

std::string Atom::smtlib() const {
  switch (kind_) {
  case Kind::True: return "true";
  case Kind::False: return "false";
  case Kind::AddrEq: return "(= " + smtAddress(a_) + " " + smtAddress(b_) + ")";
  case Kind::AddrNe: return "(not (= " + smtAddress(a_) + " " + smtAddress(b_) + "))";
  case Kind::Lin: break;
  }
  auto [pos, neg] = splitSides(term_);
  Int c = term_.constant();
  if (rel_ == LinRel::Le) {
    Int d = c - 1;
    if (pos.isConstant())
      return "(> " + smtTerm(neg) + " " + smtTerm(LinTerm(d)) + ")";
    if (neg.isConstant())
      return "(< " + smtTerm(pos) + " " + smtTerm(LinTerm(-d)) + ")";
    if (d >= 0)
      return "(< " + smtTerm(pos + d) + " " + smtTerm(neg) + ")";
    return "(< " + smtTerm(pos) + " " + smtTerm(neg + (-d)) + ")";
  }
  std::string eq;
  if (neg.isConstant())
    eq = "(= " + smtTerm(pos) + " " + smtTerm(LinTerm(-c)) + ")";
  else if (c <= 0)
    eq = "(= " + smtTerm(pos) + " " + smtTerm(neg + (-c)) + ")";
  else
    eq = "(= " + smtTerm(pos + c) + " " + smtTerm(neg) + ")";
  return rel_ == LinRel::Eq ? eq : "(not " + eq + ")";
}

// ---------------------------------------------------------------------------
// Clause

Clause::Clause(std::vector<Atom> atoms) {
  for (auto &a : atoms) {
    if (a.kind() == Atom::Kind::True) {
      tautology_ = true;
      atoms_.clear();
      return;
    }
    if (a.kind() == Atom::Kind::False)
      continue;
    atoms_.push_back(std::move(a));
  }
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
  // x != c together with x = c (or any atom with its negation) is valid.
  for (const auto &a : atoms_) {
    if (std::binary_search(atoms_.begin(), atoms_.end(), a.negate())) {
      tautology_ = true;
      atoms_.clear();
      return;
    }
  }
}

bool Clause::subsumes(const Clause &o) const {
  return std::includes(o.atoms_.begin(), o.atoms_.end(), atoms_.begin(), atoms_.end());
}

Clause Clause::substitute(const std::map<std::string, LinTerm> &by) const {
  if (tautology_)
    return *this;
  std::vector<Atom> out;
  for (const auto &a : atoms_)
    out.push_back(a.substitute(by));
  return Clause(std::move(out));
}

Clause Clause::renamed(const std::map<std::string, std::string> &names) const {
  if (tautology_)
    return *this;
  std::vector<Atom> out;
  for (const auto &a : atoms_)
    out.push_back(a.renamed(names));
  return Clause(std::move(out));
}

std::optional<bool> Clause::evaluate(const Assignment &asg) const {
  if (tautology_)
    return true;
  bool unknown = false;
  for (const auto &a : atoms_) {
    auto v = a.evaluate(asg);
    if (!v)
      unknown = true;
    else if (*v)
      return true;
  }
  if (unknown)
    return std::nullopt;
  return false;
}

std::string Clause::str() const {
  if (tautology_)
    return "true";
  if (atoms_.empty())
    return "false";
  if (atoms_.size() == 1)
    return atoms_.front().str();
  std::string out = "(";
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i)
      out += " ∨ ";
    out += atoms_[i].str();
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Formula

Formula Formula::False() {
  Formula f;
  f.false_ = true;
  return f;
}

Formula Formula::of(std::initializer_list<Atom> atoms) {
  Formula f;
  for (const auto &a : atoms)
    f.add(a);
  return f;
}

Formula &Formula::add(const Atom &atom) { return add(Clause({atom})); }

Formula &Formula::add(const Clause &clause) {
  if (false_ || clause.isTautology())
    return *this;
  if (clause.isEmpty()) {
    false_ = true;
    clauses_.clear();
    return *this;
  }
  for (const auto &c : clauses_)
    if (c.subsumes(clause))
      return *this;
  std::erase_if(clauses_, [&](const Clause &c) { return clause.subsumes(c); });
  clauses_.insert(std::lower_bound(clauses_.begin(), clauses_.end(), clause), clause);
  return *this;
}

Formula &Formula::add(const Formula &other) {
  if (other.false_) {
    false_ = true;
    clauses_.clear();
    return *this;
  }
  for (const auto &c : other.clauses_)
    add(c);
  return *this;
}

Formula Formula::conj(const Atom &atom) const {
  Formula f = *this;
  f.add(atom);
  return f;
}

Formula Formula::conj(const Formula &other) const {
  Formula f = *this;
  f.add(other);
  return f;
}

Formula Formula::substitute(const std::map<std::string, LinTerm> &by) const {
  if (false_)
    return *this;
  Formula f;
  for (const auto &c : clauses_)
    f.add(c.substitute(by));
  return f;
}

Formula Formula::renamed(const std::map<std::string, std::string> &names) const {
  if (false_)
    return *this;
  Formula f;
  for (const auto &c : clauses_)
    f.add(c.renamed(names));
  return f;
}

std::set<std::string> Formula::symbols() const {
  std::set<std::string> out;
  for (const auto &c : clauses_)
    for (const auto &a : c.atoms())
      for (auto &s : a.symbols())
        out.insert(s);
  return out;
}

std::set<SymAddr> Formula::addresses() const {
  std::set<SymAddr> out;
  for (const auto &c : clauses_)
    for (const auto &a : c.atoms())
      for (auto &s : a.addresses())
        out.insert(s);
  return out;
}

std::optional<bool> Formula::evaluate(const Assignment &asg) const {
  if (false_)
    return false;
  bool unknown = false;
  for (const auto &c : clauses_) {
    auto v = c.evaluate(asg);
    if (!v)
      unknown = true;
    else if (!*v)
      return false;
  }
  if (unknown)
    return std::nullopt;
  return true;
}

std::string Formula::str() const {
  if (false_)
    return "false";
  if (clauses_.empty())
    return "true";
  std::string out;
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    if (i)
      out += " ∧ ";
    out += clauses_[i].str();
  }
  return out;
}

} // namespace specsynth
