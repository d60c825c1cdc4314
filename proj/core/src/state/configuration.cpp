#include "specsynth/state/configuration.hpp"

#include <sstream>

namespace specsynth {

Value Value::integer(LinTerm t) {
  Value v;
  v.kind_ = Kind::Int;
  v.term_ = std::move(t);
  return v;
}

Value Value::address(SymAddr a) {
  Value v;
  v.kind_ = Kind::Addr;
  v.addr_ = std::move(a);
  return v;
}

Value Value::substitute(const std::map<std::string, LinTerm> &by) const {
  if (!isInt())
    return *this;
  return integer(term_.substitute(by));
}

std::string Value::str() const {
  switch (kind_) {
  case Kind::Uninit: return "uninit";
  case Kind::Int: return term_.str();
  case Kind::Addr: return addr_.str();
  }
  return "?";
}

std::string envSymbol(const std::string &var) { return "&" + var; }

std::string fieldSymbol(const SymAddr &obj, const std::string &field) { return obj.str() + "." + field; }

Formula stateConstraint(const SymbolicConfiguration &c) {
  Formula f = c.pathCondition;
  for (const auto &[name, v] : c.env)
    if (v.isInt())
      f.add(Atom::cmp(LinTerm::var(envSymbol(name)), CmpOp::Eq, v.term()));
  for (const auto &[addr, obj] : c.heap)
    for (const auto &[field, v] : obj.fields)
      if (v.isInt())
        f.add(Atom::cmp(LinTerm::var(fieldSymbol(addr, field)), CmpOp::Eq, v.term()));
  return f;
}

SymbolicConfiguration recordWrite(SymbolicConfiguration c, const Location &loc) {
  c.locations.insert(loc);
  return c;
}

std::set<std::string> configSymbols(const SymbolicConfiguration &c) {
  std::set<std::string> out = c.pathCondition.symbols();
  auto add = [&](const Value &v) {
    if (v.isInt())
      for (const auto &s : v.term().symbols())
        out.insert(s);
  };
  for (const auto &[n, v] : c.env)
    add(v);
  for (const auto &[a, o] : c.heap)
    for (const auto &[f, v] : o.fields)
      add(v);
  return out;
}

namespace {

std::string renderValue(const SymbolicConfiguration &c, const Value &v) {
  if (v.isAddr() && c.unexplored(v.addr()))
    return "uninit";
  return v.str();
}

std::string renderObject(const SymbolicConfiguration &c, const HeapObject &o, const Program *program) {
  std::ostringstream out;
  out << o.tag << "(";
  bool first = true;
  auto emit = [&](const std::string &f) {
    auto it = o.fields.find(f);
    if (it == o.fields.end())
      return;
    out << (first ? "" : ", ") << f << " |-> " << renderValue(c, it->second);
    first = false;
  };
  const StructDef *sd = program ? program->findStruct(o.tag) : nullptr;
  if (sd)
    for (const auto &[f, t] : sd->fields)
      emit(f);
  else
    for (const auto &[f, v] : o.fields)
      emit(f);
  out << ")";
  return out.str();
}

} // namespace

std::string prettyConfiguration(const SymbolicConfiguration &c, const Program *program) {
  std::ostringstream out;
  out << "<k> ";
  if (c.result)
    out << "return " << renderValue(c, *c.result);
  else
    out << "pc " << c.pc;
  out << " </k>\n<env>";
  for (const auto &[n, v] : c.env)
    out << " " << n << " |-> " << renderValue(c, v);
  out << " </env>\n<heap>";
  for (const auto &[a, o] : c.heap)
    out << " " << a.str() << " |-> " << renderObject(c, o, program);
  out << " </heap>\n<init-heap>";
  for (const auto &[a, o] : c.initHeap) {
    out << " " << a.str() << " |-> ";
    out << (o ? renderObject(c, *o, program) : std::string("NULL"));
  }
  out << " </init-heap>\n<path-condition> " << c.pathCondition.str() << " </path-condition>\n";
  out << "<aSubFlag> " << (c.aSubFlag ? "true" : "false") << " </aSubFlag>\n<locations>";
  for (const auto &l : c.locations)
    out << " " << l.str();
  out << " </locations>";
  return out.str();
}

} // namespace specsynth
