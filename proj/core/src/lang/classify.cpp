#include "specsynth/lang/classify.hpp"

namespace specsynth {

Classification classify(const Program &program) {
  Classification c;
  for (const auto &f : program.functions) {
    c.modifiers.insert(f.name);
    if (f.returnType.kind != Type::Kind::Void)
      c.observers.insert(f.name);
    bool takesStruct = false;
    for (const auto &p : f.params)
      takesStruct = takesStruct || p.type.isPtr();
    if (f.returnType.isPtr() && !takesStruct)
      c.constructors.insert(f.name);
  }
  return c;
}

const Stmt *findStmt(const FunctionDef &fn, int id) {
  const Stmt *found = nullptr;
  forEachStmt(*fn.body, [&](const Stmt &s) {
    if (s.id == id)
      found = &s;
  });
  return found;
}

namespace {

void readsOfExpr(const Expr &e, std::set<std::string> &out) {
  forEachExpr(e, [&](const Expr &x) {
    if (x.kind == Expr::Kind::Var)
      out.insert(x.name);
  });
}

void readsOfStmt(const Stmt &s, std::set<std::string> &out) {
  forEachStmt(s, [&](const Stmt &x) {
    if (x.expr)
      readsOfExpr(*x.expr, out);
    if (x.target)
      readsOfExpr(*x.target, out);
  });
}

// Collects reads of everything that may run after reaching `id` inside
// `s`; returns true once `id` has been located.
bool collect(const Stmt &s, int id, std::set<std::string> &out) {
  if (s.id == id) {
    readsOfStmt(s, out);
    return true;
  }
  switch (s.kind) {
  case Stmt::Kind::Block:
    for (std::size_t i = 0; i < s.stmts.size(); ++i)
      if (collect(*s.stmts[i], id, out)) {
        for (std::size_t j = i + 1; j < s.stmts.size(); ++j)
          readsOfStmt(*s.stmts[j], out);
        return true;
      }
    return false;
  case Stmt::Kind::If:
    return collect(*s.thenS, id, out) || (s.elseS && collect(*s.elseS, id, out));
  case Stmt::Kind::While:
    if (collect(*s.thenS, id, out)) {
      readsOfStmt(s, out);
      return true;
    }
    return false;
  default:
    return false;
  }
}

} // namespace

std::set<std::string> variablesUsedFrom(const FunctionDef &fn, int id) {
  std::set<std::string> out;
  collect(*fn.body, id, out);
  return out;
}

} // namespace specsynth
