#include "specsynth/lang/ast.hpp"

#include <functional>
#include <stdexcept>

namespace specsynth {

bool Type::accepts(const Type &from) const {
  if (kind == Kind::Ptr)
    return from.kind == Kind::Null || (from.kind == Kind::Ptr && from.tag == tag);
  return *this == from;
}

std::string Type::str() const {
  switch (kind) {
  case Kind::Int: return "int";
  case Kind::Void: return "void";
  case Kind::Null: return "NULL";
  case Kind::Ptr: return "struct " + tag + " *";
  }
  return "?";
}

const char *opText(UnOp op) { return op == UnOp::Not ? "!" : "-"; }

const char *opText(BinOp op) {
  switch (op) {
  case BinOp::Add: return "+";
  case BinOp::Sub: return "-";
  case BinOp::Mul: return "*";
  case BinOp::Eq: return "==";
  case BinOp::Ne: return "!=";
  case BinOp::Lt: return "<";
  case BinOp::Le: return "<=";
  case BinOp::Gt: return ">";
  case BinOp::Ge: return ">=";
  case BinOp::And: return "&&";
  case BinOp::Or: return "||";
  }
  return "?";
}

const Type *StructDef::fieldType(const std::string &field) const {
  for (const auto &[n, t] : fields)
    if (n == field)
      return &t;
  return nullptr;
}

std::vector<std::string> StructDef::selfFields() const {
  std::vector<std::string> out;
  for (const auto &[n, t] : fields)
    if (t.isPtr() && t.tag == name)
      out.push_back(n);
  return out;
}

std::optional<Type> FunctionDef::varType(const std::string &v) const {
  for (const auto &p : params)
    if (p.name == v)
      return p.type;
  auto it = locals.find(v);
  if (it != locals.end())
    return it->second;
  return std::nullopt;
}

const StructDef *Program::findStruct(const std::string &n) const {
  for (const auto &s : structs)
    if (s.name == n)
      return &s;
  return nullptr;
}

const FunctionDef *Program::findFunction(const std::string &n) const {
  for (const auto &f : functions)
    if (f.name == n)
      return &f;
  return nullptr;
}

const StructDef &Program::structDef(const std::string &n) const {
  if (auto s = findStruct(n))
    return *s;
  throw std::out_of_range("unknown struct '" + n + "'");
}

const FunctionDef &Program::function(const std::string &n) const {
  if (auto f = findFunction(n))
    return *f;
  throw std::out_of_range("unknown function '" + n + "'");
}

namespace {

bool sameExpr(const ExprPtr &a, const ExprPtr &b) {
  if (!a || !b)
    return !a && !b;
  if (a->kind != b->kind || a->value != b->value || a->name != b->name || a->args.size() != b->args.size())
    return false;
  if (a->kind == Expr::Kind::Unary && a->uop != b->uop)
    return false;
  if (a->kind == Expr::Kind::Binary && a->bop != b->bop)
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!sameExpr(a->args[i], b->args[i]))
      return false;
  return true;
}

bool sameStmt(const StmtPtr &a, const StmtPtr &b) {
  if (!a || !b)
    return !a && !b;
  if (a->kind != b->kind || a->name != b->name || !(a->declType == b->declType) ||
      a->stmts.size() != b->stmts.size())
    return false;
  if (!sameExpr(a->target, b->target) || !sameExpr(a->expr, b->expr) || !sameStmt(a->thenS, b->thenS) ||
      !sameStmt(a->elseS, b->elseS))
    return false;
  for (std::size_t i = 0; i < a->stmts.size(); ++i)
    if (!sameStmt(a->stmts[i], b->stmts[i]))
      return false;
  return true;
}

} // namespace

bool sameStructure(const Program &a, const Program &b) {
  if (a.structs.size() != b.structs.size() || a.functions.size() != b.functions.size())
    return false;
  for (std::size_t i = 0; i < a.structs.size(); ++i)
    if (a.structs[i].name != b.structs[i].name || a.structs[i].fields != b.structs[i].fields)
      return false;
  for (std::size_t i = 0; i < a.functions.size(); ++i) {
    const auto &f = a.functions[i], &g = b.functions[i];
    if (f.name != g.name || !(f.returnType == g.returnType) || f.params.size() != g.params.size())
      return false;
    for (std::size_t j = 0; j < f.params.size(); ++j)
      if (f.params[j].name != g.params[j].name || !(f.params[j].type == g.params[j].type))
        return false;
    if (!sameStmt(f.body, g.body))
      return false;
  }
  return true;
}

void forEachStmt(const Stmt &root, const std::function<void(const Stmt &)> &fn) {
  fn(root);
  if (root.thenS)
    forEachStmt(*root.thenS, fn);
  if (root.elseS)
    forEachStmt(*root.elseS, fn);
  for (const auto &s : root.stmts)
    forEachStmt(*s, fn);
}

void forEachExpr(const Expr &root, const std::function<void(const Expr &)> &fn) {
  fn(root);
  for (const auto &a : root.args)
    forEachExpr(*a, fn);
}

} // namespace specsynth
