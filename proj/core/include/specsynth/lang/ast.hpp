#pragma once

#include "specsynth/constraints/terms.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace specsynth {

struct Type {
  enum class Kind { Int, Void, Ptr, Null };
  Kind kind = Kind::Int;
  std::string tag; // struct name for Ptr

  static Type intT() { return {Kind::Int, {}}; }
  static Type voidT() { return {Kind::Void, {}}; }
  static Type nullT() { return {Kind::Null, {}}; }
  static Type ptr(std::string tag) { return {Kind::Ptr, std::move(tag)}; }

  bool isInt() const { return kind == Kind::Int; }
  bool isPtr() const { return kind == Kind::Ptr; }
  bool isPointerLike() const { return kind == Kind::Ptr || kind == Kind::Null; }
  /// Whether a value of type `from` may be stored in a slot of this type.
  bool accepts(const Type &from) const;
  std::string str() const;
  bool operator==(const Type &) const = default;
};

enum class UnOp { Not, Neg };
enum class BinOp { Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

const char *opText(UnOp op);
const char *opText(BinOp op);

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
  enum class Kind { IntLit, Null, Var, Field, Alloc, Unary, Binary, Call };
  Kind kind = Kind::IntLit;
  int line = 0;
  Int value = 0;       // IntLit
  std::string name;    // Var, Field (field name), Alloc (struct tag), Call
  UnOp uop = UnOp::Not;
  BinOp bop = BinOp::Add;
  std::vector<ExprPtr> args; // Field base, Unary operand, Binary operands, Call arguments
  Type type;                 // filled by the checker

  const Expr &operand(std::size_t i = 0) const { return *args.at(i); }
};

struct Stmt;
using StmtPtr = std::shared_ptr<Stmt>;

struct Stmt {
  enum class Kind { Decl, Assign, FieldWrite, If, While, Return, ExprStmt, Block };
  Kind kind = Kind::Block;
  int id = 0; // program counter, unique and increasing in source order
  int line = 0;
  Type declType;          // Decl
  std::string name;       // Decl, Assign target
  ExprPtr target;         // FieldWrite: the Field expression written
  ExprPtr expr;           // initializer, rhs, condition, return value
  StmtPtr thenS, elseS;   // If branches; While body is thenS
  std::vector<StmtPtr> stmts; // Block
};

struct StructDef {
  std::string name;
  std::vector<std::pair<std::string, Type>> fields;
  int line = 0;

  const Type *fieldType(const std::string &field) const;
  /// Pointer fields whose target is this same struct.
  std::vector<std::string> selfFields() const;
};

struct Param {
  std::string name;
  Type type;
};

struct FunctionDef {
  std::string name;
  Type returnType;
  std::vector<Param> params;
  StmtPtr body;
  int line = 0;
  std::map<int, int> sourceLines; // statement id -> line
  std::map<std::string, Type> locals; // declared locals (names are unique per function)

  std::optional<Type> varType(const std::string &name) const;
};

struct Program {
  std::vector<StructDef> structs;
  std::vector<FunctionDef> functions;

  const StructDef *findStruct(const std::string &name) const;
  const FunctionDef *findFunction(const std::string &name) const;
  const StructDef &structDef(const std::string &name) const; // throws if absent
  const FunctionDef &function(const std::string &name) const;
};

/// Structural equality ignoring source lines and statement ids.
bool sameStructure(const Program &a, const Program &b);

/// Pre-order walk over every statement of a body.
void forEachStmt(const Stmt &root, const std::function<void(const Stmt &)> &fn);
void forEachExpr(const Expr &root, const std::function<void(const Expr &)> &fn);

} // namespace specsynth
