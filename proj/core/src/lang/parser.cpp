#include "specsynth/lang/parser.hpp"

#include "lexer.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace specsynth {

std::string Diagnostic::str() const {
  std::ostringstream out;
  out << "line " << line;
  if (column > 0)
    out << ':' << column;
  out << ": " << (isError() ? "error" : "warning") << ": " << message;
  return out.str();
}

std::string ParseResult::errorText() const {
  std::string out;
  for (const auto &d : diagnostics)
    if (d.isError())
      out += d.str() + "\n";
  return out;
}

namespace {

using detail::Tok;
using detail::Token;

struct ParseError {
  Diagnostic diag;
};

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program parseProgram() {
    Program p;
    while (peek().kind != Tok::End) {
      if (isKw("struct") && peek(2).text == "{") {
        p.structs.push_back(parseStruct());
      } else {
        p.functions.push_back(parseFunction());
      }
    }
    return p;
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token &peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool isKw(const char *kw, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Keyword && peek(ahead).text == kw;
  }
  bool isPunct(const char *p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
  }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1)
      ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token &at, const std::string &msg) const {
    throw ParseError{{Diagnostic::Severity::Error, at.line, at.column, msg}};
  }
  [[noreturn]] void unexpected(const std::string &wanted) const {
    const Token &t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    fail(t, "syntax error: expected " + wanted + ", found " + got);
  }

  void expectPunct(const char *p) {
    if (!isPunct(p))
      unexpected(std::string("'") + p + "'");
    next();
  }
  std::string expectIdent(const char *what) {
    if (peek().kind != Tok::Ident) {
      rejectUnsupported();
      unexpected(what);
    }
    return next().text;
  }

  // Diagnoses tokens that start constructs outside the dialect.
  void rejectUnsupported() const {
    const Token &t = peek();
    static const std::map<std::string, std::string> kw = {
        {"for", "for loops"},         {"do", "do-while loops"},   {"switch", "switch statements"},
        {"goto", "goto"},             {"break", "break"},         {"continue", "continue"},
        {"union", "unions"},          {"typedef", "typedef"},     {"enum", "enums"},
        {"char", "type 'char'"},      {"long", "type 'long'"},    {"unsigned", "type 'unsigned'"},
        {"float", "floating point"},  {"double", "floating point"}, {"static", "storage classes"},
        {"const", "qualifiers"}};
    static const std::map<std::string, std::string> punct = {
        {"[", "arrays"}, {"&", "address-of"}, {"/", "division"}, {"%", "remainder"},
        {"++", "increment/decrement"}, {"--", "increment/decrement"}, {"+=", "compound assignment"},
        {"-=", "compound assignment"}, {"*=", "compound assignment"}, {"/=", "compound assignment"}};
    if (t.kind == Tok::Keyword) {
      auto it = kw.find(t.text);
      if (it != kw.end())
        fail(t, "unsupported construct: " + it->second);
    }
    if (t.kind == Tok::Punct) {
      auto it = punct.find(t.text);
      if (it != punct.end())
        fail(t, "unsupported construct: " + it->second);
    }
  }

  bool atType() const { return isKw("int") || isKw("void") || isKw("struct"); }

  Type parseType(bool allowVoid) {
    rejectUnsupported();
    const Token &t = peek();
    if (isKw("int")) {
      next();
      if (isPunct("*"))
        fail(peek(), "unsupported construct: pointers to int");
      return Type::intT();
    }
    if (isKw("void")) {
      next();
      if (isPunct("*"))
        fail(peek(), "unsupported construct: void pointers");
      if (!allowVoid)
        fail(t, "type mismatch: void is only allowed as a return type");
      return Type::voidT();
    }
    if (isKw("struct")) {
      next();
      std::string tag = expectIdent("struct name");
      if (!isPunct("*"))
        fail(peek(), "unsupported construct: struct values (only struct pointers are supported)");
      next();
      if (isPunct("*"))
        fail(peek(), "unsupported construct: pointers to pointers");
      return Type::ptr(tag);
    }
    unexpected("a type");
  }

  StructDef parseStruct() {
    StructDef s;
    s.line = peek().line;
    next(); // struct
    s.name = expectIdent("struct name");
    expectPunct("{");
    while (!isPunct("}")) {
      Type t = parseType(false);
      std::string name = expectIdent("field name");
      if (isPunct("["))
        rejectUnsupported();
      expectPunct(";");
      s.fields.emplace_back(name, t);
    }
    expectPunct("}");
    expectPunct(";");
    return s;
  }

  FunctionDef parseFunction() {
    FunctionDef f;
    f.line = peek().line;
    f.returnType = parseType(true);
    f.name = expectIdent("function name");
    expectPunct("(");
    if (isKw("void") && isPunct(")", 1)) {
      next();
    } else if (!isPunct(")")) {
      for (;;) {
        Param p;
        p.type = parseType(false);
        p.name = expectIdent("parameter name");
        f.params.push_back(p);
        if (!isPunct(","))
          break;
        next();
      }
    }
    expectPunct(")");
    if (!isPunct("{"))
      unexpected("'{'");
    f.body = parseBlock();
    return f;
  }

  StmtPtr make(Stmt::Kind k, int line) {
    auto s = std::make_shared<Stmt>();
    s->kind = k;
    s->line = line;
    return s;
  }

  StmtPtr parseBlock() {
    auto b = make(Stmt::Kind::Block, peek().line);
    expectPunct("{");
    while (!isPunct("}")) {
      if (peek().kind == Tok::End)
        unexpected("'}'");
      b->stmts.push_back(parseStmt());
    }
    next();
    return b;
  }

  StmtPtr parseStmt() {
    rejectUnsupported();
    int line = peek().line;
    if (isPunct("{"))
      return parseBlock();
    if (atType()) {
      auto s = make(Stmt::Kind::Decl, line);
      s->declType = parseType(false);
      s->name = expectIdent("variable name");
      if (isPunct("["))
        rejectUnsupported();
      if (isPunct("=")) {
        next();
        s->expr = parseExpr();
      }
      if (isPunct(","))
        fail(peek(), "unsupported construct: multiple declarators");
      expectPunct(";");
      return s;
    }
    if (isKw("if")) {
      next();
      auto s = make(Stmt::Kind::If, line);
      expectPunct("(");
      s->expr = parseExpr();
      expectPunct(")");
      s->thenS = parseStmt();
      if (isKw("else")) {
        next();
        s->elseS = parseStmt();
      }
      return s;
    }
    if (isKw("while")) {
      next();
      auto s = make(Stmt::Kind::While, line);
      expectPunct("(");
      s->expr = parseExpr();
      expectPunct(")");
      s->thenS = parseStmt();
      return s;
    }
    if (isKw("return")) {
      next();
      auto s = make(Stmt::Kind::Return, line);
      if (!isPunct(";"))
        s->expr = parseExpr();
      expectPunct(";");
      return s;
    }
    ExprPtr e = parseExpr();
    rejectUnsupported();
    if (isPunct("=")) {
      Token eq = next();
      ExprPtr rhs = parseExpr();
      expectPunct(";");
      if (e->kind == Expr::Kind::Var) {
        auto s = make(Stmt::Kind::Assign, line);
        s->name = e->name;
        s->expr = rhs;
        return s;
      }
      if (e->kind == Expr::Kind::Field) {
        auto s = make(Stmt::Kind::FieldWrite, line);
        s->target = e;
        s->expr = rhs;
        return s;
      }
      fail(eq, "syntax error: left side of '=' is not assignable");
    }
    expectPunct(";");
    auto s = make(Stmt::Kind::ExprStmt, line);
    s->expr = e;
    return s;
  }

  ExprPtr node(Expr::Kind k, int line) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->line = line;
    return e;
  }

  ExprPtr binary(BinOp op, ExprPtr l, ExprPtr r, int line) {
    auto e = node(Expr::Kind::Binary, line);
    e->bop = op;
    e->args = {std::move(l), std::move(r)};
    return e;
  }

  ExprPtr parseExpr() { return parseOr(); }

  ExprPtr parseOr() {
    ExprPtr l = parseAnd();
    while (isPunct("||")) {
      int line = next().line;
      l = binary(BinOp::Or, l, parseAnd(), line);
    }
    return l;
  }
  ExprPtr parseAnd() {
    ExprPtr l = parseEquality();
    while (isPunct("&&")) {
      int line = next().line;
      l = binary(BinOp::And, l, parseEquality(), line);
    }
    return l;
  }
  ExprPtr parseEquality() {
    ExprPtr l = parseRelational();
    while (isPunct("==") || isPunct("!=")) {
      Token t = next();
      l = binary(t.text == "==" ? BinOp::Eq : BinOp::Ne, l, parseRelational(), t.line);
    }
    return l;
  }
  ExprPtr parseRelational() {
    ExprPtr l = parseAdditive();
    for (;;) {
      BinOp op;
      if (isPunct("<"))
        op = BinOp::Lt;
      else if (isPunct("<="))
        op = BinOp::Le;
      else if (isPunct(">"))
        op = BinOp::Gt;
      else if (isPunct(">="))
        op = BinOp::Ge;
      else
        return l;
      int line = next().line;
      l = binary(op, l, parseAdditive(), line);
    }
  }
  ExprPtr parseAdditive() {
    ExprPtr l = parseMultiplicative();
    while (isPunct("+") || isPunct("-")) {
      Token t = next();
      l = binary(t.text == "+" ? BinOp::Add : BinOp::Sub, l, parseMultiplicative(), t.line);
    }
    return l;
  }
  ExprPtr parseMultiplicative() {
    ExprPtr l = parseUnary();
    for (;;) {
      if (isPunct("/") || isPunct("%"))
        rejectUnsupported();
      if (!isPunct("*"))
        return l;
      int line = next().line;
      l = binary(BinOp::Mul, l, parseUnary(), line);
    }
  }
  ExprPtr parseUnary() {
    rejectUnsupported();
    if (isPunct("!") || isPunct("-")) {
      Token t = next();
      auto e = node(Expr::Kind::Unary, t.line);
      e->uop = t.text == "!" ? UnOp::Not : UnOp::Neg;
      e->args = {parseUnary()};
      return e;
    }
    if (isPunct("*"))
      fail(peek(), "unsupported construct: pointer dereference (use '->')");
    return parsePostfix();
  }
  ExprPtr parsePostfix() {
    ExprPtr e = parsePrimary();
    for (;;) {
      if (isPunct("->")) {
        int line = next().line;
        auto f = node(Expr::Kind::Field, line);
        f->name = expectIdent("field name");
        f->args = {e};
        e = f;
        continue;
      }
      if (isPunct("[") || isPunct("++") || isPunct("--"))
        rejectUnsupported();
      return e;
    }
  }
  ExprPtr parsePrimary() {
    rejectUnsupported();
    const Token t = peek();
    if (t.kind == Tok::Number) {
      next();
      auto e = node(Expr::Kind::IntLit, t.line);
      e->value = t.value;
      return e;
    }
    if (isKw("NULL")) {
      next();
      return node(Expr::Kind::Null, t.line);
    }
    if (isKw("sizeof"))
      fail(t, "unsupported construct: sizeof outside malloc");
    if (isPunct("(")) {
      if (atTypeAt(1))
        fail(t, "unsupported construct: casts");
      next();
      ExprPtr e = parseExpr();
      expectPunct(")");
      return e;
    }
    if (t.kind == Tok::Ident) {
      next();
      if (t.text == "malloc" && isPunct("("))
        return parseMalloc(t);
      if (isPunct("(")) {
        next();
        auto e = node(Expr::Kind::Call, t.line);
        e->name = t.text;
        if (!isPunct(")")) {
          for (;;) {
            e->args.push_back(parseExpr());
            if (!isPunct(","))
              break;
            next();
          }
        }
        expectPunct(")");
        return e;
      }
      auto e = node(Expr::Kind::Var, t.line);
      e->name = t.text;
      return e;
    }
    unexpected("an expression");
  }
  bool atTypeAt(std::size_t ahead) const {
    return isKw("int", ahead) || isKw("void", ahead) || isKw("struct", ahead) || isKw("char", ahead) ||
           isKw("long", ahead) || isKw("unsigned", ahead);
  }
  ExprPtr parseMalloc(const Token &at) {
    // malloc ( sizeof ( struct T ) )
    auto bad = [&] { fail(at, "unsupported construct: malloc argument other than sizeof(struct T)"); };
    next();
    if (!isKw("sizeof"))
      bad();
    next();
    if (!isPunct("("))
      bad();
    next();
    if (!isKw("struct"))
      bad();
    next();
    if (peek().kind != Tok::Ident)
      bad();
    std::string tag = next().text;
    if (!isPunct(")"))
      bad();
    next();
    if (!isPunct(")"))
      bad();
    next();
    auto e = node(Expr::Kind::Alloc, at.line);
    e->name = tag;
    return e;
  }
};

// ---------------------------------------------------------------------------
// Checker

class Checker {
public:
  Checker(Program &p, std::vector<Diagnostic> &diags) : p_(p), diags_(diags) {}

  void run() {
    std::set<std::string> names;
    for (const auto &s : p_.structs) {
      if (!names.insert(s.name).second)
        error(s.line, "duplicate struct '" + s.name + "'");
      if (s.fields.empty())
        error(s.line, "struct '" + s.name + "' has no fields");
      std::set<std::string> fields;
      for (const auto &[n, t] : s.fields) {
        if (!fields.insert(n).second)
          error(s.line, "duplicate field '" + n + "' in struct '" + s.name + "'");
        checkTypeExists(t, s.line);
      }
    }
    std::set<std::string> fnames;
    for (const auto &f : p_.functions)
      if (!fnames.insert(f.name).second)
        error(f.line, "duplicate function '" + f.name + "'");
    for (auto &f : p_.functions)
      checkFunction(f);
  }

private:
  Program &p_;
  std::vector<Diagnostic> &diags_;
  FunctionDef *fn_ = nullptr;
  std::set<std::string> declared_;

  void error(int line, std::string msg) { diags_.push_back({Diagnostic::Severity::Error, line, 0, std::move(msg)}); }

  void checkTypeExists(const Type &t, int line) {
    if (t.isPtr() && !p_.findStruct(t.tag))
      error(line, "unknown identifier: struct '" + t.tag + "'");
  }

  void checkFunction(FunctionDef &f) {
    fn_ = &f;
    declared_.clear();
    checkTypeExists(f.returnType, f.line);
    for (const auto &prm : f.params) {
      checkTypeExists(prm.type, f.line);
      if (!declared_.insert(prm.name).second)
        error(f.line, "duplicate parameter '" + prm.name + "' in '" + f.name + "'");
    }
    checkStmt(*f.body);
  }

  void requireInt(const Expr &e, const char *what) {
    if (!e.type.isInt())
      error(e.line, std::string("type mismatch: ") + what + " must be int, found " + e.type.str());
  }

  void checkStmt(Stmt &s) {
    switch (s.kind) {
    case Stmt::Kind::Block:
      for (auto &c : s.stmts)
        checkStmt(*c);
      break;
    case Stmt::Kind::Decl:
      checkTypeExists(s.declType, s.line);
      if (s.expr) {
        checkExpr(*s.expr);
        assignable(s.declType, *s.expr, s.line);
      }
      if (!declared_.insert(s.name).second)
        error(s.line, "duplicate declaration of '" + s.name + "'");
      fn_->locals[s.name] = s.declType;
      break;
    case Stmt::Kind::Assign: {
      checkExpr(*s.expr);
      auto t = varType(s.name, s.line);
      if (t)
        assignable(*t, *s.expr, s.line);
      break;
    }
    case Stmt::Kind::FieldWrite:
      checkExpr(*s.target);
      checkExpr(*s.expr);
      assignable(s.target->type, *s.expr, s.line);
      break;
    case Stmt::Kind::If:
    case Stmt::Kind::While:
      checkExpr(*s.expr);
      requireInt(*s.expr, "condition");
      checkStmt(*s.thenS);
      if (s.elseS)
        checkStmt(*s.elseS);
      break;
    case Stmt::Kind::Return:
      if (fn_->returnType.kind == Type::Kind::Void) {
        if (s.expr)
          error(s.line, "type mismatch: void function '" + fn_->name + "' returns a value");
      } else if (!s.expr) {
        error(s.line, "type mismatch: function '" + fn_->name + "' must return a value");
      } else {
        checkExpr(*s.expr);
        assignable(fn_->returnType, *s.expr, s.line);
      }
      break;
    case Stmt::Kind::ExprStmt:
      checkExpr(*s.expr);
      break;
    }
  }

  void assignable(const Type &slot, const Expr &e, int line) {
    if (e.type.kind == Type::Kind::Void && slot.kind != Type::Kind::Void) {
      error(line, "type mismatch: void value used");
      return;
    }
    if (!slot.accepts(e.type))
      error(line, "type mismatch: cannot assign " + e.type.str() + " to " + slot.str());
  }

  std::optional<Type> varType(const std::string &name, int line) {
    if (!declared_.count(name)) {
      error(line, "unknown identifier '" + name + "'");
      return std::nullopt;
    }
    return fn_->varType(name);
  }

  void checkExpr(Expr &e) {
    for (auto &a : e.args)
      checkExpr(*a);
    switch (e.kind) {
    case Expr::Kind::IntLit: e.type = Type::intT(); break;
    case Expr::Kind::Null: e.type = Type::nullT(); break;
    case Expr::Kind::Var: e.type = varType(e.name, e.line).value_or(Type::intT()); break;
    case Expr::Kind::Alloc:
      if (!p_.findStruct(e.name))
        error(e.line, "unknown identifier: struct '" + e.name + "'");
      e.type = Type::ptr(e.name);
      break;
    case Expr::Kind::Field: {
      const Type &bt = e.operand().type;
      e.type = Type::intT();
      if (!bt.isPtr()) {
        error(e.line, "type mismatch: '->" + e.name + "' applied to " + bt.str());
        break;
      }
      const StructDef *sd = p_.findStruct(bt.tag);
      const Type *ft = sd ? sd->fieldType(e.name) : nullptr;
      if (!ft) {
        error(e.line, "unknown identifier: field '" + e.name + "' of struct '" + bt.tag + "'");
        break;
      }
      e.type = *ft;
      break;
    }
    case Expr::Kind::Unary:
      requireInt(e.operand(), "operand");
      e.type = Type::intT();
      break;
    case Expr::Kind::Binary: {
      const Type &l = e.operand(0).type, &r = e.operand(1).type;
      e.type = Type::intT();
      switch (e.bop) {
      case BinOp::Add:
      case BinOp::Sub:
      case BinOp::Mul:
        if (l.isPointerLike() || r.isPointerLike()) {
          error(e.line, "unsupported construct: pointer arithmetic");
          break;
        }
        requireInt(e.operand(0), "operand");
        requireInt(e.operand(1), "operand");
        break;
      case BinOp::Eq:
      case BinOp::Ne:
        if (l.isPointerLike() || r.isPointerLike()) {
          bool ok = (l.kind == Type::Kind::Null || r.kind == Type::Kind::Null) ? l.isPointerLike() && r.isPointerLike()
                                                                               : l == r;
          if (!ok)
            error(e.line, "type mismatch: cannot compare " + l.str() + " with " + r.str());
        } else {
          requireInt(e.operand(0), "operand");
          requireInt(e.operand(1), "operand");
        }
        break;
      default:
        requireInt(e.operand(0), "operand");
        requireInt(e.operand(1), "operand");
        break;
      }
      break;
    }
    case Expr::Kind::Call: {
      const FunctionDef *callee = p_.findFunction(e.name);
      if (!callee) {
        error(e.line, "unknown identifier: function '" + e.name + "'");
        e.type = Type::intT();
        break;
      }
      e.type = callee->returnType;
      if (callee->params.size() != e.args.size()) {
        error(e.line, "type mismatch: '" + e.name + "' expects " + std::to_string(callee->params.size()) +
                          " arguments, got " + std::to_string(e.args.size()));
        break;
      }
      for (std::size_t i = 0; i < e.args.size(); ++i)
        assignable(callee->params[i].type, *e.args[i], e.line);
      break;
    }
    }
  }
};

void assignIds(Program &p) {
  int next = 1;
  for (auto &f : p.functions) {
    std::function<void(Stmt &)> walk = [&](Stmt &s) {
      s.id = next++;
      f.sourceLines[s.id] = s.line;
      if (s.thenS)
        walk(*s.thenS);
      if (s.elseS)
        walk(*s.elseS);
      for (auto &c : s.stmts)
        walk(*c);
    };
    walk(*f.body);
  }
}

} // namespace

ParseResult parseProgram(std::string_view source) {
  ParseResult r;
  auto toks = detail::lex(source, r.diagnostics);
  for (const auto &d : r.diagnostics)
    if (d.isError())
      return r;
  Program p;
  try {
    p = Parser(std::move(toks)).parseProgram();
  } catch (const ParseError &e) {
    r.diagnostics.push_back(e.diag);
    return r;
  }
  Checker(p, r.diagnostics).run();
  for (const auto &d : r.diagnostics)
    if (d.isError())
      return r;
  assignIds(p);
  r.program = std::move(p);
  return r;
}

ParseResult parseFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ParseResult r;
    r.diagnostics.push_back({Diagnostic::Severity::Error, 0, 0, "cannot open file '" + path + "'"});
    return r;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parseProgram(ss.str());
}

// ---------------------------------------------------------------------------
// Printer

namespace {

int precedence(const Expr &e) {
  switch (e.kind) {
  case Expr::Kind::Binary:
    switch (e.bop) {
    case BinOp::Or: return 1;
    case BinOp::And: return 2;
    case BinOp::Eq:
    case BinOp::Ne: return 3;
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge: return 4;
    case BinOp::Add:
    case BinOp::Sub: return 5;
    case BinOp::Mul: return 6;
    }
    return 0;
  case Expr::Kind::Unary: return 7;
  default: return 8;
  }
}

void printExprTo(std::ostream &out, const Expr &e) {
  auto sub = [&](const Expr &c, bool parens) {
    if (parens)
      out << '(';
    printExprTo(out, c);
    if (parens)
      out << ')';
  };
  switch (e.kind) {
  case Expr::Kind::IntLit: out << e.value; break;
  case Expr::Kind::Null: out << "NULL"; break;
  case Expr::Kind::Var: out << e.name; break;
  case Expr::Kind::Alloc: out << "malloc(sizeof(struct " << e.name << "))"; break;
  case Expr::Kind::Field:
    sub(e.operand(), precedence(e.operand()) < 8);
    out << "->" << e.name;
    break;
  case Expr::Kind::Unary:
    out << opText(e.uop);
    sub(e.operand(), precedence(e.operand()) < 7 || e.operand().kind == Expr::Kind::Unary);
    break;
  case Expr::Kind::Binary: {
    int p = precedence(e);
    sub(e.operand(0), precedence(e.operand(0)) < p);
    out << ' ' << opText(e.bop) << ' ';
    sub(e.operand(1), precedence(e.operand(1)) <= p);
    break;
  }
  case Expr::Kind::Call:
    out << e.name << '(';
    for (std::size_t i = 0; i < e.args.size(); ++i) {
      if (i)
        out << ", ";
      printExprTo(out, *e.args[i]);
    }
    out << ')';
    break;
  }
}

std::string typePrefix(const Type &t) {
  return t.isPtr() ? "struct " + t.tag + " *" : t.str() + " ";
}

void printStmt(std::ostream &out, const Stmt &s, int indent) {
  std::string pad;
  auto nested = [&](const Stmt &c) {
    if (c.kind == Stmt::Kind::Block) {
      out << " ";
      printStmt(out, c, -indent - 1); // opening brace continues the line
    } else {
      out << "\n";
      printStmt(out, c, indent + 1);
    }
  };
  bool inlineOpen = indent < 0;
  if (inlineOpen)
    indent = -indent - 1;
  pad.assign(indent * 2, ' ');
  switch (s.kind) {
  case Stmt::Kind::Block:
    out << (inlineOpen ? "" : pad) << "{\n";
    for (const auto &c : s.stmts) {
      printStmt(out, *c, indent + 1);
      out << "\n";
    }
    out << pad << "}";
    break;
  case Stmt::Kind::Decl:
    out << pad << typePrefix(s.declType) << s.name;
    if (s.expr) {
      out << " = ";
      printExprTo(out, *s.expr);
    }
    out << ";";
    break;
  case Stmt::Kind::Assign:
    out << pad << s.name << " = ";
    printExprTo(out, *s.expr);
    out << ";";
    break;
  case Stmt::Kind::FieldWrite:
    out << pad;
    printExprTo(out, *s.target);
    out << " = ";
    printExprTo(out, *s.expr);
    out << ";";
    break;
  case Stmt::Kind::If:
    out << pad << "if (";
    printExprTo(out, *s.expr);
    out << ")";
    nested(*s.thenS);
    if (s.elseS) {
      out << (s.thenS->kind == Stmt::Kind::Block ? " " : "\n" + pad) << "else";
      nested(*s.elseS);
    }
    break;
  case Stmt::Kind::While:
    out << pad << "while (";
    printExprTo(out, *s.expr);
    out << ")";
    nested(*s.thenS);
    break;
  case Stmt::Kind::Return:
    out << pad << "return";
    if (s.expr) {
      out << " ";
      printExprTo(out, *s.expr);
    }
    out << ";";
    break;
  case Stmt::Kind::ExprStmt:
    out << pad;
    printExprTo(out, *s.expr);
    out << ";";
    break;
  }
}

} // namespace

std::string printExpr(const Expr &e) {
  std::ostringstream out;
  printExprTo(out, e);
  return out.str();
}

std::string printProgram(const Program &p) {
  std::ostringstream out;
  bool first = true;
  for (const auto &s : p.structs) {
    if (!first)
      out << "\n";
    first = false;
    out << "struct " << s.name << " {\n";
    for (const auto &[n, t] : s.fields)
      out << "  " << typePrefix(t) << n << ";\n";
    out << "};\n";
  }
  for (const auto &f : p.functions) {
    if (!first)
      out << "\n";
    first = false;
    out << typePrefix(f.returnType) << f.name << "(";
    if (f.params.empty())
      out << "void";
    for (std::size_t i = 0; i < f.params.size(); ++i) {
      if (i)
        out << ", ";
      out << typePrefix(f.params[i].type) << f.params[i].name;
    }
    out << ") ";
    printStmt(out, *f.body, -1);
    out << "\n";
  }
  return out.str();
}

} // namespace specsynth
