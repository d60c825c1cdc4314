#include "specsynth/concrete/interpreter.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace specsynth {

std::string CValue::str() const {
  switch (kind) {
  case Kind::Int: return std::to_string(value);
  case Kind::Ref: return "#" + std::to_string(value);
  case Kind::Null: return "NULL";
  }
  return "?";
}

const char *toString(ConcreteResult::Status s) {
  switch (s) {
  case ConcreteResult::Status::Ok: return "ok";
  case ConcreteResult::Status::NullDeref: return "nullDeref";
  case ConcreteResult::Status::StepLimit: return "stepLimit";
  }
  return "?";
}

Int ConcreteState::allocate(const StructDef &sd) {
  CObject o;
  o.tag = sd.name;
  for (const auto &[f, t] : sd.fields)
    o.fields[f] = t.isInt() ? CValue::integer(0) : CValue::null();
  Int id = nextRef++;
  heap[id] = std::move(o);
  return id;
}

namespace {

struct Abort {
  ConcreteResult::Status status;
  int line;
};

struct Returned {
  std::optional<CValue> value;
};

class Interp {
public:
  Interp(const Program &p, ConcreteResult &r, long limit) : p_(p), r_(r), limit_(limit) {}

  std::optional<CValue> call(const FunctionDef &fn, const std::vector<CValue> &args) {
    std::map<std::string, CValue> frame;
    for (std::size_t i = 0; i < fn.params.size(); ++i)
      frame[fn.params[i].name] = args.at(i);
    for (const auto &[n, t] : fn.locals)
      frame[n] = t.isInt() ? CValue::integer(0) : CValue::null();
    try {
      exec(*fn.body, frame);
    } catch (const Returned &ret) {
      return ret.value;
    }
    return std::nullopt;
  }

private:
  const Program &p_;
  ConcreteResult &r_;
  long limit_;
  long steps_ = 0;

  void tick(const Stmt &s) {
    if (++steps_ > limit_)
      throw Abort{ConcreteResult::Status::StepLimit, s.line};
    r_.trace.push_back(s.id);
  }

  CObject &deref(const CValue &v, int line) {
    if (!v.isRef())
      throw Abort{ConcreteResult::Status::NullDeref, line};
    return r_.finalState.heap.at(v.value);
  }

  void exec(const Stmt &s, std::map<std::string, CValue> &env) {
    tick(s);
    switch (s.kind) {
    case Stmt::Kind::Block:
      for (const auto &c : s.stmts)
        exec(*c, env);
      break;
    case Stmt::Kind::Decl:
      if (s.expr)
        env[s.name] = eval(*s.expr, env);
      break;
    case Stmt::Kind::Assign: env[s.name] = eval(*s.expr, env); break;
    case Stmt::Kind::FieldWrite: {
      CValue base = eval(s.target->operand(), env);
      CValue v = eval(*s.expr, env);
      deref(base, s.line).fields[s.target->name] = v;
      break;
    }
    case Stmt::Kind::If:
      if (truthy(eval(*s.expr, env)))
        exec(*s.thenS, env);
      else if (s.elseS)
        exec(*s.elseS, env);
      break;
    case Stmt::Kind::While:
      while (truthy(eval(*s.expr, env))) {
        exec(*s.thenS, env);
        tick(s);
      }
      break;
    case Stmt::Kind::Return:
      throw Returned{s.expr ? std::optional<CValue>(eval(*s.expr, env)) : std::nullopt};
    case Stmt::Kind::ExprStmt: eval(*s.expr, env); break;
    }
  }

  static bool truthy(const CValue &v) { return v.isInt() ? v.value != 0 : v.isRef(); }

  CValue eval(const Expr &e, std::map<std::string, CValue> &env) {
    switch (e.kind) {
    case Expr::Kind::IntLit: return CValue::integer(e.value);
    case Expr::Kind::Null: return CValue::null();
    case Expr::Kind::Var: return env.at(e.name);
    case Expr::Kind::Field: return deref(eval(e.operand(), env), e.line).fields.at(e.name);
    case Expr::Kind::Alloc: {
      Int id = r_.finalState.allocate(p_.structDef(e.name));
      r_.allocated.push_back(id);
      return CValue::ref(id);
    }
    case Expr::Kind::Unary: {
      CValue v = eval(e.operand(), env);
      if (e.uop == UnOp::Not)
        return CValue::integer(truthy(v) ? 0 : 1);
      return CValue::integer(checkedMul(v.value, -1));
    }
    case Expr::Kind::Binary: {
      if (e.bop == BinOp::And) {
        if (!truthy(eval(e.operand(0), env)))
          return CValue::integer(0);
        return CValue::integer(truthy(eval(e.operand(1), env)) ? 1 : 0);
      }
      if (e.bop == BinOp::Or) {
        if (truthy(eval(e.operand(0), env)))
          return CValue::integer(1);
        return CValue::integer(truthy(eval(e.operand(1), env)) ? 1 : 0);
      }
      CValue l = eval(e.operand(0), env), r = eval(e.operand(1), env);
      auto b = [](bool x) { return CValue::integer(x ? 1 : 0); };
      switch (e.bop) {
      case BinOp::Add: return CValue::integer(checkedAdd(l.value, r.value));
      case BinOp::Sub: return CValue::integer(checkedAdd(l.value, checkedMul(r.value, -1)));
      case BinOp::Mul: return CValue::integer(checkedMul(l.value, r.value));
      case BinOp::Eq: return b(l == r);
      case BinOp::Ne: return b(l != r);
      case BinOp::Lt: return b(l.value < r.value);
      case BinOp::Le: return b(l.value <= r.value);
      case BinOp::Gt: return b(l.value > r.value);
      case BinOp::Ge: return b(l.value >= r.value);
      default: break;
      }
      throw std::logic_error("unhandled operator");
    }
    case Expr::Kind::Call: {
      std::vector<CValue> args;
      for (const auto &a : e.args)
        args.push_back(eval(*a, env));
      auto v = call(p_.function(e.name), args);
      return v.value_or(CValue::integer(0));
    }
    }
    throw std::logic_error("unhandled expression");
  }
};

} // namespace

ConcreteResult run(const Program &program, const std::string &function, const std::vector<CValue> &args,
                   const ConcreteState &state, long stepLimit) {
  const FunctionDef &fn = program.function(function);
  if (args.size() != fn.params.size())
    throw std::invalid_argument("'" + function + "' expects " + std::to_string(fn.params.size()) + " arguments");
  for (std::size_t i = 0; i < args.size(); ++i) {
    bool ok = fn.params[i].type.isInt() ? args[i].isInt() : !args[i].isInt();
    if (ok && args[i].isRef()) {
      auto it = state.heap.find(args[i].value);
      ok = it != state.heap.end() && it->second.tag == fn.params[i].type.tag;
    }
    if (!ok)
      throw std::invalid_argument("argument " + std::to_string(i + 1) + " of '" + function + "' has the wrong type");
  }
  ConcreteResult r;
  r.finalState = state;
  Interp in(program, r, stepLimit);
  try {
    r.returnValue = in.call(fn, args);
    r.status = ConcreteResult::Status::Ok;
  } catch (const Abort &a) {
    r.status = a.status;
    r.errorLine = a.line;
  }
  return r;
}

std::vector<Int> heapDelta(const ConcreteState &before, const ConcreteState &after) {
  std::vector<Int> out;
  for (const auto &[id, o] : before.heap) {
    auto it = after.heap.find(id);
    if (it == after.heap.end() || !(it->second == o))
      out.push_back(id);
  }
  for (const auto &[id, o] : after.heap)
    if (!before.heap.count(id))
      out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

ConcreteState buildSet(const Program &program, const std::vector<Int> &values, Int size, Int capacity) {
  ConcreteState st;
  Int s = st.allocate(program.structDef("set"));
  st.heap[s].fields["capacity"] = CValue::integer(capacity);
  st.heap[s].fields["size"] = CValue::integer(size);
  CValue next = CValue::null();
  for (auto it = values.rbegin(); it != values.rend(); ++it) {
    Int n = st.allocate(program.structDef("lnode"));
    st.heap[n].fields["value"] = CValue::integer(*it);
    st.heap[n].fields["next"] = next;
    next = CValue::ref(n);
  }
  st.heap[s].fields["elems"] = next;
  st.env["s"] = CValue::ref(s);
  return st;
}

ConcreteState buildNullSet() {
  ConcreteState st;
  st.env["s"] = CValue::null();
  return st;
}

std::vector<Int> reachable(const ConcreteState &state, const CValue &from) {
  std::vector<Int> out;
  std::function<void(const CValue &)> visit = [&](const CValue &v) {
    if (!v.isRef() || std::find(out.begin(), out.end(), v.value) != out.end())
      return;
    out.push_back(v.value);
    for (const auto &[f, fv] : state.heap.at(v.value).fields)
      visit(fv);
  };
  visit(from);
  return out;
}

} // namespace specsynth
