#include "specsynth/symbolic/engine.hpp"

#include "specsynth/constraints/solver.hpp"
#include "specsynth/lang/parser.hpp"

#include <sstream>

namespace specsynth {

const char *toString(LeafKind k) {
  switch (k) {
  case LeafKind::Returned: return "returned";
  case LeafKind::Error: return "error";
  case LeafKind::Cutoff: return "cutoff";
  case LeafKind::Stuck: return "stuck";
  }
  return "?";
}

CallPattern modifierPattern(const Program &program, const std::string &function) {
  const FunctionDef &fn = program.function(function);
  CallPattern cp;
  cp.function = function;
  for (const auto &p : fn.params)
    cp.args.push_back(p.type.isPtr() ? Value::address(SymAddr::root(p.name)) : Value::symbol(p.name));
  return cp;
}

std::vector<const Leaf *> SEResult::ofKind(LeafKind k) const {
  std::vector<const Leaf *> out;
  for (const auto &l : leaves)
    if (l.kind == k)
      out.push_back(&l);
  return out;
}

std::vector<const Leaf *> SEResult::finals() const { return ofKind(LeafKind::Returned); }

namespace {

enum class Flow { Normal, Returned, Error, Cutoff, Stuck };

struct Frame {
  std::map<std::string, Value> env;
  int pc = 0;
  std::string function;
};

struct Recorded {
  SymbolicConfiguration cfg;
  int node = 0;
  int evaluation = 0;
};

struct Path {
  SymbolicConfiguration cfg;
  std::vector<Frame> frames;  // suspended callers
  std::string current;        // function whose body is running
  std::map<int, std::vector<Recorded>> recorded;
  std::map<int, int> evals;
  int node = 0;
  Value ret;
  std::optional<StuckPoint> stuck;
  std::string message;
};

struct Out {
  Path p;
  Flow flow = Flow::Normal;
};

struct VOut {
  Path p;
  Flow flow = Flow::Normal;
  Value v;
};

struct COut {
  Path p;
  Flow flow = Flow::Normal;
  bool truth = false;
};

using Outs = std::vector<Out>;

class Engine {
public:
  Engine(const Program &program, const CallPattern &call, const EngineOptions &opt)
      : prog_(program), call_(call), opt_(opt) {
    const FunctionDef &fn = prog_.function(call.function);
    if (call.args.size() != fn.params.size())
      throw std::invalid_argument("'" + call.function + "' expects " + std::to_string(fn.params.size()) +
                                  " arguments");
    for (std::size_t i = 0; i < fn.params.size(); ++i)
      if (fn.params[i].type.isPtr() && call.args[i].isAddr() && !call.args[i].isNull())
        rootTags_[call.args[i].addr()] = fn.params[i].type.tag;
    for (const auto &[a, o] : call.initialHeap)
      rootTags_[a] = o.tag;
  }

  SEResult run() {
    const FunctionDef &fn = prog_.function(call_.function);
    Path p;
    p.cfg.function = fn.name;
    p.cfg.pc = fn.body->id;
    p.cfg.heap = call_.initialHeap;
    p.cfg.initHeap = call_.initialInitHeap;
    p.cfg.pathCondition = call_.initialPathCondition;
    p.current = fn.name;
    bindFrame(p, fn, call_.args);
    p.node = newNode(-1, "root", p, "");

    for (auto &o : execStmt(*fn.body, std::move(p)))
      finish(std::move(o));
    return std::move(res_);
  }

private:
  const Program &prog_;
  const CallPattern &call_;
  EngineOptions opt_;
  SEResult res_;
  std::map<SymAddr, std::string> rootTags_;
  std::string allocHint_;

  // --- tree ---------------------------------------------------------------

  int newNode(int parent, const std::string &edge, const Path &p, const std::string &label) {
    TreeNode n;
    n.id = static_cast<int>(res_.tree.nodes.size());
    n.parent = parent;
    n.edge = edge;
    n.function = p.current;
    n.pc = p.cfg.pc;
    n.line = lineOf(p.current, p.cfg.pc);
    n.label = label;
    n.pathCondition = p.cfg.pathCondition.str();
    res_.tree.nodes.push_back(n);
    return n.id;
  }

  void step(Path &p, const std::string &edge, const std::string &label = "") {
    p.node = newNode(p.node, edge, p, label);
  }

  int lineOf(const std::string &fn, int pc) const {
    const FunctionDef *f = prog_.findFunction(fn);
    if (!f)
      return 0;
    auto it = f->sourceLines.find(pc);
    return it == f->sourceLines.end() ? 0 : it->second;
  }

  void finish(Out o) {
    Leaf leaf;
    leaf.message = o.p.message;
    leaf.stuck = o.p.stuck;
    switch (o.flow) {
    case Flow::Normal:
      leaf.kind = LeafKind::Returned;
      o.p.cfg.result = Value::uninit();
      break;
    case Flow::Returned:
      leaf.kind = LeafKind::Returned;
      o.p.cfg.result = o.p.ret;
      break;
    case Flow::Error: leaf.kind = LeafKind::Error; break;
    case Flow::Cutoff: leaf.kind = LeafKind::Cutoff; break;
    case Flow::Stuck: leaf.kind = LeafKind::Stuck; break;
    }
    step(o.p, "leaf", toString(leaf.kind));
    leaf.node = o.p.node;
    leaf.config = std::move(o.p.cfg);
    res_.leaves.push_back(std::move(leaf));
  }

  // --- helpers ------------------------------------------------------------

  void bindFrame(Path &p, const FunctionDef &fn, const std::vector<Value> &args) {
    p.cfg.env.clear();
    for (std::size_t i = 0; i < fn.params.size(); ++i)
      p.cfg.env[fn.params[i].name] = args[i];
    for (const auto &[name, t] : fn.locals)
      if (!p.cfg.env.count(name))
        p.cfg.env[name] = Value::uninit();
  }

  static Out stuck(Path p, const std::string &reason) {
    StuckPoint sp;
    sp.function = p.current;
    sp.pc = p.cfg.pc;
    sp.reason = reason;
    p.stuck = sp;
    p.message = reason;
    return {std::move(p), Flow::Stuck};
  }

  Out stuckAt(Path p, const std::string &reason) {
    Out o = stuck(std::move(p), reason);
    o.p.stuck->line = lineOf(o.p.current, o.p.cfg.pc);
    return o;
  }

  Out error(Path p, const std::string &msg) {
    p.message = msg + " at line " + std::to_string(lineOf(p.current, p.cfg.pc));
    return {std::move(p), Flow::Error};
  }

  std::string tagOf(const Path &p, const SymAddr &a) const {
    if (auto h = p.cfg.heap.find(a); h != p.cfg.heap.end())
      return h->second.tag;
    auto it = rootTags_.find(a);
    if (it != rootTags_.end())
      return it->second;
    auto base = a.base();
    if (!base)
      throw std::logic_error("no type known for " + a.str());
    const Type *t = prog_.structDef(tagOf(p, *base)).fieldType(a.lastField());
    if (!t || !t->isPtr())
      throw std::logic_error("no pointer field behind " + a.str());
    return t->tag;
  }

  bool lazyOn() const { return call_.lazyInit; }

  /// Lazy initialization of an unexplored address: the null case, then a
  /// fresh object whose scalar fields are symbols named by the field path.
  std::vector<Path> lazyInit(Path p, const SymAddr &a) {
    const std::string tag = tagOf(p, a);
    const StructDef &sd = prog_.structDef(tag);
    std::vector<Path> out;

    Path nul = p;
    nul.cfg.pathCondition.add(Atom::addrEq(a, SymAddr::null()));
    nul.cfg.initHeap[a] = std::nullopt;
    replaceAddress(nul, a);
    step(nul, "lazy-null", a.str() + " = NULL");
    out.push_back(std::move(nul));

    HeapObject obj;
    obj.tag = tag;
    for (const auto &[f, t] : sd.fields) {
      if (t.isPtr())
        obj.fields[f] = Value::address(a.field(f));
      else
        obj.fields[f] = Value::symbol(a.dotted() + "." + f);
    }
    Path ob = std::move(p);
    ob.cfg.pathCondition.add(Atom::addrNe(a, SymAddr::null()));
    ob.cfg.heap[a] = obj;
    ob.cfg.initHeap[a] = obj;
    step(ob, "lazy-object", a.str() + " != NULL");
    out.push_back(std::move(ob));
    return out;
  }

  static void replaceIn(Value &v, const SymAddr &a) {
    if (v.isAddr() && v.addr() == a)
      v = Value::null();
  }

  static void replaceAddress(Path &p, const SymAddr &a) {
    for (auto &[n, v] : p.cfg.env)
      replaceIn(v, a);
    for (auto &fr : p.frames)
      for (auto &[n, v] : fr.env)
        replaceIn(v, a);
    for (auto &[addr, obj] : p.cfg.heap)
      for (auto &[f, v] : obj.fields)
        replaceIn(v, a);
    replaceIn(p.ret, a);
  }

  SymAddr freshAlloc(const Path &p) const {
    std::string base = allocHint_.empty() ? "obj" : allocHint_;
    auto taken = [&](const std::string &n) {
      SymAddr r = SymAddr::root(n);
      if (p.cfg.heap.count(r) || p.cfg.initHeap.count(r) || rootTags_.count(r))
        return true;
      for (const auto &[addr, o] : p.cfg.heap)
        if (addr.rootName() == n)
          return true;
      for (const auto &[v, val] : p.cfg.env)
        if (val.isAddr() && !val.isNull() && val.addr().rootName() == n)
          return true;
      return false;
    };
    if (!taken(base))
      return SymAddr::root(base);
    for (int k = 2;; ++k)
      if (!taken(base + "#" + std::to_string(k)))
        return SymAddr::root(base + "#" + std::to_string(k));
  }

  bool feasible(const Formula &pc, const Atom &a) const {
    return checkSat(pc.conj(a)).result != SatResult::Unsat;
  }

  // --- expressions --------------------------------------------------------

  /// Makes `a` explored; null and unexplored-without-lazy-init paths end.
  std::vector<Out> ensureObject(Path p, const SymAddr &a) {
    if (a.isNull())
      return {error(std::move(p), "null dereference")};
    if (p.cfg.heap.count(a))
      return {{std::move(p), Flow::Normal}};
    if (!lazyOn())
      return {stuckAt(std::move(p), "dereference of an uninitialized pointer")};
    std::vector<Out> out;
    auto kids = lazyInit(std::move(p), a);
    out.push_back(error(std::move(kids[0]), "null dereference"));
    out.push_back({std::move(kids[1]), Flow::Normal});
    return out;
  }

  std::vector<VOut> evalValue(const Expr &e, Path p) {
    switch (e.kind) {
    case Expr::Kind::IntLit: return {{std::move(p), Flow::Normal, Value::integer(e.value)}};
    case Expr::Kind::Null: return {{std::move(p), Flow::Normal, Value::null()}};
    case Expr::Kind::Var: {
      Value v = p.cfg.env.at(e.name);
      return {{std::move(p), Flow::Normal, v}};
    }
    case Expr::Kind::Field: {
      std::vector<VOut> out;
      for (auto &b : evalValue(e.operand(), std::move(p))) {
        if (b.flow != Flow::Normal) {
          out.push_back(std::move(b));
          continue;
        }
        if (!b.v.isAddr()) {
          Out s = stuckAt(std::move(b.p), "uninitialized pointer");
          out.push_back({std::move(s.p), s.flow, {}});
          continue;
        }
        SymAddr a = b.v.addr();
        for (auto &o : ensureObject(std::move(b.p), a)) {
          Value v;
          if (o.flow == Flow::Normal)
            v = o.p.cfg.heap.at(a).field(e.name);
          out.push_back({std::move(o.p), o.flow, v});
        }
      }
      return out;
    }
    case Expr::Kind::Alloc: {
      SymAddr a = freshAlloc(p);
      HeapObject obj;
      obj.tag = e.name;
      for (const auto &[f, t] : prog_.structDef(e.name).fields)
        obj.fields[f] = Value::uninit();
      p.cfg.heap[a] = obj;
      p.cfg.allocations.push_back(a);
      return {{std::move(p), Flow::Normal, Value::address(a)}};
    }
    case Expr::Kind::Unary:
      if (e.uop == UnOp::Neg) {
        std::vector<VOut> out;
        for (auto &o : evalValue(e.operand(), std::move(p))) {
          if (o.flow == Flow::Normal && !o.v.isInt()) {
            Out s = stuckAt(std::move(o.p), "uninitialized value");
            out.push_back({std::move(s.p), s.flow, {}});
            continue;
          }
          if (o.flow == Flow::Normal)
            o.v = Value::integer(-o.v.term());
          out.push_back(std::move(o));
        }
        return out;
      }
      return condAsValue(e, std::move(p));
    case Expr::Kind::Binary:
      switch (e.bop) {
      case BinOp::Add:
      case BinOp::Sub:
      case BinOp::Mul: return arith(e, std::move(p));
      default: return condAsValue(e, std::move(p));
      }
    case Expr::Kind::Call: return evalCall(e, std::move(p));
    }
    throw std::logic_error("unhandled expression");
  }

  std::vector<VOut> condAsValue(const Expr &e, Path p) {
    std::vector<VOut> out;
    for (auto &c : evalCond(e, std::move(p)))
      out.push_back({std::move(c.p), c.flow, c.flow == Flow::Normal ? Value::integer(c.truth ? 1 : 0) : Value{}});
    return out;
  }

  std::vector<VOut> arith(const Expr &e, Path p) {
    std::vector<VOut> out;
    for (auto &l : evalValue(e.operand(0), std::move(p))) {
      if (l.flow != Flow::Normal) {
        out.push_back(std::move(l));
        continue;
      }
      for (auto &r : evalValue(e.operand(1), std::move(l.p))) {
        if (r.flow != Flow::Normal) {
          out.push_back(std::move(r));
          continue;
        }
        if (!l.v.isInt() || !r.v.isInt()) {
          Out s = stuckAt(std::move(r.p), "uninitialized value");
          out.push_back({std::move(s.p), s.flow, {}});
          continue;
        }
        const LinTerm &a = l.v.term(), &b = r.v.term();
        if (e.bop == BinOp::Add) {
          r.v = Value::integer(a + b);
        } else if (e.bop == BinOp::Sub) {
          r.v = Value::integer(a - b);
        } else if (a.isConstant()) {
          r.v = Value::integer(b * a.constant());
        } else if (b.isConstant()) {
          r.v = Value::integer(a * b.constant());
        } else {
          Out s = stuckAt(std::move(r.p), "nonlinear multiplication");
          out.push_back({std::move(s.p), s.flow, {}});
          continue;
        }
        out.push_back(std::move(r));
      }
    }
    return out;
  }

  std::vector<COut> branch(Path p, const Atom &a) {
    if (a.kind() == Atom::Kind::True)
      return {{std::move(p), Flow::Normal, true}};
    if (a.kind() == Atom::Kind::False)
      return {{std::move(p), Flow::Normal, false}};
    bool t = feasible(p.cfg.pathCondition, a);
    bool f = feasible(p.cfg.pathCondition, a.negate());
    if (t && f) {
      Path q = p;
      p.cfg.pathCondition.add(a);
      step(p, "then", a.str());
      q.cfg.pathCondition.add(a.negate());
      step(q, "else", a.negate().str());
      std::vector<COut> out;
      out.push_back({std::move(p), Flow::Normal, true});
      out.push_back({std::move(q), Flow::Normal, false});
      return out;
    }
    if (!t && !f)
      return {};
    return {{std::move(p), Flow::Normal, t}};
  }

  std::vector<COut> comparePointers(Path p, const SymAddr &a, const SymAddr &b, bool eq) {
    for (const SymAddr &x : {a, b}) {
      if (!x.isNull() && !p.cfg.heap.count(x)) {
        if (!lazyOn()) {
          Out s = stuckAt(std::move(p), "comparison with an uninitialized pointer");
          return {{std::move(s.p), s.flow, false}};
        }
        std::vector<COut> out;
        for (auto &k : lazyInit(std::move(p), x)) {
          SymAddr a2 = a == x && k.cfg.initHeap.at(x) == std::nullopt ? SymAddr::null() : a;
          SymAddr b2 = b == x && k.cfg.initHeap.at(x) == std::nullopt ? SymAddr::null() : b;
          for (auto &c : comparePointers(std::move(k), a2, b2, eq))
            out.push_back(std::move(c));
        }
        return out;
      }
    }
    return {{std::move(p), Flow::Normal, (a == b) == eq}};
  }

  std::vector<COut> evalCond(const Expr &e, Path p) {
    if (e.kind == Expr::Kind::Unary && e.uop == UnOp::Not) {
      auto out = evalCond(e.operand(), std::move(p));
      for (auto &c : out)
        c.truth = !c.truth;
      return out;
    }
    if (e.kind == Expr::Kind::Binary && (e.bop == BinOp::And || e.bop == BinOp::Or)) {
      bool isAnd = e.bop == BinOp::And;
      std::vector<COut> out;
      for (auto &l : evalCond(e.operand(0), std::move(p))) {
        if (l.flow != Flow::Normal || l.truth != isAnd) {
          out.push_back(std::move(l));
          continue;
        }
        for (auto &r : evalCond(e.operand(1), std::move(l.p)))
          out.push_back(std::move(r));
      }
      return out;
    }
    static const std::map<BinOp, CmpOp> cmps = {{BinOp::Eq, CmpOp::Eq}, {BinOp::Ne, CmpOp::Ne},
                                                 {BinOp::Lt, CmpOp::Lt}, {BinOp::Le, CmpOp::Le},
                                                 {BinOp::Gt, CmpOp::Gt}, {BinOp::Ge, CmpOp::Ge}};
    if (e.kind == Expr::Kind::Binary && cmps.count(e.bop)) {
      std::vector<COut> out;
      for (auto &l : evalValue(e.operand(0), std::move(p))) {
        if (l.flow != Flow::Normal) {
          out.push_back({std::move(l.p), l.flow, false});
          continue;
        }
        for (auto &r : evalValue(e.operand(1), std::move(l.p))) {
          if (r.flow != Flow::Normal) {
            out.push_back({std::move(r.p), r.flow, false});
            continue;
          }
          std::vector<COut> sub;
          if (l.v.isAddr() && r.v.isAddr()) {
            sub = comparePointers(std::move(r.p), l.v.addr(), r.v.addr(), e.bop == BinOp::Eq);
          } else if (l.v.isInt() && r.v.isInt()) {
            sub = branch(std::move(r.p), Atom::cmp(l.v.term(), cmps.at(e.bop), r.v.term()));
          } else {
            Out s = stuckAt(std::move(r.p), "uninitialized value");
            sub.push_back({std::move(s.p), s.flow, false});
          }
          for (auto &c : sub)
            out.push_back(std::move(c));
        }
      }
      return out;
    }
    std::vector<COut> out;
    for (auto &v : evalValue(e, std::move(p))) {
      if (v.flow != Flow::Normal) {
        out.push_back({std::move(v.p), v.flow, false});
        continue;
      }
      if (!v.v.isInt()) {
        Out s = stuckAt(std::move(v.p), "uninitialized value");
        out.push_back({std::move(s.p), s.flow, false});
        continue;
      }
      for (auto &c : branch(std::move(v.p), Atom::cmp(v.v.term(), CmpOp::Ne, LinTerm(0))))
        out.push_back(std::move(c));
    }
    return out;
  }

  /// Evaluates the arguments left to right, then runs the callee body with
  /// the caller's frame suspended.
  std::vector<VOut> evalCall(const Expr &e, Path p) {
    std::vector<VOut> out;
    std::vector<std::pair<Path, std::vector<Value>>> cur;
    cur.emplace_back(std::move(p), std::vector<Value>{});
    for (const auto &arg : e.args) {
      std::vector<std::pair<Path, std::vector<Value>>> next;
      for (auto &[q, vals] : cur) {
        for (auto &v : evalValue(*arg, std::move(q))) {
          if (v.flow != Flow::Normal) {
            out.push_back(std::move(v));
            continue;
          }
          auto vs = vals;
          vs.push_back(v.v);
          next.emplace_back(std::move(v.p), std::move(vs));
        }
      }
      cur = std::move(next);
    }
    const FunctionDef &fn = prog_.function(e.name);
    for (auto &[q, vals] : cur) {
      bool recursive = q.current == fn.name;
      for (const auto &fr : q.frames)
        recursive = recursive || fr.function == fn.name;
      Frame fr{q.cfg.env, q.cfg.pc, q.current};
      q.frames.push_back(fr);
      q.current = fn.name;
      bindFrame(q, fn, vals);
      q.cfg.pc = fn.body->id;

      if (recursive) {
        int site = -fn.body->id;
        int eval = ++q.evals[site];
        if (eval > opt_.safetyNet)
          throw SafetyNetExceeded("safety net of " + std::to_string(opt_.safetyNet) + " exceeded in '" + fn.name +
                                  "'");
        if (tryFold(q, site, eval)) {
          popFrame(q);
          out.push_back({std::move(q), Flow::Normal, Value::uninit()});
          continue;
        }
        if (opt_.maxUnroll > 0 && eval > opt_.maxUnroll) {
          out.push_back({std::move(q), Flow::Cutoff, {}});
          continue;
        }
      }

      for (auto &o : execStmt(*fn.body, std::move(q))) {
        if (o.flow == Flow::Returned || o.flow == Flow::Normal) {
          Value v = o.flow == Flow::Returned ? o.p.ret : Value::uninit();
          popFrame(o.p);
          out.push_back({std::move(o.p), Flow::Normal, v});
        } else {
          out.push_back({std::move(o.p), o.flow, {}});
        }
      }
    }
    return out;
  }

  static void popFrame(Path &p) {
    Frame fr = std::move(p.frames.back());
    p.frames.pop_back();
    p.cfg.env = std::move(fr.env);
    p.cfg.pc = fr.pc;
    p.current = fr.function;
  }

  /// Checks the state against those recorded at `site` on this path and
  /// records it when no fold happens.
  bool tryFold(Path &p, int site, int eval) {
    if (!opt_.abstractSubsumption)
      return false;
    auto &recs = p.recorded[site];
    for (const auto &r : recs) {
      if (abstractSubsumes(r.cfg, p.cfg, prog_, opt_.alpha)) {
        FoldEvent fe;
        fe.from = p.node;
        fe.to = r.node;
        fe.pc = p.cfg.pc;
        fe.line = lineOf(p.current, p.cfg.pc);
        fe.evaluation = eval;
        fe.recordedEvaluation = r.evaluation;
        res_.tree.folds.push_back(fe);
        p.cfg.aSubFlag = true;
        return true;
      }
    }
    recs.push_back({p.cfg, p.node, eval});
    return false;
  }

  // --- statements ---------------------------------------------------------

  /// Pointer subexpressions of a guard in evaluation order, bases first.
  static void pointerSubexprs(const Expr &e, std::vector<const Expr *> &out) {
    if (e.kind == Expr::Kind::Call || e.kind == Expr::Kind::Alloc)
      return;
    for (const auto &a : e.args)
      pointerSubexprs(*a, out);
    if (e.type.isPtr() && (e.kind == Expr::Kind::Var || e.kind == Expr::Kind::Field))
      out.push_back(&e);
  }

  /// Value of a Var/Field chain without side effects; nullopt when a base
  /// on the way is NULL, unexplored or not an address.
  static std::optional<Value> peek(const Expr &e, const Path &p) {
    if (e.kind == Expr::Kind::Var)
      return p.cfg.env.at(e.name);
    if (e.kind != Expr::Kind::Field)
      return std::nullopt;
    auto b = peek(e.operand(), p);
    if (!b || !b->isAddr() || b->isNull() || !p.cfg.heap.count(b->addr()))
      return std::nullopt;
    return p.cfg.heap.at(b->addr()).field(e.name);
  }

  /// Lazy initialization of the guard's pointer subexpressions before the
  /// subsumption check, so that the check sees the explored heap.
  std::vector<Path> prefetch(const Expr &guard, Path p) {
    std::vector<Path> paths;
    paths.push_back(std::move(p));
    if (!lazyOn())
      return paths;
    std::vector<const Expr *> subs;
    pointerSubexprs(guard, subs);
    for (const Expr *s : subs) {
      std::vector<Path> next;
      for (auto &q : paths) {
        auto v = peek(*s, q);
        if (v && v->isAddr() && q.cfg.unexplored(v->addr())) {
          for (auto &k : lazyInit(std::move(q), v->addr()))
            next.push_back(std::move(k));
        } else {
          next.push_back(std::move(q));
        }
      }
      paths = std::move(next);
    }
    return paths;
  }

  Outs execSeq(const std::vector<StmtPtr> &stmts, std::size_t i, Path p) {
    if (i == stmts.size())
      return {{std::move(p), Flow::Normal}};
    Outs out;
    for (auto &o : execStmt(*stmts[i], std::move(p))) {
      if (o.flow != Flow::Normal) {
        out.push_back(std::move(o));
        continue;
      }
      for (auto &r : execSeq(stmts, i + 1, std::move(o.p)))
        out.push_back(std::move(r));
    }
    return out;
  }

  Outs assignTo(const std::string &var, const Expr &rhs, Path p) {
    allocHint_ = var;
    Outs out;
    for (auto &v : evalValue(rhs, std::move(p))) {
      if (v.flow == Flow::Normal) {
        v.p.cfg.env[var] = v.v;
        v.p.cfg = recordWrite(std::move(v.p.cfg), Location::variable(var));
      }
      out.push_back({std::move(v.p), v.flow});
    }
    allocHint_.clear();
    return out;
  }

  static std::optional<std::string> rootVar(const Expr &e) {
    if (e.kind == Expr::Kind::Var)
      return e.name;
    if (e.kind == Expr::Kind::Field)
      return rootVar(e.operand());
    return std::nullopt;
  }

  Outs fieldWrite(const Stmt &s, Path p) {
    const Expr &target = *s.target;
    const Expr &baseE = target.operand();
    Outs out;
    for (auto &b : evalValue(baseE, std::move(p))) {
      if (b.flow != Flow::Normal) {
        out.push_back({std::move(b.p), b.flow});
        continue;
      }
      if (!b.v.isAddr()) {
        out.push_back(stuckAt(std::move(b.p), "uninitialized pointer"));
        continue;
      }
      SymAddr a = b.v.addr();
      for (auto &o : ensureObject(std::move(b.p), a)) {
        if (o.flow != Flow::Normal) {
          out.push_back(std::move(o));
          continue;
        }
        allocHint_ = (rootVar(baseE).value_or("obj")) + "." + target.name;
        auto vals = evalValue(*s.expr, std::move(o.p));
        allocHint_.clear();
        for (auto &v : vals) {
          if (v.flow == Flow::Normal) {
            // the base may have been substituted by a null case in the rhs
            if (!v.p.cfg.heap.count(a)) {
              out.push_back(error(std::move(v.p), "null dereference"));
              continue;
            }
            v.p.cfg.heap[a].fields[target.name] = v.v;
            v.p.cfg = recordWrite(std::move(v.p.cfg), Location::fieldOf(printExpr(baseE), target.name));
            if (auto rv = rootVar(baseE))
              v.p.cfg = recordWrite(std::move(v.p.cfg), Location::variable(*rv));
          }
          out.push_back({std::move(v.p), v.flow});
        }
      }
    }
    return out;
  }

  Outs loopIteration(const Stmt &s, Path p, bool first) {
    const int site = s.id;
    p.cfg.pc = s.id;
    if (!first)
      p.cfg.trace.push_back(s.id);
    int eval = ++p.evals[site];
    if (eval > opt_.safetyNet)
      throw SafetyNetExceeded("safety net of " + std::to_string(opt_.safetyNet) + " guard evaluations exceeded at line " +
                              std::to_string(s.line));
    Outs out;
    for (auto &q : prefetch(*s.expr, std::move(p))) {
      step(q, "guard", "guard #" + std::to_string(eval));
      if (tryFold(q, site, eval)) {
        out.push_back({std::move(q), Flow::Normal});
        continue;
      }
      for (auto &c : evalCond(*s.expr, std::move(q))) {
        if (c.flow != Flow::Normal || !c.truth) {
          out.push_back({std::move(c.p), c.flow});
          continue;
        }
        if (opt_.maxUnroll > 0 && eval > opt_.maxUnroll) {
          c.p.message = "loop at line " + std::to_string(s.line) + " unrolled " + std::to_string(opt_.maxUnroll) + " times";
          out.push_back({std::move(c.p), Flow::Cutoff});
          continue;
        }
        for (auto &b : execStmt(*s.thenS, std::move(c.p))) {
          if (b.flow != Flow::Normal) {
            out.push_back(std::move(b));
            continue;
          }
          for (auto &r : loopIteration(s, std::move(b.p), false))
            out.push_back(std::move(r));
        }
      }
    }
    return out;
  }

  Outs execStmt(const Stmt &s, Path p) {
    p.cfg.pc = s.id;
    p.cfg.trace.push_back(s.id);
    switch (s.kind) {
    case Stmt::Kind::Block: return execSeq(s.stmts, 0, std::move(p));
    case Stmt::Kind::Decl:
      if (!s.expr) {
        p.cfg.env[s.name] = Value::uninit();
        return {{std::move(p), Flow::Normal}};
      }
      return assignTo(s.name, *s.expr, std::move(p));
    case Stmt::Kind::Assign: return assignTo(s.name, *s.expr, std::move(p));
    case Stmt::Kind::FieldWrite: return fieldWrite(s, std::move(p));
    case Stmt::Kind::If: {
      Outs out;
      for (auto &q : prefetch(*s.expr, std::move(p))) {
        for (auto &c : evalCond(*s.expr, std::move(q))) {
          if (c.flow != Flow::Normal) {
            out.push_back({std::move(c.p), c.flow});
            continue;
          }
          const Stmt *next = c.truth ? s.thenS.get() : s.elseS.get();
          if (!next) {
            out.push_back({std::move(c.p), Flow::Normal});
            continue;
          }
          for (auto &r : execStmt(*next, std::move(c.p)))
            out.push_back(std::move(r));
        }
      }
      return out;
    }
    case Stmt::Kind::While:
      p.recorded[s.id].clear();
      p.evals[s.id] = 0;
      return loopIteration(s, std::move(p), true);
    case Stmt::Kind::Return: {
      if (!s.expr) {
        p.ret = Value::uninit();
        return {{std::move(p), Flow::Returned}};
      }
      Outs out;
      for (auto &v : evalValue(*s.expr, std::move(p))) {
        if (v.flow == Flow::Normal) {
          v.p.ret = v.v;
          out.push_back({std::move(v.p), Flow::Returned});
        } else {
          out.push_back({std::move(v.p), v.flow});
        }
      }
      return out;
    }
    case Stmt::Kind::ExprStmt: {
      Outs out;
      for (auto &v : evalValue(*s.expr, std::move(p)))
        out.push_back({std::move(v.p), v.flow});
      return out;
    }
    }
    throw std::logic_error("unhandled statement");
  }
};

std::string dotEscape(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out;
}

} // namespace

std::string SETree::dot(std::size_t maxLabel) const {
  std::ostringstream out;
  out << "digraph se {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (const auto &n : nodes) {
    std::string pc = n.pathCondition;
    if (pc.size() > maxLabel)
      pc = pc.substr(0, maxLabel) + "...";
    out << "  n" << n.id << " [label=\"" << n.id << ": " << dotEscape(n.function) << " line " << n.line;
    if (!n.label.empty())
      out << "\\n" << dotEscape(n.label);
    out << "\\n" << dotEscape(pc) << "\"";
    if (n.edge == "leaf")
      out << ", shape=ellipse";
    out << "];\n";
  }
  for (const auto &n : nodes)
    if (n.parent >= 0)
      out << "  n" << n.parent << " -> n" << n.id << " [label=\"" << n.edge << "\"];\n";
  for (const auto &f : folds)
    out << "  n" << f.from << " -> n" << f.to << " [style=dashed, label=\"fold\"];\n";
  out << "}\n";
  return out.str();
}

SEResult execute(const Program &program, const CallPattern &call, const EngineOptions &options) {
  Engine e(program, call, options);
  return e.run();
}

SEResult se(const Program &program, const CallPattern &call, int maxUnroll, int safetyNet) {
  EngineOptions o;
  o.maxUnroll = maxUnroll;
  o.safetyNet = safetyNet;
  return execute(program, call, o);
}

SEResult seAbstract(const Program &program, const CallPattern &call, int safetyNet) {
  EngineOptions o;
  o.abstractSubsumption = true;
  o.safetyNet = safetyNet;
  return execute(program, call, o);
}

} // namespace specsynth
