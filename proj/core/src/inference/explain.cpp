#include "specsynth/inference/inference.hpp"

#include "specsynth/lang/classify.hpp"

#include <algorithm>
#include <numeric>

namespace specsynth {

std::string ObserverCall::str(bool primed) const {
  std::string out = observer + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i)
      out += ",";
    out += args[i];
    if (primed && i < pointerArg.size() && pointerArg[i])
      out += "'";
  }
  return out + ")";
}

std::string Equation::lhs() const { return call ? call->str(primed) : "ret"; }

std::string Equation::str() const {
  std::string r = rhs.str(true);
  // "_i1 + 1" reads as "_i1+1" in axioms
  r.erase(std::remove(r.begin(), r.end(), ' '), r.end());
  return lhs() + "=" + r;
}

const char *toString(AxiomStatus s) {
  switch (s) {
  case AxiomStatus::Verified: return "verified";
  case AxiomStatus::Candidate: return "candidate";
  case AxiomStatus::Refuted: return "refuted";
  case AxiomStatus::Specialized: return "specialized";
  }
  return "?";
}

bool isFreshSymbol(const std::string &name) { return !name.empty() && name.front() == '_'; }

std::set<std::string> Axiom::freshSymbols() const {
  std::set<std::string> out;
  for (const auto *side : {&antecedent, &consequent})
    for (const auto &e : *side)
      for (const auto &s : e.rhs.symbols())
        if (isFreshSymbol(s))
          out.insert(s);
  return out;
}

std::string Axiom::str() const {
  auto join = [](const std::vector<Equation> &eqs) {
    std::string out;
    for (std::size_t i = 0; i < eqs.size(); ++i)
      out += (i ? " ∧ " : "") + eqs[i].str();
    return out.empty() ? std::string("true") : out;
  };
  return join(antecedent) + " ⟹ " + join(consequent);
}

std::string FreshNames::next(bool boolean) {
  if (boolean)
    return ++bools_ == 1 ? "_v" : "_v" + std::to_string(bools_);
  return "_i" + std::to_string(++ints_);
}

bool isBooleanObserver(const Program &program, const std::string &observer) {
  const FunctionDef &fn = program.function(observer);
  bool ok = true, any = false;
  forEachStmt(*fn.body, [&](const Stmt &s) {
    if (s.kind != Stmt::Kind::Return)
      return;
    any = true;
    ok = ok && s.expr && s.expr->kind == Expr::Kind::IntLit && (s.expr->value == 0 || s.expr->value == 1);
  });
  return ok && any;
}

bool writesHeap(const Program &program, const std::string &function) {
  std::set<std::string> seen;
  std::vector<std::string> todo{function};
  while (!todo.empty()) {
    std::string f = todo.back();
    todo.pop_back();
    if (!seen.insert(f).second)
      continue;
    bool writes = false;
    forEachStmt(*program.function(f).body, [&](const Stmt &s) {
      writes = writes || s.kind == Stmt::Kind::FieldWrite;
      for (const Expr *e : {s.expr.get(), s.target.get()})
        if (e)
          forEachExpr(*e, [&](const Expr &x) {
            writes = writes || x.kind == Expr::Kind::Alloc;
            if (x.kind == Expr::Kind::Call)
              todo.push_back(x.name);
          });
    });
    if (writes)
      return true;
  }
  return false;
}

std::vector<ObserverCall> observerCalls(const Program &program, const std::string &modifier) {
  const FunctionDef &mod = program.function(modifier);
  Classification cls = classify(program);
  std::vector<ObserverCall> out;
  for (const auto &fn : program.functions) {
    if (!cls.observers.count(fn.name) || cls.constructors.count(fn.name) || !fn.returnType.isInt() ||
        writesHeap(program, fn.name))
      continue;
    std::size_t k = fn.params.size();
    if (k > mod.params.size())
      continue;
    // injective, type-compatible, same-typed parameters keep their order
    std::vector<std::size_t> idx(mod.params.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::set<std::vector<std::size_t>> seen;
    do {
      std::vector<std::size_t> pick(idx.begin(), idx.begin() + static_cast<long>(k));
      if (!seen.insert(pick).second)
        continue;
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        ok = fn.params[i].type == mod.params[pick[i]].type;
        for (std::size_t j = 0; j < i && ok; ++j)
          if (fn.params[j].type == fn.params[i].type)
            ok = pick[j] < pick[i];
      }
      if (!ok)
        continue;
      ObserverCall c;
      c.observer = fn.name;
      for (auto i : pick) {
        c.args.push_back(mod.params[i].name);
        c.pointerArg.push_back(mod.params[i].type.isPtr());
      }
      out.push_back(std::move(c));
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  return out;
}

namespace {

std::set<SymAddr> nullAssumptions(const SymbolicConfiguration &c) {
  std::set<SymAddr> out;
  for (const auto &[a, o] : c.initHeap)
    if (!o)
      out.insert(a);
  return out;
}

Value nulled(const Value &v, const std::set<SymAddr> &nulls) {
  if (v.isAddr() && nulls.count(v.addr()))
    return Value::null();
  return v;
}

std::vector<Value> nulledArgs(const std::vector<Value> &args, const std::set<SymAddr> &nulls) {
  std::vector<Value> out;
  for (const auto &a : args)
    out.push_back(nulled(a, nulls));
  return out;
}

/// Reachable explored objects from `from`, by address.
void collect(const Heap &h, const Value &from, std::map<SymAddr, HeapObject> &out) {
  if (!from.isAddr() || from.isNull())
    return;
  auto it = h.find(from.addr());
  if (it == h.end() || out.count(from.addr()))
    return;
  out[from.addr()] = it->second;
  for (const auto &[f, v] : it->second.fields)
    collect(h, v, out);
}

/// When both runs stopped at the same point with the same live pointers
/// and heap, the post-state result is the pre-state result plus the
/// constant by which (at most) one live integer differs.
std::optional<Int> symbolicDifference(const Program &program, const Leaf &pre, const Leaf &post,
                                      const std::string &observer) {
  if (!pre.stuck || !post.stuck)
    return std::nullopt;
  if (pre.stuck->function != observer || post.stuck->function != observer || pre.stuck->pc != post.stuck->pc)
    return std::nullopt;
  const FunctionDef &fn = program.function(observer);
  std::optional<Int> d;
  for (const auto &v : variablesUsedFrom(fn, pre.stuck->pc)) {
    auto a = pre.config.env.find(v), b = post.config.env.find(v);
    if (a == pre.config.env.end() || b == post.config.env.end())
      return std::nullopt;
    const Value &x = a->second, &y = b->second;
    if (x.kind() != y.kind())
      return std::nullopt;
    if (x.isAddr()) {
      if (x != y)
        return std::nullopt;
      std::map<SymAddr, HeapObject> rx, ry;
      collect(pre.config.heap, x, rx);
      collect(post.config.heap, y, ry);
      if (rx != ry)
        return std::nullopt;
    } else if (x.isInt()) {
      LinTerm diff = y.term() - x.term();
      if (!diff.isConstant())
        return std::nullopt;
      if (diff.constant() != 0) {
        if (d)
          return std::nullopt;
        d = diff.constant();
      }
    }
  }
  return d.value_or(0);
}

} // namespace

ExplainPattern initialPattern(const SymbolicConfiguration &leaf, const std::vector<Value> &rootArgs) {
  auto nulls = nullAssumptions(leaf);
  ExplainPattern p;
  for (const auto &[a, o] : leaf.initHeap) {
    if (!o)
      continue;
    HeapObject obj = *o;
    for (auto &[f, v] : obj.fields)
      v = nulled(v, nulls);
    p.heap[a] = std::move(obj);
  }
  p.pathCondition = leaf.pathCondition;
  p.args = nulledArgs(rootArgs, nulls);
  return p;
}

ExplainPattern finalPattern(const SymbolicConfiguration &leaf, const std::vector<Value> &rootArgs) {
  ExplainPattern p;
  p.heap = leaf.heap;
  p.pathCondition = leaf.pathCondition;
  p.args = nulledArgs(rootArgs, nullAssumptions(leaf));
  return p;
}

Observation observe(const Program &program, const ExplainPattern &pattern, const ObserverCall &call,
                    const std::string &modifier, int safetyNet) {
  const FunctionDef &mod = program.function(modifier);
  Observation ob;
  ob.call = call;
  CallPattern cp;
  cp.function = call.observer;
  for (const auto &a : call.args)
    for (std::size_t i = 0; i < mod.params.size(); ++i)
      if (mod.params[i].name == a)
        cp.args.push_back(pattern.args.at(i));
  cp.initialHeap = pattern.heap;
  cp.initialPathCondition = pattern.pathCondition;
  cp.lazyInit = false;
  EngineOptions opt;
  opt.safetyNet = safetyNet;
  SEResult r;
  try {
    r = execute(program, cp, opt);
  } catch (const SafetyNetExceeded &e) {
    ob.kind = Observation::Kind::Omitted;
    ob.diagnostic = call.str() + " omitted: " + e.what();
    return ob;
  }
  if (r.leaves.size() == 1 && r.leaves[0].kind == LeafKind::Stuck)
    ob.stuckLeaf = r.leaves[0];
  std::optional<LinTerm> common;
  bool agree = !r.leaves.empty();
  for (const auto &l : r.leaves) {
    if (l.kind != LeafKind::Returned || !l.config.result || !l.config.result->isInt() ||
        !l.config.result->term().isConstant()) {
      agree = false;
      break;
    }
    if (common && *common != l.config.result->term()) {
      agree = false;
      break;
    }
    common = l.config.result->term();
  }
  if (agree) {
    ob.kind = Observation::Kind::Value;
    ob.value = *common;
  }
  return ob;
}

std::vector<Equation> explain(const Program &program, const std::string &modifier, const ExplainPattern &pattern,
                              FreshNames &names, bool primed, int safetyNet) {
  std::vector<Equation> out;
  for (const auto &call : observerCalls(program, modifier)) {
    Observation ob = observe(program, pattern, call, modifier, safetyNet);
    if (ob.kind == Observation::Kind::Omitted)
      continue;
    Equation e;
    e.call = call;
    e.primed = primed;
    e.rhs = ob.kind == Observation::Kind::Value ? ob.value
                                                : LinTerm::var(names.next(isBooleanObserver(program, call.observer)));
    out.push_back(std::move(e));
  }
  return out;
}

Explanation explainLeaf(const Program &program, const std::string &modifier, const SymbolicConfiguration &leaf,
                        const CallPattern &root, int safetyNet) {
  Explanation ex;
  ExplainPattern pre = initialPattern(leaf, root.args), post = finalPattern(leaf, root.args);
  FreshNames names;
  std::set<std::string> anteFresh;
  for (const auto &call : observerCalls(program, modifier)) {
    bool boolean = isBooleanObserver(program, call.observer);
    Observation a = observe(program, pre, call, modifier, safetyNet);
    Observation b = observe(program, post, call, modifier, safetyNet);
    for (const auto *o : {&a, &b})
      if (o->kind == Observation::Kind::Omitted)
        ex.diagnostics.push_back(o->diagnostic);
    std::optional<std::string> preFresh;
    if (a.kind != Observation::Kind::Omitted) {
      Equation e;
      e.call = call;
      if (a.kind == Observation::Kind::Value) {
        e.rhs = a.value;
      } else {
        preFresh = names.next(boolean);
        anteFresh.insert(*preFresh);
        e.rhs = LinTerm::var(*preFresh);
      }
      ex.pre.push_back(std::move(e));
    }
    if (b.kind == Observation::Kind::Omitted)
      continue;
    Equation e;
    e.call = call;
    e.primed = true;
    if (b.kind == Observation::Kind::Value) {
      e.rhs = b.value;
    } else {
      std::optional<Int> d;
      if (preFresh && a.stuckLeaf && b.stuckLeaf)
        d = symbolicDifference(program, *a.stuckLeaf, *b.stuckLeaf, call.observer);
      if (!d)
        continue; // an unconstrained post-state value says nothing
      e.rhs = LinTerm::var(*preFresh) + LinTerm(*d);
    }
    ex.post.push_back(std::move(e));
  }
  if (leaf.result && leaf.result->isInt()) {
    if (leaf.result->term().isConstant()) {
      Equation r;
      r.rhs = leaf.result->term();
      r.primed = true;
      ex.post.push_back(r);
    } else {
      ex.diagnostics.push_back("return value " + leaf.result->str() + " is not expressible by observers");
    }
  }
  return ex;
}

} // namespace specsynth
