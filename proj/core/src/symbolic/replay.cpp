#include "specsynth/symbolic/replay.hpp"

#include "specsynth/constraints/solver.hpp"

namespace specsynth {

namespace {

struct Concretization {
  ConcreteState state;
  std::map<SymAddr, Int> ids;
  std::vector<CValue> args;
};

std::optional<Int> eval(const LinTerm &t, const Assignment &m) { return t.evaluate(m.ints); }

CValue pointerValue(const SymAddr &a, const std::map<SymAddr, Int> &ids) {
  auto it = ids.find(a);
  return it == ids.end() ? CValue::null() : CValue::ref(it->second);
}

Concretization build(const Program &program, const CallPattern &root, const SymbolicConfiguration &c,
                     const Assignment &m, bool tails, Int lo) {
  Concretization k;
  for (const auto &[a, o] : c.initHeap)
    if (o)
      k.ids[a] = k.state.allocate(program.structDef(o->tag));
  for (const auto &[a, o] : c.initHeap) {
    if (!o)
      continue;
    CObject &obj = k.state.heap.at(k.ids.at(a));
    for (const auto &[f, v] : o->fields) {
      if (v.isInt()) {
        obj.fields[f] = CValue::integer(eval(v.term(), m).value_or(lo));
      } else if (v.isAddr() && !v.isNull()) {
        if (k.ids.count(v.addr())) {
          obj.fields[f] = CValue::ref(k.ids.at(v.addr()));
        } else if (tails && !c.initHeap.count(v.addr())) {
          // an unexplored pointer: hang one fresh node there
          const Type *t = program.structDef(o->tag).fieldType(f);
          Int id = k.state.allocate(program.structDef(t->tag));
          for (auto &[g, gv] : k.state.heap.at(id).fields)
            if (gv.isInt())
              gv = CValue::integer(lo);
          k.state.heap.at(k.ids.at(a)).fields[f] = CValue::ref(id);
        } else {
          obj.fields[f] = CValue::null();
        }
      }
    }
  }
  for (const auto &v : root.args) {
    if (v.isInt())
      k.args.push_back(CValue::integer(eval(v.term(), m).value_or(lo)));
    else if (v.isAddr())
      k.args.push_back(pointerValue(v.addr(), k.ids));
    else
      k.args.push_back(CValue::null());
  }
  return k;
}

} // namespace

ReplayReport replayLeaf(const Program &program, const CallPattern &root, const Leaf &leaf, Int lo, Int hi,
                        bool withTails, int maxModels) {
  ReplayReport rep;
  const SymbolicConfiguration &c = leaf.config;
  // integer part of the path condition, every initial symbol in range
  Formula f = c.pathCondition.filter([](const Clause &cl) {
    for (const auto &a : cl.atoms())
      if (a.isAddress())
        return false;
    return true;
  });
  std::set<std::string> syms;
  for (const auto &[a, o] : c.initHeap)
    if (o)
      for (const auto &[fl, v] : o->fields)
        if (v.isInt())
          for (const auto &s : v.term().symbols())
            syms.insert(s);
  for (const auto &v : root.args)
    if (v.isInt())
      for (const auto &s : v.term().symbols())
        syms.insert(s);
  for (const auto &s : syms)
    f.add(Atom::cmp(LinTerm::var(s), CmpOp::Ge, LinTerm(lo)));

  enumerateModels(f, lo, hi, 0, [&](const Assignment &m) {
    ++rep.models;
    for (bool tails : {false, true}) {
      if (tails && !withTails)
        continue;
      Concretization k = build(program, root, c, m, tails, lo);
      ConcreteResult r = run(program, root.function, k.args, k.state);
      ++rep.replays;
      std::string where = "model #" + std::to_string(rep.models) + (tails ? " with tails" : "");
      if (!r.ok()) {
        rep.violations.push_back(where + ": concrete run ended with " + toString(r.status));
        continue;
      }
      if (r.trace != c.trace) {
        rep.violations.push_back(where + ": branch trace differs");
        continue;
      }
      if (c.result && c.result->isInt()) {
        auto want = eval(c.result->term(), m);
        if (!r.returnValue || !want || *r.returnValue != CValue::integer(*want))
          rep.violations.push_back(where + ": return value differs");
      }
      std::map<SymAddr, Int> ids = k.ids;
      for (std::size_t i = 0; i < c.allocations.size() && i < r.allocated.size(); ++i)
        ids[c.allocations[i]] = r.allocated[i];
      for (const auto &[a, o] : c.heap) {
        auto id = ids.find(a);
        if (id == ids.end()) {
          rep.violations.push_back(where + ": no concrete object for " + a.str());
          continue;
        }
        const CObject &obj = r.finalState.heap.at(id->second);
        for (const auto &[fl, v] : o.fields) {
          const CValue &got = obj.fields.at(fl);
          if (v.isInt()) {
            auto want = eval(v.term(), m);
            if (!want || got != CValue::integer(*want))
              rep.violations.push_back(where + ": " + a.str() + "." + fl + " is " + got.str());
          } else if (v.isAddr() && (v.isNull() || ids.count(v.addr()))) {
            if (got != pointerValue(v.addr(), ids))
              rep.violations.push_back(where + ": " + a.str() + "." + fl + " points elsewhere");
          }
        }
      }
    }
    return rep.models < maxModels;
  });
  return rep;
}

} // namespace specsynth
