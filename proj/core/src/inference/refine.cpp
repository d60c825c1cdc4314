#include "specsynth/inference/inference.hpp"

#include "specsynth/constraints/solver.hpp"
#include "specsynth/lang/classify.hpp"

namespace specsynth {

namespace {

/// Value of one observer call (or the modifier's return) on a concrete state.
std::optional<Int> callValue(const Program &program, const std::string &modifier, const ObserverCall &call,
                             const ConcreteState &state, const std::vector<CValue> &args) {
  const FunctionDef &mod = program.function(modifier);
  std::vector<CValue> actual;
  for (const auto &a : call.args)
    for (std::size_t i = 0; i < mod.params.size(); ++i)
      if (mod.params[i].name == a)
        actual.push_back(args.at(i));
  ConcreteResult r = run(program, call.observer, actual, state);
  if (!r.ok() || !r.returnValue || !r.returnValue->isInt())
    return std::nullopt;
  return r.returnValue->value;
}

/// Matches `value` against rhs, binding at most one unbound fresh symbol.
bool unify(const LinTerm &rhs, Int value, std::map<std::string, Int> &binding) {
  LinTerm t = rhs;
  std::optional<std::string> unbound;
  for (const auto &s : rhs.symbols()) {
    auto it = binding.find(s);
    if (it != binding.end()) {
      t = t.substitute(s, LinTerm(it->second));
    } else {
      if (unbound)
        return false;
      unbound = s;
    }
  }
  if (!unbound)
    return t.constant() == value;
  Int c = t.coeff(*unbound);
  Int rest = value - t.constant();
  if (rest % c != 0)
    return false;
  binding[*unbound] = rest / c;
  return true;
}

std::string valueText(const Equation &e, Int got) { return e.lhs() + " is " + std::to_string(got) + ", expected " + e.str(); }

/// Formula view of equations: one integer variable per observed quantity.
std::string quantity(const Equation &e) { return e.isRet() ? "ret" : (e.primed ? "post:" : "pre:") + e.call->str(); }

Formula asFormula(const std::vector<Equation> &eqs, const std::map<std::string, LinTerm> &sigma,
                  const std::map<std::string, std::string> &rename) {
  Formula f;
  for (const auto &e : eqs)
    f.add(Atom::cmp(LinTerm::var(quantity(e)), CmpOp::Eq, e.rhs.renamed(rename).substitute(sigma)));
  return f;
}

Axiom substituted(const Axiom &a, const std::string &sym, Int v) {
  Axiom r = a;
  for (auto *side : {&r.antecedent, &r.consequent})
    for (auto &e : *side)
      e.rhs = e.rhs.substitute(sym, LinTerm(v));
  return r;
}

} // namespace

TestOutcome testAxiom(const Program &program, const std::string &modifier, const Axiom &axiom,
                      const ConcreteInput &input) {
  TestOutcome out;
  auto [state, args] = input.materialize(program);
  for (const auto &e : axiom.antecedent) {
    if (e.isRet())
      continue;
    auto v = callValue(program, modifier, *e.call, state, args);
    if (!v || !unify(e.rhs, *v, out.binding)) {
      out.detail = "antecedent does not hold";
      return out;
    }
  }
  ConcreteResult r = run(program, modifier, args, state);
  if (!r.ok()) {
    out.detail = std::string("modifier ended with ") + toString(r.status);
    return out;
  }
  for (const auto &e : axiom.consequent) {
    std::optional<Int> v;
    if (e.isRet())
      v = r.returnValue && r.returnValue->isInt() ? std::optional<Int>(r.returnValue->value) : std::nullopt;
    else
      v = callValue(program, modifier, *e.call, r.finalState, args);
    if (!v) {
      out.verdict = TestVerdict::Failed;
      out.detail = e.lhs() + " has no value";
      return out;
    }
    auto b = out.binding;
    if (!unify(e.rhs, *v, b)) {
      out.verdict = TestVerdict::Failed;
      out.detail = valueText(e, *v);
      return out;
    }
  }
  out.verdict = TestVerdict::Passed;
  return out;
}

FalsifyResult falsify(const Program &program, const std::string &modifier, const Axiom &axiom,
                      const RefineSettings &settings) {
  FalsifyResult res;
  std::mt19937_64 rng(settings.seed);
  for (int i = 0; i < settings.budget; ++i) {
    ConcreteInput in = randomInput(program, modifier, settings.bounds, rng);
    ++res.tried;
    TestOutcome t = testAxiom(program, modifier, axiom, in);
    if (t.verdict == TestVerdict::Skipped)
      continue;
    ++res.satisfying;
    for (const auto &[s, v] : t.binding)
      res.observed[s].insert(v);
    if (t.verdict == TestVerdict::Passed)
      continue;
    // shrink while the axiom still fails
    ConcreteInput cur = in;
    std::string detail = t.detail;
    for (bool progress = true; progress;) {
      progress = false;
      for (const auto &c : shrinkCandidates(cur)) {
        TestOutcome tc = testAxiom(program, modifier, axiom, c);
        if (tc.verdict == TestVerdict::Failed) {
          cur = c;
          detail = tc.detail;
          for (const auto &[s, v] : tc.binding)
            res.observed[s].insert(v);
          progress = true;
          break;
        }
      }
    }
    res.kind = FalsifyResult::Kind::Counterexample;
    res.counterexample = cur;
    res.detail = detail;
    return res;
  }
  res.kind = res.satisfying == 0 ? FalsifyResult::Kind::Inconclusive : FalsifyResult::Kind::None;
  return res;
}

std::vector<Axiom> specialize(const Program &program, const std::string &modifier, const Axiom &axiom,
                              const FalsifyResult &refutation, const RefineSettings &settings) {
  std::set<std::string> inConsequent;
  for (const auto &e : axiom.consequent)
    for (const auto &s : e.rhs.symbols())
      inConsequent.insert(s);
  // first antecedent fresh symbol the consequent does not mention
  const Equation *split = nullptr;
  for (const auto &e : axiom.antecedent) {
    auto sym = e.rhs.asSymbol();
    if (sym && isFreshSymbol(*sym) && !inConsequent.count(*sym)) {
      split = &e;
      break;
    }
  }
  if (!split)
    return {};
  std::string sym = *split->rhs.asSymbol();
  std::set<Int> domain;
  if (split->call && isBooleanObserver(program, split->call->observer)) {
    domain = {0, 1};
  } else if (auto it = refutation.observed.find(sym); it != refutation.observed.end()) {
    domain = it->second;
  }
  std::vector<Axiom> out;
  for (Int v : domain) {
    Axiom inst = substituted(axiom, sym, v);
    inst.status = AxiomStatus::Candidate;
    inst.name.clear();
    FalsifyResult fr = falsify(program, modifier, inst, settings);
    if (fr.kind == FalsifyResult::Kind::None) {
      inst.status = AxiomStatus::Specialized;
      out.push_back(std::move(inst));
    } else if (fr.kind == FalsifyResult::Kind::Counterexample) {
      for (auto &deeper : specialize(program, modifier, inst, fr, settings))
        out.push_back(std::move(deeper));
    }
  }
  return out;
}

bool axiomSubsumes(const Axiom &general, const Axiom &specific) {
  std::map<std::string, std::string> rename;
  for (const auto &s : general.freshSymbols())
    rename[s] = "_g" + s;
  // fresh symbols of `general` matched against the same quantity in `specific`
  std::map<std::string, LinTerm> sigma;
  for (const auto &g : general.antecedent) {
    auto sym = g.rhs.asSymbol();
    if (!sym || !isFreshSymbol(*sym) || sigma.count(rename.at(*sym)))
      continue;
    for (const auto &s : specific.antecedent)
      if (quantity(s) == quantity(g)) {
        sigma[rename.at(*sym)] = s.rhs;
        break;
      }
  }
  Formula specAnte = asFormula(specific.antecedent, {}, {});
  Formula genAnte = asFormula(general.antecedent, sigma, rename);
  Formula genCons = asFormula(general.consequent, sigma, rename);
  Formula specCons = asFormula(specific.consequent, {}, {});
  if (implies(specAnte, genAnte).result != Validity::Valid)
    return false;
  return implies(specAnte.conj(genCons), specCons).result == Validity::Valid;
}

std::vector<Axiom> purgeSubsumed(const std::vector<Axiom> &axioms) {
  std::vector<Axiom> out;
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < axioms.size() && !drop; ++j) {
      if (i == j || !axiomSubsumes(axioms[j], axioms[i]))
        continue;
      // mutual subsumption: the earlier one stays
      drop = !axiomSubsumes(axioms[i], axioms[j]) || j < i;
    }
    if (!drop)
      out.push_back(axioms[i]);
  }
  return out;
}

std::vector<Axiom> refine(const Program &program, const std::string &modifier, const std::vector<Axiom> &q,
                          const std::vector<Axiom> &qSharp, const RefineSettings &settings, RefineLog *log) {
  RefineLog local;
  RefineLog &lg = log ? *log : local;
  std::vector<Axiom> all = q;
  for (const auto &c : qSharp) {
    FalsifyResult fr = falsify(program, modifier, c, settings);
    switch (fr.kind) {
    case FalsifyResult::Kind::None: {
      Axiom v = c;
      v.status = AxiomStatus::Verified;
      lg.lines.push_back(c.name + ": no counterexample in " + std::to_string(fr.tried) + " tests (" +
                         std::to_string(fr.satisfying) + " applicable); promoted");
      all.push_back(std::move(v));
      break;
    }
    case FalsifyResult::Kind::Counterexample: {
      const FunctionDef &fn = program.function(modifier);
      lg.lines.push_back(c.name + ": falsified by " + fr.counterexample->str(fn) + " (" + fr.detail + ")");
      lg.counterexamples.emplace_back(c.name, *fr.counterexample);
      auto inst = specialize(program, modifier, c, fr, settings);
      if (inst.empty()) {
        Axiom r = c;
        r.status = AxiomStatus::Refuted;
        lg.refuted.push_back(r);
        lg.lines.push_back(c.name + ": no instance survives; refuted");
      }
      for (auto &a : inst) {
        lg.lines.push_back(c.name + ": specialized to " + a.str());
        all.push_back(std::move(a));
      }
      break;
    }
    case FalsifyResult::Kind::Inconclusive:
      lg.lines.push_back(c.name + ": no test satisfied the antecedent in " + std::to_string(fr.tried) +
                         " tries; kept as candidate");
      lg.unresolved.push_back(c);
      break;
    }
  }
  return purgeSubsumed(all);
}

Contract infer(const Program &program, const std::string &modifier, const InferSettings &settings) {
  if (!program.findFunction(modifier))
    throw std::invalid_argument("unknown function '" + modifier + "'");
  Contract k;
  k.function = modifier;
  CallPattern root = modifierPattern(program, modifier);
  SEResult se = seAbstract(program, root, settings.refine.safetyNet);
  k.folds = se.tree.folds;
  k.diagnostics = se.diagnostics;

  std::vector<Axiom> q, qSharp;
  int origin = 0;
  for (const Leaf *leaf : se.finals()) {
    ++origin;
    for (const auto &loc : leaf->config.locations)
      k.assignable.insert(loc.str());
    Explanation ex = explainLeaf(program, modifier, leaf->config, root, settings.refine.safetyNet);
    for (auto &d : ex.diagnostics)
      k.diagnostics.push_back(std::move(d));
    Axiom ax;
    ax.antecedent = std::move(ex.pre);
    ax.consequent = std::move(ex.post);
    ax.originLeaf = origin;
    ax.status = leaf->config.aSubFlag ? AxiomStatus::Candidate : AxiomStatus::Verified;
    auto &group = leaf->config.aSubFlag ? qSharp : q;
    bool dup = false;
    for (const auto &o : group)
      dup = dup || o.sameEquations(ax);
    if (!dup)
      group.push_back(std::move(ax));
  }
  k.finalConfigurations = origin;
  int n = 0;
  for (auto &a : q)
    a.name = "A" + std::to_string(++n);
  int c = 0;
  for (auto &a : qSharp)
    a.name = "C" + std::to_string(++c);
  for (const auto *group : {&q, &qSharp})
    for (const auto &a : *group) {
      bool seen = false;
      for (const auto &p : k.precondition)
        seen = seen || p == a.antecedent;
      if (!seen)
        k.precondition.push_back(a.antecedent);
    }
  k.preRefinement = q;
  k.preRefinementCandidates = qSharp;

  if (!settings.runRefine) {
    k.postcondition = q;
    k.candidates = qSharp;
    return k;
  }
  k.postcondition = refine(program, modifier, q, qSharp, settings.refine, &k.refineLog);
  for (auto &a : k.postcondition)
    if (a.name.empty())
      a.name = "A" + std::to_string(++n);
  for (const auto &a : k.refineLog.unresolved)
    k.candidates.push_back(a);
  for (const auto &a : k.refineLog.refuted)
    k.candidates.push_back(a);
  return k;
}

InputBounds checkBounds() {
  InputBounds b;
  b.valueLo = 0;
  b.valueHi = 2;
  b.scalarLo = 0;
  b.scalarHi = 3;
  b.maxLen = 3;
  return b;
}

CheckReport checkAxiom(const Program &program, const std::string &modifier, const Axiom &axiom,
                       const InputBounds &bounds) {
  CheckReport rep;
  for (const auto &in : enumerateInputs(program, modifier, bounds)) {
    ++rep.inputs;
    TestOutcome t = testAxiom(program, modifier, axiom, in);
    if (t.verdict == TestVerdict::Skipped)
      continue;
    ++rep.applicable;
    if (t.verdict == TestVerdict::Failed)
      rep.violations.emplace_back(in, t.detail);
  }
  return rep;
}

} // namespace specsynth
