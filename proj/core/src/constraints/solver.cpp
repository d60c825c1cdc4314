#include "specsynth/constraints/solver.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace specsynth {

const char *toString(SatResult r) {
  switch (r) {
  case SatResult::Sat: return "sat";
  case SatResult::Unsat: return "unsat";
  case SatResult::Unknown: return "unknown";
  }
  return "?";
}

const char *toString(Validity v) {
  switch (v) {
  case Validity::Valid: return "valid";
  case Validity::Invalid: return "invalid";
  case Validity::Unknown: return "unknown";
  }
  return "?";
}

SolverStats &SolverStats::global() {
  static SolverStats stats;
  return stats;
}

namespace {

constexpr std::size_t kMaxFmConstraints = 4000;
constexpr int kMaxSplitLeaves = 4096;

struct IntResult {
  SatResult result = SatResult::Unknown;
  std::map<std::string, Int> model;
};

// t <= 0, normalized through Atom so tightening happens in one place.
// Returns nullopt for a trivially true constraint; throws nothing.
enum class Trivial { No, True, False };

Trivial normalizeLe(LinTerm &t) {
  Atom a = Atom::cmp(t, CmpOp::Le, LinTerm());
  if (a.kind() == Atom::Kind::True)
    return Trivial::True;
  if (a.kind() == Atom::Kind::False)
    return Trivial::False;
  t = a.term();
  return Trivial::No;
}

struct Elimination {
  std::string var;
  std::vector<LinTerm> bounds; // constraints t <= 0 mentioning var
};

// Fourier-Motzkin over `les` (each t <= 0). Returns Unsat if a
// contradiction is derived, otherwise Sat with the elimination log so a
// model can be rebuilt (Unknown if the constraint budget blows up).
SatResult fourierMotzkin(std::vector<LinTerm> les, std::vector<Elimination> &log) {
  for (;;) {
    std::set<std::string> vars;
    for (const auto &t : les) {
      if (t.isConstant()) {
        if (t.constant() > 0)
          return SatResult::Unsat;
        continue;
      }
      for (const auto &[n, c] : t.coeffs())
        vars.insert(n);
    }
    if (vars.empty())
      return SatResult::Sat;

    std::string best;
    std::size_t bestCost = std::numeric_limits<std::size_t>::max();
    for (const auto &v : vars) {
      std::size_t lo = 0, hi = 0;
      for (const auto &t : les) {
        Int c = t.coeff(v);
        if (c > 0)
          ++hi;
        else if (c < 0)
          ++lo;
      }
      if (lo * hi < bestCost) {
        bestCost = lo * hi;
        best = v;
      }
    }

    Elimination step{best, {}};
    std::vector<LinTerm> lower, upper;
    std::set<LinTerm> next;
    for (auto &t : les) {
      Int c = t.coeff(best);
      if (c == 0) {
        if (!t.isConstant())
          next.insert(t);
        else if (t.constant() > 0)
          return SatResult::Unsat;
        continue;
      }
      step.bounds.push_back(t);
      (c > 0 ? upper : lower).push_back(t);
    }
    for (const auto &l : lower) {
      Int a = -l.coeff(best);
      for (const auto &u : upper) {
        Int b = u.coeff(best);
        LinTerm combined = l * b + u * a;
        switch (normalizeLe(combined)) {
        case Trivial::True: break;
        case Trivial::False: return SatResult::Unsat;
        case Trivial::No: next.insert(combined); break;
        }
        if (next.size() > kMaxFmConstraints)
          return SatResult::Unknown;
      }
    }
    log.push_back(std::move(step));
    les.assign(next.begin(), next.end());
  }
}

// Rebuilds an integer model from the elimination log, choosing the value
// closest to 0 inside each variable's bounds.
bool buildModel(const std::vector<Elimination> &log, std::map<std::string, Int> &model) {
  auto lookup = [&](const std::string &n) -> std::optional<Int> {
    auto it = model.find(n);
    return it == model.end() ? std::optional<Int>(0) : std::optional<Int>(it->second);
  };
  for (auto it = log.rbegin(); it != log.rend(); ++it) {
    const std::string &x = it->var;
    bool hasLo = false, hasHi = false;
    Int lo = 0, hi = 0;
    for (const auto &t : it->bounds) {
      Int a = t.coeff(x);
      Int rest = *(t - LinTerm::var(x, a)).evaluate(lookup);
      // a*x + rest <= 0
      if (a > 0) {
        Int b = floorDiv(-rest, a);
        hi = hasHi ? std::min(hi, b) : b;
        hasHi = true;
      } else {
        Int b = ceilDiv(-rest, a);
        lo = hasLo ? std::max(lo, b) : b;
        hasLo = true;
      }
    }
    if (hasLo && hasHi && lo > hi)
      return false;
    Int v = 0;
    if (hasLo && v < lo)
      v = lo;
    if (hasHi && v > hi)
      v = hi;
    model[x] = v;
  }
  return true;
}

struct IntProblem {
  std::vector<LinTerm> eqs, les, nes; // t = 0, t <= 0, t != 0
};

bool holds(const IntProblem &p, const std::map<std::string, Int> &m, const LinTerm **violatedNe) {
  auto val = [&](const LinTerm &t) {
    return *t.evaluate([&](const std::string &n) -> std::optional<Int> {
      auto it = m.find(n);
      return it == m.end() ? 0 : it->second;
    });
  };
  for (const auto &t : p.eqs)
    if (val(t) != 0)
      return false;
  for (const auto &t : p.les)
    if (val(t) > 0)
      return false;
  *violatedNe = nullptr;
  for (const auto &t : p.nes)
    if (val(t) == 0) {
      *violatedNe = &t;
      break;
    }
  return true;
}

IntResult solveInt(const IntProblem &original, int &budget) {
  if (--budget < 0)
    return {};
  // Equality elimination by substitution where a unit coefficient exists.
  std::vector<LinTerm> eqs = original.eqs, les = original.les, nes = original.nes;
  std::vector<std::pair<std::string, LinTerm>> solved;
  for (;;) {
    auto it = std::find_if(eqs.begin(), eqs.end(), [](const LinTerm &t) {
      for (const auto &[n, c] : t.coeffs())
        if (c == 1 || c == -1)
          return true;
      return false;
    });
    if (it == eqs.end())
      break;
    LinTerm t = *it;
    eqs.erase(it);
    std::string x;
    Int cx = 0;
    for (const auto &[n, c] : t.coeffs())
      if (c == 1 || c == -1) {
        x = n;
        cx = c;
      }
    LinTerm expr = (t - LinTerm::var(x, cx)) * (-cx);
    solved.emplace_back(x, expr);
    auto sub = [&](std::vector<LinTerm> &v) {
      for (auto &u : v)
        u = u.substitute(x, expr);
    };
    sub(eqs);
    sub(les);
    sub(nes);
    for (const auto &u : eqs)
      if (u.isConstant() && u.constant() != 0)
        return {SatResult::Unsat, {}};
    for (const auto &u : nes)
      if (u.isConstant() && u.constant() == 0)
        return {SatResult::Unsat, {}};
  }
  for (const auto &t : eqs) {
    if (t.isConstant()) {
      if (t.constant() != 0)
        return {SatResult::Unsat, {}};
      continue;
    }
    if (t.constant() % t.coeffGcd() != 0)
      return {SatResult::Unsat, {}};
    les.push_back(t);
    les.push_back(-t);
  }
  std::vector<LinTerm> normalized;
  for (auto t : les) {
    switch (normalizeLe(t)) {
    case Trivial::True: break;
    case Trivial::False: return {SatResult::Unsat, {}};
    case Trivial::No: normalized.push_back(t); break;
    }
  }

  std::vector<Elimination> log;
  SatResult fm = fourierMotzkin(normalized, log);
  if (fm == SatResult::Unsat)
    return {SatResult::Unsat, {}};
  if (fm == SatResult::Unknown)
    return {};

  std::map<std::string, Int> model;
  if (!buildModel(log, model))
    return {};
  auto lookup = [&](const std::string &n) -> std::optional<Int> {
    auto it = model.find(n);
    return it == model.end() ? 0 : it->second;
  };
  for (auto it = solved.rbegin(); it != solved.rend(); ++it)
    model[it->first] = *it->second.evaluate(lookup);
  for (const auto &t : original.eqs)
    for (const auto &[n, c] : t.coeffs())
      model.emplace(n, 0);
  for (const auto &t : original.les)
    for (const auto &[n, c] : t.coeffs())
      model.emplace(n, 0);
  for (const auto &t : original.nes)
    for (const auto &[n, c] : t.coeffs())
      model.emplace(n, 0);

  const LinTerm *violated = nullptr;
  if (!holds(original, model, &violated))
    return {}; // inexact elimination: the rational shadow had no integer point here
  if (!violated)
    return {SatResult::Sat, model};

  // Split t != 0 into t <= -1 or t >= 1.
  IntProblem base = original;
  LinTerm t = *violated;
  base.nes.erase(std::find(base.nes.begin(), base.nes.end(), t));
  bool unknown = false;
  for (int side = 0; side < 2; ++side) {
    IntProblem branch = base;
    branch.les.push_back(side == 0 ? t + 1 : -t + 1);
    IntResult r = solveInt(branch, budget);
    if (r.result == SatResult::Sat)
      return r;
    if (r.result == SatResult::Unknown)
      unknown = true;
  }
  return {unknown ? SatResult::Unknown : SatResult::Unsat, {}};
}

SatAnswer solveConjunction(const std::vector<Atom> &atoms, int &budget) {
  // Addresses: union-find with disequality conflicts.
  std::map<SymAddr, SymAddr> parent;
  auto find = [&](SymAddr a) {
    parent.emplace(a, a);
    while (parent[a] != a)
      a = parent[a];
    return a;
  };
  IntProblem ints;
  std::vector<std::pair<SymAddr, SymAddr>> diseq;
  for (const auto &a : atoms) {
    switch (a.kind()) {
    case Atom::Kind::True: break;
    case Atom::Kind::False: return {SatResult::Unsat, {}};
    case Atom::Kind::AddrEq: {
      SymAddr x = find(a.addrLhs()), y = find(a.addrRhs());
      if (x != y)
        parent[std::max(x, y)] = std::min(x, y);
      break;
    }
    case Atom::Kind::AddrNe: diseq.emplace_back(a.addrLhs(), a.addrRhs()); break;
    case Atom::Kind::Lin:
      switch (a.rel()) {
      case LinRel::Eq: ints.eqs.push_back(a.term()); break;
      case LinRel::Ne: ints.nes.push_back(a.term()); break;
      case LinRel::Le: ints.les.push_back(a.term()); break;
      }
      break;
    }
  }
  for (const auto &[x, y] : diseq)
    if (find(x) == find(y))
      return {SatResult::Unsat, {}};

  IntResult r = solveInt(ints, budget);
  SatAnswer ans;
  ans.result = r.result;
  if (r.result != SatResult::Sat)
    return ans;
  ans.model.ints = std::move(r.model);
  // Classes: the NULL class is object 0, others get fresh identities.
  std::map<SymAddr, int> classId;
  SymAddr nullRoot = find(SymAddr::null());
  classId[nullRoot] = 0;
  int next = 1;
  for (auto &[a, p] : parent) {
    if (a.isNull())
      continue;
    SymAddr root = find(a);
    auto it = classId.find(root);
    if (it == classId.end())
      it = classId.emplace(root, next++).first;
    ans.model.addrs[a] = it->second;
  }
  return ans;
}

SatAnswer dpll(const std::vector<const Clause *> &choices, std::size_t index,
               std::vector<Atom> &chosen, int &budget) {
  if (index == choices.size())
    return solveConjunction(chosen, budget);
  // Prune early when the atoms picked so far are already contradictory.
  if (index > 0) {
    SatAnswer partial = solveConjunction(chosen, budget);
    if (partial.result == SatResult::Unsat)
      return partial;
  }
  bool unknown = false;
  for (const auto &atom : choices[index]->atoms()) {
    chosen.push_back(atom);
    SatAnswer r = dpll(choices, index + 1, chosen, budget);
    chosen.pop_back();
    if (r.result == SatResult::Sat)
      return r;
    if (r.result == SatResult::Unknown)
      unknown = true;
  }
  return {unknown ? SatResult::Unknown : SatResult::Unsat, {}};
}

} // namespace

SatAnswer checkSat(const Formula &f) {
  auto &stats = SolverStats::global();
  ++stats.satQueries;
  SatAnswer ans;
  if (f.isFalse()) {
    ans.result = SatResult::Unsat;
    return ans;
  }
  std::vector<Atom> chosen;
  std::vector<const Clause *> choices;
  for (const auto &c : f.clauses()) {
    if (c.isUnit())
      chosen.push_back(c.atoms().front());
    else
      choices.push_back(&c);
  }
  int budget = kMaxSplitLeaves;
  try {
    ans = dpll(choices, 0, chosen, budget);
  } catch (const ArithmeticOverflow &) {
    ans = {};
  }
  if (ans.result == SatResult::Sat) {
    // Symbols that only occur in skipped (true) atoms still get a value.
    for (const auto &s : f.symbols())
      ans.model.ints.emplace(s, 0);
    int next = 1;
    for (const auto &[a, id] : ans.model.addrs)
      next = std::max(next, id + 1);
    for (const auto &a : f.addresses())
      if (!ans.model.addrs.count(a))
        ans.model.addrs[a] = next++;
    if (f.evaluate(ans.model) != std::optional<bool>(true))
      ans = {};
  }
  if (ans.result == SatResult::Unknown)
    ++stats.satUnknown;
  return ans;
}

ImpliesAnswer implies(const Formula &premise, const Formula &conclusion) {
  ImpliesAnswer out;
  if (conclusion.isFalse()) {
    SatAnswer r = checkSat(premise);
    if (r.result == SatResult::Unsat)
      out.result = Validity::Valid;
    else if (r.result == SatResult::Sat) {
      out.result = Validity::Invalid;
      out.witness = r.model;
    }
    return out;
  }
  bool unknown = false;
  for (const auto &clause : conclusion.clauses()) {
    Formula query = premise;
    for (const auto &a : clause.atoms())
      query.add(a.negate());
    SatAnswer r = checkSat(query);
    if (r.result == SatResult::Sat) {
      out.result = Validity::Invalid;
      out.witness = r.model;
      return out;
    }
    if (r.result == SatResult::Unknown)
      unknown = true;
  }
  out.result = unknown ? Validity::Unknown : Validity::Valid;
  return out;
}

Formula simplify(const Formula &f) {
  if (f.isFalse())
    return f;
  if (checkSat(f).result == SatResult::Unsat)
    return Formula::False();
  Formula cur = f;
  bool progress = true;
  while (progress && !cur.isFalse()) {
    progress = false;
    const auto &clauses = cur.clauses();
    for (std::size_t i = 0; i < clauses.size() && !progress; ++i) {
      const Clause &c = clauses[i];
      if (!c.isUnit())
        continue;
      const Atom &a = c.atoms().front();
      if (!a.isLinear() || a.rel() != LinRel::Eq)
        continue;
      const auto &coeffs = a.term().coeffs();
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        if (it->second != 1 && it->second != -1)
          continue;
        const std::string &x = it->first;
        bool elsewhere = false;
        for (std::size_t j = 0; j < clauses.size(); ++j)
          if (j != i)
            for (const auto &b : clauses[j].atoms())
              if (b.isLinear() && b.term().mentions(x))
                elsewhere = true;
        if (!elsewhere)
          continue;
        LinTerm expr = (a.term() - LinTerm::var(x, it->second)) * (-it->second);
        Formula next;
        next.add(c);
        for (std::size_t j = 0; j < clauses.size(); ++j)
          if (j != i)
            next.add(clauses[j].substitute({{x, expr}}));
        cur = std::move(next);
        progress = true;
        break;
      }
    }
  }
  return cur;
}

void enumerateModels(const Formula &f, Int lo, Int hi, int maxAddrObjects,
                     const std::function<bool(const Assignment &)> &visit) {
  if (f.isFalse() || lo > hi)
    return;
  auto symSet = f.symbols();
  std::vector<std::string> ints(symSet.begin(), symSet.end());
  auto addrSet = f.addresses();
  std::vector<SymAddr> addrs(addrSet.begin(), addrSet.end());
  Assignment asg;
  for (const auto &s : ints)
    asg.ints[s] = lo;
  for (const auto &a : addrs)
    asg.addrs[a] = 0;
  for (;;) {
    if (f.evaluate(asg) == std::optional<bool>(true))
      if (!visit(asg))
        return;
    // Odometer: addresses vary slowest, the last integer symbol fastest.
    std::size_t i = ints.size();
    bool carried = true;
    while (carried && i > 0) {
      --i;
      Int &v = asg.ints[ints[i]];
      if (v < hi) {
        ++v;
        carried = false;
      } else {
        v = lo;
      }
    }
    if (!carried)
      continue;
    std::size_t j = addrs.size();
    while (carried && j > 0) {
      --j;
      int &v = asg.addrs[addrs[j]];
      if (v < maxAddrObjects) {
        ++v;
        carried = false;
      } else {
        v = 0;
      }
    }
    if (carried)
      return;
  }
}

std::vector<Assignment> allModels(const Formula &f, Int lo, Int hi, int maxAddrObjects) {
  std::vector<Assignment> out;
  enumerateModels(f, lo, hi, maxAddrObjects, [&](const Assignment &a) {
    out.push_back(a);
    return true;
  });
  return out;
}

} // namespace specsynth
