#include "specsynth/abstraction/abstract_state.hpp"
#include "specsynth/constraints/solver.hpp"

#include <deque>
#include <functional>
#include <sstream>

namespace specsynth {

namespace {

constexpr std::size_t kMaxCnfClauses = 64;

// Conjunctive normal form of a disjunction of conjunctions; nullopt when
// the distribution would be too large.
std::optional<Formula> dnfToCnf(const std::vector<std::vector<Atom>> &dnf) {
  if (dnf.empty())
    return Formula::False();
  for (const auto &d : dnf)
    if (d.empty())
      return Formula::True();
  std::size_t total = 1;
  for (const auto &d : dnf) {
    total *= d.size();
    if (total > kMaxCnfClauses)
      return std::nullopt;
  }
  Formula out;
  std::vector<std::size_t> idx(dnf.size(), 0);
  for (;;) {
    std::vector<Atom> pick;
    for (std::size_t i = 0; i < dnf.size(); ++i)
      pick.push_back(dnf[i][idx[i]]);
    out.add(Clause(pick));
    std::size_t i = 0;
    while (i < dnf.size() && ++idx[i] == dnf[i].size()) {
      idx[i] = 0;
      ++i;
    }
    if (i == dnf.size())
      break;
  }
  return out;
}

struct ElementObligation {
  const SummaryNode *general;
  std::vector<std::vector<Atom>> premise; // DNF over element symbols
};

struct MatchState {
  std::map<SymAddr, SymAddr> nodeMap; // general node -> specific node
  std::map<SymAddr, SymAddr> inverse; // specific node (or member) -> general node
  std::map<SymAddr, Value> unexploredMap;
  std::map<std::string, LinTerm> sigma;
  std::vector<std::pair<LinTerm, LinTerm>> equalities; // σ(general) = specific
  std::vector<ElementObligation> elements;
};

struct Pending {
  Value general;
  Value specific;
};

class Matcher {
public:
  Matcher(const AbstractState &g, const AbstractState &s, bool checkConstraint)
      : g_(g), s_(s), checkConstraint_(checkConstraint) {}

  MatchResult run() {
    MatchResult r;
    if (g_.function != s_.function || g_.pc != s_.pc) {
      r.reason = "different program counter";
      return r;
    }
    std::deque<Pending> work;
    for (const auto &[name, gv] : g_.env) {
      auto it = s_.env.find(name);
      if (it == s_.env.end()) {
        r.reason = "variable " + name + " missing";
        return r;
      }
      work.push_back({gv, it->second});
    }
    MatchState st;
    if (solve(st, work)) {
      r.holds = true;
      r.sigma = result_.sigma;
    } else {
      r.reason = reason_.empty() ? "no match" : reason_;
    }
    return r;
  }

private:
  const AbstractState &g_;
  const AbstractState &s_;
  bool checkConstraint_;
  MatchState result_;
  std::string reason_;

  bool fail(const std::string &why) {
    if (reason_.empty())
      reason_ = why;
    return false;
  }

  void unify(MatchState &st, const LinTerm &tg, const LinTerm &ts) {
    LinTerm bound;
    std::vector<std::pair<std::string, Int>> unbound;
    bound = LinTerm(tg.constant());
    for (const auto &[sym, c] : tg.coeffs()) {
      auto it = st.sigma.find(sym);
      if (it != st.sigma.end())
        bound = bound + it->second * c;
      else
        unbound.emplace_back(sym, c);
    }
    if (unbound.size() == 1 && (unbound[0].second == 1 || unbound[0].second == -1)) {
      Int c = unbound[0].second;
      st.sigma[unbound[0].first] = (ts - bound) * c;
      return;
    }
    st.equalities.emplace_back(tg, ts);
  }

  bool solve(MatchState st, std::deque<Pending> work) {
    while (!work.empty()) {
      Pending p = work.front();
      work.pop_front();
      const Value &gv = p.general, &sv = p.specific;
      if (gv.isUninit())
        continue;
      if (gv.isInt()) {
        if (!sv.isInt())
          return fail("integer matched against " + sv.str());
        unify(st, gv.term(), sv.term());
        continue;
      }
      // Addresses.
      if (!sv.isAddr())
        return fail("address matched against " + sv.str());
      const SymAddr &ga = gv.addr(), &sa = sv.addr();
      if (ga.isNull()) {
        if (!sa.isNull())
          return fail("NULL matched against " + sa.str());
        continue;
      }
      if (g_.unexplored(ga)) {
        auto [it, inserted] = st.unexploredMap.emplace(ga, sv);
        if (!inserted && !(it->second == sv))
          return fail("unexplored " + ga.str() + " shared inconsistently");
        continue;
      }
      if (sa.isNull() || s_.unexplored(sa))
        return fail(ga.str() + " is a node but the other side may be NULL");
      auto known = st.nodeMap.find(ga);
      if (known != st.nodeMap.end()) {
        if (!(known->second == sa))
          return fail(ga.str() + " mapped twice");
        continue;
      }
      const AbstractNode &gn = g_.nodes.at(ga);
      if (!gn.summary) {
        const AbstractNode &sn = s_.nodes.at(sa);
        if (sn.summary || sn.object.tag != gn.object.tag)
          return fail("node " + ga.str() + " against summary or other type");
        if (!bind(st, ga, sa))
          return fail("node " + sa.str() + " already matched");
        for (const auto &[f, v] : gn.object.fields)
          work.push_back({v, sn.object.field(f)});
        continue;
      }
      // Summary in the general state: consume a chain from the specific one.
      return consumeChain(st, work, ga, gn.sum, sa, 0);
    }
    return finish(st);
  }

  bool bind(MatchState &st, const SymAddr &ga, const SymAddr &sa) {
    if (st.inverse.count(sa))
      return false;
    st.nodeMap[ga] = sa;
    st.inverse[sa] = ga;
    return true;
  }

  // `at` is the next specific node to absorb; `taken` counts nodes so far.
  bool consumeChain(MatchState st, const std::deque<Pending> &work, const SymAddr &ghead, const SummaryNode &gsum,
                    const SymAddr &at, int taken) {
    if (at.isNull() || s_.unexplored(at))
      return fail("summary " + ghead.str() + " runs into NULL or uninit");
    if (st.inverse.count(at))
      return fail("chain node " + at.str() + " already matched");
    const AbstractNode &sn = s_.nodes.at(at);
    Value after;
    int count = 0;
    if (sn.summary) {
      if (sn.sum.tag != gsum.tag || sn.sum.selfField != gsum.selfField)
        return fail("summary of another type");
      st.elements.push_back({&gsum, sn.sum.element});
      count = sn.sum.minCount;
      after = sn.sum.next;
    } else {
      if (sn.object.tag != gsum.tag)
        return fail("chain node of another type");
      std::vector<Atom> eqs;
      for (const auto &[f, v] : sn.object.fields) {
        if (f == gsum.selfField)
          continue;
        if (v.isInt())
          eqs.push_back(Atom::cmp(LinTerm::var(elementSymbol(f)), CmpOp::Eq, v.term()));
        else if (!v.isNull())
          return fail("chain node with a non-null extra pointer");
      }
      st.elements.push_back({&gsum, {eqs}});
      count = 1;
      after = sn.object.field(gsum.selfField);
    }
    st.inverse[at] = ghead;
    if (taken == 0)
      st.nodeMap[ghead] = at;
    taken += count;
    if (taken >= gsum.minCount) {
      std::deque<Pending> rest = work;
      rest.push_front({gsum.next, after});
      if (solve(st, rest))
        return true;
    }
    if (after.isAddr() && !after.addr().isNull() && !s_.unexplored(after.addr()))
      return consumeChain(st, work, ghead, gsum, after.addr(), taken);
    return fail("chain shorter than summary " + ghead.str());
  }

  bool finish(const MatchState &st) {
    std::map<std::string, LinTerm> sigma = st.sigma;
    Formula premise = s_.constraint;
    Formula goal;
    if (checkConstraint_)
      goal = g_.constraint.substitute(sigma);
    for (const auto &[tg, ts] : st.equalities)
      goal.add(Atom::cmp(tg.substitute(sigma), CmpOp::Eq, ts));
    if (!goal.isTrue()) {
      ImpliesAnswer a = implies(premise, goal);
      if (a.result != Validity::Valid)
        return fail(std::string("constraint not implied (") + toString(a.result) + ")");
    }
    for (const auto &ob : st.elements) {
      std::vector<std::vector<Atom>> phi;
      for (const auto &conj : ob.general->element) {
        std::vector<Atom> d;
        for (const auto &a : conj)
          d.push_back(a.substitute(sigma));
        phi.push_back(d);
      }
      auto cnf = dnfToCnf(phi);
      if (!cnf)
        return fail("element constraint too large");
      if (cnf->isTrue())
        continue;
      for (const auto &d : ob.premise) {
        Formula pre = premise;
        for (const auto &a : d)
          pre.add(a);
        ImpliesAnswer a = implies(pre, *cnf);
        if (a.result != Validity::Valid)
          return fail(std::string("element constraint not implied (") + toString(a.result) + ")");
      }
    }
    result_ = st;
    return true;
  }
};

} // namespace

MatchResult matchStates(const AbstractState &general, const AbstractState &specific, bool checkConstraint) {
  return Matcher(general, specific, checkConstraint).run();
}

bool heapSubsumes(const AbstractState &general, const AbstractState &specific) {
  AbstractState g = general;
  g.pc = specific.pc;
  g.function = specific.function;
  return matchStates(g, specific, false).holds;
}

bool subsumes(const SymbolicConfiguration &general, const SymbolicConfiguration &specific) {
  if (general.function != specific.function || general.pc != specific.pc)
    return false;
  return matchStates(asAbstract(general), asAbstract(specific)).holds;
}

bool abstractSubsumes(const SymbolicConfiguration &general, const SymbolicConfiguration &specific,
                      const Program &program, const AlphaOptions &opt) {
  if (general.function != specific.function || general.pc != specific.pc)
    return false;
  AbstractState g = alpha(general, program, opt), s = alpha(specific, program, opt);
  if (g.refused || s.refused)
    return false;
  return matchStates(g, s).holds;
}

std::string abstractHeapDot(const AbstractState &s, const std::string &name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  node [fontname=\"Helvetica\"];\n";
  int fresh = 0;
  auto target = [&](const Value &v) -> std::string {
    if (v.isNull()) {
      std::string id = "null" + std::to_string(fresh++);
      out << "  " << id << " [shape=ellipse,label=\"null\"];\n";
      return id;
    }
    if (v.isAddr() && s.unexplored(v.addr())) {
      std::string id = "uninit" + std::to_string(fresh++);
      out << "  " << id << " [shape=box,style=\"rounded,dashed\",label=\"uninit\"];\n";
      return id;
    }
    if (v.isAddr())
      return "\"" + v.addr().str() + "\"";
    return {};
  };
  for (const auto &[a, node] : s.nodes) {
    std::string label;
    if (node.summary) {
      label = node.sum.tag + " [" + std::to_string(node.sum.minCount) + "+]\\n" + node.sum.elementStr();
      out << "  \"" << a.str() << "\" [shape=box,peripheries=2,label=\"" << label << "\"];\n";
    } else {
      label = a.str() + " : " + node.object.tag;
      for (const auto &[f, v] : node.object.fields)
        if (v.isInt())
          label += "\\n" + f + " = " + v.term().str();
      out << "  \"" << a.str() << "\" [shape=box,label=\"" << label << "\"];\n";
    }
  }
  for (const auto &[n, v] : s.env) {
    if (!v.isAddr())
      continue;
    std::string t = target(v);
    out << "  \"var " << n << "\" [shape=plaintext,label=\"" << n << "\"];\n";
    out << "  \"var " << n << "\" -> " << t << ";\n";
  }
  for (const auto &[a, node] : s.nodes) {
    if (node.summary) {
      std::string t = target(node.sum.next);
      out << "  \"" << a.str() << "\" -> " << t << " [label=\"" << node.sum.selfField << "\"];\n";
      continue;
    }
    for (const auto &[f, v] : node.object.fields)
      if (v.isAddr()) {
        std::string t = target(v);
        out << "  \"" << a.str() << "\" -> " << t << " [label=\"" << f << "\"];\n";
      }
  }
  out << "}\n";
  return out.str();
}

} // namespace specsynth
