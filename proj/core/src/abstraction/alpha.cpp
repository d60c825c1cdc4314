#include "specsynth/abstraction/abstract_state.hpp"

#include <set>
#include <sstream>

namespace specsynth {

std::string elementSymbol(const std::string &field) { return "@e." + field; }

std::string SummaryNode::elementStr() const {
  if (element.empty())
    return "false";
  std::string out;
  for (std::size_t i = 0; i < element.size(); ++i) {
    if (i)
      out += " ∨ ";
    std::string conj;
    for (std::size_t j = 0; j < element[i].size(); ++j)
      conj += (j ? " ∧ " : "") + element[i][j].str();
    if (element[i].empty())
      conj = "true";
    out += element.size() > 1 && element[i].size() > 1 ? "(" + conj + ")" : conj;
  }
  return out;
}

int AbstractState::summaryCount() const {
  int n = 0;
  for (const auto &[a, node] : nodes)
    n += node.summary;
  return n;
}

std::string AbstractState::str() const {
  std::ostringstream out;
  out << function << "@" << pc << " env{";
  for (const auto &[n, v] : env)
    out << " " << n << "=" << (v.isAddr() && unexplored(v.addr()) ? "uninit" : v.str());
  out << " } heap{";
  for (const auto &[a, node] : nodes) {
    out << " " << a.str() << ":";
    if (node.summary) {
      out << "SUM[" << node.sum.minCount << "+]{" << node.sum.elementStr() << "}->"
          << (node.sum.next.isAddr() && unexplored(node.sum.next.addr()) ? "uninit" : node.sum.next.str());
    } else {
      out << node.object.tag << "(";
      bool first = true;
      for (const auto &[f, v] : node.object.fields) {
        out << (first ? "" : ",") << f << "=" << (v.isAddr() && unexplored(v.addr()) ? "uninit" : v.str());
        first = false;
      }
      out << ")";
    }
  }
  out << " } " << constraint.str();
  return out.str();
}

namespace {

Formula integerPart(const Formula &pc) {
  return pc.filter([](const Clause &c) {
    for (const auto &a : c.atoms())
      if (a.isAddress())
        return false;
    return true;
  });
}

} // namespace

AbstractState asAbstract(const SymbolicConfiguration &c) {
  AbstractState s;
  s.function = c.function;
  s.pc = c.pc;
  s.env = c.env;
  for (const auto &[a, o] : c.heap) {
    AbstractNode n;
    n.object = o;
    s.nodes[a] = n;
  }
  s.constraint = integerPart(c.pathCondition);
  return s;
}

AbstractState alpha(const SymbolicConfiguration &c, const Program &program, const AlphaOptions &opt) {
  AbstractState s = asAbstract(c);
  if (opt.abstractIntLocals) {
    if (const FunctionDef *fn = program.findFunction(c.function))
      for (const auto &[name, t] : fn->locals)
        if (t.isInt() && s.env.count(name))
          s.env[name] = Value::uninit();
  }

  // Reference counts.
  std::set<SymAddr> envRefs;
  for (const auto &[n, v] : c.env)
    if (v.isAddr() && c.heap.count(v.addr()))
      envRefs.insert(v.addr());
  std::map<SymAddr, int> inDegree;
  for (const auto &[a, o] : c.heap)
    for (const auto &[f, v] : o.fields)
      if (v.isAddr() && c.heap.count(v.addr()))
        ++inDegree[v.addr()];

  auto selfFieldOf = [&](const HeapObject &o) -> std::optional<std::string> {
    const StructDef *sd = program.findStruct(o.tag);
    if (!sd)
      return std::nullopt;
    auto self = sd->selfFields();
    if (self.size() != 1)
      return std::nullopt;
    for (const auto &[f, t] : sd->fields)
      if (t.isPtr() && f != self[0] && !o.field(f).isNull())
        return std::nullopt;
    return self[0];
  };
  auto candidate = [&](const SymAddr &a) {
    auto it = c.heap.find(a);
    return it != c.heap.end() && !envRefs.count(a) && inDegree[a] == 1 && selfFieldOf(it->second).has_value();
  };

  // Predecessor along a self field, when that predecessor is a candidate too.
  std::map<SymAddr, SymAddr> chainPred;
  for (const auto &[a, o] : c.heap) {
    if (!candidate(a))
      continue;
    std::string sf = *selfFieldOf(o);
    const Value &nx = o.field(sf);
    if (nx.isAddr() && candidate(nx.addr()) && c.heap.at(nx.addr()).tag == o.tag)
      chainPred[nx.addr()] = a;
  }

  // Symbols private to one node: they occur nowhere outside its fields.
  std::map<std::string, int> occurrences;
  std::map<std::string, SymAddr> owner;
  auto count = [&](const Value &v, const std::optional<SymAddr> &where) {
    if (!v.isInt())
      return;
    for (const auto &sym : v.term().symbols()) {
      ++occurrences[sym];
      if (where)
        owner[sym] = *where;
    }
  };
  for (const auto &[n, v] : c.env)
    count(v, std::nullopt);
  for (const auto &[a, o] : c.heap)
    for (const auto &[f, v] : o.fields)
      count(v, a);

  // A run in which every node has a candidate predecessor is a cycle.
  for (const auto &[a, pred] : chainPred) {
    SymAddr cur = pred;
    for (std::size_t steps = 0; steps <= chainPred.size(); ++steps) {
      if (cur == a) {
        s.refused = true;
        s.diagnostic = "cyclic list at " + a.str() + "; abstraction refused";
        return s;
      }
      auto it = chainPred.find(cur);
      if (it == chainPred.end())
        break;
      cur = it->second;
    }
  }

  std::set<SymAddr> consumed;
  std::set<std::string> memberPrivate;
  std::vector<std::pair<SymAddr, SummaryNode>> summaries;
  for (const auto &[a, o] : c.heap) {
    if (!candidate(a) || chainPred.count(a) || consumed.count(a))
      continue;
    std::vector<SymAddr> run;
    std::set<SymAddr> seen;
    SymAddr cur = a;
    std::string sf = *selfFieldOf(o);
    Value after;
    for (;;) {
      if (!seen.insert(cur).second) {
        s.refused = true;
        s.diagnostic = "cyclic list at " + cur.str() + "; abstraction refused";
        return asAbstract(c);
      }
      run.push_back(cur);
      const Value &nx = c.heap.at(cur).field(sf);
      auto it = chainPred.find(nx.isAddr() ? nx.addr() : SymAddr::null());
      if (nx.isAddr() && it != chainPred.end() && it->second == cur) {
        cur = nx.addr();
        continue;
      }
      after = nx;
      break;
    }
    if (static_cast<int>(run.size()) < opt.minSegment)
      continue;
    SummaryNode sum;
    sum.tag = o.tag;
    sum.selfField = sf;
    sum.members = run;
    sum.minCount = static_cast<int>(run.size());
    sum.next = after;
    for (const auto &m : run) {
      consumed.insert(m);
      for (const auto &[f, v] : c.heap.at(m).fields)
        if (v.isInt())
          for (const auto &sym : v.term().symbols())
            if (occurrences[sym] == 1 && owner[sym] == m)
              memberPrivate.insert(sym);
    }
    summaries.emplace_back(a, std::move(sum));
  }

  // Element constraints and the projected constraint.
  auto privateOwner = [&](const std::string &sym) -> std::optional<SymAddr> {
    if (!memberPrivate.count(sym))
      return std::nullopt;
    return owner[sym];
  };
  Formula projected;
  for (const auto &cl : s.constraint.clauses()) {
    bool keep = true;
    for (const auto &at : cl.atoms())
      for (const auto &sym : at.symbols())
        if (privateOwner(sym))
          keep = false;
    if (keep)
      projected.add(cl);
  }
  for (auto &[head, sum] : summaries) {
    for (const auto &m : sum.members) {
      const HeapObject &obj = c.heap.at(m);
      std::map<std::string, LinTerm> rename;
      std::vector<Atom> conj;
      for (const auto &[f, v] : obj.fields) {
        if (!v.isInt())
          continue;
        auto single = v.term().asSymbol();
        if (single && privateOwner(*single) == m)
          rename[*single] = LinTerm::var(elementSymbol(f));
        else
          conj.push_back(Atom::cmp(LinTerm::var(elementSymbol(f)), CmpOp::Eq, v.term()));
      }
      for (const auto &cl : c.pathCondition.clauses()) {
        if (!cl.isUnit() || !cl.atoms()[0].isLinear())
          continue;
        const Atom &at = cl.atoms()[0];
        bool mine = false, foreign = false;
        for (const auto &sym : at.symbols()) {
          auto ow = privateOwner(sym);
          if (ow && *ow == m)
            mine = true;
          else if (ow)
            foreign = true;
        }
        if (mine && !foreign)
          conj.push_back(at.substitute(rename));
      }
      std::sort(conj.begin(), conj.end());
      conj.erase(std::unique(conj.begin(), conj.end()), conj.end());
      if (std::find(sum.element.begin(), sum.element.end(), conj) == sum.element.end())
        sum.element.push_back(conj);
    }
    std::sort(sum.element.begin(), sum.element.end());
    for (const auto &m : sum.members)
      s.nodes.erase(m);
    AbstractNode node;
    node.summary = true;
    node.sum = std::move(sum);
    s.nodes[head] = std::move(node);
  }
  s.constraint = projected;
  return s;
}

} // namespace specsynth
