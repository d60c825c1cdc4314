#include "specsynth/cli/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace specsynth {

const char *toolVersion() { return "0.1.0"; }

InferSettings RunConfig::inferSettings() const {
  InferSettings s;
  s.refine.seed = seed;
  s.refine.budget = testBudget;
  s.refine.bounds.valueLo = s.refine.bounds.scalarLo = lo;
  s.refine.bounds.valueHi = s.refine.bounds.scalarHi = hi;
  s.refine.bounds.maxLen = maxListLen;
  s.refine.safetyNet = safetyNet;
  return s;
}

Json RunConfig::toJson() const {
  Json j;
  j["inputFile"] = inputFile;
  j["modifier"] = modifier;
  j["seed"] = seed;
  j["testBudget"] = testBudget;
  j["valueDomain"] = {lo, hi};
  j["maxListLen"] = maxListLen;
  j["safetyNet"] = safetyNet;
  return j;
}

Json toJson(const LinTerm &t) {
  Json j;
  j["constant"] = t.constant();
  Json coeffs = Json::object();
  for (const auto &[s, k] : t.coeffs())
    coeffs[s] = k;
  j["coeffs"] = coeffs;
  return j;
}

LinTerm linTermFromJson(const Json &j) {
  LinTerm t(j.at("constant").get<Int>());
  for (const auto &[s, k] : j.at("coeffs").items())
    t = t + LinTerm::var(s, k.get<Int>());
  return t;
}

Json toJson(const Equation &e) {
  Json j;
  j["text"] = e.str();
  if (e.call) {
    j["observer"] = e.call->observer;
    j["args"] = e.call->args;
    j["pointerArgs"] = e.call->pointerArg;
  } else {
    j["observer"] = nullptr;
  }
  j["primed"] = e.primed;
  j["rhs"] = toJson(e.rhs);
  return j;
}

Equation equationFromJson(const Json &j) {
  Equation e;
  if (!j.at("observer").is_null()) {
    ObserverCall c;
    c.observer = j.at("observer").get<std::string>();
    c.args = j.at("args").get<std::vector<std::string>>();
    c.pointerArg = j.at("pointerArgs").get<std::vector<bool>>();
    e.call = c;
  }
  e.primed = j.at("primed").get<bool>();
  e.rhs = linTermFromJson(j.at("rhs"));
  return e;
}

namespace {

Json equations(const std::vector<Equation> &eqs) {
  Json a = Json::array();
  for (const auto &e : eqs)
    a.push_back(toJson(e));
  return a;
}

std::vector<Equation> equationsFrom(const Json &j) {
  std::vector<Equation> out;
  for (const auto &e : j)
    out.push_back(equationFromJson(e));
  return out;
}

AxiomStatus statusFrom(const std::string &s) {
  for (auto st : {AxiomStatus::Verified, AxiomStatus::Candidate, AxiomStatus::Refuted, AxiomStatus::Specialized})
    if (s == toString(st))
      return st;
  throw std::runtime_error("unknown axiom status '" + s + "'");
}

std::vector<Axiom> byOrigin(std::vector<Axiom> axioms) {
  std::stable_sort(axioms.begin(), axioms.end(),
                   [](const Axiom &a, const Axiom &b) { return a.originLeaf < b.originLeaf; });
  return axioms;
}

} // namespace

Json toJson(const Axiom &a) {
  Json j;
  j["name"] = a.name;
  j["text"] = a.str();
  j["status"] = toString(a.status);
  j["originLeaf"] = a.originLeaf;
  j["antecedent"] = equations(a.antecedent);
  j["consequent"] = equations(a.consequent);
  return j;
}

Axiom axiomFromJson(const Json &j) {
  Axiom a;
  a.name = j.at("name").get<std::string>();
  a.status = statusFrom(j.at("status").get<std::string>());
  a.originLeaf = j.at("originLeaf").get<int>();
  a.antecedent = equationsFrom(j.at("antecedent"));
  a.consequent = equationsFrom(j.at("consequent"));
  return a;
}

Json toJson(const Contract &c) {
  Json j;
  j["function"] = c.function;
  Json pre = Json::array();
  for (const auto &ante : c.precondition)
    pre.push_back(equations(ante));
  j["precondition"] = pre;
  Json post = Json::array();
  for (const auto &a : byOrigin(c.postcondition))
    post.push_back(toJson(a));
  j["postcondition"] = post;
  j["assignable"] = c.assignable;
  Json cand = Json::array();
  for (const auto &a : c.candidates)
    cand.push_back(toJson(a));
  j["candidates"] = cand;
  j["finalConfigurations"] = c.finalConfigurations;
  Json folds = Json::array();
  for (const auto &f : c.folds)
    folds.push_back({{"line", f.line}, {"evaluation", f.evaluation}, {"into", f.recordedEvaluation}});
  j["folds"] = folds;
  Json refine = Json::array();
  for (const auto &l : c.refineLog.lines)
    refine.push_back(l);
  j["refinement"] = refine;
  j["diagnostics"] = c.diagnostics;
  return j;
}

Contract contractFromJson(const Json &j) {
  Contract c;
  c.function = j.at("function").get<std::string>();
  for (const auto &ante : j.at("precondition"))
    c.precondition.push_back(equationsFrom(ante));
  for (const auto &a : j.at("postcondition"))
    c.postcondition.push_back(axiomFromJson(a));
  for (const auto &l : j.at("assignable"))
    c.assignable.insert(l.get<std::string>());
  for (const auto &a : j.at("candidates"))
    c.candidates.push_back(axiomFromJson(a));
  return c;
}

Json contractDocument(const std::vector<Contract> &contracts, const RunConfig &config,
                      std::optional<double> wallClockSeconds) {
  Json doc;
  doc["schemaVersion"] = kSchemaVersion;
  Json prov;
  prov["tool"] = "specsynth";
  prov["version"] = toolVersion();
  prov["seed"] = config.seed;
  prov["config"] = config.toJson();
  prov["wallClockSeconds"] = wallClockSeconds ? Json(*wallClockSeconds) : Json(nullptr);
  doc["provenance"] = prov;
  Json cs = Json::array();
  for (const auto &c : contracts)
    cs.push_back(toJson(c));
  doc["contracts"] = cs;
  return doc;
}

std::vector<Contract> contractsFromDocument(const Json &doc) {
  try {
    if (doc.at("schemaVersion").get<int>() != kSchemaVersion)
      throw std::runtime_error("unsupported schemaVersion " + doc.at("schemaVersion").dump());
    std::vector<Contract> out;
    for (const auto &c : doc.at("contracts"))
      out.push_back(contractFromJson(c));
    return out;
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error(std::string("malformed contract document: ") + e.what());
  }
}

std::string axiomText(const Axiom &a, const RenderOptions &opt) {
  auto join = [&](const std::vector<Equation> &eqs) {
    std::string out;
    for (const auto &e : eqs) {
      if (opt.omitZeroObservers && !e.isRet() && e.rhs == LinTerm(0))
        continue;
      out += (out.empty() ? "" : " ∧ ") + e.str();
    }
    return out.empty() ? std::string("true") : out;
  };
  return join(a.antecedent) + " ⟹ " + join(a.consequent);
}

std::string renderText(const Contract &c, const RenderOptions &opt) {
  std::ostringstream out;
  out << "contract " << c.function << "\n";
  if (opt.omitZeroObservers && !c.postcondition.empty())
    out << "  (observers not listed return 0)\n";
  if (c.postcondition.empty()) {
    out << "  no axioms\n";
  } else {
    out << "  precondition\n";
    for (std::size_t i = 0; i < c.precondition.size(); ++i) {
      out << "    " << (i ? "∨ " : "  ");
      Axiom ante;
      ante.antecedent = c.precondition[i];
      std::string t = axiomText(ante, opt);
      out << t.substr(0, t.find(" ⟹ ")) << "\n";
    }
    out << "  postcondition\n";
    for (const auto &a : byOrigin(c.postcondition))
      out << "    " << a.name << ": " << axiomText(a, opt) << "\n";
  }
  out << "  assignable {";
  bool first = true;
  for (const auto &l : c.assignable) {
    out << (first ? "" : ", ") << l;
    first = false;
  }
  out << "}\n";
  for (const auto &a : c.candidates)
    out << "  candidate " << a.name << " (" << toString(a.status) << "): " << axiomText(a, opt) << "\n";
  return out.str();
}

} // namespace specsynth
