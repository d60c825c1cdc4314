// specsynth: contract inference for a small C subset.

#include "specsynth/cli/report.hpp"
#include "specsynth/constraints/smtlib.hpp"
#include "specsynth/inference/inference.hpp"
#include "specsynth/lang/classify.hpp"
#include "specsynth/lang/parser.hpp"
#include "specsynth/symbolic/engine.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace specsynth;

namespace {

enum Exit { Ok = 0, Diagnostics = 1, Abort = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool verbose = false;

Program load(const std::string &path) {
  if (!std::filesystem::exists(path))
    throw UsageError("cannot open '" + path + "'");
  ParseResult r = parseFile(path);
  if (!r.ok()) {
    std::string text = r.errorText();
    while (!text.empty() && text.back() == '\n')
      text.pop_back();
    throw UsageError(path + ": " + text);
  }
  if (verbose)
    for (const auto &d : r.diagnostics)
      std::cerr << path << ": " << d.str() << "\n";
  return *r.program;
}

std::vector<std::string> targets(const Program &p, const std::string &modifier, bool skipConstructors) {
  if (modifier != "all") {
    if (!p.findFunction(modifier))
      throw UsageError("unknown modifier '" + modifier + "'");
    return {modifier};
  }
  Classification c = classify(p);
  std::vector<std::string> out;
  for (const auto &fn : p.functions) // declaration order
    if (!skipConstructors || !c.constructors.count(fn.name))
      out.push_back(fn.name);
  return out;
}

void writeFile(const std::string &path, const std::string &text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush())
    throw UsageError("cannot write '" + path + "'");
}

struct InferArgs {
  RunConfig cfg;
  std::vector<Int> domain{-8, 8};
  std::string out, text;
  bool full = false, recordTime = false;
};

int runInfer(InferArgs a) {
  if (const char *env = std::getenv("SPECSYNTH_SEED")) {
    try {
      a.cfg.seed = std::stoull(env);
    } catch (const std::exception &) {
      throw UsageError(std::string("SPECSYNTH_SEED is not a number: ") + env);
    }
  }
  if (a.domain.size() != 2 || a.domain[0] > a.domain[1])
    throw UsageError("--domain needs LO,HI with LO <= HI");
  a.cfg.lo = a.domain[0];
  a.cfg.hi = a.domain[1];
  Program p = load(a.cfg.inputFile);
  auto start = std::chrono::steady_clock::now();
  std::vector<Contract> contracts;
  for (const auto &fn : targets(p, a.cfg.modifier, true))
    contracts.push_back(infer(p, fn, a.cfg.inferSettings()));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  for (const auto &c : contracts)
    for (const auto &d : c.diagnostics)
      std::cerr << c.function << ": note: " << d << "\n";
  RenderOptions ro;
  ro.omitZeroObservers = !a.full;
  std::string text;
  for (const auto &c : contracts)
    text += renderText(c, ro);
  if (!a.out.empty())
    writeFile(a.out, contractDocument(contracts, a.cfg, a.recordTime ? std::optional(secs) : std::nullopt).dump(2) +
                         "\n");
  if (!a.text.empty())
    writeFile(a.text, text);
  if (a.out.empty() && a.text.empty())
    std::cout << text;
  return Ok;
}

struct SeArgs {
  std::string file, modifier, dot;
  int bound = -1;
  int safetyNet = 128;
};

int runSe(const SeArgs &a) {
  Program p = load(a.file);
  auto fns = targets(p, a.modifier, false);
  if (fns.size() != 1)
    throw UsageError("se takes a single --modifier");
  CallPattern root = modifierPattern(p, fns[0]);
  SEResult r = a.bound >= 0 ? se(p, root, a.bound, a.safetyNet) : seAbstract(p, root, a.safetyNet);
  std::cout << fns[0] << ": " << r.leaves.size() << " leaves, " << r.finals().size() << " returned, "
            << r.ofKind(LeafKind::Error).size() << " error, " << r.ofKind(LeafKind::Cutoff).size() << " cut off\n";
  for (const auto &f : r.tree.folds)
    std::cout << "fold at line " << f.line << ": guard evaluation " << f.evaluation << " into evaluation "
              << f.recordedEvaluation << " (node " << f.from << " -> " << f.to << ")\n";
  for (const auto &d : r.diagnostics)
    std::cerr << fns[0] << ": note: " << d << "\n";
  if (!a.dot.empty())
    writeFile(a.dot, r.tree.dot());
  return Ok;
}

struct CheckArgs {
  std::string file, contract;
  int maxLen = -1;
};

int runCheck(const CheckArgs &a) {
  Program p = load(a.file);
  std::ifstream in(a.contract);
  if (!in)
    throw UsageError("cannot open '" + a.contract + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw UsageError(a.contract + ": " + e.what());
  }
  InputBounds bounds = checkBounds();
  if (a.maxLen >= 0)
    bounds.maxLen = a.maxLen;
  int bad = 0;
  for (const auto &c : contractsFromDocument(doc)) {
    if (!p.findFunction(c.function))
      throw UsageError("contract for unknown function '" + c.function + "'");
    for (const auto &ax : c.postcondition) {
      CheckReport rep = checkAxiom(p, c.function, ax, bounds);
      std::cout << c.function << " " << ax.name << ": " << rep.inputs << " inputs, " << rep.applicable
                << " applicable, " << rep.violations.size() << " violations\n";
      if (!rep.violations.empty()) {
        ++bad;
        const auto &[input, why] = rep.violations.front();
        std::cout << "  e.g. " << input.str(p.function(c.function)) << ": " << why << "\n";
      }
    }
  }
  return bad ? Diagnostics : Ok;
}

struct SmtArgs {
  std::string file, modifier = "all", dir = ".";
  int safetyNet = 128;
};

int runExportSmt(const SmtArgs &a) {
  Program p = load(a.file);
  std::error_code ec;
  std::filesystem::create_directories(a.dir, ec);
  if (ec)
    throw UsageError("cannot create '" + a.dir + "': " + ec.message());
  int n = 0;
  for (const auto &fn : targets(p, a.modifier, false)) {
    SEResult r = seAbstract(p, modifierPattern(p, fn), a.safetyNet);
    for (std::size_t i = 0; i < r.leaves.size(); ++i) {
      const Leaf &l = r.leaves[i];
      std::string comment = fn + " leaf " + std::to_string(i + 1) + " (" + toString(l.kind) + ")";
      if (l.config.result)
        comment += " returns " + l.config.result->str();
      if (l.config.aSubFlag)
        comment += ", below a fold";
      auto path = std::filesystem::path(a.dir) / (fn + "_leaf" + std::to_string(i + 1) + ".smt2");
      writeFile(path.string(), emitSmtlib(l.config.pathCondition, comment));
      ++n;
    }
  }
  std::cout << n << " files written to " << a.dir << "\n";
  return Ok;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Infers pre/postcondition contracts for the functions of a small C program"};
  app.require_subcommand(1);
  app.set_version_flag("--version", toolVersion());
  app.add_flag("-v,--verbose", verbose, "print parser warnings");

  InferArgs ia;
  auto *inferCmd = app.add_subcommand("infer", "full pipeline: symbolic execution, explain, refine");
  inferCmd->add_option("-f,--file", ia.cfg.inputFile, "C source")->required();
  inferCmd->add_option("-m,--modifier", ia.cfg.modifier, "function name or 'all'")->capture_default_str();
  inferCmd->add_option("--seed", ia.cfg.seed, "test generation seed (SPECSYNTH_SEED wins)")->capture_default_str();
  inferCmd->add_option("--budget", ia.cfg.testBudget, "random tests per candidate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  inferCmd->add_option("--domain", ia.domain, "value range LO,HI of generated tests")
      ->delimiter(',')
      ->expected(2)
      ->capture_default_str();
  inferCmd->add_option("--max-len", ia.cfg.maxListLen, "longest generated list")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  inferCmd->add_option("--safety-net", ia.cfg.safetyNet, "abort after this many loop unrollings")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  inferCmd->add_option("-o,--out", ia.out, "contract JSON ('-' for stdout)");
  inferCmd->add_option("--text", ia.text, "text report ('-' for stdout)");
  inferCmd->add_flag("--full", ia.full, "list observer equations equal to 0 too");
  inferCmd->add_flag("--record-time", ia.recordTime, "store the wall clock time in the JSON");

  SeArgs sa;
  auto *seCmd = app.add_subcommand("se", "symbolic execution tree of one function");
  seCmd->add_option("-f,--file", sa.file, "C source")->required();
  seCmd->add_option("-m,--modifier", sa.modifier, "function name")->required();
  seCmd->add_option("--dot", sa.dot, "write the tree as DOT ('-' for stdout)");
  seCmd->add_option("--bound", sa.bound, "plain bounded execution with this many unrollings instead of folding")
      ->check(CLI::NonNegativeNumber);
  seCmd->add_option("--safety-net", sa.safetyNet, "abort after this many loop unrollings")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CheckArgs ca;
  auto *checkCmd = app.add_subcommand("check", "test a contract's axioms on every small input");
  checkCmd->add_option("-f,--file", ca.file, "C source")->required();
  checkCmd->add_option("-c,--contract", ca.contract, "contract JSON written by infer")->required();
  checkCmd->add_option("--max-len", ca.maxLen, "longest list (default 3)")->check(CLI::NonNegativeNumber);

  SmtArgs xa;
  auto *smtCmd = app.add_subcommand("export-smt", "path conditions of the final states as SMT-LIB 2");
  smtCmd->add_option("-f,--file", xa.file, "C source")->required();
  smtCmd->add_option("-m,--modifier", xa.modifier, "function name or 'all'")->capture_default_str();
  smtCmd->add_option("-d,--dir", xa.dir, "output directory")->capture_default_str();
  smtCmd->add_option("--safety-net", xa.safetyNet, "abort after this many loop unrollings")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (inferCmd->parsed())
      return runInfer(ia);
    if (seCmd->parsed())
      return runSe(sa);
    if (checkCmd->parsed())
      return runCheck(ca);
    return runExportSmt(xa);
  } catch (const SafetyNetExceeded &e) {
    std::cerr << "specsynth: " << e.what() << "\n";
    return Abort;
  } catch (const UsageError &e) {
    std::cerr << "specsynth: " << e.what() << "\n";
    return Diagnostics;
  } catch (const std::exception &e) {
    std::cerr << "specsynth: " << e.what() << "\n";
    return Diagnostics;
  }
}
