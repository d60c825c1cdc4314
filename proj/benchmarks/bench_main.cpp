#include "specsynth/abstraction/abstract_state.hpp"
#include "specsynth/constraints/solver.hpp"
#include "specsynth/inference/inference.hpp"
#include "specsynth/lang/parser.hpp"
#include "specsynth/symbolic/engine.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace specsynth;

namespace {

const Program &corpus() {
  static Program p = *parseFile(std::string(SPECSYNTH_CORPUS_DIR) + "/setlist.c").program;
  return p;
}

// x0 < x1 < ... < x(n-1), plus a disjunction per pair so the case split has work to do
Formula chain(int n) {
  Formula f;
  for (int i = 0; i + 1 < n; ++i) {
    LinTerm a = LinTerm::var("x" + std::to_string(i)), b = LinTerm::var("x" + std::to_string(i + 1));
    f.add(Atom::cmp(a, CmpOp::Lt, b));
    f.add(Clause{Atom::cmp(a, CmpOp::Eq, LinTerm(0)), Atom::cmp(b, CmpOp::Ne, LinTerm(3))});
  }
  return f;
}

void BM_SolverChain(benchmark::State &state) {
  Formula f = chain(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(checkSat(f));
}
BENCHMARK(BM_SolverChain)->RangeMultiplier(2)->Range(2, 16);

void BM_SolverInsertPathConditions(benchmark::State &state) {
  auto r = seAbstract(corpus(), modifierPattern(corpus(), "insert"));
  for (auto _ : state)
    for (const Leaf *l : r.finals())
      benchmark::DoNotOptimize(checkSat(l->config.pathCondition));
}
BENCHMARK(BM_SolverInsertPathConditions);

void BM_SeAbstractInsert(benchmark::State &state) {
  CallPattern root = modifierPattern(corpus(), "insert");
  for (auto _ : state)
    benchmark::DoNotOptimize(seAbstract(corpus(), root));
}
BENCHMARK(BM_SeAbstractInsert)->Unit(benchmark::kMillisecond);

void BM_SeBoundedInsert(benchmark::State &state) {
  CallPattern root = modifierPattern(corpus(), "insert");
  for (auto _ : state)
    benchmark::DoNotOptimize(se(corpus(), root, static_cast<int>(state.range(0))));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SeBoundedInsert)->DenseRange(1, 8)->Unit(benchmark::kMillisecond)->Complexity();

void BM_AbstractSubsumesGuardStates(benchmark::State &state) {
  auto guard = [](int k) {
    return se(corpus(), modifierPattern(corpus(), "insert"), k - 1).ofKind(LeafKind::Cutoff).at(0)->config;
  };
  auto third = guard(3), fourth = guard(4);
  for (auto _ : state)
    benchmark::DoNotOptimize(abstractSubsumes(third, fourth, corpus()));
}
BENCHMARK(BM_AbstractSubsumesGuardStates);

void BM_InferInsert(benchmark::State &state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(infer(corpus(), "insert"));
}
BENCHMARK(BM_InferInsert)->Unit(benchmark::kMillisecond);

void BM_CheckInsertContract(benchmark::State &state) {
  Contract c = infer(corpus(), "insert");
  for (auto _ : state)
    for (const auto &a : c.postcondition)
      benchmark::DoNotOptimize(checkAxiom(corpus(), "insert", a, checkBounds()));
}
BENCHMARK(BM_CheckInsertContract)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
