#pragma once

#include "specsynth/inference/inference.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace specsynth {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
const char *toolVersion();

struct RunConfig {
  std::string inputFile;
  std::string modifier = "all";
  std::uint64_t seed = 42;
  int testBudget = 500;
  Int lo = -8, hi = 8; // value domain for generated tests
  int maxListLen = 4;
  int safetyNet = 128;

  InferSettings inferSettings() const;
  Json toJson() const;
};

Json toJson(const LinTerm &t);
LinTerm linTermFromJson(const Json &j);
Json toJson(const Equation &e);
Equation equationFromJson(const Json &j);
Json toJson(const Axiom &a);
Axiom axiomFromJson(const Json &j);
Json toJson(const Contract &c);
/// The parts `check` needs: function, precondition, postcondition,
/// assignable and candidates.
Contract contractFromJson(const Json &j);

/// Top level document: schemaVersion, provenance and one entry per
/// inferred function. wallClock is null unless a time is given.
Json contractDocument(const std::vector<Contract> &contracts, const RunConfig &config,
                      std::optional<double> wallClockSeconds = std::nullopt);
std::vector<Contract> contractsFromDocument(const Json &doc); // throws std::runtime_error

struct RenderOptions {
  bool omitZeroObservers = true; // observer equations "=0" are implied, ret is always shown
};

std::string axiomText(const Axiom &a, const RenderOptions &opt = {});

/// Axioms by origin leaf, `lhs=rhs ∧ ... ⟹ ...`.
std::string renderText(const Contract &c, const RenderOptions &opt = {});

} // namespace specsynth
