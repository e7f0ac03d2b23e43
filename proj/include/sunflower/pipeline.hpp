#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sunflower/assemble.hpp"
#include "sunflower/params.hpp"
#include "sunflower/setfam.hpp"
#include "sunflower/shiftdown.hpp"

namespace sunflower {

enum class Stage { gamma_reduction, shift_down, rank_search, core_selection, assembly, invariant };

const char* stage_name(Stage s);

/// Structured account of why the four-step pipeline stopped.
struct StageFailure {
  Stage stage = Stage::gamma_reduction;
  std::string detail;
  std::vector<std::pair<std::string, std::string>> counters;
  std::string table;  ///< CSV, e.g. the per-core conjunct table

  std::string to_report() const;
};

enum class Method { pipeline, greedy_fallback, none };

const char* method_name(Method m);

struct PipelineTelemetry {
  std::size_t reduction_steps = 0;
  ElementSet reduction_prefix;
  std::size_t reduced_size = 0;
  std::size_t reduced_cardinality = 0;
  std::optional<ShiftDownTelemetry> shiftdowns;
  std::size_t rounds = 0;
  std::uint64_t spill = 0;
  std::optional<ElementSet> link_core;  ///< selected core inside the reduced family
  std::size_t petal_steps = 0;
};

struct PaperOutcome {
  std::optional<SunflowerCertificate> certificate;  ///< always verified against the input
  Method method = Method::none;
  std::optional<StageFailure> failure;
  std::vector<std::string> notices;
  PipelineTelemetry telemetry;
};

struct PipelineOptions {
  std::uint64_t triple_budget = kDefaultTripleBudget;
  unsigned jobs = 1;
  bool fallback = true;
};

/// Gamma reduction, shift-downs, extraction, core selection and petal
/// assembly, with the certificate lifted back through the reduction prefix.
/// Any stage failure is reported as a value; when the pipeline does not
/// produce a certificate (or paper-mode constants put m <= b/k) the classic
/// greedy recursion is tried.
PaperOutcome find_sunflower_paper(const SetFamily& f, int k, const Params& params,
                                  const PipelineOptions& options = {});

}  // namespace sunflower
