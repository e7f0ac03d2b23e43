#include "sunflower/pipeline.hpp"

#include <algorithm>

#include "sunflower/extract.hpp"
#include "sunflower/gamma.hpp"
#include "sunflower/oracle.hpp"

namespace sunflower {

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::gamma_reduction: return "gamma_reduction";
    case Stage::shift_down: return "shift_down";
    case Stage::rank_search: return "rank_search";
    case Stage::core_selection: return "core_selection";
    case Stage::assembly: return "assembly";
    case Stage::invariant: return "invariant";
  }
  return "unknown";
}

const char* method_name(Method m) {
  switch (m) {
    case Method::pipeline: return "pipeline";
    case Method::greedy_fallback: return "greedy-er";
    case Method::none: return "none";
  }
  return "unknown";
}

std::string StageFailure::to_report() const {
  std::string out = "stage=" + std::string(stage_name(stage)) + "\ndetail=" + detail + "\n";
  for (const auto& [key, value] : counters) out += key + "=" + value + "\n";
  if (!table.empty()) out += table;
  return out;
}

namespace {

StageFailure failure(Stage stage, std::string detail) { return StageFailure{stage, std::move(detail), {}, {}}; }

// Runs the four steps; returns a certificate over `f` or the failure.
std::optional<SunflowerCertificate> run_pipeline(const SetFamily& f, int k, const Params& params,
                                                 const PipelineOptions& options, PaperOutcome& out) {
  auto& tel = out.telemetry;
  std::optional<GammaReduction> reduction;
  try {
    reduction = gamma_reduce(f, params.b);
  } catch (const ReductionExhausted& e) {
    auto fail = failure(Stage::gamma_reduction, e.what());
    fail.counters = {{"prefix", "{" + format_set(e.prefix) + "}"},
                     {"steps", std::to_string(e.steps)},
                     {"final_size", std::to_string(e.final_size)}};
    out.failure = std::move(fail);
    return std::nullopt;
  }
  tel.reduction_steps = reduction->steps;
  tel.reduction_prefix = reduction->prefix;
  tel.reduced_size = reduction->family.size();
  tel.reduced_cardinality = reduction->family.cardinality();

  const SetFamily& g = reduction->family;
  const Params local = with_cardinality(params, static_cast<int>(g.cardinality()));

  std::optional<ShiftDownIndex> index;
  try {
    index = build_shiftdowns(g, local, options.triple_budget, options.jobs);
  } catch (const SizingError& e) {
    out.failure = failure(Stage::shift_down, e.what());
    return std::nullopt;
  }
  tel.shiftdowns = index->telemetry();
  const auto step1 = check_shiftdowns(g, *index, local);
  if (!step1.ok()) {
    out.failure = failure(Stage::invariant, step1.first_failure);
    return std::nullopt;
  }

  const DenseCoreLadder ladder = build_ladder(g, *index, local);
  const ExtractionResult extraction = algorithm_r(*index, ladder, local);
  tel.rounds = extraction.rounds.size();
  if (extraction.failure) {
    auto fail = failure(Stage::rank_search, "no rank qualifies for the remaining N'");
    fail.counters = {{"round", std::to_string(extraction.failure->round)},
                     {"n_prime", std::to_string(extraction.failure->n_prime_size)},
                     {"n_star", std::to_string(extraction.n_star)}};
    fail.table = to_report(extraction);
    out.failure = std::move(fail);
    return std::nullopt;
  }
  const auto remark_e = check_remark_e(extraction, *index, ladder, local);
  tel.spill = remark_e.spill_total;
  if (!remark_e.ok()) {
    out.failure = failure(Stage::invariant, remark_e.first_failure);
    return std::nullopt;
  }

  const CoreSelection selection = select_core(g, *index, ladder, extraction, local);
  if (!selection.core) {
    auto fail = failure(Stage::core_selection, "no core satisfies psi1, psi2 and the residual bound");
    fail.counters = {{"most_failed", selection.most_failed}};
    fail.table = to_csv(selection, *index);
    out.failure = std::move(fail);
    return std::nullopt;
  }
  const ElementSet& core = index->core(*selection.core).core;
  tel.link_core = core;

  const AssemblyResult assembly = algorithm_s(g, core, k, local.threshold);
  tel.petal_steps = assembly.steps.size();
  if (!assembly.certificate) {
    auto fail = failure(Stage::assembly, "no member satisfies psi4 in the remaining G");
    fail.counters = {{"iteration", std::to_string(assembly.failure->iteration)},
                     {"g_size", std::to_string(assembly.failure->g_size)},
                     {"family_size", std::to_string(assembly.family_size)}};
    out.failure = std::move(fail);
    return std::nullopt;
  }

  SunflowerCertificate lifted{set_union(reduction->prefix, core), {}};
  for (std::size_t i : assembly.certificate->petals) lifted.petals.push_back(reduction->origin[i]);
  std::sort(lifted.petals.begin(), lifted.petals.end());
  if (!verify_certificate(f, lifted, static_cast<std::size_t>(k))) {
    out.failure = failure(Stage::invariant, "lifted certificate does not verify");
    return std::nullopt;
  }
  return lifted;
}

}  // namespace

PaperOutcome find_sunflower_paper(const SetFamily& f, int k, const Params& params, const PipelineOptions& options) {
  if (k < 2) throw DomainError("k must be at least 2");
  PaperOutcome out;
  if (f.empty()) {
    out.failure = failure(Stage::gamma_reduction, "empty family");
    return out;
  }

  bool run = true;
  if (params.mode == ParamsMode::paper && Real(static_cast<long>(f.cardinality())) * Real(k) <= params.b) {
    out.notices.push_back("m <= b/k under paper constants (b ~ " + to_decimal(params.b, 6) +
                          "): thresholds unreachable at this scale, deferring to the sunflower lemma");
    run = false;
  }
  if (run) {
    try {
      if (auto cert = run_pipeline(f, k, params, options, out)) {
        out.certificate = std::move(cert);
        out.method = Method::pipeline;
        return out;
      }
    } catch (const PrecisionError& e) {
      out.failure = failure(Stage::invariant, std::string("precision: ") + e.what());
    }
  }

  if (options.fallback) {
    if (auto cert = find_sunflower_greedy_er(f, k)) {
      out.certificate = std::move(cert);
      out.method = Method::greedy_fallback;
    }
  }
  return out;
}

}  // namespace sunflower
